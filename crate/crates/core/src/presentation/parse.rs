//! Text grammar for presentations.
//!
//! Words are whitespace-separated tokens `name` or `name^-1`; `1` is the
//! empty word. A relation is `lhs = rhs`, or a bare `lhs` meaning `lhs = 1`.
//! Two layouts are accepted:
//!
//! ```text
//! # line layout
//! generators: a b c
//! b a = c
//! c b = a
//! ```
//!
//! and the single-expression layout `< a, b, c | b a = c, c b = a >`.

use super::{GroupPresentation, Letter, Relation, Word};
use crate::error::{Error, Result};

pub(crate) fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Name(String, bool),
    One,
    Eq,
    Comma,
    Bar,
    Open,
    Close,
    Colon,
    Newline,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let chars: Vec<char> = raw.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let column = i + 1;
            let single = |tok| Spanned { tok, line, column };
            match c {
                '#' => break,
                c if c.is_whitespace() => i += 1,
                '=' => {
                    out.push(single(Tok::Eq));
                    i += 1;
                }
                ',' => {
                    out.push(single(Tok::Comma));
                    i += 1;
                }
                '|' => {
                    out.push(single(Tok::Bar));
                    i += 1;
                }
                '<' => {
                    out.push(single(Tok::Open));
                    i += 1;
                }
                '>' => {
                    out.push(single(Tok::Close));
                    i += 1;
                }
                ':' => {
                    out.push(single(Tok::Colon));
                    i += 1;
                }
                '1' if chars.get(i + 1).is_none_or(|c| !c.is_ascii_alphanumeric()) => {
                    out.push(single(Tok::One));
                    i += 1;
                }
                c if c.is_ascii_alphabetic() || c == '_' => {
                    let start = i;
                    while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                        i += 1;
                    }
                    let name: String = chars[start..i].iter().collect();
                    let mut inverse = false;
                    if chars.get(i) == Some(&'^') {
                        let exp: String = chars[i + 1..]
                            .iter()
                            .take_while(|c| c.is_ascii_digit() || **c == '-' || **c == '+')
                            .collect();
                        if exp != "-1" {
                            return Err(err(
                                line,
                                i + 1,
                                format!("exponent ^{exp} not allowed; only ^-1 is"),
                            ));
                        }
                        inverse = true;
                        i += 3;
                    }
                    out.push(single(Tok::Name(name, inverse)));
                }
                other => return Err(err(line, column, format!("unexpected character {other:?}"))),
            }
        }
        out.push(Spanned {
            tok: Tok::Newline,
            line,
            column: chars.len() + 1,
        });
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    generators: Vec<String>,
}

impl Parser {
    fn peek(&self) -> Option<&Spanned> {
        self.toks.get(self.pos)
    }

    fn end_position(&self) -> (usize, usize) {
        self.toks
            .last()
            .map(|t| (t.line, t.column))
            .unwrap_or((1, 1))
    }

    fn skip_newlines(&mut self) {
        while matches!(
            self.peek(),
            Some(Spanned {
                tok: Tok::Newline,
                ..
            })
        ) {
            self.pos += 1;
        }
    }

    fn letter(&self, name: &str, inverse: bool, t: &Spanned) -> Result<Letter> {
        let gen = self
            .generators
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| err(t.line, t.column, format!("unknown generator {name}")))?;
        Ok(Letter { gen, inverse })
    }

    /// Reads a word up to a token outside the word alphabet.
    fn word(&mut self, skip_newlines: bool) -> Result<Option<Word>> {
        let mut letters = Vec::new();
        let mut any = false;
        loop {
            if skip_newlines {
                self.skip_newlines();
            }
            let Some(t) = self.peek().cloned() else { break };
            match &t.tok {
                Tok::Name(n, inv) => {
                    letters.push(self.letter(n, *inv, &t)?);
                    any = true;
                }
                Tok::One => any = true,
                _ => break,
            }
            self.pos += 1;
        }
        Ok(any.then_some(Word(letters)))
    }

    fn relation(&mut self, skip_newlines: bool) -> Result<Relation> {
        let start = self.peek().cloned();
        let lhs = self.word(skip_newlines)?.ok_or_else(|| match &start {
            Some(t) => err(t.line, t.column, "expected a word"),
            None => {
                let (l, c) = self.end_position();
                err(l, c, "expected a word")
            }
        })?;
        if let Some(Spanned {
            tok: Tok::Eq,
            line,
            column,
        }) = self.peek().cloned()
        {
            self.pos += 1;
            let rhs = self
                .word(skip_newlines)?
                .ok_or_else(|| err(line, column + 1, "expected a word after '='"))?;
            if let Some(Spanned {
                tok: Tok::Eq,
                line,
                column,
            }) = self.peek().cloned()
            {
                return Err(err(line, column, "a relation has at most one '='"));
            }
            Ok(Relation::new(lhs, rhs))
        } else {
            Ok(Relation::relator(lhs))
        }
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        match self.peek().cloned() {
            Some(t) if t.tok == want => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => Err(err(t.line, t.column, format!("expected {what}"))),
            None => {
                let (l, c) = self.end_position();
                Err(err(l, c, format!("expected {what}")))
            }
        }
    }

    fn declare(&mut self, name: String, t: &Spanned, inverse: bool) -> Result<()> {
        if inverse {
            return Err(err(
                t.line,
                t.column,
                "generator declarations take bare names",
            ));
        }
        if self.generators.contains(&name) {
            return Err(err(
                t.line,
                t.column,
                format!("generator {name} declared twice"),
            ));
        }
        self.generators.push(name);
        Ok(())
    }

    fn bracket(&mut self) -> Result<GroupPresentation> {
        self.expect(Tok::Open, "'<'")?;
        loop {
            self.skip_newlines();
            let Some(t) = self.peek().cloned() else { break };
            match t.tok {
                Tok::Name(ref n, inv) => {
                    self.declare(n.clone(), &t, inv)?;
                    self.pos += 1;
                    self.skip_newlines();
                    if matches!(
                        self.peek(),
                        Some(Spanned {
                            tok: Tok::Comma,
                            ..
                        })
                    ) {
                        self.pos += 1;
                    }
                }
                _ => break,
            }
        }
        let mut relations = Vec::new();
        self.skip_newlines();
        if matches!(self.peek(), Some(Spanned { tok: Tok::Bar, .. })) {
            self.pos += 1;
            loop {
                self.skip_newlines();
                if matches!(
                    self.peek(),
                    Some(Spanned {
                        tok: Tok::Close,
                        ..
                    })
                ) {
                    break;
                }
                relations.push(self.relation(true)?);
                self.skip_newlines();
                match self.peek() {
                    Some(Spanned {
                        tok: Tok::Comma, ..
                    }) => self.pos += 1,
                    _ => break,
                }
            }
        }
        self.skip_newlines();
        self.expect(Tok::Close, "',' or '>'")?;
        self.skip_newlines();
        if let Some(t) = self.peek() {
            return Err(err(t.line, t.column, "trailing input after '>'"));
        }
        Ok(GroupPresentation {
            generators: std::mem::take(&mut self.generators),
            relations,
        })
    }

    fn lines(&mut self) -> Result<GroupPresentation> {
        let head = self.peek().cloned().expect("non-empty");
        match &head.tok {
            Tok::Name(n, false) if n == "generators" => self.pos += 1,
            _ => return Err(err(head.line, head.column, "expected 'generators:' header")),
        }
        self.expect(Tok::Colon, "':' after 'generators'")?;
        while let Some(t) = self.peek().cloned() {
            match t.tok {
                Tok::Name(ref n, inv) => {
                    self.declare(n.clone(), &t, inv)?;
                    self.pos += 1;
                }
                Tok::Comma => self.pos += 1,
                Tok::Newline => break,
                _ => return Err(err(t.line, t.column, "expected a generator name")),
            }
        }
        let mut relations = Vec::new();
        loop {
            self.skip_newlines();
            if self.peek().is_none() {
                break;
            }
            relations.push(self.relation(false)?);
            match self.peek().cloned() {
                Some(Spanned {
                    tok: Tok::Newline, ..
                })
                | None => {}
                Some(t) => return Err(err(t.line, t.column, "unexpected token")),
            }
        }
        Ok(GroupPresentation {
            generators: std::mem::take(&mut self.generators),
            relations,
        })
    }
}

pub(crate) fn parse_presentation(text: &str) -> Result<GroupPresentation> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        generators: Vec::new(),
    };
    p.skip_newlines();
    match p.peek() {
        None => Err(err(1, 1, "empty presentation")),
        Some(Spanned { tok: Tok::Open, .. }) => p.bracket(),
        Some(_) => p.lines(),
    }
}
