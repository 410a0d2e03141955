//! The `igmax` command-line tool.
//!
//! Every command produces one document, printed as text or as a versioned
//! JSON object. Exit codes: 0 pass, 1 verification or census failure,
//! 2 input error, 3 resource cap.

pub mod docs;
mod render;

use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::constructions::AuxMatrix;
use crate::error::{Error, Result, Stage};
use crate::ig::{
    classify, derive_identifications, generator_name, singular_squares, HPresentation, Shape,
    SingularSquare,
};
use crate::presentation::{
    tietze_simplify, CayleyTable, GroupPresentation, TietzeLimits, TietzeOutcome,
    DEFAULT_MAX_COSETS,
};
use crate::semigroup::{FiniteSemigroup, DEFAULT_CLOSURE_CAP};
use crate::verify::{
    run_construction1, run_construction2, run_rectband, verify_residue, Defining, ReportOptions,
    Run1, Run2, Verdict, VerificationReport,
};

use docs::{
    decode, element_name, parse_cayley, CayleyDoc, DefiningDoc, SemigroupDoc, SquareDoc, VerifyDoc,
    ERROR, REPORT, SEMIGROUP, VERIFY_INPUT, VERSION,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Parser)]
#[command(
    name = "igmax",
    version,
    about = "Realize groups as maximal subgroups of free idempotent generated semigroups"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Largest semigroup the closure may enumerate.
    #[arg(long, default_value_t = DEFAULT_CLOSURE_CAP, value_parser = positive, global = true)]
    pub closure_cap: usize,

    /// Coset budget for Todd-Coxeter enumeration.
    #[arg(long, default_value_t = DEFAULT_MAX_COSETS, value_parser = positive, global = true)]
    pub coset_cap: usize,

    /// Pass budget for Tietze simplification.
    #[arg(long, default_value_t = TietzeLimits::default().max_passes, value_parser = positive, global = true)]
    pub tietze_passes: usize,

    /// Write the document here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Realize a finitely presented group (presentation text file).
    Construct1 {
        input: PathBuf,
        /// Also write the closed semigroup for the `squares` stage.
        #[arg(long)]
        dump_semigroup: Option<PathBuf>,
        /// Also write the input of the `verify` stage.
        #[arg(long)]
        dump_verify: Option<PathBuf>,
    },
    /// Realize a finite group (Cayley table JSON file).
    Construct2 {
        input: PathBuf,
        #[arg(long)]
        dump_semigroup: Option<PathBuf>,
        #[arg(long)]
        dump_verify: Option<PathBuf>,
    },
    /// The pure rectangular band with the given numbers of rows and columns.
    Rectband {
        #[arg(value_parser = positive)]
        rows: usize,
        #[arg(value_parser = positive)]
        cols: usize,
        /// Also write the unsimplified presentation as text.
        #[arg(long)]
        dump_presentation: Option<PathBuf>,
    },
    /// Singular squares of a dumped semigroup.
    Squares { input: PathBuf },
    /// Tietze-simplify a presentation text file.
    Simplify { input: PathBuf },
    /// Re-run the checks on a dumped verification input.
    Verify { input: PathBuf },
}

fn positive(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

impl Cli {
    pub fn options(&self) -> ReportOptions {
        ReportOptions {
            closure_cap: self.closure_cap,
            coset_cap: self.coset_cap,
            tietze: TietzeLimits {
                max_passes: self.tietze_passes,
                ..TietzeLimits::default()
            },
            extra_generators: Vec::new(),
        }
    }
}

/// A finished command: the structured document, its text rendering, the
/// verdict when the command checks anything, and the exit code.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub document: Value,
    pub text: String,
    pub verdict: Option<Verdict>,
    pub code: i32,
}

impl Outcome {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Structured => {
                let mut s = serde_json::to_string_pretty(&self.document).expect("serializable");
                s.push('\n');
                s
            }
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e.root() {
        Error::CapacityExceeded { .. } | Error::SmithOverflow => EXIT_CAP,
        Error::ConstructionInvariant(_) => EXIT_FAIL,
        _ => EXIT_INPUT,
    }
}

pub fn error_document(e: &Error) -> Value {
    json!({
        "format": ERROR,
        "version": VERSION,
        "error": {
            "kind": e.kind(),
            "stage": e.stage(),
            "message": e.to_string(),
        }
    })
}

fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::Pass | Verdict::PassWithAbelianization => EXIT_PASS,
        Verdict::Fail => EXIT_FAIL,
        Verdict::Inconclusive => EXIT_CAP,
    }
}

fn report(command: &str, stages: Value, verdict: Option<Verdict>) -> Value {
    json!({
        "format": REPORT,
        "version": VERSION,
        "command": command,
        "stages": stages,
        "verdict": verdict,
    })
}

fn read_input(path: &Path) -> Result<String> {
    let read = || -> std::io::Result<String> {
        if path == Path::new("-") {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        } else {
            std::fs::read_to_string(path)
        }
    };
    read().map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
        .at(Stage::Input)
    })
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })
}

fn write_json(path: &Path, v: &impl serde::Serialize) -> Result<()> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    write_file(path, &s)
}

/// Runs one command without touching standard output.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    let opts = cli.options();
    match &cli.command {
        Command::Construct1 {
            input,
            dump_semigroup,
            dump_verify,
        } => {
            let text = read_input(input)?;
            let p = GroupPresentation::parse(&text).map_err(|e| e.at(Stage::Input))?;
            let run = run_construction1(&p, &opts)?;
            let names = construction1_names(&run);
            if let Some(path) = dump_semigroup {
                write_json(
                    path,
                    &SemigroupDoc::new(&run.construction.semigroup, &names),
                )?;
            }
            let squares = square_docs(&run.h, &run.construction.semigroup, &names);
            if let Some(path) = dump_verify {
                let defining = DefiningDoc::Presentation(
                    run.triangularization
                        .presentation
                        .to_presentation()
                        .to_string(),
                );
                let doc = VerifyDoc::new(
                    &run.construction.y,
                    squares.clone(),
                    &run.residue_presentation,
                    defining,
                );
                write_json(path, &doc)?;
            }
            Ok(construct1_outcome(&run, squares, opts.tietze))
        }
        Command::Construct2 {
            input,
            dump_semigroup,
            dump_verify,
        } => {
            let text = read_input(input)?;
            let t = parse_cayley(&text).map_err(|e| e.at(Stage::Input))?;
            let run = run_construction2(&t, &opts)?;
            let c = &run.construction;
            if let Some(path) = dump_semigroup {
                write_json(path, &SemigroupDoc::new(&c.semigroup, &c.names))?;
            }
            let squares = square_docs(&run.h, &c.semigroup, &c.names);
            if let Some(path) = dump_verify {
                let defining = DefiningDoc::Cayley(CayleyDoc::from_table(&t));
                let doc =
                    VerifyDoc::new(&c.y, squares.clone(), &run.residue_presentation, defining);
                write_json(path, &doc)?;
            }
            Ok(construct2_outcome(&run, squares, opts.tietze))
        }
        Command::Rectband {
            rows,
            cols,
            dump_presentation,
        } => rectband_outcome(*rows, *cols, &opts, dump_presentation.as_deref()),
        Command::Squares { input } => {
            let text = read_input(input)?;
            let doc: SemigroupDoc = decode(&text, SEMIGROUP).map_err(|e| e.at(Stage::Input))?;
            let (s, names) = doc.load().map_err(|e| e.at(Stage::Input))?;
            let h = HPresentation::new(
                s.ambient().rows,
                s.ambient().cols,
                singular_squares(&s).map_err(|e| e.at(Stage::Squares))?,
            );
            let squares = square_docs(&h, &s, &names);
            let stages = json!({ "squares": squares_value(&squares) });
            Ok(Outcome {
                text: render::squares(&squares),
                document: report("squares", stages, None),
                verdict: None,
                code: EXIT_PASS,
            })
        }
        Command::Simplify { input } => {
            let text = read_input(input)?;
            let p = GroupPresentation::parse(&text).map_err(|e| e.at(Stage::Input))?;
            let out = tietze_simplify(&p, opts.tietze);
            let stages = json!({
                "input": presentation_value(&p),
                "simplified": simplified_value(&out),
            });
            Ok(Outcome {
                text: render::simplify(&p, &out),
                document: report("simplify", stages, None),
                verdict: None,
                code: EXIT_PASS,
            })
        }
        Command::Verify { input } => {
            let text = read_input(input)?;
            let doc: VerifyDoc = decode(&text, VERIFY_INPUT).map_err(|e| e.at(Stage::Input))?;
            let report_ = verify_document(&doc, opts.coset_cap)?;
            let stages = json!({ "verification": report_ });
            Ok(Outcome {
                text: render::verification(&report_),
                document: report("verify", stages, Some(report_.verdict)),
                verdict: Some(report_.verdict),
                code: verdict_code(report_.verdict),
            })
        }
    }
}

/// The `construct1` document for a parsed presentation.
pub fn construct1(p: &GroupPresentation, opts: &ReportOptions) -> Result<Outcome> {
    let run = run_construction1(p, opts)?;
    let names = construction1_names(&run);
    let squares = square_docs(&run.h, &run.construction.semigroup, &names);
    Ok(construct1_outcome(&run, squares, opts.tietze))
}

/// The `construct2` document for a Cayley table.
pub fn construct2(t: &CayleyTable, opts: &ReportOptions) -> Result<Outcome> {
    let run = run_construction2(t, opts)?;
    let c = &run.construction;
    let squares = square_docs(&run.h, &c.semigroup, &c.names);
    Ok(construct2_outcome(&run, squares, opts.tietze))
}

/// The `rectband` document.
pub fn rectband(rows: usize, cols: usize, opts: &ReportOptions) -> Result<Outcome> {
    rectband_outcome(rows, cols, opts, None)
}

fn rectband_outcome(
    rows: usize,
    cols: usize,
    opts: &ReportOptions,
    dump: Option<&Path>,
) -> Result<Outcome> {
    let run = run_rectband(rows, cols, opts)?;
    let h1 = run.h.to_group_presentation();
    if let Some(path) = dump {
        write_file(path, &h1.to_text())?;
    }
    let simplified = presentation_value(&run.simplified.presentation);
    let stages = json!({
        "band": { "rows": run.rows, "cols": run.cols },
        "squares": { "count": run.h.squares.len() },
        "presentation": presentation_value(&h1),
        "simplified": {
            "presentation": simplified,
            "eliminated": run.simplified.eliminated,
            "exhausted": run.simplified.exhausted,
        },
        "freeness": {
            "expected_rank": run.expected_rank,
            "generators": run.simplified.presentation.generators.len(),
            "relations": run.simplified.presentation.relations.len(),
            "passed": run.passed,
        },
    });
    let verdict = if run.passed {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(Outcome {
        text: render::rectband(&run),
        document: report("rectband", stages, Some(verdict)),
        verdict: Some(verdict),
        code: verdict_code(verdict),
    })
}

/// Re-derives the identification from the stored squares and checks the
/// stored residue against the defining group.
pub fn verify_document(doc: &VerifyDoc, max_cosets: usize) -> Result<VerificationReport> {
    let input = |e: Error| e.at(Stage::Input);
    let y: &AuxMatrix = &doc.matrix;
    let squares = doc
        .squares
        .iter()
        .map(SquareDoc::to_square)
        .collect::<Result<Vec<_>>>()
        .map_err(input)?;
    let (rows, cols) = (y.rows() as u32, y.cols() as u32);
    if let Some(sq) = squares
        .iter()
        .find(|s| s.i.max(s.k) > rows || s.j.max(s.l) > cols || s.i.min(s.k).min(s.j).min(s.l) == 0)
    {
        return Err(input(Error::Format(format!(
            "square {sq} lies outside the {rows}x{cols} matrix"
        ))));
    }
    let h = derive_identifications(&HPresentation::new(y.rows(), y.cols(), squares));
    let residue = GroupPresentation::parse(&doc.residue).map_err(input)?;
    let defining = match &doc.defining {
        DefiningDoc::Presentation(text) => {
            Defining::Presentation(GroupPresentation::parse(text).map_err(input)?)
        }
        DefiningDoc::Cayley(c) => Defining::Cayley(c.to_table().map_err(input)?),
    };
    verify_residue(&h, y, &residue, &defining, max_cosets)
}

fn construction1_names(run: &Run1) -> BTreeMap<usize, String> {
    let c = &run.construction;
    let s = &c.semigroup;
    let mut names = BTreeMap::new();
    let sigmas = (2..=c.m() as u32).map(|u| (format!("sigma_{u}"), c.sigma(u)));
    let taus = (1..=c.taus.len() as u32).map(|u| (format!("tau_{u}"), c.tau(u)));
    for (name, e) in sigmas.chain(taus) {
        if let Some(x) = s.index_of(e) {
            names.entry(x).or_insert(name);
        }
    }
    names
}

fn square_docs(
    h: &HPresentation,
    s: &FiniteSemigroup,
    names: &BTreeMap<usize, String>,
) -> Vec<SquareDoc> {
    h.squares
        .iter()
        .map(|sq| {
            let sq = SingularSquare {
                shape: classify(sq.i, sq.k, sq.j, sq.l, |r, c| r == 1 || c == 1),
                ..sq.clone()
            };
            SquareDoc::new(&sq, Some(element_name(s, names, sq.witness)))
        })
        .collect()
}

fn squares_value(squares: &[SquareDoc]) -> Value {
    let mut shapes: BTreeMap<String, usize> = BTreeMap::new();
    let mut kinds: BTreeMap<String, usize> = BTreeMap::new();
    for sq in squares {
        *shapes
            .entry(json!(sq.shape).as_str().unwrap_or_default().to_string())
            .or_default() += 1;
        *kinds
            .entry(json!(sq.kind).as_str().unwrap_or_default().to_string())
            .or_default() += 1;
    }
    json!({
        "count": squares.len(),
        "kinds": kinds,
        "shapes": shapes,
        "list": squares,
    })
}

fn presentation_value(p: &GroupPresentation) -> Value {
    json!({
        "generators": p.generators,
        "relations": p.relation_strings(),
    })
}

fn simplified_value(out: &TietzeOutcome) -> Value {
    json!({
        "presentation": presentation_value(&out.presentation),
        "eliminated": out.eliminated,
        "exhausted": out.exhausted,
    })
}

fn h1_value(h: &HPresentation) -> Value {
    json!({
        "generators": h.rows * h.cols,
        "unit_relations": h.unit_relations().len(),
        "square_relations": h.squares.len(),
    })
}

fn identification_value(h: &HPresentation, y: &AuxMatrix) -> Value {
    let id = h.identification.as_ref().expect("identification derived");
    let classes: Vec<Value> = id
        .classes
        .iter()
        .map(|c| {
            let (i, j) = c[0];
            json!({
                "representative": generator_name(i, j),
                "symbol": y.get(i, j),
                "positions": c,
            })
        })
        .collect();
    let mut shapes: BTreeMap<Shape, usize> = BTreeMap::new();
    for shape in h.shapes() {
        *shapes.entry(shape).or_default() += 1;
    }
    let shapes: BTreeMap<String, usize> = shapes
        .into_iter()
        .map(|(k, v)| (json!(k).as_str().unwrap_or_default().to_string(), v))
        .collect();
    json!({
        "unit": id.unit,
        "classes": classes,
        "merges": id.merges.len(),
        "shapes": shapes,
    })
}

fn residue_value(p: &GroupPresentation, tietze: TietzeLimits) -> Value {
    json!({
        "presentation": presentation_value(p),
        "text": p.to_string(),
        "simplified": simplified_value(&tietze_simplify(p, tietze)),
    })
}

fn construct1_outcome(run: &Run1, squares: Vec<SquareDoc>, tietze: TietzeLimits) -> Outcome {
    let c = &run.construction;
    let tri = &run.triangularization;
    let tri_p = tri.presentation.to_presentation();
    let names = construction1_names(run);
    let element = |name: String, e: &crate::transform::BElement| json!({ "name": name, "left": e.left, "right": e.right });
    let stages = json!({
        "input": {
            "presentation": presentation_value(&run.input),
            "order": run.input_order,
        },
        "triangular": {
            "rewritten": tri_p != run.input,
            "presentation": presentation_value(&tri_p),
            "p": tri.presentation.p(),
            "q": tri.presentation.q(),
            "identity": tri.identity.map(|g| tri.presentation.generators[g].clone()),
        },
        "construction": {
            "m": c.m(),
            "n": c.n(),
            "matrix": c.y,
            "sigmas": (2..=c.m() as u32).map(|u| element(format!("sigma_{u}"), c.sigma(u))).collect::<Vec<_>>(),
            "taus": (1..=c.taus.len() as u32).map(|u| element(format!("tau_{u}"), c.tau(u))).collect::<Vec<_>>(),
            "semigroup_size": c.semigroup.len(),
            "idempotents": c.census.idempotents,
            "census": c.census,
            "generator_names": names.values().collect::<Vec<_>>(),
        },
        "squares": squares_value(&squares),
        "presentation": h1_value(&run.h),
        "identification": identification_value(&run.h, &c.y),
        "residue": residue_value(&run.residue_presentation, tietze),
        "verification": run.report,
    });
    Outcome {
        text: render::construct1(run, &squares),
        document: report("construct1", stages, Some(run.report.verdict)),
        verdict: Some(run.report.verdict),
        code: verdict_code(run.report.verdict),
    }
}

fn construct2_outcome(run: &Run2, squares: Vec<SquareDoc>, tietze: TietzeLimits) -> Outcome {
    let c = &run.construction;
    let s = &c.semigroup;
    let name = |x: usize| element_name(s, &c.names, x);
    let sigmas: Vec<Value> = c
        .sigmas
        .iter()
        .enumerate()
        .map(|(k, e)| json!({ "name": format!("sigma_{}", k + 1), "left": e.left, "right": e.right }))
        .collect();
    let derived: Vec<Value> = c
        .derived
        .iter()
        .map(|d| {
            json!({
                "name": format!("sigma_{}", d.index),
                "factors": d.factors.iter().map(|f| format!("sigma_{f}")).collect::<Vec<_>>(),
                "formula": d.formula,
                "left": d.element.left,
                "right": d.element.right,
            })
        })
        .collect();
    let eggbox = c.dclass.as_ref().map(|egg| {
        egg.cells
            .iter()
            .map(|row| {
                row.iter()
                    .map(|cell| {
                        cell.iter()
                            .map(|&x| json!({ "name": name(x), "idempotent": s.is_idempotent(x) }))
                            .collect::<Vec<_>>()
                    })
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>()
    });
    let stages = json!({
        "input": {
            "elements": c.table.names(),
            "order": c.table.order(),
        },
        "construction": {
            "rows": c.y.rows(),
            "cols": c.y.cols(),
            "matrix": c.y,
            "sigmas": sigmas,
            "derived": derived,
            "semigroup_size": s.len(),
            "idempotents": c.checks.idempotents,
            "checks": c.checks,
            "eggbox": eggbox,
            "regular_biorder": run.regular_biorder,
        },
        "squares": squares_value(&squares),
        "presentation": h1_value(&run.h),
        "identification": identification_value(&run.h, &c.y),
        "residue": residue_value(&run.residue_presentation, tietze),
        "verification": run.report,
    });
    Outcome {
        text: render::construct2(run, &squares),
        document: report("construct2", stages, Some(run.report.verdict)),
        verdict: Some(run.report.verdict),
        code: verdict_code(run.report.verdict),
    }
}

/// Parses arguments, runs the command and writes the document; returns the
/// process exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return EXIT_PASS;
            }
            if structured_requested(&args) {
                let doc = json!({
                    "format": ERROR,
                    "version": VERSION,
                    "error": { "kind": "usage-error", "stage": "input", "message": e.to_string().trim_end() },
                });
                println!(
                    "{}",
                    serde_json::to_string_pretty(&doc).expect("serializable")
                );
            } else {
                let _ = e.print();
            }
            return EXIT_INPUT;
        }
    };
    let (body, code) = match execute(&cli) {
        Ok(out) => (out.render(cli.format), out.code),
        Err(e) => {
            let code = exit_code(&e);
            match cli.format {
                Format::Structured => {
                    let mut s =
                        serde_json::to_string_pretty(&error_document(&e)).expect("serializable");
                    s.push('\n');
                    (s, code)
                }
                Format::Text => {
                    eprintln!("error: {e}");
                    return code;
                }
            }
        }
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = write_file(path, &body) {
                eprintln!("error: {e}");
                return EXIT_INPUT;
            }
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(body.as_bytes());
        }
    }
    code
}

fn structured_requested(args: &[std::ffi::OsString]) -> bool {
    args.windows(2)
        .any(|w| w[0] == "--format" && w[1] == "structured")
        || args.iter().any(|a| a == "--format=structured")
}
