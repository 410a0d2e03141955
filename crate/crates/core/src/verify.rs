//! Checks that a derived residue presents the input group, and the
//! end-to-end pipelines that produce it.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::constructions::{
    build_construction1_with, build_construction2, AuxMatrix, Construction1, Construction2, UNIT,
};
use crate::error::{invalid, Error, Result, Stage};
use crate::ig::{
    check_identification_matches_matrix, derive_identifications, h1_presentation, replay_merges,
    replay_witnesses, residue, reverse_partition, HPresentation, Residue,
};
use crate::presentation::{
    abelian_invariants, cayley_from_coset_table, evaluate, tietze_simplify, todd_coxeter,
    triangularize, CayleyTable, Enumeration, GroupPresentation, Relation, TietzeLimits,
    TietzeOutcome, Triangularization, Word, DEFAULT_MAX_COSETS,
};
use crate::semigroup::{close, is_regular_biorder, DEFAULT_CLOSURE_CAP};
use crate::transform::{rect_band, Ambient, BElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    PassWithAbelianization,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn is_pass(self) -> bool {
        matches!(self, Verdict::Pass | Verdict::PassWithAbelianization)
    }
}

/// A finite group together with the element each matrix symbol denotes.
#[derive(Debug, Clone)]
pub struct Interpretation {
    pub table: CayleyTable,
    pub symbols: BTreeMap<String, usize>,
}

impl Interpretation {
    /// Symbols are the element names, with `1` for the identity.
    pub fn from_cayley(t: &CayleyTable) -> Self {
        let mut symbols: BTreeMap<String, usize> = t
            .names()
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i))
            .collect();
        symbols.insert(UNIT.to_string(), t.identity());
        Self {
            table: t.clone(),
            symbols,
        }
    }

    /// The group of a completed enumeration, with each generator of `p`
    /// mapped to its image.
    pub fn from_enumeration(p: &GroupPresentation, e: &Enumeration) -> Result<Self> {
        let table = cayley_from_coset_table(e, &p.generators)?;
        let Enumeration::Complete(ct) = e else {
            unreachable!("cayley_from_coset_table accepted the enumeration")
        };
        let mut symbols: BTreeMap<String, usize> = p
            .generators
            .iter()
            .enumerate()
            .map(|(g, n)| (n.clone(), ct.rows[0][2 * g]))
            .collect();
        symbols.insert(UNIT.to_string(), table.identity());
        Ok(Self { table, symbols })
    }

    fn resolve(&self, sym: &str) -> Result<usize> {
        self.symbols
            .get(sym)
            .copied()
            .ok_or_else(|| invalid(format!("symbol {sym} does not name a group element")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SoundnessMode {
    /// Every relation evaluated in the group.
    Evaluated,
    /// Residue relations compared with the defining relations.
    Syntactic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SoundnessCheck {
    pub mode: SoundnessMode,
    pub checked: usize,
    pub passed: bool,
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompletenessCheck {
    pub expected: usize,
    pub passed: bool,
    pub missing: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderCheck {
    /// `None` when the group is taken to be infinite.
    pub expected: Option<usize>,
    pub enumerated: Option<usize>,
    pub cosets_used: Option<usize>,
    /// `None` when the enumeration overflowed.
    pub passed: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbelianCheck {
    pub expected: Vec<u64>,
    pub computed: Vec<u64>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentificationCheck {
    /// Every matrix class is identified; extra identifications are allowed.
    pub passed: bool,
    /// The derived partition equals the matrix partition.
    pub exact: bool,
    pub mismatches: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReplayCheck {
    pub witnesses: bool,
    pub merges: bool,
    pub order_independent: bool,
    pub detail: Vec<String>,
}

impl ReplayCheck {
    pub fn passed(&self) -> bool {
        self.witnesses && self.merges && self.order_independent
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub soundness: SoundnessCheck,
    pub completeness: CompletenessCheck,
    pub order: Option<OrderCheck>,
    pub abelian: Option<AbelianCheck>,
    pub identification: IdentificationCheck,
    pub census: bool,
    pub replay: Option<ReplayCheck>,
    pub unverified: Vec<String>,
    pub verdict: Verdict,
}

impl VerificationReport {
    /// Pass iff every performed check passes and nothing is unverified.
    /// Runs without an order check pass only through the abelianization.
    fn decide(&mut self) {
        let infinite = self.order.is_none();
        let failed = !self.soundness.passed
            || !self.completeness.passed
            || !self.identification.passed
            || !self.census
            || self.replay.as_ref().is_some_and(|r| !r.passed())
            || self.order.as_ref().is_some_and(|o| o.passed == Some(false))
            || self.abelian.as_ref().is_some_and(|a| !a.passed);
        let inconclusive =
            !self.unverified.is_empty() || self.order.as_ref().is_some_and(|o| o.passed.is_none());
        self.verdict = if failed {
            Verdict::Fail
        } else if inconclusive {
            Verdict::Inconclusive
        } else if infinite {
            Verdict::PassWithAbelianization
        } else {
            Verdict::Pass
        };
    }
}

/// Evaluates every relation of a grid presentation (`f_ij` row-major) with
/// `f_ij` sent to the element named by `y_ij`.
pub fn verify_soundness(
    h1: &GroupPresentation,
    y: &AuxMatrix,
    interp: &Interpretation,
) -> Result<SoundnessCheck> {
    let cells = y.rows() * y.cols();
    if h1.generators.len() != cells {
        return Err(invalid(format!(
            "presentation has {} generators, matrix has {cells} entries",
            h1.generators.len()
        )));
    }
    let assignment = y
        .entries()
        .iter()
        .flatten()
        .map(|s| interp.resolve(s))
        .collect::<Result<Vec<_>>>()?;
    let mut violations = Vec::new();
    for r in &h1.relations {
        let lhs = evaluate(&interp.table, &assignment, &r.lhs)?;
        let rhs = evaluate(&interp.table, &assignment, &r.rhs)?;
        if lhs != rhs {
            violations.push(r.display(&h1.generators));
        }
    }
    Ok(SoundnessCheck {
        mode: SoundnessMode::Evaluated,
        checked: h1.relations.len(),
        passed: violations.is_empty(),
        violations,
    })
}

/// Residue word for each matrix symbol: the class of its first position.
pub fn symbol_words(h: &HPresentation, y: &AuxMatrix) -> BTreeMap<String, Word> {
    let mut out = BTreeMap::new();
    let Some(id) = &h.identification else {
        return out;
    };
    if y.rows() != h.rows || y.cols() != h.cols {
        return out;
    }
    for (sym, positions) in y.classes() {
        let (i, j) = positions[0];
        let w = match id.class_of(i, j) {
            Some(c) => Word::gen(c),
            None => Word::empty(),
        };
        out.insert(sym.to_string(), w);
    }
    out
}

/// Rewrites a relation over `from` into the residue alphabet, through
/// `symbols` when given and by generator name otherwise.
fn rename(
    r: &Relation,
    from: &[String],
    to: &GroupPresentation,
    symbols: &BTreeMap<String, Word>,
) -> Option<Relation> {
    let word = |w: &Word| -> Option<Word> {
        let mut out = Word::empty();
        for l in w.letters() {
            let name = &from[l.gen];
            let image = if name == UNIT {
                Word::empty()
            } else if let Some(v) = symbols.get(name) {
                v.clone()
            } else {
                Word::gen(to.generator_id(name)?)
            };
            out = out.concat(&if l.inverse { image.inverse() } else { image });
        }
        Some(out)
    };
    Some(Relation::new(word(&r.lhs)?, word(&r.rhs)?))
}

/// Every relation of `defining` appears in `residue` up to swapping sides.
/// Generators are matched through `symbols` (see [`symbol_words`]) or by
/// name; relations that become trivial are skipped.
pub fn verify_completeness(
    residue: &GroupPresentation,
    defining: &GroupPresentation,
    symbols: &BTreeMap<String, Word>,
) -> CompletenessCheck {
    let mut missing = Vec::new();
    let mut expected = 0;
    for r in &defining.relations {
        let renamed = rename(r, &defining.generators, residue, symbols);
        if r.is_trivial() || renamed.as_ref().is_some_and(Relation::is_trivial) {
            continue;
        }
        expected += 1;
        let found = renamed.is_some_and(|r| {
            residue
                .relations
                .iter()
                .any(|x| *x == r || *x == r.swapped())
        });
        if !found {
            missing.push(r.display(&defining.generators));
        }
    }
    CompletenessCheck {
        expected,
        passed: missing.is_empty(),
        missing,
    }
}

/// Residue relations that are neither trivial nor a defining relation.
pub fn syntactic_soundness(
    residue: &GroupPresentation,
    defining: &GroupPresentation,
    symbols: &BTreeMap<String, Word>,
) -> SoundnessCheck {
    let known: Vec<Relation> = defining
        .relations
        .iter()
        .filter_map(|r| rename(r, &defining.generators, residue, symbols))
        .collect();
    let violations: Vec<String> = residue
        .relations
        .iter()
        .filter(|r| !r.is_trivial() && !known.iter().any(|k| k == *r || k.swapped() == **r))
        .map(|r| r.display(&residue.generators))
        .collect();
    SoundnessCheck {
        mode: SoundnessMode::Syntactic,
        checked: residue.relations.len(),
        passed: violations.is_empty(),
        violations,
    }
}

/// Enumerates `p` and compares with `expected`; for `None` (infinite) only
/// records whether enumeration overflowed.
pub fn verify_order(
    p: &GroupPresentation,
    expected: Option<usize>,
    max_cosets: usize,
) -> Result<OrderCheck> {
    let e = todd_coxeter(p, &[], max_cosets)?;
    Ok(match (e, expected) {
        (Enumeration::Complete(t), exp) => OrderCheck {
            expected: exp,
            enumerated: Some(t.index()),
            cosets_used: Some(t.index()),
            passed: Some(exp == Some(t.index())),
        },
        (Enumeration::Overflow { cosets_used }, exp) => OrderCheck {
            expected: exp,
            enumerated: None,
            cosets_used: Some(cosets_used),
            passed: None,
        },
    })
}

pub fn verify_abelian(
    residue: &GroupPresentation,
    defining: &GroupPresentation,
) -> Result<AbelianCheck> {
    let expected = abelian_invariants(defining)?;
    let computed = abelian_invariants(residue)?;
    Ok(AbelianCheck {
        passed: expected == computed,
        expected,
        computed,
    })
}

#[derive(Debug, Clone)]
pub struct ReportOptions {
    pub closure_cap: usize,
    pub coset_cap: usize,
    pub tietze: TietzeLimits,
    /// Extra generators adjoined to construction 1 before closing.
    pub extra_generators: Vec<BElement>,
}

impl Default for ReportOptions {
    fn default() -> Self {
        Self {
            closure_cap: DEFAULT_CLOSURE_CAP,
            coset_cap: DEFAULT_MAX_COSETS,
            tietze: TietzeLimits::default(),
            extra_generators: Vec::new(),
        }
    }
}

fn replay(s: &crate::semigroup::FiniteSemigroup, h: &HPresentation) -> ReplayCheck {
    let mut detail = Vec::new();
    let witnesses = replay_witnesses(s, &h.squares)
        .map_err(|e| detail.push(e))
        .is_ok();
    let merges = replay_merges(h).map_err(|e| detail.push(e)).is_ok();
    let id = h.identification.as_ref().expect("identification derived");
    let order_independent = reverse_partition(h) == (id.unit.clone(), id.classes.clone());
    if !order_independent {
        detail.push("reverse-order closure gives a different partition".into());
    }
    ReplayCheck {
        witnesses,
        merges,
        order_independent,
        detail,
    }
}

fn identification_check(h: &HPresentation, y: &AuxMatrix) -> Result<IdentificationCheck> {
    let c = check_identification_matches_matrix(h, y).map_err(|e| e.at(Stage::Identification))?;
    Ok(IdentificationCheck {
        passed: c.covers_matrix,
        exact: c.matches,
        mismatches: c.mismatches,
    })
}

/// Squares, presentation, identification and residue of a semigroup.
fn derive(s: &crate::semigroup::FiniteSemigroup) -> Result<(HPresentation, Residue)> {
    let h = h1_presentation(s).map_err(|e| e.at(Stage::Squares))?;
    let h = derive_identifications(&h);
    let r = residue(&h).map_err(|e| e.at(Stage::Residue))?;
    Ok((h, r))
}

#[derive(Debug)]
pub struct Run1 {
    pub input: GroupPresentation,
    pub triangularization: Triangularization,
    pub construction: Construction1,
    pub h: HPresentation,
    pub residue: Residue,
    pub residue_presentation: GroupPresentation,
    pub input_order: Option<usize>,
    pub report: VerificationReport,
}

/// What the residue is checked against.
#[derive(Debug, Clone)]
pub enum Defining {
    Presentation(GroupPresentation),
    Cayley(CayleyTable),
}

/// All checks that need only the derived presentation, the matrix, the
/// residue and the defining group. A presentation whose enumeration
/// overflows is treated as infinite: soundness becomes syntactic and the
/// order check is replaced by the abelian invariants.
pub fn verify_residue(
    h: &HPresentation,
    y: &AuxMatrix,
    residue: &GroupPresentation,
    defining: &Defining,
    max_cosets: usize,
) -> Result<VerificationReport> {
    let verr = |e: Error| e.at(Stage::Verification);
    let symbols = symbol_words(h, y);
    let (interp, relations) = match defining {
        Defining::Cayley(t) => (Some(Interpretation::from_cayley(t)), t.to_presentation()),
        Defining::Presentation(p) => {
            let e = todd_coxeter(p, &[], max_cosets).map_err(verr)?;
            let interp = match e {
                Enumeration::Complete(_) => {
                    Some(Interpretation::from_enumeration(p, &e).map_err(verr)?)
                }
                Enumeration::Overflow { .. } => None,
            };
            (interp, p.clone())
        }
    };
    let mut unverified = Vec::new();
    let infinite = interp.is_none();
    let (soundness, order) = match &interp {
        Some(interp) => {
            let s = verify_soundness(&h.to_group_presentation(), y, interp).map_err(verr)?;
            let o = verify_order(residue, Some(interp.table.order()), max_cosets).map_err(verr)?;
            (s, Some(o))
        }
        None => {
            let s = syntactic_soundness(residue, &relations, &symbols);
            unverified.extend(s.violations.iter().cloned());
            (SoundnessCheck { passed: true, ..s }, None)
        }
    };
    let abelian = verify_abelian(residue, &relations).map_err(verr)?;
    if infinite && !abelian.computed.contains(&0) {
        unverified.push(format!(
            "enumeration overflowed at {max_cosets} cosets but the abelian invariants {:?} have no free factor",
            abelian.computed
        ));
    }
    let mut report = VerificationReport {
        soundness,
        completeness: verify_completeness(residue, &relations, &symbols),
        order,
        abelian: Some(abelian),
        identification: identification_check(h, y)?,
        census: true,
        replay: None,
        unverified,
        verdict: Verdict::Fail,
    };
    report.decide();
    Ok(report)
}

pub fn run_construction1(input: &GroupPresentation, opts: &ReportOptions) -> Result<Run1> {
    input.validate().map_err(|e| e.at(Stage::Input))?;
    let tri = triangularize(input);
    let c = build_construction1_with(&tri.presentation, opts.closure_cap, &opts.extra_generators)
        .map_err(|e| match e {
        Error::ConstructionInvariant(_) => e.at(Stage::Census),
        e => e.at(Stage::Construction),
    })?;
    let (h, r) = derive(&c.semigroup)?;
    let residue_presentation = r.presentation(Some(&c.y));
    let defining = Defining::Presentation(tri.presentation.to_presentation());
    let mut report = verify_residue(&h, &c.y, &residue_presentation, &defining, opts.coset_cap)?;
    report.replay = Some(replay(&c.semigroup, &h));
    report.decide();
    Ok(Run1 {
        input: input.clone(),
        triangularization: tri,
        input_order: report.order.as_ref().and_then(|o| o.expected),
        construction: c,
        h,
        residue: r,
        residue_presentation,
        report,
    })
}

#[derive(Debug)]
pub struct Run2 {
    pub construction: Construction2,
    pub h: HPresentation,
    pub residue: Residue,
    pub residue_presentation: GroupPresentation,
    pub regular_biorder: bool,
    pub report: VerificationReport,
}

pub fn run_construction2(t: &CayleyTable, opts: &ReportOptions) -> Result<Run2> {
    let c = build_construction2(t, opts.closure_cap).map_err(|e| e.at(Stage::Construction))?;
    let (h, r) = derive(&c.semigroup)?;
    let residue_presentation = r.presentation(Some(&c.y));
    let defining = Defining::Cayley(t.clone());
    let mut report = verify_residue(&h, &c.y, &residue_presentation, &defining, opts.coset_cap)?;
    report.replay = Some(replay(&c.semigroup, &h));
    report.decide();
    Ok(Run2 {
        regular_biorder: is_regular_biorder(&c.semigroup),
        construction: c,
        h,
        residue: r,
        residue_presentation,
        report,
    })
}

#[derive(Debug)]
pub struct RunBand {
    pub rows: usize,
    pub cols: usize,
    pub h: HPresentation,
    pub simplified: TietzeOutcome,
    pub expected_rank: usize,
    pub passed: bool,
}

pub fn run_rectband(rows: usize, cols: usize, opts: &ReportOptions) -> Result<RunBand> {
    if rows == 0 || cols == 0 {
        return Err(invalid("band dimensions must be at least 1").at(Stage::Input));
    }
    let s = close(&rect_band(Ambient::new(rows, cols)), opts.closure_cap)
        .map_err(|e| e.at(Stage::Construction))?;
    let h = h1_presentation(&s).map_err(|e| e.at(Stage::Squares))?;
    let simplified = tietze_simplify(&h.to_group_presentation(), opts.tietze);
    let expected_rank = (rows - 1) * (cols - 1);
    let passed = simplified.presentation.generators.len() == expected_rank
        && simplified.presentation.relations.is_empty();
    Ok(RunBand {
        rows,
        cols,
        h,
        simplified,
        expected_rank,
        passed,
    })
}

pub enum PipelineInput {
    Construction1(GroupPresentation),
    Construction2(CayleyTable),
}

pub fn full_report(input: &PipelineInput, opts: &ReportOptions) -> Result<VerificationReport> {
    Ok(match input {
        PipelineInput::Construction1(p) => run_construction1(p, opts)?.report,
        PipelineInput::Construction2(t) => run_construction2(t, opts)?.report,
    })
}
