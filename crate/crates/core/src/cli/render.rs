use std::fmt::Write;

use super::docs::SquareDoc;
use crate::presentation::{GroupPresentation, TietzeOutcome};
use crate::verify::{Run1, Run2, RunBand, SoundnessMode, Verdict, VerificationReport};

fn verdict(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::PassWithAbelianization => "pass-with-abelianization",
        Verdict::Fail => "fail",
        Verdict::Inconclusive => "inconclusive",
    }
}

fn flag(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "fail"
    }
}

fn square_summary(out: &mut String, squares: &[SquareDoc]) {
    let lr = squares
        .iter()
        .filter(|s| s.kind == crate::ig::SquareKind::Lr)
        .count();
    let _ = writeln!(
        out,
        "singular squares: {} ({lr} LR, {} UD)",
        squares.len(),
        squares.len() - lr
    );
}

pub(super) fn squares(squares: &[SquareDoc]) -> String {
    let mut out = String::new();
    square_summary(&mut out, squares);
    for s in squares {
        let kind = match s.kind {
            crate::ig::SquareKind::Lr => "LR",
            crate::ig::SquareKind::Ud => "UD",
        };
        let _ = writeln!(
            out,
            "  ({},{};{},{}) {kind} {:?} witness {}",
            s.i,
            s.k,
            s.j,
            s.l,
            s.shape,
            s.witness_name
                .clone()
                .unwrap_or_else(|| s.witness.to_string())
        );
    }
    out
}

pub(super) fn verification(r: &VerificationReport) -> String {
    let mut out = String::new();
    let mode = match r.soundness.mode {
        SoundnessMode::Evaluated => "evaluated",
        SoundnessMode::Syntactic => "syntactic",
    };
    let _ = writeln!(
        out,
        "soundness: {} ({mode}, {} relations)",
        flag(r.soundness.passed),
        r.soundness.checked
    );
    for v in &r.soundness.violations {
        let _ = writeln!(out, "  violated: {v}");
    }
    let _ = writeln!(
        out,
        "completeness: {} ({} defining relations)",
        flag(r.completeness.passed),
        r.completeness.expected
    );
    for m in &r.completeness.missing {
        let _ = writeln!(out, "  missing: {m}");
    }
    match &r.order {
        Some(o) => {
            let shown = |x: Option<usize>| x.map_or("overflow".to_string(), |x| x.to_string());
            let _ = writeln!(
                out,
                "order: expected {}, enumerated {}",
                shown(o.expected),
                shown(o.enumerated)
            );
        }
        None => {
            let _ = writeln!(out, "order: not checked (enumeration overflowed)");
        }
    }
    if let Some(a) = &r.abelian {
        let _ = writeln!(
            out,
            "abelian invariants: {:?} (defining group {:?}) {}",
            a.computed,
            a.expected,
            flag(a.passed)
        );
    }
    let exact = if r.identification.exact {
        "exact"
    } else {
        "coarser"
    };
    let _ = writeln!(
        out,
        "identification: {} ({exact})",
        flag(r.identification.passed)
    );
    let _ = writeln!(out, "census: {}", flag(r.census));
    if let Some(rp) = &r.replay {
        let _ = writeln!(out, "replay: {}", flag(rp.passed()));
    }
    for u in &r.unverified {
        let _ = writeln!(out, "unverified: {u}");
    }
    let _ = writeln!(out, "verdict: {}", verdict(r.verdict));
    out
}

fn residue(out: &mut String, p: &GroupPresentation) {
    let _ = writeln!(
        out,
        "residue: {} generators, {} relations",
        p.generators.len(),
        p.relations.len()
    );
    let _ = writeln!(out, "  {p}");
}

pub(super) fn construct1(run: &Run1, squares: &[SquareDoc]) -> String {
    let c = &run.construction;
    let mut out = String::new();
    let _ = writeln!(out, "input: {}", run.input);
    let tri = run.triangularization.presentation.to_presentation();
    if tri != run.input {
        let _ = writeln!(out, "triangular form: {tri}");
    }
    let _ = writeln!(out, "m = {}, n = {}", c.m(), c.n());
    let _ = writeln!(
        out,
        "|S| = {}, |E(S)| = {}",
        c.semigroup.len(),
        c.census.idempotents
    );
    square_summary(&mut out, squares);
    let id = run
        .h
        .identification
        .as_ref()
        .expect("identification derived");
    let _ = writeln!(
        out,
        "identification: {} classes, {} unit positions",
        id.classes.len(),
        id.unit.len()
    );
    residue(&mut out, &run.residue_presentation);
    out.push_str(&verification(&run.report));
    out
}

pub(super) fn construct2(run: &Run2, squares: &[SquareDoc]) -> String {
    let c = &run.construction;
    let k = &c.checks;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "group of order {}: {}",
        c.table.order(),
        c.table.names().join(" ")
    );
    let _ = writeln!(out, "band {}x{}", c.y.rows(), c.y.cols());
    let _ = writeln!(
        out,
        "|<sigma_1..sigma_6>| = {}, |S| = {}, |D| = {}, |E(S)| = {}",
        k.sigma_closure_size, k.semigroup_size, k.d_size, k.idempotents
    );
    let _ = writeln!(
        out,
        "eggbox {}x{}, H-classes of size {}, {} cells without idempotents",
        k.eggbox_rows, k.eggbox_cols, k.h_class_size, k.idempotent_free_cells
    );
    let _ = writeln!(
        out,
        "regular: {}, regular biorder: {}",
        k.regular, run.regular_biorder
    );
    if k.boundary {
        let _ = writeln!(out, "trivial group: structural counts not checked");
    }
    square_summary(&mut out, squares);
    residue(&mut out, &run.residue_presentation);
    out.push_str(&verification(&run.report));
    out
}

pub(super) fn rectband(run: &RunBand) -> String {
    let p = &run.simplified.presentation;
    format!(
        "band {}x{}: {} singular squares\nsimplified: {} generators, {} relations (expected free of rank {})\nverdict: {}\n",
        run.rows,
        run.cols,
        run.h.squares.len(),
        p.generators.len(),
        p.relations.len(),
        run.expected_rank,
        flag(run.passed)
    )
}

pub(super) fn simplify(input: &GroupPresentation, out: &TietzeOutcome) -> String {
    let mut s = format!("input: {input}\nsimplified: {}\n", out.presentation);
    if !out.eliminated.is_empty() {
        let _ = writeln!(s, "eliminated: {}", out.eliminated.join(" "));
    }
    if out.exhausted {
        s.push_str("pass budget exhausted\n");
    }
    s
}
