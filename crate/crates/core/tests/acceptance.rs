//! Acceptance run: one PASS/FAIL line per criterion.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::{data, golden, props, structured};
use igmax::cli::docs::parse_cayley;
use igmax::presentation::{CayleyTable, GroupPresentation};
use igmax::semigroup::{
    greens, idempotents, is_regular_biorder, is_regular_semigroup, sandwich_set,
};
use igmax::transform::{b_mul, BElement};
use igmax::verify::{
    run_construction1, run_construction2, run_rectband, ReportOptions, Run2, Verdict,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:?}, limit {limit:?}"))?;
    Ok(t)
}

fn images(e: &BElement) -> (Vec<u32>, Vec<u32>) {
    (e.left.images().to_vec(), e.right.images().to_vec())
}

fn opts() -> ReportOptions {
    ReportOptions::default()
}

fn table(names: &[&str], mul: impl Fn(usize, usize) -> usize) -> CayleyTable {
    let n = names.len();
    let rows = (0..n)
        .map(|a| (0..n).map(|b| mul(a, b)).collect())
        .collect();
    CayleyTable::new(names.iter().map(|s| s.to_string()).collect(), rows).unwrap()
}

fn cyclic(n: usize) -> CayleyTable {
    let names: Vec<String> = (0..n)
        .map(|k| if k == 0 { "1".into() } else { format!("x{k}") })
        .collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    table(&refs, |a, b| (a + b) % n)
}

fn klein_four() -> CayleyTable {
    table(&["1", "a", "b", "c"], |a, b| a ^ b)
}

fn from_file(name: &str) -> CayleyTable {
    parse_cayley(&std::fs::read_to_string(data(name)).unwrap()).unwrap()
}

/// `g h = gh` for all non-identity `g, h`, read straight off the table,
/// as unordered pairs of sides.
fn cayley_relations(t: &CayleyTable) -> BTreeSet<BTreeSet<String>> {
    let n = t.order();
    let mut out = BTreeSet::new();
    for a in 1..n {
        for b in 1..n {
            let lhs = format!("{} {}", t.name(a), t.name(b));
            let rhs = t.name(t.mul(a, b)).to_string();
            out.insert([lhs, rhs].into_iter().collect());
        }
    }
    out
}

fn relation_set(p: &GroupPresentation) -> BTreeSet<BTreeSet<String>> {
    p.relation_strings()
        .iter()
        .map(|r| r.split(" = ").map(str::to_string).collect())
        .collect()
}

fn structural(run: &Run2) -> Result<(), String> {
    let c = &run.construction;
    let k = &c.checks;
    ensure(k.sigma_closure_size == 21, || {
        format!("<sigma_1..6> has {}", k.sigma_closure_size)
    })?;
    ensure(k.d_size == 18, || format!("|D| = {}", k.d_size))?;
    ensure(k.idempotents_outside_band == 6, || {
        format!("{} idempotents in D", k.idempotents_outside_band)
    })?;
    let n = c.table.order();
    ensure(k.idempotents == 3 * n * n + 6, || {
        format!("|E(S)| = {}", k.idempotents)
    })?;
    ensure(idempotents(&c.semigroup).len() == k.idempotents, || {
        "idempotent count disagrees".into()
    })?;
    ensure(is_regular_semigroup(&c.semigroup), || {
        "S is not regular".into()
    })?;
    let egg = c.dclass.as_ref().ok_or("no D-class")?;
    ensure(egg.rows.len() == 3 && egg.cols.len() == 3, || {
        "eggbox is not 3x3".into()
    })?;
    let mut free = 0;
    for row in &egg.cells {
        for cell in row {
            ensure(cell.len() == 2, || {
                format!("H-class of size {}", cell.len())
            })?;
            if !cell.iter().any(|&x| c.semigroup.is_idempotent(x)) {
                free += 1;
            }
        }
        let per_row = row
            .iter()
            .flatten()
            .filter(|&&x| c.semigroup.is_idempotent(x))
            .count();
        ensure(per_row == 2, || {
            format!("eggbox row with {per_row} idempotents")
        })?;
    }
    ensure(free == 3, || format!("{free} idempotent-free cells"))?;
    let g = greens(&c.semigroup);
    ensure(g.eggboxes[egg.d_class].size() == 18, || {
        "D-class size".into()
    })?;
    Ok(())
}

fn criterion1() -> Outcome {
    let start = Instant::now();
    for rows in 2..=4 {
        for cols in 2..=4 {
            let run = run_rectband(rows, cols, &opts()).map_err(|e| e.to_string())?;
            let p = &run.simplified.presentation;
            let rank = (rows - 1) * (cols - 1);
            ensure(p.generators.len() == rank && p.relations.is_empty(), || {
                format!(
                    "{rows}x{cols}: {} generators, {} relations",
                    p.generators.len(),
                    p.relations.len()
                )
            })?;
        }
    }
    let t = within(start, Duration::from_secs(1))?;
    Ok(format!("9 bands free of rank (I-1)(J-1) in {t:.2?}"))
}

fn criterion2() -> Outcome {
    let start = Instant::now();
    let t = klein_four();
    let run = run_construction2(&t, &opts()).map_err(|e| e.to_string())?;
    let expected: [(&[u32], &[u32]); 6] = [
        (
            &[1, 2, 2],
            &[1, 1, 1, 1, 6, 6, 6, 6, 11, 11, 11, 11, 16, 16, 16, 16],
        ),
        (
            &[1, 2, 1],
            &[1, 1, 1, 1, 5, 5, 5, 5, 9, 9, 9, 9, 13, 13, 13, 13],
        ),
        (
            &[1, 1, 3],
            &[1, 2, 3, 4, 1, 2, 3, 4, 1, 2, 3, 4, 1, 2, 3, 4],
        ),
        (
            &[1, 3, 3],
            &[1, 6, 11, 16, 1, 6, 11, 16, 1, 6, 11, 16, 1, 6, 11, 16],
        ),
        (
            &[2, 2, 3],
            &[1, 2, 3, 4, 2, 1, 4, 3, 3, 4, 1, 2, 4, 3, 2, 1],
        ),
        (
            &[3, 2, 3],
            &[1, 5, 9, 13, 5, 1, 13, 9, 9, 13, 1, 5, 13, 9, 5, 1],
        ),
    ];
    for (k, (l, r)) in expected.iter().enumerate() {
        let (gl, gr) = images(&run.construction.sigmas[k]);
        ensure(gl == *l && gr == *r, || format!("sigma_{} differs", k + 1))?;
    }
    structural(&run)?;
    ensure(run.construction.checks.idempotents == 54, || {
        "|E(S)| != 54".into()
    })?;
    ensure(
        relation_set(&run.residue_presentation) == cayley_relations(&t),
        || format!("residue {}", run.residue_presentation),
    )?;
    let order = run.report.order.as_ref().and_then(|o| o.enumerated);
    ensure(order == Some(4), || format!("order {order:?}"))?;
    let inv = &run
        .report
        .abelian
        .as_ref()
        .ok_or("no abelian check")?
        .computed;
    ensure(inv == &[2, 2], || format!("invariants {inv:?}"))?;
    ensure(run.report.verdict == Verdict::Pass, || {
        format!("verdict {:?}", run.report.verdict)
    })?;
    let t = within(start, Duration::from_secs(10))?;
    Ok(format!(
        "K4 tables, 21/18/6, eggbox, |E(S)| = 54, order 4, [2, 2] in {t:.2?}"
    ))
}

fn criterion3() -> Outcome {
    let start = Instant::now();
    let t = cyclic(4);
    let run = run_construction2(&t, &opts()).map_err(|e| e.to_string())?;
    let s = &run.construction.sigmas;
    ensure(
        images(&s[4]).1 == [1, 2, 3, 4, 4, 1, 2, 3, 3, 4, 1, 2, 2, 3, 4, 1],
        || "sigma_5 differs".into(),
    )?;
    ensure(
        images(&s[5]).1 == [1, 13, 9, 5, 5, 1, 13, 9, 9, 5, 1, 13, 13, 9, 5, 1],
        || "sigma_6 differs".into(),
    )?;
    structural(&run)?;
    ensure(
        relation_set(&run.residue_presentation) == cayley_relations(&t),
        || format!("residue {}", run.residue_presentation),
    )?;
    let order = run.report.order.as_ref().and_then(|o| o.enumerated);
    ensure(order == Some(4), || format!("order {order:?}"))?;
    let inv = &run
        .report
        .abelian
        .as_ref()
        .ok_or("no abelian check")?
        .computed;
    ensure(inv == &[4], || format!("invariants {inv:?}"))?;
    ensure(run.report.verdict == Verdict::Pass, || {
        format!("verdict {:?}", run.report.verdict)
    })?;
    let t = within(start, Duration::from_secs(10))?;
    Ok(format!(
        "C4 sigma_5, sigma_6, structure, order 4, [4] in {t:.2?}"
    ))
}

fn groups() -> Vec<(&'static str, CayleyTable)> {
    vec![
        ("C1", cyclic(1)),
        ("C2", cyclic(2)),
        ("C3", cyclic(3)),
        ("C4", cyclic(4)),
        ("K4", klein_four()),
        ("C5", cyclic(5)),
        ("C6", cyclic(6)),
        ("S3", from_file("s3.json")),
    ]
}

fn criterion4() -> Outcome {
    let start = Instant::now();
    for (name, t) in groups() {
        let run = run_construction2(&t, &opts()).map_err(|e| format!("{name}: {e}"))?;
        let r = &run.report;
        if name == "C1" {
            ensure(run.construction.checks.boundary, || {
                "C1 not flagged as boundary".into()
            })?;
        } else {
            structural(&run).map_err(|e| format!("{name}: {e}"))?;
        }
        ensure(
            r.soundness.passed && r.completeness.passed && r.census,
            || format!("{name}: {r:?}"),
        )?;
        ensure(r.identification.passed, || {
            format!("{name}: identification")
        })?;
        let order = r.order.as_ref().and_then(|o| o.enumerated);
        ensure(order == Some(t.order()), || {
            format!("{name}: order {order:?}")
        })?;
        ensure(run.regular_biorder, || {
            format!("{name}: biorder not regular")
        })?;
        ensure(r.verdict == Verdict::Pass, || {
            format!("{name}: verdict {:?}", r.verdict)
        })?;
    }
    let t = within(start, Duration::from_secs(120))?;
    Ok(format!(
        "C1 (boundary), C2, C3, C4, K4, C5, C6, S3 all pass in {t:.2?}"
    ))
}

fn klein_run() -> Result<igmax::verify::Run1, String> {
    let p =
        GroupPresentation::parse("< a, b, c | b a = c, c b = a >").map_err(|e| e.to_string())?;
    run_construction1(&p, &opts()).map_err(|e| e.to_string())
}

fn criterion5() -> Outcome {
    let start = Instant::now();
    let run = klein_run()?;
    let c = &run.construction;
    let y: Vec<String> = c.y.entries().iter().map(|r| r.join(" ")).collect();
    ensure(
        y == [
            "1 1 1 1 1 1 1 1",
            "1 a b c 1 a 1 1",
            "1 a b c b c 1 1",
            "1 a b c 1 1 1 b",
            "1 a b c 1 1 c a",
        ],
        || format!("Y = {y:?}"),
    )?;
    let sigmas: [(&[u32], &[u32]); 4] = [
        (&[1, 2, 2, 2, 2], &[1, 2, 3, 4, 1, 2, 1, 1]),
        (&[1, 3, 3, 3, 3], &[1, 2, 3, 4, 3, 4, 1, 1]),
        (&[1, 4, 4, 4, 4], &[1, 2, 3, 4, 1, 1, 1, 3]),
        (&[1, 5, 5, 5, 5], &[1, 2, 3, 4, 1, 1, 4, 2]),
    ];
    for (u, (l, r)) in sigmas.iter().enumerate() {
        let (gl, gr) = images(c.sigma(u as u32 + 2));
        ensure(gl == *l && gr == *r, || format!("sigma_{} differs", u + 2))?;
    }
    let taus: [(&[u32], &[u32]); 2] = [
        (&[2, 2, 3, 2, 2], &[1, 1, 1, 1, 5, 5, 1, 1]),
        (&[4, 4, 4, 4, 5], &[1, 1, 1, 1, 1, 1, 7, 7]),
    ];
    for (u, (l, r)) in taus.iter().enumerate() {
        let (gl, gr) = images(c.tau(u as u32 + 1));
        ensure(gl == *l && gr == *r, || format!("tau_{} differs", u + 1))?;
    }
    let e = idempotents(&c.semigroup).len();
    ensure(e == 46 && c.census.idempotents == 46, || {
        format!("|E(S)| = {e}")
    })?;
    let cs = &c.census;
    ensure(
        cs.sigma_sigma_checked == 16
            && cs.tau_tau_checked == 4
            && cs.sigma_tau_checked == 8
            && cs.tau_sigma_checked == 8,
        || format!("product laws checked on {cs:?}"),
    )?;
    ensure(!cs.tau_sigma_non_idempotent.is_empty(), || {
        "no non-idempotent tau sigma".into()
    })?;
    ensure(run.report.identification.exact, || {
        "identification classes differ from Y".into()
    })?;
    ensure(
        run.residue_presentation.relation_strings() == ["b a = c", "c b = a"],
        || format!("residue {}", run.residue_presentation),
    )?;
    let inv = &run
        .report
        .abelian
        .as_ref()
        .ok_or("no abelian check")?
        .computed;
    ensure(inv == &[2, 0], || format!("invariants {inv:?}"))?;
    ensure(
        run.report.verdict == Verdict::PassWithAbelianization,
        || format!("verdict {:?}", run.report.verdict),
    )?;
    let t = within(start, Duration::from_secs(10))?;
    Ok(format!(
        "Klein bottle Y, tables, |E(S)| = 46, {} non-idempotent tau sigma, residue, [2, 0] in {t:.2?}",
        cs.tau_sigma_non_idempotent.len()
    ))
}

fn criterion6() -> Outcome {
    let start = Instant::now();
    let mut orders = Vec::new();
    for (file, expected) in [("c2_identity.txt", 2), ("c3_identity.txt", 3)] {
        let p = GroupPresentation::parse(&std::fs::read_to_string(data(file)).unwrap())
            .map_err(|e| e.to_string())?;
        let run = run_construction1(&p, &opts()).map_err(|e| format!("{file}: {e}"))?;
        let order = run.report.order.as_ref().and_then(|o| o.enumerated);
        ensure(order == Some(expected), || {
            format!("{file}: order {order:?}")
        })?;
        ensure(run.report.verdict == Verdict::Pass, || {
            format!("{file}: verdict {:?}", run.report.verdict)
        })?;
        orders.push(order.unwrap());
    }
    let t = within(start, Duration::from_secs(30))?;
    Ok(format!("orders {orders:?} in {t:.2?}"))
}

fn criterion7() -> Outcome {
    let run = klein_run()?;
    let c = &run.construction;
    let s = &c.semigroup;
    let non_constant = &c.census.tau_sigma_non_idempotent;
    ensure(!non_constant.is_empty(), || {
        "every tau sigma is constant".into()
    })?;
    let mut empty = 0;
    for u in 1..=c.taus.len() as u32 {
        for v in 2..=c.m() as u32 {
            let t = s.index_of(c.tau(u)).ok_or("tau missing")?;
            let g = s.index_of(c.sigma(v)).ok_or("sigma missing")?;
            let sw = sandwich_set(s, t, g).map_err(|e| e.to_string())?;
            let constant = b_mul(c.tau(u), c.sigma(v))
                .map_err(|e| e.to_string())?
                .rect_band_coords()
                .is_some();
            ensure(sw.is_empty() != constant, || {
                format!(
                    "S(tau_{u}, sigma_{v}) has {} elements, product constant: {constant}",
                    sw.len()
                )
            })?;
            ensure(constant != non_constant.contains(&(u, v)), || {
                format!("census disagrees on ({u}, {v})")
            })?;
            empty += sw.is_empty() as usize;
        }
    }
    ensure(!is_regular_biorder(s), || "Klein biorder is regular".into())?;
    for (name, t) in groups() {
        let run = run_construction2(&t, &opts()).map_err(|e| format!("{name}: {e}"))?;
        ensure(run.regular_biorder, || {
            format!("{name}: biorder not regular")
        })?;
    }
    Ok(format!(
        "construction 1: S(tau_u, sigma_v) empty exactly for the {empty} non-constant products, biorder not regular; construction 2: 8 regular biorders"
    ))
}

fn criterion8() -> Outcome {
    const CASES: usize = 1000;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut squares = 0;
    for n in 0..CASES {
        props::associativity(&mut rng).map_err(|e| format!("associativity case {n}: {e}"))?;
        props::band_law(&mut rng).map_err(|e| format!("band law case {n}: {e}"))?;
        let s = props::semigroup(&mut rng);
        squares += igmax::ig::singular_squares(&s)
            .map_err(|e| e.to_string())?
            .len();
        props::sigma_symmetry(&s).map_err(|e| format!("symmetry case {n}: {e}"))?;
        props::witness_replay(&s).map_err(|e| format!("witness case {n}: {e}"))?;
        props::merge_replay(&s).map_err(|e| format!("merge case {n}: {e}"))?;
        props::tietze_preserves(&mut rng).map_err(|e| format!("tietze case {n}: {e}"))?;
        props::triangularize_preserves(&mut rng)
            .map_err(|e| format!("triangularize case {n}: {e}"))?;
    }
    Ok(format!(
        "{CASES} cases per law, {squares} singular squares replayed, 0 failures"
    ))
}

fn criterion9() -> Outcome {
    let inputs = [
        ("construct2", "k4.json", "k4.json"),
        ("construct2", "c4.json", "c4.json"),
        ("construct1", "klein.txt", "klein.json"),
    ];
    for (cmd, input, pinned) in inputs {
        let path = data(input);
        let a = structured(&[cmd, path.to_str().unwrap()]);
        let b = structured(&[cmd, path.to_str().unwrap()]);
        ensure(a == b, || format!("{input}: runs differ"))?;
        let g = std::fs::read_to_string(golden(pinned)).map_err(|e| e.to_string())?;
        ensure(a.1 == g, || {
            format!("{input}: differs from the pinned document")
        })?;
    }
    Ok("K4, C4 and Klein bottle documents identical across runs and pinned".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("pure-band freeness", criterion1),
        ("construction 2 over K4", criterion2),
        ("construction 2 over C4", criterion3),
        ("construction 2 sweep, order <= 6", criterion4),
        ("construction 1 over the Klein bottle group", criterion5),
        ("construction 1 finite end-to-end", criterion6),
        ("sandwich-set dichotomy", criterion7),
        ("property suites", criterion8),
        ("determinism", criterion9),
    ];
    let mut failed = 0;
    for (n, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", n + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why}", n + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
