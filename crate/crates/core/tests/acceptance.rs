//! Acceptance criteria 1–11, one PASS or FAIL line each.
//!
//! Oracles here work on raw atom tables (`table[i]` is the image of atom `i`
//! as a bitmask) and share no code with the library beyond table access.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use modal_core::algebra::{FiniteCofinite, IntervalAlgebra, Powerset, Subset, Surface, DEFAULT_SAMPLES, MAX_ATOMS};
use modal_core::bundles::exfc;
use modal_core::dda::{
    construct_companion_finite, covering_check, kmpa_check, proper_companion_decide_finite, rautenberg_si, Decision,
};
use modal_core::duality::fc::{FcCanonicalFrame, FcPoint};
use modal_core::duality::{axiom_frame_correspondence, canonical_frame, complex_algebra, round_trip_holds, stone_check, Frame};
use modal_core::laws::{fc_pool, interval_pool, powerset_suite, sampled_suite};
use modal_core::operator::{Axiom, FiniteOp};
use modal_core::script::{run_source, ExecConfig};
use modal_core::semilattice::dual_pseudocomplement;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Table = Vec<u32>;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn full(n: usize) -> u32 {
    (1u32 << n) - 1
}

fn eval(t: &[u32], x: u32) -> u32 {
    t.iter()
        .enumerate()
        .filter(|(i, _)| x >> i & 1 == 1)
        .fold(0, |acc, (_, v)| acc | v)
}

fn dual(t: &[u32], n: usize, x: u32) -> u32 {
    full(n) & !eval(t, full(n) & !x)
}

fn table_of(f: &FiniteOp) -> Table {
    f.table().iter().map(|s| s.0).collect()
}

fn op_of(alg: &Powerset, t: &[u32]) -> FiniteOp {
    FiniteOp::new(alg, t.iter().map(|v| Subset(*v)).collect()).expect("table in range")
}

/// Every table on `n` atoms.
fn all_tables(n: usize) -> Vec<Table> {
    let count = 1u64 << (n * n);
    (0..count)
        .map(|k| (0..n).map(|i| ((k >> (i * n)) as u32) & full(n)).collect())
        .collect()
}

/// `f(x) + g(x) = 1` at every nonzero `x`.
fn annihilates(f: &[u32], g: &[u32], n: usize) -> bool {
    (1..=full(n)).all(|x| eval(f, x) | eval(g, x) == full(n))
}

fn table_leq(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

/// The annihilator below every other annihilator, if there is one.
fn least_annihilator(f: &[u32], n: usize, tables: &[Table]) -> Option<Table> {
    let anns: Vec<&Table> = tables.iter().filter(|g| annihilates(f, g, n)).collect();
    anns.iter()
        .find(|g| anns.iter().all(|h| table_leq(g, h)))
        .map(|g| (*g).clone())
}

fn is_discriminator(t: &[u32], n: usize) -> bool {
    t.iter().all(|v| *v == full(n))
}

fn has_proper_companion(f: &[u32], n: usize, tables: &[Table]) -> bool {
    tables
        .iter()
        .any(|g| !is_discriminator(g, n) && annihilates(f, g, n))
}

/// Subdirectly irreducible iff the nonzero `a` with `f(a) <= a` meet to nonzero.
fn si_oracle(f: &[u32], n: usize) -> bool {
    let meet = (1..=full(n))
        .filter(|a| eval(f, *a) & !a == 0)
        .fold(full(n), |acc, a| acc & a);
    meet != 0
}

fn is_closure(f: &[u32], n: usize) -> bool {
    (0..=full(n)).all(|x| x & !eval(f, x) == 0 && eval(f, eval(f, x)) & !eval(f, x) == 0)
}

fn criterion_1() -> Outcome {
    let mut checked = 0;
    for n in [2, 3] {
        let alg = Powerset::new(n).unwrap();
        let tables = all_tables(n);
        for t in &tables {
            let formula = table_of(&dual_pseudocomplement(&op_of(&alg, t)).expect("n <= 3"));
            if least_annihilator(t, n, &tables).as_ref() != Some(&formula) {
                return outcome(false, format!("n={n} f={t:?}: formula gives {formula:?}"));
            }
            checked += 1;
        }
    }
    outcome(checked == 16 + 512, format!("{checked}/528 operators at n=2,3"))
}

fn criterion_2_and_3() -> (Outcome, Outcome) {
    let (mut agree, mut total, mut constructed, mut proper) = (0, 0, 0, 0);
    let mut first_bad = None;
    for n in 1..=3 {
        let alg = Powerset::new(n).unwrap();
        let tables = all_tables(n);
        for t in &tables {
            total += 1;
            let f = op_of(&alg, t);
            let report = proper_companion_decide_finite(&f);
            let brute = has_proper_companion(t, n, &tables);
            let nonzero = t.iter().any(|v| *v != 0);
            let decided = report.decision == Decision::ProperExists;
            let none = report.decision == Decision::NoneExists;
            if decided == brute && decided == nonzero && (decided || none) {
                agree += 1;
            } else if first_bad.is_none() {
                first_bad = Some(format!("n={n} f={t:?}: {}", report.decision));
            }
            if decided {
                proper += 1;
                let ok = match (report.x, report.z) {
                    (Some(x), Some(z)) => construct_companion_finite(&f, x, z)
                        .map(|g| {
                            let g = table_of(&g);
                            !is_discriminator(&g, n) && annihilates(t, &g, n)
                        })
                        .unwrap_or(false),
                    _ => false,
                };
                if ok {
                    constructed += 1;
                }
            }
        }
    }
    let c2 = outcome(
        agree == total,
        first_bad.unwrap_or_else(|| format!("{agree}/{total} operators at n<=3 agree with brute force and with f ≠ f⁰")),
    );
    let c3 = outcome(
        constructed == proper && proper > 0,
        format!("{constructed}/{proper} constructed companions verified exhaustively"),
    );
    (c2, c3)
}

fn criterion_4() -> Outcome {
    let n = 3;
    let tables = all_tables(n);
    let mut agree = 0;
    for index in 0..512u64 {
        let frame = Frame::nth_relation(n, index).unwrap();
        // ⟨R⟩({j}) = {x : x R j}, from the edge predicate alone
        let poss: Table = (0..n)
            .map(|j| (0..n).filter(|x| frame.has_edge(*x, j)).fold(0, |acc, x| acc | 1 << x))
            .collect();
        let (_, lib) = complex_algebra(&frame);
        let (_, lib_complement) = complex_algebra(&frame.complement());
        let own_complement: Table = poss.iter().map(|v| full(n) & !v).collect();
        let lhs = least_annihilator(&poss, n, &tables);
        if table_of(&lib) == poss && lhs.as_ref() == Some(&own_complement) && table_of(&lib_complement) == own_complement {
            agree += 1;
        } else {
            return outcome(false, format!("relation {index}: brute {lhs:?}, ⟨−R⟩ {own_complement:?}"));
        }
    }
    outcome(agree == 512, format!("{agree}/512 relations on 3 points"))
}

fn criterion_5() -> Outcome {
    let (mut total, mut agree, mut si_closures, mut with_companion) = (0, 0, 0, 0);
    for n in 1..=3 {
        let alg = Powerset::new(n).unwrap();
        let tables = all_tables(n);
        for t in &tables {
            total += 1;
            let si = si_oracle(t, n);
            let lib = rautenberg_si(&op_of(&alg, t)).expect("n <= 3").verdict.is_si();
            if si != lib {
                return outcome(false, format!("n={n} f={t:?}: oracle {si}, library {lib}"));
            }
            agree += 1;
            if si && is_closure(t, n) {
                si_closures += 1;
                if has_proper_companion(t, n, &tables) {
                    with_companion += 1;
                }
            }
        }
    }
    outcome(
        agree == total && with_companion == si_closures && si_closures > 0,
        format!("{agree}/{total} verdicts agree; {with_companion}/{si_closures} SI closure operators have a proper companion"),
    )
}

/// `R_f ∪ R_g` is universal on the atoms.
fn covers(f: &[u32], g: &[u32], n: usize) -> bool {
    (0..n).all(|j| f[j] | g[j] == full(n))
}

fn covering_case(alg: &Powerset, f: &[u32], g: &[u32], n: usize) -> Result<(), String> {
    let own_dec = annihilates(f, g, n);
    let own_cov = covers(f, g, n);
    let lib = covering_check(&op_of(alg, f), &op_of(alg, g)).map_err(|e| e.to_string())?;
    if own_dec == own_cov && lib.decomposing == own_dec && lib.covers == own_cov {
        Ok(())
    } else {
        Err(format!("n={n} f={f:?} g={g:?}"))
    }
}

fn criterion_6() -> Outcome {
    let alg2 = Powerset::new(2).unwrap();
    let t2 = all_tables(2);
    let mut pairs2 = 0;
    for f in &t2 {
        for g in &t2 {
            if let Err(e) = covering_case(&alg2, f, g, 2) {
                return outcome(false, e);
            }
            pairs2 += 1;
        }
    }
    let alg3 = Powerset::new(3).unwrap();
    let t3 = all_tables(3);
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut pairs3 = 0;
    for _ in 0..10_000 {
        let f = &t3[rng.gen_range(0..t3.len())];
        let g = &t3[rng.gen_range(0..t3.len())];
        if let Err(e) = covering_case(&alg3, f, g, 3) {
            return outcome(false, e);
        }
        pairs3 += 1;
    }
    outcome(
        pairs2 == 256 && pairs3 == 10_000,
        format!("{pairs2}/256 pairs at n=2, {pairs3}/10000 sampled pairs at n=3"),
    )
}

fn criterion_7() -> Outcome {
    let mut total = 0;
    for n in 1..=3 {
        let alg = Powerset::new(n).unwrap();
        for t in all_tables(n) {
            let f = op_of(&alg, &t);
            let frame = canonical_frame(&f);
            // with ultrafilters indexed by their atom, h(a) is the atom set of a
            let stone = (0..=full(n)).all(|a| {
                let image = (0..n)
                    .filter(|p| (0..n).any(|q| a >> q & 1 == 1 && frame.has_edge(*p, q)))
                    .fold(0, |acc, p| acc | 1 << p);
                image == eval(&t, a)
            });
            let (cm_alg, cm) = complex_algebra(&frame);
            let iso = cm_alg.atom_count() == n && table_of(&cm) == t;
            if !(stone && iso && stone_check(&f).holds() && round_trip_holds(&f)) {
                return outcome(false, format!("n={n} f={t:?}: stone {stone}, iso {iso}"));
            }
            total += 1;
        }
    }
    outcome(total == 2 + 16 + 512, format!("{total}/530 operators at n<=3"))
}

fn criterion_8() -> Outcome {
    let mut frames = 0;
    for n in 1..=3usize {
        for index in 0..1u64 << (n * n) {
            let frame = Frame::nth_relation(n, index).unwrap();
            let e = |x: usize, y: usize| frame.has_edge(x, y);
            let pts = 0..n;
            let reflexive = pts.clone().all(|x| e(x, x));
            let symmetric = pts.clone().all(|x| pts.clone().all(|y| !e(x, y) || e(y, x)));
            let transitive = pts
                .clone()
                .all(|x| pts.clone().all(|y| pts.clone().all(|z| !(e(x, y) && e(y, z)) || e(x, z))));
            let (_, cm) = complex_algebra(&frame);
            let t = table_of(&cm);
            let xs = 0..=full(n);
            let ax_t = xs.clone().all(|x| x & !eval(&t, x) == 0);
            let ax_4 = xs.clone().all(|x| eval(&t, eval(&t, x)) & !eval(&t, x) == 0);
            let ax_b = xs.clone().all(|x| eval(&t, dual(&t, n, x)) & !x == 0);
            let lib = axiom_frame_correspondence(&frame);
            let lib_of = |a: Axiom| lib.iter().find(|c| c.axiom == a).map(|c| (c.frame_has_property, c.algebra_satisfies_axiom));
            let ok = ax_t == reflexive
                && ax_4 == transitive
                && ax_b == symmetric
                && lib_of(Axiom::T) == Some((reflexive, ax_t))
                && lib_of(Axiom::Four) == Some((transitive, ax_4))
                && lib_of(Axiom::B) == Some((symmetric, ax_b));
            if !ok {
                return outcome(false, format!("n={n} relation {index}"));
            }
            frames += 1;
        }
    }
    outcome(frames == 2 + 16 + 512, format!("{frames}/530 relations on <=3 points, T/4/B both directions"))
}

const REQUIRED_LABELS: [&str; 9] = [
    "g lies below every sampled companion",
    "a found companion bounds every −f(y) below x",
    "f ∨ f_s is the discriminator for dyadic s < p",
    "the witness search finds no proper companion",
    "every companion found is the discriminator on the sample",
    "no nonzero value of f lies below a",
    "π(f(x)·a) = π(x·a)",
    "g is a proper companion of f",
    "f[B] is dense",
];

fn labels(value: &serde_json::Value, out: &mut Vec<(String, bool)>) {
    match value {
        serde_json::Value::Object(map) => {
            if let (Some(l), Some(p)) = (map.get("label").and_then(|v| v.as_str()), map.get("passed").and_then(|v| v.as_bool())) {
                out.push((l.to_string(), p));
            }
            map.values().for_each(|v| labels(v, out));
        }
        serde_json::Value::Array(items) => items.iter().for_each(|v| labels(v, out)),
        _ => {}
    }
}

/// The displayed `⟨−R⟩({F_m})` table, with `ℱ⁰` the positive evens and `ℱ¹` the odds.
fn printed_row(m: u64, p: FcPoint) -> bool {
    match (m, p) {
        (0, FcPoint::Principal(n)) => n > 0 && n % 2 == 0,
        (m, FcPoint::Principal(n)) if m % 2 == 1 => n == m,
        (_, _) => false,
    }
}

fn criterion_9() -> Outcome {
    let cfg = ExecConfig {
        seed: 0,
        budget: 12,
        samples: DEFAULT_SAMPLES,
        max_atoms: MAX_ATOMS,
    };
    let start = Instant::now();
    let report = match run_source("examples run --all\n", &cfg) {
        Ok(r) => r,
        Err(d) => return outcome(false, format!("script rejected: {d}")),
    };
    let elapsed = start.elapsed();
    let mut found = Vec::new();
    labels(&serde_json::from_str(&report.to_json()).expect("report is json"), &mut found);
    let failing: Vec<&String> = found.iter().filter(|(_, p)| !p).map(|(l, _)| l).collect();
    let missing: Vec<&str> = REQUIRED_LABELS
        .iter()
        .copied()
        .filter(|l| !found.iter().any(|(f, p)| f == l && *p))
        .collect();

    let frame = FcCanonicalFrame::new(&exfc::f()).expect("exfc f certifies");
    let points: Vec<FcPoint> = (0..exfc::FRAME_TRUNCATION)
        .map(FcPoint::Principal)
        .chain([FcPoint::Cofinite])
        .collect();
    let differing: Vec<String> = (0..exfc::FRAME_TRUNCATION)
        .filter(|m| {
            let row = frame.poss_complement_singleton(*m);
            points.iter().any(|p| row.contains(*p) != printed_row(*m, *p))
        })
        .map(|m| {
            let row = frame.poss_complement_singleton(m);
            format!("m={m} computes F over {}{}", row.principal, if row.contains_u { " plus U" } else { "" })
        })
        .collect();

    let pass = report.failed == 0
        && failing.is_empty()
        && missing.is_empty()
        && elapsed < Duration::from_secs(60)
        && differing.is_empty();
    let mut detail = format!(
        "{}/{} bundled assertions in {:.1} s",
        found.len() - failing.len(),
        found.len(),
        elapsed.as_secs_f64()
    );
    if !missing.is_empty() {
        detail.push_str(&format!("; missing {missing:?}"));
    }
    if !differing.is_empty() {
        detail.push_str(&format!(
            "; printed ⟨−R⟩ table disagrees with the canonical frame of f on {} of {} rows (first: {})",
            differing.len(),
            exfc::FRAME_TRUNCATION,
            differing[..differing.len().min(2)].join(", ")
        ));
    }
    outcome(pass, detail)
}

fn criterion_10() -> Outcome {
    let finite = powerset_suite(2).expect("n = 2");
    let fc = sampled_suite(&FiniteCofinite, &fc_pool(0).expect("pool"), 0, 10_000).expect("suite");
    let iv = sampled_suite(&IntervalAlgebra, &interval_pool(0).expect("pool"), 0, 10_000).expect("suite");
    let violations = finite.violations + fc.violations + iv.violations;
    let first = [&finite, &fc, &iv].iter().find_map(|r| r.first.clone());
    outcome(
        violations == 0 && fc.instances == 20_000 && iv.instances == 20_000,
        format!(
            "{} exhaustive instances at n=2, {} on FC(ω), {} on intervals, {violations} violations{}",
            finite.instances,
            fc.instances,
            iv.instances,
            first.map(|f| format!(" (first: {f:?})")).unwrap_or_default()
        ),
    )
}

fn criterion_11() -> Outcome {
    let n = 2;
    let alg = Powerset::new(n).unwrap();
    let surface = Surface::of(&alg, 0, 0);
    let one = FiniteOp::discriminator(&alg);
    let id = FiniteOp::identity(&alg);
    let first = kmpa_check(&one, &one, &surface);
    let again = kmpa_check(&one, &one, &surface);
    let deterministic = format!("{first:?}") == format!("{again:?}");
    let t = table_of(&one);
    // u(x) = f^∂(x)·g^∂(x) with f = g
    let u = |x: u32| dual(&t, n, x);
    let witness = first.u1.witness().copied();
    let atom_fails = witness.is_some_and(|w| w.0.count_ones() == 1 && w.0 & !u(w.0) != 0);
    let ident = kmpa_check(&id, &id, &surface);
    let ident_ok = ident.all_hold();
    outcome(
        deterministic && atom_fails && ident_ok,
        format!(
            "(f¹, f¹): u1 fails at {}, deterministic {deterministic}; (id, id): u1–u3 hold {ident_ok}",
            witness.map(|w| alg.format(w)).unwrap_or_else(|| "nothing".into())
        ),
    )
}

fn timed(limit: Option<Duration>, run: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut out = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        outcome(false, format!("panicked: {msg}"))
    });
    let elapsed = start.elapsed();
    if let Some(limit) = limit {
        if elapsed >= limit {
            out.pass = false;
            out.detail.push_str(&format!("; over the {} s limit", limit.as_secs()));
        }
    }
    out.detail.push_str(&format!(" [{:.2} s]", elapsed.as_secs_f64()));
    out
}

fn main() -> ExitCode {
    let secs = |s| Some(Duration::from_secs(s));
    let mut results: Vec<(u32, &str, Outcome)> = Vec::new();
    results.push((1, "pseudocomplement formula = least annihilator", timed(secs(10), criterion_1)));
    let start = Instant::now();
    let (mut c2, c3) = catch_unwind(criterion_2_and_3)
        .unwrap_or_else(|_| (outcome(false, "panicked"), outcome(false, "panicked")));
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(30) {
        c2.pass = false;
        c2.detail.push_str("; over the 30 s limit");
    }
    c2.detail.push_str(&format!(" [{:.2} s]", elapsed.as_secs_f64()));
    results.push((2, "proper-companion decision = brute force", c2));
    results.push((3, "constructed companions are proper", c3));
    results.push((4, "⟨R⟩^⊥ = ⟨−R⟩", timed(secs(10), criterion_4)));
    results.push((5, "SI criterion = congruence-ideal oracle", timed(None, criterion_5)));
    results.push((6, "decomposing iff R_f ∪ R_g is universal", timed(None, criterion_6)));
    results.push((7, "Stone embedding and round trip", timed(None, criterion_7)));
    results.push((8, "T/4/B correspondences", timed(None, criterion_8)));
    results.push((9, "bundled examples", timed(secs(60), criterion_9)));
    results.push((10, "law suites", timed(None, criterion_10)));
    results.push((11, "kmpa_check determinism", timed(None, criterion_11)));

    for (k, name, o) in &results {
        println!("criterion {k:>2} {} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    let failed = results.iter().filter(|(_, _, o)| !o.pass).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
