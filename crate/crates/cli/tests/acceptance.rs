//! Acceptance suite: one PASS/FAIL line per criterion.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::Instant;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rand::{Rng, SeedableRng};

use symquandle::algebra::{
    enumerate_good_involutions, make_dihedral, make_trivial, make_trivial_action, verify_good_involution,
    verify_quandle, GoodInvolution, SymmetricQuandle,
};
use symquandle::catalog;
use symquandle::coloring::{
    brute_force_all, build_constraints, colorings, count_colorings, count_colorings_with, is_monochromatic_fixed_point,
    solve_all, Conventions, DEFAULT_BRUTE_FORCE_CAP,
};
use symquandle::concordance::{coloring_obstruction, ObstructionVerdict};
use symquandle::diagram::{euler_characteristic, surface_components, ChDiagram};
use symquandle::invariant::{
    multiset_subset, phi_multiset, weight_of_coloring, CocycleTable, TriplePointDatum, WeightMultiset,
};
use symquandle::simplify::{is_admissible, Admissibility};
use symquandle::Exec;

/// R₄-antipodal colorings of the bundled 8_1^{-1,-1}, pinned after the
/// first computation.
const PINNED_8_1_R4: u64 = 8;

enum Status {
    Pass,
    Fail,
}

struct Outcome {
    status: Status,
    detail: String,
    /// Set when the criterion cannot hold as stated; the analysis is in
    /// the README.
    unattainable: bool,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { status: Status::Pass, detail: detail.into(), unattainable: false }
}

fn check(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { status: if ok { Status::Pass } else { Status::Fail }, detail: detail.into(), unattainable: false }
}

fn r4a() -> SymmetricQuandle {
    SymmetricQuandle::dihedral_antipodal(4).unwrap()
}

fn r3() -> SymmetricQuandle {
    SymmetricQuandle::dihedral_identity(3).unwrap()
}

fn load(name: &str) -> ChDiagram {
    catalog::load(name).unwrap()
}

fn symq(args: &[&str]) -> (i32, serde_json::Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_symq")).args(args).arg("--json-only").output().unwrap();
    let json = serde_json::from_slice(&out.stdout).unwrap_or(serde_json::Value::Null);
    (out.status.code().unwrap_or(-1), json)
}

fn c1() -> Outcome {
    let start = Instant::now();
    let n = count_colorings(&load("10_1^{-1,-1}"), &r4a(), None);
    let secs = start.elapsed().as_secs_f64();
    check(n == 0 && secs < 5.0, format!("10_1^{{-1,-1}} has {n} (R4, antipodal) colorings in {secs:.3}s"))
}

fn c2() -> Outcome {
    let sq = r4a();
    let all = colorings(&load("8_1^{-1,-1}"), &sq, None);
    let nontrivial = all.iter().filter(|c| !is_monochromatic_fixed_point(c, &sq)).count();
    check(
        all.len() as u64 == PINNED_8_1_R4 && nontrivial >= 1,
        format!("8_1^{{-1,-1}} has {} colorings ({nontrivial} not monochromatic); pinned {PINNED_8_1_R4}", all.len()),
    )
}

fn c3() -> Outcome {
    let base = ["--quandle", "dihedral:4", "--involution", "antipodal"];
    let run = |upper: &str, lower: &str| {
        let mut args = vec!["obstruct", "--upper", upper, "--lower", lower];
        args.extend(base);
        symq(&args)
    };
    let (code, fwd) = run("8_1^{-1,-1}", "10_1^{-1,-1}");
    let (_, back) = run("10_1^{-1,-1}", "8_1^{-1,-1}");
    let lib = coloring_obstruction(&load("8_1^{-1,-1}"), &load("10_1^{-1,-1}"), &r4a(), None);
    let ok = code == 0
        && fwd["result"]["verdict"] == "obstructed"
        && back["result"]["verdict"] == "not_obstructed"
        && lib.verdict == ObstructionVerdict::Obstructed;
    check(
        ok,
        format!("forward {}, reversed {}", fwd["result"]["verdict"], back["result"]["verdict"]),
    )
}

fn c4() -> Outcome {
    let dihedral_ok = (1..=12).all(|n| verify_quandle(make_dihedral(n).unwrap().table()).passed());
    let r4 = make_dihedral(4).unwrap();
    let rho = GoodInvolution::antipodal(4).unwrap();
    let good = verify_good_involution(&r4, &rho).unwrap().passed();
    let parity = (0..4).all(|a| matches!((a + rho.apply(a)) % 4, 0 | 2));
    check(
        dihedral_ok && good && parity,
        format!("R_1..R_12 quandles: {dihedral_ok}; antipodal good: {good}; parity: {parity}"),
    )
}

/// Every symmetric quandle of order at most 4 built from dihedral and
/// trivial quandles.
fn small_symmetric_quandles() -> Vec<(String, SymmetricQuandle)> {
    let mut out = Vec::new();
    for n in 1..=4 {
        for (kind, q) in [("R", make_dihedral(n).unwrap()), ("T", make_trivial(n).unwrap())] {
            for rho in enumerate_good_involutions(&q) {
                let label = format!("{kind}{n} ρ={:?}", rho.as_slice());
                out.push((label, SymmetricQuandle::new(q.clone(), rho).unwrap()));
            }
        }
    }
    out
}

fn c5() -> Outcome {
    let mut pairs = 0;
    let mut bad = Vec::new();
    for e in catalog::entries() {
        let d = load(e.name);
        for (label, sq) in small_symmetric_quandles() {
            let y = make_trivial_action(&sq);
            let cs = build_constraints(&d, &sq, &y);
            let fast = solve_all(&cs, &sq, &y);
            let slow = brute_force_all(&cs, &sq, &y, DEFAULT_BRUTE_FORCE_CAP).unwrap();
            pairs += 1;
            if fast != slow {
                bad.push(format!("{} {label}", e.name));
            }
        }
    }
    check(bad.is_empty(), format!("{pairs} diagram/quandle pairs, {} discrepancies {bad:?}", bad.len()))
}

fn c6() -> Outcome {
    let sq = r3();
    let y = make_trivial_action(&sq);
    let both = |d: &ChDiagram| {
        let cs = build_constraints(d, &sq, &y);
        (solve_all(&cs, &sq, &y).len(), brute_force_all(&cs, &sq, &y, DEFAULT_BRUTE_FORCE_CAP).unwrap().len())
    };
    let t = both(&load("trefoil"));
    let h = both(&load("hopf"));
    let u = both(&load("0_1"));
    let detail = format!("trefoil {t:?}, Hopf {h:?}, circle {u:?} (solver, brute force)");
    if t == (9, 9) && u == (3, 3) && h == (9, 9) {
        return pass(detail);
    }
    // The Hopf link has determinant 2, so R_3 colors it only trivially.
    let hopf_is_three = h == (3, 3);
    Outcome {
        status: Status::Fail,
        detail: format!("{detail}; Hopf link has 3 colorings, not the required 9"),
        unattainable: t == (9, 9) && u == (3, 3) && hopf_is_three,
    }
}

fn c7() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for e in catalog::entries() {
        let d = load(e.name);
        let faces = d.faces();
        let (ncomp, comp_of) = d.node_components();
        for c in 0..ncomp {
            let v = comp_of.iter().filter(|&&k| k == c).count() as i64;
            let f = faces.faces.iter().filter(|f| f.component == c && !f.darts.is_empty()).count() as i64;
            if v - 2 * v + f != 2 {
                ok = false;
                notes.push(format!("{} component {c}: V-E+F = {}", e.name, v - 2 * v + f));
            }
        }
        if d.ch_index() != e.ch_index {
            ok = false;
            notes.push(format!("{} ch-index {}", e.name, d.ch_index()));
        }
        if let Some(chi) = e.euler_characteristic {
            if euler_characteristic(&d) != chi {
                ok = false;
                notes.push(format!("{} χ = {}", e.name, euler_characteristic(&d)));
            }
            let mut g: Vec<i64> = surface_components(&d).iter().map(|s| s.signed_genus()).collect();
            g.sort_unstable();
            if g != e.signed_genera {
                ok = false;
                notes.push(format!("{} genera {g:?}", e.name));
            }
        }
        // classical entries are their own smoothings, so only the unknotted
        // ones could pass; the trefoil and Hopf link must be rejected
        let want = if e.euler_characteristic.is_some() { Admissibility::Yes } else { Admissibility::No };
        let adm = is_admissible(&d, e.budget).unwrap().admissible;
        if adm != want {
            ok = false;
            notes.push(format!("{} admissible {adm:?} at budget {}", e.name, e.budget));
        }
    }
    for (name, chi) in [("0_1", 2), ("8_1^{-1,-1}", 2), ("10_1^{-1,-1}", 2)] {
        ok &= euler_characteristic(&load(name)) == chi;
    }
    ok &= load("8_1^{-1,-1}").ch_index() == 8 && load("10_1^{-1,-1}").ch_index() == 10;
    check(ok, if notes.is_empty() { format!("{} entries", catalog::entries().len()) } else { notes.join("; ") })
}

fn c8() -> Outcome {
    // zero cocycle over every catalog/quandle pair
    let mut pairs = 0;
    let mut zero_ok = true;
    for e in catalog::entries() {
        let d = load(e.name);
        for sq in [r3(), r4a(), SymmetricQuandle::dihedral_identity(4).unwrap()] {
            let cols = colorings(&d, &sq, None);
            let per: Vec<(String, Vec<TriplePointDatum>)> =
                (0..cols.len()).map(|i| (i.to_string(), Vec::new())).collect();
            let ms = phi_multiset(&per, &CocycleTable::zero(0, sq.order(), 1)).unwrap();
            zero_ok &= ms.len() == cols.len() && ms.multiplicity(0) == cols.len();
            pairs += 1;
        }
    }

    let mut runner = TestRunner::new(Config { cases: 1000, failure_persistence: None, ..Config::default() });
    let ms = || proptest::collection::vec(0i64..4, 0..8).prop_map(|v| WeightMultiset::new(0, v));
    let order = runner.run(&(ms(), ms(), ms()), |(a, b, c)| {
        prop_assert!(multiset_subset(&a, &a).unwrap());
        if multiset_subset(&a, &b).unwrap() && multiset_subset(&b, &a).unwrap() {
            prop_assert_eq!(&a, &b);
        }
        if multiset_subset(&a, &b).unwrap() && multiset_subset(&b, &c).unwrap() {
            prop_assert!(multiset_subset(&a, &c).unwrap());
        }
        Ok(())
    });

    let mut rng = rand::rngs::StdRng::seed_from_u64(8);
    let mut linear = true;
    for _ in 0..1000 {
        let m = rng.gen_range(2..12u64);
        let mut p = CocycleTable::zero(m, 3, 2);
        let mut q = CocycleTable::zero(m, 3, 2);
        for t in [&mut p, &mut q] {
            for _ in 0..6 {
                let (y, a, b, c) = (rng.gen_range(0..2), rng.gen_range(0..3), rng.gen_range(0..3), rng.gen_range(0..3));
                t.set(y, a, b, c, rng.gen_range(-50..50)).unwrap();
            }
        }
        let ts: Vec<TriplePointDatum> = (0..rng.gen_range(0..10))
            .map(|_| {
                let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
                TriplePointDatum::new(sign, rng.gen_range(0..2), rng.gen_range(0..3), rng.gen_range(0..3), rng.gen_range(0..3))
                    .unwrap()
            })
            .collect();
        let sum = weight_of_coloring(&ts, &p.add(&q).unwrap()).unwrap();
        let parts = (weight_of_coloring(&ts, &p).unwrap() + weight_of_coloring(&ts, &q).unwrap()).rem_euclid(m as i64);
        linear &= sum == parts;
    }
    check(
        zero_ok && order.is_ok() && linear,
        format!(
            "zero cocycle over {pairs} pairs: {zero_ok}; partial order on 1000 cases: {}; linearity on 1000 cases: {linear}",
            order.is_ok()
        ),
    )
}

fn c9() -> Outcome {
    let quandles = [
        r3(),
        r4a(),
        SymmetricQuandle::dihedral_identity(4).unwrap(),
        SymmetricQuandle::dihedral_antipodal(6).unwrap(),
    ];
    let mut rng = rand::rngs::StdRng::seed_from_u64(9);
    let mut flips = 0;
    let mut bad = Vec::new();
    for e in catalog::entries() {
        let d = load(e.name);
        if d.edges().is_empty() {
            continue;
        }
        let base: Vec<u64> = quandles.iter().map(|sq| count_colorings(&d, sq, None)).collect();
        for _ in 0..100 {
            let i = rng.gen_range(0..d.edges().len());
            let f = d.flip_edge(i).unwrap();
            let got: Vec<u64> = quandles.iter().map(|sq| count_colorings(&f, sq, None)).collect();
            flips += 1;
            if got != base {
                bad.push(format!("{} edge {i}", e.name));
            }
        }
        let toggled = count_colorings_with(&d, &r4a(), None, Conventions { over_rho: true }, Exec::default());
        if toggled != base[1] {
            bad.push(format!("{} over-color convention", e.name));
        }
    }
    check(bad.is_empty(), format!("{flips} single-edge flips, convention toggle on every entry; mismatches {bad:?}"))
}

fn c10() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for name in ["2_1^{-1}", "2_1^{-1}*"] {
        let d = load(name);
        let r4 = count_colorings(&d, &r4a(), None);
        let mono = colorings(&d, &r3(), None).iter().filter(|c| is_monochromatic_fixed_point(c, &r3())).count();
        ok &= r4 == 0 && mono >= 1;
        parts.push(format!("{name}: (R4, antipodal) {r4}, monochromatic (R3, identity) {mono}"));
    }
    check(ok, parts.join("; "))
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, fn() -> Outcome); 10] = [
        (1, "10_1^{-1,-1} is not (R4, antipodal)-colorable", c1),
        (2, "8_1^{-1,-1} is (R4, antipodal)-colorable", c2),
        (3, "obstruct verdicts", c3),
        (4, "algebra suite", c4),
        (5, "solver matches brute force", c5),
        (6, "Fox 3-coloring counts", c6),
        (7, "catalog structure", c7),
        (8, "invariant algebra", c8),
        (9, "orientation conventions", c9),
        (10, "projective planes", c10),
    ];
    let mut hard_failures = 0;
    let mut passed = 0;
    for (n, title, f) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Outcome { status: Status::Fail, detail: format!("panicked: {}", msg.unwrap_or_default()), unattainable: false }
        });
        match outcome.status {
            Status::Pass => {
                passed += 1;
                println!("criterion {n:>2} PASS  {title}: {}", outcome.detail);
            }
            Status::Fail => {
                let tag = if outcome.unattainable { " (unattainable as stated)" } else { "" };
                println!("criterion {n:>2} FAIL{tag}  {title}: {}", outcome.detail);
                if !outcome.unattainable {
                    hard_failures += 1;
                }
            }
        }
    }
    println!("{passed}/10 criteria pass");
    if hard_failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
