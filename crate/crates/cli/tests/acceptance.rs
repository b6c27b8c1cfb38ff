//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
//! and exits non-zero if any fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;

use arroids::arrangement::{
    arroid_of, fourlines_explicit, generic_lines_conic_explicit, inf_family, inf_family_explicit,
    lines_and_conic_explicit, maximality_report, picard_fan, picard_rays, real_b0, sufficient_unique_balance,
    supply_system_conic, unimodular_equivalence, BalanceGuarantee, CurveArrangement, PlaneCurve,
};
use arroids::examples::{concurrent_chords, fourlines, generic_lines_conic};
use arroids::exactlin::{kernel_basis, rank_q, smith_normal_form, Int, MatZ, Rational};
use arroids::fan::{
    build_arroid_fan, check_balanced, fans_isomorphic, reduced_star, support_equal, unique_balance_at_ray,
    verify_modification,
};
use arroids::tropohom::{bm_homology, check_thm, cohomology_dims, fundamental_class, ses_dim_check, BMComplex, Coefficients};
use arroids::{Arroid, WeightedFan};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn mat(rows: &[&[i64]]) -> MatZ {
    let r: Vec<Vec<Int>> = rows.iter().map(|x| x.iter().map(|&v| Int::from(v)).collect()).collect();
    MatZ::from_rows(&r, rows[0].len())
}

fn base_suite() -> Vec<(String, Arroid)> {
    let mut v = vec![
        ("fourlines".to_string(), fourlines()),
        ("generic_lines_conic".to_string(), generic_lines_conic()),
        ("concurrent_chords".to_string(), concurrent_chords()),
    ];
    for k in 0..=2 {
        v.push((format!("inf_family({k})"), arroid_of(&inf_family(k)).unwrap()));
    }
    v
}

/// The base arroids, their contractions, and those deletions that stay very
/// affine. Returns the suite and the number of deletions left out.
fn full_suite() -> (Vec<(String, Arroid)>, usize) {
    let mut out = Vec::new();
    let mut skipped = 0;
    for (name, a) in base_suite() {
        for id in a.ids().map(str::to_string).collect::<Vec<_>>() {
            out.push((format!("{name}/{id}"), a.contract(&id).unwrap()));
            let d = a.delete(&id).unwrap();
            if d.is_very_affine() {
                out.push((format!("{name}\\{id}"), d));
            } else {
                skipped += 1;
            }
        }
        out.push((name, a));
    }
    (out, skipped)
}

/// (arroid, element) pairs whose deletion is very affine.
fn pairs() -> Vec<(String, Arroid, String)> {
    let mut out = Vec::new();
    for (name, a) in base_suite() {
        for id in a.ids() {
            if a.delete(id).unwrap().is_very_affine() {
                out.push((name.clone(), a.clone(), id.to_string()));
            }
        }
    }
    out
}

fn ray_set(m: &MatZ) -> Vec<Vec<Int>> {
    let mut v: Vec<Vec<Int>> = (0..m.cols()).map(|k| m.col(k)).collect();
    v.sort();
    v
}

fn c1() -> Outcome {
    let p = picard_rays(&fourlines_explicit()).map_err(|e| e.to_string())?;
    let got = ray_set(&p.ray_matrix);
    let want = ray_set(&mat(&[&[1, 0, 0, -1], &[0, 1, 0, -1], &[0, 0, 1, -1]]));
    ensure(got == want, format!("rays {got:?}"))?;
    Ok("rays (1,0,0), (0,1,0), (0,0,1), (-1,-1,-1)".into())
}

/// Independent check of a witness: integer entries, det ±1 by cofactor
/// expansion, and a bijection of columns.
fn witness_ok(a: &MatZ, b: &MatZ, u: &MatZ, perm: &[usize]) -> bool {
    let e = |i: usize, j: usize| u[(i, j)].clone();
    let det = e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0))
        + e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
    let mut sorted = perm.to_vec();
    sorted.sort();
    det.abs().is_one()
        && sorted == (0..b.cols()).collect::<Vec<_>>()
        && (0..a.cols()).all(|c| {
            let img: Vec<Int> = (0..3).map(|i| (0..3).map(|k| &u[(i, k)] * &a[(k, c)]).sum()).collect();
            img == b.col(perm[c])
        })
}

fn c2() -> Outcome {
    let p = picard_rays(&lines_and_conic_explicit()).map_err(|e| e.to_string())?;
    let full = mat(&[&[-1, 1, 0, 0, 1, -1, 0], &[-1, 0, 1, 0, 1, 0, -1], &[-2, 0, 0, 1, 1, -1, -1]]);
    let minimal = mat(&[&[-1, 0, 0, 1], &[0, -1, 0, 1], &[-1, -1, 1, 1]]);
    ensure(p.ray_matrix.rows() == 3 && p.ray_matrix.cols() == 7, "ray matrix is not 3x7")?;
    let w = unimodular_equivalence(&p.ray_matrix, &full).ok_or("no witness for the ray matrix")?;
    ensure(witness_ok(&p.ray_matrix, &full, &w.matrix, &w.permutation), "ray matrix witness rejected")?;
    ensure(p.minimal_rays.cols() == 4, "expected 4 minimal rays")?;
    let m = unimodular_equivalence(&p.minimal_rays, &minimal).ok_or("no witness for the minimal rays")?;
    ensure(witness_ok(&p.minimal_rays, &minimal, &m.matrix, &m.permutation), "minimal witness rejected")?;
    Ok(format!("witnesses U = {:?} and {:?}", w.matrix.to_rows(), m.matrix.to_rows()))
}

fn c3() -> Outcome {
    for (name, arr) in [("fourlines", fourlines_explicit()), ("generic_lines_conic", generic_lines_conic_explicit())] {
        let pf = picard_fan(&arr).map_err(|e| e.to_string())?;
        let af = build_arroid_fan(&arroid_of(&arr).unwrap()).map_err(|e| e.to_string())?;
        ensure(support_equal(&pf, &af).map_err(|e| e.to_string())?, format!("{name}: supports differ"))?;
    }
    Ok("fourlines, generic lines + conic".into())
}

fn c4() -> Outcome {
    let (suite, skipped) = full_suite();
    for (name, a) in &suite {
        let f = build_arroid_fan(a).map_err(|e| format!("{name}: {e}"))?;
        ensure(check_balanced(&f).ok(), format!("{name} is not balanced"))?;
    }
    Ok(format!("{} fans balanced; {skipped} deletions not very affine, left out", suite.len()))
}

fn c5() -> Outcome {
    let (suite, _) = full_suite();
    for (name, a) in &suite {
        let f = build_arroid_fan(a).unwrap();
        for co in [Coefficients::Rational, Coefficients::Integer] {
            let h = bm_homology(&f, co);
            ensure(h.complexes_ok, format!("{name}: not a complex"))?;
            ensure(h.concentrated_in_top(), format!("{name}: H_(p,q) != 0 below the top, {:?}", h.dims))?;
            ensure(!h.has_torsion(), format!("{name}: torsion {:?}", h.torsion))?;
        }
    }
    Ok(format!("{} fans, rational and integer", suite.len()))
}

fn c6() -> Outcome {
    let ps = pairs();
    for (name, a, i) in &ps {
        let f = build_arroid_fan(a).unwrap();
        let star = reduced_star(&f, &format!("r:{i}")).map_err(|e| e.to_string())?;
        let fc = build_arroid_fan(&a.contract(i).unwrap()).unwrap();
        ensure(fans_isomorphic(&star, &fc), format!("{name} at {i}: star differs from contraction"))?;
        let m = verify_modification(a, i).map_err(|e| e.to_string())?;
        ensure(m.ok(), format!("{name} at {i}: {:?}", m.problems))?;
    }
    Ok(format!("{} (arroid, element) pairs", ps.len()))
}

fn c7() -> Outcome {
    let ps = pairs();
    for (name, a, i) in &ps {
        let r = ses_dim_check(a, i).map_err(|e| e.to_string())?;
        // recompute the sum by hand
        for p in 0..r.full.len() {
            let del = r.deletion.get(p).copied().unwrap_or(0);
            let con = if p == 0 { 0 } else { r.contraction.get(p - 1).copied().unwrap_or(0) };
            ensure(r.full[p] == del + con, format!("{name} at {i}, p = {p}: {r:?}"))?;
        }
        ensure(r.holds, format!("{name} at {i}: report disagrees"))?;
    }
    Ok(format!("{} pairs, every p", ps.len()))
}

fn c8() -> Outcome {
    let (suite, _) = full_suite();
    let mut checked = 0;
    for (name, a) in &suite {
        let f = build_arroid_fan(a).unwrap();
        if f.dim != 2 {
            continue;
        }
        let r = check_thm(&f).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.route_a == r.route_b, format!("{name}: routes disagree"))?;
        checked += 1;
    }
    let four = check_thm(&build_arroid_fan(&fourlines()).unwrap()).unwrap();
    ensure(four.verdict, "fourlines is not a homology manifold")?;
    let cc = check_thm(&build_arroid_fan(&concurrent_chords()).unwrap()).unwrap();
    ensure(!cc.verdict, "concurrent chords passes")?;
    let bad: Vec<&(String, usize)> = cc.balancing_dims.iter().filter(|(_, d)| *d != 1).collect();
    ensure(bad == [&("r:C".to_string(), 2)], format!("failing rays {bad:?}"))?;
    Ok(format!("{checked} fans agree; fourlines true; concurrent chords false at r:C (dim 2)"))
}

fn c9() -> Outcome {
    let mut guaranteed = 0;
    for (name, arr) in [
        ("inf_family(1)", inf_family(1)),
        ("inf_family(2)", inf_family(2)),
        ("supply system", supply_system_conic()),
    ] {
        let f = build_arroid_fan(&arroid_of(&arr).unwrap()).unwrap();
        for e in arr.elements() {
            if sufficient_unique_balance(&arr, &e.id).map_err(|e| e.to_string())? == BalanceGuarantee::Guaranteed {
                guaranteed += 1;
                let d = unique_balance_at_ray(&f, &format!("r:{}", e.id)).unwrap().dim();
                ensure(d == 1, format!("{name}: {} guaranteed but dim {d}", e.id))?;
            }
        }
    }
    ensure(
        sufficient_unique_balance(&supply_system_conic(), "C").unwrap() == BalanceGuarantee::Guaranteed,
        "the supply system conic is not guaranteed",
    )?;
    Ok(format!("{guaranteed} guaranteed rays, all of balancing dimension 1"))
}

fn c10() -> Outcome {
    let four = maximality_report(&fourlines_explicit()).map_err(|e| e.to_string())?;
    ensure(four.verdict == "maximal", "fourlines not maximal")?;
    ensure(four.real_b0 == Some(7) && four.tropical_betti == Some(vec![1, 3, 3]), format!("{four:?}"))?;
    ensure(four.smith_thom_equality == Some(true), "fourlines equality fails")?;
    let mut notes = vec!["fourlines 7 = 1+3+3".to_string()];
    for k in 1..=2 {
        let arr = inf_family(k);
        let r = maximality_report(&arr).map_err(|e| e.to_string())?;
        ensure(r.verdict == "maximal", format!("inf_family({k}) not maximal: {:?}", r.failing))?;
        let b0 = real_b0(&arr).map_err(|e| e.to_string())?;
        let dims = cohomology_dims(&build_arroid_fan(&arroid_of(&arr).unwrap()).unwrap());
        let total: usize = dims.iter().sum();
        ensure(b0 as usize == total, format!("inf_family({k}): {b0} != {dims:?}"))?;
        let grid = common::grid_b0(&inf_family_explicit(k), 150);
        ensure(grid == total, format!("inf_family({k}): grid oracle {grid} != {total}"))?;
        notes.push(format!("inf_family({k}) {b0} = {} (grid {grid})", dims.iter().map(usize::to_string).collect::<Vec<_>>().join("+")));
    }
    Ok(notes.join("; "))
}

/// Random lines with small integer coefficients, no two equal and no three
/// through a point.
fn generic_lines() -> impl Strategy<Value = Vec<[i64; 3]>> {
    prop::collection::vec(prop::array::uniform3(-6i64..=6), 3..=8).prop_filter("generic lines", |ls| {
        let cross = |a: &[i64; 3], b: &[i64; 3]| [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]];
        let dot = |a: [i64; 3], b: &[i64; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
        let n = ls.len();
        (0..n).all(|i| {
            (i + 1..n).all(|j| {
                let c = cross(&ls[i], &ls[j]);
                c != [0, 0, 0] && (j + 1..n).all(|k| dot(c, &ls[k]) != 0)
            })
        })
    })
}

fn arrangement(ls: &[[i64; 3]]) -> CurveArrangement {
    let curves = ls.iter().enumerate().map(|(i, c)| PlaneCurve::line(&format!("L{i}"), *c).unwrap()).collect();
    CurveArrangement::explicit(curves).unwrap()
}

fn fixed_families() -> Vec<CurveArrangement> {
    let mut v: Vec<CurveArrangement> = (0..=3).map(inf_family).collect();
    v.extend((0..=2).map(inf_family_explicit));
    v
}

fn structural_checks(arr: &CurveArrangement, w: i64, cone: usize) -> Result<(), TestCaseError> {
    let a = arroid_of(arr).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let f = build_arroid_fan(&a).map_err(|e| TestCaseError::fail(e.to_string()))?;
    // JSON round trips
    prop_assert_eq!(&CurveArrangement::from_json(&arr.to_json()).unwrap(), arr);
    prop_assert_eq!(&Arroid::from_json(&a.to_json()).unwrap(), &a);
    prop_assert_eq!(&WeightedFan::from_json(&f.to_json()).unwrap(), &f);
    // boundary squares to zero, and the fundamental chain is a cycle
    // exactly when the (re-weighted) fan is balanced
    let g = f.with_weight(cone % f.cones.len(), Int::from(w));
    for p in 0..=2 {
        prop_assert!(BMComplex::new(&g, p).is_complex());
    }
    prop_assert_eq!(check_balanced(&g).ok(), fundamental_class(&g).is_ok());
    Ok(())
}

fn run_cases<S: Strategy>(strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    let mut runner = TestRunner::new(Config { cases: 100, failure_persistence: None, ..Config::default() });
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

fn c11() -> Outcome {
    let small = |r: usize, c: usize| prop::collection::vec(prop::collection::vec(-4i64..=4, c), r);
    let matrices = (1usize..=5, 1usize..=6).prop_flat_map(move |(r, c)| small(r, c));
    let to_z = |rows: &Vec<Vec<i64>>| {
        let r: Vec<Vec<Int>> = rows.iter().map(|x| x.iter().map(|&v| Int::from(v)).collect()).collect();
        MatZ::from_rows(&r, rows[0].len())
    };

    run_cases(matrices.clone(), |rows| {
        let a = to_z(&rows).to_q();
        let ker = kernel_basis(&a);
        prop_assert_eq!(rank_q(&a) + ker.len(), a.cols());
        for v in &ker {
            prop_assert!(a.apply(v).iter().all(Rational::is_zero));
        }
        Ok(())
    })
    .map_err(|e| format!("rank-nullity: {e}"))?;

    run_cases(matrices, |rows| {
        let a = to_z(&rows);
        let r = smith_normal_form(&a);
        prop_assert_eq!(&(&(&r.u * &a) * &r.v), &r.s);
        prop_assert_eq!(&(&r.u * &r.u_inv), &MatZ::identity(a.rows()));
        prop_assert_eq!(&(&r.v * &r.v_inv), &MatZ::identity(a.cols()));
        let d = &r.elementary_divisors;
        for i in 1..d.len() {
            prop_assert!(d[i].is_zero() || (!d[i - 1].is_zero() && (&d[i] % &d[i - 1]).is_zero()));
        }
        Ok(())
    })
    .map_err(|e| format!("Smith normal form: {e}"))?;

    run_cases((generic_lines(), 1i64..4, 0usize..64), |(ls, w, cone)| {
        let arr = arrangement(&ls);
        prop_assert!(arroid_of(&arr).unwrap().is_transversal());
        structural_checks(&arr, w, cone)
    })
    .map_err(|e| format!("random line arrangements: {e}"))?;
    for (i, arr) in fixed_families().iter().enumerate() {
        for cone in [0, 5] {
            structural_checks(arr, 2, cone).map_err(|e| format!("family {i}: {e}"))?;
        }
    }

    let dir = tempfile::TempDir::new().map_err(|e| e.to_string())?;
    let bin = env!("CARGO_BIN_EXE_arroids");
    run_cases(generic_lines(), |ls| {
        let path = dir.path().join("arr.json");
        std::fs::write(&path, arrangement(&ls).to_json().to_string()).unwrap();
        for verb in ["validate", "fan"] {
            let a = Command::new(bin).args([verb, path.to_str().unwrap()]).output().unwrap();
            let b = Command::new(bin).args([verb, path.to_str().unwrap()]).output().unwrap();
            prop_assert_eq!(a.status.code(), Some(0));
            prop_assert_eq!(&a.stdout, &b.stdout);
        }
        Ok(())
    })
    .map_err(|e| format!("CLI determinism: {e}"))?;
    Ok("rank-nullity, SNF, boundary, fundamental class, JSON, CLI: 100 cases each".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("fourlines tropicalization", c1),
        ("linesandconic tropicalization", c2),
        ("support theorem", c3),
        ("balancing suite", c4),
        ("Borel-Moore vanishing and torsion", c5),
        ("star = contraction, modification", c6),
        ("short exact sequence dimensions", c7),
        ("manifold test equivalence", c8),
        ("cluster lemma soundness", c9),
        ("maximality desk test", c10),
        ("property suite", c11),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        match res {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
