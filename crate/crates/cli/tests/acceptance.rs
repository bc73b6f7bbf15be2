//! The seven acceptance criteria. Each prints one `PASS`/`FAIL` line; the
//! test fails if any criterion fails.

use std::time::{Duration, Instant};

use weyl_invariants::algebra::MPoly;
use weyl_invariants::crossprod::{relation_check, relation_check_with, Convention};
use weyl_invariants::groups::{classify_reflections, decompose, Family, DEFAULT_CLOSURE_BOUND};
use weyl_invariants::invariants::{build_invariant_system, semi_invariance_check};
use weyl_invariants::laws::run_all;
use weyl_invariants::random::DEFAULT_SEED;
use weyl_invariants::weyl::{build_weyl_generators, verify_operators, WeylError, WeylGenerators};
use weylgen::example::{corrected, relations, reproduce_s3};

type Verdict = Result<String, String>;

fn timed(limit: Duration, f: impl FnOnce() -> Verdict) -> Verdict {
    let start = Instant::now();
    let detail = f()?;
    let took = start.elapsed();
    if took > limit {
        return Err(format!("{detail}; took {took:.2?}, limit {limit:?}"));
    }
    Ok(format!("{detail}; {took:.2?}"))
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn suite() -> Vec<Family> {
    let mut out: Vec<Family> = [2, 3, 4].map(|n| Family::Symmetric { n }).into();
    out.extend([2, 3].map(|n| Family::TypeB { n }));
    out.extend([2, 3].map(|n| Family::TypeD { n }));
    out.extend([2, 3, 4].map(|m| Family::Imprimitive { m, n: 2 }));
    for m in 2..=4 {
        out.extend([1, 2].map(|n| Family::CyclicDiagonal { m, n }));
    }
    out
}

fn s3_example() -> Verdict {
    let (value, ok) = reproduce_s3(DEFAULT_CLOSURE_BOUND)?;
    let printed = corrected()?;
    let rels = relations(&printed)?;
    check(rels.len() == 9 && rels.iter().all(|r| r.3), || "Y_i X_j - X_j Y_i != delta_ij".into())?;
    let equal = value["generators"].as_array().unwrap().iter().all(|g| g["equal"] == true);
    check(ok && equal, || format!("generators differ: {value}"))?;
    Ok("X1..X3 and Y1..Y3 equal the printed forms; 9 relations hold".into())
}

fn family_suite() -> Verdict {
    let fams = suite();
    for f in &fams {
        let g = f.build(DEFAULT_CLOSURE_BOUND).map_err(|e| e.to_string())?;
        let sys = build_invariant_system(&g, None).map_err(|e| format!("{}: {e}", f.label()))?;
        let gens = build_weyl_generators(&sys).map_err(|e| format!("{}: {e}", f.label()))?;
        check(gens.report.passed(), || format!("{}: {}", f.label(), gens.report.summary()))?;
        check(gens.report.invariance.cases == g.order() * g.n(), || format!("{}: invariance not exhaustive", f.label()))?;
    }
    Ok(format!("{} instances, all four checks pass", fams.len()))
}

fn discriminant_identities() -> Verdict {
    let fams = suite();
    for f in &fams {
        let g = f.build(DEFAULT_CLOSURE_BOUND).map_err(|e| e.to_string())?;
        let sys = build_invariant_system(&g, None).map_err(|e| format!("{}: {e}", f.label()))?;
        let l = f.label();
        check(!sys.c.is_zero() && sys.jprime == sys.j.scale(&sys.c), || format!("{l}: J' != cJ"))?;
        check(semi_invariance_check(&g, &sys.j), || format!("{l}: w.J != det(w) J"))?;
        let refl = classify_reflections(&g).len();
        let sum: u32 = sys.degrees.iter().map(|d| d - 1).sum();
        check(refl == sum as usize, || format!("{l}: {refl} reflections, sum(deg - 1) = {sum}"))?;
        let prod: usize = sys.degrees.iter().map(|&d| d as usize).product();
        check(prod == g.order(), || format!("{l}: prod deg = {prod}, |W| = {}", g.order()))?;
    }
    Ok(format!("{} instances", fams.len()))
}

fn cross_product() -> Verdict {
    let mut count = 0;
    for n in 1..=4 {
        let r = relation_check(n);
        check(r.anchors.len() == n, || format!("n = {n}: missing anchors"))?;
        check(r.relations.len() == n * n + n * (n - 1), || format!("n = {n}: {} relations", r.relations.len()))?;
        check(r.passed(), || format!("n = {n}: {:?}", r.failures()))?;
        count += r.anchors.len() + r.relations.len();
    }
    Ok(format!("{count} relations and anchors for n = 1..4"))
}

fn decomposition() -> Verdict {
    // (left, right, factor orders, factor dimensions, dim V^W)
    let cases = [
        (Family::Symmetric { n: 3 }, Family::Symmetric { n: 2 }, [6, 2], [2, 1], 2),
        (Family::TypeB { n: 2 }, Family::Symmetric { n: 2 }, [8, 2], [2, 1], 1),
    ];
    for (a, b, orders, dims, fixed) in cases {
        let name = format!("{} x {}", a.label(), b.label());
        let g = a
            .build(DEFAULT_CLOSURE_BOUND)
            .and_then(|x| x.direct_product(&b.build(DEFAULT_CLOSURE_BOUND)?, DEFAULT_CLOSURE_BOUND))
            .map_err(|e| e.to_string())?;
        let d = decompose(&g).map_err(|e| format!("{name}: {e}"))?;
        let got_orders: Vec<usize> = d.factors.iter().map(|f| f.group.order()).collect();
        let got_dims: Vec<usize> = d.factors.iter().map(|f| f.basis.len()).collect();
        check(got_orders == orders, || format!("{name}: factor orders {got_orders:?}"))?;
        check(got_orders.iter().product::<usize>() == g.order(), || format!("{name}: product != |W|"))?;
        check(got_dims == dims && d.fixed_subspace.len() == fixed, || format!("{name}: dimensions {got_dims:?}"))?;
        for (i, fi) in d.factors.iter().enumerate() {
            for fj in &d.factors[i + 1..] {
                for r in &fi.reflections {
                    for s in &fj.reflections {
                        let (rs, sr) = (r.element.checked_mul(&s.element), s.element.checked_mul(&r.element));
                        check(rs == sr, || format!("{name}: cross-factor reflections do not commute"))?;
                    }
                }
            }
        }
        check(d.check().all_pass(), || format!("{name}: {:?}", d.check()))?;
    }
    Ok("S3 x S2 and B2 x S2".into())
}

fn properties() -> Verdict {
    let results = run_all(DEFAULT_SEED, 500);
    let failed: Vec<String> = results.iter().filter(|r| !r.passed).map(|r| format!("{}: {:?}", r.law, r.failure)).collect();
    check(failed.is_empty(), || failed.join("; "))?;
    Ok(format!("{} laws, seed {DEFAULT_SEED}, 500 cases per randomized law", results.len()))
}

fn negative_controls() -> Verdict {
    let g = Family::Symmetric { n: 3 }.build(DEFAULT_CLOSURE_BOUND).map_err(|e| e.to_string())?;
    let sys = build_invariant_system(&g, None).map_err(|e| e.to_string())?;
    let gens = build_weyl_generators(&sys).map_err(|e| e.to_string())?;
    let mut e = sys.e.clone();
    e[0] = e[0].pow(2);
    let report = verify_operators(&g, &e, &gens.d).map_err(|e| e.to_string())?;
    check(!report.delta_relations.passed && report.delta_relations.witness == Some([1, 1]), || {
        format!("perturbed e1: {}", report.summary())
    })?;

    let s2 = Family::Symmetric { n: 2 }.build(DEFAULT_CLOSURE_BOUND).map_err(|e| e.to_string())?;
    let dependent = [MPoly::parse("x1 + x2", 2, 1).unwrap(), MPoly::parse("(x1 + x2)^2", 2, 1).unwrap()];
    let singular = WeylGenerators::from_invariants(&s2, &dependent);
    check(matches!(singular, Err(WeylError::SingularJacobian)), || "singular M accepted".into())?;

    for n in 1..=4 {
        let r = relation_check_with(n, Convention::Epsilon);
        check(!r.passed(), || format!("flipped convention passes for n = {n}"))?;
    }
    Ok("perturbed e1 fails delta_relations at (1, 1); singular M rejected; flipped shift fails".into())
}

#[test]
fn acceptance() {
    let criteria: [(&str, Duration, fn() -> Verdict); 7] = [
        ("S3 example reproduction", Duration::from_secs(5), s3_example),
        ("family suite", Duration::from_secs(120), family_suite),
        ("discriminant identities", Duration::from_secs(120), discriminant_identities),
        ("cross-product embedding", Duration::from_secs(5), cross_product),
        ("decomposition", Duration::from_secs(60), decomposition),
        ("property suites", Duration::from_secs(180), properties),
        ("negative controls", Duration::from_secs(60), negative_controls),
    ];
    let mut failures = Vec::new();
    for (i, (name, limit, f)) in criteria.into_iter().enumerate() {
        match timed(limit, f) {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail})", i + 1),
            Err(why) => {
                println!("criterion {} {name}: FAIL ({why})", i + 1);
                failures.push(name);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
