//! Randomized and exhaustive checks of the algebraic laws the library relies on.
//!
//! Every law is deterministic for a given seed. Randomized laws run `cases`
//! samples; exhaustive ones report how many instances they visited.

use serde::Serialize;

use crate::algebra::cyclotomic::{cyclotomic_poly, euler_phi};
use crate::algebra::linalg::{self, normalize_first_nonzero, FieldMatrix};
use crate::algebra::{solve_cramer, CycNum, MPoly, Matrix, Rat, RatFrac};
use crate::crossprod::{cross_mul, group_act_cross, is_fixed, shift_action, CrossElem};
use crate::groups::{
    act_on_poly, build_reflection, classify_reflections, commuting_criterion, decompose, reynolds, Family,
    MatrixGroup, Reflection,
};
use crate::invariants::{build_invariant_system, express_in_invariants, family_invariants};
use crate::random::Sampler;
use crate::weyl::{build_weyl_generators, DiffOp};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawResult {
    pub module: &'static str,
    pub law: &'static str,
    pub cases: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

type LawFn = fn(&mut Sampler, usize) -> Result<usize, String>;

macro_rules! ensure {
    ($cond:expr, $($arg:tt)*) => {
        if !$cond {
            return Err(format!($($arg)*));
        }
    };
}

/// `(module, law, check)` for every law.
pub fn catalog() -> Vec<(&'static str, &'static str, LawFn)> {
    vec![
        ("core-algebra", "rat_ring_axioms", rat_ring_axioms),
        ("core-algebra", "cyc_field_axioms", cyc_field_axioms),
        ("core-algebra", "cyclotomic_roots_of_unity", cyclotomic_roots_of_unity),
        ("core-algebra", "poly_ring_axioms", poly_ring_axioms),
        ("core-algebra", "frac_field_axioms", frac_field_axioms),
        ("core-algebra", "frac_equality_congruence", frac_equality_congruence),
        ("core-algebra", "partial_is_derivation", partial_is_derivation),
        ("core-algebra", "substitution_homomorphism", substitution_homomorphism),
        ("core-algebra", "det_alternating", det_alternating),
        ("core-algebra", "cramer_residual", cramer_residual),
        ("groups", "closure", closure),
        ("groups", "reflection_round_trip", reflection_round_trip),
        ("groups", "commuting_criterion_implies_commuting", commuting_criterion_implication),
        ("groups", "decomposition", decomposition),
        ("groups", "reynolds_projection", reynolds_projection),
        ("groups", "action_homomorphism", action_homomorphism),
        ("groups", "reflection_count_matches_degrees", reflection_count_matches_degrees),
        ("invariants", "invariant_system_identities", invariant_system_identities),
        ("invariants", "discriminant_in_invariants", discriminant_in_invariants),
        ("weyl", "compose_apply_consistency", compose_apply_consistency),
        ("weyl", "compose_associative", compose_associative),
        ("weyl", "derivation_law", derivation_law),
        ("weyl", "operator_action_automorphism", operator_action_automorphism),
        ("weyl", "restriction_consistency", restriction_consistency),
        ("crossprod", "cross_mul_associative_unital", cross_mul_associative_unital),
        ("crossprod", "shift_group_action", shift_group_action),
        ("crossprod", "cross_action_automorphism", cross_action_automorphism),
        ("crossprod", "fixed_elements_closed", fixed_elements_closed),
    ]
}

pub fn run_law(module: &'static str, law: &'static str, f: LawFn, seed: u64, cases: usize) -> LawResult {
    let mut sampler = Sampler::new(seed ^ fxhash(law));
    match f(&mut sampler, cases) {
        Ok(n) => LawResult { module, law, cases: n, passed: true, failure: None },
        Err(msg) => LawResult { module, law, cases: 0, passed: false, failure: Some(msg) },
    }
}

pub fn run_all(seed: u64, cases: usize) -> Vec<LawResult> {
    catalog().into_iter().map(|(m, l, f)| run_law(m, l, f, seed, cases)).collect()
}

// Stable per-law seed offset.
fn fxhash(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3))
}

fn q(x: i64) -> CycNum {
    CycNum::from_int(1, x)
}

fn rat_ring_axioms(s: &mut Sampler, cases: usize) -> Result<usize, String> {
    let zero = Rat::from_integer(0.into());
    let one = Rat::from_integer(1.into());
    for _ in 0..cases {
        let (a, b, c) = (s.rat(), s.rat(), s.rat());
        ensure!(&(&a + &b) + &c == &a + &(&b + &c), "(a+b)+c for {a}, {b}, {c}");
        ensure!(&(&a * &b) * &c == &a * &(&b * &c), "(ab)c for {a}, {b}, {c}");
        ensure!(&a * &b == &b * &a && &a + &b == &b + &a, "commutativity for {a}, {b}");
        ensure!(&a * &(&b + &c) == &(&a * &b) + &(&a * &c), "distributivity for {a}, {b}, {c}");
        ensure!(&a + &zero == a && &a * &one == a && &a - &a.clone() == zero, "identities for {a}");
        if b != zero {
            ensure!(&(&a / &b) * &b == a, "(a/b)b for {a}, {b}");
        }
    }
    Ok(cases)
}

fn cyc_field_axioms(s: &mut Sampler, cases: usize) -> Result<usize, String> {
    for _ in 0..cases {
        let m = *s.pick(&[1u32, 3, 4, 5, 7, 8, 12]);
        let (a, b, c) = (s.cyc(m), s.cyc(m), s.cyc(m));
        ensure!(&(&a + &b) + &c == &a + &(&b + &c), "(a+b)+c in Q(z{m})");
        ensure!(&(&a * &b) * &c == &a * &(&b * &c), "(ab)c in Q(z{m}) for {a}, {b}, {c}");
        ensure!(&a * &b == &b * &a, "ab = ba in Q(z{m})");
        ensure!(&a * &(&b + &c) == &(&a * &b) + &(&a * &c), "distributivity in Q(z{m})");
        ensure!(&a + &CycNum::zero(m) == a && &a * &CycNum::one(m) == a, "identities in Q(z{m})");
        if !a.is_zero() {
            ensure!((&a * &a.inverse().unwrap()).is_one(), "a * a^-1 = 1 for {a}");
        }
    }
    Ok(cases)
}

/// Every conductor up to 128 and a spread of larger ones up to the maximum.
fn cyclotomic_roots_of_unity(_: &mut Sampler, _: usize) -> Result<usize, String> {
    let conductors: Vec<u32> = (1..=128).chain([210, 243, 256, 360, 512, 1000, 1024]).collect();
    for &m in &conductors {
        let z = CycNum::zeta(m);
        let phi = cyclotomic_poly(m);
        ensure!(phi.len() == euler_phi(m) + 1, "degree of Phi_{m}");
        let mut value = CycNum::zero(m);
        for (k, &c) in phi.iter().enumerate() {
            if c != 0 {
                value += &CycNum::zeta_pow(m, k as i64).scale(&Rat::from_integer(c.into()));
            }
        }
        ensure!(value.is_zero(), "Phi_{m}(z) != 0");
        let mut acc = CycNum::one(m);
        for _ in 0..m {
            acc = &acc * &z;
        }
        ensure!(acc.is_one(), "z^{m} != 1");
        if m > 1 {
            ensure!(z.root_of_unity_order() == Some(m), "order of z{m}");
        }
    }
    Ok(conductors.len())
}

fn poly_ring_axioms(s: &mut Sampler, cases: usize) -> Result<usize, String> {
    for _ in 0..cases {
        let m = *s.pick(&[1u32, 3, 4]);
        let (a, b, c) = (s.poly(3, m, 3, 4), s.poly(3, m, 3, 4), s.poly(3, m, 2, 3));
        ensure!(&(&a + &b) + &c == &a + &(&b + &c), "(a+b)+c for {a}, {b}, {c}");
        ensure!(&(&a * &b) * &c == &a * &(&b * &c), "(ab)c for {a}, {b}, {c}");
        ensure!(&a * &b == &b * &a && &a + &b == &b + &a, "commutativity for {a}, {b}");
        ensure!(&a * &(&b + &c) == &(&a * &b) + &(&a * &c), "distributivity for {a}, {b}, {c}");
        ensure!(&a + &MPoly::zero(3) == a && &a * &MPoly::one(3) == a, "identities for {a}");
        ensure!((&a - &a.clone()).is_zero(), "a - a for {a}");
    }
    Ok(cases)
}

fn frac_field_axioms(s: &mut Sampler, cases: usize) -> Result<usize, String> {
    for _ in 0..cases {
        let (a, b, c) = (s.frac(2, 1), s.frac(2, 1), s.frac(2, 1));
        ensure!(&(&a + &b) + &c == &a + &(&b + &c), "(a+b)+c for {a}, {b}, {c}");
        ensure!(&(&a * &b) * &c == &a * &(&b * &c), "(ab)c for {a}, {b}, {c}");
        ensure!(&a * &b == &b * &a && &a + &b == &b + &a, "commutativity for {a}, {b}");
        ensure!(&a * &(&b + &c) == &(&a * &b) + &(&a * &c), "distributivity for {a}, {b}, {c}");
        ensure!(&a + &RatFrac::zero(2) == a && &a * &RatFrac::one(2) == a, "identities for {a}");
        if !b.is_zero() {
            ensure!(&a.checked_div(&b).unwrap() * &b == a, "(a/b)b for {a}, {b}");
        }
    }
    Ok(cases)
}

fn frac_equality_congruence(s: &mut Sampler, cases: usize) -> Result<usize, String> {
    for _ in 0..cases {
        let a = s.frac(2, 1);
        let h1 = s.nonzero_poly(2, 1, 1, 2);
        let h2 = s.nonzero_poly(2, 1, 1, 2);
        let a1 = RatFrac::new(a.num() * &h1, a.den() * &h1).unwrap();
        let a2 = RatFrac::new(a1.num() * &h2, a1.den() * &h2).unwrap();
        let b = s.frac(2, 1);
        ensure!(a == a.clone(), "reflexivity for {a}");
        let (forward, backward) = (a1 == a, a == a1);
        ensure!(forward == backward, "symmetry for {a}, {a1}");
        ensure!(a == a1 && a1 == a2 && a == a2, "transitivity for {a}, {a1}, {a2}");
        ensure!(&a1 + &b == &a + &b && &a1 - &b == &a - &b, "additive congruence for {a}, {b}");
        ensure!(&a1 * &b == &a * &b, "multiplicative congruence for {a}, {b}");
        if !b.is_zero() {
            ensure!(a1.checked_div(&b).unwrap() == a.checked_div(&b).unwrap(), "division congruence");
        }
        if !a.is_zero() {
            ensure!(b.checked_div(&a1).unwrap() == b.checked_div(&a).unwrap(), "division congruence");
        }
        let different = &a + &RatFrac::one(2);
        ensure!(different != a, "a + 1 == a for {a}");
    }
    Ok(cases)
}

fn partial_is_derivation(s: &mut Sampler, cases: usize) -> Result<usize, String> {
    for _ in 0..cases {
        let m = *s.pick(&[1u32, 3]);
        let (p, r) = (s.poly(3, m, 3, 4), s.poly(3, m, 3, 4));
        let j = s.index(3);
        ensure!((&p * &r).partial(j) == &(&p.partial(j) * &r) + &(&p * &r.partial(j)), "Leibniz for {p}, {r}, j={j}");
        let (f, g) = (s.frac(2, 1), s.frac(2, 1));
        let k = s.index(2);
        ensure!((&f * &g).partial(k) == &(&f.partial(k) * &g) + &(&f * &g.partial(k)), "quotient rule for {f}, {g}");
    }
    Ok(cases)
}

fn substitution_homomorphism(s: &mut Sampler, cases: usize) -> Result<usize, String> {
    for _ in 0..cases {
        let (p, r) = (s.poly(2, 1, 3, 3), s.poly(2, 1, 3, 3));
        let im = vec![s.poly(3, 1, 2, 3), s.poly(3, 1, 2, 3)];
        let sub = |x: &MPoly| x.substitute(&im).unwrap();
        ensure!(sub(&(&p * &r)) == &sub(&p) * &sub(&r), "products for {p}, {r}");
        ensure!(sub(&(&p + &r)) == &sub(&p) + &sub(&r), "sums for {p}, {r}");
        let id: Vec<MPoly> = (0..2).map(|i| MPoly::var(2, i)).collect();
        ensure!(p.substitute(&id).unwrap() == p, "identity substitution for {p}");
    }
    Ok(cases)
}

fn det_alternating(s: &mut Sampler, cases: usize) -> Result<usize, String> {
    for k in 0..cases {
        let n = if k % 10 == 0 { 4 } else { 2 + s.index(2) };
        let m = s.poly_matrix(n, 2, 1);
        let d = m.det().unwrap();
        ensure!(d == m.det_cofactor().unwrap(), "Bareiss vs cofactor for {m}");
        let (a, b) = (s.index(n), s.index(n));
        if a != b {
            let mut sw = m.clone();
            sw.swap_rows(a, b);
            ensure!(sw.det().unwrap() == -&d, "row swap for {m}");
            let rep = Matrix::from_fn(n, n, |i, j| if i == b { m.get(a, j).clone() } else { m.get(i, j).clone() });
            ensure!(rep.det().unwrap().is_zero(), "repeated row for {m}");
        }
    }
    Ok(cases)
}

fn cramer_residual(s: &mut Sampler, cases: usize) -> Result<usize, String> {
    let mut done = 0;
    while done < cases {
        let n = 2 + s.index(2);
        let m = s.poly_matrix(n, 3, 1);
        if m.det().unwrap().is_zero() {
            continue;
        }
        let rhs: Vec<MPoly> = (0..n).map(|_| s.poly(3, 1, 2, 2)).collect();
        let f = solve_cramer(&m, &rhs).unwrap();
        for i in 0..n {
            let mut acc = RatFrac::zero(3);
            for (j, fj) in f.iter().enumerate() {
                acc = &acc + &fj.mul_poly(m.get(i, j));
            }
            ensure!(acc == RatFrac::from_poly(rhs[i].clone()), "residual row {i} for {m}");
        }
        done += 1;
    }
    Ok(cases)
}

fn small_families() -> Vec<Family> {
    vec![
        Family::Symmetric { n: 2 },
        Family::Symmetric { n: 3 },
        Family::TypeB { n: 2 },
        Family::TypeD { n: 3 },
        Family::Imprimitive { m: 3, n: 2 },
        Family::CyclicDiagonal { m: 3, n: 2 },
        Family::CyclicDiagonal { m: 4, n: 1 },
    ]
}

fn build(f: &Family) -> MatrixGroup {
    f.build(crate::groups::DEFAULT_CLOSURE_BOUND).expect("built-in family")
}

fn closure(_: &mut Sampler, _: usize) -> Result<usize, String> {
    let mut count = 0;
    for f in small_families().iter().chain([&Family::TypeB { n: 3 }, &Family::Symmetric { n: 4 }]) {
        let g = build(f);
        ensure!(g.is_closed(), "{} is not closed", f.label());
        for i in 0..g.order() {
            ensure!(g.order().is_multiple_of(g.element_order(i)), "element order in {}", f.label());
        }
        ensure!(g.generators().iter().all(|x| g.contains(x)), "generators of {}", f.label());
        count += g.order() * g.order();
    }
    Ok(count)
}

fn reflection_round_trip(s: &mut Sampler, cases: usize) -> Result<usize, String> {
    let mut done = 0;
    while done < cases {
        let c = *s.pick(&[1u32, 3, 4, 5, 6]);
        let n = 2 + s.index(3);
        let order = if c == 1 { 2 } else { 2 * c as i64 };
        let k = s.int(1, order - 1);
        let mu = if c == 1 { q(-1) } else { CycNum::zeta_pow(c, 1).pow(k).unwrap().scale(&Rat::from_integer(1.into())) };
        let mu = if c == 1 { mu } else { &mu * &CycNum::from_int(c, if k % 2 == 0 { 1 } else { -1 }) };
        if mu.is_one() {
            continue;
        }
        let form: Vec<CycNum> = (0..n).map(|_| s.cyc(c)).collect();
        let root: Vec<CycNum> = (0..n).map(|_| s.cyc(c)).collect();
        if linalg::dot(&form, &root).is_zero() {
            continue;
        }
        let g = build_reflection(&form, &root, &mu).map_err(|e| e.to_string())?;
        let r = Reflection::from_matrix(&g).ok_or("built matrix is not a reflection")?;
        ensure!(r.mu == mu, "eigenvalue {} vs {}", r.mu, mu);
        ensure!(r.root == normalize_first_nonzero(&root), "root mismatch");
        ensure!(r.hyperplane == normalize_first_nonzero(&form), "hyperplane mismatch");
        let mut pw = g.clone();
        for _ in 1..r.order {
            pw = pw.checked_mul(&g).unwrap();
        }
        ensure!(pw == Matrix::identity_like(n, &CycNum::one(c)), "g^order != 1");
        done += 1;
    }
    Ok(cases)
}

fn commuting_criterion_implication(_: &mut Sampler, _: usize) -> Result<usize, String> {
    let mut count = 0;
    let fams = [
        Family::Symmetric { n: 4 },
        Family::TypeB { n: 3 },
        Family::TypeB { n: 4 },
        Family::TypeD { n: 4 },
        Family::Imprimitive { m: 3, n: 3 },
        Family::Imprimitive { m: 4, n: 2 },
    ];
    for f in &fams {
        let refl = classify_reflections(&build(f));
        for r in &refl {
            for t in &refl {
                if commuting_criterion(r, t) {
                    let (a, b) = (&r.element, &t.element);
                    ensure!(a.checked_mul(b).unwrap() == b.checked_mul(a).unwrap(), "criterion holds but rs != sr in {}", f.label());
                }
                count += 1;
            }
        }
    }
    Ok(count)
}

fn decomposition(_: &mut Sampler, _: usize) -> Result<usize, String> {
    let pairs = [
        (Family::Symmetric { n: 3 }, Family::Symmetric { n: 2 }),
        (Family::TypeB { n: 2 }, Family::Symmetric { n: 2 }),
        (Family::CyclicDiagonal { m: 3, n: 1 }, Family::TypeD { n: 2 }),
        (Family::Symmetric { n: 2 }, Family::Trivial { n: 1 }),
    ];
    for (a, b) in &pairs {
        let g = build(a).direct_product(&build(b), 10_000).unwrap();
        let d = decompose(&g).map_err(|e| e.to_string())?;
        ensure!(d.check().all_pass(), "{} x {}: {:?}", a.label(), b.label(), d.check());
    }
    for f in small_families() {
        let d = decompose(&build(&f)).map_err(|e| e.to_string())?;
        ensure!(d.check().all_pass(), "{}: {:?}", f.label(), d.check());
    }
    Ok(pairs.len() + small_families().len())
}

fn reynolds_projection(s: &mut Sampler, cases: usize) -> Result<usize, String> {
    let groups: Vec<MatrixGroup> = small_families().iter().map(build).collect();
    for _ in 0..cases {
        let g = s.pick(&groups);
        let p = s.poly(g.n(), g.conductor(), 3, 3);
        let r = reynolds(g, &p);
        ensure!(reynolds(g, &r) == r, "reynolds not idempotent on {p}");
        let w = s.index(g.order());
        ensure!(g.act(w, &r) == r, "reynolds({p}) not invariant");
    }
    Ok(cases)
}

fn action_homomorphism(s: &mut Sampler, cases: usize) -> Result<usize, String> {
    let groups: Vec<MatrixGroup> = small_families().iter().map(build).collect();
    for _ in 0..cases {
        let g = s.pick(&groups);
        let n = g.n();
        let (w1, w2) = (g.element(s.index(g.order())), g.element(s.index(g.order())));
        let (p, r) = (s.poly(n, g.conductor(), 2, 3), s.poly(n, g.conductor(), 2, 3));
        let act = |w: &FieldMatrix, x: &MPoly| act_on_poly(w, x).unwrap();
        ensure!(act(w1, &(&p * &r)) == &act(w1, &p) * &act(w1, &r), "w(pq) for {p}, {r}");
        ensure!(act(w1, &(&p + &r)) == &act(w1, &p) + &act(w1, &r), "w(p+q) for {p}, {r}");
        let w12 = w1.checked_mul(w2).unwrap();
        ensure!(act(&w12, &p) == act(w1, &act(w2, &p)), "(w1 w2).p for {p}");
    }
    Ok(cases)
}

fn reflection_count_matches_degrees(_: &mut Sampler, _: usize) -> Result<usize, String> {
    let fams = Family::standard_suite();
    for f in &fams {
        let count = classify_reflections(&build(f)).len();
        let expected: u32 = family_invariants(f).iter().map(|e| e.degree().unwrap() - 1).sum();
        ensure!(count == expected as usize, "{}: {count} reflections vs {expected}", f.label());
    }
    Ok(fams.len())
}

fn invariant_system_identities(_: &mut Sampler, _: usize) -> Result<usize, String> {
    let fams = Family::standard_suite();
    for f in &fams {
        let g = build(f);
        let sys = build_invariant_system(&g, None).map_err(|e| format!("{}: {e}", f.label()))?;
        for (i, e) in sys.e.iter().enumerate() {
            ensure!((0..g.order()).all(|w| g.act(w, e) == *e), "{}: e{} not invariant", f.label(), i + 1);
        }
        ensure!(!sys.jprime.is_zero() && !sys.c.is_zero(), "{}: J' or c vanish", f.label());
        ensure!(sys.jprime == sys.j.scale(&sys.c), "{}: J' != cJ", f.label());
    }
    Ok(fams.len())
}

fn discriminant_in_invariants(_: &mut Sampler, _: usize) -> Result<usize, String> {
    for f in [Family::Symmetric { n: 2 }, Family::Symmetric { n: 3 }] {
        let sys = build_invariant_system(&build(&f), None).map_err(|e| e.to_string())?;
        let delta = sys.delta.expand();
        let q = express_in_invariants(&delta, &sys.e).map_err(|e| e.to_string())?;
        ensure!(q.substitute(&sys.e).unwrap() == delta, "{}: Delta'(e) != Delta", f.label());
    }
    Ok(2)
}

fn compose_apply_consistency(s: &mut Sampler, cases: usize) -> Result<usize, String> {
    for _ in 0..cases {
        let (a, b) = (s.diffop(2, 2, 2), s.diffop(2, 2, 2));
        let f = RatFrac::from_poly(s.poly(2, 1, 4, 3));
        let ab = a.compose(&b).map_err(|e| e.to_string())?;
        let lhs = ab.apply(&f).unwrap();
        let rhs = a.apply(&b.apply(&f).unwrap()).unwrap();
        ensure!(lhs == rhs, "apply(ab, f) != apply(a, apply(b, f)) for a = {a}, b = {b}, f = {f}");
    }
    Ok(cases)
}

fn compose_associative(s: &mut Sampler, cases: usize) -> Result<usize, String> {
    for _ in 0..cases {
        let (a, b, c) = (s.diffop(2, 1, 2), s.diffop(2, 1, 2), s.diffop(2, 2, 1));
        let l = a.compose(&b).and_then(|ab| ab.compose(&c)).map_err(|e| e.to_string())?;
        let r = b.compose(&c).and_then(|bc| a.compose(&bc)).map_err(|e| e.to_string())?;
        ensure!(l == r, "(ab)c != a(bc) for a = {a}, b = {b}, c = {c}");
    }
    Ok(cases)
}

fn derivation_law(s: &mut Sampler, cases: usize) -> Result<usize, String> {
    for k in 0..cases {
        let d = if k % 2 == 0 {
            s.derivation(3)
        } else {
            DiffOp::derivation((0..3).map(|_| s.frac(3, 1)).collect())
        };
        let (f, g) = (RatFrac::from_poly(s.poly(3, 1, 3, 3)), RatFrac::from_poly(s.poly(3, 1, 3, 3)));
        let lhs = d.apply(&(&f * &g)).unwrap();
        let rhs = &(&d.apply(&f).unwrap() * &g) + &(&f * &d.apply(&g).unwrap());
        ensure!(lhs == rhs, "d(fg) != d(f)g + f d(g) for d = {d}");
    }
    Ok(cases)
}

fn operator_action_automorphism(s: &mut Sampler, cases: usize) -> Result<usize, String> {
    let groups = [build(&Family::Symmetric { n: 2 }), build(&Family::Imprimitive { m: 3, n: 2 }), build(&Family::TypeB { n: 2 })];
    for _ in 0..cases {
        let g = s.pick(&groups);
        let (i1, i2) = (s.index(g.order()), s.index(g.order()));
        let (w1, w2) = (g.element(i1), g.element(i2));
        let (a, b) = (s.diffop(2, 1, 2), s.diffop(2, 1, 2));
        let act = |w: &FieldMatrix, op: &DiffOp| op.act(w).unwrap();
        ensure!(act(w1, &a.compose(&b).unwrap()) == act(w1, &a).compose(&act(w1, &b)).unwrap(), "w(ab) for {a}, {b}");
        ensure!(
            act(w1, &a.commutator(&b).unwrap()) == act(w1, &a).commutator(&act(w1, &b)).unwrap(),
            "w[a, b] for {a}, {b}"
        );
        let w12 = w1.checked_mul(w2).unwrap();
        ensure!(act(&w12, &a) == act(w1, &act(w2, &a)), "(w1 w2).a for {a}");
    }
    Ok(cases)
}

fn restriction_consistency(s: &mut Sampler, cases: usize) -> Result<usize, String> {
    let fams = [
        Family::Symmetric { n: 2 },
        Family::Symmetric { n: 3 },
        Family::TypeB { n: 2 },
        Family::TypeD { n: 2 },
        Family::Imprimitive { m: 3, n: 2 },
        Family::CyclicDiagonal { m: 3, n: 2 },
    ];
    let mut built = Vec::new();
    for f in &fams {
        let sys = build_invariant_system(&build(f), None).map_err(|e| e.to_string())?;
        let gens = build_weyl_generators(&sys).map_err(|e| e.to_string())?;
        built.push((sys.e, gens.d));
    }
    for _ in 0..cases {
        let (e, d) = s.pick(&built);
        let n = e.len();
        let qy = s.poly(n, 1, 3, 3);
        let p = qy.substitute(e).unwrap();
        let i = s.index(n);
        let expected = RatFrac::from_poly(qy.partial(i).substitute(e).unwrap());
        ensure!(d[i].apply_poly(&p).unwrap() == expected, "d{}(q(e)) != (dq/dy{})(e) for q = {qy}", i + 1, i + 1);
    }
    Ok(cases)
}

fn cross_mul_associative_unital(s: &mut Sampler, cases: usize) -> Result<usize, String> {
    for _ in 0..cases {
        let n = 1 + s.index(2);
        let m = s.index(2);
        let (a, b, c) = (s.cross_elem(n, m, 2), s.cross_elem(n, m, 2), s.cross_elem(n, m, 2));
        let one = CrossElem::one(n, m);
        let mul = |x: &CrossElem, y: &CrossElem| cross_mul(x, y).unwrap();
        ensure!(mul(&mul(&a, &b), &c) == mul(&a, &mul(&b, &c)), "(ab)c != a(bc) for {a}, {b}, {c}");
        ensure!(mul(&a, &one) == a && mul(&one, &a) == a, "unit for {a}");
    }
    Ok(cases)
}

fn shift_group_action(s: &mut Sampler, cases: usize) -> Result<usize, String> {
    for _ in 0..cases {
        let n = 1 + s.index(3);
        let m = s.index(2);
        let (f, g) = (s.frac(n + m, 1), s.frac(n + m, 1));
        let (mu, nu) = (s.lattice(n, 3), s.lattice(n, 3));
        let sum: Vec<i64> = mu.iter().zip(&nu).map(|(a, b)| a + b).collect();
        ensure!(shift_action(&mu, &shift_action(&nu, &f)) == shift_action(&sum, &f), "composition for {f}");
        ensure!(shift_action(&mu, &(&f * &g)) == &shift_action(&mu, &f) * &shift_action(&mu, &g), "products for {f}, {g}");
        ensure!(shift_action(&mu, &(&f + &g)) == &shift_action(&mu, &f) + &shift_action(&mu, &g), "sums for {f}, {g}");
        for k in 0..m {
            let z = RatFrac::from_poly(MPoly::var(n + m, n + k));
            ensure!(shift_action(&mu, &z) == z, "z{} moved", k + 1);
        }
    }
    Ok(cases)
}

fn lattice_groups() -> Vec<MatrixGroup> {
    vec![build(&Family::Symmetric { n: 2 }), build(&Family::Symmetric { n: 3 }), build(&Family::TypeB { n: 2 })]
}

fn cross_action_automorphism(s: &mut Sampler, cases: usize) -> Result<usize, String> {
    let groups = lattice_groups();
    for _ in 0..cases {
        let g = s.pick(&groups);
        let w = g.element(s.index(g.order()));
        let m = s.index(2);
        let (a, b) = (s.cross_elem(g.n(), m, 2), s.cross_elem(g.n(), m, 2));
        let act = |x: &CrossElem| group_act_cross(w, x).unwrap();
        ensure!(act(&cross_mul(&a, &b).unwrap()) == cross_mul(&act(&a), &act(&b)).unwrap(), "w(ab) for {a}, {b}");
    }
    Ok(cases)
}

fn fixed_elements_closed(s: &mut Sampler, cases: usize) -> Result<usize, String> {
    let groups = lattice_groups();
    for _ in 0..cases {
        let g = s.pick(&groups);
        let symmetrize = |a: &CrossElem| {
            g.elements().iter().fold(CrossElem::zero(a.n(), a.nparams()), |acc, w| {
                acc.checked_add(&group_act_cross(w, a).unwrap()).unwrap()
            })
        };
        let (a, b) = (symmetrize(&s.cross_elem(g.n(), 0, 1)), symmetrize(&s.cross_elem(g.n(), 0, 1)));
        let gens = g.generators();
        ensure!(is_fixed(gens, &a).unwrap() && is_fixed(gens, &b).unwrap(), "symmetrized element not fixed");
        ensure!(is_fixed(gens, &cross_mul(&a, &b).unwrap()).unwrap(), "product of fixed elements moved: {a}, {b}");
        ensure!(is_fixed(gens, &a.checked_sub(&b).unwrap()).unwrap(), "difference of fixed elements moved");
    }
    Ok(cases)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_law_holds_on_a_short_run() {
        for r in run_all(1, 20) {
            assert!(r.passed, "{}::{}: {:?}", r.module, r.law, r.failure);
        }
    }
}
