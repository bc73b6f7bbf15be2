//! Fundamental invariants, the Jacobian matrix `M_ij = d e_i / d x_j`, its
//! determinant `J'`, the reflection product `J = prod L_s` and the
//! discriminant `Delta = J^|W|`.

mod search;

use thiserror::Error;

use crate::algebra::linalg::{self, Vector};
use crate::algebra::{AlgebraError, CycNum, MPoly, Matrix, Monomial};
use crate::groups::{classify_reflections, Family, GroupError, MatrixGroup, Reflection};

pub use search::{search_invariants, SearchOutcome};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("no built-in invariants for this group; supply candidate invariants")]
    Unsupported,
    #[error("expected {expected} invariants in {expected} variables, found {found}")]
    WrongCount { expected: usize, found: usize },
    #[error("invariant e{index} is not fixed by group element {element}")]
    NotInvariant { index: usize, element: usize },
    #[error("the Jacobian determinant vanishes: the invariants are algebraically dependent")]
    JacobianVanishes,
    #[error("J' is not a scalar multiple of J")]
    NotScalarMultiple,
    #[error("J is not semi-invariant under group element {element}")]
    NotSemiInvariant { element: usize },
    #[error("product of degrees {product} differs from the group order {order}")]
    DegreeProduct { product: usize, order: usize },
    #[error("{reflections} pseudo-reflections but sum(deg e_i - 1) = {expected}")]
    ReflectionCount { reflections: usize, expected: usize },
    #[error("polynomial is not expressible in the given invariants")]
    NotExpressible,
}

/// `e_k(p_1, ..., p_r)` for `k = 0..=r`.
pub fn elementary_symmetric(polys: &[MPoly], nvars: usize) -> Vec<MPoly> {
    let mut e = vec![MPoly::one(nvars)];
    for p in polys {
        e.push(MPoly::zero(nvars));
        for k in (1..e.len()).rev() {
            let t = &e[k - 1] * p;
            e[k] = &e[k] + &t;
        }
    }
    e
}

/// Closed-form basic invariants of a built-in family.
pub fn family_invariants(family: &Family) -> Vec<MPoly> {
    let n = family.rank();
    let x = |i: usize| MPoly::var(n, i);
    let powers = |k: u32| (0..n).map(|i| x(i).pow(k)).collect::<Vec<_>>();
    let esym = |ps: &[MPoly]| elementary_symmetric(ps, n).into_iter().skip(1).collect::<Vec<_>>();
    match *family {
        Family::Symmetric { .. } => esym(&powers(1)),
        Family::TypeB { .. } => esym(&powers(2)),
        Family::TypeD { .. } => {
            let mut e = esym(&powers(2));
            e.truncate(n - 1);
            let prod = (0..n).fold(MPoly::one(n), |acc, i| &acc * &x(i));
            e.push(prod);
            e
        }
        Family::Imprimitive { m, .. } => esym(&powers(m)),
        Family::CyclicDiagonal { m, .. } => {
            let mut e = vec![x(0).pow(m)];
            e.extend((1..n).map(x));
            e
        }
        Family::Trivial { .. } => (0..n).map(x).collect(),
    }
}

/// Basic invariants of `g`: the supplied candidates if any, otherwise the
/// family table. Invariance under every generator and a nonvanishing Jacobian
/// are checked before returning.
pub fn fundamental_invariants(g: &MatrixGroup, candidates: Option<&[MPoly]>) -> Result<Vec<MPoly>, InvariantError> {
    let e = match (candidates, g.family()) {
        (Some(c), _) => c.to_vec(),
        (None, Some(f)) => family_invariants(f),
        (None, None) => return Err(InvariantError::Unsupported),
    };
    let n = g.n();
    if e.len() != n || e.iter().any(|p| p.nvars() != n) {
        return Err(InvariantError::WrongCount { expected: n, found: e.len() });
    }
    for (i, p) in e.iter().enumerate() {
        for gen in g.generators() {
            let w = g.index_of(gen).expect("generators are elements");
            if g.act(w, p) != *p {
                return Err(InvariantError::NotInvariant { index: i + 1, element: w });
            }
        }
    }
    if jacobian(&e)?.det()?.is_zero() {
        return Err(InvariantError::JacobianVanishes);
    }
    Ok(e)
}

pub fn jacobian(e: &[MPoly]) -> Result<Matrix<MPoly>, InvariantError> {
    let n = e.len();
    if let Some(bad) = e.iter().find(|p| p.nvars() != n) {
        return Err(AlgebraError::ArityMismatch { expected: n, found: bad.nvars() }.into());
    }
    Ok(Matrix::from_fn(n, n, |i, j| e[i].partial(j)))
}

/// The linear form `sum_k h_k x_k`.
pub fn linear_form(h: &[CycNum]) -> MPoly {
    let n = h.len();
    h.iter().enumerate().filter(|(_, c)| !c.is_zero()).fold(MPoly::zero(n), |acc, (k, c)| {
        &acc + &MPoly::var(n, k).scale(c)
    })
}

/// `J = prod_s L_s` over the given reflections; `1` when there are none.
pub fn reflection_product(refs: &[Reflection], n: usize) -> MPoly {
    refs.iter().fold(MPoly::one(n), |acc, r| &acc * &linear_form(&r.hyperplane))
}

/// The scalar `c` with `J' = c J`.
pub fn compare_j(jprime: &MPoly, j: &MPoly) -> Result<CycNum, InvariantError> {
    if jprime.is_zero() || j.is_zero() {
        return Err(InvariantError::NotScalarMultiple);
    }
    jprime.scalar_ratio(j).ok_or(InvariantError::NotScalarMultiple)
}

/// First element `w` with `w.J != det(w) J`, if any.
pub fn semi_invariance_witness(g: &MatrixGroup, j: &MPoly) -> Option<usize> {
    (0..g.order()).find(|&i| {
        let det = g.element(i).det().expect("square");
        g.act(i, j) != j.scale(&det)
    })
}

pub fn semi_invariance_check(g: &MatrixGroup, j: &MPoly) -> bool {
    semi_invariance_witness(g, j).is_none()
}

/// `base^exponent`, kept unexpanded.
#[derive(Clone, Debug, PartialEq)]
pub struct Discriminant {
    pub base: MPoly,
    pub exponent: u32,
}

impl Discriminant {
    pub fn expand(&self) -> MPoly {
        self.base.pow(self.exponent)
    }

    pub fn degree(&self) -> u32 {
        self.base.degree().unwrap_or(0) * self.exponent
    }
}

/// Writes an invariant `p` as `q(e_1, ..., e_n)` by solving for the
/// coefficients of all weighted monomials of the right degree.
pub fn express_in_invariants(p: &MPoly, e: &[MPoly]) -> Result<MPoly, InvariantError> {
    let r = e.len();
    let conductor = p.conductor().max(e.iter().map(MPoly::conductor).max().unwrap_or(1));
    if p.is_zero() {
        return Ok(MPoly::zero(r));
    }
    let weights: Vec<u32> = e.iter().map(|q| q.degree().unwrap_or(0)).collect();
    if weights.contains(&0) {
        return Err(InvariantError::NotExpressible);
    }
    let top = p.degree().unwrap_or(0);
    let mut exps = Vec::new();
    weighted_exponents(&weights, top, &mut vec![0; r], 0, &mut exps);
    let images: Vec<MPoly> = exps
        .iter()
        .map(|a| a.iter().zip(e).fold(MPoly::one(p.nvars()), |acc, (&k, q)| &acc * &q.pow(k)))
        .collect();
    let mut rows_of: Vec<Monomial> = p.terms().map(|(m, _)| m.clone()).collect();
    for img in &images {
        rows_of.extend(img.terms().map(|(m, _)| m.clone()));
    }
    rows_of.sort();
    rows_of.dedup();
    let zero = CycNum::zero(conductor);
    let aug = Matrix::from_fn(rows_of.len(), images.len() + 1, |i, j| {
        let src = if j < images.len() { &images[j] } else { p };
        src.coeff(&rows_of[i]).map(|c| c.lift(conductor).expect("common field")).unwrap_or_else(|| zero.clone())
    });
    let (red, pivots) = linalg::rref(&aug);
    if pivots.last() == Some(&images.len()) {
        return Err(InvariantError::NotExpressible);
    }
    let mut sol: Vector = vec![zero.clone(); images.len()];
    for (row, &pc) in pivots.iter().enumerate() {
        sol[pc] = red.get(row, images.len()).clone();
    }
    Ok(MPoly::from_terms(
        r,
        exps.into_iter().zip(sol).filter(|(_, c)| !c.is_zero()).map(|(a, c)| (Monomial(a), c)),
    ))
}

fn weighted_exponents(weights: &[u32], total: u32, cur: &mut Vec<u32>, pos: usize, out: &mut Vec<Vec<u32>>) {
    if pos == weights.len() {
        let used: u32 = cur.iter().zip(weights).map(|(a, w)| a * w).sum();
        if used <= total {
            out.push(cur.clone());
        }
        return;
    }
    let used: u32 = cur[..pos].iter().zip(weights).map(|(a, w)| a * w).sum();
    for k in 0..=(total - used) / weights[pos] {
        cur[pos] = k;
        weighted_exponents(weights, total, cur, pos + 1, out);
    }
    cur[pos] = 0;
}

/// The data attached to a pseudo-reflection group and its basic invariants.
#[derive(Clone, Debug)]
pub struct InvariantSystem {
    pub group: MatrixGroup,
    pub e: Vec<MPoly>,
    pub degrees: Vec<u32>,
    pub m: Matrix<MPoly>,
    pub jprime: MPoly,
    pub reflections: Vec<Reflection>,
    pub j: MPoly,
    pub c: CycNum,
    pub delta: Discriminant,
}

/// Assembles and checks the system for a built-in family or supplied invariants.
pub fn build_invariant_system(g: &MatrixGroup, candidates: Option<&[MPoly]>) -> Result<InvariantSystem, InvariantError> {
    let e = fundamental_invariants(g, candidates)?;
    let n = g.n();
    for (i, p) in e.iter().enumerate() {
        if let Some(w) = (0..g.order()).find(|&w| g.act(w, p) != *p) {
            return Err(InvariantError::NotInvariant { index: i + 1, element: w });
        }
    }
    let degrees: Vec<u32> = e.iter().map(|p| p.degree().unwrap_or(0)).collect();
    let m = jacobian(&e)?;
    let jprime = m.det()?;
    if jprime.is_zero() {
        return Err(InvariantError::JacobianVanishes);
    }
    let reflections = classify_reflections(g);
    let j = reflection_product(&reflections, n);
    let c = compare_j(&jprime, &j)?;
    if let Some(element) = semi_invariance_witness(g, &j) {
        return Err(InvariantError::NotSemiInvariant { element });
    }
    let product: usize = degrees.iter().map(|&d| d as usize).product();
    if product != g.order() {
        return Err(InvariantError::DegreeProduct { product, order: g.order() });
    }
    let expected: usize = degrees.iter().map(|&d| d as usize - 1).sum();
    if expected != reflections.len() {
        return Err(InvariantError::ReflectionCount { reflections: reflections.len(), expected });
    }
    let delta = Discriminant { base: j.clone(), exponent: g.order() as u32 };
    Ok(InvariantSystem { group: g.clone(), e, degrees, m, jprime, reflections, j, c, delta })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{group_closure, reynolds};

    fn p(s: &str, n: usize) -> MPoly {
        MPoly::parse(s, n, 1).unwrap()
    }

    fn sign_group() -> MatrixGroup {
        let neg = Matrix::from_rows(vec![vec![CycNum::from_int(1, -1)]]).unwrap();
        group_closure(&[neg], 1, 1, 10).unwrap().with_family(Family::TypeB { n: 1 })
    }

    #[test]
    fn s3_invariants_match_the_printed_example() {
        let g = Family::Symmetric { n: 3 }.build(100).unwrap();
        let e = fundamental_invariants(&g, None).unwrap();
        assert_eq!(e, vec![p("x1 + x2 + x3", 3), p("x1*x2 + x2*x3 + x1*x3", 3), p("x1*x2*x3", 3)]);
    }

    #[test]
    fn sign_and_b2_invariants() {
        assert_eq!(fundamental_invariants(&sign_group(), None).unwrap(), vec![p("x1^2", 1)]);
        let b2 = Family::TypeB { n: 2 }.build(100).unwrap();
        let e = fundamental_invariants(&b2, None).unwrap();
        assert_eq!(e, vec![p("x1^2 + x2^2", 2), p("x1^2*x2^2", 2)]);
        let prod: u32 = e.iter().map(|q| q.degree().unwrap()).product();
        assert_eq!(prod as usize, b2.order());
    }

    #[test]
    fn unsupported_and_bad_candidates() {
        let g = group_closure(&Family::Symmetric { n: 2 }.generators(), 2, 1, 10).unwrap();
        assert_eq!(fundamental_invariants(&g, None).unwrap_err(), InvariantError::Unsupported);
        let bad = [p("x1", 2), p("x1*x2", 2)];
        assert!(matches!(fundamental_invariants(&g, Some(&bad)), Err(InvariantError::NotInvariant { index: 1, .. })));
        let dependent = [p("x1 + x2", 2), p("x1^2 + 2*x1*x2 + x2^2", 2)];
        assert_eq!(fundamental_invariants(&g, Some(&dependent)).unwrap_err(), InvariantError::JacobianVanishes);
        let good = [p("x1 + x2", 2), p("x1^2 + x2^2", 2)];
        assert!(build_invariant_system(&g, Some(&good)).is_ok());
    }

    #[test]
    fn jacobians() {
        let ident: Vec<MPoly> = (0..3).map(|i| MPoly::var(3, i)).collect();
        assert_eq!(jacobian(&ident).unwrap(), Matrix::identity_like(3, &MPoly::one(3)));
        let m = jacobian(&[p("x1 + x2", 2), p("x1*x2", 2)]).unwrap();
        assert_eq!(m.rows(), vec![vec![p("1", 2), p("1", 2)], vec![p("x2", 2), p("x1", 2)]]);
        let s3 = family_invariants(&Family::Symmetric { n: 3 });
        assert!(jacobian(&s3).unwrap().row(0).iter().all(|q| *q == MPoly::one(3)));
    }

    #[test]
    fn reflection_products_and_scalars() {
        let s2 = Family::Symmetric { n: 2 }.build(10).unwrap();
        assert_eq!(reflection_product(&classify_reflections(&s2), 2), p("x1 - x2", 2));
        let s3 = Family::Symmetric { n: 3 }.build(100).unwrap();
        let j = reflection_product(&classify_reflections(&s3), 3);
        assert_eq!(j, p("(x1 - x2)*(x2 - x3)*(x1 - x3)", 3));
        let t = Family::Trivial { n: 2 }.build(10).unwrap();
        assert_eq!(reflection_product(&classify_reflections(&t), 2), MPoly::one(2));

        assert_eq!(compare_j(&p("x1 - x2", 2), &p("x1 - x2", 2)).unwrap(), CycNum::one(1));
        assert_eq!(compare_j(&p("2*x1", 1), &p("x1", 1)).unwrap(), CycNum::from_int(1, 2));
        assert_eq!(compare_j(&p("x1", 2), &p("x2", 2)).unwrap_err(), InvariantError::NotScalarMultiple);
    }

    #[test]
    fn semi_invariance() {
        let s3 = Family::Symmetric { n: 3 }.build(100).unwrap();
        assert!(semi_invariance_check(&s3, &p("(x1 - x2)*(x2 - x3)*(x1 - x3)", 3)));
        let t = Family::Trivial { n: 2 }.build(10).unwrap();
        assert!(semi_invariance_check(&t, &p("x1^3 + 7", 2)));
        let s2 = Family::Symmetric { n: 2 }.build(10).unwrap();
        assert!(!semi_invariance_check(&s2, &p("x1 + x2", 2)));
    }

    #[test]
    fn systems() {
        let s3 = build_invariant_system(&Family::Symmetric { n: 3 }.build(100).unwrap(), None).unwrap();
        assert_eq!(s3.degrees, vec![1, 2, 3]);
        assert_eq!(s3.reflections.len(), 3);
        assert_eq!(s3.c, CycNum::one(1));
        let sign = build_invariant_system(&sign_group(), None).unwrap();
        assert_eq!(sign.delta, Discriminant { base: p("x1", 1), exponent: 2 });
        assert_eq!(sign.delta.expand(), p("x1^2", 1));
        assert_eq!(sign.c, CycNum::from_int(1, 2));
        let b2 = build_invariant_system(&Family::TypeB { n: 2 }.build(100).unwrap(), None).unwrap();
        assert_eq!(b2.reflections.len(), 4);
        let c3 = build_invariant_system(&Family::CyclicDiagonal { m: 3, n: 2 }.build(100).unwrap(), None).unwrap();
        assert_eq!(c3.j, p("x1^2", 2));
        assert_eq!(c3.c, CycNum::from_int(3, 3));
    }

    #[test]
    fn discriminant_in_invariants() {
        let e = family_invariants(&Family::Symmetric { n: 2 });
        let delta = p("(x1 - x2)^2", 2);
        let q = express_in_invariants(&delta, &e).unwrap();
        assert_eq!(q, p("x1^2 - 4*x2", 2));
        assert_eq!(q.substitute(&e).unwrap(), delta);

        let s3 = build_invariant_system(&Family::Symmetric { n: 3 }.build(100).unwrap(), None).unwrap();
        let d = s3.delta.expand();
        let q = express_in_invariants(&d, &s3.e).unwrap();
        assert_eq!(q.substitute(&s3.e).unwrap(), d);
        assert!(express_in_invariants(&p("x1", 2), &e).is_err());
        let avg = reynolds(&Family::Symmetric { n: 2 }.build(10).unwrap(), &p("x1^3", 2));
        assert!(express_in_invariants(&avg, &e).is_ok());
    }
}
