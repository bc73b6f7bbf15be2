//! The shift cross product `k(t_1..t_n, z_1..z_m) * Z^n`.
//!
//! An element is `sum_mu c_mu(t, z) s^mu` with multiplication
//! `(c s^mu)(c' s^nu) = c * shift(mu, c') s^(mu + nu)`, where
//! `shift(mu, f)(t) = f(t - mu)` and the `z_k` are never shifted.
//! The opposite convention `e_i = s_i^{-1}` is [`Convention::Epsilon`].

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::linalg::{self, FieldMatrix};
use crate::algebra::poly::default_var_names;
use crate::algebra::{AlgebraError, CycNum, MPoly, Matrix, RatFrac};

pub type Lattice = Vec<i64>;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CrossError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("expected {expected} lattice/shift variables, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("matrix does not preserve the integer lattice")]
    NotLattice,
}

/// Sign of the shift carried by a lattice generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// `s_i(t_j) = t_j - delta_ij`.
    Sigma,
    /// `e_i(t_j) = t_j + delta_ij`.
    Epsilon,
}

/// `f(t - mu)` (or `f(t + mu)` for the epsilon convention), `z` fixed.
pub fn shift_action_with(mu: &[i64], f: &RatFrac, convention: Convention) -> RatFrac {
    if mu.iter().all(|&k| k == 0) {
        return f.clone();
    }
    let total = f.nvars();
    let sign = match convention {
        Convention::Sigma => -1,
        Convention::Epsilon => 1,
    };
    let images: Vec<MPoly> = (0..total)
        .map(|j| {
            let v = MPoly::var(total, j);
            match mu.get(j) {
                Some(&k) if k != 0 => &v + &MPoly::from_int(total, sign * k),
                _ => v,
            }
        })
        .collect();
    f.substitute(&images).expect("a shift never sends a nonzero polynomial to zero")
}

pub fn shift_action(mu: &[i64], f: &RatFrac) -> RatFrac {
    shift_action_with(mu, f, Convention::Sigma)
}

#[derive(Clone, Debug)]
pub struct CrossElem {
    n: usize,
    m: usize,
    terms: BTreeMap<Lattice, RatFrac>,
}

impl CrossElem {
    pub fn zero(n: usize, m: usize) -> Self {
        CrossElem { n, m, terms: BTreeMap::new() }
    }

    pub fn one(n: usize, m: usize) -> Self {
        Self::term(n, m, vec![0; n], RatFrac::one(n + m))
    }

    /// `c s^mu`.
    pub fn term(n: usize, m: usize, mu: Lattice, c: RatFrac) -> Self {
        assert_eq!(mu.len(), n);
        assert_eq!(c.nvars(), n + m);
        let mut out = Self::zero(n, m);
        out.add_term(mu, c);
        out
    }

    pub fn coefficient(n: usize, m: usize, c: RatFrac) -> Self {
        Self::term(n, m, vec![0; n], c)
    }

    pub fn sigma(n: usize, m: usize, mu: Lattice) -> Self {
        Self::term(n, m, mu, RatFrac::one(n + m))
    }

    /// `e_i = s_i^{-1}`, zero-based `i`.
    pub fn epsilon(n: usize, m: usize, i: usize) -> Self {
        let mut mu = vec![0; n];
        mu[i] = -1;
        Self::sigma(n, m, mu)
    }

    /// The coefficient `t_{i+1}`.
    pub fn t(n: usize, m: usize, i: usize) -> Self {
        Self::coefficient(n, m, RatFrac::from_poly(MPoly::var(n + m, i)))
    }

    /// The central coefficient `z_{k+1}`.
    pub fn z(n: usize, m: usize, k: usize) -> Self {
        Self::coefficient(n, m, RatFrac::from_poly(MPoly::var(n + m, n + k)))
    }

    fn add_term(&mut self, mu: Lattice, c: RatFrac) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&mu) {
            None => {
                self.terms.insert(mu, c);
            }
            Some(old) => {
                let s = &old + &c;
                if !s.is_zero() {
                    self.terms.insert(mu, s);
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nparams(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Lattice, &RatFrac)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check(&self, other: &CrossElem) -> Result<(), CrossError> {
        if self.n != other.n || self.m != other.m {
            return Err(CrossError::Arity { expected: self.n + self.m, found: other.n + other.m });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &CrossElem) -> Result<CrossElem, CrossError> {
        self.check(other)?;
        let mut out = self.clone();
        for (mu, c) in &other.terms {
            out.add_term(mu.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &CrossElem) -> Result<CrossElem, CrossError> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> CrossElem {
        CrossElem { n: self.n, m: self.m, terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect() }
    }

    pub fn scale(&self, c: &CycNum) -> CrossElem {
        let mut out = Self::zero(self.n, self.m);
        for (mu, f) in &self.terms {
            out.add_term(mu.clone(), f.scale(c));
        }
        out
    }

    pub fn commutator(&self, other: &CrossElem) -> Result<CrossElem, CrossError> {
        cross_mul(self, other)?.checked_sub(&cross_mul(other, self)?)
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(mu, c)| {
                let tuple = mu.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
                format!("({}) * s^({tuple})", c.to_string_with(names))
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn variable_names(&self) -> Vec<String> {
        let mut names = default_var_names("t", self.n);
        names.extend(default_var_names("z", self.m));
        names
    }
}

impl PartialEq for CrossElem {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.m == other.m
            && self.terms.len() == other.terms.len()
            && self.terms.iter().all(|(k, c)| other.terms.get(k) == Some(c))
    }
}

impl fmt::Display for CrossElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&self.variable_names()))
    }
}

pub fn cross_mul_with(a: &CrossElem, b: &CrossElem, convention: Convention) -> Result<CrossElem, CrossError> {
    a.check(b)?;
    let mut out = CrossElem::zero(a.n, a.m);
    for (mu, c) in &a.terms {
        for (nu, d) in &b.terms {
            let shifted = shift_action_with(mu, d, convention);
            let sum: Lattice = mu.iter().zip(nu).map(|(x, y)| x + y).collect();
            out.add_term(sum, c * &shifted);
        }
    }
    Ok(out)
}

pub fn cross_mul(a: &CrossElem, b: &CrossElem) -> Result<CrossElem, CrossError> {
    cross_mul_with(a, b, Convention::Sigma)
}

/// A generator of the Weyl algebra, zero-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeylGen {
    X(usize),
    D(usize),
}

/// `x_i -> s^{e_i}`, `d_i -> t_i s^{-e_i}`.
pub fn embed_weyl(gen: WeylGen, n: usize, m: usize) -> CrossElem {
    match gen {
        WeylGen::X(i) => {
            let mut mu = vec![0; n];
            mu[i] = 1;
            CrossElem::sigma(n, m, mu)
        }
        WeylGen::D(i) => {
            let mut mu = vec![0; n];
            mu[i] = -1;
            CrossElem::term(n, m, mu, RatFrac::from_poly(MPoly::var(n + m, i)))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationResult {
    pub relation: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub n: usize,
    pub convention: Convention,
    /// `image(d_i) image(x_i) = t_i`.
    pub anchors: Vec<RelationResult>,
    pub relations: Vec<RelationResult>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.anchors.iter().chain(&self.relations).all(|r| r.passed)
    }

    pub fn failures(&self) -> Vec<&RelationResult> {
        self.anchors.iter().chain(&self.relations).filter(|r| !r.passed).collect()
    }
}

pub fn relation_check(n: usize) -> RelationReport {
    relation_check_with(n, Convention::Sigma)
}

/// Checks the defining relations of `A_n` on the embedded generators,
/// multiplying with the given convention while keeping the embedding fixed.
pub fn relation_check_with(n: usize, convention: Convention) -> RelationReport {
    let mul = |a: &CrossElem, b: &CrossElem| cross_mul_with(a, b, convention).expect("same shape");
    let comm = |a: &CrossElem, b: &CrossElem| mul(a, b).checked_sub(&mul(b, a)).expect("same shape");
    let x: Vec<CrossElem> = (0..n).map(|i| embed_weyl(WeylGen::X(i), n, 0)).collect();
    let d: Vec<CrossElem> = (0..n).map(|i| embed_weyl(WeylGen::D(i), n, 0)).collect();
    let one = CrossElem::one(n, 0);
    let zero = CrossElem::zero(n, 0);

    let anchors = (0..n)
        .map(|i| RelationResult {
            relation: format!("d{0}*x{0} = t{0}", i + 1),
            passed: mul(&d[i], &x[i]) == CrossElem::t(n, 0, i),
        })
        .collect();
    let mut relations = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let expected = if i == j { &one } else { &zero };
            relations.push(RelationResult {
                relation: format!("[d{}, x{}] = {}", i + 1, j + 1, (i == j) as u8),
                passed: comm(&d[i], &x[j]) == *expected,
            });
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            relations.push(RelationResult {
                relation: format!("[x{}, x{}] = 0", i + 1, j + 1),
                passed: comm(&x[i], &x[j]).is_zero(),
            });
            relations.push(RelationResult {
                relation: format!("[d{}, d{}] = 0", i + 1, j + 1),
                passed: comm(&d[i], &d[j]).is_zero(),
            });
        }
    }
    RelationReport { n, convention, anchors, relations }
}

fn integral(m: &FieldMatrix) -> bool {
    m.entries().iter().all(|c| c.to_rat().is_some_and(|r| r.is_integer()))
}

/// Acts by `w` on `t` (coefficients `f -> f(w^{-1} t)`) and on the lattice
/// (`mu -> w mu`). `w` and `w^{-1}` must be integer matrices.
pub fn group_act_cross(w: &FieldMatrix, a: &CrossElem) -> Result<CrossElem, CrossError> {
    let n = a.n;
    if !w.is_square() || w.nrows() != n {
        return Err(CrossError::Arity { expected: n, found: w.nrows() });
    }
    let winv = linalg::inverse(w)?;
    if !integral(w) || !integral(&winv) {
        return Err(CrossError::NotLattice);
    }
    let total = n + a.m;
    let images: Vec<MPoly> = (0..total)
        .map(|i| {
            if i >= n {
                return MPoly::var(total, i);
            }
            (0..n).fold(MPoly::zero(total), |acc, j| {
                let c = winv.get(i, j);
                if c.is_zero() {
                    acc
                } else {
                    &acc + &MPoly::var(total, j).scale(c)
                }
            })
        })
        .collect();
    let entry = |i: usize, j: usize| -> i64 {
        let r = w.get(i, j).to_rat().expect("integral");
        i64::try_from(r.to_integer()).expect("small entries")
    };
    let mut out = CrossElem::zero(n, a.m);
    for (mu, c) in &a.terms {
        let wmu: Lattice = (0..n).map(|i| (0..n).map(|j| entry(i, j) * mu[j]).sum()).collect();
        out.add_term(wmu, c.substitute(&images)?);
    }
    Ok(out)
}

/// Whether `a` is fixed by every matrix in `gens`.
pub fn is_fixed(gens: &[FieldMatrix], a: &CrossElem) -> Result<bool, CrossError> {
    for w in gens {
        if group_act_cross(w, a)? != *a {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Lattice automorphism matrices as field matrices.
pub fn integer_matrix(rows: &[Vec<i64>]) -> FieldMatrix {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| CycNum::from_int(1, x)).collect()).collect())
        .expect("rectangular")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t1() -> RatFrac {
        RatFrac::from_poly(MPoly::var(1, 0))
    }

    #[test]
    fn shifts() {
        let f = shift_action(&[1], &t1());
        assert_eq!(f, RatFrac::from_poly(MPoly::parse("x1 - 1", 1, 1).unwrap()));
        assert_eq!(shift_action(&[0], &t1()), t1());
        assert_eq!(shift_action_with(&[1], &t1(), Convention::Epsilon), RatFrac::from_poly(MPoly::parse("x1 + 1", 1, 1).unwrap()));
        // z is never shifted
        let z = RatFrac::from_poly(MPoly::var(2, 1));
        assert_eq!(shift_action(&[3], &z), z);
    }

    #[test]
    fn twisted_product() {
        let s = CrossElem::sigma(1, 0, vec![1]);
        let t = CrossElem::t(1, 0, 0);
        let prod = cross_mul(&s, &t).unwrap();
        let expected = CrossElem::term(1, 0, vec![1], RatFrac::from_poly(MPoly::parse("x1 - 1", 1, 1).unwrap()));
        assert_eq!(prod, expected);
        let one = CrossElem::one(1, 0);
        assert_eq!(cross_mul(&prod, &one).unwrap(), prod);
        assert_eq!(cross_mul(&one, &prod).unwrap(), prod);
        assert_eq!(cross_mul(&CrossElem::epsilon(1, 0, 0), &s).unwrap(), one);
    }

    #[test]
    fn embedding() {
        let d = embed_weyl(WeylGen::D(0), 1, 0);
        let x = embed_weyl(WeylGen::X(0), 1, 0);
        assert_eq!(cross_mul(&d, &x).unwrap(), CrossElem::t(1, 0, 0));
        assert_eq!(d.commutator(&x).unwrap(), CrossElem::one(1, 0));
        let x2 = embed_weyl(WeylGen::X(1), 2, 0);
        let d2 = embed_weyl(WeylGen::D(1), 2, 0);
        assert!(embed_weyl(WeylGen::X(0), 2, 0).commutator(&x2).unwrap().is_zero());
        assert!(embed_weyl(WeylGen::D(0), 2, 0).commutator(&d2).unwrap().is_zero());
    }

    #[test]
    fn relation_reports() {
        let r1 = relation_check(1);
        assert!(r1.passed());
        assert_eq!(r1.relations.len(), 1);
        let r3 = relation_check(3);
        assert!(r3.passed());
        assert_eq!(r3.relations.len(), 9 + 6);
        let flipped = relation_check_with(2, Convention::Epsilon);
        assert!(!flipped.passed());
        assert!(flipped.failures().iter().any(|r| r.relation == "[d1, x1] = 1"));
    }

    #[test]
    fn group_action() {
        let swap = integer_matrix(&[vec![0, 1], vec![1, 0]]);
        let a = embed_weyl(WeylGen::D(0), 2, 0);
        assert_eq!(group_act_cross(&swap, &a).unwrap(), embed_weyl(WeylGen::D(1), 2, 0));
        let id = integer_matrix(&[vec![1, 0], vec![0, 1]]);
        assert_eq!(group_act_cross(&id, &a).unwrap(), a);
        let half = Matrix::from_rows(vec![
            vec![CycNum::rational(crate::algebra::rat::rat(1, 2)), CycNum::zero(1)],
            vec![CycNum::zero(1), CycNum::one(1)],
        ])
        .unwrap();
        assert_eq!(group_act_cross(&half, &a).unwrap_err(), CrossError::NotLattice);
        let x1 = embed_weyl(WeylGen::X(0), 2, 0);
        let x2 = embed_weyl(WeylGen::X(1), 2, 0);
        let sym = x1.checked_add(&x2).unwrap();
        assert!(is_fixed(std::slice::from_ref(&swap), &sym).unwrap());
        assert!(is_fixed(&[swap], &cross_mul(&sym, &sym).unwrap()).unwrap());
    }
}
