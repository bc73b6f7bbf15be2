//! Differential operators `sum_a c_a(x) d^a` with rational-function
//! coefficients, derivatives written to the right.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::linalg::{self, FieldMatrix};
use crate::algebra::poly::default_var_names;
use crate::algebra::{AlgebraError, CycNum, MPoly, Monomial, Rat, RatFrac};

use super::WeylError;

/// Largest operator order accepted by [`DiffOp::compose`].
pub const MAX_ORDER: u32 = 8;

#[derive(Clone, Debug)]
pub struct DiffOp {
    nvars: usize,
    terms: BTreeMap<Monomial, RatFrac>,
}

impl DiffOp {
    pub fn zero(nvars: usize) -> Self {
        DiffOp { nvars, terms: BTreeMap::new() }
    }

    /// Multiplication by `f`.
    pub fn multiplication(f: RatFrac) -> Self {
        let mut op = Self::zero(f.nvars());
        op.add_term(Monomial::one(f.nvars()), f);
        op
    }

    pub fn identity(nvars: usize) -> Self {
        Self::multiplication(RatFrac::one(nvars))
    }

    /// `d/dx_{k+1}`.
    pub fn partial(nvars: usize, k: usize) -> Self {
        let mut op = Self::zero(nvars);
        op.add_term(Monomial::var(nvars, k), RatFrac::one(nvars));
        op
    }

    /// `sum_k f_k d_k`.
    pub fn derivation(coeffs: Vec<RatFrac>) -> Self {
        let n = coeffs.len();
        let mut op = Self::zero(n);
        for (k, f) in coeffs.into_iter().enumerate() {
            op.add_term(Monomial::var(n, k), f);
        }
        op
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, RatFrac)>) -> Self {
        let mut op = Self::zero(nvars);
        for (m, c) in terms {
            op.add_term(m, c);
        }
        op
    }

    fn add_term(&mut self, m: Monomial, c: RatFrac) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            None => {
                self.terms.insert(m, c);
            }
            Some(old) => {
                let sum = &old + &c;
                if !sum.is_zero() {
                    self.terms.insert(m, sum);
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &RatFrac)> {
        self.terms.iter()
    }

    pub fn coeff(&self, alpha: &Monomial) -> Option<&RatFrac> {
        self.terms.get(alpha)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn order(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    fn check_arity(&self, n: usize) -> Result<(), WeylError> {
        if self.nvars != n {
            return Err(AlgebraError::ArityMismatch { expected: self.nvars, found: n }.into());
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &DiffOp) -> Result<DiffOp, WeylError> {
        self.check_arity(other.nvars)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &DiffOp) -> Result<DiffOp, WeylError> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> DiffOp {
        DiffOp { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    /// Left multiplication by a function.
    pub fn mul_left(&self, f: &RatFrac) -> DiffOp {
        DiffOp::from_terms(self.nvars, self.terms.iter().map(|(m, c)| (m.clone(), f * c)))
    }

    /// `sum_a c_a d^a(f)`.
    pub fn apply(&self, f: &RatFrac) -> Result<RatFrac, WeylError> {
        self.check_arity(f.nvars())?;
        let mut cache = DerivativeCache::new(f.clone());
        let mut acc = RatFrac::zero(self.nvars);
        for (alpha, c) in &self.terms {
            acc = &acc + &(c * cache.get(alpha));
        }
        Ok(acc)
    }

    pub fn apply_poly(&self, p: &MPoly) -> Result<RatFrac, WeylError> {
        self.apply(&RatFrac::from_poly(p.clone()))
    }

    /// The operator product, normalized with the Leibniz rule
    /// `d^a (c d^b) = sum_{g <= a} binom(a, g) d^g(c) d^{a - g + b}`.
    pub fn compose(&self, other: &DiffOp) -> Result<DiffOp, WeylError> {
        self.check_arity(other.nvars)?;
        let order = self.order() + other.order();
        if self.order() > MAX_ORDER || other.order() > MAX_ORDER || order > MAX_ORDER {
            return Err(WeylError::OrderCap { order, cap: MAX_ORDER });
        }
        let mut out = DiffOp::zero(self.nvars);
        let mut caches: Vec<DerivativeCache> = other.terms.values().map(|c| DerivativeCache::new(c.clone())).collect();
        for (alpha, a) in &self.terms {
            for gamma in sub_multi_indices(alpha) {
                let binom = multi_binomial(alpha, &gamma);
                let rest = alpha.div(&gamma);
                for ((beta, _), cache) in other.terms.iter().zip(caches.iter_mut()) {
                    let dc = cache.get(&gamma);
                    if dc.is_zero() {
                        continue;
                    }
                    let coeff = (a * dc).scale(&CycNum::rational(binom.clone()));
                    out.add_term(rest.mul(beta), coeff);
                }
            }
        }
        Ok(out)
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &DiffOp) -> Result<DiffOp, WeylError> {
        self.compose(other)?.checked_sub(&other.compose(self)?)
    }

    /// `f -> w.(self(w^{-1}.f))`: coefficients are acted on and
    /// `d_k -> sum_l w_lk d_l`.
    pub fn act(&self, w: &FieldMatrix) -> Result<DiffOp, WeylError> {
        let n = self.nvars;
        if !w.is_square() || w.nrows() != n {
            return Err(AlgebraError::ArityMismatch { expected: n, found: w.nrows() }.into());
        }
        let winv = linalg::inverse(w)?;
        Ok(self.act_with(w, &winv))
    }

    pub(crate) fn act_with(&self, w: &FieldMatrix, winv: &FieldMatrix) -> DiffOp {
        let n = self.nvars;
        let linear = |m: &FieldMatrix, transpose: bool| -> Vec<MPoly> {
            (0..n)
                .map(|i| {
                    (0..n).fold(MPoly::zero(n), |acc, j| {
                        let c = if transpose { m.get(j, i) } else { m.get(i, j) };
                        if c.is_zero() {
                            acc
                        } else {
                            &acc + &MPoly::var(n, j).scale(c)
                        }
                    })
                })
                .collect()
        };
        let x_images = linear(winv, false);
        let d_images = linear(w, true);
        let mut out = DiffOp::zero(n);
        for (alpha, c) in &self.terms {
            let c2 = c.substitute(&x_images).expect("invertible linear substitution");
            let d = MPoly::monomial(alpha.clone(), CycNum::one(1)).substitute(&d_images).expect("arity");
            for (beta, k) in d.terms() {
                out.add_term(beta.clone(), c2.scale(k));
            }
        }
        out
    }

    /// Text form, e.g. `(x1)/(x1 - x2)*D1 + D2^2`.
    pub fn to_string_with(&self, names: &[String], dnames: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(alpha, c)| {
                let coeff = c.to_string_with(names);
                let coeff = if c.is_polynomial() && c.num().len() > 1 { format!("({coeff})") } else { coeff };
                let ds: Vec<String> = alpha
                    .exponents()
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(k, &e)| if e == 1 { dnames[k].clone() } else { format!("{}^{e}", dnames[k]) })
                    .collect();
                match (ds.is_empty(), coeff.as_str()) {
                    (true, _) => coeff,
                    (false, "1") => ds.join("*"),
                    (false, _) => format!("{coeff}*{}", ds.join("*")),
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl PartialEq for DiffOp {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars
            && self.terms.len() == other.terms.len()
            && self.terms.iter().all(|(m, c)| other.terms.get(m) == Some(c))
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_var_names("x", self.nvars);
        let dnames = default_var_names("D", self.nvars);
        f.write_str(&self.to_string_with(&names, &dnames))
    }
}

/// Memoized mixed partials of one fraction.
struct DerivativeCache {
    base: RatFrac,
    memo: BTreeMap<Monomial, RatFrac>,
}

impl DerivativeCache {
    fn new(base: RatFrac) -> Self {
        DerivativeCache { base, memo: BTreeMap::new() }
    }

    fn get(&mut self, alpha: &Monomial) -> &RatFrac {
        if !self.memo.contains_key(alpha) {
            let value = match alpha.exponents().iter().position(|&e| e > 0) {
                None => self.base.clone(),
                Some(k) => {
                    let lower = alpha.div(&Monomial::var(alpha.exponents().len(), k));
                    let prev = self.get(&lower).clone();
                    prev.partial(k)
                }
            };
            self.memo.insert(alpha.clone(), value);
        }
        &self.memo[alpha]
    }
}

fn sub_multi_indices(alpha: &Monomial) -> Vec<Monomial> {
    let mut out = vec![Vec::new()];
    for &a in alpha.exponents() {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<u32>| {
                (0..=a).map(move |g| {
                    let mut v = prefix.clone();
                    v.push(g);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(Monomial).collect()
}

fn multi_binomial(alpha: &Monomial, gamma: &Monomial) -> Rat {
    let mut acc = Rat::from_integer(1.into());
    for (&a, &g) in alpha.exponents().iter().zip(gamma.exponents()) {
        let mut b = Rat::from_integer(1.into());
        for i in 0..g {
            b = b * Rat::from_integer((a - i).into()) / Rat::from_integer((i + 1).into());
        }
        acc *= b;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Matrix;

    fn p(s: &str, n: usize) -> MPoly {
        MPoly::parse(s, n, 1).unwrap()
    }

    fn f(s: &str, n: usize) -> RatFrac {
        RatFrac::from_poly(p(s, n))
    }

    fn mult(s: &str, n: usize) -> DiffOp {
        DiffOp::multiplication(f(s, n))
    }

    #[test]
    fn application() {
        let d1 = DiffOp::partial(1, 0);
        assert_eq!(d1.apply(&f("x1^2", 1)).unwrap(), f("2*x1", 1));
        let euler = mult("x1", 1).compose(&d1).unwrap();
        for k in 0..6 {
            let xk = f(&format!("x1^{k}"), 1);
            assert_eq!(euler.apply(&xk).unwrap(), xk.scale(&CycNum::from_int(1, k)));
        }
    }

    #[test]
    fn canonical_relations() {
        let d1 = DiffOp::partial(2, 0);
        let d2 = DiffOp::partial(2, 1);
        assert_eq!(d1.commutator(&mult("x1", 2)).unwrap(), DiffOp::identity(2));
        assert!(d1.commutator(&mult("x2", 2)).unwrap().is_zero());
        assert_eq!(d1.compose(&d2).unwrap(), d2.compose(&d1).unwrap());
        assert!(d1.commutator(&d1).unwrap().is_zero());
    }

    #[test]
    fn leibniz_with_fraction_coefficients() {
        let n = 2;
        let c = RatFrac::new(p("x1", n), p("x1 - x2", n)).unwrap();
        let a = DiffOp::from_terms(n, [(Monomial(vec![2, 0]), RatFrac::one(n)), (Monomial(vec![0, 1]), f("x2", n))]);
        let b = DiffOp::from_terms(n, [(Monomial(vec![1, 1]), c.clone()), (Monomial(vec![0, 0]), f("x1^2", n))]);
        let ab = a.compose(&b).unwrap();
        for test in ["x1^3*x2^2 + x2", "x1*x2^4 - 3", "x1^2 + x1*x2"] {
            let g = f(test, n);
            assert_eq!(ab.apply(&g).unwrap(), a.apply(&b.apply(&g).unwrap()).unwrap(), "{test}");
        }
    }

    #[test]
    fn order_cap() {
        let d = DiffOp::from_terms(1, [(Monomial(vec![5]), RatFrac::one(1))]);
        assert!(matches!(d.compose(&d), Err(WeylError::OrderCap { order: 10, .. })));
    }

    #[test]
    fn group_action_on_operators() {
        let q = |x: i64| CycNum::from_int(1, x);
        let swap = Matrix::from_rows(vec![vec![q(0), q(1)], vec![q(1), q(0)]]).unwrap();
        assert_eq!(DiffOp::partial(2, 0).act(&swap).unwrap(), DiffOp::partial(2, 1));
        let op = DiffOp::from_terms(2, [(Monomial(vec![1, 1]), f("x1^2", 2)), (Monomial(vec![0, 1]), f("x2", 2))]);
        let id = Matrix::identity_like(2, &q(1));
        assert_eq!(op.act(&id).unwrap(), op);
        // conjugation: (w.op)(w.f) = w.(op f)
        let z = CycNum::zeta(3);
        let w = Matrix::from_rows(vec![vec![z.clone(), CycNum::one(3)], vec![CycNum::zero(3), CycNum::one(3)]]).unwrap();
        let g = p("x1^2*x2 + x2^3", 2);
        let wg = crate::groups::act_on_poly(&w, &g).unwrap();
        let lhs = op.act(&w).unwrap().apply_poly(&wg).unwrap();
        let rhs_poly = op.apply_poly(&g).unwrap();
        let rhs = RatFrac::from_poly(crate::groups::act_on_poly(&w, rhs_poly.num()).unwrap());
        assert!(rhs_poly.is_polynomial());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn display() {
        let c = RatFrac::new(p("x1", 2), p("x1 - x2", 2)).unwrap();
        let op = DiffOp::derivation(vec![c, f("1", 2)]);
        assert_eq!(op.to_string(), "(x1)/(x1 - x2)*D1 + D2");
    }
}
