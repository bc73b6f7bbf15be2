//! Sparse multivariate polynomials with cyclotomic coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::cyclotomic::CycNum;
use super::rat::{format_rat, is_negative, Rat};
use super::{AlgebraError, ArithOp};

/// Exponent vector ordered graded-lexicographically (`x1 > x2 > ...`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `nvars` variables. Terms are kept in a map ordered by
/// graded lex; no stored coefficient is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, CycNum>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: CycNum) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, CycNum::one(1))
    }

    pub fn from_int(nvars: usize, n: i64) -> Self {
        Self::constant(nvars, CycNum::from_int(1, n))
    }

    /// The variable `x_{i+1}` (indices are zero-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        Self::monomial(Monomial::var(nvars, i), CycNum::one(1))
    }

    pub fn monomial(m: Monomial, c: CycNum) -> Self {
        let nvars = m.0.len();
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, CycNum)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), nvars, "exponent vector length mismatch");
            p.add_term(m, &c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &CycNum)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&CycNum> {
        self.terms.get(m)
    }

    pub fn constant_coeff(&self) -> CycNum {
        self.terms.get(&Monomial::one(self.nvars)).cloned().unwrap_or_else(|| CycNum::zero(1))
    }

    /// Total degree; `None` stands for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &CycNum)> {
        self.terms.iter().next_back()
    }

    /// Largest conductor among the coefficients (1 for rational polynomials).
    pub fn conductor(&self) -> u32 {
        self.terms.values().map(CycNum::conductor).max().unwrap_or(1)
    }

    fn add_term(&mut self, m: Monomial, c: &CycNum) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_nvars(&self, other: &MPoly) -> Result<(), AlgebraError> {
        if self.nvars != other.nvars {
            Err(AlgebraError::ArityMismatch { expected: self.nvars, found: other.nvars })
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &MPoly) -> Result<MPoly, AlgebraError> {
        self.check_nvars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MPoly) -> Result<MPoly, AlgebraError> {
        self.check_nvars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &MPoly) -> Result<MPoly, AlgebraError> {
        self.check_nvars(other)?;
        let mut out = MPoly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &CycNum) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn scale_rat(&self, r: &Rat) -> MPoly {
        self.scale(&CycNum::rational(r.clone()))
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &CycNum) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            out.add_term(ma.mul(m), &(ca * c));
        }
        out
    }

    pub fn pow(&self, k: u32) -> MPoly {
        let mut acc = MPoly::one(self.nvars);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to `x_{j+1}`.
    pub fn partial(&self, j: usize) -> MPoly {
        assert!(j < self.nvars, "variable index {j} out of range");
        let mut out = MPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[j];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[j] -= 1;
            out.add_term(m2, &c.scale(&Rat::from_integer(e.into())));
        }
        out
    }

    /// Ring-homomorphic substitution `x_i -> images[i]`.
    pub fn substitute(&self, images: &[MPoly]) -> Result<MPoly, AlgebraError> {
        if images.len() != self.nvars {
            return Err(AlgebraError::ArityMismatch { expected: self.nvars, found: images.len() });
        }
        let target = match images.first() {
            Some(p) => p.nvars,
            None => 0,
        };
        if let Some(bad) = images.iter().find(|p| p.nvars != target) {
            return Err(AlgebraError::ArityMismatch { expected: target, found: bad.nvars });
        }
        // powers[i][k] = images[i]^k, filled lazily up to the largest exponent used.
        let mut max_exp = vec![0u32; self.nvars];
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                max_exp[i] = max_exp[i].max(e);
            }
        }
        let powers: Vec<Vec<MPoly>> = images
            .iter()
            .zip(&max_exp)
            .map(|(img, &k)| {
                let mut v = vec![MPoly::one(target)];
                for _ in 0..k {
                    let next = v.last().unwrap() * img;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = MPoly::zero(target);
        for (m, c) in &self.terms {
            let mut term = MPoly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = &term * &powers[i][e as usize];
                }
            }
            for (tm, tc) in term.terms {
                out.add_term(tm, &tc);
            }
        }
        Ok(out)
    }

    /// Evaluates at a point with coordinates in the coefficient field.
    pub fn eval(&self, point: &[CycNum]) -> CycNum {
        assert_eq!(point.len(), self.nvars);
        let mut acc = CycNum::zero(1);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t = &t * &x.pow(e as i64).expect("nonnegative power");
                }
            }
            acc += &t;
        }
        acc
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &MPoly) -> Option<MPoly> {
        assert_eq!(self.nvars, divisor.nvars);
        let (lm, lc) = divisor.leading_term()?;
        let lc_inv = lc.inverse().ok()?;
        let mut rem = self.clone();
        let mut quot = MPoly::zero(self.nvars);
        while let Some((m, c)) = rem.leading_term() {
            if !lm.divides(m) {
                return None;
            }
            let qm = m.div(lm);
            let qc = c * &lc_inv;
            rem = &rem - &divisor.mul_monomial(&qm, &qc);
            quot.add_term(qm, &qc);
        }
        Some(quot)
    }

    /// Componentwise minimum of all exponent vectors.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(self.nvars),
            Some(first) => {
                let mut g = first.0.clone();
                for m in it {
                    for (a, b) in g.iter_mut().zip(&m.0) {
                        *a = (*a).min(*b);
                    }
                }
                Monomial(g)
            }
        }
    }

    /// Divides every exponent vector by `m`; caller guarantees divisibility.
    pub fn div_monomial(&self, m: &Monomial) -> MPoly {
        MPoly { nvars: self.nvars, terms: self.terms.iter().map(|(a, c)| (a.div(m), c.clone())).collect() }
    }

    /// Embeds into a ring with more variables (new variables appended).
    pub fn extend_vars(&self, nvars: usize) -> MPoly {
        assert!(nvars >= self.nvars);
        MPoly {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e.resize(nvars, 0);
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    /// If `self = c * other` for a scalar `c`, returns `c`.
    pub fn scalar_ratio(&self, other: &MPoly) -> Option<CycNum> {
        if self.nvars != other.nvars || self.terms.len() != other.terms.len() {
            return None;
        }
        let (lm, lc) = self.leading_term()?;
        let (om, oc) = other.leading_term()?;
        if lm != om {
            return None;
        }
        let c = lc.checked_div(oc).ok()?;
        (other.scale(&c) == *self).then_some(c)
    }

    /// Text form with the given variable names, leading term first.
    pub fn to_string_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono = format_monomial(m, names);
            let (neg, body) = format_coeff(c);
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            match (body, mono.is_empty()) {
                (None, true) => out.push('1'),
                (None, false) => out.push_str(&mono),
                (Some(b), true) => out.push_str(&b),
                (Some(b), false) => {
                    out.push_str(&b);
                    out.push('*');
                    out.push_str(&mono);
                }
            }
        }
        out
    }

    pub fn parse(text: &str, nvars: usize, conductor: u32) -> Result<MPoly, AlgebraError> {
        super::text::parse_poly(text, nvars, conductor)
    }
}

pub fn default_var_names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn format_monomial(m: &Monomial, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[i].clone()),
            _ => parts.push(format!("{}^{}", names[i], e)),
        }
    }
    parts.join("*")
}

/// Sign and absolute-value text of a coefficient; `None` body means 1.
fn format_coeff(c: &CycNum) -> (bool, Option<String>) {
    match c.to_rat() {
        Some(r) => {
            let neg = is_negative(&r);
            let abs = if neg { -r } else { r };
            if abs == Rat::from_integer(1.into()) {
                (neg, None)
            } else {
                (neg, Some(format_rat(&abs)))
            }
        }
        None => (false, Some(format!("({c})"))),
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&default_var_names("x", self.nvars)))
    }
}

/// `p op q` for `op` in {+, -, *}; division is not a polynomial operation.
pub fn poly_arith(p: &MPoly, q: &MPoly, op: ArithOp) -> Result<MPoly, AlgebraError> {
    match op {
        ArithOp::Add => p.checked_add(q),
        ArithOp::Sub => p.checked_sub(q),
        ArithOp::Mul => p.checked_mul(q),
        ArithOp::Div => Err(AlgebraError::Unsupported("polynomial division; use RatFrac")),
    }
}

macro_rules! forward_poly_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&MPoly> for &MPoly {
            type Output = MPoly;
            fn $method(self, rhs: &MPoly) -> MPoly {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<MPoly> for MPoly {
            type Output = MPoly;
            fn $method(self, rhs: MPoly) -> MPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&MPoly> for MPoly {
            type Output = MPoly;
            fn $method(self, rhs: &MPoly) -> MPoly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_poly_binop!(Add, add, checked_add);
forward_poly_binop!(Sub, sub, checked_sub);
forward_poly_binop!(Mul, mul, checked_mul);

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}
