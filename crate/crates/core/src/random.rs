//! Seeded generators of small random algebraic objects.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::cyclotomic::euler_phi;
use crate::algebra::rat::rat;
use crate::algebra::{CycNum, MPoly, Matrix, Monomial, Rat, RatFrac};
use crate::crossprod::CrossElem;
use crate::weyl::DiffOp;

pub const DEFAULT_SEED: u64 = 20_240_601;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn index(&mut self, len: usize) -> usize {
        self.rng.gen_range(0..len)
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        items.choose(&mut self.rng).expect("nonempty")
    }

    pub fn rat(&mut self) -> Rat {
        let d = self.int(1, 4);
        rat(self.int(-6, 6), d)
    }

    pub fn nonzero_rat(&mut self) -> Rat {
        loop {
            let r = self.rat();
            if r != rat(0, 1) {
                return r;
            }
        }
    }

    pub fn cyc(&mut self, conductor: u32) -> CycNum {
        let coeffs = (0..euler_phi(conductor))
            .map(|_| if self.rng.gen_bool(0.5) { self.rat() } else { rat(0, 1) })
            .collect();
        CycNum::from_coeffs(conductor, coeffs).expect("length phi(m)")
    }

    pub fn nonzero_cyc(&mut self, conductor: u32) -> CycNum {
        loop {
            let c = self.cyc(conductor);
            if !c.is_zero() {
                return c;
            }
        }
    }

    /// Small integer or root-of-unity coefficient.
    fn small_coeff(&mut self, conductor: u32) -> CycNum {
        let k = self.int(-3, 3);
        let c = CycNum::from_int(conductor, if k == 0 { 1 } else { k });
        if conductor > 1 && self.rng.gen_bool(0.3) {
            &c * &CycNum::zeta_pow(conductor, self.int(1, conductor as i64 - 1))
        } else {
            c
        }
    }

    pub fn monomial(&mut self, nvars: usize, max_deg: u32) -> Monomial {
        let deg = self.rng.gen_range(0..=max_deg);
        let mut e = vec![0u32; nvars];
        for _ in 0..deg {
            let i = self.index(nvars);
            e[i] += 1;
        }
        Monomial(e)
    }

    pub fn poly(&mut self, nvars: usize, conductor: u32, max_deg: u32, max_terms: usize) -> MPoly {
        let terms = self.rng.gen_range(0..=max_terms);
        let mut p = MPoly::zero(nvars);
        for _ in 0..terms {
            let m = self.monomial(nvars, max_deg);
            let c = self.small_coeff(conductor);
            p = &p + &MPoly::monomial(m, c);
        }
        p
    }

    pub fn nonzero_poly(&mut self, nvars: usize, conductor: u32, max_deg: u32, max_terms: usize) -> MPoly {
        loop {
            let p = self.poly(nvars, conductor, max_deg, max_terms.max(1));
            if !p.is_zero() {
                return p;
            }
        }
    }

    /// A fraction whose denominator has at most two terms.
    pub fn frac(&mut self, nvars: usize, conductor: u32) -> RatFrac {
        let num = self.poly(nvars, conductor, 2, 3);
        let den = self.nonzero_poly(nvars, conductor, 1, 2);
        RatFrac::new(num, den).expect("nonzero denominator")
    }

    pub fn nonzero_frac(&mut self, nvars: usize, conductor: u32) -> RatFrac {
        loop {
            let f = self.frac(nvars, conductor);
            if !f.is_zero() {
                return f;
            }
        }
    }

    pub fn poly_matrix(&mut self, n: usize, nvars: usize, max_deg: u32) -> Matrix<MPoly> {
        Matrix::from_fn(n, n, |_, _| self.poly(nvars, 1, max_deg, 2))
    }

    /// An operator of order at most `max_order` with fraction or polynomial coefficients.
    pub fn diffop(&mut self, nvars: usize, max_order: u32, max_terms: usize) -> DiffOp {
        let terms = self.rng.gen_range(1..=max_terms);
        let mut out = Vec::with_capacity(terms);
        for _ in 0..terms {
            let alpha = self.monomial(nvars, max_order);
            let c = if self.rng.gen_bool(0.5) {
                RatFrac::from_poly(self.poly(nvars, 1, 2, 2))
            } else {
                self.frac(nvars, 1)
            };
            out.push((alpha, c));
        }
        DiffOp::from_terms(nvars, out)
    }

    /// A derivation `sum_k f_k d_k` with polynomial coefficients.
    pub fn derivation(&mut self, nvars: usize) -> DiffOp {
        DiffOp::derivation((0..nvars).map(|_| RatFrac::from_poly(self.poly(nvars, 1, 2, 2))).collect())
    }

    pub fn lattice(&mut self, n: usize, bound: i64) -> Vec<i64> {
        (0..n).map(|_| self.int(-bound, bound)).collect()
    }

    pub fn cross_elem(&mut self, n: usize, m: usize, max_terms: usize) -> CrossElem {
        let mut acc = CrossElem::zero(n, m);
        for _ in 0..self.rng.gen_range(1..=max_terms) {
            let mu = self.lattice(n, 2);
            let c = if self.rng.gen_bool(0.6) {
                RatFrac::from_poly(self.poly(n + m, 1, 2, 2))
            } else {
                self.frac(n + m, 1)
            };
            acc = acc.checked_add(&CrossElem::term(n, m, mu, c)).expect("same shape");
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_for_a_seed() {
        let mut a = Sampler::new(5);
        let mut b = Sampler::new(5);
        for _ in 0..20 {
            assert_eq!(a.poly(3, 4, 3, 4), b.poly(3, 4, 3, 4));
            assert_eq!(a.frac(2, 1), b.frac(2, 1));
        }
    }
}
