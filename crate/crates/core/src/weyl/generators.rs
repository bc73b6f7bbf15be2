use std::thread;

use serde::Serialize;

use crate::algebra::linalg;
use crate::algebra::{solve_cramer, AlgebraError, MPoly, RatFrac};
use crate::groups::MatrixGroup;
use crate::invariants::{jacobian, InvariantSystem};

use super::{DiffOp, WeylError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: &'static str,
    pub passed: bool,
    pub cases: usize,
    pub failures: usize,
    /// First failing case. Indices are 1-based `(i, j)`, except for
    /// `invariance` where the pair is `(i, group element index)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<[usize; 2]>,
}

impl CheckReport {
    fn run(name: &'static str, cases: impl IntoIterator<Item = ([usize; 2], bool)>) -> CheckReport {
        let mut report = CheckReport { name, passed: true, cases: 0, failures: 0, witness: None };
        for (case, ok) in cases {
            report.merge_case(case, ok);
        }
        report
    }

    fn merge_case(&mut self, case: [usize; 2], ok: bool) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            self.passed = false;
            self.witness.get_or_insert(case);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub delta_relations: CheckReport,
    pub invariance: CheckReport,
    pub pairwise_commutation: CheckReport,
    pub weyl_relations: CheckReport,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks().iter().all(|c| c.passed)
    }

    pub fn checks(&self) -> [&CheckReport; 4] {
        [&self.delta_relations, &self.invariance, &self.pairwise_commutation, &self.weyl_relations]
    }

    pub fn summary(&self) -> String {
        self.checks()
            .iter()
            .map(|c| match c.witness {
                None => format!("{}: pass", c.name),
                Some([a, b]) => format!("{}: FAIL at ({a}, {b})", c.name),
            })
            .collect::<Vec<_>>()
            .join("; ")
    }
}

#[derive(Clone, Debug)]
pub struct WeylGenerators {
    pub group: MatrixGroup,
    pub e: Vec<MPoly>,
    /// `det M`, the common denominator of every coefficient.
    pub jprime: MPoly,
    /// `numerators[i][k]`: the coefficient of `d_k` in `d_i` is `numerators[i][k] / J'`.
    pub numerators: Vec<Vec<MPoly>>,
    pub d: Vec<DiffOp>,
    pub report: VerificationReport,
}

impl WeylGenerators {
    /// Builds `d_1..d_n` from arbitrary polynomials and runs the checks,
    /// without requiring the checks to pass.
    pub fn from_invariants(group: &MatrixGroup, e: &[MPoly]) -> Result<WeylGenerators, WeylError> {
        let n = e.len();
        let m = jacobian(e)?;
        let jprime = m.det()?;
        if jprime.is_zero() {
            return Err(WeylError::SingularJacobian);
        }
        let mut numerators = Vec::with_capacity(n);
        let mut d = Vec::with_capacity(n);
        for i in 0..n {
            let rhs: Vec<MPoly> = (0..n).map(|k| MPoly::from_int(n, (k == i) as i64)).collect();
            let f = solve_cramer(&m, &rhs).map_err(|e| match e {
                AlgebraError::Singular => WeylError::SingularJacobian,
                other => other.into(),
            })?;
            numerators.push(f.iter().map(|c| c.num().clone()).collect());
            d.push(DiffOp::derivation(f));
        }
        let report = verify_operators(group, e, &d)?;
        Ok(WeylGenerators { group: group.clone(), e: e.to_vec(), jprime, numerators, d, report })
    }
}

/// Constructs the generators for a checked invariant system; fails if any
/// verification check fails.
pub fn build_weyl_generators(sys: &InvariantSystem) -> Result<WeylGenerators, WeylError> {
    let gens = WeylGenerators::from_invariants(&sys.group, &sys.e)?;
    if !gens.report.passed() {
        return Err(WeylError::VerificationFailed(Box::new(gens.report)));
    }
    Ok(gens)
}

pub fn verify_generators(gens: &WeylGenerators) -> Result<VerificationReport, WeylError> {
    verify_operators(&gens.group, &gens.e, &gens.d)
}

fn workers() -> usize {
    thread::available_parallelism().map(|n| n.get()).unwrap_or(1).min(8)
}

/// The four checks: `d_i(e_j) = delta_ij`; `w.d_i = d_i` for every element;
/// `[d_i, d_j] = 0`; `[d_i, e_j] = delta_ij`.
pub fn verify_operators(group: &MatrixGroup, e: &[MPoly], d: &[DiffOp]) -> Result<VerificationReport, WeylError> {
    let n = e.len();
    if d.len() != n || group.n() != n {
        return Err(AlgebraError::ArityMismatch { expected: n, found: d.len() }.into());
    }
    let delta = |i: usize, j: usize| RatFrac::from_poly(MPoly::from_int(n, (i == j) as i64));
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();

    let mut delta_cases = Vec::new();
    for &(i, j) in &pairs {
        delta_cases.push(([i + 1, j + 1], d[i].apply_poly(&e[j])? == delta(i, j)));
    }
    let delta_relations = CheckReport::run("delta_relations", delta_cases);

    let mut inverses = Vec::with_capacity(group.order());
    for w in group.elements() {
        inverses.push(linalg::inverse(w)?);
    }
    let elems: Vec<usize> = (0..group.order()).collect();
    let chunk = elems.len().div_ceil(workers()).max(1);
    let mut invariance_cases: Vec<([usize; 2], bool)> = thread::scope(|s| {
        let handles: Vec<_> = elems
            .chunks(chunk)
            .map(|ws| {
                let inverses = &inverses;
                s.spawn(move || {
                    let mut out = Vec::new();
                    for &w in ws {
                        for (i, op) in d.iter().enumerate() {
                            out.push(([i + 1, w], op.act_with(group.element(w), &inverses[w]) == *op));
                        }
                    }
                    out
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("invariance worker")).collect()
    });
    invariance_cases.sort_by_key(|(c, _)| (c[0], c[1]));
    let invariance = CheckReport::run("invariance", invariance_cases);

    let mut comm_cases = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            comm_cases.push(([i + 1, j + 1], d[i].commutator(&d[j])?.is_zero()));
        }
    }
    let pairwise_commutation = CheckReport::run("pairwise_commutation", comm_cases);

    let mut weyl_cases = Vec::new();
    for &(i, j) in &pairs {
        let ej = DiffOp::multiplication(RatFrac::from_poly(e[j].clone()));
        let expected = DiffOp::multiplication(delta(i, j));
        weyl_cases.push(([i + 1, j + 1], d[i].commutator(&ej)? == expected));
    }
    let weyl_relations = CheckReport::run("weyl_relations", weyl_cases);

    Ok(VerificationReport { delta_relations, invariance, pairwise_commutation, weyl_relations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Monomial;
    use crate::groups::Family;
    use crate::invariants::build_invariant_system;

    fn p(s: &str, n: usize) -> MPoly {
        MPoly::parse(s, n, 1).unwrap()
    }

    fn frac(num: &str, den: &str, n: usize) -> RatFrac {
        RatFrac::new(p(num, n), p(den, n)).unwrap()
    }

    fn system(f: Family) -> InvariantSystem {
        build_invariant_system(&f.build(1000).unwrap(), None).unwrap()
    }

    #[test]
    fn s2_generators() {
        let gens = build_weyl_generators(&system(Family::Symmetric { n: 2 })).unwrap();
        let d1 = DiffOp::derivation(vec![frac("x1", "x1 - x2", 2), frac("-x2", "x1 - x2", 2)]);
        let d2 = DiffOp::derivation(vec![frac("1", "x2 - x1", 2), frac("-1", "x2 - x1", 2)]);
        assert_eq!(gens.d, vec![d1, d2]);
        assert_eq!(gens.d[0].apply_poly(&p("x1*x2", 2)).unwrap(), RatFrac::zero(2));
        assert_eq!(gens.d[1].apply_poly(&p("x1*x2", 2)).unwrap(), RatFrac::one(2));
    }

    #[test]
    fn sign_group_generator() {
        let gens = build_weyl_generators(&system(Family::TypeB { n: 1 })).unwrap();
        assert_eq!(gens.d, vec![DiffOp::derivation(vec![frac("1", "2*x1", 1)])]);
        let x2 = DiffOp::multiplication(RatFrac::from_poly(p("x1^2", 1)));
        assert_eq!(gens.d[0].commutator(&x2).unwrap(), DiffOp::identity(1));
    }

    #[test]
    fn trivial_group_gives_partials() {
        let gens = build_weyl_generators(&system(Family::Trivial { n: 3 })).unwrap();
        for (k, d) in gens.d.iter().enumerate() {
            assert_eq!(*d, DiffOp::partial(3, k));
        }
        assert!(gens.report.passed());
    }

    #[test]
    fn s3_generators_match_the_printed_example() {
        let gens = build_weyl_generators(&system(Family::Symmetric { n: 3 })).unwrap();
        let j = "(x1 - x2)*(x2 - x3)*(x1 - x3)";
        let y = |a: &str, b: &str, c: &str| DiffOp::derivation(vec![frac(a, j, 3), frac(b, j, 3), frac(c, j, 3)]);
        let y1 = y("x1^2*(x2 - x3)", "x2^2*(x3 - x1)", "x3^2*(x1 - x2)");
        let y2 = y("x1*(x3 - x2)", "x2*(x1 - x3)", "x3*(x2 - x1)");
        let y3 = y("x2 - x3", "x3 - x1", "x1 - x2");
        assert_eq!(gens.d, vec![y1, y2, y3]);
    }

    #[test]
    fn perturbed_invariant_fails_with_witness() {
        let sys = system(Family::Symmetric { n: 3 });
        let gens = build_weyl_generators(&sys).unwrap();
        let mut e = sys.e.clone();
        e[0] = e[0].pow(2);
        let report = verify_operators(&sys.group, &e, &gens.d).unwrap();
        assert!(!report.delta_relations.passed);
        assert_eq!(report.delta_relations.witness, Some([1, 1]));
        assert!(!report.passed());
        assert!(build_invariant_system(&sys.group, Some(&e)).is_err());
    }

    #[test]
    fn singular_jacobian() {
        let g = Family::Symmetric { n: 2 }.build(10).unwrap();
        let e = [p("x1 + x2", 2), p("(x1 + x2)^2", 2)];
        assert_eq!(WeylGenerators::from_invariants(&g, &e).unwrap_err(), WeylError::SingularJacobian);
    }

    #[test]
    fn restriction_to_invariants() {
        let sys = system(Family::TypeB { n: 2 });
        let gens = build_weyl_generators(&sys).unwrap();
        // q(y1, y2) = y1^3 - 2 y1 y2 + y2^2
        let q = p("x1^3 - 2*x1*x2 + x2^2", 2);
        let inv = q.substitute(&sys.e).unwrap();
        for i in 0..2 {
            let expected = q.partial(i).substitute(&sys.e).unwrap();
            assert_eq!(gens.d[i].apply_poly(&inv).unwrap(), RatFrac::from_poly(expected));
        }
        assert_eq!(gens.d[0].order(), 1);
        assert!(gens.d[0].coeff(&Monomial::one(2)).is_none());
    }
}
