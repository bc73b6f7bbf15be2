//! Built-in reflection group families.

use serde::{Deserialize, Serialize};

use crate::algebra::linalg::FieldMatrix;
use crate::algebra::{CycNum, Matrix};

use super::{group_closure, GroupError, MatrixGroup};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum Family {
    /// Permutation matrices, type A_{n-1}.
    Symmetric { n: usize },
    /// Signed permutation matrices.
    TypeB { n: usize },
    /// Signed permutation matrices with an even number of sign changes.
    TypeD { n: usize },
    /// G(m,1,n): permutation matrices times diagonal m-th roots of unity.
    Imprimitive { m: u32, n: usize },
    /// The cyclic group generated by diag(z_m, 1, ..., 1).
    CyclicDiagonal { m: u32, n: usize },
    Trivial { n: usize },
}

/// Summary line for `list-families`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyInfo {
    pub key: &'static str,
    pub description: &'static str,
    pub bounds: &'static str,
}

impl Family {
    pub fn catalog() -> Vec<FamilyInfo> {
        vec![
            FamilyInfo { key: "Sn", description: "symmetric group, permutation matrices", bounds: "1 <= rank <= 6" },
            FamilyInfo { key: "Bn", description: "hyperoctahedral group, signed permutations", bounds: "1 <= rank <= 4" },
            FamilyInfo { key: "Dn", description: "even signed permutations", bounds: "2 <= rank <= 4" },
            FamilyInfo {
                key: "G",
                description: "G(m,1,n), monomial matrices with m-th roots of unity",
                bounds: "2 <= m <= 4, 1 <= rank <= 3",
            },
            FamilyInfo { key: "cyclic", description: "cyclic group <diag(z_m,1,...,1)>", bounds: "2 <= m <= 12, 1 <= rank <= 6" },
            FamilyInfo { key: "trivial", description: "trivial group", bounds: "1 <= rank <= 6" },
        ]
    }

    /// Parses a family key as used on the command line.
    pub fn parse(name: &str, rank: usize, m: Option<u32>) -> Result<Family, GroupError> {
        let need_m = || m.ok_or_else(|| GroupError::FamilyBounds(format!("family `{name}` needs the parameter m")));
        Ok(match name.to_ascii_lowercase().as_str() {
            "s" | "sn" | "symmetric" => Family::Symmetric { n: rank },
            "b" | "bn" | "typeb" => Family::TypeB { n: rank },
            "d" | "dn" | "typed" => Family::TypeD { n: rank },
            "g" | "gm1n" | "imprimitive" => Family::Imprimitive { m: need_m()?, n: rank },
            "cyclic" | "c" | "cyclic_diagonal" => Family::CyclicDiagonal { m: need_m()?, n: rank },
            "trivial" | "1" => Family::Trivial { n: rank },
            _ => return Err(GroupError::UnsupportedFamily(name.to_string())),
        })
    }

    /// Checks the shipped parameter ranges; `allow_large` only enforces sanity.
    pub fn check_bounds(&self, allow_large: bool) -> Result<(), GroupError> {
        let (n, lo, hi, m_range) = match *self {
            Family::Symmetric { n } => (n, 1, 6, None),
            Family::TypeB { n } => (n, 1, 4, None),
            Family::TypeD { n } => (n, 2, 4, None),
            Family::Imprimitive { m, n } => (n, 1, 3, Some((m, 2, 4))),
            Family::CyclicDiagonal { m, n } => (n, 1, 6, Some((m, 2, 12))),
            Family::Trivial { n } => (n, 1, 6, None),
        };
        let lo_hard = lo.max(1);
        if n < lo_hard || (!allow_large && n > hi) {
            return Err(GroupError::FamilyBounds(format!("{}: rank {n} outside {lo}..={hi}", self.label())));
        }
        if let Some((m, mlo, mhi)) = m_range {
            if m < mlo || m > crate::algebra::cyclotomic::MAX_CONDUCTOR || (!allow_large && m > mhi) {
                return Err(GroupError::FamilyBounds(format!("{}: m = {m} outside {mlo}..={mhi}", self.label())));
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        match *self {
            Family::Symmetric { n }
            | Family::TypeB { n }
            | Family::TypeD { n }
            | Family::Imprimitive { n, .. }
            | Family::CyclicDiagonal { n, .. }
            | Family::Trivial { n } => n,
        }
    }

    pub fn conductor(&self) -> u32 {
        match *self {
            Family::Imprimitive { m, .. } | Family::CyclicDiagonal { m, .. } => m,
            _ => 1,
        }
    }

    pub fn label(&self) -> String {
        match *self {
            Family::Symmetric { n } => format!("S{n}"),
            Family::TypeB { n } => format!("B{n}"),
            Family::TypeD { n } => format!("D{n}"),
            Family::Imprimitive { m, n } => format!("G({m},1,{n})"),
            Family::CyclicDiagonal { m, n } => format!("C{m}[{n}]"),
            Family::Trivial { n } => format!("1[{n}]"),
        }
    }

    pub fn expected_order(&self) -> usize {
        let fact = |n: usize| (1..=n).product::<usize>();
        match *self {
            Family::Symmetric { n } => fact(n),
            Family::TypeB { n } => (1 << n) * fact(n),
            Family::TypeD { n } => (1 << (n - 1)) * fact(n),
            Family::Imprimitive { m, n } => (m as usize).pow(n as u32) * fact(n),
            Family::CyclicDiagonal { m, .. } => m as usize,
            Family::Trivial { .. } => 1,
        }
    }

    pub fn generators(&self) -> Vec<FieldMatrix> {
        let n = self.rank();
        let c = self.conductor();
        let one = CycNum::one(c);
        let zero = CycNum::zero(c);
        let transposition = |a: usize| {
            Matrix::from_fn(n, n, |i, j| {
                let src = if i == a { a + 1 } else if i == a + 1 { a } else { i };
                if j == src {
                    one.clone()
                } else {
                    zero.clone()
                }
            })
        };
        let diag_first = |d: CycNum| {
            Matrix::from_fn(n, n, |i, j| match (i == j, i) {
                (true, 0) => d.clone(),
                (true, _) => one.clone(),
                _ => zero.clone(),
            })
        };
        let transpositions = || (0..n.saturating_sub(1)).map(transposition).collect::<Vec<_>>();
        let mut gens = match *self {
            Family::Symmetric { .. } => transpositions(),
            Family::TypeB { .. } => {
                let mut g = transpositions();
                g.push(diag_first(CycNum::from_int(c, -1)));
                g
            }
            Family::TypeD { .. } => {
                let mut g = transpositions();
                // (x1, x2) -> (-x2, -x1)
                g.push(Matrix::from_fn(n, n, |i, j| match (i, j) {
                    (0, 1) | (1, 0) => CycNum::from_int(c, -1),
                    _ if i == j && i >= 2 => one.clone(),
                    _ => zero.clone(),
                }));
                g
            }
            Family::Imprimitive { m, .. } => {
                let mut g = transpositions();
                g.push(diag_first(CycNum::zeta(m)));
                g
            }
            Family::CyclicDiagonal { m, .. } => vec![diag_first(CycNum::zeta(m))],
            Family::Trivial { .. } => vec![],
        };
        if gens.is_empty() {
            gens.push(Matrix::identity_like(n, &one));
        }
        gens
    }

    pub fn build(&self, bound: usize) -> Result<MatrixGroup, GroupError> {
        let g = group_closure(&self.generators(), self.rank(), self.conductor(), bound)?;
        Ok(g.with_family(self.clone()))
    }

    /// The instances exercised by the full verification suite.
    pub fn standard_suite() -> Vec<Family> {
        vec![
            Family::Symmetric { n: 2 },
            Family::Symmetric { n: 3 },
            Family::Symmetric { n: 4 },
            Family::TypeB { n: 2 },
            Family::TypeB { n: 3 },
            Family::TypeD { n: 2 },
            Family::TypeD { n: 3 },
            Family::Imprimitive { m: 2, n: 2 },
            Family::Imprimitive { m: 3, n: 2 },
            Family::Imprimitive { m: 4, n: 2 },
            Family::CyclicDiagonal { m: 2, n: 1 },
            Family::CyclicDiagonal { m: 3, n: 1 },
            Family::CyclicDiagonal { m: 4, n: 1 },
            Family::CyclicDiagonal { m: 2, n: 2 },
            Family::CyclicDiagonal { m: 3, n: 2 },
            Family::CyclicDiagonal { m: 4, n: 2 },
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_match_closed_forms() {
        let mut fams = Family::standard_suite();
        fams.extend([Family::Trivial { n: 3 }, Family::Symmetric { n: 1 }, Family::TypeB { n: 1 }, Family::TypeD { n: 4 }]);
        for f in fams {
            let g = f.build(10_000).unwrap();
            assert_eq!(g.order(), f.expected_order(), "{}", f.label());
        }
    }

    #[test]
    fn parsing_and_bounds() {
        assert_eq!(Family::parse("Sn", 3, None).unwrap(), Family::Symmetric { n: 3 });
        assert_eq!(Family::parse("G", 2, Some(3)).unwrap(), Family::Imprimitive { m: 3, n: 2 });
        assert!(Family::parse("G", 2, None).is_err());
        assert!(matches!(Family::parse("E8", 8, None), Err(GroupError::UnsupportedFamily(_))));
        assert!(Family::Symmetric { n: 7 }.check_bounds(false).is_err());
        assert!(Family::Symmetric { n: 7 }.check_bounds(true).is_ok());
        assert!(Family::TypeD { n: 1 }.check_bounds(true).is_err());
        assert!(Family::Imprimitive { m: 5, n: 2 }.check_bounds(false).is_err());
    }
}
