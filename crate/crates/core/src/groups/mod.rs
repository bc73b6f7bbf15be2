//! Finite matrix groups over a cyclotomic field.
//!
//! Action convention: a group element `w` acts on polynomial functions by
//! `(w.p)(x) = p(w^{-1} x)`, i.e. by the substitution
//! `x_i -> sum_j (w^{-1})_{ij} x_j`. This is a left action.

mod decompose;
mod families;
mod reflection;
pub mod spec;

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

use crate::algebra::linalg::{self, FieldMatrix};
use crate::algebra::{AlgebraError, CycNum, MPoly, Matrix, Rat};

pub use decompose::{decompose, DecompositionCheck, Factor, GroupDecomposition};
pub use families::{Family, FamilyInfo};
pub use reflection::{
    build_reflection, classify_reflections, commuting_criterion, invariant_subspace_check, Reflection,
    SubspaceVerdict,
};

pub const DEFAULT_CLOSURE_BOUND: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("generator not invertible (generator {index})")]
    NotInvertible { index: usize },
    #[error("generator {index} is not a {n}x{n} matrix")]
    WrongDimension { index: usize, n: usize },
    #[error("group closure exceeds {bound} elements (not finite or too large)")]
    ClosureOverflow { bound: usize },
    #[error("root lies in the reflecting hyperplane (L(a) = 0)")]
    RootInHyperplane,
    #[error("eigenvalue must be a root of unity different from 1")]
    InvalidEigenvalue,
    #[error("group of order {order} is not generated by its pseudo-reflections (they generate {generated})")]
    NotGeneratedByReflections { order: usize, generated: usize },
    #[error("unsupported family `{0}`")]
    UnsupportedFamily(String),
    #[error("family parameters out of range: {0}")]
    FamilyBounds(String),
    #[error("matrix does not preserve the integer lattice")]
    NotLattice,
}

#[derive(Clone, Debug)]
pub struct MatrixGroup {
    n: usize,
    conductor: u32,
    generators: Vec<FieldMatrix>,
    elements: Vec<FieldMatrix>,
    inverses: Vec<usize>,
    family: Option<Family>,
}

type ElementKey = Vec<Rat>;

fn element_key(m: &FieldMatrix, conductor: u32) -> ElementKey {
    m.entries()
        .iter()
        .flat_map(|e| e.lift(conductor).expect("entry lies in the group field").coeffs().to_vec())
        .collect()
}

/// Enumerates the group generated by `generators` by breadth-first closure.
pub fn group_closure(
    generators: &[FieldMatrix],
    n: usize,
    conductor: u32,
    bound: usize,
) -> Result<MatrixGroup, GroupError> {
    let mut gens = Vec::with_capacity(generators.len());
    for (index, g) in generators.iter().enumerate() {
        if g.nrows() != n || g.ncols() != n {
            return Err(GroupError::WrongDimension { index, n });
        }
        let mut entries = Vec::with_capacity(n * n);
        for e in g.entries() {
            entries.push(e.lift(conductor)?);
        }
        let lifted = Matrix::from_fn(n, n, |i, j| entries[i * n + j].clone());
        if lifted.det()?.is_zero() {
            return Err(GroupError::NotInvertible { index });
        }
        gens.push(lifted);
    }

    let identity = Matrix::identity_like(n, &CycNum::one(conductor));
    let mut elements = vec![identity.clone()];
    let mut index: HashMap<ElementKey, usize> = HashMap::new();
    index.insert(element_key(&identity, conductor), 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in &gens {
            let y = elements[i].checked_mul(g)?;
            let key = element_key(&y, conductor);
            if let std::collections::hash_map::Entry::Vacant(e) = index.entry(key) {
                if elements.len() >= bound {
                    return Err(GroupError::ClosureOverflow { bound });
                }
                e.insert(elements.len());
                queue.push_back(elements.len());
                elements.push(y);
            }
        }
    }

    let mut inverses = Vec::with_capacity(elements.len());
    for e in &elements {
        let inv = linalg::inverse(e)?;
        inverses.push(index[&element_key(&inv, conductor)]);
    }

    Ok(MatrixGroup { n, conductor, generators: gens, elements, inverses, family: None })
}

impl MatrixGroup {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[FieldMatrix] {
        &self.generators
    }

    pub fn elements(&self) -> &[FieldMatrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &FieldMatrix {
        &self.elements[i]
    }

    pub fn inverse_index(&self, i: usize) -> usize {
        self.inverses[i]
    }

    pub fn family(&self) -> Option<&Family> {
        self.family.as_ref()
    }

    pub fn with_family(mut self, family: Family) -> Self {
        self.family = Some(family);
        self
    }

    pub fn identity(&self) -> FieldMatrix {
        Matrix::identity_like(self.n, &CycNum::one(self.conductor))
    }

    pub fn index_of(&self, m: &FieldMatrix) -> Option<usize> {
        self.elements.iter().position(|e| e == m)
    }

    pub fn contains(&self, m: &FieldMatrix) -> bool {
        self.index_of(m).is_some()
    }

    /// `elements[i] . p`, using the stored inverse.
    pub fn act(&self, i: usize, p: &MPoly) -> MPoly {
        act_with_inverse(&self.elements[self.inverses[i]], p)
    }

    /// Block-diagonal direct product acting on the direct sum of the spaces.
    pub fn direct_product(&self, other: &MatrixGroup, bound: usize) -> Result<MatrixGroup, GroupError> {
        let n = self.n + other.n;
        let m = num_integer::lcm(self.conductor, other.conductor);
        let block = |g: &FieldMatrix, offset: usize, size: usize| {
            Matrix::from_fn(n, n, |i, j| {
                if i >= offset && i < offset + size && j >= offset && j < offset + size {
                    g.get(i - offset, j - offset).clone()
                } else if i == j {
                    CycNum::one(m)
                } else {
                    CycNum::zero(m)
                }
            })
        };
        let mut gens: Vec<FieldMatrix> = self.generators.iter().map(|g| block(g, 0, self.n)).collect();
        gens.extend(other.generators.iter().map(|g| block(g, self.n, other.n)));
        group_closure(&gens, n, m, bound)
    }

    /// Closure of the pairwise products: `x y` and `x^{-1}` stay in the group.
    pub fn is_closed(&self) -> bool {
        let keys: HashMap<ElementKey, usize> =
            self.elements.iter().enumerate().map(|(i, e)| (element_key(e, self.conductor), i)).collect();
        self.elements.iter().all(|x| {
            self.elements.iter().all(|y| {
                x.checked_mul(y).map(|p| keys.contains_key(&element_key(&p, self.conductor))).unwrap_or(false)
            })
        }) && self.inverses.iter().enumerate().all(|(i, &j)| {
            self.elements[i].checked_mul(&self.elements[j]).map(|p| p == self.identity()).unwrap_or(false)
        })
    }

    /// Multiplicative order of `elements[i]`.
    pub fn element_order(&self, i: usize) -> usize {
        let id = self.identity();
        let g = &self.elements[i];
        let mut acc = g.clone();
        let mut k = 1;
        while acc != id {
            acc = acc.checked_mul(g).expect("square");
            k += 1;
        }
        k
    }
}

fn act_with_inverse(winv: &FieldMatrix, p: &MPoly) -> MPoly {
    let n = winv.nrows();
    let images: Vec<MPoly> = (0..n)
        .map(|i| {
            let mut img = MPoly::zero(n);
            for j in 0..n {
                let c = winv.get(i, j);
                if !c.is_zero() {
                    img = &img + &MPoly::var(n, j).scale(c);
                }
            }
            img
        })
        .collect();
    p.substitute(&images).expect("matching arity")
}

/// `(w.p)(x) = p(w^{-1} x)`.
pub fn act_on_poly(w: &FieldMatrix, p: &MPoly) -> Result<MPoly, GroupError> {
    if !w.is_square() || w.nrows() != p.nvars() {
        return Err(AlgebraError::ArityMismatch { expected: p.nvars(), found: w.nrows() }.into());
    }
    let winv = linalg::inverse(w)?;
    Ok(act_with_inverse(&winv, p))
}

/// Averaging projection `(1/|W|) sum_w w.p`.
pub fn reynolds(g: &MatrixGroup, p: &MPoly) -> MPoly {
    let mut acc = MPoly::zero(p.nvars());
    for i in 0..g.order() {
        acc = &acc + &g.act(i, p);
    }
    acc.scale_rat(&Rat::new(1.into(), (g.order() as i64).into()))
}

/// Whether `p` is fixed by every element of `g`.
pub fn is_invariant(g: &MatrixGroup, p: &MPoly) -> bool {
    (0..g.order()).all(|i| g.act(i, p) == *p)
}
