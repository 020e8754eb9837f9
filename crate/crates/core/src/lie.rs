//! Three-dimensional Lie algebras given by structure constants.

use std::array;

use crate::linalg::Vec3;
use crate::scalar::Scalar;

/// `[e_i, e_j] = Σ_k c^k_ij e_k`, stored for the pairs `(0,1)`, `(0,2)`, `(1,2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureConstants<S> {
    pairs: [Vec3<S>; 3],
}

fn pair_slot(i: usize, j: usize) -> usize {
    match (i, j) {
        (0, 1) => 0,
        (0, 2) => 1,
        (1, 2) => 2,
        _ => unreachable!("pair ({i},{j}) is not ordered"),
    }
}

/// The ordered index pairs, in storage order.
pub const PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

impl<S: Scalar> StructureConstants<S> {
    pub fn abelian() -> Self {
        Self {
            pairs: array::from_fn(|_| Vec3::zero()),
        }
    }

    /// From `[e₁,e₂]`, `[e₁,e₃]`, `[e₂,e₃]`.
    pub fn new(b01: Vec3<S>, b02: Vec3<S>, b12: Vec3<S>) -> Self {
        Self {
            pairs: [b01, b02, b12],
        }
    }

    /// Sets `[e_i, e_j]` for `i < j`.
    pub fn with(mut self, i: usize, j: usize, v: Vec3<S>) -> Self {
        assert!(i < j && j < 3, "bracket indices must satisfy i < j < 3");
        self.pairs[pair_slot(i, j)] = v;
        self
    }

    /// `[e_i, e_j]` for any pair.
    pub fn basis_bracket(&self, i: usize, j: usize) -> Vec3<S> {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => Vec3::zero(),
            Less => self.pairs[pair_slot(i, j)].clone(),
            Greater => -&self.pairs[pair_slot(j, i)],
        }
    }

    /// `c^k_ij`.
    pub fn coefficient(&self, i: usize, j: usize, k: usize) -> S {
        self.basis_bracket(i, j).0[k].clone()
    }

    pub fn stored(&self) -> &[Vec3<S>; 3] {
        &self.pairs
    }
}

/// Bilinear extension of the structure constants.
pub fn bracket<S: Scalar>(sc: &StructureConstants<S>, x: &Vec3<S>, y: &Vec3<S>) -> Vec3<S> {
    let mut out = Vec3::zero();
    for (i, j) in PAIRS {
        // X_i Y_j - X_j Y_i multiplies [e_i, e_j]
        let w = x.0[i].clone() * y.0[j].clone() - x.0[j].clone() * y.0[i].clone();
        if w.is_zero() {
            continue;
        }
        out = &out + &sc.pairs[pair_slot(i, j)].scale(&w);
    }
    out
}

/// Max-norm of `[e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]]`.
///
/// In dimension 3 every cyclic sum with a repeated index vanishes by
/// antisymmetry, so only `(0,1,2)` is evaluated.
pub fn jacobi_defect<S: Scalar>(sc: &StructureConstants<S>) -> S {
    let e: [Vec3<S>; 3] = array::from_fn(Vec3::basis);
    let cyc = |i: usize, j: usize, k: usize| bracket(sc, &e[i], &bracket(sc, &e[j], &e[k]));
    let sum = &(&cyc(0, 1, 2) + &cyc(1, 2, 0)) + &cyc(2, 0, 1);
    sum.max_abs()
}
