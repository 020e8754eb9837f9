//! Frame-indexed vectors and 3×3 tensors.
//!
//! The frame order is fixed as `(ξ, e₂, e₃)`; index 0 is always the
//! characteristic direction of the bundled models.

use std::array;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::error::Error;
use crate::scalar::{Defect, Scalar};

/// Tangent vector components in the frame.
#[derive(Debug, Clone, PartialEq)]
pub struct Vec3<S>(pub [S; 3]);

impl<S: Scalar> Vec3<S> {
    pub fn new(a: S, b: S, c: S) -> Self {
        Self([a, b, c])
    }

    pub fn zero() -> Self {
        Self(array::from_fn(|_| S::zero()))
    }

    /// The frame vector `e_{i+1}`.
    pub fn basis(i: usize) -> Self {
        Self(array::from_fn(
            |k| if k == i { S::one() } else { S::zero() },
        ))
    }

    pub fn from_ints(v: [i64; 3]) -> Self {
        Self(v.map(S::from_int))
    }

    pub fn scale(&self, s: &S) -> Self {
        Self(array::from_fn(|k| self.0[k].clone() * s.clone()))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero_scalar())
    }

    pub fn max_abs(&self) -> S {
        self.0.iter().fold(S::zero(), |m, x| {
            let a = x.abs();
            if a > m {
                a
            } else {
                m
            }
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = &S> {
        self.0.iter()
    }
}

impl<S> Index<usize> for Vec3<S> {
    type Output = S;
    fn index(&self, i: usize) -> &S {
        &self.0[i]
    }
}

impl<S> IndexMut<usize> for Vec3<S> {
    fn index_mut(&mut self, i: usize) -> &mut S {
        &mut self.0[i]
    }
}

impl<S: Scalar> Add for &Vec3<S> {
    type Output = Vec3<S>;
    fn add(self, rhs: Self) -> Vec3<S> {
        Vec3(array::from_fn(|k| self.0[k].clone() + rhs.0[k].clone()))
    }
}

impl<S: Scalar> Sub for &Vec3<S> {
    type Output = Vec3<S>;
    fn sub(self, rhs: Self) -> Vec3<S> {
        Vec3(array::from_fn(|k| self.0[k].clone() - rhs.0[k].clone()))
    }
}

impl<S: Scalar> Neg for &Vec3<S> {
    type Output = Vec3<S>;
    fn neg(self) -> Vec3<S> {
        Vec3(array::from_fn(|k| -self.0[k].clone()))
    }
}

/// One-form components, `η(e_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Covector<S>(pub [S; 3]);

impl<S: Scalar> Covector<S> {
    pub fn from_ints(v: [i64; 3]) -> Self {
        Self(v.map(S::from_int))
    }

    pub fn apply(&self, v: &Vec3<S>) -> S {
        (0..3).fold(S::zero(), |acc, k| acc + self.0[k].clone() * v.0[k].clone())
    }

    /// `self ∘ a`, i.e. the form `X ↦ self(aX)`.
    pub fn after(&self, a: &Endomorphism<S>) -> Covector<S> {
        Covector(array::from_fn(|c| {
            (0..3).fold(S::zero(), |acc, r| {
                acc + self.0[r].clone() * a.0[r][c].clone()
            })
        }))
    }
}

/// Dense 3×3 array shared by the (1,1) and (0,2) wrappers.
pub type Matrix3<S> = [[S; 3]; 3];

fn mat_from_fn<S>(f: impl Fn(usize, usize) -> S) -> Matrix3<S> {
    array::from_fn(|r| array::from_fn(|c| f(r, c)))
}

fn mat_mul<S: Scalar>(a: &Matrix3<S>, b: &Matrix3<S>) -> Matrix3<S> {
    mat_from_fn(|r, c| (0..3).fold(S::zero(), |acc, k| acc + a[r][k].clone() * b[k][c].clone()))
}

fn det3<S: Scalar>(m: &Matrix3<S>) -> S {
    let minor = |r0: usize, r1: usize, c0: usize, c1: usize| {
        m[r0][c0].clone() * m[r1][c1].clone() - m[r0][c1].clone() * m[r1][c0].clone()
    };
    m[0][0].clone() * minor(1, 2, 1, 2) - m[0][1].clone() * minor(1, 2, 0, 2)
        + m[0][2].clone() * minor(1, 2, 0, 1)
}

fn inverse3<S: Scalar>(m: &Matrix3<S>) -> Option<Matrix3<S>> {
    let det = det3(m);
    if det.is_zero_scalar() {
        return None;
    }
    // cofactor(r, c) with cyclic index trick; the adjugate is its transpose
    let cof = |r: usize, c: usize| {
        let (r1, r2) = ((r + 1) % 3, (r + 2) % 3);
        let (c1, c2) = ((c + 1) % 3, (c + 2) % 3);
        m[r1][c1].clone() * m[r2][c2].clone() - m[r1][c2].clone() * m[r2][c1].clone()
    };
    Some(mat_from_fn(|r, c| cof(c, r) / det.clone()))
}

/// A (1,1) tensor. Column `j` holds the image of `e_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct Endomorphism<S>(pub Matrix3<S>);

impl<S: Scalar> Endomorphism<S> {
    pub fn zero() -> Self {
        Self(mat_from_fn(|_, _| S::zero()))
    }

    pub fn identity() -> Self {
        Self(mat_from_fn(
            |r, c| if r == c { S::one() } else { S::zero() },
        ))
    }

    pub fn from_ints(m: [[i64; 3]; 3]) -> Self {
        Self(m.map(|row| row.map(S::from_int)))
    }

    pub fn from_fn(f: impl Fn(usize, usize) -> S) -> Self {
        Self(mat_from_fn(f))
    }

    /// Builds the operator from the images of the frame vectors.
    pub fn from_columns(cols: [Vec3<S>; 3]) -> Self {
        Self(mat_from_fn(|r, c| cols[c].0[r].clone()))
    }

    pub fn column(&self, j: usize) -> Vec3<S> {
        Vec3(array::from_fn(|r| self.0[r][j].clone()))
    }

    /// `X ↦ η(X) ξ`.
    pub fn tensor(form: &Covector<S>, v: &Vec3<S>) -> Self {
        Self(mat_from_fn(|r, c| v.0[r].clone() * form.0[c].clone()))
    }

    pub fn apply(&self, v: &Vec3<S>) -> Vec3<S> {
        Vec3(array::from_fn(|r| {
            (0..3).fold(S::zero(), |acc, c| {
                acc + self.0[r][c].clone() * v.0[c].clone()
            })
        }))
    }

    /// Composition `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self(mat_mul(&self.0, &other.0))
    }

    /// `self ∘ other − other ∘ self`.
    pub fn commutator(&self, other: &Self) -> Self {
        &self.compose(other) - &other.compose(self)
    }

    pub fn scale(&self, s: &S) -> Self {
        Self(mat_from_fn(|r, c| self.0[r][c].clone() * s.clone()))
    }

    pub fn square(&self) -> Self {
        self.compose(self)
    }

    pub fn trace(&self) -> S {
        trace(self)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(|x| x.is_zero_scalar())
    }

    pub fn max_abs(&self) -> S {
        self.0.iter().flatten().fold(S::zero(), |m, x| {
            let a = x.abs();
            if a > m {
                a
            } else {
                m
            }
        })
    }

    /// Entrywise comparison with another operator.
    pub fn defect(&self, other: &Self) -> Defect<S> {
        let mut d = Defect::new();
        for (a, b) in self.0.iter().flatten().zip(other.0.iter().flatten()) {
            d.push(a, b);
        }
        d
    }

    pub fn inverse(&self) -> Option<Self> {
        inverse3(&self.0).map(Self)
    }

    pub fn determinant(&self) -> S {
        det3(&self.0)
    }
}

impl<S: Scalar> Add for &Endomorphism<S> {
    type Output = Endomorphism<S>;
    fn add(self, rhs: Self) -> Endomorphism<S> {
        Endomorphism(mat_from_fn(|r, c| {
            self.0[r][c].clone() + rhs.0[r][c].clone()
        }))
    }
}

impl<S: Scalar> Sub for &Endomorphism<S> {
    type Output = Endomorphism<S>;
    fn sub(self, rhs: Self) -> Endomorphism<S> {
        Endomorphism(mat_from_fn(|r, c| {
            self.0[r][c].clone() - rhs.0[r][c].clone()
        }))
    }
}

impl<S: Scalar> Neg for &Endomorphism<S> {
    type Output = Endomorphism<S>;
    fn neg(self) -> Endomorphism<S> {
        Endomorphism(mat_from_fn(|r, c| -self.0[r][c].clone()))
    }
}

impl<S: Scalar> Mul for &Endomorphism<S> {
    type Output = Endomorphism<S>;
    fn mul(self, rhs: Self) -> Endomorphism<S> {
        self.compose(rhs)
    }
}

/// Sum of diagonal entries.
pub fn trace<S: Scalar>(a: &Endomorphism<S>) -> S {
    a.0[0][0].clone() + a.0[1][1].clone() + a.0[2][2].clone()
}

/// A (0,2) tensor, entry `(i, j) = B(e_i, e_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BilinearForm<S>(pub Matrix3<S>);

impl<S: Scalar> BilinearForm<S> {
    pub fn zero() -> Self {
        Self(mat_from_fn(|_, _| S::zero()))
    }

    pub fn from_ints(m: [[i64; 3]; 3]) -> Self {
        Self(m.map(|row| row.map(S::from_int)))
    }

    pub fn from_fn(f: impl Fn(usize, usize) -> S) -> Self {
        Self(mat_from_fn(f))
    }

    pub fn diagonal(d: [S; 3]) -> Self {
        Self(mat_from_fn(
            |r, c| if r == c { d[r].clone() } else { S::zero() },
        ))
    }

    pub fn eval(&self, x: &Vec3<S>, y: &Vec3<S>) -> S {
        let mut acc = S::zero();
        for i in 0..3 {
            for j in 0..3 {
                acc = acc + x.0[i].clone() * self.0[i][j].clone() * y.0[j].clone();
            }
        }
        acc
    }

    pub fn transpose(&self) -> Self {
        Self(mat_from_fn(|r, c| self.0[c][r].clone()))
    }

    pub fn is_symmetric(&self) -> bool {
        (0..3).all(|i| (0..3).all(|j| self.0[i][j].approx_eq(&self.0[j][i])))
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..3)
            .all(|i| (0..3).all(|j| (self.0[i][j].clone() + self.0[j][i].clone()).is_zero_scalar()))
    }

    pub fn determinant(&self) -> S {
        det3(&self.0)
    }

    /// Components of the inverse form `g^{ij}`.
    pub fn inverse(&self) -> Result<BilinearForm<S>, Error> {
        inverse3(&self.0).map(Self).ok_or(Error::SingularMetric)
    }

    /// Lowers the output slot of an operator: `(X, Y) ↦ B(AX, Y)`.
    pub fn lower(&self, a: &Endomorphism<S>) -> BilinearForm<S> {
        // (A^T B)_{xy} = Σ_r A_{rx} B_{ry}
        Self(mat_from_fn(|x, y| {
            (0..3).fold(S::zero(), |acc, r| {
                acc + a.0[r][x].clone() * self.0[r][y].clone()
            })
        }))
    }

    /// Raises the first slot with `inverse`: returns the operator `A` with `B(X,Y) = g(AX,Y)`.
    pub fn raise(&self, inverse_metric: &BilinearForm<S>) -> Endomorphism<S> {
        // A^k_x = g^{k r} B_{x r}
        Endomorphism(mat_from_fn(|k, x| {
            (0..3).fold(S::zero(), |acc, r| {
                acc + inverse_metric.0[k][r].clone() * self.0[x][r].clone()
            })
        }))
    }

    /// The metric index `g(e, e)` of a vector; `±1` on unit frame legs.
    pub fn norm_sq(&self, x: &Vec3<S>) -> S {
        self.eval(x, x)
    }

    /// Pulls back along a change of frame: `B'(X, Y) = B(PX, PY)`.
    pub fn pull_back(&self, p: &Endomorphism<S>) -> Self {
        Self(mat_from_fn(|i, j| self.eval(&p.column(i), &p.column(j))))
    }

    /// `η(X) = B(X, v)` as a form.
    pub fn flat(&self, v: &Vec3<S>) -> Covector<S> {
        Covector(array::from_fn(|x| {
            (0..3).fold(S::zero(), |acc, r| {
                acc + self.0[x][r].clone() * v.0[r].clone()
            })
        }))
    }

    /// Numbers of positive and negative eigenvalues, `None` when singular.
    ///
    /// The characteristic polynomial of a symmetric matrix is real-rooted, so
    /// Descartes' rule of signs counts the positive roots exactly.
    pub fn signature(&self) -> Option<(usize, usize)> {
        let m = &self.0;
        let c1 = m[0][0].clone() + m[1][1].clone() + m[2][2].clone();
        let pm = |a: usize, b: usize| {
            m[a][a].clone() * m[b][b].clone() - m[a][b].clone() * m[b][a].clone()
        };
        let c2 = pm(0, 1) + pm(0, 2) + pm(1, 2);
        let c3 = det3(m);
        if c3.is_zero_scalar() {
            return None;
        }
        // t^3 - c1 t^2 + c2 t - c3
        let coeffs = [S::one(), -c1, c2, -c3];
        let signs: Vec<bool> = coeffs
            .iter()
            .filter(|c| !c.is_zero_scalar())
            .map(|c| *c > S::zero())
            .collect();
        let positive = signs.windows(2).filter(|w| w[0] != w[1]).count();
        Some((positive, 3 - positive))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Exact;

    type E = Endomorphism<Exact>;

    fn q(n: i64, d: i64) -> Exact {
        Exact::from_ratio(n, d)
    }

    #[test]
    fn trace_of_identity_is_three() {
        assert_eq!(trace(&E::identity()), q(3, 1));
    }

    #[test]
    fn inverse_round_trips() {
        let a = E::from_ints([[2, 1, 0], [0, 1, -1], [1, 0, 3]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.compose(&inv), E::identity());
        assert!(E::from_ints([[1, 2, 3], [2, 4, 6], [0, 0, 1]])
            .inverse()
            .is_none());
    }

    #[test]
    fn signature_counts() {
        let g = BilinearForm::<Exact>::from_ints([[1, 0, 0], [0, 1, 0], [0, 0, -1]]);
        assert_eq!(g.signature(), Some((2, 1)));
        let g = BilinearForm::<Exact>::from_ints([[1, 0, 0], [0, -1, 0], [0, 0, -1]]);
        assert_eq!(g.signature(), Some((1, 2)));
        let g = BilinearForm::<Exact>::from_ints([[0, 1, 0], [1, 0, 0], [0, 0, 1]]);
        assert_eq!(g.signature(), Some((2, 1)));
        let g = BilinearForm::<Exact>::from_ints([[1, 0, 0], [0, 0, 0], [0, 0, -1]]);
        assert_eq!(g.signature(), None);
        let g = BilinearForm::<Exact>::from_ints([[2, 1, 0], [1, 2, 0], [0, 0, 5]]);
        assert_eq!(g.signature(), Some((3, 0)));
    }

    #[test]
    fn lower_and_raise_are_inverse() {
        let g = BilinearForm::<Exact>::from_ints([[1, 0, 0], [0, 2, 1], [0, 1, -1]]);
        let gi = g.inverse().unwrap();
        let a = E::from_ints([[1, 2, 0], [0, -1, 3], [4, 0, 1]]);
        assert_eq!(g.lower(&a).raise(&gi), a);
        let x = Vec3::from_ints([1, -2, 3]);
        let y = Vec3::from_ints([0, 5, 1]);
        assert_eq!(g.lower(&a).eval(&x, &y), g.eval(&a.apply(&x), &y));
    }

    #[test]
    fn covector_tensor_products() {
        let eta = Covector::<Exact>::from_ints([1, 0, 0]);
        let xi = Vec3::<Exact>::basis(0);
        let p = E::tensor(&eta, &xi);
        assert_eq!(
            p.apply(&Vec3::from_ints([3, 4, 5])),
            Vec3::from_ints([3, 0, 0])
        );
        assert_eq!(p.square(), p);
        assert_eq!(q(1, 1), eta.apply(&xi));
    }
}
