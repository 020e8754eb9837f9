//! Levi-Civita connection and curvature of a left-invariant metric.
//!
//! All tensor components are constant in the frame, so every covariant
//! derivative reduces to the action of the connection matrices.
//!
//! Conventions:
//! - `R(X,Y)Z = ∇_X∇_Y Z − ∇_Y∇_X Z − ∇_[X,Y] Z`
//! - `Ric(X,Y) = tr(Z ↦ R(Z,X)Y)`, `g(QX,Y) = Ric(X,Y)`
//!
//! With these choices `tr l = g(Qξ,ξ) = −2 + tr h²` holds on every
//! paracontact model; the opposite curvature sign flips `tr l`.

use std::array;

use crate::error::{Error, Result};
use crate::lie::{jacobi_defect, StructureConstants};
use crate::linalg::{BilinearForm, Endomorphism, Vec3};
use crate::scalar::{Defect, Scalar};
use crate::tensor::{DenseTensor, Slot};

/// `∇_{e_i} e_j = Σ_k Γ^k_ij e_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Connection<S> {
    /// `matrices[i]` has column `j` equal to `∇_{e_i} e_j`.
    matrices: [Endomorphism<S>; 3],
}

impl<S: Scalar> Connection<S> {
    pub fn from_matrices(matrices: [Endomorphism<S>; 3]) -> Self {
        Self { matrices }
    }

    /// The operator `Y ↦ ∇_{e_i} Y` on frame-constant fields.
    pub fn matrix(&self, i: usize) -> &Endomorphism<S> {
        &self.matrices[i]
    }

    /// `Γ^k_ij`.
    pub fn christoffel(&self, i: usize, j: usize, k: usize) -> &S {
        &self.matrices[i].0[k][j]
    }

    /// The operator `Y ↦ ∇_X Y` for a constant direction `X`.
    pub fn along(&self, x: &Vec3<S>) -> Endomorphism<S> {
        (0..3).fold(Endomorphism::zero(), |acc, i| {
            &acc + &self.matrices[i].scale(&x.0[i])
        })
    }

    /// `∇_X Y` for frame-constant `X`, `Y`.
    pub fn nabla(&self, x: &Vec3<S>, y: &Vec3<S>) -> Vec3<S> {
        self.along(x).apply(y)
    }

    pub fn is_zero(&self) -> bool {
        self.matrices.iter().all(Endomorphism::is_zero)
    }
}

/// `R(e_i, e_j) e_k`, stored as vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureTensor<S> {
    values: [[[Vec3<S>; 3]; 3]; 3],
}

impl<S: Scalar> CurvatureTensor<S> {
    pub fn from_fn(f: impl Fn(usize, usize, usize) -> Vec3<S>) -> Self {
        Self {
            values: array::from_fn(|i| array::from_fn(|j| array::from_fn(|k| f(i, j, k)))),
        }
    }

    pub fn zero() -> Self {
        Self::from_fn(|_, _, _| Vec3::zero())
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Vec3<S> {
        &self.values[i][j][k]
    }

    /// `R^l_ijk`.
    pub fn component(&self, l: usize, i: usize, j: usize, k: usize) -> &S {
        &self.values[i][j][k].0[l]
    }

    /// Trilinear extension, `R(X,Y)Z`.
    pub fn apply(&self, x: &Vec3<S>, y: &Vec3<S>, z: &Vec3<S>) -> Vec3<S> {
        let mut out = Vec3::zero();
        for i in 0..3 {
            if x.0[i].is_zero() {
                continue;
            }
            for j in 0..3 {
                if y.0[j].is_zero() {
                    continue;
                }
                for k in 0..3 {
                    if z.0[k].is_zero() {
                        continue;
                    }
                    let w = x.0[i].clone() * y.0[j].clone() * z.0[k].clone();
                    out = &out + &self.values[i][j][k].scale(&w);
                }
            }
        }
        out
    }

    /// `R(X,Y,Z,W) = g(R(X,Y)Z, W)`.
    pub fn lowered(
        &self,
        g: &BilinearForm<S>,
        x: &Vec3<S>,
        y: &Vec3<S>,
        z: &Vec3<S>,
        w: &Vec3<S>,
    ) -> S {
        g.eval(&self.apply(x, y, z), w)
    }

    pub fn is_zero(&self) -> bool {
        self.entries().all(|v| v.is_zero())
    }

    fn entries(&self) -> impl Iterator<Item = &Vec3<S>> {
        self.values.iter().flatten().flatten()
    }

    /// Entrywise comparison over all 81 components.
    pub fn defect(&self, other: &Self) -> Defect<S> {
        let mut d = Defect::new();
        for (a, b) in self.entries().zip(other.entries()) {
            for l in 0..3 {
                d.push(&a.0[l], &b.0[l]);
            }
        }
        d
    }

    /// Residuals of `(i,j)`-antisymmetry, pair symmetry of the lowered
    /// tensor and the first Bianchi identity, in that order.
    #[allow(clippy::needless_range_loop)]
    pub fn symmetry_defects(&self, g: &BilinearForm<S>) -> [Defect<S>; 3] {
        let lowered: [[[[S; 3]; 3]; 3]; 3] = array::from_fn(|i| {
            array::from_fn(|j| {
                array::from_fn(|k| {
                    array::from_fn(|l| g.eval(&self.values[i][j][k], &Vec3::basis(l)))
                })
            })
        });
        let mut anti = Defect::new();
        let mut pair = Defect::new();
        let mut bianchi = Defect::new();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        anti.push(&lowered[i][j][k][l], &-lowered[j][i][k][l].clone());
                        pair.push(&lowered[i][j][k][l], &lowered[k][l][i][j]);
                    }
                    let cyc =
                        &(&self.values[i][j][k] + &self.values[j][k][i]) + &self.values[k][i][j];
                    for l in 0..3 {
                        bianchi.push_zero(&cyc.0[l]);
                    }
                }
            }
        }
        [anti, pair, bianchi]
    }
}

/// Ricci operator with its two traces of interest.
#[derive(Debug, Clone, PartialEq)]
pub struct RicciData<S> {
    /// Ricci operator `Q`.
    pub q: Endomorphism<S>,
    pub scal: S,
    /// `g(Qξ, ξ)`.
    pub trl: S,
}

/// Koszul formula for a frame-constant metric:
/// `2g(∇_X Y, Z) = g([X,Y],Z) − g([Y,Z],X) + g([Z,X],Y)`.
pub fn levi_civita<S: Scalar>(
    sc: &StructureConstants<S>,
    g: &BilinearForm<S>,
) -> Result<Connection<S>> {
    let defect = jacobi_defect(sc);
    if !defect.is_zero_scalar() {
        return Err(Error::NotLieAlgebra(defect.to_string()));
    }
    let gi = g.inverse()?;
    let e: [Vec3<S>; 3] = array::from_fn(Vec3::basis);
    let matrices = array::from_fn(|i| {
        Endomorphism::from_columns(array::from_fn(|j| {
            let lowered: [S; 3] = array::from_fn(|k| {
                (g.eval(&sc.basis_bracket(i, j), &e[k]) - g.eval(&sc.basis_bracket(j, k), &e[i])
                    + g.eval(&sc.basis_bracket(k, i), &e[j]))
                .half()
            });
            Vec3(array::from_fn(|m| {
                (0..3).fold(S::zero(), |acc, k| {
                    acc + gi.0[m][k].clone() * lowered[k].clone()
                })
            }))
        }))
    });
    Ok(Connection { matrices })
}

/// Residuals of metric compatibility and torsion-freeness.
pub fn connection_defects<S: Scalar>(
    conn: &Connection<S>,
    sc: &StructureConstants<S>,
    g: &BilinearForm<S>,
) -> (Defect<S>, Defect<S>) {
    let e: [Vec3<S>; 3] = array::from_fn(Vec3::basis);
    let mut metric = Defect::new();
    let mut torsion = Defect::new();
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                let a = g.eval(&conn.nabla(&e[i], &e[j]), &e[k]);
                let b = g.eval(&e[j], &conn.nabla(&e[i], &e[k]));
                metric.push(&a, &-b);
            }
            let t =
                &(&conn.nabla(&e[i], &e[j]) - &conn.nabla(&e[j], &e[i])) - &sc.basis_bracket(i, j);
            for x in t.iter() {
                torsion.push_zero(x);
            }
        }
    }
    (metric, torsion)
}

/// `R(e_i,e_j) = [Γ_i, Γ_j] − Σ_k c^k_ij Γ_k` as operators.
pub fn curvature<S: Scalar>(
    conn: &Connection<S>,
    sc: &StructureConstants<S>,
) -> CurvatureTensor<S> {
    let ops: [[Endomorphism<S>; 3]; 3] = array::from_fn(|i| {
        array::from_fn(|j| {
            let comm = conn.matrix(i).commutator(conn.matrix(j));
            &comm - &conn.along(&sc.basis_bracket(i, j))
        })
    });
    CurvatureTensor::from_fn(|i, j, k| ops[i][j].column(k))
}

/// Ricci operator, scalar curvature and `g(Qξ,ξ)`.
pub fn ricci<S: Scalar>(
    curv: &CurvatureTensor<S>,
    g: &BilinearForm<S>,
    xi: &Vec3<S>,
) -> Result<RicciData<S>> {
    let gi = g.inverse()?;
    let ric = BilinearForm::from_fn(|j, k| {
        (0..3).fold(S::zero(), |acc, l| acc + curv.component(l, l, j, k).clone())
    });
    let q = ric.raise(&gi);
    let scal = q.trace();
    let trl = g.eval(&q.apply(xi), xi);
    Ok(RicciData { q, scal, trl })
}

/// The 3-dimensional identity
/// `R(X,Y)Z = g(Y,Z)QX − g(X,Z)QY + g(QY,Z)X − g(QX,Z)Y − (scal/2)(g(Y,Z)X − g(X,Z)Y)`.
pub fn curvature_from_ricci_3d<S: Scalar>(
    ric: &RicciData<S>,
    g: &BilinearForm<S>,
) -> CurvatureTensor<S> {
    let e: [Vec3<S>; 3] = array::from_fn(Vec3::basis);
    let qe: [Vec3<S>; 3] = array::from_fn(|i| ric.q.apply(&e[i]));
    let half = ric.scal.clone().half();
    CurvatureTensor::from_fn(|i, j, k| {
        let gyz = g.0[j][k].clone();
        let gxz = g.0[i][k].clone();
        let gqyz = g.eval(&qe[j], &e[k]);
        let gqxz = g.eval(&qe[i], &e[k]);
        let a = &qe[i].scale(&gyz) - &qe[j].scale(&gxz);
        let b =
            &e[i].scale(&(gqyz - half.clone() * gyz)) - &e[j].scale(&(gqxz - half.clone() * gxz));
        &a + &b
    })
}

/// `(∇_{e_i} A)` for each frame direction.
#[derive(Debug, Clone, PartialEq)]
pub struct EndomorphismDerivative<S> {
    pub along: [Endomorphism<S>; 3],
}

impl<S: Scalar> EndomorphismDerivative<S> {
    /// `∇_X A` for a constant direction.
    pub fn direction(&self, x: &Vec3<S>) -> Endomorphism<S> {
        (0..3).fold(Endomorphism::zero(), |acc, i| {
            &acc + &self.along[i].scale(&x.0[i])
        })
    }

    /// Index order `(direction, argument, output)`.
    pub fn to_dense(&self) -> DenseTensor<S> {
        DenseTensor::from_fn(vec![Slot::Lower, Slot::Lower, Slot::Upper], |ix| {
            self.along[ix[0]].0[ix[2]][ix[1]].clone()
        })
    }

    pub fn is_zero(&self) -> bool {
        self.along.iter().all(Endomorphism::is_zero)
    }
}

/// `(∇_{e_i} A) = Γ_i A − A Γ_i` for frame-constant `A`.
pub fn covariant_derivative_endo<S: Scalar>(
    conn: &Connection<S>,
    a: &Endomorphism<S>,
) -> EndomorphismDerivative<S> {
    EndomorphismDerivative {
        along: array::from_fn(|i| conn.matrix(i).commutator(a)),
    }
}

/// `(∇_{e_w} R)(e_i, e_j) e_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureDerivative<S> {
    pub along: [CurvatureTensor<S>; 3],
}

impl<S: Scalar> CurvatureDerivative<S> {
    /// `(∇_W R)(X,Y)Z` for constant arguments.
    pub fn apply(&self, w: &Vec3<S>, x: &Vec3<S>, y: &Vec3<S>, z: &Vec3<S>) -> Vec3<S> {
        (0..3).fold(Vec3::zero(), |acc, i| {
            if w.0[i].is_zero() {
                acc
            } else {
                &acc + &self.along[i].apply(x, y, z).scale(&w.0[i])
            }
        })
    }

    pub fn is_zero(&self) -> bool {
        self.along.iter().all(CurvatureTensor::is_zero)
    }

    /// Residual of `Σ_cyc (∇_X R)(Y,Z) = 0` over the frame.
    pub fn second_bianchi_defect(&self) -> Defect<S> {
        let mut d = Defect::new();
        for x in 0..3 {
            for y in 0..3 {
                for z in 0..3 {
                    for w in 0..3 {
                        let s = &(&self.along[x].values[y][z][w] + &self.along[y].values[z][x][w])
                            + &self.along[z].values[x][y][w];
                        for c in s.iter() {
                            d.push_zero(c);
                        }
                    }
                }
            }
        }
        d
    }
}

pub fn covariant_derivative_curvature<S: Scalar>(
    conn: &Connection<S>,
    r: &CurvatureTensor<S>,
) -> CurvatureDerivative<S> {
    let e: [Vec3<S>; 3] = array::from_fn(Vec3::basis);
    CurvatureDerivative {
        along: array::from_fn(|w| {
            let gw = conn.matrix(w);
            let ge: [Vec3<S>; 3] = array::from_fn(|i| gw.column(i));
            CurvatureTensor::from_fn(|i, j, k| {
                let mut v = gw.apply(r.get(i, j, k));
                v = &v - &r.apply(&ge[i], &e[j], &e[k]);
                v = &v - &r.apply(&e[i], &ge[j], &e[k]);
                &v - &r.apply(&e[i], &e[j], &ge[k])
            })
        }),
    }
}
