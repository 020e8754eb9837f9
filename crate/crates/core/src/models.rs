//! Homogeneous model families.
//!
//! Every family lives on a Lie algebra with `[e₂,e₃] = −2εξ`, metric
//! `diag(1, ε, −ε)`, `φ` swapping `e₂` and `e₃`, and `η` dual to `ξ = e₁`.
//! They differ only in the action of `ad_ξ` on `ker η`.

use std::fmt;

use crate::classify::{classify, q_phi_commutator, Classification};
use crate::error::{Error, Result};
use crate::lie::StructureConstants;
use crate::linalg::{BilinearForm, Covector, Endomorphism, Vec3};
use crate::paracontact::{compute_h, Analysis, LieFrameModel};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyId {
    KGreater,
    KLess,
    Heisenberg,
    General,
}

impl FamilyId {
    pub fn as_str(self) -> &'static str {
        match self {
            FamilyId::KGreater => "KGreater",
            FamilyId::KLess => "KLess",
            FamilyId::Heisenberg => "Heisenberg",
            FamilyId::General => "General",
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A family together with its parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum ModelFamily<S> {
    KGreater { lambda: S, eps: i8 },
    KLess { lambda: S, eps: i8 },
    Heisenberg,
    General { c2: S, c3: S, c4: S },
}

impl<S: Scalar> ModelFamily<S> {
    pub fn id(&self) -> FamilyId {
        match self {
            ModelFamily::KGreater { .. } => FamilyId::KGreater,
            ModelFamily::KLess { .. } => FamilyId::KLess,
            ModelFamily::Heisenberg => FamilyId::Heisenberg,
            ModelFamily::General { .. } => FamilyId::General,
        }
    }

    pub fn build(&self) -> Result<LieFrameModel<S>> {
        match self {
            ModelFamily::KGreater { lambda, eps } => Ok(model_k_greater(lambda.clone(), *eps)),
            ModelFamily::KLess { lambda, eps } => model_k_less(lambda.clone(), *eps),
            ModelFamily::Heisenberg => Ok(model_para_sasakian_heisenberg()),
            ModelFamily::General { c2, c3, c4 } => {
                Ok(model_general(c2.clone(), c3.clone(), c4.clone()))
            }
        }
    }
}

fn sign<S: Scalar>(eps: i8) -> S {
    assert!(eps == 1 || eps == -1, "ε must be ±1");
    S::from_int(eps as i64)
}

/// Shared frame data; `ad_ξ e₂ = a e₂ + b e₃`, `ad_ξ e₃ = c e₂ + d e₃`.
fn frame_model<S: Scalar>(name: String, eps: i8, ad_xi: [[S; 2]; 2]) -> LieFrameModel<S> {
    let e: S = sign(eps);
    let [[a, b], [c, d]] = ad_xi;
    let sc = StructureConstants::new(
        Vec3::new(S::zero(), a, b),
        Vec3::new(S::zero(), c, d),
        Vec3::new(S::from_int(-2) * e.clone(), S::zero(), S::zero()),
    );
    LieFrameModel {
        name,
        sc,
        g: BilinearForm::diagonal([S::one(), e.clone(), -e]),
        phi: Endomorphism::from_ints([[0, 0, 0], [0, 0, 1], [0, 1, 0]]),
        xi: Vec3::basis(0),
        eta: Covector::from_ints([1, 0, 0]),
    }
}

fn eps_suffix(eps: i8) -> &'static str {
    if eps < 0 {
        ",eps=-1"
    } else {
        ""
    }
}

/// `k > −1` branch: `[ξ,e₂] = (1−λ)e₃`, `[ξ,e₃] = (1+λ)e₂`, so `h = diag(0, λ, −λ)`
/// and `k = λ² − 1`.
pub fn model_k_greater<S: Scalar>(lambda: S, eps: i8) -> LieFrameModel<S> {
    let name = format!("KGreater(lambda={lambda}{})", eps_suffix(eps));
    let one = S::one();
    frame_model(
        name,
        eps,
        [
            [S::zero(), one.clone() - lambda.clone()],
            [one + lambda, S::zero()],
        ],
    )
}

/// `k < −1` branch: `[ξ,e₂] = −λe₂ + e₃`, `[ξ,e₃] = e₂ + λe₃`, so `φh` acts as
/// `diag(λ, −λ)` on `ker η` and `k = −(λ² + 1)`.
pub fn model_k_less<S: Scalar>(lambda: S, eps: i8) -> Result<LieFrameModel<S>> {
    if lambda.is_zero_scalar() {
        return Err(Error::DegenerateParameter(
            "KLess requires λ ≠ 0 (λ = 0 is the k = −1 boundary)".into(),
        ));
    }
    let name = format!("KLess(lambda={lambda}{})", eps_suffix(eps));
    Ok(frame_model(
        name,
        eps,
        [[-lambda.clone(), S::one()], [S::one(), lambda]],
    ))
}

/// Para-Sasakian Heisenberg structure: `[e₂,e₃] = −2ξ`, `ξ` central.
pub fn model_para_sasakian_heisenberg<S: Scalar>() -> LieFrameModel<S> {
    frame_model(
        "Heisenberg".into(),
        1,
        [[S::zero(), S::zero()], [S::zero(), S::zero()]],
    )
}

/// `[ξ,e₂] = −c₄e₂ + c₂e₃`, `[ξ,e₃] = c₃e₂ + c₄e₃` with `ε = +1`.
///
/// `ad_ξ` must be trace-free on `ker η` for the Jacobi identity, which is
/// why the `e₂e₂` coefficient is tied to `c₄`.
pub fn model_general<S: Scalar>(c2: S, c3: S, c4: S) -> LieFrameModel<S> {
    let name = format!("General(c2={c2},c3={c3},c4={c4})");
    frame_model(name, 1, [[-c4.clone(), c2], [c3, c4]])
}

/// A `trh² = 0`, `h ≠ 0`, `Qφ = φQ` witness together with its verdict.
#[derive(Debug, Clone)]
pub struct NilpotentHit<S> {
    pub params: [S; 3],
    pub model: LieFrameModel<S>,
    pub classification: Classification<S>,
}

/// Filters `model_general` over `grid` for commuting models with nilpotent,
/// nonzero `h`. Hits are returned in lexicographic parameter order.
pub fn nilpotent_h_search<S: Scalar>(
    grid: impl IntoIterator<Item = [S; 3]>,
) -> Result<Vec<NilpotentHit<S>>> {
    let mut hits = Vec::new();
    for params in grid {
        let [c2, c3, c4] = params.clone();
        let model = model_general(c2, c3, c4);
        let h = compute_h(&model);
        if h.is_zero() || !h.square().trace().is_zero_scalar() {
            continue;
        }
        let analysis = Analysis::new(model)?;
        if !q_phi_commutator(&analysis).1 {
            continue;
        }
        let classification = classify(&analysis)?;
        hits.push(NilpotentHit {
            params,
            model: analysis.model,
            classification,
        });
    }
    hits.sort_by(|a, b| {
        a.params
            .iter()
            .zip(&b.params)
            .map(|(x, y)| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(hits)
}

/// Triples `(c₂, c₃, c₄)` with every coordinate drawn from `values`.
pub fn cube_grid<S: Scalar>(values: &[S]) -> Vec<[S; 3]> {
    let mut out = Vec::with_capacity(values.len().pow(3));
    for a in values {
        for b in values {
            for c in values {
                out.push([a.clone(), b.clone(), c.clone()]);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::Verdict;
    use crate::lie::{bracket, jacobi_defect};
    use crate::paracontact::validate_structure;
    use crate::scalar::Exact;
    use num_traits::Zero;

    fn q(n: i64, d: i64) -> Exact {
        Exact::from_ratio(n, d)
    }

    #[test]
    fn k_greater_brackets() {
        let m = model_k_greater::<Exact>(q(3, 1), 1);
        // [ξ, e₂] = (1 − λ) e₃
        assert_eq!(
            bracket(&m.sc, &Vec3::basis(0), &Vec3::basis(1)),
            Vec3::from_ints([0, 0, -2])
        );
        assert!(jacobi_defect(&m.sc).is_zero());
    }

    #[test]
    fn k_less_rejects_zero() {
        assert!(matches!(
            model_k_less::<Exact>(q(0, 1), 1),
            Err(Error::DegenerateParameter(_))
        ));
    }

    #[test]
    fn k_less_jacobi() {
        let m = model_k_less::<Exact>(q(2, 1), 1).unwrap();
        assert!(jacobi_defect(&m.sc).is_zero());
        assert!(validate_structure(&m).unwrap().all_pass());
    }

    #[test]
    fn families_embed_in_general() {
        let lam = q(5, 3);
        let kg = model_k_greater::<Exact>(lam.clone(), 1);
        let gen = model_general(q(1, 1) - lam.clone(), q(1, 1) + lam.clone(), q(0, 1));
        assert_eq!(kg.sc, gen.sc);
        assert_eq!((kg.g, kg.phi), (gen.g, gen.phi));
        let kl = model_k_less::<Exact>(lam.clone(), 1).unwrap();
        let gen = model_general(q(1, 1), q(1, 1), lam);
        assert_eq!(kl.sc, gen.sc);
        assert_eq!(
            model_general::<Exact>(q(0, 1), q(2, 1), q(0, 1)).sc,
            model_k_greater::<Exact>(q(1, 1), 1).sc
        );
    }

    #[test]
    fn general_h_closed_form() {
        let (c2, c3, c4) = (q(2, 3), q(-5, 2), q(3, 4));
        let h = compute_h(&model_general(c2.clone(), c3.clone(), c4.clone()));
        // 2he₂ = (c₃ − c₂)e₂ + 2c₄e₃
        let want = Vec3::new(q(0, 1), (c3 - c2).half(), c4);
        assert_eq!(h.column(1), want);
    }

    #[test]
    fn nilpotent_search_on_small_grid() {
        let vals: Vec<Exact> = [-1, 0, 1, 2].iter().map(|&n| q(n, 1)).collect();
        let hits = nilpotent_h_search(cube_grid(&vals)).unwrap();
        let params: Vec<[Exact; 3]> = hits.iter().map(|h| h.params.clone()).collect();
        assert_eq!(
            params,
            vec![
                [q(0, 1), q(2, 1), q(-1, 1)],
                [q(0, 1), q(2, 1), q(1, 1)],
                [q(2, 1), q(0, 1), q(-1, 1)],
                [q(2, 1), q(0, 1), q(1, 1)],
            ]
        );
        for hit in &hits {
            assert_eq!(hit.classification.verdict, Verdict::TrH2Zero);
            assert_eq!(hit.classification.k, Some(q(-1, 1)));
        }
    }

    #[test]
    fn nilpotent_search_empty_off_the_cone() {
        // c₄ = ±(c₃ − c₂)/2 never holds on this grid
        let grid = vec![
            [q(0, 1), q(0, 1), q(1, 1)],
            [q(1, 1), q(3, 1), q(2, 1)],
            [q(1, 2), q(1, 1), q(1, 1)],
        ];
        assert!(nilpotent_h_search(grid).unwrap().is_empty());
    }
}
