//! Classification of structures with `Qφ = φQ` and the curvature checks
//! that accompany it.

use std::fmt;

use crate::error::{Error, Result};
use crate::geometry::{
    covariant_derivative_curvature, covariant_derivative_endo, CurvatureTensor, RicciData,
};
use crate::linalg::{Endomorphism, Vec3};
use crate::paracontact::{Analysis, LieFrameModel};
use crate::scalar::{Defect, Scalar};
use crate::tensor::pseudo_norm_sq;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    NonCommuting,
    TrH2Zero,
    Flat,
    ConstantCurvatures,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::NonCommuting => "NonCommuting",
            Verdict::TrH2Zero => "TrH2Zero",
            Verdict::Flat => "Flat",
            Verdict::ConstantCurvatures => "ConstantCurvatures",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Returns `Qφ − φQ` and whether it vanishes.
pub fn q_phi_commutator<S: Scalar>(a: &Analysis<S>) -> (Endomorphism<S>, bool) {
    let c = a.ricci.q.commutator(a.phi());
    let commutes = a
        .ricci
        .q
        .compose(a.phi())
        .defect(&a.phi().compose(&a.ricci.q))
        .passes();
    (c, commutes)
}

/// A non-null vector in `ker η`.
fn horizontal_probe<S: Scalar>(a: &Analysis<S>) -> Vec3<S> {
    let [u, w] = a.model.horizontal_basis();
    let g = a.g();
    [u.clone(), w.clone(), &u + &w, &u - &w]
        .into_iter()
        .find(|v| !g.norm_sq(v).is_zero_scalar())
        .expect("ker η is nondegenerate for a valid metric")
}

/// Best fit of `Q = a·Id + b·η⊗ξ`.
#[derive(Debug, Clone, PartialEq)]
pub struct EtaEinsteinFit<S> {
    pub commutes: bool,
    pub a: S,
    pub b: S,
    pub residual: S,
    pub is_eta_einstein: bool,
}

/// `a` is read off `Q` on a horizontal direction and `b` from `g(Qξ,ξ) − a`.
pub fn eta_einstein_fit<S: Scalar>(an: &Analysis<S>) -> EtaEinsteinFit<S> {
    let g = an.g();
    let q = &an.ricci.q;
    let u = horizontal_probe(an);
    let a = g.eval(&q.apply(&u), &u) / g.norm_sq(&u);
    let b = g.eval(&q.apply(&an.model.xi), &an.model.xi) - a.clone();
    let fitted = &Endomorphism::identity().scale(&a)
        + &Endomorphism::tensor(&an.model.eta, &an.model.xi).scale(&b);
    let d = q.defect(&fitted);
    EtaEinsteinFit {
        commutes: q_phi_commutator(an).1,
        a,
        b,
        is_eta_einstein: d.passes(),
        residual: d.residual,
    }
}

/// `(scal − trl)/2` and `(3trl − scal)/2`.
pub fn eta_einstein_closed_form<S: Scalar>(ric: &RicciData<S>) -> (S, S) {
    let a = (ric.scal.clone() - ric.trl.clone()).half();
    let b = (S::from_int(3) * ric.trl.clone() - ric.scal.clone()).half();
    (a, b)
}

/// Defect of `R(X,Y)ξ = k(η(Y)X − η(X)Y)` over the frame.
pub fn k_nullity_defect<S: Scalar>(an: &Analysis<S>, k: &S) -> Defect<S> {
    let m = &an.model;
    let mut d = Defect::new();
    for i in 0..3 {
        for j in 0..3 {
            let (x, y) = (Vec3::basis(i), Vec3::basis(j));
            let lhs = an.curv.apply(&x, &y, &m.xi);
            let rhs = (&x.scale(&m.eta.apply(&y)) - &y.scale(&m.eta.apply(&x))).scale(k);
            for c in 0..3 {
                d.push(&lhs[c], &rhs[c]);
            }
        }
    }
    d
}

/// The constant `k` with `ξ ∈ N(k)`, fitted from the curvature alone.
pub fn k_nullity_constant<S: Scalar>(an: &Analysis<S>) -> Option<S> {
    let u = horizontal_probe(an);
    let xi = &an.model.xi;
    let k = an.g().eval(&an.curv.apply(&u, xi, xi), &u) / an.g().norm_sq(&u);
    k_nullity_defect(an, &k).passes().then_some(k)
}

/// Sectional curvature of the plane spanned by `x` and `y`.
pub fn sectional<S: Scalar>(an: &Analysis<S>, x: &Vec3<S>, y: &Vec3<S>) -> Result<S> {
    let g = an.g();
    let denom = g.norm_sq(x) * g.norm_sq(y) - g.eval(x, y) * g.eval(x, y);
    if denom.is_zero_scalar() {
        return Err(Error::NullSection);
    }
    Ok(an.curv.lowered(g, x, y, y, x) / denom)
}

fn check_horizontal<S: Scalar>(an: &Analysis<S>, x: &Vec3<S>) -> Result<()> {
    let g = an.g();
    if !g.eval(x, &an.model.xi).is_negligible(&x.max_abs()) {
        return Err(Error::NotOrthogonal);
    }
    if g.norm_sq(x).is_zero_scalar() {
        return Err(Error::NullSection);
    }
    Ok(())
}

/// `K(ξ, X) = ε_X R(X,ξ,ξ,X)` for `X ⊥ ξ`, normalized internally.
pub fn xi_sectional<S: Scalar>(an: &Analysis<S>, x: &Vec3<S>) -> Result<S> {
    check_horizontal(an, x)?;
    sectional(an, x, &an.model.xi)
}

/// `K(X, φX) = −R(X,φX,φX,X)` for `|X| = −|φX| = ±1`, normalized internally.
pub fn phi_sectional<S: Scalar>(an: &Analysis<S>, x: &Vec3<S>) -> Result<S> {
    check_horizontal(an, x)?;
    sectional(an, x, &an.phi().apply(x))
}

/// `lX = QX + (trl − scal/2)X + η(X)(scal/2 − 2trl)ξ`; valid when `Qφ = φQ`.
pub fn l_from_ricci_3d<S: Scalar>(ric: &RicciData<S>, m: &LieFrameModel<S>) -> Endomorphism<S> {
    let half = ric.scal.clone().half();
    let id = Endomorphism::identity().scale(&(ric.trl.clone() - half.clone()));
    let proj =
        Endomorphism::tensor(&m.eta, &m.xi).scale(&(half - S::from_int(2) * ric.trl.clone()));
    &(&ric.q + &id) + &proj
}

/// `R(X,Y)Z = (γg(Y,Z) + bη(Y)η(Z))X − (γg(X,Z) + bη(X)η(Z))Y + b(η(X)g(Y,Z) − η(Y)g(X,Z))ξ`
/// with `γ = scal/2 − trl`.
pub fn restricted_curvature_form<S: Scalar>(an: &Analysis<S>) -> Result<CurvatureTensor<S>> {
    if !q_phi_commutator(an).1 {
        return Err(Error::RequiresCommuting);
    }
    let m = &an.model;
    let g = &m.g;
    let (_, b) = eta_einstein_closed_form(&an.ricci);
    let gamma = gamma(&an.ricci);
    Ok(CurvatureTensor::from_fn(|i, j, k| {
        let (x, y, z) = (
            Vec3::<S>::basis(i),
            Vec3::<S>::basis(j),
            Vec3::<S>::basis(k),
        );
        let (ex, ey, ez) = (m.eta.apply(&x), m.eta.apply(&y), m.eta.apply(&z));
        let cx = gamma.clone() * g.eval(&y, &z) + b.clone() * ey.clone() * ez.clone();
        let cy = gamma.clone() * g.eval(&x, &z) + b.clone() * ex.clone() * ez;
        let cxi = b.clone() * (ex * g.eval(&y, &z) - ey * g.eval(&x, &z));
        &(&x.scale(&cx) - &y.scale(&cy)) + &m.xi.scale(&cxi)
    }))
}

/// `γ = scal/2 − trl`.
pub fn gamma<S: Scalar>(ric: &RicciData<S>) -> S {
    ric.scal.clone().half() - ric.trl.clone()
}

/// One row of the sectional-curvature sweep over `X = u + t·w`
/// (`t = None` stands for `X = w`).
#[derive(Debug, Clone, PartialEq)]
pub struct SectionalSample<S> {
    pub t: Option<S>,
    pub direction: Vec3<S>,
    pub xi_sectional: S,
    pub phi_sectional: S,
}

/// Sweep parameters; `t = ±1` is null for the bundled metrics and is skipped there.
pub fn sweep_parameters<S: Scalar>() -> Vec<Option<S>> {
    let mut ts = vec![Some(S::zero())];
    for (n, d) in [(1, 3), (1, 2), (1, 1), (2, 1), (3, 1)] {
        ts.push(Some(S::from_ratio(n, d)));
        ts.push(Some(S::from_ratio(-n, d)));
    }
    ts.push(None);
    ts
}

/// Sectional curvatures over the rational direction sweep, null directions skipped.
pub fn sectional_sweep<S: Scalar>(an: &Analysis<S>) -> Result<Vec<SectionalSample<S>>> {
    let [u, w] = an.model.horizontal_basis();
    let mut out = Vec::new();
    for t in sweep_parameters::<S>() {
        let x = match &t {
            Some(t) => &u + &w.scale(t),
            None => w.clone(),
        };
        if an.g().norm_sq(&x).is_zero_scalar() {
            continue;
        }
        out.push(SectionalSample {
            xi_sectional: xi_sectional(an, &x)?,
            phi_sectional: phi_sectional(an, &x)?,
            t,
            direction: x,
        });
    }
    Ok(out)
}

fn constant_value<S: Scalar>(values: impl Iterator<Item = S>) -> Option<S> {
    let mut it = values;
    let first = it.next()?;
    it.all(|v| v.approx_eq(&first)).then_some(first)
}

/// Eigen-data read off `h` (for `k > −1`) or `φh` (for `k < −1`).
#[derive(Debug, Clone, PartialEq)]
pub struct EigenData<S> {
    /// `λ²`, always exact-representable.
    pub lambda_sq: S,
    /// The nonnegative root, when it lies in the scalar field.
    pub lambda: Option<S>,
    /// An eigenvector `X ⊥ ξ` with eigenvalue `λ`.
    pub eigenvector: Option<Vec3<S>>,
    /// `ε_X = sign g(X, X)` of that eigenvector.
    pub epsilon: Option<i8>,
}

fn eigen_data<S: Scalar>(an: &Analysis<S>, op: &Endomorphism<S>, lambda_sq: S) -> EigenData<S> {
    let lambda = lambda_sq.sqrt_exact();
    let mut data = EigenData {
        lambda_sq,
        lambda: lambda.clone(),
        eigenvector: None,
        epsilon: None,
    };
    let Some(lambda) = lambda else {
        return data;
    };
    // (op + λ) maps ker η onto the λ-eigenspace because op² = λ² there.
    for v in an.model.horizontal_basis() {
        let x = &op.apply(&v) + &v.scale(&lambda);
        if x.is_zero() {
            continue;
        }
        let ox = op.apply(&x);
        let lx = x.scale(&lambda);
        let ok = (0..3).all(|c| ox[c].approx_eq(&lx[c]));
        let n = an.g().norm_sq(&x);
        if ok && !n.is_zero_scalar() {
            data.epsilon = Some(if n > S::zero() { 1 } else { -1 });
            data.eigenvector = Some(x);
            break;
        }
    }
    data
}

/// The classification verdict plus every constant derived on the way.
#[derive(Debug, Clone, PartialEq)]
pub struct Classification<S> {
    pub verdict: Verdict,
    /// `trl/2`, defined when `Qφ = φQ`.
    pub k: Option<S>,
    /// Constant ξ-sectional curvature, if constant over the sweep.
    pub xi_sectional: Option<S>,
    /// Constant φ-sectional curvature, if constant over the sweep.
    pub phi_sectional: Option<S>,
    pub gamma: S,
    pub eigen: Option<EigenData<S>>,
    pub scal: S,
    pub trl: S,
    pub trh2: S,
    pub fit: EtaEinsteinFit<S>,
    pub k_nullity: Option<S>,
    pub sweep: Vec<SectionalSample<S>>,
}

impl<S: Scalar> Classification<S> {
    pub fn lambda(&self) -> Option<&S> {
        self.eigen.as_ref().and_then(|e| e.lambda.as_ref())
    }

    /// Re-checks the invariants attached to the verdict.
    pub fn verify(&self, an: &Analysis<S>) -> Result<()> {
        let violation = |msg: String| Err(Error::TheoremViolation(msg));
        let commutes = self.fit.commutes;
        if commutes != self.fit.is_eta_einstein || commutes != self.k_nullity.is_some() {
            return violation(format!(
                "η-Einstein / Qφ=φQ / k-nullity disagree: {} / {} / {}",
                self.fit.is_eta_einstein,
                commutes,
                self.k_nullity.is_some()
            ));
        }
        match self.verdict {
            Verdict::NonCommuting => {
                if commutes {
                    return violation("NonCommuting verdict on a commuting model".into());
                }
            }
            Verdict::Flat => {
                if !an.curv.is_zero() || !self.trl.is_zero_scalar() {
                    return violation(format!("flat verdict with trl = {}", self.trl));
                }
            }
            Verdict::TrH2Zero => {
                let k = self.k.clone().unwrap_or_else(S::zero);
                if !self.trh2.is_zero_scalar() || !k.approx_eq(&S::from_int(-1)) {
                    return violation(format!("trh² = {}, k = {k}", self.trh2));
                }
            }
            Verdict::ConstantCurvatures => {
                let Some(k) = &self.k else {
                    return violation("constant curvature verdict without k".into());
                };
                if k.approx_eq(&S::from_int(-1)) || k.is_zero_scalar() {
                    return violation(format!("constant curvature verdict with k = {k}"));
                }
                for s in &self.sweep {
                    if !s.xi_sectional.approx_eq(k) || !s.phi_sectional.approx_eq(&-k.clone()) {
                        return violation(format!(
                            "K(ξ,X) = {}, K(X,φX) = {} with k = {k}",
                            s.xi_sectional, s.phi_sectional
                        ));
                    }
                }
                let want = S::from_int(2) * (k.clone() + S::one());
                if !self.trh2.approx_eq(&want) {
                    return violation(format!("trh² = {} but 2(k+1) = {want}", self.trh2));
                }
            }
        }
        Ok(())
    }
}

/// Decision procedure for the classification of structures with `Qφ = φQ`.
pub fn classify<S: Scalar>(an: &Analysis<S>) -> Result<Classification<S>> {
    let fit = eta_einstein_fit(an);
    let k_nullity = k_nullity_constant(an);
    let sweep = sectional_sweep(an)?;
    let (scal, trl, trh2) = (
        an.ricci.scal.clone(),
        an.ricci.trl.clone(),
        an.ops.trh2.clone(),
    );
    let mut out = Classification {
        verdict: Verdict::NonCommuting,
        k: None,
        xi_sectional: constant_value(sweep.iter().map(|s| s.xi_sectional.clone())),
        phi_sectional: constant_value(sweep.iter().map(|s| s.phi_sectional.clone())),
        gamma: gamma(&an.ricci),
        eigen: None,
        scal,
        trl: trl.clone(),
        trh2,
        fit,
        k_nullity,
        sweep,
    };

    if !out.fit.commutes {
        out.verify(an)?;
        return Ok(out);
    }

    let k = trl.half();
    match &out.k_nullity {
        Some(fitted) if fitted.approx_eq(&k) => {}
        other => {
            return Err(Error::TheoremViolation(format!(
                "trl/2 = {k} but curvature fit gives {other:?}"
            )))
        }
    }
    out.k = Some(k.clone());
    let minus_one = S::from_int(-1);

    out.verdict = if k.is_zero_scalar() {
        if !an.ops.l.is_zero() {
            return Err(Error::TheoremViolation("trl = 0 but l ≠ 0".into()));
        }
        Verdict::Flat
    } else if k.approx_eq(&minus_one) {
        Verdict::TrH2Zero
    } else {
        let kp1 = k.clone() + S::one();
        out.eigen = Some(if kp1 > S::zero() {
            eigen_data(an, &an.ops.h, kp1)
        } else {
            eigen_data(an, &an.phi().compose(&an.ops.h), -kp1)
        });
        Verdict::ConstantCurvatures
    };
    out.verify(an)?;
    Ok(out)
}

/// Residual of `2|∇Q|² = |grad scal|² − (3trl − scal)²(4 + trl)` with `grad scal = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct NablaQCheck<S> {
    pub norm_sq: S,
    /// `−(3trl − scal)²(4 + trl)`.
    pub rhs: S,
    pub residual: Defect<S>,
}

impl<S: Scalar> NablaQCheck<S> {
    pub fn passes(&self) -> bool {
        self.residual.passes()
    }
}

pub fn nabla_q_identity_check<S: Scalar>(an: &Analysis<S>) -> Result<NablaQCheck<S>> {
    let dq = covariant_derivative_endo(&an.conn, &an.ricci.q);
    let norm_sq = pseudo_norm_sq(&dq.to_dense(), an.g())?;
    let (trl, scal) = (an.ricci.trl.clone(), an.ricci.scal.clone());
    let c = S::from_int(3) * trl.clone() - scal;
    let rhs = -(c.clone() * c * (S::from_int(4) + trl));
    let mut residual = Defect::new();
    residual.push(&(S::from_int(2) * norm_sq.clone()), &rhs);
    Ok(NablaQCheck {
        norm_sq,
        rhs,
        residual,
    })
}

/// Which of `scal = 3trl`, `scal = −12`, `trl = −4` hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Trichotomy {
    pub scal_is_3trl: bool,
    pub scal_is_minus_12: bool,
    pub trl_is_minus_4: bool,
}

impl Trichotomy {
    pub fn any(&self) -> bool {
        self.scal_is_3trl || self.scal_is_minus_12 || self.trl_is_minus_4
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhiSymmetryReport<S> {
    /// Always true on a homogeneous model.
    pub scal_constant: bool,
    /// Max over horizontal frame legs of `|φ²(∇_W R)(X,Y)Z|`.
    pub residual: Defect<S>,
    pub nabla_q: NablaQCheck<S>,
    pub trichotomy: Trichotomy,
}

pub fn phi_symmetry_check<S: Scalar>(an: &Analysis<S>) -> Result<PhiSymmetryReport<S>> {
    let dr = covariant_derivative_curvature(&an.conn, &an.curv);
    let phi2 = an.phi().square();
    let basis = an.model.horizontal_basis();
    let mut residual = Defect::new();
    for w in &basis {
        for x in &basis {
            for y in &basis {
                for z in &basis {
                    let v = phi2.apply(&dr.apply(w, x, y, z));
                    for c in v.iter() {
                        residual.push_zero(c);
                    }
                }
            }
        }
    }
    let (trl, scal) = (&an.ricci.trl, &an.ricci.scal);
    Ok(PhiSymmetryReport {
        scal_constant: true,
        residual,
        nabla_q: nabla_q_identity_check(an)?,
        trichotomy: Trichotomy {
            scal_is_3trl: scal.approx_eq(&(S::from_int(3) * trl.clone())),
            scal_is_minus_12: scal.approx_eq(&S::from_int(-12)),
            trl_is_minus_4: trl.approx_eq(&S::from_int(-4)),
        },
    })
}
