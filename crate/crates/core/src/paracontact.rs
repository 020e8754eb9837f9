//! Paracontact metric structures on a Lie frame: axioms, the structure
//! operators `h`, `l`, `τ`, and the identities they satisfy.

use std::array;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::geometry::{
    covariant_derivative_endo, curvature, levi_civita, ricci, Connection, CurvatureTensor,
    RicciData,
};
use crate::lie::{bracket, jacobi_defect, StructureConstants};
use crate::linalg::{BilinearForm, Covector, Endomorphism, Vec3};
use crate::scalar::{Defect, Scalar, ScalarMode};

/// A left-invariant almost paracontact metric structure `(φ, ξ, η, g)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LieFrameModel<S> {
    pub name: String,
    pub sc: StructureConstants<S>,
    pub g: BilinearForm<S>,
    pub phi: Endomorphism<S>,
    pub xi: Vec3<S>,
    pub eta: Covector<S>,
}

impl<S: Scalar> LieFrameModel<S> {
    pub fn mode(&self) -> ScalarMode {
        S::MODE
    }

    /// `dη(X,Y) = ½(Xη(Y) − Yη(X) − η([X,Y])) = −½η([X,Y])` for constant `η`.
    pub fn d_eta(&self, x: &Vec3<S>, y: &Vec3<S>) -> S {
        -self.eta.apply(&bracket(&self.sc, x, y)).half()
    }

    /// A basis of `ker η`: the projections of `e₂`, `e₃` along `ξ`.
    pub fn horizontal_basis(&self) -> [Vec3<S>; 2] {
        array::from_fn(|i| {
            let e = Vec3::basis(i + 1);
            &e - &self.xi.scale(&self.eta.apply(&e))
        })
    }
}

/// Labels of the checked identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Identity {
    /// `dη = g(·,φ·)`, `η = g(·,ξ)`, `η(ξ) = 1`, `φ² = Id − η⊗ξ`.
    AssociatedMetric,
    /// `φξ = 0`, `η∘φ = 0`, `g(φX,φY) = −g(X,Y) + η(X)η(Y)`.
    AntiIsometry,
    /// `lξ = hξ = 0`, `tr h = tr hφ = 0`, `hφ = −φh`, `h` and `l` self-adjoint.
    StructureOperators,
    /// `∇_X ξ = −φX + φhX`.
    NablaXi,
    /// `∇_ξ φ = 0`.
    XiParallelPhi,
    /// `tr l = g(Qξ,ξ) = −2 + tr h²`.
    TraceL,
    /// `φlφ + l = −2(φ² − h²)`.
    PhiLPhi,
    /// `∇_ξ h = −φ − φl + φh²`.
    NablaXiH,
    /// `(∇_X φ)Y = −g(X − hX, Y)ξ + η(Y)(X − hX)`.
    NablaPhi,
    /// `(∇_X φ)Y = −g(X,Y)ξ + η(Y)X`; holds iff para-Sasakian.
    ParaSasakian,
}

impl Identity {
    pub const ALL: [Identity; 10] = [
        Identity::AssociatedMetric,
        Identity::AntiIsometry,
        Identity::StructureOperators,
        Identity::NablaXi,
        Identity::XiParallelPhi,
        Identity::TraceL,
        Identity::PhiLPhi,
        Identity::NablaXiH,
        Identity::NablaPhi,
        Identity::ParaSasakian,
    ];

    /// Identities every 3-dimensional paracontact metric structure satisfies.
    pub const UNCONDITIONAL: [Identity; 7] = [
        Identity::StructureOperators,
        Identity::NablaXi,
        Identity::XiParallelPhi,
        Identity::TraceL,
        Identity::PhiLPhi,
        Identity::NablaXiH,
        Identity::NablaPhi,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Identity::AssociatedMetric => "associated-metric",
            Identity::AntiIsometry => "anti-isometry",
            Identity::StructureOperators => "structure-operators",
            Identity::NablaXi => "nabla-xi",
            Identity::XiParallelPhi => "xi-parallel-phi",
            Identity::TraceL => "trace-l",
            Identity::PhiLPhi => "phi-l-phi",
            Identity::NablaXiH => "nabla-xi-h",
            Identity::NablaPhi => "nabla-phi",
            Identity::ParaSasakian => "para-sasakian",
        }
    }

    pub fn from_label(s: &str) -> Option<Identity> {
        Identity::ALL.into_iter().find(|i| i.label() == s)
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Per-identity residuals.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport<S> {
    entries: BTreeMap<Identity, Defect<S>>,
}

impl<S: Scalar> Default for IdentityReport<S> {
    fn default() -> Self {
        Self {
            entries: BTreeMap::new(),
        }
    }
}

impl<S: Scalar> IdentityReport<S> {
    pub fn insert(&mut self, id: Identity, d: Defect<S>) {
        self.entries.insert(id, d);
    }

    pub fn get(&self, id: Identity) -> Option<&Defect<S>> {
        self.entries.get(&id)
    }

    pub fn residual(&self, id: Identity) -> Option<&S> {
        self.entries.get(&id).map(|d| &d.residual)
    }

    pub fn passes(&self, id: Identity) -> bool {
        self.entries.get(&id).is_some_and(Defect::passes)
    }

    pub fn all_pass(&self) -> bool {
        self.entries.values().all(Defect::passes)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Identity, &Defect<S>)> {
        self.entries.iter().map(|(k, v)| (*k, v))
    }

    pub fn merge(&mut self, other: IdentityReport<S>) {
        self.entries.extend(other.entries);
    }

    /// First failing entry, if any.
    pub fn first_failure(&self) -> Option<(Identity, &Defect<S>)> {
        self.iter().find(|(_, d)| !d.passes())
    }
}

fn frame<S: Scalar>() -> [Vec3<S>; 3] {
    array::from_fn(Vec3::basis)
}

/// Checks the axioms of a paracontact metric structure.
///
/// Structural problems (non-Lie bracket, bad metric) are errors; axiom
/// defects are reported as residuals.
pub fn validate_structure<S: Scalar>(m: &LieFrameModel<S>) -> Result<IdentityReport<S>> {
    let jd = jacobi_defect(&m.sc);
    if !jd.is_zero_scalar() {
        return Err(Error::NotLieAlgebra(jd.to_string()));
    }
    if !m.g.is_symmetric() {
        return Err(Error::AsymmetricMetric);
    }
    match m.g.signature() {
        None => return Err(Error::SingularMetric),
        Some((2, 1)) => {}
        Some(_) => return Err(Error::BadSignature),
    }

    let e = frame::<S>();
    let mut con = Defect::new();
    con.push(&m.eta.apply(&m.xi), &S::one());
    let phi2 = m.phi.square();
    let target = &Endomorphism::identity() - &Endomorphism::tensor(&m.eta, &m.xi);
    con.merge(&phi2.defect(&target));
    for x in &e {
        con.push(&m.eta.apply(x), &m.g.eval(x, &m.xi));
        for y in &e {
            con.push(&m.d_eta(x, y), &m.g.eval(x, &m.phi.apply(y)));
        }
    }

    let mut b1 = Defect::new();
    for c in m.phi.apply(&m.xi).iter() {
        b1.push_zero(c);
    }
    for c in m.eta.after(&m.phi).0.iter() {
        b1.push_zero(c);
    }
    for x in &e {
        for y in &e {
            let lhs = m.g.eval(&m.phi.apply(x), &m.phi.apply(y));
            let rhs = -m.g.eval(x, y) + m.eta.apply(x) * m.eta.apply(y);
            b1.push(&lhs, &rhs);
        }
    }

    let mut report = IdentityReport::default();
    report.insert(Identity::AssociatedMetric, con);
    report.insert(Identity::AntiIsometry, b1);
    Ok(report)
}

/// Like [`validate_structure`] but turns a failing axiom into an error.
pub fn require_valid<S: Scalar>(m: &LieFrameModel<S>) -> Result<IdentityReport<S>> {
    let report = validate_structure(m)?;
    if let Some((id, d)) = report.first_failure() {
        return Err(Error::AxiomViolation {
            label: id.label().to_string(),
            residual: d.residual.to_string(),
        });
    }
    Ok(report)
}

/// `h = ½ £_ξ φ`, i.e. `2hY = [ξ, φY] − φ[ξ, Y]`.
pub fn compute_h<S: Scalar>(m: &LieFrameModel<S>) -> Endomorphism<S> {
    let e = frame::<S>();
    Endomorphism::from_columns(array::from_fn(|j| {
        let a = bracket(&m.sc, &m.xi, &m.phi.apply(&e[j]));
        let b = m.phi.apply(&bracket(&m.sc, &m.xi, &e[j]));
        (&a - &b).scale(&S::from_ratio(1, 2))
    }))
}

/// The operator `X ↦ ∇_X ξ`.
pub fn nabla_xi<S: Scalar>(m: &LieFrameModel<S>, conn: &Connection<S>) -> Endomorphism<S> {
    let e = frame::<S>();
    Endomorphism::from_columns(array::from_fn(|i| conn.nabla(&e[i], &m.xi)))
}

/// `h` recovered from the connection: `h = φ(∇ξ + φ)`.
pub fn h_from_connection<S: Scalar>(m: &LieFrameModel<S>, conn: &Connection<S>) -> Endomorphism<S> {
    m.phi.compose(&(&nabla_xi(m, conn) + &m.phi))
}

/// `lX = R(X, ξ)ξ`.
pub fn compute_l<S: Scalar>(m: &LieFrameModel<S>, curv: &CurvatureTensor<S>) -> Endomorphism<S> {
    let e = frame::<S>();
    Endomorphism::from_columns(array::from_fn(|j| curv.apply(&e[j], &m.xi, &m.xi)))
}

/// `τ = £_ξ g`, `τ(X,Y) = g(∇_X ξ, Y) + g(X, ∇_Y ξ)`.
pub fn compute_tau<S: Scalar>(m: &LieFrameModel<S>, conn: &Connection<S>) -> BilinearForm<S> {
    let low = m.g.lower(&nabla_xi(m, conn));
    let t = low.transpose();
    BilinearForm::from_fn(|i, j| low.0[i][j].clone() + t.0[i][j].clone())
}

/// `h`, `l`, `τ` and the traces `tr l`, `tr h²`.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureOperators<S> {
    pub h: Endomorphism<S>,
    pub l: Endomorphism<S>,
    pub tau: BilinearForm<S>,
    pub trl: S,
    pub trh2: S,
}

/// A validated model together with its connection, curvature and Ricci data.
#[derive(Debug, Clone)]
pub struct Analysis<S> {
    pub model: LieFrameModel<S>,
    pub validation: IdentityReport<S>,
    pub conn: Connection<S>,
    pub curv: CurvatureTensor<S>,
    pub ricci: RicciData<S>,
    pub ops: StructureOperators<S>,
}

impl<S: Scalar> Analysis<S> {
    pub fn new(model: LieFrameModel<S>) -> Result<Self> {
        let validation = require_valid(&model)?;
        let conn = levi_civita(&model.sc, &model.g)?;
        let curv = curvature(&conn, &model.sc);
        let ric = ricci(&curv, &model.g, &model.xi)?;
        let h = compute_h(&model);
        let l = compute_l(&model, &curv);
        let tau = compute_tau(&model, &conn);
        let trl = l.trace();
        let trh2 = h.square().trace();
        Ok(Self {
            model,
            validation,
            conn,
            curv,
            ricci: ric,
            ops: StructureOperators {
                h,
                l,
                tau,
                trl,
                trh2,
            },
        })
    }

    pub fn g(&self) -> &BilinearForm<S> {
        &self.model.g
    }

    pub fn phi(&self) -> &Endomorphism<S> {
        &self.model.phi
    }
}

/// Evaluates every identity componentwise over the frame.
pub fn identity_suite<S: Scalar>(a: &Analysis<S>) -> IdentityReport<S> {
    let m = &a.model;
    let (phi, h, l) = (&m.phi, &a.ops.h, &a.ops.l);
    let e = frame::<S>();
    let mut report = a.validation.clone();

    let mut alg = Defect::new();
    for c in l.apply(&m.xi).iter().chain(h.apply(&m.xi).iter()) {
        alg.push_zero(c);
    }
    alg.push_zero(&h.trace());
    alg.push_zero(&h.compose(phi).trace());
    alg.merge(&h.compose(phi).defect(&-&phi.compose(h)));
    for op in [h, l] {
        let low = m.g.lower(op);
        alg.merge(&Endomorphism(low.0.clone()).defect(&Endomorphism(low.transpose().0)));
    }
    report.insert(Identity::StructureOperators, alg);

    let nxi = nabla_xi(m, &a.conn);
    report.insert(Identity::NablaXi, nxi.defect(&(&phi.compose(h) - phi)));

    let dphi = covariant_derivative_endo(&a.conn, phi);
    report.insert(
        Identity::XiParallelPhi,
        dphi.direction(&m.xi).defect(&Endomorphism::zero()),
    );

    let mut trace_l = Defect::new();
    trace_l.push(&a.ops.trl, &a.ricci.trl);
    trace_l.push(&a.ricci.trl, &(S::from_int(-2) + a.ops.trh2.clone()));
    report.insert(Identity::TraceL, trace_l);

    let lhs = &phi.compose(l).compose(phi) + l;
    let rhs = (&phi.square() - &h.square()).scale(&S::from_int(-2));
    report.insert(Identity::PhiLPhi, lhs.defect(&rhs));

    let dh = covariant_derivative_endo(&a.conn, h).direction(&m.xi);
    let rhs = &(&-phi - &phi.compose(l)) + &phi.compose(&h.square());
    report.insert(Identity::NablaXiH, dh.defect(&rhs));

    let mut nabla_phi = Defect::new();
    let mut sasaki = Defect::new();
    for x in &e {
        let dphi_x = dphi.direction(x);
        let x_h = x - &h.apply(x);
        for y in &e {
            let lhs = dphi_x.apply(y);
            let eta_y = m.eta.apply(y);
            let rhs = &m.xi.scale(&-m.g.eval(&x_h, y)) + &x_h.scale(&eta_y);
            let rhs8 = &m.xi.scale(&-m.g.eval(x, y)) + &x.scale(&eta_y);
            for k in 0..3 {
                nabla_phi.push(&lhs[k], &rhs[k]);
                sasaki.push(&lhs[k], &rhs8[k]);
            }
        }
    }
    report.insert(Identity::NablaPhi, nabla_phi);
    report.insert(Identity::ParaSasakian, sasaki);
    report
}

/// A 3-dimensional paracontact metric manifold is para-Sasakian iff `h = 0`.
pub fn is_para_sasakian<S: Scalar>(m: &LieFrameModel<S>) -> bool {
    compute_h(m).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{
        model_general, model_k_greater, model_k_less, model_para_sasakian_heisenberg,
    };
    use crate::scalar::Exact;

    fn q(n: i64, d: i64) -> Exact {
        Exact::from_ratio(n, d)
    }

    #[test]
    fn heisenberg_validates() {
        let m = model_para_sasakian_heisenberg::<Exact>();
        // dη(e₂,e₃) = −½η([e₂,e₃]) = 1 = g(e₂, φe₃)
        assert_eq!(m.d_eta(&Vec3::basis(1), &Vec3::basis(2)), q(1, 1));
        let r = validate_structure(&m).unwrap();
        assert!(r.all_pass());
    }

    #[test]
    fn flipped_bracket_breaks_compatibility() {
        let mut m = model_para_sasakian_heisenberg::<Exact>();
        m.sc = StructureConstants::abelian().with(1, 2, Vec3::from_ints([2, 0, 0]));
        let r = validate_structure(&m).unwrap();
        assert!(!r.passes(Identity::AssociatedMetric));
        assert_eq!(r.residual(Identity::AssociatedMetric), Some(&q(2, 1)));
        assert!(matches!(
            require_valid(&m),
            Err(Error::AxiomViolation { .. })
        ));
    }

    #[test]
    fn perturbed_phi_fails_with_perturbation_size() {
        let mut m = model_para_sasakian_heisenberg::<Exact>();
        // φ e₂ = e₃ + δ e₂ ; φ² picks up δ on the (2,2) entry
        m.phi.0[1][1] = q(1, 7);
        let r = validate_structure(&m).unwrap();
        assert!(!r.passes(Identity::AssociatedMetric));
        let phi2 = m.phi.square();
        assert_eq!(phi2.0[1][1], q(1, 49) + q(1, 1));
        assert!(r.residual(Identity::AssociatedMetric).unwrap() >= &q(1, 7));
    }

    #[test]
    fn structural_errors() {
        let mut m = model_para_sasakian_heisenberg::<Exact>();
        m.g = BilinearForm::from_ints([[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        assert_eq!(validate_structure(&m), Err(Error::BadSignature));
        m.g = BilinearForm::from_ints([[1, 0, 0], [0, 0, 0], [0, 0, -1]]);
        assert_eq!(validate_structure(&m), Err(Error::SingularMetric));
        m.g = BilinearForm::from_ints([[1, 0, 0], [0, 1, 1], [0, 0, -1]]);
        assert_eq!(validate_structure(&m), Err(Error::AsymmetricMetric));
        let mut m = model_para_sasakian_heisenberg::<Exact>();
        m.sc = StructureConstants::new(
            Vec3::from_ints([0, 1, 0]),
            Vec3::zero(),
            Vec3::from_ints([1, 0, 0]),
        );
        assert!(matches!(
            validate_structure(&m),
            Err(Error::NotLieAlgebra(_))
        ));
    }

    #[test]
    fn h_of_bundled_models() {
        assert!(compute_h(&model_para_sasakian_heisenberg::<Exact>()).is_zero());
        let h = compute_h(&model_k_greater::<Exact>(q(3, 1), 1));
        assert_eq!(
            h,
            Endomorphism::from_ints([[0, 0, 0], [0, 3, 0], [0, 0, -3]])
        );
        let h = compute_h(&model_k_less::<Exact>(q(2, 1), 1).unwrap());
        assert_eq!(h.column(1), Vec3::from_ints([0, 0, 2]));
        assert_eq!(h.column(2), Vec3::from_ints([0, -2, 0]));
        assert!(is_para_sasakian(&model_k_greater::<Exact>(q(0, 1), 1)));
        assert!(!is_para_sasakian(&model_k_greater::<Exact>(q(3, 1), 1)));
    }

    #[test]
    fn h_from_lie_derivative_matches_connection() {
        for m in [
            model_k_greater::<Exact>(q(3, 1), -1),
            model_k_less::<Exact>(q(1, 2), 1).unwrap(),
            model_general::<Exact>(q(1, 3), q(-2, 5), q(7, 2)),
        ] {
            let a = Analysis::new(m).unwrap();
            assert_eq!(h_from_connection(&a.model, &a.conn), a.ops.h);
        }
    }

    #[test]
    fn l_of_bundled_models() {
        let a = Analysis::new(model_k_greater::<Exact>(q(1, 1), 1)).unwrap();
        assert!(a.ops.l.is_zero());
        // h = 0 ⇒ l = −φ²
        let a = Analysis::new(model_para_sasakian_heisenberg::<Exact>()).unwrap();
        assert_eq!(a.ops.l, -&a.model.phi.square());
        // l = kφ² with k = 8
        let a = Analysis::new(model_k_greater::<Exact>(q(3, 1), 1)).unwrap();
        assert_eq!(a.ops.l, a.model.phi.square().scale(&q(8, 1)));
    }

    #[test]
    fn tau_vanishes_iff_para_sasakian_here() {
        let a = Analysis::new(model_para_sasakian_heisenberg::<Exact>()).unwrap();
        assert_eq!(a.ops.tau, BilinearForm::zero());
        let a = Analysis::new(model_k_greater::<Exact>(q(3, 1), 1)).unwrap();
        assert!(a.ops.tau.is_symmetric());
        // τ(X,Y) = 2g(φhX, Y): τ(e₂,e₃) = 2λ g(e₃,e₃) = −6, τ(e₂,e₂) = 0
        assert_eq!(a.ops.tau.0[1][2], q(-6, 1));
        assert_eq!(a.ops.tau.0[1][1], q(0, 1));
        let twice = a
            .model
            .g
            .lower(&a.model.phi.compose(&a.ops.h).scale(&q(2, 1)));
        assert_eq!(a.ops.tau, twice);
    }

    #[test]
    fn identity_suite_on_models() {
        let r = identity_suite(&Analysis::new(model_para_sasakian_heisenberg::<Exact>()).unwrap());
        assert!(r.all_pass());

        let r = identity_suite(
            &Analysis::new(model_general::<Exact>(q(1, 1), q(0, 1), q(1, 1))).unwrap(),
        );
        for id in Identity::UNCONDITIONAL {
            assert!(r.passes(id), "{id}");
        }
        assert!(!r.passes(Identity::ParaSasakian));

        let r = identity_suite(&Analysis::new(model_k_less::<Exact>(q(2, 1), 1).unwrap()).unwrap());
        for id in Identity::UNCONDITIONAL {
            assert!(r.passes(id), "{id}");
        }
    }

    #[test]
    fn labels_round_trip() {
        for id in Identity::ALL {
            assert_eq!(Identity::from_label(id.label()), Some(id));
        }
    }
}
