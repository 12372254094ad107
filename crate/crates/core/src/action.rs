//! Spectral data of ergodic actions: multiplicity spaces `L_u` and the
//! spectra of `J_u*J_u`, the built-in translation and relaxed-tensor
//! actions, the KMS identity and the `J*J` bounds in terms of `D_u`.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::growth::{self, GrowthKind, VERDICT_TOL};
use crate::label::IrrepLabel;
use crate::model::QuantumGroupModel;
use crate::spectrum::{close, EigenSpectrum, REL_TOL};

/// Depth of the generator tower standing in for "every spectral irrep" of
/// the infinite built-in actions.
pub const DEFAULT_TOWER_DEPTH: usize = 4;
/// Depth of the growth certificate used when validating custom actions.
pub const VALIDATION_DEPTH: usize = 12;
pub const DEFAULT_SEED: u64 = 0x5EED;
pub const KMS_TOL: f64 = 1e-10;

/// Multiplicity space data of one spectral irrep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralEntry {
    pub mult: usize,
    /// `Sp(J_u*J_u)`; has `mult` entries.
    #[serde(rename = "JJ")]
    pub jj: EigenSpectrum,
}

impl SpectralEntry {
    /// Quantum multiplicity `Trace(J_u*J_u)`.
    pub fn q_mult(&self) -> f64 {
        self.jj.sum()
    }
}

/// Label map from the acting group to the target of a tensor equivalence.
#[derive(Clone, Debug, PartialEq)]
pub enum Correspondence {
    Identity,
    Table(BTreeMap<IrrepLabel, IrrepLabel>),
}

impl Correspondence {
    pub fn apply(&self, u: &IrrepLabel) -> Result<IrrepLabel> {
        match self {
            Correspondence::Identity => Ok(u.clone()),
            Correspondence::Table(m) => m
                .get(u)
                .cloned()
                .ok_or_else(|| Error::NotFusionPreserving(format!("`{u}` has no image"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ActionKind {
    /// The quantum group acting on itself.
    Translation,
    /// Relaxed tensor functor through a tensor equivalence onto `target`.
    Bdv { target: Box<QuantumGroupModel>, correspondence: Correspondence },
    Custom { spectrum: BTreeMap<IrrepLabel, SpectralEntry> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralActionModel {
    base: QuantumGroupModel,
    kind: ActionKind,
    relaxed_tensor: bool,
    factorial_assumptions: bool,
}

/// Translation action: `mult(u) = dim(u)`, `Sp(J_u*J_u) = Sp(j_u*j_u)^{-1}`.
pub fn translation_action(model: &QuantumGroupModel) -> SpectralActionModel {
    SpectralActionModel {
        base: model.clone(),
        kind: ActionKind::Translation,
        relaxed_tensor: false,
        factorial_assumptions: false,
    }
}

/// Action obtained by composing a tensor equivalence `source → target` with
/// the embedding functor of the target. The correspondence is checked for
/// fusion preservation on the generator tower.
pub fn bdv_action(
    source: &QuantumGroupModel,
    target: &QuantumGroupModel,
    correspondence: Correspondence,
) -> Result<SpectralActionModel> {
    let labels = source.tower_labels(DEFAULT_TOWER_DEPTH);
    for a in &labels {
        let ta = correspondence.apply(a)?;
        target.fusion().check_label(&ta).map_err(|_| {
            Error::NotFusionPreserving(format!("image `{ta}` of `{a}` is not a target label"))
        })?;
        for b in &labels {
            let Ok(src) = source.fusion().fuse(a, b) else { continue };
            let tb = correspondence.apply(b)?;
            let tgt = target
                .fusion()
                .fuse(&ta, &tb)
                .map_err(|e| Error::NotFusionPreserving(format!("{ta} ⊗ {tb}: {e}")))?;
            let mut mapped = crate::fusion::MultiplicityVector::new();
            for (c, k) in src.iter() {
                mapped.add(correspondence.apply(c)?, k)?;
            }
            if mapped != tgt {
                return Err(Error::NotFusionPreserving(format!(
                    "{a} ⊗ {b} = {src} maps to {mapped}, but {ta} ⊗ {tb} = {tgt}"
                )));
            }
        }
    }
    let action = SpectralActionModel {
        base: source.clone(),
        kind: ActionKind::Bdv { target: Box::new(target.clone()), correspondence },
        relaxed_tensor: true,
        factorial_assumptions: false,
    };
    action.check_invariants(&labels)?;
    Ok(action)
}

/// `S_qU(2)` partner of an SU(2)-type model, `q + 1/q = d(u_1)`.
pub fn su2_partner(source: &QuantumGroupModel) -> Result<QuantumGroupModel> {
    match source.deformation() {
        Some(q) => QuantumGroupModel::sq_u2(q),
        None => Err(Error::InvalidArgument(
            "relaxed-tensor action needs an SU(2)-type model (sq_u2 or ao_f)".into(),
        )),
    }
}

/// Action with explicit per-irrep data; the unit is added when absent.
/// Rejects data violating `mult ≤ q-mult ≤ d`, the conjugate trace relation,
/// or `D_u^{-1} ≤ J*J ≤ D_u`.
pub fn custom_action(
    base: &QuantumGroupModel,
    entries: Vec<(IrrepLabel, SpectralEntry)>,
    relaxed_tensor: bool,
) -> Result<SpectralActionModel> {
    let mut spectrum = BTreeMap::new();
    for (label, entry) in entries {
        base.fusion().check_label(&label)?;
        if spectrum.insert(label.clone(), entry).is_some() {
            return Err(Error::InvalidAction(format!("`{label}` listed twice")));
        }
    }
    let unit = base.unit();
    match spectrum.get(&unit) {
        Some(e) if e.mult != 1 || !e.jj.is_trivial(REL_TOL) => {
            return Err(Error::InvalidAction(format!("unit `{unit}` must have mult 1 and JJ = {{1}}")))
        }
        Some(_) => {}
        None => {
            spectrum.insert(unit, SpectralEntry { mult: 1, jj: EigenSpectrum::ones(1) });
        }
    }
    let labels: Vec<IrrepLabel> = spectrum.keys().cloned().collect();
    let action = SpectralActionModel {
        base: base.clone(),
        kind: ActionKind::Custom { spectrum },
        relaxed_tensor,
        factorial_assumptions: false,
    };
    action.check_invariants(&labels)?;
    Ok(action)
}

/// Gauge action of `A_u(n)` on the Cuntz algebra `O_n`: the spectral
/// subspace of `g^k` is spanned by words of length `k`, one copy, on which
/// the modular operator of the canonical state acts as `n^{-k}`.
pub fn cuntz_action(n: usize, depth: usize) -> Result<SpectralActionModel> {
    if n < 2 {
        return Err(Error::InvalidArgument("Cuntz action needs n ≥ 2".into()));
    }
    let base = QuantumGroupModel::au_f(&vec![1.0; n])?;
    let entries = (1..=depth)
        .map(|k| {
            let label = IrrepLabel::Word(crate::label::Word::power(crate::label::Letter::G, k));
            let jj = EigenSpectrum::from_values(vec![(n as f64).powi(k as i32)])?;
            Ok((label, SpectralEntry { mult: 1, jj }))
        })
        .collect::<Result<Vec<_>>>()?;
    custom_action(&base, entries, false)
}

impl SpectralActionModel {
    pub fn base(&self) -> &QuantumGroupModel {
        &self.base
    }

    pub fn kind(&self) -> &ActionKind {
        &self.kind
    }

    pub fn relaxed_tensor(&self) -> bool {
        self.relaxed_tensor
    }

    /// User assertion that `M` and its centralizer are factors; recorded,
    /// never verified.
    pub fn factorial_assumptions(&self) -> bool {
        self.factorial_assumptions
    }

    pub fn with_factorial_assumptions(mut self, asserted: bool) -> Self {
        self.factorial_assumptions = asserted;
        self
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.kind, ActionKind::Custom { .. })
    }

    /// Spectral data of `u`, `None` when `u` is not spectral.
    pub fn entry(&self, u: &IrrepLabel) -> Result<Option<SpectralEntry>> {
        self.base.fusion().check_label(u)?;
        match &self.kind {
            ActionKind::Translation => Ok(Some(SpectralEntry {
                mult: self.base.intdim(u)? as usize,
                jj: self.base.jj_spectrum(u)?.inverse(),
            })),
            ActionKind::Bdv { target, correspondence } => {
                let t = correspondence.apply(u)?;
                Ok(Some(SpectralEntry {
                    mult: target.intdim(&t)? as usize,
                    jj: target.jj_spectrum(&t)?,
                }))
            }
            ActionKind::Custom { spectrum } => Ok(spectrum.get(u).cloned()),
        }
    }

    pub fn spectral_entry(&self, u: &IrrepLabel) -> Result<SpectralEntry> {
        self.entry(u)?.ok_or_else(|| Error::NotSpectral(u.to_string()))
    }

    /// Integral multiplicity; 0 for non-spectral irreps.
    pub fn mult(&self, u: &IrrepLabel) -> Result<usize> {
        match &self.kind {
            ActionKind::Translation => Ok(self.base.intdim(u)? as usize),
            ActionKind::Bdv { target, correspondence } => {
                self.base.fusion().check_label(u)?;
                Ok(target.intdim(&correspondence.apply(u)?)? as usize)
            }
            ActionKind::Custom { spectrum } => {
                self.base.fusion().check_label(u)?;
                Ok(spectrum.get(u).map_or(0, |e| e.mult))
            }
        }
    }

    /// Spectral labels; the infinite built-in actions are cut at the
    /// generator tower of the given depth.
    pub fn spectral_labels(&self, depth: usize) -> Vec<IrrepLabel> {
        match &self.kind {
            ActionKind::Custom { spectrum } => spectrum.keys().cloned().collect(),
            _ => self.base.tower_labels(depth),
        }
    }

    pub fn default_subset(&self) -> Vec<IrrepLabel> {
        self.spectral_labels(DEFAULT_TOWER_DEPTH)
    }

    /// Certified growth rate of `Mult_u`, when the action determines it.
    pub fn mult_rate_certificate(&self, u: &IrrepLabel) -> Option<f64> {
        match &self.kind {
            ActionKind::Translation => self.base.growth_closed_form(u, GrowthKind::IntegralDim),
            ActionKind::Bdv { target, correspondence } => {
                let t = correspondence.apply(u).ok()?;
                target.growth_closed_form(&t, GrowthKind::IntegralDim)
            }
            ActionKind::Custom { .. } => None,
        }
    }

    /// Validates the invariants on `labels`; see [`custom_action`].
    pub fn check_invariants(&self, labels: &[IrrepLabel]) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidAction(m));
        for u in labels {
            let Some(e) = self.entry(u)? else { continue };
            let at = format!("spectrum entry `{u}`");
            if e.mult == 0 {
                return bad(format!("{at}: mult must be ≥ 1"));
            }
            if e.jj.len() != e.mult {
                return bad(format!("{at}: JJ has {} entries but mult = {}", e.jj.len(), e.mult));
            }
            let qm = e.q_mult();
            let d = self.base.qdim(u)?.value;
            if (e.mult as f64) > qm * (1.0 + REL_TOL) || qm > d * (1.0 + REL_TOL) {
                return bad(format!(
                    "{at}: violates mult ≤ q-mult ≤ d (mult = {}, q-mult = {qm}, d = {d})",
                    e.mult
                ));
            }
            let ubar = self.base.dual(u)?;
            let dual_entry = if ubar == *u { Some(e.clone()) } else { self.entry(&ubar)? };
            if let Some(eb) = dual_entry {
                if !close(qm, eb.jj.sum_inverse(), REL_TOL) {
                    return bad(format!(
                        "{at}: Trace(J*J) = {qm} but Trace((J*J)^-1) on `{ubar}` is {}",
                        eb.jj.sum_inverse()
                    ));
                }
            }
            let b = self.d_certificate(u)?;
            let (lo, hi) = (e.jj.min().expect("nonempty"), e.jj.max().expect("nonempty"));
            if hi > b * (1.0 + REL_TOL) || lo < (1.0 / b) * (1.0 - REL_TOL) {
                return bad(format!(
                    "{at}: Sp(J*J) ⊂ [{lo}, {hi}] leaves [1/D, D] with D ≤ {b}; no ergodic action has this data"
                ));
            }
        }
        Ok(())
    }

    /// Upper bound for `D_u` used in validation: closed form or the
    /// depth-12 certificate, falling back to `d(u) = D_{u,1}` when the
    /// fusion data runs out.
    fn d_certificate(&self, u: &IrrepLabel) -> Result<f64> {
        match growth::d_upper_bound(&self.base, u, VALIDATION_DEPTH) {
            Ok(b) => Ok(b),
            Err(Error::MissingFusion { .. } | Error::SupportLimit { .. } | Error::MixedWord(_)) => {
                Ok(self.base.qdim(u)?.value)
            }
            Err(e) => Err(e),
        }
    }

    /// Certified lower bound for `D_u`.
    pub(crate) fn d_lower_bound(&self, u: &IrrepLabel) -> Result<f64> {
        let (lambda, big_lambda) = self.base.lambda_bounds(u)?;
        let mut lower = big_lambda.max(1.0 / lambda);
        for kind in [GrowthKind::QuantumDim, GrowthKind::IntegralDim] {
            if let Some(c) = self.base.growth_closed_form(u, kind) {
                lower = lower.max(c);
            }
        }
        if let ActionKind::Bdv { target, correspondence } = &self.kind {
            // d is preserved by the tensor equivalence, hence so is D
            let (tl, tb) = target.lambda_bounds(&correspondence.apply(u)?)?;
            lower = lower.max(tb).max(1.0 / tl);
        }
        Ok(lower)
    }
}

/// Element `k̄ ⊗ ψ` of the spectral subspace of one irrep.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralElement {
    pub support: IrrepLabel,
    /// Vector in the multiplicity space `L_u`.
    pub k: DVector<Complex64>,
    /// Vector in the representation space `H_u`.
    pub psi: DVector<Complex64>,
}

fn gaussian_vector<R: Rng>(n: usize, rng: &mut R) -> DVector<Complex64> {
    let v = DVector::from_fn(n, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let norm = v.norm();
    v / Complex64::new(norm, 0.0)
}

impl SpectralElement {
    /// Unit-norm complex Gaussian vectors.
    pub fn random<R: Rng>(support: IrrepLabel, mult: usize, dim: usize, rng: &mut R) -> Self {
        let k = gaussian_vector(mult, rng);
        let psi = gaussian_vector(dim, rng);
        Self { support, k, psi }
    }
}

/// Haar-random unitary (QR of a complex Gaussian matrix).
pub fn random_unitary<R: Rng>(n: usize, rng: &mut R) -> DMatrix<Complex64> {
    let g = DMatrix::from_fn(n, n, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    g.qr().q()
}

/// Operators of the modular theory on one spectral subspace: `j_u*j_u` on
/// `H_u`, `J_u*J_u` on `L_u`, and the norms `‖R_u‖²`, `‖R̄_u‖²`.
/// Inner products are antilinear in the first argument.
#[derive(Clone, Debug)]
pub struct ModularBlock {
    support: IrrepLabel,
    jj: DMatrix<Complex64>,
    jj_inv: DMatrix<Complex64>,
    big_jj: DMatrix<Complex64>,
    r_norm2: f64,
    rbar_norm2: f64,
}

fn diag(values: &[f64]) -> DMatrix<Complex64> {
    DMatrix::from_diagonal(&DVector::from_iterator(
        values.len(),
        values.iter().map(|x| Complex64::new(*x, 0.0)),
    ))
}

fn conjugated(m: &DMatrix<Complex64>, u: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    u.adjoint() * m * u
}

impl ModularBlock {
    pub fn diagonal(support: IrrepLabel, jj: &EigenSpectrum, big_jj: &EigenSpectrum) -> Self {
        let inv: Vec<f64> = jj.values().iter().map(|x| 1.0 / x).collect();
        Self {
            support,
            jj: diag(jj.values()),
            jj_inv: diag(&inv),
            big_jj: diag(big_jj.values()),
            r_norm2: jj.sum(),
            rbar_norm2: jj.sum_inverse(),
        }
    }

    pub fn for_action(action: &SpectralActionModel, u: &IrrepLabel) -> Result<Self> {
        let entry = action.spectral_entry(u)?;
        let jj = action.base().jj_spectrum(u)?;
        Ok(Self::diagonal(u.clone(), &jj, &entry.jj))
    }

    /// Replaces `J*J` by `U* J*J U`.
    pub fn conjugate_multiplicity(&self, u: &DMatrix<Complex64>) -> Self {
        Self { big_jj: conjugated(&self.big_jj, u), ..self.clone() }
    }

    /// Replaces `j*j` by `U* j*j U` (a change of orthonormal basis of `H_u`).
    pub fn conjugate_hilbert(&self, u: &DMatrix<Complex64>) -> Self {
        Self { jj: conjugated(&self.jj, u), jj_inv: conjugated(&self.jj_inv, u), ..self.clone() }
    }

    pub fn mult(&self) -> usize {
        self.big_jj.nrows()
    }

    pub fn dim(&self) -> usize {
        self.jj.nrows()
    }

    /// `ω(a*b) = ‖R_u‖^{-2} (k', J*J k)(ψ, ψ')`.
    pub fn omega_adjoint_product(&self, a: &SpectralElement, b: &SpectralElement) -> Complex64 {
        if a.support != self.support || b.support != self.support {
            return Complex64::new(0.0, 0.0);
        }
        b.k.dotc(&(&self.big_jj * &a.k)) * a.psi.dotc(&b.psi) / self.r_norm2
    }

    /// `ω(ba*) = ‖R̄_u‖^{-2} (k', k)(ψ, (j*j)^{-1} ψ')`.
    pub fn omega_product_adjoint(&self, b: &SpectralElement, a: &SpectralElement) -> Complex64 {
        if a.support != self.support || b.support != self.support {
            return Complex64::new(0.0, 0.0);
        }
        b.k.dotc(&a.k) * a.psi.dotc(&(&self.jj_inv * &b.psi)) / self.rbar_norm2
    }

    /// `σ_{-i}(k̄ ⊗ ψ) = (J*J k)‾ ⊗ j*j ψ`.
    pub fn sigma_minus_i(&self, b: &SpectralElement) -> SpectralElement {
        SpectralElement { support: b.support.clone(), k: &self.big_jj * &b.k, psi: &self.jj * &b.psi }
    }

    /// `|ω(σ_{-i}(b) a*) − ω(a*b)|`.
    pub fn kms_discrepancy(&self, a: &SpectralElement, b: &SpectralElement) -> f64 {
        let lhs = self.omega_product_adjoint(&self.sigma_minus_i(b), a);
        let rhs = self.omega_adjoint_product(a, b);
        (lhs - rhs).norm()
    }

    /// Trial `i` of a seeded run; independent of scheduling.
    pub fn random_pair(&self, seed: u64, trial: u64) -> (SpectralElement, SpectralElement) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial);
        let a = SpectralElement::random(self.support.clone(), self.mult(), self.dim(), &mut rng);
        let b = SpectralElement::random(self.support.clone(), self.mult(), self.dim(), &mut rng);
        (a, b)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KmsReport {
    pub irrep: IrrepLabel,
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
    pub max_violation: f64,
    pub passed: bool,
}

pub fn kms_check(
    action: &SpectralActionModel,
    u: &IrrepLabel,
    trials: usize,
    tol: f64,
    seed: u64,
) -> Result<KmsReport> {
    kms_check_with(action, u, trials, tol, seed, Execution::default())
}

pub fn kms_check_with(
    action: &SpectralActionModel,
    u: &IrrepLabel,
    trials: usize,
    tol: f64,
    seed: u64,
    exec: Execution,
) -> Result<KmsReport> {
    let block = ModularBlock::for_action(action, u)?;
    Ok(kms_check_block(&block, trials, tol, seed, exec))
}

/// Evaluates both sides of the KMS identity on `trials` random pairs.
pub fn kms_check_block(block: &ModularBlock, trials: usize, tol: f64, seed: u64, exec: Execution) -> KmsReport {
    let max_violation = exec
        .map_range(0..trials, |i| {
            let (a, b) = block.random_pair(seed, i as u64);
            block.kms_discrepancy(&a, &b)
        })
        .into_iter()
        .fold(0.0, f64::max);
    KmsReport {
        irrep: block.support.clone(),
        trials,
        seed,
        tol,
        max_violation,
        passed: max_violation <= tol,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Thm48Report {
    pub irrep: IrrepLabel,
    pub n_max: usize,
    pub jj_min: f64,
    pub jj_max: f64,
    /// `min_{n ≤ N} D_{u,n}^{1/n} ≥ D_u`.
    pub d_upper: f64,
    /// Certified lower bound for `D_u`.
    pub d_lower: f64,
    /// `1/B ≤ J*J ≤ B`.
    pub bound_holds: bool,
    pub mult_certified_one: bool,
    /// Relaxed tensor with `Mult_u = 1`, and the extreme eigenvalues of
    /// `J*J` equal `D_u` and `1/D_u`.
    pub equality_b: bool,
}

/// Checks `D_u^{-1} ≤ J_u*J_u ≤ D_u` against the depth-`N` certificate and,
/// for relaxed tensor actions with `Mult_u = 1`, that the bounds are attained.
pub fn verify_thm48(action: &SpectralActionModel, u: &IrrepLabel, n_max: usize) -> Result<Thm48Report> {
    let entry = action.spectral_entry(u)?;
    let (_, d_upper) = growth::growth_rate_bracket(action.base(), u, n_max)?;
    let d_lower = action.d_lower_bound(u)?;
    let (lo, hi) = (entry.jj.min().expect("nonempty"), entry.jj.max().expect("nonempty"));
    let bound_holds = hi <= d_upper * (1.0 + REL_TOL) && lo >= (1.0 / d_upper) * (1.0 - REL_TOL);
    let mult_certified_one = action
        .mult_rate_certificate(u)
        .is_some_and(|c| c <= 1.0 + VERDICT_TOL);
    let equality_b = action.relaxed_tensor()
        && mult_certified_one
        && close(hi, d_lower, REL_TOL)
        && close(lo, 1.0 / d_lower, REL_TOL);
    Ok(Thm48Report {
        irrep: u.clone(),
        n_max,
        jj_min: lo,
        jj_max: hi,
        d_upper,
        d_lower,
        bound_holds,
        mult_certified_one,
        equality_b,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(r: u32) -> IrrepLabel {
        IrrepLabel::spin(r)
    }

    #[test]
    fn translation_inverts_spectrum() {
        let m = QuantumGroupModel::ao_f(&[0.25, 1.0, 4.0]).unwrap();
        let a = translation_action(&m);
        let e = a.spectral_entry(&u(1)).unwrap();
        assert_eq!(e.mult, 3);
        assert_eq!(e.jj.values(), &[0.25, 1.0, 4.0]);
        let k = translation_action(&QuantumGroupModel::au_f(&[1.0, 1.0]).unwrap());
        assert!(k.spectral_entry(&IrrepLabel::word("gg")).unwrap().jj.is_trivial(REL_TOL));
    }

    #[test]
    fn translation_saturates_q_mult() {
        let m = QuantumGroupModel::sq_u2(0.5).unwrap();
        let a = translation_action(&m);
        for r in 0..8 {
            let e = a.spectral_entry(&u(r)).unwrap();
            assert_eq!(e.q_mult(), m.qdim(&u(r)).unwrap().value);
        }
    }

    #[test]
    fn bdv_ao_f_via_sq_u2() {
        let src = QuantumGroupModel::ao_f(&[0.5, 1.0, 2.0]).unwrap();
        let tgt = su2_partner(&src).unwrap();
        let a = bdv_action(&src, &tgt, Correspondence::Identity).unwrap();
        assert!(a.relaxed_tensor());
        let q = src.deformation().unwrap();
        let e = a.spectral_entry(&u(3)).unwrap();
        assert_eq!(e.mult, 4);
        assert_eq!(e.jj.max().unwrap(), q.powi(-3));
        assert_eq!(a.mult_rate_certificate(&u(3)), Some(1.0));
    }

    #[test]
    fn bdv_rejects_wrong_target() {
        let src = QuantumGroupModel::ao_f(&[0.5, 1.0, 2.0]).unwrap();
        // wrong q: q-mult exceeds d
        let tgt = QuantumGroupModel::sq_u2(0.1).unwrap();
        assert!(matches!(bdv_action(&src, &tgt, Correspondence::Identity), Err(Error::InvalidAction(_))));
        let shift: BTreeMap<_, _> = (0..=8).map(|r| (u(r), u(r + 1))).collect();
        let tgt = su2_partner(&src).unwrap();
        assert!(matches!(
            bdv_action(&src, &tgt, Correspondence::Table(shift)),
            Err(Error::NotFusionPreserving(_))
        ));
    }

    #[test]
    fn custom_validation() {
        let m = QuantumGroupModel::au_f(&[1.0, 1.0]).unwrap();
        let g = IrrepLabel::word("g");
        let entry = |mult, v: Vec<f64>| SpectralEntry { mult, jj: EigenSpectrum::from_values(v).unwrap() };
        // q-mult 2.5 > d = 2
        assert!(custom_action(&m, vec![(g.clone(), entry(2, vec![2.0, 0.5]))], false).is_err());
        // cardinality mismatch
        assert!(custom_action(&m, vec![(g.clone(), entry(2, vec![1.0]))], false).is_err());
        // J*J above D on a Kac model with subexponential dims
        let k = QuantumGroupModel::sq_u2(-1.0).unwrap();
        let err = custom_action(&k, vec![(u(2), entry(2, vec![2.0, 0.5]))], false).unwrap_err();
        assert!(err.to_string().contains("[1/D, D]"), "{err}");
        let ok = custom_action(&m, vec![(g.clone(), entry(1, vec![2.0]))], false).unwrap();
        assert_eq!(ok.mult(&m.unit()).unwrap(), 1);
        assert_eq!(ok.mult(&IrrepLabel::word("G")).unwrap(), 0);
        assert!(matches!(ok.spectral_entry(&IrrepLabel::word("G")), Err(Error::NotSpectral(_))));
    }

    #[test]
    fn kms_identity_holds() {
        let m = QuantumGroupModel::sq_u2(0.5).unwrap();
        let a = translation_action(&m);
        let r = kms_check(&a, &u(1), 1000, KMS_TOL, DEFAULT_SEED).unwrap();
        assert!(r.passed, "{r:?}");
        let seq = kms_check_with(&a, &u(1), 1000, KMS_TOL, DEFAULT_SEED, Execution::Sequential).unwrap();
        assert_eq!(r, seq);
    }

    #[test]
    fn kms_detects_non_standard_norms() {
        // a non-standard normalization breaks the identity
        let jj = EigenSpectrum::from_values(vec![0.5, 2.0]).unwrap();
        let mut block = ModularBlock::diagonal(u(1), &jj, &jj.inverse());
        block.rbar_norm2 *= 2.0;
        let r = kms_check_block(&block, 50, KMS_TOL, 1, Execution::Sequential);
        assert!(!r.passed);
    }

    #[test]
    fn tracial_sides_agree() {
        let m = QuantumGroupModel::sq_u2(1.0).unwrap();
        let block = ModularBlock::for_action(&translation_action(&m), &u(2)).unwrap();
        let (a, b) = block.random_pair(7, 0);
        let ab = block.omega_adjoint_product(&a, &b);
        let ba = block.omega_product_adjoint(&b, &a);
        assert!((ab - ba).norm() < 1e-14);
    }

    #[test]
    fn thm48_on_cuntz() {
        let a = cuntz_action(2, 3).unwrap();
        let r = verify_thm48(&a, &IrrepLabel::word("g"), 12).unwrap();
        assert!(r.bound_holds);
        assert!(!r.equality_b);
        assert_eq!(r.jj_max, 2.0);
    }
}
