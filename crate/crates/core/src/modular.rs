//! Point spectrum of the modular operator on the spectral subalgebra,
//! the trace criterion, detection of the Connes invariant subgroup and
//! lower bounds for `λ` in type III_λ.
//!
//! Factoriality of `M` and of its centralizer is never computed; reports
//! carry the user's assertion along.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::action::SpectralActionModel;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::growth::{self, GrowthKind, Verdict, VERDICT_TOL};
use crate::label::IrrepLabel;
use crate::spectrum::{close, EigenSpectrum, REL_TOL};

pub const SUBGROUP_TOL: f64 = 1e-7;
const MAX_DENOMINATOR: i64 = 100;
/// Rational fits off by less than this multiple of `tol` are "undetermined"
/// rather than III_1. Kept small: denominators up to 100 fit any real to
/// about 1e-4.
const UNSTABLE_FACTOR: f64 = 10.0;
/// Relative gap needed to count `d(u) > dim(u)` under floating data.
pub const QDIM_GAP: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "type")]
pub enum Classification {
    Trace,
    #[serde(rename = "III_lambda_candidate")]
    IIILambdaCandidate { lambda: f64 },
    #[serde(rename = "III_1_candidate")]
    III1Candidate,
    Undetermined,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Classification::Trace => f.write_str("trace"),
            Classification::IIILambdaCandidate { lambda } => write!(f, "III_lambda candidate (lambda = {lambda})"),
            Classification::III1Candidate => f.write_str("III_1 candidate"),
            Classification::Undetermined => f.write_str("undetermined"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IrrepDelta {
    pub irrep: IrrepLabel,
    pub eigenvalues: EigenSpectrum,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModularSpectrumReport {
    pub per_irrep: Vec<IrrepDelta>,
    /// Union over the subset, unit included.
    pub global: EigenSpectrum,
    pub classification: Classification,
    pub factorial_assumptions: bool,
    pub assumptions_note: String,
}

impl ModularSpectrumReport {
    /// `(log x, multiplicity)` with equal eigenvalues merged.
    pub fn plot_data(&self) -> Vec<(f64, usize)> {
        let mut out: Vec<(f64, usize)> = Vec::new();
        for x in self.global.values() {
            match out.last_mut() {
                Some((lx, k)) if close(lx.exp(), *x, REL_TOL) => *k += 1,
                _ => out.push((x.ln(), 1)),
            }
        }
        out
    }
}

fn assumptions_note(asserted: bool) -> String {
    if asserted {
        "factoriality of M and of the centralizer asserted by the user, not verified".into()
    } else {
        "factoriality of M and of the centralizer not asserted; the classification is only a candidate".into()
    }
}

/// Spectrum of `Δ_ω` on the `u`-subspace: products of `Sp((J*J)^{-1})`
/// with `Sp((j*j)^{-1})`.
pub fn delta_on_irrep(action: &SpectralActionModel, u: &IrrepLabel) -> Result<EigenSpectrum> {
    let entry = action.spectral_entry(u)?;
    let jj = action.base().jj_spectrum(u)?;
    Ok(entry.jj.inverse().tensor(&jj.inverse()))
}

/// Point spectrum of `σ_i` on the spectral subalgebra over `subset`
/// (default: [`SpectralActionModel::default_subset`]).
pub fn delta_point_spectrum(
    action: &SpectralActionModel,
    subset: Option<&[IrrepLabel]>,
) -> Result<ModularSpectrumReport> {
    delta_point_spectrum_with(action, subset, Execution::default())
}

pub fn delta_point_spectrum_with(
    action: &SpectralActionModel,
    subset: Option<&[IrrepLabel]>,
    exec: Execution,
) -> Result<ModularSpectrumReport> {
    let default;
    let labels = match subset {
        Some(s) => s,
        None => {
            default = action.default_subset();
            &default[..]
        }
    };
    let per_irrep = exec
        .map(labels, |u| {
            Ok(IrrepDelta { irrep: u.clone(), eigenvalues: delta_on_irrep(action, u)? })
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let unit = action.base().unit();
    let mut global = if labels.contains(&unit) {
        EigenSpectrum::from_values(vec![]).expect("empty is valid")
    } else {
        EigenSpectrum::ones(1)
    };
    for d in &per_irrep {
        global = global.union(&d.eigenvalues);
    }
    let classification = classify(&global, SUBGROUP_TOL)?;
    Ok(ModularSpectrumReport {
        per_irrep,
        global,
        classification,
        factorial_assumptions: action.factorial_assumptions(),
        assumptions_note: assumptions_note(action.factorial_assumptions()),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TraceCondition {
    /// `d(u) = dim(u)` fails: `j_u` is not antiunitary.
    A,
    /// `J_u` is not antiunitary.
    B,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TracialReport {
    pub tracial: bool,
    pub witness: Option<IrrepLabel>,
    pub condition: Option<TraceCondition>,
}

/// The invariant state is a trace iff `j_u` and `J_u` are antiunitary for
/// every spectral `u`. Checked on the default subset.
pub fn is_tracial(action: &SpectralActionModel) -> Result<TracialReport> {
    for u in action.default_subset() {
        let Some(entry) = action.entry(&u)? else { continue };
        let failed = if !action.base().jj_spectrum(&u)?.is_trivial(REL_TOL) {
            Some(TraceCondition::A)
        } else if !entry.jj.is_trivial(REL_TOL) {
            Some(TraceCondition::B)
        } else {
            None
        };
        if let Some(c) = failed {
            return Ok(TracialReport { tracial: false, witness: Some(u), condition: Some(c) });
        }
    }
    Ok(TracialReport { tracial: true, witness: None, condition: None })
}

/// Classifies the subgroup of `R_+^*` generated by the spectrum.
pub fn connes_subgroup(report: &ModularSpectrumReport, tol: f64) -> Result<Classification> {
    classify(&report.global, tol)
}

fn classify(global: &EigenSpectrum, tol: f64) -> Result<Classification> {
    if global.is_empty() {
        return Err(Error::EmptySpectrum);
    }
    if let Some(ex) = global.exact() {
        let g = ex.exponents.iter().fold(0i64, |g, e| g.gcd(e));
        if g == 0 || ex.base == 1.0 {
            return Ok(Classification::Trace);
        }
        return Ok(Classification::IIILambdaCandidate { lambda: ex.base.powi(g as i32) });
    }
    let logs: Vec<f64> = global.values().iter().map(|x| x.ln()).filter(|l| l.abs() > tol).collect();
    let Some(step) = logs.iter().map(|l| l.abs()).min_by(f64::total_cmp) else {
        return Ok(Classification::Trace);
    };
    let mut denominators = Vec::with_capacity(logs.len());
    let mut numerators = Vec::with_capacity(logs.len());
    let mut worst = 0.0f64;
    for l in &logs {
        let r = l / step;
        let (p, q, err) = rationalize(r);
        worst = worst.max(err);
        numerators.push(p);
        denominators.push(q);
    }
    if worst > UNSTABLE_FACTOR * tol {
        return Ok(Classification::III1Candidate);
    }
    if worst > tol {
        return Ok(Classification::Undetermined);
    }
    let den = denominators.iter().fold(1i64, |a, b| a.lcm(b));
    let g = numerators
        .iter()
        .zip(&denominators)
        .fold(0i64, |g, (p, q)| g.gcd(&(p * (den / q))));
    let generator = step * g as f64 / den as f64;
    let lambda = (-generator).exp();
    // report an actual eigenvalue when one realizes the generator
    let snapped = global
        .values()
        .iter()
        .map(|&x| if x < 1.0 { x } else { 1.0 / x })
        .find(|x| close(*x, lambda, tol))
        .unwrap_or(lambda);
    Ok(Classification::IIILambdaCandidate { lambda: snapped })
}

/// Best `p/q` with `q ≤ 100`, and its absolute error.
fn rationalize(r: f64) -> (i64, i64, f64) {
    let mut best = (r.round() as i64, 1, (r - r.round()).abs());
    for q in 2..=MAX_DENOMINATOR {
        let p = (r * q as f64).round();
        let err = (r - p / q as f64).abs();
        if err < best.2 * 0.5 {
            best = (p as i64, q, err);
        }
    }
    best
}

/// `λ ≥` the type-III bound forces nothing here; a smaller `λ` means the
/// assumptions of the bound (factoriality) cannot hold.
pub fn consistent_with_bound(classification: &Classification, bound: f64) -> bool {
    match classification {
        Classification::IIILambdaCandidate { lambda } => *lambda >= bound * (1.0 - REL_TOL),
        _ => true,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Type3Row {
    pub irrep: IrrepLabel,
    pub qdim: f64,
    pub intdim: u64,
    pub lambda: f64,
    pub big_lambda: f64,
    /// Upper bound for `D_u` used in the denominator.
    pub d_upper: f64,
    /// `min{λ_u, Λ_u^{-1}} / d_upper`.
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Type3Report {
    pub bound: f64,
    pub best_irrep: IrrepLabel,
    pub n_max: usize,
    pub rows: Vec<Type3Row>,
    /// Bound reaches 1: type III_1 under the factoriality assumptions.
    pub iii_1_forced: bool,
    pub factorial_assumptions: bool,
}

/// `sup min{λ_u, Λ_u^{-1}} / D_u` over spectral `u` of the default subset
/// with `d(u) > dim(u)`. `D_u` is replaced by the closed form or the
/// depth-`N` certificate, so the value is a valid lower bound for `λ`.
pub fn type3_lower_bound(action: &SpectralActionModel, n_max: usize) -> Result<Type3Report> {
    let base = action.base();
    let mut rows = Vec::new();
    for u in action.default_subset() {
        if action.entry(&u)?.is_none() {
            continue;
        }
        let qdim = base.qdim(&u)?.value;
        let intdim = base.intdim(&u)?;
        if qdim <= intdim as f64 * (1.0 + QDIM_GAP) {
            continue;
        }
        let (lambda, big_lambda) = base.lambda_bounds(&u)?;
        let d_upper = growth::d_upper_bound(base, &u, n_max)?;
        let value = lambda.min(1.0 / big_lambda) / d_upper;
        rows.push(Type3Row { irrep: u, qdim, intdim, lambda, big_lambda, d_upper, value });
    }
    let best = rows
        .iter()
        .max_by(|a, b| a.value.total_cmp(&b.value))
        .ok_or(Error::NoQualifyingIrrep)?;
    Ok(Type3Report {
        bound: best.value,
        best_irrep: best.irrep.clone(),
        n_max,
        iii_1_forced: best.value >= 1.0 - VERDICT_TOL,
        factorial_assumptions: action.factorial_assumptions(),
        rows,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KacBoundReport {
    pub bound: f64,
    pub irrep: IrrepLabel,
    pub intdim: u64,
}

/// For Kac type bases: `λ ≥ 1/n`, `n` the least dimension of a spectral
/// irrep on which the modular group acts nontrivially.
pub fn kac_bound(action: &SpectralActionModel) -> Result<KacBoundReport> {
    if !action.base().is_kac() {
        return Err(Error::NotKac);
    }
    let mut best: Option<(u64, IrrepLabel)> = None;
    for u in action.default_subset() {
        let Some(entry) = action.entry(&u)? else { continue };
        if entry.jj.is_trivial(REL_TOL) {
            continue;
        }
        let n = action.base().intdim(&u)?;
        if best.as_ref().is_none_or(|(m, _)| n < *m) {
            best = Some((n, u));
        }
    }
    let (n, irrep) = best.ok_or(Error::Tracial)?;
    Ok(KacBoundReport { bound: 1.0 / n as f64, irrep, intdim: n })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "outcome")]
pub enum KacNecessity {
    /// The action is tracial; nothing to check.
    Vacuous,
    /// Some spectral irrep has certified exponential `Dim_u`.
    Certified { witness: IrrepLabel, lower_bound: f64 },
    /// No certificate either way at this depth.
    Undetermined,
    /// Every spectral irrep has subexponential `Dim_u`.
    Violated,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KacNecessityReport {
    pub tracial: bool,
    pub n_max: usize,
    pub result: KacNecessity,
}

impl KacNecessityReport {
    pub fn passed(&self) -> bool {
        matches!(self.result, KacNecessity::Vacuous | KacNecessity::Certified { .. })
    }
}

/// A non-tracial action of a Kac type quantum group needs a spectral irrep
/// of exponentially growing integral dimension.
pub fn kac_exponential_necessity(action: &SpectralActionModel, n_max: usize) -> Result<KacNecessityReport> {
    if !action.base().is_kac() {
        return Err(Error::NotKac);
    }
    let tracial = is_tracial(action)?.tracial;
    if tracial {
        return Ok(KacNecessityReport { tracial, n_max, result: KacNecessity::Vacuous });
    }
    let mut undetermined = false;
    let unit = action.base().unit();
    for u in action.default_subset() {
        if u == unit || action.entry(&u)?.is_none() {
            continue;
        }
        let r = match growth::growth_sequence(action.base(), &u, n_max, GrowthKind::IntegralDim, None) {
            Ok(r) => r,
            Err(Error::MissingFusion { .. } | Error::SupportLimit { .. }) => {
                undetermined = true;
                continue;
            }
            Err(e) => return Err(e),
        };
        match r.verdict {
            Verdict::Exponential if r.lower_bound > 1.0 + VERDICT_TOL => {
                let result = KacNecessity::Certified { witness: u, lower_bound: r.lower_bound };
                return Ok(KacNecessityReport { tracial, n_max, result });
            }
            Verdict::Subexponential => {}
            _ => undetermined = true,
        }
    }
    let result = if undetermined { KacNecessity::Undetermined } else { KacNecessity::Violated };
    Ok(KacNecessityReport { tracial, n_max, result })
}
