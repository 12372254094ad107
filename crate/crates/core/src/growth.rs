//! Growth of quantum dimensions, integral dimensions and multiplicities
//! along tensor powers, with Fekete brackets for the limits.
//!
//! `D_{u,n}` and `Dim_{u,n}` are submultiplicative, so the infimum of their
//! `n`-th roots over `n ≤ N` is a certified upper bound for the limit. The
//! quantum-dimension lower endpoint is `Λ_u` (`D_{u,n} ≥ Λ_u^n`).

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::action::SpectralActionModel;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::label::IrrepLabel;
use crate::model::QuantumGroupModel;
use crate::spectrum::{close, REL_TOL};

/// Distance from 1 below which a growth rate counts as subexponential.
pub const VERDICT_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GrowthKind {
    QuantumDim,
    IntegralDim,
    Multiplicity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Subexponential,
    Exponential,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthPoint {
    pub n: usize,
    pub value: f64,
    pub root: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthReport {
    pub kind: GrowthKind,
    pub irrep: IrrepLabel,
    pub sequence: Vec<GrowthPoint>,
    /// `min_n value^{1/n}` (quantum/integral), or the `D_u` certificate
    /// for multiplicities (`Mult_u ≤ D_u`).
    pub upper_bound: f64,
    /// `Λ_u` for quantum dimensions; the closed-form rate (or 1) for
    /// integral dimensions; the action's certified rate (or 0) for multiplicities.
    pub lower_bound: f64,
    /// Growth rate known in closed form for built-in families.
    #[serde(default)]
    pub closed_form: Option<f64>,
    /// Tail-window minimum of roots; a liminf estimate, not a certificate.
    #[serde(default)]
    pub estimate: Option<f64>,
    pub verdict: Verdict,
}

impl GrowthReport {
    /// `value(m+n) ≤ value(m)·value(n)` for all `m + n ≤ N`.
    pub fn is_submultiplicative(&self, tol: f64) -> bool {
        let v = |n: usize| self.sequence[n - 1].value;
        let len = self.sequence.len();
        (1..=len).all(|m| (1..=len - m).all(|n| v(m + n) <= v(m) * v(n) * (1.0 + tol)))
    }

    /// CSV with columns `n,value,root,lower,upper`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,value,root,lower,upper\n");
        for p in &self.sequence {
            writeln!(out, "{},{},{},{},{}", p.n, p.value, p.root, self.lower_bound, self.upper_bound)
                .expect("write to string");
        }
        out
    }
}

fn verdict(lower: f64, upper: f64, closed: Option<f64>) -> Verdict {
    if upper <= 1.0 + VERDICT_TOL {
        Verdict::Subexponential
    } else if lower > 1.0 + VERDICT_TOL {
        Verdict::Exponential
    } else {
        match closed {
            Some(c) if c <= 1.0 + VERDICT_TOL => Verdict::Subexponential,
            Some(_) => Verdict::Exponential,
            None => Verdict::Undetermined,
        }
    }
}

fn min_root(seq: &[GrowthPoint]) -> f64 {
    seq.iter().map(|p| p.root).fold(f64::INFINITY, f64::min)
}

/// Per-`n` maxima of `value_of` over the support of `u^{⊗n}`, `1 ≤ n ≤ N`.
fn max_sequence<F>(
    model: &QuantumGroupModel,
    u: &IrrepLabel,
    n_max: usize,
    exec: Execution,
    value_of: F,
) -> Result<Vec<GrowthPoint>>
where
    F: Fn(&IrrepLabel) -> Result<f64> + Sync + Send,
{
    if n_max == 0 {
        return Err(Error::InvalidArgument("growth depth N must be ≥ 1".into()));
    }
    let tower = model.fusion().power_tower(u, n_max)?;
    exec.try_map_range(1..n_max + 1, |n| {
        let mut best = 0.0f64;
        for v in tower[n].labels() {
            best = best.max(value_of(v)?);
        }
        Ok(GrowthPoint { n, value: best, root: best.powf(1.0 / n as f64) })
    })
}

/// Certified rate of `Mult_u` for built-in actions: the integral-dimension
/// rate of the base (translation) or of the target image (relaxed tensor).
pub fn mult_rate_certificate(action: &SpectralActionModel, u: &IrrepLabel) -> Option<f64> {
    action.mult_rate_certificate(u)
}

pub fn growth_sequence(
    model: &QuantumGroupModel,
    u: &IrrepLabel,
    n_max: usize,
    kind: GrowthKind,
    action: Option<&SpectralActionModel>,
) -> Result<GrowthReport> {
    growth_sequence_with(model, u, n_max, kind, action, Execution::default())
}

pub fn growth_sequence_with(
    model: &QuantumGroupModel,
    u: &IrrepLabel,
    n_max: usize,
    kind: GrowthKind,
    action: Option<&SpectralActionModel>,
    exec: Execution,
) -> Result<GrowthReport> {
    let qdim_seq = || max_sequence(model, u, n_max, exec, |v| Ok(model.qdim(v)?.value));
    let (sequence, upper, lower, closed, estimate) = match kind {
        GrowthKind::QuantumDim => {
            let seq = qdim_seq()?;
            let upper = min_root(&seq);
            let (_, big_lambda) = model.lambda_bounds(u)?;
            (seq, upper, big_lambda, model.growth_closed_form(u, kind), None)
        }
        GrowthKind::IntegralDim => {
            let seq = max_sequence(model, u, n_max, exec, |v| Ok(model.intdim(v)? as f64))?;
            let upper = min_root(&seq);
            let closed = model.growth_closed_form(u, kind);
            (seq, upper, closed.unwrap_or(1.0), closed, None)
        }
        GrowthKind::Multiplicity => {
            let action = action.ok_or_else(|| {
                Error::InvalidArgument("multiplicity growth needs an action model".into())
            })?;
            let seq = max_sequence(model, u, n_max, exec, |v| Ok(action.mult(v)? as f64))?;
            let d_upper = min_root(&qdim_seq()?);
            let cert = action.mult_rate_certificate(u);
            let upper = cert.map_or(d_upper, |c| c.min(d_upper));
            let tail = n_max.div_ceil(2);
            let estimate = min_root(&seq[n_max - tail..]);
            (seq, upper, cert.unwrap_or(0.0), cert, Some(estimate))
        }
    };
    Ok(GrowthReport {
        kind,
        irrep: u.clone(),
        verdict: verdict(lower, upper, closed),
        sequence,
        upper_bound: upper,
        lower_bound: lower,
        closed_form: closed,
        estimate,
    })
}

/// `[Λ_u, min_{n ≤ N} D_{u,n}^{1/n}]`, an interval containing `D_u`.
pub fn growth_rate_bracket(model: &QuantumGroupModel, u: &IrrepLabel, n_max: usize) -> Result<(f64, f64)> {
    let r = growth_sequence(model, u, n_max, GrowthKind::QuantumDim, None)?;
    Ok((r.lower_bound, r.upper_bound))
}

/// Best available upper bound for `D_u`: the closed form when known,
/// otherwise the depth-`N` Fekete certificate.
pub fn d_upper_bound(model: &QuantumGroupModel, u: &IrrepLabel, n_max: usize) -> Result<f64> {
    let (_, fekete) = growth_rate_bracket(model, u, n_max)?;
    Ok(match model.growth_closed_form(u, GrowthKind::QuantumDim) {
        Some(c) => c.min(fekete),
        None => fekete,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Prop43Report {
    pub irrep: IrrepLabel,
    pub n_max: usize,
    /// `λ_u`, `Λ_u`.
    pub lambda: f64,
    pub big_lambda: f64,
    /// Certified interval for `D_u`.
    pub d_lower: f64,
    pub d_upper: f64,
    pub dim_verdict: Verdict,
    /// `D_{u,n}^{1/n} ≥ Λ_u` and `D_{ū,n}^{1/n} ≥ λ_u^{-1}` for all `n ≤ N`.
    pub holds: bool,
    /// `D_u^{-1} = λ_u` and `Λ_u = D_u` certified.
    pub equality_detected: bool,
    /// `D_u^{-1} < λ_u` and `Λ_u < D_u` certified, through `Dim_u > 1` or
    /// a closed form for `D_u`.
    pub extremes_strict: bool,
    /// `λ_u Λ_u = 1`.
    pub middle_equality: bool,
    pub violations: Vec<String>,
}

/// Checks `D_u^{-1} ≤ λ_u ≤ Λ_u ≤ D_u` on the first `N` tensor powers.
///
/// Equality needs subexponential `Dim_u`, in which case
/// `D_{u,n} ≤ Λ_u^n Dim_{u,n}` collapses the bracket onto `Λ_u`.
pub fn verify_prop43(model: &QuantumGroupModel, u: &IrrepLabel, n_max: usize) -> Result<Prop43Report> {
    let ubar = model.dual(u)?;
    let (lambda, big_lambda) = model.lambda_bounds(u)?;
    let d = growth_sequence(model, u, n_max, GrowthKind::QuantumDim, None)?;
    let dbar = growth_sequence(model, &ubar, n_max, GrowthKind::QuantumDim, None)?;
    let dim = growth_sequence(model, u, n_max, GrowthKind::IntegralDim, None)?;
    let dimbar = growth_sequence(model, &ubar, n_max, GrowthKind::IntegralDim, None)?;

    let mut violations = Vec::new();
    for (seq, bound, name) in [(&d, big_lambda, "Λ_u"), (&dbar, 1.0 / lambda, "1/λ_u")] {
        for p in &seq.sequence {
            if p.root < bound * (1.0 - REL_TOL) {
                violations.push(format!("{}: D^(1/n) = {} < {name} = {bound} at n = {}", seq.irrep, p.root, p.n));
            }
        }
    }

    let best_upper = |r: &GrowthReport| r.closed_form.map_or(r.upper_bound, |c| c.min(r.upper_bound));
    let d_upper = best_upper(&d).min(big_lambda * best_upper(&dim));
    let dbar_upper = best_upper(&dbar).min((1.0 / lambda) * best_upper(&dimbar));
    let dim_lower = dim.lower_bound.max(dimbar.lower_bound);
    let closed = d.closed_form.unwrap_or(0.0).max(dbar.closed_form.unwrap_or(0.0));
    let d_lower = big_lambda.max(1.0 / lambda).max(dim_lower).max(closed);

    let collapsed = d_upper <= big_lambda * (1.0 + VERDICT_TOL)
        && dbar_upper <= (1.0 / lambda) * (1.0 + VERDICT_TOL);
    Ok(Prop43Report {
        irrep: u.clone(),
        n_max,
        lambda,
        big_lambda,
        d_lower,
        d_upper: d_upper.min(dbar_upper),
        dim_verdict: dim.verdict,
        holds: violations.is_empty(),
        equality_detected: dim.verdict == Verdict::Subexponential && collapsed,
        extremes_strict: d_lower > big_lambda.max(1.0 / lambda) * (1.0 + VERDICT_TOL),
        middle_equality: close(lambda * big_lambda, 1.0, REL_TOL),
        violations,
    })
}
