//! Quantum group models: fusion rules plus quantum dimensions, integral
//! dimensions and the spectra of `j_u*j_u` for standard solutions.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fusion::{FusionKind, FusionSystem, FusionTable};
use crate::growth::GrowthKind;
use crate::label::{IrrepLabel, Letter};
use crate::laurent::LaurentPoly;
use crate::spectrum::{close, EigenSpectrum, REL_TOL};

/// Exact quantum dimension `poly(base)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExactQDim {
    pub base: f64,
    pub poly: LaurentPoly,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuantumDim {
    pub value: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<ExactQDim>,
}

impl QuantumDim {
    fn exact(base: f64, poly: LaurentPoly) -> Self {
        Self { value: poly.eval(base), exact: Some(ExactQDim { base, poly }) }
    }

    fn numeric(value: f64) -> Self {
        Self { value, exact: None }
    }
}

/// Per-irrep data of a table-driven model.
#[derive(Clone, Debug, PartialEq)]
pub struct TableIrrepData {
    pub dim: u64,
    pub qdim: QuantumDim,
    pub jj: Option<EigenSpectrum>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyKind {
    #[serde(rename = "sq_u2")]
    SqU2,
    #[serde(rename = "ao_f")]
    AoF,
    #[serde(rename = "au_f")]
    AuF,
    #[serde(rename = "table")]
    Table,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    /// `S_qU(2)`, `0 < |q| ≤ 1`; only `|q|` enters dimensions and spectra.
    SqU2 { q: f64 },
    /// `A_o(F)` given by the eigenvalues of `F*F`, sorted ascending.
    AoF { fstarf: Vec<f64> },
    /// `A_u(F)` given by the eigenvalues of `F*F`, sorted ascending.
    AuF { fstarf: Vec<f64> },
    Table { irreps: Arc<BTreeMap<String, TableIrrepData>> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuantumGroupModel {
    family: Family,
    fusion: FusionSystem,
}

fn invalid<T>(msg: String) -> Result<T> {
    Err(Error::InvalidModel(msg))
}

fn check_eigs(eigs: &[f64], min_rank: usize) -> Result<Vec<f64>> {
    if eigs.len() < min_rank {
        return invalid(format!("F*F needs at least {min_rank} eigenvalues, got {}", eigs.len()));
    }
    if let Some(bad) = eigs.iter().find(|x| !(x.is_finite() && **x > 0.0)) {
        return invalid(format!("F*F eigenvalues must be finite and > 0, got {bad}"));
    }
    let tr: f64 = eigs.iter().sum();
    let tr_inv: f64 = eigs.iter().map(|x| 1.0 / x).sum();
    if !close(tr, tr_inv, REL_TOL) {
        return invalid(format!(
            "F is not normalized: Trace(F*F) = {tr} but Trace((F*F)^-1) = {tr_inv}"
        ));
    }
    let mut v = eigs.to_vec();
    v.sort_by(f64::total_cmp);
    Ok(v)
}

impl QuantumGroupModel {
    pub fn sq_u2(q: f64) -> Result<Self> {
        if !(q.is_finite() && q != 0.0 && q.abs() <= 1.0) {
            return invalid(format!("S_qU(2) needs 0 < |q| ≤ 1, got q = {q}"));
        }
        Ok(Self { family: Family::SqU2 { q }, fusion: FusionSystem::su2_type() })
    }

    /// `A_o(F)`; the eigenvalue list must be closed under `x → 1/x`
    /// (forced by `F F̄ = ±1`), which also gives the trace normalization.
    pub fn ao_f(fstarf: &[f64]) -> Result<Self> {
        let eigs = check_eigs(fstarf, 2)?;
        let n = eigs.len();
        for i in 0..n {
            if !close(eigs[i] * eigs[n - 1 - i], 1.0, REL_TOL) {
                return invalid(format!(
                    "A_o(F) needs Sp(F*F) closed under inversion; {} has no partner {}",
                    eigs[i],
                    1.0 / eigs[i]
                ));
            }
        }
        Ok(Self { family: Family::AoF { fstarf: eigs }, fusion: FusionSystem::su2_type() })
    }

    pub fn au_f(fstarf: &[f64]) -> Result<Self> {
        let eigs = check_eigs(fstarf, 1)?;
        Ok(Self { family: Family::AuF { fstarf: eigs }, fusion: FusionSystem::free_power() })
    }

    /// Table-driven model. Validates dimensions against the fusion table:
    /// `dim(a)dim(b) = Σ N_ab^c dim(c)` exactly, the same for `d` (exactly
    /// when every involved irrep has an exact form, else within 1e-9), and
    /// the trace identities for supplied spectra.
    pub fn table(table: FusionTable, irreps: BTreeMap<String, TableIrrepData>) -> Result<Self> {
        for key in table.keys() {
            if !irreps.contains_key(key) {
                return invalid(format!("irrep `{key}` has no dimension data"));
            }
        }
        for (key, data) in &irreps {
            let Some(dual) = table.dual(key) else {
                return invalid(format!("irrep `{key}` is not in the fusion table"));
            };
            let at = format!("irrep `{key}`");
            if data.dim == 0 {
                return invalid(format!("{at}: dim must be ≥ 1"));
            }
            if !(data.qdim.value.is_finite() && data.qdim.value > 0.0) {
                return invalid(format!("{at}: qdim must be > 0"));
            }
            if data.qdim.value < data.dim as f64 * (1.0 - REL_TOL) {
                return invalid(format!("{at}: qdim {} < dim {}", data.qdim.value, data.dim));
            }
            let d = &irreps[dual];
            if d.dim != data.dim || !close(d.qdim.value, data.qdim.value, REL_TOL) {
                return invalid(format!("{at}: dimensions differ from those of its dual `{dual}`"));
            }
            if let Some(jj) = &data.jj {
                if jj.len() as u64 != data.dim {
                    return invalid(format!("{at}: jj_spectrum has {} entries, dim is {}", jj.len(), data.dim));
                }
                for (name, tr) in [("Σ jj", jj.sum()), ("Σ 1/jj", jj.sum_inverse())] {
                    if !close(tr, data.qdim.value, REL_TOL) {
                        return invalid(format!("{at}: {name} = {tr} differs from qdim {}", data.qdim.value));
                    }
                }
            }
        }
        let unit = &irreps[table.unit()];
        if unit.dim != 1 || !close(unit.qdim.value, 1.0, REL_TOL) {
            return invalid(format!("unit `{}` must have dim = qdim = 1", table.unit()));
        }
        for (i, (a, b, out)) in table.entries().enumerate() {
            let at = format!("fusion[{i}] ({a} ⊗ {b})");
            let (da, db) = (&irreps[a], &irreps[b]);
            let dim_sum: u64 = out.iter().map(|(c, m)| m * irreps[c].dim).sum();
            if dim_sum != da.dim * db.dim {
                return invalid(format!("{at}: Σ N dim = {dim_sum} but dim(a)dim(b) = {}", da.dim * db.dim));
            }
            let exact: Option<Vec<&ExactQDim>> = std::iter::once(a)
                .chain(std::iter::once(b))
                .chain(out.iter().map(|(c, _)| c.as_str()))
                .map(|k| irreps[k].qdim.exact.as_ref())
                .collect();
            match exact {
                Some(ex) if ex.iter().all(|e| e.base == ex[0].base) => {
                    let lhs = &ex[0].poly * &ex[1].poly;
                    let rhs = out.iter().fold(LaurentPoly::zero(), |acc, (c, m)| {
                        &acc + &irreps[c].qdim.exact.as_ref().expect("exact").poly.scale(*m as i64)
                    });
                    if lhs != rhs {
                        return invalid(format!("{at}: Σ N d = {rhs} but d(a)d(b) = {lhs}"));
                    }
                }
                _ => {
                    let lhs = da.qdim.value * db.qdim.value;
                    let rhs: f64 = out.iter().map(|(c, m)| *m as f64 * irreps[c].qdim.value).sum();
                    if !close(lhs, rhs, REL_TOL) {
                        return invalid(format!("{at}: Σ N d = {rhs} but d(a)d(b) = {lhs}"));
                    }
                }
            }
        }
        Ok(Self {
            family: Family::Table { irreps: Arc::new(irreps) },
            fusion: FusionSystem::table(table),
        })
    }

    pub fn with_max_support(mut self, cap: usize) -> Self {
        self.fusion = self.fusion.with_max_support(cap);
        self
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn family_kind(&self) -> FamilyKind {
        match self.family {
            Family::SqU2 { .. } => FamilyKind::SqU2,
            Family::AoF { .. } => FamilyKind::AoF,
            Family::AuF { .. } => FamilyKind::AuF,
            Family::Table { .. } => FamilyKind::Table,
        }
    }

    pub fn fusion(&self) -> &FusionSystem {
        &self.fusion
    }

    pub fn unit(&self) -> IrrepLabel {
        self.fusion.unit()
    }

    pub fn dual(&self, u: &IrrepLabel) -> Result<IrrepLabel> {
        self.fusion.dual(u)
    }

    pub fn parse_label(&self, s: &str) -> Result<IrrepLabel> {
        self.fusion.parse_label(s)
    }

    /// The fundamental representation, where the family has one.
    pub fn fundamental(&self) -> Option<IrrepLabel> {
        match self.fusion.kind() {
            FusionKind::Su2Type => Some(IrrepLabel::Spin(1)),
            FusionKind::FreePower => Some(IrrepLabel::word("g")),
            FusionKind::TableDriven => None,
        }
    }

    /// `0 < q ≤ 1` with `d(u_r) = [r+1]_q` for the SU(2)-type families:
    /// `|q|` for `S_qU(2)`, the root of `q + 1/q = Trace(F*F)` for `A_o(F)`.
    pub fn deformation(&self) -> Option<f64> {
        match &self.family {
            Family::SqU2 { q } => Some(q.abs()),
            Family::AoF { fstarf } => {
                let t: f64 = fstarf.iter().sum();
                Some(q_from_trace(t))
            }
            _ => None,
        }
    }

    /// Number of eigenvalues of `F*F` (the integral dimension of the fundamental).
    pub fn rank(&self) -> Option<usize> {
        match &self.family {
            Family::SqU2 { .. } => Some(2),
            Family::AoF { fstarf } | Family::AuF { fstarf } => Some(fstarf.len()),
            Family::Table { .. } => None,
        }
    }

    /// `q^n` or `ḡ^n`, or the unit as `(G, 0)`; anything else is unsupported.
    fn free_power(&self, u: &IrrepLabel) -> Result<(Letter, usize)> {
        self.fusion.check_label(u)?;
        match u {
            IrrepLabel::Word(w) if w.is_empty() => Ok((Letter::G, 0)),
            IrrepLabel::Word(w) => w.as_power().ok_or_else(|| Error::MixedWord(w.to_string())),
            _ => Err(Error::UnknownLabel(u.to_string())),
        }
    }

    fn spin(&self, u: &IrrepLabel) -> Result<u32> {
        self.fusion.check_label(u)?;
        match u {
            IrrepLabel::Spin(r) => Ok(*r),
            _ => Err(Error::UnknownLabel(u.to_string())),
        }
    }

    fn table_data(&self, u: &IrrepLabel) -> Result<&TableIrrepData> {
        let Family::Table { irreps } = &self.family else {
            unreachable!("table data requested from a non-table family")
        };
        self.fusion.check_label(u)?;
        match u {
            IrrepLabel::Key(k) => irreps.get(k).ok_or_else(|| Error::UnknownLabel(k.clone())),
            _ => Err(Error::UnknownLabel(u.to_string())),
        }
    }

    /// Quantum dimension `d(u)`.
    pub fn qdim(&self, u: &IrrepLabel) -> Result<QuantumDim> {
        match &self.family {
            Family::SqU2 { .. } | Family::AoF { .. } => {
                let r = self.spin(u)?;
                let q = self.deformation().expect("su2 family");
                Ok(QuantumDim::exact(q, LaurentPoly::q_integer(r as u64 + 1)))
            }
            Family::AuF { fstarf } => {
                let (_, n) = self.free_power(u)?;
                let t: f64 = fstarf.iter().sum();
                Ok(QuantumDim::numeric(t.powi(n as i32)))
            }
            Family::Table { .. } => Ok(self.table_data(u)?.qdim.clone()),
        }
    }

    /// Integral dimension `dim(u)`.
    pub fn intdim(&self, u: &IrrepLabel) -> Result<u64> {
        let overflow = || Error::Overflow(u.to_string());
        match &self.family {
            Family::SqU2 { .. } => Ok(self.spin(u)? as u64 + 1),
            Family::AoF { fstarf } => {
                let r = self.spin(u)?;
                let m = fstarf.len() as u64;
                // dim(u_{k+1}) = m dim(u_k) - dim(u_{k-1})
                let (mut prev, mut cur) = (1u64, m);
                if r == 0 {
                    return Ok(1);
                }
                for _ in 1..r {
                    let next = cur
                        .checked_mul(m)
                        .and_then(|x| x.checked_sub(prev))
                        .ok_or_else(overflow)?;
                    prev = cur;
                    cur = next;
                }
                Ok(cur)
            }
            Family::AuF { fstarf } => {
                let (_, n) = self.free_power(u)?;
                (fstarf.len() as u64).checked_pow(n as u32).ok_or_else(overflow)
            }
            Family::Table { .. } => Ok(self.table_data(u)?.dim),
        }
    }

    /// Spectrum of `j_u*j_u` for a standard solution.
    pub fn jj_spectrum(&self, u: &IrrepLabel) -> Result<EigenSpectrum> {
        match &self.family {
            Family::SqU2 { q } => {
                let r = self.spin(u)? as i64;
                EigenSpectrum::from_exponents(q.abs(), (0..=r).map(|k| r - 2 * k).collect())
            }
            Family::AoF { fstarf } => {
                let r = self.spin(u)?;
                let seed = EigenSpectrum::from_values(fstarf.clone())?;
                let mut prev = EigenSpectrum::ones(1);
                let mut cur = seed.clone();
                if r == 0 {
                    return Ok(prev);
                }
                // Sp(u_{k+1}) = Sp(u_1) ⊗ Sp(u_k) ⊖ Sp(u_{k-1})
                for k in 1..r {
                    let next = seed.tensor(&cur).subtract(&prev, REL_TOL).map_err(|detail| {
                        Error::SpectrumSubtraction { label: format!("u{}", k + 1), detail }
                    })?;
                    prev = cur;
                    cur = next;
                }
                Ok(cur)
            }
            Family::AuF { fstarf } => {
                let (letter, n) = self.free_power(u)?;
                let base = EigenSpectrum::from_values(fstarf.clone())?;
                let base = match letter {
                    Letter::G => base,
                    Letter::GBar => base.inverse(),
                };
                let mut s = EigenSpectrum::ones(1);
                for _ in 0..n {
                    s = s.tensor(&base);
                }
                Ok(s)
            }
            Family::Table { .. } => {
                let data = self.table_data(u)?;
                match &data.jj {
                    Some(s) => Ok(s.clone()),
                    None if data.dim == 1 || close(data.qdim.value, data.dim as f64, REL_TOL) => {
                        // d = dim forces j antiunitary
                        Ok(EigenSpectrum::ones(data.dim as usize))
                    }
                    None => Err(Error::MissingSpectrum(u.to_string())),
                }
            }
        }
    }

    /// `(λ_u, Λ_u)`, the extreme eigenvalues of `j_u*j_u`.
    pub fn lambda_bounds(&self, u: &IrrepLabel) -> Result<(f64, f64)> {
        match &self.family {
            Family::SqU2 { q } => {
                let r = self.spin(u)? as i32;
                let q = q.abs();
                Ok((q.powi(r), q.powi(-r)))
            }
            Family::AuF { fstarf } => {
                let (letter, n) = self.free_power(u)?;
                let (lo, hi) = (fstarf[0], fstarf[fstarf.len() - 1]);
                let (lo, hi) = match letter {
                    Letter::G => (lo, hi),
                    Letter::GBar => (1.0 / hi, 1.0 / lo),
                };
                Ok((lo.powi(n as i32), hi.powi(n as i32)))
            }
            Family::AoF { fstarf } => {
                // λ_{u_r} = λ_{u_1}^r follows from the recursion; no need to build it
                let r = self.spin(u)? as i32;
                Ok((fstarf[0].powi(r), fstarf[fstarf.len() - 1].powi(r)))
            }
            Family::Table { .. } => {
                let s = self.jj_spectrum(u)?;
                Ok((s.min().expect("nonempty"), s.max().expect("nonempty")))
            }
        }
    }

    /// Kac type: every `j*j` is trivial, `d = dim` throughout.
    pub fn is_kac(&self) -> bool {
        match &self.family {
            Family::SqU2 { q } => q.abs() == 1.0,
            Family::AoF { fstarf } | Family::AuF { fstarf } => {
                fstarf.iter().all(|x| close(*x, 1.0, REL_TOL))
            }
            Family::Table { irreps } => irreps
                .values()
                .all(|d| close(d.qdim.value, d.dim as f64, REL_TOL)),
        }
    }

    /// Growth rate known in closed form from the fusion rules of a built-in
    /// family. `None` for tables and for the multiplicity kind.
    pub fn growth_closed_form(&self, u: &IrrepLabel, kind: GrowthKind) -> Option<f64> {
        match (&self.family, kind) {
            (_, GrowthKind::Multiplicity) | (Family::Table { .. }, _) => None,
            (Family::SqU2 { q }, GrowthKind::QuantumDim) => {
                let r = self.spin(u).ok()? as i32;
                Some(q.abs().powi(-r))
            }
            (Family::SqU2 { .. }, GrowthKind::IntegralDim) => self.spin(u).ok().map(|_| 1.0),
            (Family::AoF { .. }, GrowthKind::QuantumDim) => {
                let r = self.spin(u).ok()? as i32;
                Some(self.deformation()?.powi(-r))
            }
            (Family::AoF { fstarf }, GrowthKind::IntegralDim) => {
                let r = self.spin(u).ok()? as i32;
                let m = fstarf.len() as f64;
                let rho = (m + (m * m - 4.0).max(0.0).sqrt()) / 2.0;
                Some(rho.powi(r))
            }
            (Family::AuF { fstarf }, GrowthKind::QuantumDim) => {
                let (_, n) = self.free_power(u).ok()?;
                Some(fstarf.iter().sum::<f64>().powi(n as i32))
            }
            (Family::AuF { fstarf }, GrowthKind::IntegralDim) => {
                let (_, n) = self.free_power(u).ok()?;
                Some((fstarf.len() as f64).powi(n as i32))
            }
        }
    }

    /// Labels of the generator tower up to `depth` (every key for tables).
    pub fn tower_labels(&self, depth: usize) -> Vec<IrrepLabel> {
        self.fusion.tower_labels(depth)
    }
}

/// The root `0 < q ≤ 1` of `q + 1/q = t` (`t ≥ 2`).
pub fn q_from_trace(t: f64) -> f64 {
    if t <= 2.0 {
        return 1.0;
    }
    // 2/(t + √(t²-4)) avoids cancellation in (t - √(t²-4))/2
    2.0 / (t + (t * t - 4.0).sqrt())
}
