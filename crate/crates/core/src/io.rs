//! JSON model, table and action files.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::action::{custom_action, SpectralActionModel, SpectralEntry};
use crate::error::{Error, Result};
use crate::fusion::FusionTable;
use crate::laurent::LaurentPoly;
use crate::model::{ExactQDim, FamilyKind, QuantumDim, QuantumGroupModel, TableIrrepData};
use crate::spectrum::EigenSpectrum;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    pub family: FamilyKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fstarf_eigenvalues: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<TableSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableSpec {
    /// Defaults to `"1"` when listed, else the first irrep.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<String>,
    /// Base for `qdim_exponents`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    pub irreps: Vec<IrrepSpec>,
    #[serde(default)]
    pub fusion: Vec<FusionSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IrrepSpec {
    pub key: String,
    pub dual: String,
    pub dim: u64,
    /// `d = Σ q^e`; when there are `dim` of them they are also `Sp(j*j)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub qdim_exponents: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub qdim_value: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jj_spectrum: Option<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FusionSpec {
    pub a: String,
    pub b: String,
    pub out: Vec<FusionOut>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FusionOut {
    pub c: String,
    pub mult: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BaseSpec {
    Path(PathBuf),
    Inline(ModelSpec),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionSpec {
    pub base: BaseSpec,
    pub spectrum: Vec<SpectrumSpec>,
    #[serde(default)]
    pub relaxed_tensor: bool,
    #[serde(default)]
    pub factorial_assumptions: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumSpec {
    pub irrep: String,
    pub mult: usize,
    #[serde(rename = "JJ")]
    pub jj: Vec<f64>,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.display().to_string(), source })
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str, context: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|source| Error::Json { context: context.to_string(), source })
}

fn in_file<T>(path: &Path, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Io { .. } | Error::Json { .. } => e,
        other => Error::InvalidArgument(format!("{}: {other}", path.display())),
    })
}

pub fn load_model(path: &Path) -> Result<QuantumGroupModel> {
    let spec: ModelSpec = parse(&read(path)?, &path.display().to_string())?;
    in_file(path, build_model(&spec))
}

pub fn model_from_str(text: &str) -> Result<QuantumGroupModel> {
    build_model(&parse(text, "model")?)
}

pub fn build_model(spec: &ModelSpec) -> Result<QuantumGroupModel> {
    let missing = |f: &str| Error::InvalidModel(format!("family {:?} needs `{f}`", spec.family));
    match spec.family {
        FamilyKind::SqU2 => QuantumGroupModel::sq_u2(spec.q.ok_or_else(|| missing("q"))?),
        FamilyKind::AoF => {
            QuantumGroupModel::ao_f(spec.fstarf_eigenvalues.as_deref().ok_or_else(|| missing("fstarf_eigenvalues"))?)
        }
        FamilyKind::AuF => {
            QuantumGroupModel::au_f(spec.fstarf_eigenvalues.as_deref().ok_or_else(|| missing("fstarf_eigenvalues"))?)
        }
        FamilyKind::Table => build_table(spec.table.as_ref().ok_or_else(|| missing("table"))?),
    }
}

pub fn build_table(spec: &TableSpec) -> Result<QuantumGroupModel> {
    let bad = |m: String| Err(Error::InvalidTable(m));
    if spec.irreps.is_empty() {
        return bad("no irreps".into());
    }
    let mut duals = BTreeMap::new();
    let mut data = BTreeMap::new();
    for (i, ir) in spec.irreps.iter().enumerate() {
        let at = format!("irreps[{i}] (`{}`)", ir.key);
        if duals.insert(ir.key.clone(), ir.dual.clone()).is_some() {
            return bad(format!("{at}: duplicate key"));
        }
        let qdim = match (&ir.qdim_exponents, ir.qdim_value) {
            (Some(exps), None) => {
                let Some(q) = spec.q else {
                    return bad(format!("{at}: qdim_exponents needs the table-level `q`"));
                };
                let poly = LaurentPoly::from_exponents(exps.iter().copied());
                QuantumDim { value: poly.eval(q), exact: Some(ExactQDim { base: q, poly }) }
            }
            (None, Some(v)) => QuantumDim { value: v, exact: None },
            (None, None) => QuantumDim { value: ir.dim as f64, exact: None },
            (Some(_), Some(_)) => return bad(format!("{at}: give qdim_exponents or qdim_value, not both")),
        };
        let jj = match (&ir.jj_spectrum, &ir.qdim_exponents) {
            (Some(v), _) => Some(
                EigenSpectrum::from_values(v.clone()).map_err(|e| Error::InvalidTable(format!("{at}: {e}")))?,
            ),
            (None, Some(exps)) if exps.len() as u64 == ir.dim => Some(
                EigenSpectrum::from_exponents(spec.q.expect("checked above"), exps.clone())
                    .map_err(|e| Error::InvalidTable(format!("{at}: {e}")))?,
            ),
            _ => None,
        };
        data.insert(ir.key.clone(), TableIrrepData { dim: ir.dim, qdim, jj });
    }
    let unit = match &spec.unit {
        Some(u) => u.clone(),
        None if duals.contains_key("1") => "1".to_string(),
        None => spec.irreps[0].key.clone(),
    };
    let entries = spec
        .fusion
        .iter()
        .map(|f| (f.a.clone(), f.b.clone(), f.out.iter().map(|o| (o.c.clone(), o.mult)).collect()))
        .collect();
    let table = FusionTable::new(unit, duals, entries)?;
    QuantumGroupModel::table(table, data)
}

/// Loads an action file; a relative `base` path resolves against the
/// file's directory.
pub fn load_action(path: &Path) -> Result<SpectralActionModel> {
    let text = read(path)?;
    in_file(path, action_from_str(&text, path.parent()))
}

pub fn action_from_str(text: &str, base_dir: Option<&Path>) -> Result<SpectralActionModel> {
    let spec: ActionSpec = parse(text, "action")?;
    build_action(&spec, base_dir)
}

pub fn build_action(spec: &ActionSpec, base_dir: Option<&Path>) -> Result<SpectralActionModel> {
    let base = match &spec.base {
        BaseSpec::Inline(m) => build_model(m)?,
        BaseSpec::Path(p) => {
            let full = match base_dir {
                Some(d) if p.is_relative() => d.join(p),
                _ => p.clone(),
            };
            load_model(&full)?
        }
    };
    let mut entries = Vec::with_capacity(spec.spectrum.len());
    for (i, s) in spec.spectrum.iter().enumerate() {
        let at = |e: Error| Error::InvalidAction(format!("spectrum[{i}] (`{}`): {e}", s.irrep));
        let label = base.parse_label(&s.irrep).map_err(at)?;
        let jj = EigenSpectrum::from_values(s.jj.clone()).map_err(at)?;
        entries.push((label, SpectralEntry { mult: s.mult, jj }));
    }
    Ok(custom_action(&base, entries, spec.relaxed_tensor)?.with_factorial_assumptions(spec.factorial_assumptions))
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}
