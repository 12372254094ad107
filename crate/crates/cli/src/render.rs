//! Output formats. JSON is the serde form of the library reports; CSV and
//! table views are derived from it, so every format is byte-stable.

use std::fmt::Write as _;

use clap::ValueEnum;
use qgrowth::corpus::CorpusRow;
use qgrowth::modular::Type3Report;
use qgrowth::{io, GrowthReport, IrrepLabel, ModularSpectrumReport, MultiplicityVector, QuantumGroupModel};
use serde::Serialize;
use serde_json::Value;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

/// Human views of one result.
pub struct Views {
    table: String,
    csv: String,
}

pub fn text(s: String) -> Views {
    Views { table: s.clone(), csv: s }
}

pub fn emit<T: Serialize>(format: Format, value: &T, views: Views) {
    let out = match format {
        Format::Json => io::to_json(value),
        Format::Csv => views.csv,
        Format::Table => views.table,
    };
    print!("{out}");
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Labels come out of serde as `{"spin": r}` etc.; show them as written on
/// the command line.
fn label_text(v: &Value) -> Option<String> {
    let obj = v.as_object()?;
    if obj.len() != 1 {
        return None;
    }
    let (k, x) = obj.iter().next()?;
    match (k.as_str(), x) {
        ("spin", Value::Number(n)) => Some(format!("u{n}")),
        ("word", Value::String(w)) => Some(if w.is_empty() { "e".into() } else { w.clone() }),
        ("key", Value::String(s)) => Some(s.clone()),
        _ => None,
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    if let Some(l) = label_text(v) {
        out.push((prefix.to_string(), l));
        return;
    }
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten(&key(k), x, out);
            }
        }
        // short numeric lists stay on one line
        Value::Array(xs) if xs.iter().all(|x| x.is_number()) => {
            let items: Vec<String> = xs.iter().map(scalar).collect();
            out.push((prefix.to_string(), format!("[{}]", items.join(" "))));
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                flatten(&key(&i.to_string()), x, out);
            }
        }
        other => out.push((prefix.to_string(), scalar(other))),
    }
}

fn pairs<T: Serialize>(value: &T) -> Vec<(String, String)> {
    let v = serde_json::to_value(value).expect("reports serialize");
    let mut out = Vec::new();
    flatten("", &v, &mut out);
    out
}

fn aligned(rows: &[(String, String)]) -> String {
    let w = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    let mut s = String::new();
    for (k, v) in rows {
        let pad = w - k.chars().count();
        writeln!(s, "{k}{}  {v}", " ".repeat(pad)).unwrap();
    }
    s
}

fn csv_pairs(rows: &[(String, String)]) -> String {
    let mut s = String::from("key,value\n");
    for (k, v) in rows {
        writeln!(s, "{},{}", csv_field(k), csv_field(v)).unwrap();
    }
    s
}

/// Flat `key value` view of any report.
pub fn kv<T: Serialize>(value: &T) -> Views {
    let rows = pairs(value);
    Views { table: aligned(&rows), csv: csv_pairs(&rows) }
}

fn grid(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (i, c) in r.iter().enumerate() {
            w[i] = w[i].max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> =
            cells.iter().zip(&w).map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count()))).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut s = line(header.to_vec());
    for r in rows {
        s.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    s
}

pub fn decomposition(m: &MultiplicityVector) -> Views {
    let mut csv = String::from("irrep,multiplicity\n");
    for (l, k) in m.iter() {
        writeln!(csv, "{},{k}", csv_field(&l.to_string())).unwrap();
    }
    Views { table: format!("{m}\n"), csv }
}

#[derive(Serialize)]
pub struct DimsReport {
    irrep: IrrepLabel,
    dual: IrrepLabel,
    qdim: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    qdim_exact: Option<String>,
    intdim: u64,
    jj_spectrum: Vec<f64>,
    lambda: f64,
    big_lambda: f64,
}

pub fn dims(m: &QuantumGroupModel, u: &IrrepLabel) -> qgrowth::Result<DimsReport> {
    let qdim = m.qdim(u)?;
    let (lambda, big_lambda) = m.lambda_bounds(u)?;
    Ok(DimsReport {
        irrep: u.clone(),
        dual: m.dual(u)?,
        qdim: qdim.value,
        qdim_exact: qdim.exact.map(|e| format!("{} at q = {}", e.poly, e.base)),
        intdim: m.intdim(u)?,
        jj_spectrum: m.jj_spectrum(u)?.values().to_vec(),
        lambda,
        big_lambda,
    })
}

pub fn growth(r: &GrowthReport) -> Views {
    let head = [
        ("kind".to_string(), scalar(&serde_json::to_value(r.kind).unwrap())),
        ("irrep".to_string(), r.irrep.to_string()),
        ("lower_bound".to_string(), r.lower_bound.to_string()),
        ("upper_bound".to_string(), r.upper_bound.to_string()),
        ("closed_form".to_string(), r.closed_form.map_or("-".into(), |c| c.to_string())),
        ("estimate".to_string(), r.estimate.map_or("-".into(), |c| c.to_string())),
        ("verdict".to_string(), scalar(&serde_json::to_value(r.verdict).unwrap())),
    ];
    let rows: Vec<Vec<String>> =
        r.sequence.iter().map(|p| vec![p.n.to_string(), p.value.to_string(), p.root.to_string()]).collect();
    let table = format!("{}\n{}", aligned(&head), grid(&["n", "value", "root"], &rows));
    Views { table, csv: r.to_csv() }
}

pub fn type3(r: &Type3Report) -> Views {
    let head = [
        ("bound".to_string(), r.bound.to_string()),
        ("best_irrep".to_string(), r.best_irrep.to_string()),
        ("n_max".to_string(), r.n_max.to_string()),
        ("iii_1_forced".to_string(), r.iii_1_forced.to_string()),
        ("factorial_assumptions".to_string(), r.factorial_assumptions.to_string()),
    ];
    let header = ["irrep", "qdim", "intdim", "lambda", "big_lambda", "d_upper", "value"];
    let rows: Vec<Vec<String>> = r
        .rows
        .iter()
        .map(|x| {
            vec![
                x.irrep.to_string(),
                x.qdim.to_string(),
                x.intdim.to_string(),
                x.lambda.to_string(),
                x.big_lambda.to_string(),
                x.d_upper.to_string(),
                x.value.to_string(),
            ]
        })
        .collect();
    let mut csv = header.join(",") + "\n";
    for row in &rows {
        let cells: Vec<String> = row.iter().map(|c| csv_field(c)).collect();
        csv.push_str(&(cells.join(",") + "\n"));
    }
    Views { table: format!("{}\n{}", aligned(&head), grid(&header, &rows)), csv }
}

#[derive(Serialize)]
pub struct SpectrumOutput {
    #[serde(flatten)]
    pub report: ModularSpectrumReport,
    pub type3_bound: Option<f64>,
    /// The classification contradicts the type3 bound, so the factoriality
    /// assumptions fail.
    pub inconsistent_assumptions: bool,
}

pub fn spectrum(s: &SpectrumOutput) -> Views {
    let r = &s.report;
    let head = [
        ("classification".to_string(), r.classification.to_string()),
        ("type3_bound".to_string(), s.type3_bound.map_or("-".into(), |b| b.to_string())),
        ("consistent".to_string(), (!s.inconsistent_assumptions).to_string()),
        ("assumptions".to_string(), r.assumptions_note.clone()),
    ];
    let rows: Vec<Vec<String>> = r
        .per_irrep
        .iter()
        .map(|d| {
            vec![d.irrep.to_string(), grouped(d.eigenvalues.values())]
        })
        .collect();
    let plot: Vec<Vec<String>> = r.plot_data().iter().map(|(x, k)| vec![x.to_string(), k.to_string()]).collect();
    let table = format!(
        "{}\n{}\n{}",
        aligned(&head),
        grid(&["irrep", "eigenvalues"], &rows),
        grid(&["log_eigenvalue", "multiplicity"], &plot)
    );
    let mut csv = String::from("log_eigenvalue,multiplicity\n");
    for (x, k) in r.plot_data() {
        writeln!(csv, "{x},{k}").unwrap();
    }
    Views { table, csv }
}

/// `x(k)` for each eigenvalue `x` of multiplicity `k`; input is sorted.
fn grouped(xs: &[f64]) -> String {
    let mut runs: Vec<(f64, usize)> = Vec::new();
    for &x in xs {
        match runs.last_mut() {
            Some((y, k)) if (x - *y).abs() <= 1e-9 * y.abs().max(1.0) => *k += 1,
            _ => runs.push((x, 1)),
        }
    }
    let parts: Vec<String> = runs.iter().map(|(x, k)| if *k == 1 { x.to_string() } else { format!("{x}({k})") }).collect();
    parts.join(" ")
}

pub fn corpus(rows: &[CorpusRow]) -> Views {
    let mut table = String::new();
    let mut csv = String::from("name,passed,detail\n");
    for r in rows {
        let tag = if r.passed { "PASS" } else { "FAIL" };
        writeln!(table, "{tag} {}: {}", r.name, r.detail).unwrap();
        writeln!(csv, "{},{},{}", csv_field(&r.name), r.passed, csv_field(&r.detail)).unwrap();
    }
    let passed = rows.iter().filter(|r| r.passed).count();
    writeln!(table, "{passed} of {} examples reproduced", rows.len()).unwrap();
    Views { table, csv }
}
