//! `qgrowth`: fusion rules, growth rates and modular spectra from the
//! command line.
//!
//! Exit codes: 0 when every check passes, 1 on a verification failure,
//! 2 on usage or load errors.

mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qgrowth::action::{self, DEFAULT_SEED, KMS_TOL};
use qgrowth::io::{load_action, load_model};
use qgrowth::modular::{self, consistent_with_bound, SUBGROUP_TOL};
use qgrowth::*;

use render::{emit, Format};

#[derive(Parser, Debug)]
#[command(name = "qgrowth", version, about = "Dimensional invariants of compact quantum groups and their actions")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Opts {
    /// Built-in family, ignored with --model.
    #[arg(long, global = true, value_enum, default_value_t = Family::SqU2)]
    family: Family,
    /// Deformation parameter of sq_u2, 0 < |q| ≤ 1.
    #[arg(long, global = true, default_value_t = 1.0, allow_negative_numbers = true)]
    q: f64,
    /// Eigenvalues of F*F for ao_f / au_f, comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    eigs: Vec<f64>,
    /// JSON model file.
    #[arg(long, global = true)]
    model: Option<PathBuf>,
    /// Action file, or a built-in: translation, bdv, bdv:<family>, cuntz[:n].
    #[arg(long, global = true)]
    action: Option<String>,
    /// Growth depth (default 24 for SU(2)-type fusion, 12 otherwise).
    #[arg(short = 'N', global = true)]
    n: Option<usize>,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Tolerance override for the selected check.
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Irrep to analyse (default: the fundamental representation).
    #[arg(long, global = true)]
    irrep: Option<String>,
    /// Record that M and its centralizer are factors (never verified).
    #[arg(long, global = true)]
    factorial: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    #[value(name = "sq_u2")]
    SqU2,
    #[value(name = "ao_f")]
    AoF,
    #[value(name = "au_f")]
    AuF,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decompose a ⊗ b.
    Fuse { a: String, b: String },
    /// Decompose u^{⊗n}.
    Power { u: String, n: usize },
    /// Conjugate representation.
    Dual { u: String },
    /// Quantum and integral dimension, spectrum of j*j.
    Dims { u: String },
    /// Growth sequence with its Fekete bracket.
    Growth {
        #[arg(long, value_enum, default_value_t = Kind::QuantumDim)]
        kind: Kind,
    },
    /// Run a verification.
    Verify {
        #[arg(value_enum)]
        check: Check,
        /// KMS trials.
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
    /// Lower bounds for λ in type III_λ.
    Bound {
        #[arg(value_enum)]
        which: Bound,
    },
    /// Point spectrum of the modular operator and its subgroup.
    Spectrum {
        /// Spectral irreps, comma separated (default: generator tower).
        #[arg(long, value_delimiter = ',')]
        subset: Vec<String>,
        /// Write `log_eigenvalue,multiplicity` CSV here.
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Run the regression corpus.
    PaperExamples,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    #[value(name = "quantum_dim", alias = "quantum")]
    QuantumDim,
    #[value(name = "integral_dim", alias = "integral")]
    IntegralDim,
    #[value(name = "multiplicity", alias = "mult")]
    Multiplicity,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Check {
    Prop43,
    Thm48,
    Kms,
    Tracial,
    KacGrowth,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Bound {
    Type3,
    Kac,
}

enum Failure {
    Usage(String),
    Verification,
}

impl From<qgrowth::Error> for Failure {
    fn from(e: qgrowth::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

fn max_support() -> std::result::Result<Option<usize>, Failure> {
    match std::env::var("QGROWTH_MAX_SUPPORT") {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Failure::Usage(format!("QGROWTH_MAX_SUPPORT must be a positive integer, got `{v}`"))),
        Err(_) => Ok(None),
    }
}

fn family_model(family: Family, o: &Opts) -> std::result::Result<QuantumGroupModel, Failure> {
    let eigs = || {
        if o.eigs.is_empty() {
            Err(Failure::Usage(format!("--eigs is required for {family:?}")))
        } else {
            Ok(o.eigs.as_slice())
        }
    };
    Ok(match family {
        Family::SqU2 => QuantumGroupModel::sq_u2(o.q)?,
        Family::AoF => QuantumGroupModel::ao_f(eigs()?)?,
        Family::AuF => QuantumGroupModel::au_f(eigs()?)?,
    })
}

fn cap(m: QuantumGroupModel) -> std::result::Result<QuantumGroupModel, Failure> {
    Ok(match max_support()? {
        Some(c) => m.with_max_support(c),
        None => m,
    })
}

fn model(o: &Opts) -> std::result::Result<QuantumGroupModel, Failure> {
    let m = match &o.model {
        Some(path) => load_model(path)?,
        None => family_model(o.family, o)?,
    };
    cap(m)
}

fn action(o: &Opts) -> std::result::Result<SpectralActionModel, Failure> {
    let spec = o.action.as_deref().unwrap_or("translation");
    let (name, arg) = match spec.split_once(':') {
        Some((n, a)) => (n, Some(a)),
        None => (spec, None),
    };
    let a = match (name, arg) {
        ("translation", None) => translation_action(&model(o)?),
        ("bdv", arg) => {
            let source = match arg {
                None => model(o)?,
                Some(f) => {
                    let family = Family::from_str(f, true)
                        .map_err(|_| Failure::Usage(format!("unknown family `{f}` in --action {spec}")))?;
                    cap(family_model(family, o)?)?
                }
            };
            bdv_action(&source, &su2_partner(&source)?, Correspondence::Identity)?
        }
        ("cuntz", arg) => {
            let n = match arg {
                Some(n) => n.parse().map_err(|_| Failure::Usage(format!("bad n in --action {spec}")))?,
                None if !o.eigs.is_empty() => o.eigs.len(),
                None => return Err(Failure::Usage("cuntz needs cuntz:<n> or --eigs".into())),
            };
            cuntz_action(n, action::DEFAULT_TOWER_DEPTH)?
        }
        _ => load_action(std::path::Path::new(spec))?,
    };
    let asserted = o.factorial || a.factorial_assumptions();
    Ok(a.with_factorial_assumptions(asserted))
}

fn depth(o: &Opts, m: &QuantumGroupModel) -> std::result::Result<usize, Failure> {
    let n = o.n.unwrap_or(match m.fusion().kind() {
        qgrowth::fusion::FusionKind::Su2Type => 24,
        _ => 12,
    });
    if n == 0 {
        return Err(Failure::Usage("-N must be ≥ 1".into()));
    }
    Ok(n)
}

fn tolerance(o: &Opts, default: f64) -> std::result::Result<f64, Failure> {
    match o.tol {
        Some(t) if !(t > 0.0 && t.is_finite()) => Err(Failure::Usage(format!("--tol must be > 0, got {t}"))),
        Some(t) => Ok(t),
        None => Ok(default),
    }
}

fn irrep(o: &Opts, m: &QuantumGroupModel) -> std::result::Result<IrrepLabel, Failure> {
    match &o.irrep {
        Some(s) => Ok(m.parse_label(s)?),
        None => m
            .fundamental()
            .ok_or_else(|| Failure::Usage("this model has no fundamental representation; pass --irrep".into())),
    }
}

fn verdict(ok: bool) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn run(cli: Cli) -> Outcome {
    let o = &cli.opts;
    let f = o.format;
    match cli.command {
        Command::Fuse { a, b } => {
            let m = model(o)?;
            let out = m.fusion().fuse(&m.parse_label(&a)?, &m.parse_label(&b)?)?;
            emit(f, &out, render::decomposition(&out));
        }
        Command::Power { u, n } => {
            let m = model(o)?;
            let out = m.fusion().decompose_power(&m.parse_label(&u)?, n)?;
            emit(f, &out, render::decomposition(&out));
        }
        Command::Dual { u } => {
            let m = model(o)?;
            let d = m.dual(&m.parse_label(&u)?)?;
            emit(f, &d, render::text(format!("{d}\n")));
        }
        Command::Dims { u } => {
            let m = model(o)?;
            let rep = render::dims(&m, &m.parse_label(&u)?)?;
            emit(f, &rep, render::kv(&rep));
        }
        Command::Growth { kind } => {
            let m = model(o)?;
            let x = irrep(o, &m)?;
            let n = depth(o, &m)?;
            let (kind, act) = match kind {
                Kind::QuantumDim => (GrowthKind::QuantumDim, None),
                Kind::IntegralDim => (GrowthKind::IntegralDim, None),
                Kind::Multiplicity => (GrowthKind::Multiplicity, Some(action(o)?)),
            };
            let base = act.as_ref().map_or(&m, |a| a.base());
            let rep = growth_sequence(base, &x, n, kind, act.as_ref())?;
            emit(f, &rep, render::growth(&rep));
        }
        Command::Verify { check, trials } => return verify(o, check, trials),
        Command::Bound { which } => {
            let a = action(o)?;
            match which {
                Bound::Type3 => {
                    let n = depth(o, a.base())?;
                    let rep = type3_lower_bound(&a, n)?;
                    emit(f, &rep, render::type3(&rep));
                }
                Bound::Kac => {
                    let rep = kac_bound(&a)?;
                    emit(f, &rep, render::kv(&rep));
                }
            }
        }
        Command::Spectrum { subset, plot } => {
            let a = action(o)?;
            let labels = subset.iter().map(|s| a.base().parse_label(s)).collect::<Result<Vec<_>>>()?;
            let mut rep = delta_point_spectrum(&a, (!labels.is_empty()).then_some(&labels[..]))?;
            rep.classification = connes_subgroup(&rep, tolerance(o, SUBGROUP_TOL)?)?;
            let bound = type3_lower_bound(&a, depth(o, a.base())?).ok().map(|t| t.bound);
            let consistent = bound.is_none_or(|b| consistent_with_bound(&rep.classification, b));
            if let Some(path) = plot {
                let mut csv = String::from("log_eigenvalue,multiplicity\n");
                for (x, k) in rep.plot_data() {
                    csv.push_str(&format!("{x},{k}\n"));
                }
                std::fs::write(&path, csv).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            }
            let out = render::SpectrumOutput { report: rep, type3_bound: bound, inconsistent_assumptions: !consistent };
            emit(f, &out, render::spectrum(&out));
        }
        Command::PaperExamples => {
            let rows = qgrowth::corpus::run();
            emit(f, &rows, render::corpus(&rows));
            return verdict(rows.iter().all(|r| r.passed));
        }
    }
    Ok(())
}

fn verify(o: &Opts, check: Check, trials: usize) -> Outcome {
    let f = o.format;
    match check {
        Check::Prop43 => {
            let m = model(o)?;
            let rep = verify_prop43(&m, &irrep(o, &m)?, depth(o, &m)?)?;
            emit(f, &rep, render::kv(&rep));
            verdict(rep.holds)
        }
        Check::Thm48 => {
            let a = action(o)?;
            let x = irrep(o, a.base())?;
            let rep = verify_thm48(&a, &x, depth(o, a.base())?)?;
            emit(f, &rep, render::kv(&rep));
            verdict(rep.bound_holds)
        }
        Check::Kms => {
            let a = action(o)?;
            let x = irrep(o, a.base())?;
            let rep = kms_check(&a, &x, trials, tolerance(o, KMS_TOL)?, o.seed)?;
            emit(f, &rep, render::kv(&rep));
            verdict(rep.passed)
        }
        Check::Tracial => {
            let rep = is_tracial(&action(o)?)?;
            emit(f, &rep, render::kv(&rep));
            Ok(())
        }
        Check::KacGrowth => {
            let a = action(o)?;
            let rep = kac_exponential_necessity(&a, depth(o, a.base())?)?;
            emit(f, &rep, render::kv(&rep));
            verdict(!matches!(rep.result, modular::KacNecessity::Violated))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
