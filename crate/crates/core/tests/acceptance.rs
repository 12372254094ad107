//! Acceptance criteria, one line each. Exits nonzero when any fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use proptest::prelude::*;
use proptest::test_runner::TestRunner;
use qgrowth::action::{DEFAULT_SEED, KMS_TOL};
use qgrowth::modular::{TraceCondition, SUBGROUP_TOL};
use qgrowth::spectrum::REL_TOL;
use qgrowth::*;

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        // negated so that NaN fails
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: std::result::Result<T, E>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn u(r: u32) -> IrrepLabel {
    IrrepLabel::spin(r)
}

fn g(k: usize) -> IrrepLabel {
    IrrepLabel::Word(Word::power(Letter::G, k))
}

fn gbar(k: usize) -> IrrepLabel {
    IrrepLabel::Word(Word::power(Letter::GBar, k))
}

fn sq_u2_spectra() -> Check {
    let q = 0.5f64;
    let m = ok(QuantumGroupModel::sq_u2(q))?;
    for r in 0..=12u32 {
        let s = ok(m.jj_spectrum(&u(r)))?;
        let want: Vec<i64> = (0..=r as i64).map(|k| 2 * k - r as i64).collect();
        let ex = s.exact().ok_or(format!("u{r}: no exact form"))?;
        ensure!(ex.exponents == want, "u{r}: exponents {:?}", ex.exponents);
        let mut vals: Vec<f64> = want.iter().map(|e| q.powi(*e as i32)).collect();
        vals.sort_by(f64::total_cmp);
        ensure!(s.values() == vals.as_slice(), "u{r}: values {:?}", s.values());
        let (lo, hi) = ok(m.lambda_bounds(&u(r)))?;
        ensure!(lo == q.powi(r as i32) && 1.0 / hi == q.powi(r as i32), "u{r}: λ = {lo}, Λ = {hi}");
    }
    Ok("q = 0.5, r ≤ 12: exponents {r, r-2, …, -r}, λ = 1/Λ = q^r".into())
}

fn growth_exactness() -> Check {
    let q = 0.5f64;
    let m = ok(QuantumGroupModel::sq_u2(q))?;
    let mut worst = 0.0f64;
    for r in 1..=4u32 {
        let (lo, hi) = ok(growth_rate_bracket(&m, &u(r), 24))?;
        let target = q.powi(-(r as i32));
        ensure!(lo == target, "u{r}: lower endpoint {lo} ≠ {target}");
        let oracle = (1..=24u32)
            .map(|n| common::q_int(r * n + 1, q).powf(1.0 / n as f64))
            .fold(f64::INFINITY, f64::min);
        ensure!((hi - oracle).abs() <= 1e-12 * oracle, "u{r}: upper {hi} vs oracle {oracle}");
        ensure!(hi <= 1.1 * target, "u{r}: upper {hi} not within 10% of {target}");
        worst = worst.max(hi / target - 1.0);
        let p = ok(verify_prop43(&m, &u(r), 24))?;
        ensure!(p.holds && p.equality_detected, "u{r}: prop43 {p:?}");
    }
    Ok(format!("N = 24, r ≤ 4: lower = q^-r exactly, upper within {:.2}%, equality", 100.0 * worst))
}

fn au_growth() -> Check {
    for n in 2..=4usize {
        let m = ok(QuantumGroupModel::au_f(&vec![1.0; n]))?;
        let rep = ok(growth_sequence(&m, &g(1), 8, GrowthKind::QuantumDim, None))?;
        for p in &rep.sequence {
            ensure!(p.value == (n as f64).powi(p.n as i32), "n = {n}: D_(g,{}) = {}", p.n, p.value);
        }
        ensure!(ok(m.lambda_bounds(&g(1)))? == (1.0, 1.0), "n = {n}: λ_g, Λ_g ≠ 1");
        let p = ok(verify_prop43(&m, &g(1), 8))?;
        ensure!(p.holds && p.extremes_strict && !p.equality_detected, "n = {n}: {p:?}");
    }
    Ok("n ∈ {2,3,4}: D_(g,k) = n^k for k ≤ 8, λ_g = Λ_g = 1, extremes strict".into())
}

fn wang_bound() -> Check {
    for n in [2usize, 3, 5] {
        let a = ok(cuntz_action(n, 4))?;
        let b = ok(kac_bound(&a))?;
        ensure!(b.bound == 1.0 / n as f64, "n = {n}: kac bound {}", b.bound);
        let rep = ok(delta_point_spectrum(&a, None))?;
        let c = ok(connes_subgroup(&rep, SUBGROUP_TOL))?;
        ensure!(c == Classification::IIILambdaCandidate { lambda: 1.0 / n as f64 }, "n = {n}: {c}");
    }
    Ok("n ∈ {2,3,5}: kac bound 1/n, III_(1/n)".into())
}

fn ao_translation() -> Check {
    let eigs = [0.5, 1.0, 2.0];
    let m = ok(QuantumGroupModel::ao_f(&eigs))?;
    let a = translation_action(&m);
    let rep = ok(delta_point_spectrum(&a, None))?;
    let on_u1 = rep.per_irrep.iter().find(|d| d.irrep == u(1)).ok_or("u1 missing")?;
    let products: Vec<f64> = eigs.iter().flat_map(|x| [2.0, 1.0, 0.5].map(|y| x * y)).collect();
    let want = ok(EigenSpectrum::from_values(products))?;
    ensure!(on_u1.eigenvalues.approx_eq(&want, 1e-12), "u1: {:?}", on_u1.eigenvalues.values());
    let c = ok(connes_subgroup(&rep, SUBGROUP_TOL))?;
    ensure!(c == Classification::IIILambdaCandidate { lambda: 0.5 }, "{c}");
    let t3 = ok(type3_lower_bound(&a, 12))?;
    let oracle = common::small_root(3.5) / 2.0;
    ensure!((t3.bound - oracle).abs() <= 1e-5, "type3 {} vs {oracle}", t3.bound);
    ensure!(t3.bound <= 0.5, "type3 {} above λ", t3.bound);
    Ok(format!("Δ on u1 = products, λ = 0.5, type3 bound = {:.5} ≤ 0.5", t3.bound))
}

fn trace_criterion() -> Check {
    let kac = ok(QuantumGroupModel::sq_u2(-1.0))?;
    let bdv = ok(bdv_action(&kac, &ok(su2_partner(&kac))?, Correspondence::Identity))?;
    for a in [translation_action(&kac), bdv] {
        ensure!(ok(is_tracial(&a))?.tracial, "q = -1 action not tracial");
        let rep = ok(delta_point_spectrum(&a, None))?;
        ensure!(rep.global.is_trivial(REL_TOL), "q = -1: Δ = {:?}", rep.global.values());
        ensure!(rep.classification == Classification::Trace, "q = -1: {}", rep.classification);
    }
    let t = ok(is_tracial(&translation_action(&ok(QuantumGroupModel::sq_u2(0.5))?)))?;
    ensure!(
        !t.tracial && t.witness == Some(u(1)) && t.condition == Some(TraceCondition::A),
        "q = 0.5: {t:?}"
    );
    Ok("q = -1 translation and bdv tracial with Δ ≡ 1; q = 0.5 witness u1 (a)".into())
}

fn kms_actions() -> std::result::Result<Vec<(String, SpectralActionModel)>, String> {
    let mut out = Vec::new();
    let mut su2 = |name: String, m: QuantumGroupModel| -> std::result::Result<(), String> {
        let t = ok(su2_partner(&m))?;
        out.push((format!("{name} translation"), translation_action(&m)));
        out.push((format!("{name} bdv"), ok(bdv_action(&m, &t, Correspondence::Identity))?));
        Ok(())
    };
    for q in [0.25, 0.5, 1.0] {
        su2(format!("SqU2({q})"), ok(QuantumGroupModel::sq_u2(q))?)?;
    }
    for eigs in [vec![0.5, 1.0, 2.0], vec![0.25, 4.0], vec![0.5, 0.5, 2.0, 2.0]] {
        su2(format!("A_o{eigs:?}"), ok(QuantumGroupModel::ao_f(&eigs))?)?;
    }
    for n in 2..=4usize {
        out.push((format!("A_u({n}) translation"), translation_action(&ok(QuantumGroupModel::au_f(&vec![1.0; n]))?)));
        out.push((format!("A_u({n}) cuntz"), ok(cuntz_action(n, 5))?));
    }
    Ok(out)
}

fn kms_suite() -> Check {
    let mut checked = 0;
    let mut worst = 0.0f64;
    for (name, a) in kms_actions()? {
        let labels = match a.kind() {
            action::ActionKind::Custom { .. } => a.spectral_labels(0),
            _ if a.base().rank().is_some() && a.base().fundamental() == Some(g(1)) => {
                (0..=5).flat_map(|k| [g(k), gbar(k)]).collect()
            }
            _ => a.spectral_labels(40),
        };
        for x in labels {
            // overflowing dimensions are far above 32
            if !a.base().intdim(&x).is_ok_and(|d| d <= 32) || ok(a.entry(&x))?.is_none() {
                continue;
            }
            let r = ok(kms_check(&a, &x, 1000, KMS_TOL, DEFAULT_SEED))?;
            ensure!(r.passed, "{name} {x}: violation {}", r.max_violation);
            worst = worst.max(r.max_violation);
            checked += 1;
        }
    }
    Ok(format!("{checked} (action, irrep) pairs × 1000 trials, max violation {worst:.1e}"))
}

fn thm48_suite() -> Check {
    let mut pairs = 0;
    for (name, a) in kms_actions()? {
        let is_bdv = matches!(a.kind(), action::ActionKind::Bdv { .. });
        let labels: Vec<IrrepLabel> = if a.base().fundamental() == Some(u(1)) {
            (0..=10).map(u).collect()
        } else {
            (1..=6).map(g).filter(|x| a.entry(x).is_ok_and(|e| e.is_some())).collect()
        };
        for x in labels {
            let r = ok(verify_thm48(&a, &x, 12))?;
            ensure!(r.bound_holds, "{name} {x}: {r:?}");
            ensure!(r.equality_b == is_bdv, "{name} {x}: equality_b = {}", r.equality_b);
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs: bound holds, equality exactly on bdv actions"))
}

fn run_property<S: Strategy>(name: &str, strategy: S, test: impl Fn(S::Value) -> std::result::Result<(), TestCaseError>) -> std::result::Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    let mut runner = TestRunner::new(common::config());
    runner.run(&strategy, test).map_err(|e| format!("{name}: {e}"))
}

fn property_suite() -> Check {
    run_property("submultiplicativity", (0.1f64..1.0, 1u32..4, 1usize..10), |(t, r, n)| {
        for m in [QuantumGroupModel::sq_u2(t).unwrap(), QuantumGroupModel::ao_f(&[t, 1.0, 1.0 / t]).unwrap()] {
            for kind in [GrowthKind::QuantumDim, GrowthKind::IntegralDim] {
                let rep = growth_sequence(&m, &u(r), n, kind, None).unwrap();
                prop_assert!(rep.is_submultiplicative(1e-9));
            }
            let rep = growth_sequence(&m, &u(r), n, GrowthKind::QuantumDim, None).unwrap();
            let (_, big) = m.lambda_bounds(&u(r)).unwrap();
            for p in &rep.sequence {
                prop_assert!(p.value >= big.powi(p.n as i32) * (1.0 - 1e-9));
            }
        }
        Ok(())
    })?;
    run_property("dimension homomorphism", (0.05f64..1.0, 0u32..10, 0u32..10), |(t, a, b)| {
        let m = QuantumGroupModel::ao_f(&[t, 1.0, 1.0, 1.0 / t]).unwrap();
        let out = m.fusion().fuse(&u(a), &u(b)).unwrap();
        let dim: u64 = out.iter().map(|(c, k)| k as u64 * m.intdim(c).unwrap()).sum();
        prop_assert_eq!(dim, m.intdim(&u(a)).unwrap() * m.intdim(&u(b)).unwrap());
        let d: f64 = out.iter().map(|(c, k)| k as f64 * m.qdim(c).unwrap().value).sum();
        let p = m.qdim(&u(a)).unwrap().value * m.qdim(&u(b)).unwrap().value;
        prop_assert!((d - p).abs() <= 1e-9 * p);
        Ok(())
    })?;
    run_property("CG-compatible spectra", (0.1f64..1.0, 0u32..6, 0u32..6), |(t, a, b)| {
        let m = QuantumGroupModel::sq_u2(t).unwrap();
        let lhs = m.jj_spectrum(&u(a)).unwrap().tensor(&m.jj_spectrum(&u(b)).unwrap());
        let mut rhs = EigenSpectrum::from_values(vec![]).unwrap();
        for (c, _) in m.fusion().fuse(&u(a), &u(b)).unwrap().iter() {
            rhs = rhs.union(&m.jj_spectrum(c).unwrap());
        }
        prop_assert!(lhs.approx_eq(&rhs, 1e-9));
        Ok(())
    })?;
    run_property("multiplicity chain", (0.1f64..1.0, 0usize..3), |(t, which)| {
        let m = match which {
            0 => QuantumGroupModel::sq_u2(t).unwrap(),
            1 => QuantumGroupModel::ao_f(&[t, 1.0, 1.0 / t]).unwrap(),
            _ => QuantumGroupModel::au_f(&[t, 1.0 / t]).unwrap(),
        };
        let mut actions = vec![translation_action(&m)];
        if let Ok(p) = su2_partner(&m) {
            actions.push(bdv_action(&m, &p, Correspondence::Identity).unwrap());
        }
        for a in &actions {
            for x in a.default_subset() {
                let e = a.spectral_entry(&x).unwrap();
                prop_assert!(e.mult as f64 <= e.q_mult() * (1.0 + REL_TOL));
                prop_assert!(e.q_mult() <= m.qdim(&x).unwrap().value * (1.0 + REL_TOL));
            }
        }
        Ok(())
    })?;
    run_property("path counting", (0usize..=20, 0usize..=22), |(n, k)| {
        let m = QuantumGroupModel::sq_u2(1.0).unwrap();
        let p = m.fusion().decompose_power(&u(1), n).unwrap();
        prop_assert_eq!(p.get(&u(k as u32)), common::walks(n, k));
        Ok(())
    })?;
    Ok("5 properties × 1000 cases, seed 0x5EED".into())
}

fn ao_dim_growth() -> Check {
    for rank in 3..=5usize {
        let mut eigs = vec![1.0; rank];
        eigs[0] = 0.5;
        eigs[rank - 1] = 2.0;
        let m = ok(QuantumGroupModel::ao_f(&eigs))?;
        for r in 1..=12u32 {
            let d = ok(m.intdim(&u(r)))?;
            ensure!(d == common::ao_dim(rank, r), "rank {rank}, u{r}: dim {d}");
            ensure!(d >= (1u64 << (r - 1)) * rank as u64, "rank {rank}, u{r}: {d} < 2^(r-1)·{rank}");
        }
        let rep = ok(growth_sequence(&m, &u(1), 12, GrowthKind::IntegralDim, None))?;
        ensure!(
            rep.verdict == Verdict::Exponential && rep.lower_bound > 1.0,
            "rank {rank}: {:?} with lower {}",
            rep.verdict,
            rep.lower_bound
        );
    }
    Ok("rank 3..5, r ≤ 12: dim(u_r) ≥ 2^(r-1) dim(u_1), verdict exponential from the lower bracket".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("AC1 S_qU(2) spectra", sq_u2_spectra),
        ("AC2 growth exactness", growth_exactness),
        ("AC3 A_u(n) dimensions", au_growth),
        ("AC4 Cuntz action bound", wang_bound),
        ("AC5 A_o(F) translation", ao_translation),
        ("AC6 trace criterion", trace_criterion),
        ("AC7 KMS suite", kms_suite),
        ("AC8 J*J bounds", thm48_suite),
        ("AC9 property suite", property_suite),
        ("AC10 A_o(F) integral growth", ao_dim_growth),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {name}: {detail} ({secs:.2}s)"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail} ({secs:.2}s)");
            }
        }
    }
    println!("{} of 10 acceptance criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
