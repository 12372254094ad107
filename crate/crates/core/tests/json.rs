mod common;

use proptest::prelude::*;
use qgrowth::action::{DEFAULT_SEED, KMS_TOL};
use qgrowth::io::{action_from_str, model_from_str, to_json};
use qgrowth::*;
use serde::de::DeserializeOwned;
use serde::Serialize;

fn round_trip<T: Serialize + DeserializeOwned + PartialEq + std::fmt::Debug>(x: &T) {
    let text = to_json(x);
    let back: T = serde_json::from_str(&text).unwrap();
    assert_eq!(&back, x, "{text}");
    assert_eq!(to_json(&back), text);
}

#[test]
fn reports_round_trip() {
    let m = QuantumGroupModel::ao_f(&[0.5, 1.0, 2.0]).unwrap();
    let u1 = IrrepLabel::spin(1);
    let a = translation_action(&m);
    round_trip(&growth_sequence(&m, &u1, 8, GrowthKind::QuantumDim, None).unwrap());
    round_trip(&growth_sequence(&m, &u1, 8, GrowthKind::Multiplicity, Some(&a)).unwrap());
    round_trip(&verify_prop43(&m, &u1, 8).unwrap());
    round_trip(&kms_check(&a, &u1, 10, KMS_TOL, DEFAULT_SEED).unwrap());
    round_trip(&verify_thm48(&a, &u1, 8).unwrap());
    round_trip(&delta_point_spectrum(&a, None).unwrap());
    round_trip(&type3_lower_bound(&a, 8).unwrap());
    round_trip(&is_tracial(&a).unwrap());
    round_trip(&kac_bound(&cuntz_action(3, 3).unwrap()).unwrap());
    round_trip(&m.fusion().decompose_power(&u1, 5).unwrap());
    round_trip(&m.jj_spectrum(&IrrepLabel::spin(2)).unwrap());
    round_trip(&QuantumGroupModel::sq_u2(0.5).unwrap().jj_spectrum(&IrrepLabel::spin(3)).unwrap());
}

#[test]
fn label_encoding() {
    assert_eq!(serde_json::to_string(&IrrepLabel::spin(3)).unwrap(), r#"{"spin":3}"#);
    assert_eq!(serde_json::to_string(&IrrepLabel::word("gḡ")).unwrap(), r#"{"word":"gG"}"#);
    assert_eq!(serde_json::to_string(&IrrepLabel::key("x")).unwrap(), r#"{"key":"x"}"#);
}

#[test]
fn files_load_with_relative_base() {
    let dir = std::env::temp_dir().join(format!("qgrowth-json-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join("base.json"), r#"{"family": "au_f", "fstarf_eigenvalues": [1, 1, 1]}"#).unwrap();
    std::fs::write(
        dir.join("act.json"),
        r#"{"base": "base.json", "spectrum": [{"irrep": "g", "mult": 1, "JJ": [3]}], "factorial_assumptions": true}"#,
    )
    .unwrap();
    let a = io::load_action(&dir.join("act.json")).unwrap();
    assert!(a.factorial_assumptions());
    assert_eq!(kac_bound(&a).unwrap().bound, 1.0 / 3.0);
    let err = io::load_action(&dir.join("missing.json")).unwrap_err();
    assert!(err.to_string().contains("missing.json"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn loaded_actions_obey_chain() {
    let text = r#"{"base": {"family": "au_f", "fstarf_eigenvalues": [1, 1, 1]},
        "spectrum": [{"irrep": "g", "mult": 2, "JJ": [2, 0.5]}, {"irrep": "G", "mult": 2, "JJ": [2, 0.5]}]}"#;
    let a = action_from_str(text, None).unwrap();
    for x in a.spectral_labels(0) {
        let e = a.spectral_entry(&x).unwrap();
        assert!(e.mult as f64 <= e.q_mult() && e.q_mult() <= a.base().qdim(&x).unwrap().value);
    }
    assert!(model_from_str("{").is_err());
}

proptest! {
    #![proptest_config(common::config())]

    #[test]
    fn growth_reports_round_trip(t in 0.05f64..1.0, r in 0u32..5, n in 1usize..8) {
        let m = QuantumGroupModel::sq_u2(t).unwrap();
        let rep = growth_sequence(&m, &IrrepLabel::spin(r), n, GrowthKind::QuantumDim, None).unwrap();
        let back: GrowthReport = serde_json::from_str(&to_json(&rep)).unwrap();
        prop_assert_eq!(back, rep);
    }
}
