//! Dimensional invariants of compact quantum groups and their ergodic
//! actions: fusion rules, growth rates of quantum and integral dimensions,
//! spectra of the modular operator and type III bounds.
//!
//! ```
//! use qgrowth::{IrrepLabel, QuantumGroupModel};
//!
//! let m = QuantumGroupModel::sq_u2(0.5).unwrap();
//! let u1 = IrrepLabel::spin(1);
//! assert_eq!(m.fusion().fuse(&u1, &u1).unwrap().to_string(), "u0 + u2");
//! assert_eq!(m.qdim(&u1).unwrap().value, 2.5);
//! ```

pub mod action;
pub mod corpus;
pub mod error;
pub mod exec;
pub mod fusion;
pub mod growth;
pub mod io;
pub mod label;
pub mod laurent;
pub mod model;
pub mod modular;
pub mod spectrum;

pub use action::{
    bdv_action, cuntz_action, custom_action, kms_check, kms_check_with, su2_partner, translation_action,
    verify_thm48, Correspondence, KmsReport, SpectralActionModel, SpectralEntry, Thm48Report,
};
pub use error::{Error, Result};
pub use exec::Execution;
pub use fusion::{FusionSystem, FusionTable, MultiplicityVector};
pub use growth::{
    growth_rate_bracket, growth_sequence, growth_sequence_with, verify_prop43, GrowthKind, GrowthReport,
    Prop43Report, Verdict,
};
pub use label::{IrrepLabel, Letter, Word};
pub use laurent::LaurentPoly;
pub use model::{q_from_trace, FamilyKind, QuantumGroupModel};
pub use modular::{
    connes_subgroup, delta_point_spectrum, is_tracial, kac_bound, kac_exponential_necessity, type3_lower_bound,
    Classification, ModularSpectrumReport,
};
pub use spectrum::EigenSpectrum;
