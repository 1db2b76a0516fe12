//! Reflection identities: records, verification, derivation, reflection,
//! composition and pole separation.

mod compose;
mod derive;
mod poles;
pub mod reconstruct;
mod record;
mod sample;
mod verify;

pub use compose::{compose_trilinear, lookup_bilinear};
pub use derive::{
    columns, derive_identity, Column, Derivation, Deriver, COEFFICIENT_DIGITS, DEFAULT_DERIVE_DIGITS, FRESH_POINTS, FRESH_TOLERANCE, MAX_DENOMINATOR,
    MIN_DERIVE_DIGITS,
};
pub use poles::{pole_separation_check, PoleReport, PoleSide, POLE_TOLERANCE};
pub use record::{reflect, IdentityRecord, Provenance};
pub use sample::{SamplePlan, DEFAULT_SEED, MIN_DERIVE_POINTS};
pub use verify::{evaluate_left, residual_at, verify_at, verify_identity, VerifyReport};
