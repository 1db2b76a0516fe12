//! Nested harmonic sums `S_{a_1,...,a_k}`: exact finite values, the
//! quasi-shuffle product, analytic continuation from the even integers to
//! the complex plane, and bilinear reflection identities relating
//! `S_a(z) S_b(-1-z)` to single sums of argument `z` and `-1-z`.

pub mod basis;
pub mod constants;
pub mod continuation;
pub mod db;
pub mod error;
pub mod expr;
pub mod finite;
pub mod identity;
pub mod index;
pub mod shuffle;

pub use basis::{build_ansatz, build_basis, in_basis, unknown_count, AnsatzEntry};
pub use constants::{build_constants, ConstantMonomial, ConstantSymbol};
pub use continuation::{evaluate, evaluate_expression, EvalContext};
pub use error::{HsumError, Result};
pub use expr::{Expression, SumRef, Term};
pub use db::{builtin_corpus, load_corpus, parse_identity, save_corpus, CorpusFile};
pub use finite::finite_sum;
pub use identity::{
    compose_trilinear, derive_identity, pole_separation_check, reflect, verify_identity, IdentityRecord, Provenance,
    SamplePlan,
};
pub use index::{parse_index_list, ArgTag, IndexVector};
pub use shuffle::stuffle_product;
