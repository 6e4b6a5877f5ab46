//! Exact decisions of `G`-equivalence for sampled vector-valued maps.
//!
//! A map `u: T -> F^n` is given by finitely many samples. Two maps are
//! `G`-equivalent when a single `g` in a matrix group `G` sends `u(t)` to
//! `v(t)` for every sample `t`. This crate computes complete invariant
//! signatures, canonical representatives and explicit witnesses for `GL`,
//! `SL`, user-defined subgroups and their affine extensions, and checks its
//! own verdicts against exhaustive orbit search over small prime fields.
//!
//! Everything is generic over a [`Field`]; the aliases below fix the
//! common choices.

pub mod dataset;
pub mod equivalence;
pub mod error;
pub mod field;
pub mod group;
pub mod invariants;
pub mod matrix;
pub mod oracle;
pub mod random;
pub mod sample;
pub mod signature;

pub use dataset::AnyMap;
pub use equivalence::{
    build_witness, decide, decide_affine, decide_gl, decide_subgroup, verify_witness, DecideOptions, Decision, Reason,
    Witness,
};
pub use error::{Error, Result};
pub use field::{ApproxField, Dual, DualField, Field, FieldSpec, PrimeField, Rationals, ScalarField};
pub use group::{CustomGroup, GroupSpec};
pub use invariants::{check_algebraic_independence, evaluate_generators};
pub use matrix::{Matrix, RankProfile};
pub use oracle::{brute_force_equivalent, enumerate_group};
pub use sample::{BasePoints, SampleKey, SampleMap};
pub use signature::{compute_signature, reconstruct_canonical, signatures_equal, Signature};

pub use num_rational::BigRational as Rational;

pub type RationalMatrix = Matrix<Rationals>;
pub type PrimeMatrix = Matrix<PrimeField>;
pub type ApproxMatrix = Matrix<ApproxField<f64>>;
pub type Approx32Matrix = Matrix<ApproxField<f32>>;

pub type RationalMap = SampleMap<Rationals>;
pub type PrimeMap = SampleMap<PrimeField>;
pub type ApproxMap = SampleMap<ApproxField<f64>>;

pub type RationalSignature = Signature<Rationals>;
pub type PrimeSignature = Signature<PrimeField>;

pub type RationalGroup = GroupSpec<Rationals>;
pub type PrimeGroup = GroupSpec<PrimeField>;
