//! Exact linear algebra over finite fields, Hilbert-function invariants of
//! finite point configurations in projective space, and constructive
//! regularity bounds via unions of hyperplanes.
//!
//! The crate is organized bottom-up:
//!
//! * [`exactalg`] - arithmetic in GF(p^e) and dense row-reduction.
//! * [`geometry`] - projective points, configurations, flats, hyperplanes.
//! * [`hilbert`] - evaluation matrices, Hilbert functions, h-vectors, reg.
//! * [`position`] - semi-uniform position profiles and classification.
//! * [`bounds`] - closed-form degree margins and threshold predicates.
//! * [`castelnuovo`] - separator certificates built from hyperplane pencils.
//! * [`generators`] - deterministic families of test configurations.

pub mod bounds;
pub mod castelnuovo;
pub mod exactalg;
pub mod generators;
pub mod geometry;
pub mod hilbert;
pub mod position;

mod combo;

pub use bounds::{
    BoundError, BoundQuery, BoundVariant, ExceptionTuple, MarginLemma, MarginQuery, ThresholdQuery,
};
pub use castelnuovo::{
    CertCheck, GeneralForm, Method, RegularityBound, SepError, SeparatorCertificate,
};
pub use exactalg::{ArithError, ExactMatrix, FieldElement, FieldSpec};
pub use generators::{F2Mode, GenError, MonomialSection, RncParam};
pub use geometry::{EnumLimits, Flat, GeomError, Hyperplane, PointConfig, ProjectivePoint};
pub use hilbert::{HilbertError, HilbertSummary};
pub use position::{Classification, DichotomyCase, PositionError, PositionProfile};
