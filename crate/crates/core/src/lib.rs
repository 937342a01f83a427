//! Exact-rational boson realizations of polynomial deformations of su(2).
//!
//! The algebra `[J3, J+-] = +-J+-`, `[J+, J-] = sum c_i J3^i` is realized on
//! truncated bosonic Fock spaces with one, two or three modes. Everything is
//! computed over the rationals and checked with exact equality.

pub mod algebra;
pub mod exec;
pub mod export;
pub mod faulhaber;
pub mod fock;
pub mod pbw;
pub mod realizations;
pub mod sampling;
pub mod scalar;
pub mod verifier;

pub use algebra::{make_algebra, AlgebraError, AlgebraSpec, Preset};
pub use exec::Execution;
pub use export::{export_json, ExportDocument, ExportError};
pub use faulhaber::{derive_dr, BracketVariant, DrTable, FaulhaberError};
pub use fock::{FockState, SpaceSpec, SparseOperator};
pub use pbw::{Generator, Ideal, PbwMonomial};
pub use realizations::{
    build_fock_rep, build_kind, build_single_boson, build_three_boson, build_two_boson_central,
    build_two_boson_lowering, substitute_mode3, Fault, ModePolynomial, RealizationBuilder,
    RealizationError, RealizationKind, RealizationSet,
};
pub use scalar::{format_scalar, int, parse_scalar, ratio, ExactScalar};
pub use verifier::{
    check_algebra, check_fock_equivalence, check_ordering_identities, check_quotient_equivalence,
    CheckResult, CheckStatus, VerificationReport, VerifyError,
};
