//! BV operators, the derived bracket, and identity verification.

mod kernel;
mod model;
mod verify;

pub use kernel::{
    apply_b, bracket, check_bv7, check_jacobi_antisym, check_poisson, Kernel, Mismatch,
};
pub use model::{BRule, BvModel};
pub use verify::{
    compare_operators, verify_axioms, Counterexample, Identity, IdentityReport, OperatorComparison,
    Sweep, VerificationReport,
};
