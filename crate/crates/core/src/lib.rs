//! Entanglement of SU(2)-invariant states of two spins.
//!
//! A state invariant under joint rotations is fixed by its multiplet weights
//! `A(J)`; its partial transpose has the same multiplet structure with
//! coefficients `B(K)`. This crate computes `B(K)` by three independent
//! routes and evaluates the PPT, correlator, reduction, majorization and
//! local-uncertainty criteria on top of them.
//!
//! ```
//! use su2ent::{b_from_diagonal, full_report, Su2State, VERDICT_TOL};
//!
//! let singlet = Su2State::new(1, 1, vec![1.0, 0.0]).unwrap();
//! let b = b_from_diagonal(&singlet);
//! assert!((b.coeffs()[0] + 0.5).abs() < 1e-12);
//! assert!(full_report(&singlet, VERDICT_TOL).unwrap().ppt_negative);
//! ```

pub mod angular_momentum;
pub mod cli;
pub mod criteria;
mod ddouble;
pub mod error;
pub mod linalg;
pub mod partial_transpose;
pub mod state;

pub use angular_momentum::{
    clebsch_gordan, coupled_basis, difference_projector, k_operators, multiplet_projector,
    spin_matrices, CouplingTable, SpinPair, TwiceSpin,
};
pub use criteria::{
    full_report, lur_check, majorization_check, max_negativity_necessary, reduction_check,
    sufficient_npt, witness_expectation, Analyzer, CriteriaReport, VERDICT_TOL,
};
pub use error::{Error, Result};
pub use linalg::DenseOperator;
pub use partial_transpose::{
    b_from_a_linear, b_from_dense, b_from_diagonal, b_from_sum_rules, closed_form_half,
    closed_form_one, combined_sum_rule_residual, partial_transpose_dense,
    vandermonde_determinant, PtSpectrum, SpectrumSolver,
};
pub use state::{from_dense, random_state, ring_reduction, thermal_pair, Su2State};
