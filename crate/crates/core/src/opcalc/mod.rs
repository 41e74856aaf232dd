//! Operators on `C[x]` as truncated matrices over the monomial basis
//! `x^0..x^N`, and the identity catalog built on them.
//!
//! Each matrix carries a degree `raise` bound and a `window`: the largest
//! column `j` on which the matrix agrees with the untruncated operator.
//! Identities are compared only inside the common window.

mod build;
mod matrix;
mod overline;
mod verify;

pub use build::{
    index_series, normal_order_subst, op_d, op_g, op_ginv, op_theta, op_x, series_of, Calculus,
    DiagBasis,
};
pub use matrix::{EntryMismatch, Operator};
pub use overline::{overline, OverlineOp};
pub use verify::{
    compare_ops, random_operator, run_catalog, run_identity, verify_change_of_basis,
    verify_commutator, verify_conj_dp, verify_dpk, verify_eigen_q, verify_overline_consistency,
    verify_prop_dp, verify_prop_x, verify_qexp_examples, verify_repr_catalog,
    verify_representation_theorem, verify_theta_corollary, verify_xi_repr, CatalogConfig, Check,
    Report, Status, CATALOG, DEFAULT_SEED,
};
