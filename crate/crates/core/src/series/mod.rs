//! Local analysis at `c = ∞` over `F_q`: truncated Laurent series in the
//! uniformizer `T` with `T^(−d) = −c`, the inverse branches of `z^d + c`,
//! and coded roots of `f^n − f^m`.

mod branch;
mod splitting;
mod tseries;

pub use branch::{
    branch_apply, c_series, coded_root, composition_count, forward, omega, BranchCode,
};
pub use splitting::{
    c_poly_to_series, coded_roots, forward_iterate, product_of_linear, verify_splitting,
    working_precision, RootInfo, SplittingReport,
};
pub use tseries::{dth_root_auto, dth_root_unit, TSeries};
