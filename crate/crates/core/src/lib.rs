//! Multivariate Eulerian polynomials, their mirror symmetry, and the exact
//! permutation counts that follow from it.
//!
//! `A_n(x) = Σ_{σ ∈ S_{n+1}} Π_{i ∈ DT(σ)} x_i` lives on the variable window
//! `[2, n+1]`. Its multiaffine reciprocal equals its mirror image, and the
//! bijection behind that fact, together with closed-form counts of
//! permutations by descent-top set, yields the identities checked in
//! [`identities`].

pub mod bijection;
pub mod counting;
pub mod error;
pub mod eulerian;
pub mod identities;
pub mod json;
pub mod perm;
pub mod poly;
pub mod report;
pub mod varset;

pub use bijection::{
    lift, psi_forward, psi_inverse, psi_inverse_trace, verify_theorem, BijectionTrace, InverseTrace,
};
pub use counting::{
    alpha, alpha_hat, count_descents_within, count_exact_descents, hat_factorial, min_stable_k,
    n_stability_check, tau, tau_set, GapTuple,
};
pub use error::{Error, Result};
pub use eulerian::{
    eulerian_descent_ascent_poly, eulerian_descent_poly, eulerian_excedance_poly,
    univariate_eulerian, BiPoly,
};
pub use identities::{
    check_combinatorial_sums, check_excedance_equivalence, check_reordering_sums,
    check_sequential_sums, sweep, Selector,
};
pub use perm::{count_r, enumerate_r, enumerate_r_exc, enumerate_x, Perm, StatSets};
pub use poly::{Coeff, MultiaffinePoly, VarWindow};
pub use report::{Chain, Expression, Identity, IdentityReport};
pub use varset::VarSet;
