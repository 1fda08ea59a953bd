//! Exact scalars and linear algebra: rationals, `Q(t)` with its `t`-adic
//! valuation, tropical numbers, matrices and integer lattices.

mod field;
mod lattice;
mod matrix;
mod ratfn;
mod rational;
mod subsets;
mod tropvalue;

pub use field::{Field, Valued};
pub use lattice::{hermite_normal_form, lattice_kernel};
pub use matrix::{exact_rank, kminors_val, IntMatrix, Matrix, QMatrix, TMatrix};
pub use ratfn::{QPoly, TRatFn};
pub use rational::{q, qi, Rational};
pub use subsets::{binomial, k_subsets, parse_subset_label, subset_label, subset_rank};
pub use tropvalue::TropValue;

/// `t`-adic valuation of an element of `Q(t)`.
pub fn tval(f: &TRatFn) -> TropValue {
    f.tval()
}
