//! Exact integer and rational kernels.
//!
//! Everything here is exact: residues live in `u64` with `u128`
//! intermediates, sums and fractions are [`ExactRational`], and inequalities
//! that involve `√p` are decided by squaring.

mod bounds;
mod dedekind;
mod farey;
mod ncf;
mod prime;

pub use bounds::{
    dedekind_bound_holds, farey_count_bound, le_affine_sqrt, length_bound_holds, ln_enclosure,
    lt_affine_sqrt, Decision,
};
pub use dedekind::{
    dedekind_brute, dedekind_fast, dedekind_from_ncf, dedekind_sum, floor_product_sum,
    weighted_floor_sum,
};
pub use farey::{bad_set, is_farey_neighbour, BadSetBudget, FareyConfig};
pub use ncf::{
    canonical_part, length, ncf_eval, ncf_expand, ncf_summary, rcf_total, NcfExpansion,
    NcfQuotients, NcfSummary,
};
pub use prime::{is_prime, isqrt, mod_inverse, PrimeModulus, Residue};

/// Exact rational number in lowest terms with a positive denominator.
pub type ExactRational = num_rational::BigRational;

pub(crate) fn rat(n: i128, d: i128) -> ExactRational {
    ExactRational::new(n.into(), d.into())
}
