//! Finite set systems `S_1, ..., S_m ⊂ [a]` and the double-counting machinery
//! used to bound `|S_1| + ... + |S_m|`.
//!
//! Two inequalities are verified here, both with exact integer arithmetic:
//!
//! - the *intersection bound*: if every `r`-fold intersection of distinct
//!   subsets has at most `s` elements then
//!   `Σ|S_j| ≤ r(m·a^{1-1/r}·s^{1/r} + a)`;
//! - the *power-mean bound*: `a^{r-1}·Σ_{(j_1..j_r) ∈ [m]^r} |S_{j_1} ∩ … ∩ S_{j_r}| ≥ (Σ|S_j|)^r`.
//!
//! [`chain_identities`] and [`atom_decomposition`] expose every intermediate
//! relation of the two double counts so each step can be checked on its own.

mod atoms;
mod bounds;
pub mod fuzz;
mod system;

pub use atoms::{atom_decomposition, ordered_intersection_sum, Atom, AtomDecomposition};
pub use bounds::{
    chain_identities, intersection_bound, intersection_bound_holds, verify_intersection_bound,
    verify_power_mean_bound, ChainReport, IntersectionBoundReport, PowerMeanReport,
};
pub use system::{degree_profile, max_r_intersection, total_size, DegreeProfile, SetSystem};

use num_bigint::BigUint;

/// `n choose k` as a big integer; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub(crate) fn pow(base: u64, exp: usize) -> BigUint {
    num_traits::pow(BigUint::from(base), exp)
}
