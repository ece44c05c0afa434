use num_bigint::BigUint;
use serde::Serialize;

use super::atoms::ordered_intersection_sum;
use super::system::{degree_profile, max_r_intersection, popcount, total_size, SetSystem};
use super::{binomial, pow};
use crate::bigfmt::decimal;

/// `r·(m·a^{1-1/r}·s^{1/r} + a)` as a float. Display only; decisions go
/// through [`intersection_bound_holds`].
pub fn intersection_bound(r: usize, m: u64, a: u64, s: u64) -> f64 {
    assert!(r >= 1, "r must be positive");
    let rf = r as f64;
    let (m, a, s) = (m as f64, a as f64, s as f64);
    rf * (m * a.powf(1.0 - 1.0 / rf) * s.powf(1.0 / rf) + a)
}

/// Exact test of `lhs ≤ r·(m·a^{1-1/r}·s^{1/r} + a)`.
///
/// When `lhs > r·a` both sides of `lhs - r·a ≤ r·m·a^{1-1/r}·s^{1/r}` are
/// nonnegative, so raising to the `r`-th power gives the integer comparison
/// `(lhs - r·a)^r ≤ r^r·m^r·a^{r-1}·s`.
pub fn intersection_bound_holds(lhs: u64, r: usize, m: u64, a: u64, s: u64) -> bool {
    assert!(r >= 1, "r must be positive");
    let ra = BigUint::from(r as u64) * a;
    let lhs = BigUint::from(lhs);
    if lhs <= ra {
        return true;
    }
    let excess = num_traits::pow(lhs - ra, r);
    let rhs = pow(r as u64, r) * pow(m, r) * pow(a, r - 1) * s;
    excess <= rhs
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IntersectionBoundReport {
    pub r: usize,
    /// `Σ|S_j|`
    pub lhs: u64,
    /// largest `r`-fold intersection of distinct subsets
    pub s: u64,
    pub bound: f64,
    pub holds: bool,
}

pub fn verify_intersection_bound(sys: &SetSystem, r: usize) -> IntersectionBoundReport {
    let lhs = total_size(sys);
    let s = max_r_intersection(sys, r);
    let (m, a) = (sys.len() as u64, sys.ground_size() as u64);
    IntersectionBoundReport {
        r,
        lhs,
        s,
        bound: intersection_bound(r, m, a, s),
        holds: intersection_bound_holds(lhs, r, m, a, s),
    }
}

/// Every intermediate relation of the intersection-bound double count, with
/// both sides kept so a failure can be inspected.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChainReport {
    pub r: usize,
    /// `Σ_q C(d_q, r)`
    #[serde(serialize_with = "decimal")]
    pub degree_binomial_sum: BigUint,
    /// `Σ_{j_1 < … < j_r} |S_{j_1} ∩ … ∩ S_{j_r}|`
    #[serde(serialize_with = "decimal")]
    pub unordered_intersection_sum: BigUint,
    pub identity_holds: bool,
    /// `|Q|` for `Q = {q : d_q ≥ r}`
    pub heavy_count: u64,
    /// `(Σ_{q∈Q} d_q)^r`
    #[serde(serialize_with = "decimal")]
    pub power_mean_lhs: BigUint,
    /// `|Q|^{r-1}·Σ_{q∈Q} d_q^r`
    #[serde(serialize_with = "decimal")]
    pub power_mean_rhs: BigUint,
    pub power_mean_holds: bool,
    /// Elements of `Q` with `d_q^r > r^r·C(d_q, r)`; expected empty.
    pub binomial_step_failures: Vec<usize>,
    /// `s·C(m, r)`, the cap on the unordered sum.
    #[serde(serialize_with = "decimal")]
    pub tuple_cap: BigUint,
    pub tuple_cap_holds: bool,
}

impl ChainReport {
    pub fn holds(&self) -> bool {
        self.identity_holds
            && self.power_mean_holds
            && self.binomial_step_failures.is_empty()
            && self.tuple_cap_holds
    }
}

pub fn chain_identities(sys: &SetSystem, r: usize) -> ChainReport {
    assert!(r >= 1, "r must be positive");
    let degrees = degree_profile(sys).degrees;
    let r64 = r as u64;

    let degree_binomial_sum: BigUint = degrees.iter().map(|&d| binomial(d, r64)).sum();
    let unordered_intersection_sum = unordered_intersection_sum(sys, r);

    let heavy: Vec<(usize, u64)> = degrees
        .iter()
        .copied()
        .enumerate()
        .filter(|&(_, d)| d >= r64)
        .collect();
    let heavy_count = heavy.len() as u64;
    let heavy_sum: u64 = heavy.iter().map(|&(_, d)| d).sum();
    let power_mean_lhs = pow(heavy_sum, r);
    let power_mean_rhs =
        pow(heavy_count, r - 1) * heavy.iter().map(|&(_, d)| pow(d, r)).sum::<BigUint>();

    let rr = pow(r64, r);
    let binomial_step_failures = heavy
        .iter()
        .filter(|&&(_, d)| pow(d, r) > &rr * binomial(d, r64))
        .map(|&(q, _)| q)
        .collect();

    let s = max_r_intersection(sys, r);
    let tuple_cap = binomial(sys.len() as u64, r64) * s;

    ChainReport {
        r,
        identity_holds: degree_binomial_sum == unordered_intersection_sum,
        tuple_cap_holds: unordered_intersection_sum <= tuple_cap,
        power_mean_holds: power_mean_lhs <= power_mean_rhs,
        degree_binomial_sum,
        unordered_intersection_sum,
        heavy_count,
        power_mean_lhs,
        power_mean_rhs,
        binomial_step_failures,
        tuple_cap,
    }
}

/// Sum of `|∩|` over all `r`-element index subsets, by direct enumeration.
fn unordered_intersection_sum(sys: &SetSystem, r: usize) -> BigUint {
    fn rec(sys: &SetSystem, left: usize, next: usize, acc: &[u64], total: &mut u128) {
        if left == 0 {
            *total += popcount(acc) as u128;
            return;
        }
        for j in next..=sys.len() - left {
            let inter: Vec<u64> = acc.iter().zip(sys.mask(j)).map(|(a, b)| a & b).collect();
            rec(sys, left - 1, j + 1, &inter, total);
        }
    }
    let mut total = 0u128;
    if sys.len() >= r {
        rec(sys, r, 0, &vec![u64::MAX; sys.words_per_set()], &mut total);
    }
    BigUint::from(total)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PowerMeanReport {
    pub r: usize,
    /// `a^{r-1}·Σ_{[m]^r} |∩|`
    #[serde(serialize_with = "decimal")]
    pub lhs: BigUint,
    /// `(Σ|S_j|)^r`
    #[serde(serialize_with = "decimal")]
    pub rhs: BigUint,
    pub holds: bool,
}

/// Checks `a^{r-1}·Σ_{ordered r-tuples} |∩| ≥ (Σ|S_j|)^r` exactly.
///
/// With `a = 0` every subset is empty and the check reads `0 ≥ 0`.
pub fn verify_power_mean_bound(sys: &SetSystem, r: usize) -> PowerMeanReport {
    assert!(r >= 1, "r must be positive");
    let lhs = pow(sys.ground_size() as u64, r - 1) * ordered_intersection_sum(sys, r);
    let rhs = pow(total_size(sys), r);
    PowerMeanReport {
        r,
        holds: lhs >= rhs,
        lhs,
        rhs,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(a: usize, subsets: &[&[usize]]) -> SetSystem {
        SetSystem::from_subsets(a, subsets).unwrap()
    }

    #[test]
    fn bound_values() {
        // r = 1 collapses to m·s + a
        assert_eq!(intersection_bound(1, 7, 5, 3), 26.0);
        assert!((intersection_bound(2, 3, 4, 1) - 20.0).abs() < 1e-12);
        assert!((intersection_bound(3, 2, 8, 8) - 72.0).abs() < 1e-9);
    }

    #[test]
    fn exact_bound_matches_at_equality() {
        // r=2, m=3, a=4, s=1 gives exactly 20
        assert!(intersection_bound_holds(20, 2, 3, 4, 1));
        assert!(!intersection_bound_holds(21, 2, 3, 4, 1));
        assert!(intersection_bound_holds(72, 3, 2, 8, 8));
        assert!(!intersection_bound_holds(73, 3, 2, 8, 8));
        assert!(intersection_bound_holds(26, 1, 7, 5, 3));
        assert!(!intersection_bound_holds(27, 1, 7, 5, 3));
    }

    #[test]
    fn empty_system_holds() {
        let s = sys(4, &[&[], &[], &[]]);
        for r in 1..=4 {
            let rep = verify_intersection_bound(&s, r);
            assert_eq!(rep.lhs, 0);
            assert!(rep.holds);
            assert_eq!(rep.bound, (r * 4) as f64);
        }
    }

    #[test]
    fn identical_full_subsets() {
        let full: &[usize] = &[0, 1, 2, 3, 4];
        let s = sys(5, &[full, full, full, full]);
        for r in 1..=4 {
            let rep = verify_intersection_bound(&s, r);
            assert_eq!(rep.lhs, 20);
            assert_eq!(rep.s, 5);
            assert!(rep.holds);
        }
    }

    #[test]
    fn chain_examples() {
        let rep = chain_identities(&sys(3, &[&[], &[]]), 2);
        assert_eq!(rep.degree_binomial_sum, BigUint::from(0u32));
        assert_eq!(rep.unordered_intersection_sum, BigUint::from(0u32));
        assert!(rep.holds());

        let rep = chain_identities(&sys(1, &[&[0], &[0]]), 2);
        assert_eq!(rep.degree_binomial_sum, BigUint::from(1u32));
        assert_eq!(rep.unordered_intersection_sum, BigUint::from(1u32));
        assert!(rep.holds());
    }

    #[test]
    fn chain_hand_computed() {
        // degrees (3, 2, 1), r = 2: C(3,2)+C(2,2)+0 = 4
        // pairs: {0,1}∩{0,1,2}={0,1}, {0,1}∩{0}={0}, {0,1,2}∩{0}={0} -> 2+1+1 = 4
        let rep = chain_identities(&sys(3, &[&[0, 1], &[0, 1, 2], &[0]]), 2);
        assert_eq!(rep.degree_binomial_sum, BigUint::from(4u32));
        assert!(rep.identity_holds);
        assert_eq!(rep.heavy_count, 2);
        assert_eq!(rep.power_mean_lhs, BigUint::from(25u32));
        assert_eq!(rep.power_mean_rhs, BigUint::from(2u32 * 13));
        assert_eq!(rep.tuple_cap, BigUint::from(6u32));
        assert!(rep.holds());
    }

    #[test]
    fn power_mean_examples() {
        let rep = verify_power_mean_bound(&sys(3, &[&[], &[]]), 2);
        assert_eq!(rep.lhs, BigUint::from(0u32));
        assert!(rep.holds);

        for a in 1..=6usize {
            let full: Vec<usize> = (0..a).collect();
            let s = SetSystem::from_subsets(a, &[full]).unwrap();
            for r in 1..=5 {
                let rep = verify_power_mean_bound(&s, r);
                assert_eq!(rep.lhs, rep.rhs, "tight at a={a} r={r}");
                assert!(rep.holds);
            }
        }
    }

    #[test]
    fn power_mean_zero_ground() {
        let s = SetSystem::from_subsets::<Vec<usize>>(0, &[vec![], vec![]]).unwrap();
        for r in 1..=3 {
            let rep = verify_power_mean_bound(&s, r);
            assert!(rep.holds);
            assert_eq!(rep.rhs, BigUint::from(0u32));
        }
    }
}
