use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::system::{popcount, SetSystem};

/// One cell of the partition of `[a]` by the subsets and their complements:
/// the `count` elements whose membership signature is exactly `signature`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Atom {
    pub signature: Vec<usize>,
    pub count: u64,
}

/// Nonzero atoms `μ_A`, ordered by signature.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomDecomposition {
    pub atoms: Vec<Atom>,
}

impl AtomDecomposition {
    /// `Σ_A μ_A`; equals the ground size.
    pub fn total(&self) -> u64 {
        self.atoms.iter().map(|a| a.count).sum()
    }

    /// `Σ_A |A|^power·μ_A`.
    pub fn weighted_sum(&self, power: usize) -> BigUint {
        self.atoms
            .iter()
            .map(|atom| num_traits::pow(BigUint::from(atom.signature.len()), power) * atom.count)
            .sum()
    }

    pub fn get(&self, signature: &[usize]) -> u64 {
        self.atoms
            .iter()
            .find(|a| a.signature == signature)
            .map_or(0, |a| a.count)
    }
}

pub fn atom_decomposition(sys: &SetSystem) -> AtomDecomposition {
    let mut counts: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
    for q in 0..sys.ground_size() {
        let signature: Vec<usize> = (0..sys.len()).filter(|&j| sys.contains(j, q)).collect();
        *counts.entry(signature).or_default() += 1;
    }
    AtomDecomposition {
        atoms: counts
            .into_iter()
            .map(|(signature, count)| Atom { signature, count })
            .collect(),
    }
}

/// `Σ_{(j_1, …, j_r) ∈ [m]^r} |S_{j_1} ∩ … ∩ S_{j_r}|`, repetition allowed.
///
/// Enumerates the `m^r` ordered tuples depth-first, carrying the prefix
/// intersection; a prefix that is already empty contributes nothing and is cut.
pub fn ordered_intersection_sum(sys: &SetSystem, r: usize) -> BigUint {
    assert!(r >= 1, "r must be positive");
    fn rec(sys: &SetSystem, left: usize, acc: &[u64], total: &mut u128) {
        if left == 0 {
            *total += popcount(acc) as u128;
            return;
        }
        for j in 0..sys.len() {
            let inter: Vec<u64> = acc.iter().zip(sys.mask(j)).map(|(a, b)| a & b).collect();
            if inter.iter().all(|&w| w == 0) {
                continue;
            }
            rec(sys, left - 1, &inter, total);
        }
    }
    let mut total = 0u128;
    rec(sys, r, &vec![u64::MAX; sys.words_per_set()], &mut total);
    BigUint::from(total)
}
