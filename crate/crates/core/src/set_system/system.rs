use serde::{Deserialize, Serialize};

use crate::{Error, Result};

const WORD: usize = 64;

/// `m` subsets of the ground set `{0, ..., a-1}`, stored as bit masks.
///
/// Masks are `words_per_set` machine words wide, so ground sets of any size
/// work; the common case `a ≤ 64` is a single word per subset.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SetSystemJson", into = "SetSystemJson")]
pub struct SetSystem {
    ground_size: usize,
    words_per_set: usize,
    masks: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct SetSystemJson {
    a: usize,
    subsets: Vec<Vec<usize>>,
}

impl TryFrom<SetSystemJson> for SetSystem {
    type Error = Error;

    fn try_from(raw: SetSystemJson) -> Result<Self> {
        SetSystem::from_subsets(raw.a, &raw.subsets)
    }
}

impl From<SetSystem> for SetSystemJson {
    fn from(sys: SetSystem) -> Self {
        SetSystemJson {
            a: sys.ground_size,
            subsets: (0..sys.len()).map(|j| sys.members(j)).collect(),
        }
    }
}

impl SetSystem {
    /// An empty system (`m = 0`) over `[a]`.
    pub fn new(ground_size: usize) -> Self {
        SetSystem {
            ground_size,
            words_per_set: ground_size.div_ceil(WORD).max(1),
            masks: Vec::new(),
        }
    }

    /// Builds a system from explicit member lists. Each list must be strictly
    /// increasing and stay inside `[0, a)`.
    pub fn from_subsets<S: AsRef<[usize]>>(ground_size: usize, subsets: &[S]) -> Result<Self> {
        let mut sys = SetSystem::new(ground_size);
        for (index, subset) in subsets.iter().enumerate() {
            let subset = subset.as_ref();
            if subset.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::UnsortedSubset { index });
            }
            sys.push_subset(subset)?;
        }
        Ok(sys)
    }

    /// Interprets the low `m·a` bits of `bits` as the membership matrix:
    /// bit `j·a + q` set means `q ∈ S_j`.
    pub fn from_membership_bits(m: usize, ground_size: usize, bits: u64) -> Self {
        debug_assert!(m * ground_size <= 64);
        let mut sys = SetSystem::new(ground_size);
        for j in 0..m {
            let members: Vec<usize> = (0..ground_size)
                .filter(|q| bits >> (j * ground_size + q) & 1 == 1)
                .collect();
            sys.push_subset(&members).expect("members are in range");
        }
        sys
    }

    /// Appends a subset given by its members (any order, duplicates ignored).
    pub fn push_subset(&mut self, members: &[usize]) -> Result<()> {
        let start = self.masks.len();
        self.masks.resize(start + self.words_per_set, 0);
        for &q in members {
            if q >= self.ground_size {
                self.masks.truncate(start);
                return Err(Error::ElementOutOfRange {
                    element: q,
                    ground_size: self.ground_size,
                });
            }
            self.masks[start + q / WORD] |= 1 << (q % WORD);
        }
        Ok(())
    }

    /// Adds element `q` to subset `j`.
    pub fn insert(&mut self, j: usize, q: usize) -> Result<()> {
        if q >= self.ground_size {
            return Err(Error::ElementOutOfRange {
                element: q,
                ground_size: self.ground_size,
            });
        }
        let w = self.words_per_set;
        self.masks[j * w + q / WORD] |= 1 << (q % WORD);
        Ok(())
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    /// Number of subsets `m`.
    pub fn len(&self) -> usize {
        self.masks.len() / self.words_per_set
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn words_per_set(&self) -> usize {
        self.words_per_set
    }

    /// Raw mask words of subset `j`.
    pub fn mask(&self, j: usize) -> &[u64] {
        let w = self.words_per_set;
        &self.masks[j * w..(j + 1) * w]
    }

    pub fn contains(&self, j: usize, q: usize) -> bool {
        q < self.ground_size && self.mask(j)[q / WORD] >> (q % WORD) & 1 == 1
    }

    pub fn subset_size(&self, j: usize) -> u64 {
        popcount(self.mask(j))
    }

    /// Sorted members of subset `j`.
    pub fn members(&self, j: usize) -> Vec<usize> {
        (0..self.ground_size)
            .filter(|&q| self.contains(j, q))
            .collect()
    }

    /// The same system with subsets reordered: subset `i` of the result is
    /// subset `order[i]` of `self`.
    pub fn permuted(&self, order: &[usize]) -> SetSystem {
        assert_eq!(order.len(), self.len());
        let mut masks = Vec::with_capacity(self.masks.len());
        for &j in order {
            masks.extend_from_slice(self.mask(j));
        }
        SetSystem { masks, ..*self }
    }
}

pub(crate) fn popcount(words: &[u64]) -> u64 {
    words.iter().map(|w| w.count_ones() as u64).sum()
}

/// `Σ_j |S_j|`.
pub fn total_size(sys: &SetSystem) -> u64 {
    popcount(&sys.masks)
}

/// `degrees[q]` = number of subsets containing `q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeProfile {
    pub degrees: Vec<u64>,
}

impl DegreeProfile {
    pub fn sum(&self) -> u64 {
        self.degrees.iter().sum()
    }
}

pub fn degree_profile(sys: &SetSystem) -> DegreeProfile {
    let mut degrees = vec![0u64; sys.ground_size()];
    for j in 0..sys.len() {
        for (wi, &word) in sys.mask(j).iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                degrees[wi * WORD + b] += 1;
                bits &= bits - 1;
            }
        }
    }
    DegreeProfile { degrees }
}

/// Largest `|S_{j_1} ∩ … ∩ S_{j_r}|` over `r` distinct indices; zero when
/// `m < r`.
///
/// Panics if `r == 0`.
pub fn max_r_intersection(sys: &SetSystem, r: usize) -> u64 {
    assert!(r >= 1, "r must be positive");
    let m = sys.len();
    if m < r {
        return 0;
    }
    let full = vec![u64::MAX; sys.words_per_set()];
    let mut best = 0;
    let mut stack = vec![full];
    max_rec(sys, r, 0, &mut stack, &mut best);
    best
}

fn max_rec(sys: &SetSystem, r: usize, next: usize, stack: &mut Vec<Vec<u64>>, best: &mut u64) {
    let depth = stack.len() - 1;
    if depth == r {
        *best = (*best).max(popcount(stack.last().unwrap()));
        return;
    }
    let remaining = r - depth;
    for j in next..=sys.len() - remaining {
        let inter: Vec<u64> = stack
            .last()
            .unwrap()
            .iter()
            .zip(sys.mask(j))
            .map(|(a, b)| a & b)
            .collect();
        // intersections only shrink as more subsets are added
        if popcount(&inter) <= *best {
            continue;
        }
        stack.push(inter);
        max_rec(sys, r, j + 1, stack, best);
        stack.pop();
    }
}
