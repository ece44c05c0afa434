//! Exhaustive and seeded-random verification of the set-system inequalities.
//!
//! Exhaustive mode walks every system with exactly `m_max` subsets of
//! `[a_max]`, ordered by the `m·a`-bit membership counter. Random mode draws
//! `m ∈ [0, m_max]`, `a ∈ [1, a_max]` and a density `p` per trial; trial `t`
//! uses its own ChaCha stream so results do not depend on scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    atom_decomposition, chain_identities, ordered_intersection_sum, total_size,
    verify_intersection_bound, verify_power_mean_bound, SetSystem,
};
use crate::{Error, Result};

/// Largest `m·a` accepted in exhaustive mode (`2^24` systems).
pub const EXHAUSTIVE_BITS_CAP: usize = 24;

/// How many violations a summary keeps verbatim.
pub const KEPT_VIOLATIONS: usize = 32;

const DENSITIES: [f64; 4] = [0.125, 0.25, 0.5, 0.75];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FuzzMode {
    Exhaustive,
    Random,
}

/// Which inequality families a run checks.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmaSelection {
    /// intersection bound plus its double-counting chain
    IntersectionBound,
    /// power-mean bound plus the atom identities
    PowerMean,
    #[default]
    Both,
}

impl LemmaSelection {
    fn intersection(self) -> bool {
        matches!(
            self,
            LemmaSelection::IntersectionBound | LemmaSelection::Both
        )
    }

    fn power_mean(self) -> bool {
        matches!(self, LemmaSelection::PowerMean | LemmaSelection::Both)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FuzzConfig {
    pub mode: FuzzMode,
    pub m_max: usize,
    pub a_max: usize,
    pub r_set: Vec<usize>,
    #[serde(default)]
    pub trials: u64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub lemmas: LemmaSelection,
}

impl FuzzConfig {
    pub fn validate(&self) -> Result<()> {
        if let Some(&r) = self.r_set.iter().find(|&&r| r == 0) {
            return Err(Error::InvalidArity { got: r, min: 1 });
        }
        match self.mode {
            FuzzMode::Exhaustive if self.m_max * self.a_max > EXHAUSTIVE_BITS_CAP => {
                Err(Error::InvalidConfig(format!(
                    "exhaustive mode needs m·a ≤ {EXHAUSTIVE_BITS_CAP}, got {}·{}",
                    self.m_max, self.a_max
                )))
            }
            FuzzMode::Random if self.a_max == 0 => {
                Err(Error::InvalidConfig("random mode needs a_max ≥ 1".into()))
            }
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub check: String,
    pub r: usize,
    pub system: SetSystem,
}

impl Violation {
    fn size_key(&self) -> (usize, u64, usize) {
        let sys = &self.system;
        (sys.len() * sys.ground_size(), total_size(sys), self.r)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FuzzSummary {
    /// systems examined
    pub checked: u64,
    /// smallest violations first, at most [`KEPT_VIOLATIONS`]
    pub violations: Vec<Violation>,
    pub violation_count: u64,
    pub seed: u64,
    pub config: FuzzConfig,
}

impl FuzzSummary {
    pub fn minimal_violation(&self) -> Option<&Violation> {
        self.violations.first()
    }
}

#[derive(Default)]
struct Partial {
    checked: u64,
    count: u64,
    kept: Vec<Violation>,
}

impl Partial {
    fn merge(mut self, other: Partial) -> Partial {
        self.checked += other.checked;
        self.count += other.count;
        self.kept.extend(other.kept);
        self.kept.sort_by_key(|v| v.size_key());
        self.kept.truncate(KEPT_VIOLATIONS);
        self
    }
}

/// Runs every selected check on one system and returns the failed ones.
pub fn check_system(sys: &SetSystem, r_set: &[usize], lemmas: LemmaSelection) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut fail = |check: &str, r: usize| {
        out.push(Violation {
            check: check.to_string(),
            r,
            system: sys.clone(),
        })
    };
    let atoms = lemmas.power_mean().then(|| atom_decomposition(sys));
    if let Some(atoms) = &atoms {
        if atoms.total() != sys.ground_size() as u64 {
            fail("atom_total", 0);
        }
        if atoms.weighted_sum(1) != total_size(sys).into() {
            fail("atom_first_moment", 0);
        }
    }
    for &r in r_set {
        if lemmas.intersection() {
            if !verify_intersection_bound(sys, r).holds {
                fail("intersection_bound", r);
            }
            let chain = chain_identities(sys, r);
            if !chain.identity_holds {
                fail("binomial_identity", r);
            }
            if !chain.power_mean_holds {
                fail("heavy_power_mean", r);
            }
            if !chain.binomial_step_failures.is_empty() {
                fail("binomial_step", r);
            }
            if !chain.tuple_cap_holds {
                fail("tuple_cap", r);
            }
        }
        if let Some(atoms) = &atoms {
            if !verify_power_mean_bound(sys, r).holds {
                fail("power_mean_bound", r);
            }
            if atoms.weighted_sum(r) != ordered_intersection_sum(sys, r) {
                fail("atom_moment", r);
            }
        }
    }
    out
}

fn one(sys: &SetSystem, config: &FuzzConfig) -> Partial {
    let violations = check_system(sys, &config.r_set, config.lemmas);
    let count = violations.len() as u64;
    Partial {
        checked: 1,
        count,
        kept: violations,
    }
}

/// Draws the random system for trial `trial` of a run seeded with `seed`.
pub fn random_system(seed: u64, trial: u64, m_max: usize, a_max: usize) -> SetSystem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let m = rng.gen_range(0..=m_max);
    let a = rng.gen_range(1..=a_max.max(1));
    let p = DENSITIES[rng.gen_range(0..DENSITIES.len())];
    let mut sys = SetSystem::new(a);
    for _ in 0..m {
        let members: Vec<usize> = (0..a).filter(|_| rng.gen_bool(p)).collect();
        sys.push_subset(&members).expect("members below a");
    }
    sys
}

pub fn fuzz(config: &FuzzConfig) -> Result<FuzzSummary> {
    config.validate()?;
    let partial = match config.mode {
        FuzzMode::Exhaustive => {
            let (m, a) = (config.m_max, config.a_max);
            let count = 1u64 << (m * a);
            (0..count)
                .into_par_iter()
                .map(|bits| one(&SetSystem::from_membership_bits(m, a, bits), config))
                .reduce(Partial::default, Partial::merge)
        }
        FuzzMode::Random => (0..config.trials)
            .into_par_iter()
            .map(|t| {
                one(
                    &random_system(config.seed, t, config.m_max, config.a_max),
                    config,
                )
            })
            .reduce(Partial::default, Partial::merge),
    };
    Ok(FuzzSummary {
        checked: partial.checked,
        violations: partial.kept,
        violation_count: partial.count,
        seed: config.seed,
        config: config.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(mode: FuzzMode, m: usize, a: usize, r: &[usize], trials: u64) -> FuzzConfig {
        FuzzConfig {
            mode,
            m_max: m,
            a_max: a,
            r_set: r.to_vec(),
            trials,
            seed: 7,
            lemmas: LemmaSelection::Both,
        }
    }

    #[test]
    fn zero_trials_is_empty() {
        let s = fuzz(&config(FuzzMode::Random, 4, 4, &[2], 0)).unwrap();
        assert_eq!(s.checked, 0);
        assert!(s.violations.is_empty());
    }

    #[test]
    fn exhaustive_cap_is_enforced() {
        let err = fuzz(&config(FuzzMode::Exhaustive, 5, 5, &[2], 0)).unwrap_err();
        assert!(matches!(err, Error::InvalidConfig(_)));
        assert!(config(FuzzMode::Exhaustive, 4, 6, &[2], 0)
            .validate()
            .is_ok());
    }

    #[test]
    fn zero_arity_is_rejected() {
        assert!(matches!(
            fuzz(&config(FuzzMode::Random, 2, 2, &[0], 1)),
            Err(Error::InvalidArity { .. })
        ));
    }

    #[test]
    fn small_exhaustive_run_is_clean() {
        let s = fuzz(&config(FuzzMode::Exhaustive, 2, 3, &[1, 2, 3], 0)).unwrap();
        assert_eq!(s.checked, 64);
        assert_eq!(s.violation_count, 0);
    }

    #[test]
    fn random_systems_are_reproducible() {
        for t in 0..20 {
            assert_eq!(random_system(3, t, 6, 10), random_system(3, t, 6, 10));
        }
        let a = fuzz(&config(FuzzMode::Random, 5, 12, &[2, 3], 200)).unwrap();
        let b = fuzz(&config(FuzzMode::Random, 5, 12, &[2, 3], 200)).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn merge_keeps_smallest_first() {
        let big = SetSystem::from_subsets(3, &[vec![0, 1, 2], vec![0]]).unwrap();
        let small = SetSystem::from_subsets(1, &[vec![0]]).unwrap();
        let p1 = Partial {
            checked: 1,
            count: 1,
            kept: vec![Violation {
                check: "x".into(),
                r: 2,
                system: big,
            }],
        };
        let p2 = Partial {
            checked: 1,
            count: 1,
            kept: vec![Violation {
                check: "x".into(),
                r: 2,
                system: small.clone(),
            }],
        };
        let merged = p1.merge(p2);
        assert_eq!(merged.count, 2);
        assert_eq!(merged.kept[0].system, small);
    }
}
