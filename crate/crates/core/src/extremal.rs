//! Exponents and constants of the face-count bound `f_d(K) < C·n^{d+1-r^{1-d}}`
//! for `d`-complexes on `n` vertices without a copy of `[r]^{*(d+1)}`, and a
//! numeric trace of its link-based inductive step.
//!
//! Exponents are exact rationals. Constants produced by the recurrence
//! `C' = r·C^{1/r}` are nested radicals; they are kept symbolically as a
//! product of rational powers of rationals and compared exactly.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::complex::{
    for_each_combination, link_intersection, links_as_set_system, SimplicialComplex,
};
use crate::set_system::{
    binomial, intersection_bound, intersection_bound_holds, max_r_intersection, total_size,
};
use crate::{Error, Result};

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn rat_pow(base: u32, exp: i64) -> BigRational {
    let b = rat(base as i64);
    if exp >= 0 {
        num_traits::pow(b, exp as usize)
    } else {
        num_traits::pow(b, (-exp) as usize).recip()
    }
}

fn check_dims(d: u32, r: u32) -> Result<()> {
    if d < 1 {
        return Err(Error::InvalidConfig("d must be at least 1".into()));
    }
    if r < 2 {
        return Err(Error::InvalidArity {
            got: r as usize,
            min: 2,
        });
    }
    Ok(())
}

/// `d + 1 - r^{1-d}`.
pub fn face_count_exponent(d: u32, r: u32) -> Result<BigRational> {
    check_dims(d, r)?;
    Ok(rat(d as i64 + 1) - rat_pow(r, 1 - d as i64))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum EmbeddingVariant {
    /// complexes embeddable in `R^{2d}`; obstruction `[3]^{*(d+1)}`
    Embeddable,
    /// complexes linklessly embeddable in `R^{2d+1}`; obstruction `[4]^{*(d+1)}`
    Linkless,
}

impl EmbeddingVariant {
    pub fn obstruction_size(self) -> u32 {
        match self {
            EmbeddingVariant::Embeddable => 3,
            EmbeddingVariant::Linkless => 4,
        }
    }
}

/// `d + 1 - 3^{1-d}` for embeddable complexes, `d + 1 - 4^{1-d}` for linkless ones.
pub fn embedding_exponent(d: u32, variant: EmbeddingVariant) -> Result<BigRational> {
    face_count_exponent(d, variant.obstruction_size())
}

/// The exponent assembled by the inductive step:
/// `1 + (r-1)d/r + (d - r^{2-d})/r`, which must equal `d + 1 - r^{1-d}`.
pub fn inductive_step_exponent(d: u32, r: u32) -> Result<BigRational> {
    check_dims(d, r)?;
    let (dd, rr) = (rat(d as i64), rat(r as i64));
    let previous = &dd - rat_pow(r, 2 - d as i64);
    Ok(rat(1) + (&rr - rat(1)) * &dd / &rr + previous / &rr)
}

/// A positive real of the form `∏ base_i^{exp_i}` with rational bases and
/// exponents, plus a nested rendering of how it was produced.
#[derive(Clone, Debug)]
pub struct NestedConstant {
    factors: BTreeMap<BigRational, BigRational>,
    rendering: String,
}

impl NestedConstant {
    pub fn from_rational(value: BigRational) -> Result<Self> {
        if !value.is_positive() {
            return Err(Error::NonPositiveConstant);
        }
        let rendering = value.to_string();
        let mut factors = BTreeMap::new();
        if !value.is_one() {
            factors.insert(value, BigRational::one());
        }
        Ok(NestedConstant { factors, rendering })
    }

    pub fn factors(&self) -> impl Iterator<Item = (&BigRational, &BigRational)> {
        self.factors.iter()
    }

    pub fn render(&self) -> &str {
        &self.rendering
    }

    /// Display-only decimal value.
    pub fn to_f64(&self) -> f64 {
        self.log().exp()
    }

    fn log(&self) -> f64 {
        self.factors
            .iter()
            .map(|(b, e)| ln(b) * e.to_f64().unwrap_or(f64::NAN))
            .sum()
    }

    fn mul_factor(&mut self, base: BigRational, exp: BigRational) {
        if base.is_one() || exp.is_zero() {
            return;
        }
        let e = self
            .factors
            .entry(base.clone())
            .or_insert_with(BigRational::zero);
        *e += exp;
        if e.is_zero() {
            self.factors.remove(&base);
        }
    }

    /// Exact comparison. A floating-point estimate of `log(self/other)`
    /// decides whenever it clears a generous error margin; otherwise both
    /// sides are raised to a common integer power and compared as rationals.
    pub fn cmp_exact(&self, other: &NestedConstant) -> Ordering {
        let mut ratio = self.clone();
        for (b, e) in &other.factors {
            ratio.mul_factor(b.clone(), -e.clone());
        }
        if ratio.factors.is_empty() {
            return Ordering::Equal;
        }
        let terms: Vec<f64> = ratio
            .factors
            .iter()
            .map(|(b, e)| ln(b) * e.to_f64().unwrap_or(f64::NAN))
            .collect();
        let estimate: f64 = terms.iter().sum();
        let scale: f64 = terms.iter().map(|t| t.abs()).sum();
        if estimate.is_finite() && estimate.abs() > 1e-9 * (1.0 + scale) {
            return if estimate > 0.0 {
                Ordering::Greater
            } else {
                Ordering::Less
            };
        }
        ratio.cmp_to_one_exact()
    }

    fn cmp_to_one_exact(&self) -> Ordering {
        let lcm = self
            .factors
            .values()
            .fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
        let mut num = BigRational::one();
        let mut den = BigRational::one();
        for (b, e) in &self.factors {
            let k = (e * BigRational::from_integer(lcm.clone())).to_integer();
            let power = k.magnitude().to_usize().expect("exponent fits in memory");
            let p = num_traits::pow(b.clone(), power);
            if k.is_positive() {
                num *= p;
            } else {
                den *= p;
            }
        }
        num.cmp(&den)
    }
}

impl PartialEq for NestedConstant {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_exact(other) == Ordering::Equal
    }
}

fn ln(q: &BigRational) -> f64 {
    ln_big(q.numer().magnitude()) - ln_big(q.denom().magnitude())
}

fn ln_big(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    (n >> shift).to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

/// `C' = r·C^{1/r}`.
pub fn constant_recurrence(previous: &NestedConstant, r: u32) -> Result<NestedConstant> {
    if r < 2 {
        return Err(Error::InvalidArity {
            got: r as usize,
            min: 2,
        });
    }
    let root = BigRational::new(BigInt::one(), BigInt::from(r));
    let mut next = NestedConstant {
        factors: BTreeMap::new(),
        rendering: format!("{r}·({})^(1/{r})", previous.rendering),
    };
    for (b, e) in &previous.factors {
        next.mul_factor(b.clone(), e * &root);
    }
    next.mul_factor(rat(r as i64), BigRational::one());
    Ok(next)
}

/// Default base-case constant `4·r²`. It is an assumed value for the edge
/// bound of graphs without a `K_{r,r}` subdivision, not a derived one.
pub fn default_base_constant(r: u32) -> BigRational {
    rat(4 * (r as i64) * (r as i64))
}

/// `[C_1, C_2, …, C_d]` starting from `c1`.
pub fn constant_chain(c1: BigRational, r: u32, d: u32) -> Result<Vec<NestedConstant>> {
    check_dims(d, r)?;
    let mut chain = vec![NestedConstant::from_rational(c1)?];
    for _ in 1..d {
        let next = constant_recurrence(chain.last().unwrap(), r)?;
        chain.push(next);
    }
    Ok(chain)
}

/// `(d, r, n, C)` with `C` from the recurrence.
#[derive(Clone, Debug)]
pub struct BoundSpec {
    pub d: u32,
    pub r: u32,
    pub n: u64,
    pub constant: NestedConstant,
}

impl BoundSpec {
    pub fn exponent(&self) -> Result<BigRational> {
        face_count_exponent(self.d, self.r)
    }

    /// `C·n^{exponent}` in floating point, for display.
    pub fn value(&self) -> Result<f64> {
        let e = self.exponent()?.to_f64().unwrap_or(f64::NAN);
        Ok(self.constant.to_f64() * (self.n as f64).powf(e))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeConfig {
    /// enumerate every `r`-tuple when `C(n, r)` is at most this
    pub tuple_budget: u64,
    /// otherwise draw this many tuples
    pub samples: u64,
    pub seed: u64,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig {
            tuple_budget: 1_000_000,
            samples: 100_000,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeReport {
    pub d: usize,
    pub r: usize,
    /// vertices, the `m` of the set system
    pub n: usize,
    /// `(d-1)`-simplices, the ground size `a`
    pub a: usize,
    pub f_d: u64,
    pub total_size: u64,
    /// `total_size == (d+1)·f_d`
    pub incidence_holds: bool,
    /// largest `f_{d-1}` of an `r`-fold link intersection seen
    pub s_actual: u64,
    /// false when tuples were sampled, making `s_actual` a lower bound
    pub s_exact: bool,
    pub tuples_examined: u64,
    /// `s` recomputed on the set system; equals `s_actual` when exact
    pub s_set_system: u64,
    pub bound: f64,
    /// exact `total_size ≤ r(n·a^{1-1/r}·s^{1/r} + a)` with `s = s_set_system`
    pub holds: bool,
}

/// Traces the inductive step on a concrete `d`-complex (`d ≥ 2`): builds the
/// link set system over `(d-1)`-simplices, measures `r`-fold link
/// intersections, and evaluates the intersection bound. A numeric trace,
/// not a proof.
pub fn inductive_step_probe(
    k: &SimplicialComplex,
    r: usize,
    config: ProbeConfig,
) -> Result<ProbeReport> {
    if r < 2 {
        return Err(Error::InvalidArity { got: r, min: 2 });
    }
    let d = k.dimension();
    if d < 2 {
        return Err(Error::InvalidConfig(format!(
            "probe needs a complex of dimension ≥ 2, got {d}"
        )));
    }
    let d = d as usize;
    let sys = links_as_set_system(k, d - 1);
    let n = k.vertices().len();
    let a = sys.ground_size();
    let f_d = k.simplices(d).len() as u64;
    let lhs = total_size(&sys);

    let tuples = binomial(n as u64, r as u64);
    let exact = tuples <= BigUint::from(config.tuple_budget);
    let mut s_actual = 0u64;
    let mut examined = 0u64;
    let mut measure = |vs: &[usize]| -> Result<()> {
        let labels: Vec<&str> = vs.iter().map(|&v| k.label(v)).collect();
        let inter = link_intersection(k, &labels)?;
        s_actual = s_actual.max(inter.simplices(d - 1).len() as u64);
        examined += 1;
        Ok(())
    };
    if exact {
        let all: Vec<usize> = (0..n).collect();
        let mut result = Ok(());
        for_each_combination(&all, r, &mut |vs| {
            if result.is_ok() {
                result = measure(vs);
            }
        });
        result?;
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        for _ in 0..config.samples {
            let mut vs = rand::seq::index::sample(&mut rng, n, r).into_vec();
            vs.sort_unstable();
            measure(&vs)?;
        }
    }

    let s_set_system = max_r_intersection(&sys, r);
    Ok(ProbeReport {
        d,
        r,
        n,
        a,
        f_d,
        total_size: lhs,
        incidence_holds: lhs == (d as u64 + 1) * f_d,
        s_actual,
        s_exact: exact,
        tuples_examined: examined,
        s_set_system,
        bound: intersection_bound(r, n as u64, a as u64, s_set_system),
        holds: intersection_bound_holds(lhs, r, n as u64, a as u64, s_set_system),
    })
}
