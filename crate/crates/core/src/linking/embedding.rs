use std::collections::{BTreeMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::curve::{linking_number_cone, PolygonalCurve, RETRY_BUDGET};
use super::cycles::{disjoint_cycle_pairs, Cycle};
use super::geometry::{point_on_segment_3d, segments_intersect_3d, RationalPoint3};
use crate::complex::SimplicialComplex;
use crate::{Error, Result};

/// A graph with a straight-line embedding in R³.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "EmbeddingJson", into = "EmbeddingJson")]
pub struct SpatialEmbedding {
    graph: SimplicialComplex,
    coords: Vec<RationalPoint3>,
}

#[derive(Serialize, Deserialize)]
struct EmbeddingJson {
    #[serde(flatten)]
    graph: SimplicialComplex,
    coords: BTreeMap<String, RationalPoint3>,
}

impl TryFrom<EmbeddingJson> for SpatialEmbedding {
    type Error = Error;

    fn try_from(raw: EmbeddingJson) -> Result<Self> {
        let mut coords = Vec::with_capacity(raw.graph.vertices().len());
        for label in raw.graph.vertices() {
            let p = raw
                .coords
                .get(label)
                .ok_or_else(|| Error::InvalidEmbedding(format!("no coordinates for {label}")))?;
            coords.push(p.clone());
        }
        if let Some(extra) = raw
            .coords
            .keys()
            .find(|k| raw.graph.vertex_index(k).is_err())
        {
            return Err(Error::UnknownVertex(extra.clone()));
        }
        SpatialEmbedding::new(raw.graph, coords)
    }
}

impl From<SpatialEmbedding> for EmbeddingJson {
    fn from(e: SpatialEmbedding) -> Self {
        let coords = e.graph.vertices().iter().cloned().zip(e.coords).collect();
        EmbeddingJson {
            graph: e.graph,
            coords,
        }
    }
}

impl SpatialEmbedding {
    /// `coords[v]` is the position of vertex `v`.
    pub fn new(graph: SimplicialComplex, coords: Vec<RationalPoint3>) -> Result<Self> {
        if !graph.is_graph() {
            return Err(Error::NotAGraph(graph.dimension()));
        }
        if coords.len() != graph.vertices().len() {
            return Err(Error::InvalidEmbedding(format!(
                "{} coordinates for {} vertices",
                coords.len(),
                graph.vertices().len()
            )));
        }
        let mut seen = HashSet::new();
        for (v, p) in coords.iter().enumerate() {
            if !seen.insert(p) {
                return Err(Error::InvalidEmbedding(format!(
                    "vertex {} shares its position",
                    graph.label(v)
                )));
            }
        }
        let edges = graph.edges();
        for &(u, w) in &edges {
            for (v, p) in coords.iter().enumerate() {
                if v != u && v != w && point_on_segment_3d(p, &coords[u], &coords[w]) {
                    return Err(Error::InvalidEmbedding(format!(
                        "vertex {} lies on edge {}-{}",
                        graph.label(v),
                        graph.label(u),
                        graph.label(w)
                    )));
                }
            }
        }
        for (i, &(a, b)) in edges.iter().enumerate() {
            for &(c, d) in &edges[i + 1..] {
                if a == c || a == d || b == c || b == d {
                    continue;
                }
                if segments_intersect_3d(&coords[a], &coords[b], &coords[c], &coords[d]) {
                    return Err(Error::InvalidEmbedding(format!(
                        "edges {}-{} and {}-{} intersect",
                        graph.label(a),
                        graph.label(b),
                        graph.label(c),
                        graph.label(d)
                    )));
                }
            }
        }
        Ok(SpatialEmbedding { graph, coords })
    }

    pub fn graph(&self) -> &SimplicialComplex {
        &self.graph
    }

    pub fn coords(&self) -> &[RationalPoint3] {
        &self.coords
    }

    /// The cycle traced along the straight edges, as a polygon.
    pub fn cycle_curve(&self, cycle: &[usize]) -> Result<PolygonalCurve> {
        PolygonalCurve::new(cycle.iter().map(|&v| self.coords[v].clone()).collect())
    }
}

/// A straight-line embedding with integer coordinates drawn uniformly from
/// `[-range, range]³`, redrawn until it is valid.
pub fn random_embedding(
    graph: &SimplicialComplex,
    seed: u64,
    range: i64,
) -> Result<SpatialEmbedding> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RETRY_BUDGET {
        let coords = (0..graph.vertices().len())
            .map(|_| {
                RationalPoint3::from_ints(
                    rng.gen_range(-range..=range),
                    rng.gen_range(-range..=range),
                    rng.gen_range(-range..=range),
                )
            })
            .collect();
        if let Ok(e) = SpatialEmbedding::new(graph.clone(), coords) {
            return Ok(e);
        }
    }
    Err(Error::GeneralPositionExhausted(RETRY_BUDGET))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LinklessStatus {
    AllZero,
    Witness,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkWitness {
    pub beta: Vec<String>,
    pub gamma: Vec<String>,
    pub lk: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinklessReport {
    pub status: LinklessStatus,
    pub witness: Option<LinkWitness>,
    pub pairs_checked: usize,
    pub nonzero_pairs: usize,
    /// Σ lk over the checked pairs.
    pub lk_sum: i64,
    pub truncated: bool,
}

/// Linking numbers of disjoint cycle pairs, in pair order.
pub fn pair_linking_numbers(emb: &SpatialEmbedding, pairs: &[(Cycle, Cycle)]) -> Result<Vec<i64>> {
    pairs
        .par_iter()
        .map(|(b, g)| linking_number_cone(&emb.cycle_curve(b)?, &emb.cycle_curve(g)?))
        .collect()
}

/// Checks every pair of disjoint cycles, up to `cap` pairs. The witness is
/// the first nonzero pair in canonical pair order.
pub fn is_linkless(emb: &SpatialEmbedding, cap: usize) -> Result<LinklessReport> {
    let pairs = disjoint_cycle_pairs(emb.graph(), cap);
    let lks = pair_linking_numbers(emb, &pairs.pairs)?;
    let labels = |c: &Cycle| emb.graph().to_labels(c);
    let witness = pairs
        .pairs
        .iter()
        .zip(&lks)
        .find(|(_, &lk)| lk != 0)
        .map(|((b, g), &lk)| LinkWitness {
            beta: labels(b),
            gamma: labels(g),
            lk,
        });
    let status = match (&witness, pairs.truncated) {
        (Some(_), _) => LinklessStatus::Witness,
        (None, true) => LinklessStatus::Inconclusive,
        (None, false) => LinklessStatus::AllZero,
    };
    Ok(LinklessReport {
        status,
        witness,
        pairs_checked: lks.len(),
        nonzero_pairs: lks.iter().filter(|&&lk| lk != 0).count(),
        lk_sum: lks.iter().sum(),
        truncated: pairs.truncated,
    })
}
