//! Finite abstract simplicial complexes stored by their facets.
//!
//! A complex is the downward closure of an antichain of facets over a list of
//! opaque vertex labels. Lower-dimensional simplices are generated on demand
//! and memoized per dimension, since closures of join powers grow quickly.

mod ops;
pub mod search;

pub use ops::{join, join_power, link_intersection, links_as_set_system, vertex_link};
pub use search::{
    find_graph_homeomorph, find_subcomplex, verify_homeomorph_witness, verify_subcomplex_witness,
    HomeomorphWitness, SearchLimits, SubcomplexWitness,
};

use std::collections::{BTreeSet, HashMap};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Sorted, duplicate-free vertex indices.
pub type Simplex = Vec<usize>;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "ComplexJson", into = "ComplexJson")]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    index: HashMap<String, usize>,
    facets: Vec<Simplex>,
    closure: Vec<OnceLock<Vec<Simplex>>>,
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    vertices: Vec<String>,
    facets: Vec<Vec<String>>,
}

impl TryFrom<ComplexJson> for SimplicialComplex {
    type Error = Error;

    fn try_from(raw: ComplexJson) -> Result<Self> {
        SimplicialComplex::from_labels(raw.vertices, &raw.facets)
    }
}

impl From<SimplicialComplex> for ComplexJson {
    fn from(k: SimplicialComplex) -> Self {
        let facets = k
            .facets
            .iter()
            .map(|f| f.iter().map(|&v| k.vertices[v].clone()).collect())
            .collect();
        ComplexJson {
            vertices: k.vertices,
            facets,
        }
    }
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

/// `counts[k]` = number of `k`-simplices, `k = 0..=dim`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FVector {
    pub counts: Vec<u64>,
}

impl FVector {
    /// `f_k`, with `f_{-1} = 1` for the empty simplex and zero above the dimension.
    pub fn get(&self, k: isize) -> u64 {
        match k {
            -1 => 1,
            k if k < -1 => 0,
            k => self.counts.get(k as usize).copied().unwrap_or(0),
        }
    }
}

impl SimplicialComplex {
    /// Builds a complex from index facets. Facets are sorted and deduplicated
    /// internally, and non-maximal facets are dropped.
    pub fn new(vertices: Vec<String>, facets: Vec<Vec<usize>>) -> Result<Self> {
        let mut index = HashMap::with_capacity(vertices.len());
        for (i, label) in vertices.iter().enumerate() {
            if index.insert(label.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(label.clone()));
            }
        }
        let n = vertices.len();
        let mut cleaned = Vec::with_capacity(facets.len());
        for (i, mut f) in facets.into_iter().enumerate() {
            if f.is_empty() {
                return Err(Error::EmptyFacet(i));
            }
            f.sort_unstable();
            f.dedup();
            if let Some(&bad) = f.iter().find(|&&v| v >= n) {
                return Err(Error::UnknownVertex(bad.to_string()));
            }
            cleaned.push(f);
        }
        Ok(Self::from_parts(vertices, index, cleaned))
    }

    fn from_parts(
        vertices: Vec<String>,
        index: HashMap<String, usize>,
        facets: Vec<Simplex>,
    ) -> Self {
        let facets = maximal(facets);
        let dim = facets.iter().map(Vec::len).max().unwrap_or(0);
        SimplicialComplex {
            vertices,
            index,
            facets,
            closure: (0..dim).map(|_| OnceLock::new()).collect(),
        }
    }

    /// Same vertex list, different facets. Used for links and intersections.
    pub(crate) fn with_facets(&self, facets: Vec<Simplex>) -> Self {
        Self::from_parts(self.vertices.clone(), self.index.clone(), facets)
    }

    pub fn from_labels<S: AsRef<str>>(vertices: Vec<String>, facets: &[Vec<S>]) -> Result<Self> {
        let index: HashMap<&str, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let facets = facets
            .iter()
            .map(|f| {
                f.iter()
                    .map(|l| {
                        index
                            .get(l.as_ref())
                            .copied()
                            .ok_or_else(|| Error::UnknownVertex(l.as_ref().to_string()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(vertices, facets)
    }

    /// `n` isolated points labelled `"0"`, …, `"n-1"` (the complex `[n]`).
    pub fn discrete(n: usize) -> Self {
        Self::new(numbered(n), (0..n).map(|v| vec![v]).collect()).expect("valid")
    }

    /// A single `(n-1)`-simplex on `n` numbered vertices.
    pub fn simplex(n: usize) -> Self {
        let facets = if n == 0 {
            vec![]
        } else {
            vec![(0..n).collect()]
        };
        Self::new(numbered(n), facets).expect("valid")
    }

    /// A graph on numbered vertices; every vertex is kept, isolated or not.
    pub fn graph(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut facets: Vec<Vec<usize>> = edges.iter().map(|&(u, v)| vec![u, v]).collect();
        facets.extend((0..n).map(|v| vec![v]));
        if let Some(f) = facets.iter().find(|f| f.len() == 2 && f[0] == f[1]) {
            return Err(Error::InvalidConfig(format!("loop at vertex {}", f[0])));
        }
        Self::new(numbered(n), facets)
    }

    /// The empty complex over the given labels.
    pub fn empty(vertices: Vec<String>) -> Result<Self> {
        Self::new(vertices, vec![])
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn label(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_index(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    /// Largest facet size minus one; `-1` for the empty complex.
    pub fn dimension(&self) -> isize {
        self.closure.len() as isize - 1
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    /// Every `k`-simplex of the closure, sorted lexicographically.
    pub fn simplices(&self, k: usize) -> &[Simplex] {
        let Some(cell) = self.closure.get(k) else {
            return &[];
        };
        cell.get_or_init(|| {
            let mut out = BTreeSet::new();
            for f in self.facets.iter().filter(|f| f.len() > k) {
                for_each_combination(f, k + 1, &mut |c| {
                    out.insert(c.to_vec());
                });
            }
            out.into_iter().collect()
        })
    }

    pub fn f_vector(&self) -> FVector {
        FVector {
            counts: (0..self.closure.len())
                .map(|k| self.simplices(k).len() as u64)
                .collect(),
        }
    }

    /// Whether the sorted index set is a simplex (the empty set always is).
    pub fn contains_simplex(&self, simplex: &[usize]) -> bool {
        simplex.is_empty() || self.facets.iter().any(|f| is_subset(simplex, f))
    }

    pub fn is_graph(&self) -> bool {
        self.dimension() <= 1
    }

    /// Sorted `(u, v)` pairs with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.simplices(1).iter().map(|e| (e[0], e[1])).collect()
    }

    /// Adjacency lists over all vertex labels.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (u, v) in self.edges() {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    pub fn to_labels(&self, simplex: &[usize]) -> Vec<String> {
        simplex.iter().map(|&v| self.vertices[v].clone()).collect()
    }
}

fn numbered(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// Sorted-slice containment.
pub(crate) fn is_subset(small: &[usize], big: &[usize]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.any(|y| y == x))
}

/// Sorts, deduplicates and drops every set contained in another.
pub(crate) fn maximal(mut sets: Vec<Simplex>) -> Vec<Simplex> {
    sets.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    sets.dedup();
    let mut kept: Vec<Simplex> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|k| is_subset(&s, k)) {
            kept.push(s);
        }
    }
    kept.sort();
    kept
}

pub(crate) fn for_each_combination(items: &[usize], k: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(
        items: &[usize],
        k: usize,
        start: usize,
        buf: &mut Vec<usize>,
        f: &mut impl FnMut(&[usize]),
    ) {
        if buf.len() == k {
            f(buf);
            return;
        }
        let need = k - buf.len();
        for i in start..=items.len() - need {
            buf.push(items[i]);
            rec(items, k, i + 1, buf, f);
            buf.pop();
        }
    }
    if k <= items.len() {
        rec(items, k, 0, &mut Vec::with_capacity(k), f);
    }
}
