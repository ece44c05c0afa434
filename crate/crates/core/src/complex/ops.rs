use std::collections::{HashMap, HashSet};

use super::{maximal, Simplex, SimplicialComplex};
use crate::set_system::SetSystem;
use crate::{Error, Result};

/// The join `K * L`: every disjoint union of a simplex of `K` (or ∅) with a
/// simplex of `L` (or ∅). Vertices are tagged `"L:x"` for `K` and `"R:y"`
/// for `L`. Joining with an empty complex returns the other operand.
pub fn join(left: &SimplicialComplex, right: &SimplicialComplex) -> SimplicialComplex {
    if left.is_empty() {
        return right.clone();
    }
    if right.is_empty() {
        return left.clone();
    }
    let offset = left.vertices().len();
    let vertices = left
        .vertices()
        .iter()
        .map(|x| format!("L:{x}"))
        .chain(right.vertices().iter().map(|y| format!("R:{y}")))
        .collect();
    let mut facets = Vec::with_capacity(left.facets().len() * right.facets().len());
    for f in left.facets() {
        for g in right.facets() {
            facets.push(
                f.iter()
                    .copied()
                    .chain(g.iter().map(|v| v + offset))
                    .collect(),
            );
        }
    }
    SimplicialComplex::new(vertices, facets).expect("join of valid complexes")
}

/// The `p`-fold join `[r] * … * [r]` of an `r`-point set, built directly.
/// Vertex `"i.j"` is point `j` of factor `i`; there are `r^p` facets, each a
/// `(p-1)`-simplex choosing one point per factor.
pub fn join_power(r: usize, p: usize) -> Result<SimplicialComplex> {
    if r == 0 || p == 0 {
        return Err(Error::InvalidConfig(format!(
            "join power needs r ≥ 1 and p ≥ 1, got r={r} p={p}"
        )));
    }
    let vertices = (0..p)
        .flat_map(|i| (0..r).map(move |j| format!("{i}.{j}")))
        .collect();
    let count = r
        .checked_pow(p as u32)
        .ok_or_else(|| Error::InvalidConfig(format!("{r}^{p} facets overflow")))?;
    let facets = (0..count)
        .map(|mut code| {
            (0..p)
                .map(|i| {
                    let j = code % r;
                    code /= r;
                    i * r + j
                })
                .collect()
        })
        .collect();
    SimplicialComplex::new(vertices, facets)
}

fn link_facets(k: &SimplicialComplex, v: usize) -> Vec<Simplex> {
    k.facets()
        .iter()
        .filter(|f| f.contains(&v) && f.len() > 1)
        .map(|f| f.iter().copied().filter(|&x| x != v).collect())
        .collect()
}

/// `link(v) = {σ : v ∉ σ, σ ∪ {v} ∈ K}` over the same vertex labels. An
/// isolated vertex has the empty complex as its link.
pub fn vertex_link(k: &SimplicialComplex, label: &str) -> Result<SimplicialComplex> {
    let v = k.vertex_index(label)?;
    Ok(k.with_facets(link_facets(k, v)))
}

/// The complex of simplices lying in `link(v)` for every `v` in `labels`.
pub fn link_intersection<S: AsRef<str>>(
    k: &SimplicialComplex,
    labels: &[S],
) -> Result<SimplicialComplex> {
    let mut seen = HashSet::new();
    let mut indices = Vec::with_capacity(labels.len());
    for l in labels {
        let l = l.as_ref();
        let v = k.vertex_index(l)?;
        if !seen.insert(v) {
            return Err(Error::RepeatedVertex(l.to_string()));
        }
        indices.push(v);
    }
    let Some((&first, rest)) = indices.split_first() else {
        return Err(Error::InvalidArity { got: 0, min: 1 });
    };
    let mut current = maximal(link_facets(k, first));
    for &v in rest {
        let other = link_facets(k, v);
        let mut next = Vec::new();
        for f in &current {
            for g in &other {
                let common: Simplex = f.iter().copied().filter(|x| g.contains(x)).collect();
                if !common.is_empty() {
                    next.push(common);
                }
            }
        }
        current = maximal(next);
    }
    Ok(k.with_facets(current))
}

/// The set system fed to the intersection bound in the inductive step: the
/// ground set is the `k`-simplices of `K` (sorted order), and vertex `v`
/// contributes `S_v = {σ : σ ∈ link(v)}`. One subset per vertex label.
pub fn links_as_set_system(k: &SimplicialComplex, dim: usize) -> SetSystem {
    let ground = k.simplices(dim);
    let position: HashMap<&[usize], usize> = ground
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_slice(), i))
        .collect();
    let mut members = vec![Vec::new(); k.vertices().len()];
    for tau in k.simplices(dim + 1) {
        for (skip, &v) in tau.iter().enumerate() {
            let sigma: Simplex = tau
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &x)| x)
                .collect();
            members[v].push(position[sigma.as_slice()]);
        }
    }
    let mut sys = SetSystem::new(ground.len());
    for m in members {
        sys.push_subset(&m).expect("indices are ground positions");
    }
    sys
}
