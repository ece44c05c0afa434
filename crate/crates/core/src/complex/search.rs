//! Backtracking searches for patterns inside a complex.
//!
//! [`find_subcomplex`] looks for an injective vertex map sending every
//! pattern simplex onto a simplex of the host. [`find_graph_homeomorph`]
//! looks for a subdivision of a pattern graph (a topological subgraph): branch
//! vertices joined by internally disjoint paths. Both are exponential and
//! meant for small inputs; a step budget turns runaway searches into errors.
//!
//! For complexes of dimension ≥ 2 only the exact-isomorphism search exists, so
//! a negative answer there says nothing about homeomorphic copies.

use serde::{Deserialize, Serialize};

use super::{Simplex, SimplicialComplex};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchLimits {
    pub pattern_vertex_cap: usize,
    pub step_budget: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            pattern_vertex_cap: 12,
            step_budget: 100_000_000,
        }
    }
}

/// Pattern label → host label for every pattern vertex that lies in a facet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubcomplexWitness {
    pub map: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoutedEdge {
    pub edge: (String, String),
    /// host vertices from the image of `edge.0` to the image of `edge.1`
    pub path: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomeomorphWitness {
    pub branch: Vec<(String, String)>,
    pub paths: Vec<RoutedEdge>,
}

struct Budget {
    left: u64,
    total: u64,
}

impl Budget {
    fn new(total: u64) -> Self {
        Budget { left: total, total }
    }

    fn tick(&mut self) -> Result<()> {
        if self.left == 0 {
            return Err(Error::BudgetExceeded(self.total));
        }
        self.left -= 1;
        Ok(())
    }
}

fn occurring(k: &SimplicialComplex) -> Vec<usize> {
    k.simplices(0).iter().map(|s| s[0]).collect()
}

/// Orders pattern vertices so each one is as connected as possible to the
/// ones before it, which lets constraints fire early.
fn search_order(n: usize, vertices: &[usize], adj: &[Vec<usize>]) -> Vec<usize> {
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(vertices.len());
    while order.len() < vertices.len() {
        let next = vertices
            .iter()
            .copied()
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let back = adj[v].iter().filter(|&&w| placed[w]).count();
                (back, adj[v].len(), std::cmp::Reverse(v))
            })
            .unwrap();
        placed[next] = true;
        order.push(next);
    }
    order
}

/// Link f-vector per vertex, padded to `len`.
fn link_profiles(k: &SimplicialComplex, len: usize) -> Vec<Vec<u64>> {
    let mut profiles = vec![vec![0u64; len]; k.vertices().len()];
    for dim in 1..=len {
        for s in k.simplices(dim) {
            for &v in s {
                profiles[v][dim - 1] += 1;
            }
        }
    }
    profiles
}

fn vertex_adjacency(k: &SimplicialComplex) -> Vec<Vec<usize>> {
    k.adjacency()
}

pub fn find_subcomplex(
    host: &SimplicialComplex,
    pattern: &SimplicialComplex,
    limits: SearchLimits,
) -> Result<Option<SubcomplexWitness>> {
    let pv = occurring(pattern);
    if pv.len() > limits.pattern_vertex_cap {
        return Err(Error::PatternTooLarge {
            got: pv.len(),
            cap: limits.pattern_vertex_cap,
        });
    }
    let hv = occurring(host);
    if pv.len() > hv.len() || pattern.dimension() > host.dimension() {
        return Ok(None);
    }
    let depth = pattern.dimension().max(0) as usize;
    let p_prof = link_profiles(pattern, depth);
    let h_prof = link_profiles(host, depth);

    let order = search_order(pattern.vertices().len(), &pv, &vertex_adjacency(pattern));
    let mut position = vec![usize::MAX; pattern.vertices().len()];
    for (i, &u) in order.iter().enumerate() {
        position[u] = i;
    }
    // For each step, the pattern facets through order[i] restricted to the
    // vertices placed so far; their images must be host simplices.
    let constraints: Vec<Vec<Vec<usize>>> = order
        .iter()
        .enumerate()
        .map(|(i, &u)| {
            let mut cs: Vec<Vec<usize>> = pattern
                .facets()
                .iter()
                .filter(|f| f.contains(&u))
                .map(|f| f.iter().map(|&w| position[w]).filter(|&p| p <= i).collect())
                .filter(|c: &Vec<usize>| c.len() > 1)
                .collect();
            cs.sort();
            cs.dedup();
            cs
        })
        .collect();

    let mut image = vec![usize::MAX; order.len()];
    let mut used = vec![false; host.vertices().len()];
    let mut budget = Budget::new(limits.step_budget);

    fn rec(
        i: usize,
        ctx: &SubCtx<'_>,
        image: &mut [usize],
        used: &mut [bool],
        budget: &mut Budget,
    ) -> Result<bool> {
        if i == ctx.order.len() {
            return Ok(true);
        }
        let u = ctx.order[i];
        for &x in ctx.hv {
            budget.tick()?;
            if used[x] || ctx.p_prof[u].iter().zip(&ctx.h_prof[x]).any(|(p, h)| p > h) {
                continue;
            }
            image[i] = x;
            let ok = ctx.constraints[i].iter().all(|c| {
                let mut s: Simplex = c.iter().map(|&p| image[p]).collect();
                s.sort_unstable();
                ctx.host.contains_simplex(&s)
            });
            if !ok {
                continue;
            }
            used[x] = true;
            if rec(i + 1, ctx, image, used, budget)? {
                return Ok(true);
            }
            used[x] = false;
        }
        Ok(false)
    }

    let ctx = SubCtx {
        host,
        order: &order,
        hv: &hv,
        p_prof: &p_prof,
        h_prof: &h_prof,
        constraints: &constraints,
    };
    if !rec(0, &ctx, &mut image, &mut used, &mut budget)? {
        return Ok(None);
    }
    let mut map: Vec<(String, String)> = order
        .iter()
        .zip(&image)
        .map(|(&u, &x)| (pattern.label(u).to_string(), host.label(x).to_string()))
        .collect();
    map.sort_by_key(|(p, _)| pattern.vertex_index(p).unwrap());
    Ok(Some(SubcomplexWitness { map }))
}

struct SubCtx<'a> {
    host: &'a SimplicialComplex,
    order: &'a [usize],
    hv: &'a [usize],
    p_prof: &'a [Vec<u64>],
    h_prof: &'a [Vec<u64>],
    constraints: &'a [Vec<Vec<usize>>],
}

/// Independent check: injective, covers every occurring pattern vertex, and
/// every pattern facet lands on a host simplex.
pub fn verify_subcomplex_witness(
    host: &SimplicialComplex,
    pattern: &SimplicialComplex,
    witness: &SubcomplexWitness,
) -> bool {
    let mut image = vec![None; pattern.vertices().len()];
    let mut hit = vec![false; host.vertices().len()];
    for (p, h) in &witness.map {
        let (Ok(p), Ok(h)) = (pattern.vertex_index(p), host.vertex_index(h)) else {
            return false;
        };
        if image[p].is_some() || hit[h] {
            return false;
        }
        image[p] = Some(h);
        hit[h] = true;
    }
    pattern.facets().iter().all(|f| {
        let mapped: Option<Vec<usize>> = f.iter().map(|&v| image[v]).collect();
        mapped.is_some_and(|mut s| {
            s.sort_unstable();
            host.contains_simplex(&s)
        })
    })
}

struct HomeoCtx<'a> {
    adj: &'a [Vec<usize>],
    p_adj: &'a [Vec<usize>],
    order: &'a [usize],
    hv: &'a [usize],
    /// pattern edges to route when order[i] is placed: (earlier vertex, order[i])
    routes: &'a [Vec<(usize, usize)>],
}

struct HomeoState {
    image: Vec<usize>,
    used: Vec<bool>,
    paths: Vec<((usize, usize), Vec<usize>)>,
}

/// Searches `host` for a subdivision of `pattern`. Both must be graphs.
pub fn find_graph_homeomorph(
    host: &SimplicialComplex,
    pattern: &SimplicialComplex,
    limits: SearchLimits,
) -> Result<Option<HomeomorphWitness>> {
    for k in [host, pattern] {
        if !k.is_graph() {
            return Err(Error::NotAGraph(k.dimension()));
        }
    }
    let pv = occurring(pattern);
    if pv.len() > limits.pattern_vertex_cap {
        return Err(Error::PatternTooLarge {
            got: pv.len(),
            cap: limits.pattern_vertex_cap,
        });
    }
    let hv = occurring(host);
    if pv.len() > hv.len() {
        return Ok(None);
    }
    let adj = host.adjacency();
    let p_adj = pattern.adjacency();
    let order = search_order(pattern.vertices().len(), &pv, &p_adj);
    let mut placed_at = vec![usize::MAX; pattern.vertices().len()];
    for (i, &u) in order.iter().enumerate() {
        placed_at[u] = i;
    }
    let routes: Vec<Vec<(usize, usize)>> = order
        .iter()
        .enumerate()
        .map(|(i, &u)| {
            let mut earlier: Vec<usize> = p_adj[u]
                .iter()
                .copied()
                .filter(|&w| placed_at[w] < i)
                .collect();
            earlier.sort_by_key(|&w| placed_at[w]);
            earlier.into_iter().map(|w| (w, u)).collect()
        })
        .collect();

    let ctx = HomeoCtx {
        adj: &adj,
        p_adj: &p_adj,
        order: &order,
        hv: &hv,
        routes: &routes,
    };
    let mut state = HomeoState {
        image: vec![usize::MAX; pattern.vertices().len()],
        used: vec![false; host.vertices().len()],
        paths: Vec::new(),
    };
    let mut budget = Budget::new(limits.step_budget);
    if !place(0, &ctx, &mut state, &mut budget)? {
        return Ok(None);
    }
    let mut branch: Vec<(String, String)> = pv
        .iter()
        .map(|&u| {
            (
                pattern.label(u).to_string(),
                host.label(state.image[u]).to_string(),
            )
        })
        .collect();
    branch.sort_by_key(|(p, _)| pattern.vertex_index(p).unwrap());
    let mut paths: Vec<RoutedEdge> = state
        .paths
        .iter()
        .map(|&((a, b), ref path)| RoutedEdge {
            edge: (pattern.label(a).to_string(), pattern.label(b).to_string()),
            path: path.iter().map(|&x| host.label(x).to_string()).collect(),
        })
        .collect();
    paths.sort_by(|x, y| x.edge.cmp(&y.edge));
    Ok(Some(HomeomorphWitness { branch, paths }))
}

fn place(i: usize, ctx: &HomeoCtx<'_>, st: &mut HomeoState, budget: &mut Budget) -> Result<bool> {
    if i == ctx.order.len() {
        return Ok(true);
    }
    let u = ctx.order[i];
    let need = ctx.p_adj[u].len();
    for &x in ctx.hv {
        budget.tick()?;
        if st.used[x] || ctx.adj[x].len() < need {
            continue;
        }
        // neighbours still available for the paths leaving x
        let free = ctx.adj[x]
            .iter()
            .filter(|&&y| !st.used[y] || ctx.routes[i].iter().any(|&(w, _)| st.image[w] == y))
            .count();
        if free < need {
            continue;
        }
        st.used[x] = true;
        st.image[u] = x;
        if route(i, 0, ctx, st, budget)? {
            return Ok(true);
        }
        st.used[x] = false;
        st.image[u] = usize::MAX;
    }
    Ok(false)
}

fn route(
    i: usize,
    k: usize,
    ctx: &HomeoCtx<'_>,
    st: &mut HomeoState,
    budget: &mut Budget,
) -> Result<bool> {
    let Some(&(w, u)) = ctx.routes[i].get(k) else {
        return place(i + 1, ctx, st, budget);
    };
    let (from, to) = (st.image[w], st.image[u]);
    let mut path = vec![from];
    extend_path(i, k, to, &mut path, ctx, st, budget)
}

/// Depth-first over simple paths from `path[0]` to `to` whose interior avoids
/// every used vertex; each complete path recurses into the next edge.
fn extend_path(
    i: usize,
    k: usize,
    to: usize,
    path: &mut Vec<usize>,
    ctx: &HomeoCtx<'_>,
    st: &mut HomeoState,
    budget: &mut Budget,
) -> Result<bool> {
    let last = *path.last().unwrap();
    for &y in &ctx.adj[last] {
        budget.tick()?;
        if y == to {
            let (w, u) = ctx.routes[i][k];
            let mut full = path.clone();
            full.push(to);
            st.paths.push(((w, u), full));
            if route(i, k + 1, ctx, st, budget)? {
                return Ok(true);
            }
            st.paths.pop();
        } else if !st.used[y] {
            st.used[y] = true;
            path.push(y);
            if extend_path(i, k, to, path, ctx, st, budget)? {
                return Ok(true);
            }
            path.pop();
            st.used[y] = false;
        }
    }
    Ok(false)
}

/// Independent check of a subdivision witness: injective branch map,
/// one path per pattern edge joining the right images along host edges, and
/// path interiors pairwise disjoint and free of branch vertices.
pub fn verify_homeomorph_witness(
    host: &SimplicialComplex,
    pattern: &SimplicialComplex,
    witness: &HomeomorphWitness,
) -> bool {
    let mut image = std::collections::HashMap::new();
    let mut used = std::collections::HashSet::new();
    for (p, h) in &witness.branch {
        if pattern.vertex_index(p).is_err() || host.vertex_index(h).is_err() {
            return false;
        }
        if image.insert(p.clone(), h.clone()).is_some() || !used.insert(h.clone()) {
            return false;
        }
    }
    if occurring(pattern).len() != image.len() {
        return false;
    }
    let mut wanted: Vec<(String, String)> = pattern
        .edges()
        .into_iter()
        .map(|(a, b)| (pattern.label(a).to_string(), pattern.label(b).to_string()))
        .map(|(a, b)| if a <= b { (a, b) } else { (b, a) })
        .collect();
    wanted.sort();
    let mut got: Vec<(String, String)> = witness
        .paths
        .iter()
        .map(|r| {
            let (a, b) = r.edge.clone();
            if a <= b {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect();
    got.sort();
    if wanted != got {
        return false;
    }
    for r in &witness.paths {
        let (Some(a), Some(b)) = (image.get(&r.edge.0), image.get(&r.edge.1)) else {
            return false;
        };
        if r.path.len() < 2 || r.path.first() != Some(a) || r.path.last() != Some(b) {
            return false;
        }
        for pair in r.path.windows(2) {
            let (Ok(x), Ok(y)) = (host.vertex_index(&pair[0]), host.vertex_index(&pair[1])) else {
                return false;
            };
            let mut e = vec![x, y];
            e.sort_unstable();
            if x == y || !host.contains_simplex(&e) {
                return false;
            }
        }
        for inner in &r.path[1..r.path.len() - 1] {
            if !used.insert(inner.clone()) {
                return false;
            }
        }
    }
    true
}
