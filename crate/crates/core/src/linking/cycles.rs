use serde::Serialize;

use crate::complex::SimplicialComplex;

/// Default cap on disjoint cycle pairs.
pub const DEFAULT_PAIR_CAP: usize = 1_000_000;

/// Cycles enumerated before pair search gives up on completeness.
pub const CYCLE_CAP: usize = 1_000_000;

/// A simple cycle as a vertex sequence, in canonical form: it starts at its
/// smallest vertex and the second vertex is smaller than the last.
pub type Cycle = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclePairs {
    pub pairs: Vec<(Cycle, Cycle)>,
    pub truncated: bool,
}

/// All simple cycles (length ≥ 3) of the graph, sorted, at most `cap` of them.
/// The flag is set when enumeration stopped at the cap.
pub fn simple_cycles(graph: &SimplicialComplex, cap: usize) -> (Vec<Cycle>, bool) {
    let adj = graph.adjacency();
    let n = adj.len();
    let mut out = Vec::new();
    let mut on_path = vec![false; n];
    for start in 0..n {
        let mut path = vec![start];
        on_path[start] = true;
        if !extend(&adj, start, &mut path, &mut on_path, &mut out, cap) {
            return (sorted(out), true);
        }
        on_path[start] = false;
    }
    (sorted(out), false)
}

fn sorted(mut cycles: Vec<Cycle>) -> Vec<Cycle> {
    cycles.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    cycles
}

/// Returns false once the cap is hit.
fn extend(
    adj: &[Vec<usize>],
    start: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    out: &mut Vec<Cycle>,
    cap: usize,
) -> bool {
    let last = *path.last().expect("path starts at the root");
    for &w in &adj[last] {
        if w == start && path.len() >= 3 && path[1] < last {
            if out.len() == cap {
                return false;
            }
            out.push(path.clone());
        }
        if w <= start || on_path[w] {
            continue;
        }
        path.push(w);
        on_path[w] = true;
        let ok = extend(adj, start, path, on_path, out, cap);
        on_path[w] = false;
        path.pop();
        if !ok {
            return false;
        }
    }
    true
}

fn mask(cycle: &[usize], words: usize) -> Vec<u64> {
    let mut m = vec![0u64; words];
    for &v in cycle {
        m[v / 64] |= 1 << (v % 64);
    }
    m
}

/// Unordered pairs of vertex-disjoint simple cycles, in lexicographic order of
/// cycle indices. At most `cap` pairs are returned; `truncated` is set when
/// the pair list hits `cap` or the cycle list hits [`CYCLE_CAP`].
pub fn disjoint_cycle_pairs(graph: &SimplicialComplex, cap: usize) -> CyclePairs {
    let (cycles, mut truncated) = simple_cycles(graph, CYCLE_CAP);
    let words = graph.vertices().len().div_ceil(64).max(1);
    let masks: Vec<Vec<u64>> = cycles.iter().map(|c| mask(c, words)).collect();
    let mut pairs = Vec::new();
    'outer: for i in 0..cycles.len() {
        for j in i + 1..cycles.len() {
            if masks[i].iter().zip(&masks[j]).all(|(a, b)| a & b == 0) {
                if pairs.len() == cap {
                    truncated = true;
                    break 'outer;
                }
                pairs.push((cycles[i].clone(), cycles[j].clone()));
            }
        }
    }
    CyclePairs { pairs, truncated }
}
