#![allow(dead_code)]

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use extremal_links::complex::SimplicialComplex;
use extremal_links::linking::{PolygonalCurve, RationalPoint3};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complete(n: usize) -> SimplicialComplex {
    let edges: Vec<_> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    SimplicialComplex::graph(n, &edges).unwrap()
}

pub fn complete_bipartite(p: usize, q: usize) -> SimplicialComplex {
    let edges: Vec<_> = (0..p)
        .flat_map(|i| (0..q).map(move |j| (i, p + j)))
        .collect();
    SimplicialComplex::graph(p + q, &edges).unwrap()
}

/// Random complex on `n` vertices with up to `facets` random faces of size
/// at most `max_dim + 1`, plus one face of exactly that size.
pub fn random_complex(
    rng: &mut ChaCha8Rng,
    n: usize,
    max_dim: usize,
    facets: usize,
) -> SimplicialComplex {
    let size = (max_dim + 1).min(n);
    let mut sets = Vec::new();
    let mut top: Vec<usize> = rand::seq::index::sample(rng, n, size).into_vec();
    top.sort_unstable();
    sets.push(top);
    for _ in 0..facets {
        let k = rng.gen_range(1..=size);
        let mut f: Vec<usize> = rand::seq::index::sample(rng, n, k).into_vec();
        f.sort_unstable();
        sets.push(f);
    }
    SimplicialComplex::new((0..n).map(|i| format!("v{i}")).collect(), sets).unwrap()
}

/// Every nonempty vertex subset lying in some facet, by brute force over all
/// subsets of the vertex set.
pub fn closure_f_vector(k: &SimplicialComplex) -> Vec<u64> {
    let n = k.vertices().len();
    assert!(n <= 20);
    let facet_masks: Vec<u32> = k
        .facets()
        .iter()
        .map(|f| f.iter().fold(0u32, |m, &v| m | 1 << v))
        .collect();
    let mut counts = Vec::new();
    for mask in 1u32..(1 << n) {
        if facet_masks.iter().any(|&f| mask & f == mask) {
            let dim = mask.count_ones() as usize - 1;
            if counts.len() <= dim {
                counts.resize(dim + 1, 0);
            }
            counts[dim] += 1;
        }
    }
    counts
}

/// `f(t) = Σ_{k ≥ -1} f_k t^{k+1}` multiplied out for two complexes.
pub fn convolved_f_vector(a: &[u64], b: &[u64]) -> Vec<u64> {
    let pa: Vec<u64> = std::iter::once(1).chain(a.iter().copied()).collect();
    let pb: Vec<u64> = std::iter::once(1).chain(b.iter().copied()).collect();
    let mut out = vec![0u64; pa.len() + pb.len() - 1];
    for (i, x) in pa.iter().enumerate() {
        for (j, y) in pb.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out.remove(0);
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// Edge sets as sets of unordered pairs; brute-force isomorphism by trying
/// every bijection.
pub fn graphs_isomorphic(g: &SimplicialComplex, h: &SimplicialComplex) -> bool {
    let n = g.vertices().len();
    if n != h.vertices().len() || g.edges().len() != h.edges().len() {
        return false;
    }
    let target: BTreeSet<(usize, usize)> = h.edges().into_iter().collect();
    let mut perm: Vec<usize> = (0..n).collect();
    permutations(&mut perm, 0, &mut |p| {
        g.edges().iter().all(|&(a, b)| {
            let (x, y) = (p[a].min(p[b]), p[a].max(p[b]));
            target.contains(&(x, y))
        })
    })
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
    if k == p.len() {
        return f(p);
    }
    for i in k..p.len() {
        p.swap(k, i);
        if permutations(p, k + 1, f) {
            p.swap(k, i);
            return true;
        }
        p.swap(k, i);
    }
    false
}

pub fn curve(points: &[[i64; 3]]) -> PolygonalCurve {
    PolygonalCurve::from_ints(points).unwrap()
}

/// Triangle in `z = 0` around the origin and a triangle in `x = 0` through it.
pub fn hopf() -> (PolygonalCurve, PolygonalCurve) {
    (
        curve(&[[-2, -2, 0], [4, -2, 0], [-2, 4, 0]]),
        curve(&[[0, 0, -3], [0, 0, 3], [0, 9, 0]]),
    )
}

/// `γ` clasps `β` twice with the same handedness (a (2,4) torus link).
pub fn double_clasp() -> (PolygonalCurve, PolygonalCurve) {
    // β: square in z = 0; γ weaves down through it, back up outside, down
    // through again, and back up outside.
    let beta = curve(&[[0, 0, 0], [10, 0, 0], [10, 10, 0], [0, 10, 0]]);
    let gamma = curve(&[
        [2, 5, 3],
        [2, 5, -3],
        [-4, 5, -3],
        [-4, 12, 3],
        [8, 5, 3],
        [8, 5, -3],
        [14, 5, -3],
        [14, -2, 3],
    ]);
    (beta, gamma)
}

/// Simple random polygon with integer vertices in `[-range, range]³`.
pub fn random_curve(rng: &mut ChaCha8Rng, max_len: usize, range: i64) -> PolygonalCurve {
    loop {
        let n = rng.gen_range(3..=max_len);
        let pts: Vec<RationalPoint3> = (0..n)
            .map(|_| {
                RationalPoint3::from_ints(
                    rng.gen_range(-range..=range),
                    rng.gen_range(-range..=range),
                    rng.gen_range(-range..=range),
                )
            })
            .collect();
        if let Ok(c) = PolygonalCurve::new(pts) {
            return c;
        }
    }
}

/// Random disjoint pair in a small box, so that many pairs link.
pub fn random_pair(rng: &mut ChaCha8Rng, max_len: usize) -> (PolygonalCurve, PolygonalCurve) {
    loop {
        let beta = random_curve(rng, max_len, 6);
        let gamma = random_curve(rng, max_len, 6);
        if beta.is_disjoint_from(&gamma) {
            return (beta, gamma);
        }
    }
}

fn to_f64(p: &RationalPoint3) -> [f64; 3] {
    p.coords().map(|c| c.to_f64().unwrap())
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn unit(a: [f64; 3]) -> [f64; 3] {
    let l = dot(a, a).sqrt();
    [a[0] / l, a[1] / l, a[2] / l]
}

/// Gauss linking integral `(1/4π) ∮∮ (x - y)·(dx × dy) / |x - y|³`,
/// evaluated segment pair by segment pair with the closed-form solid angle
/// of the quadrilateral spanned by the two segments.
pub fn gauss_linking_number(beta: &PolygonalCurve, gamma: &PolygonalCurve) -> f64 {
    let b: Vec<[f64; 3]> = beta.vertices().iter().map(to_f64).collect();
    let g: Vec<[f64; 3]> = gamma.vertices().iter().map(to_f64).collect();
    let mut total = 0.0;
    for i in 0..b.len() {
        let (p1, p2) = (b[i], b[(i + 1) % b.len()]);
        for j in 0..g.len() {
            let (p3, p4) = (g[j], g[(j + 1) % g.len()]);
            let r13 = sub(p3, p1);
            let r14 = sub(p4, p1);
            let r23 = sub(p3, p2);
            let r24 = sub(p4, p2);
            let n = [
                unit(cross(r13, r14)),
                unit(cross(r14, r24)),
                unit(cross(r24, r23)),
                unit(cross(r23, r13)),
            ];
            let omega: f64 = (0..4)
                .map(|k| dot(n[k], n[(k + 1) % 4]).clamp(-1.0, 1.0).asin())
                .sum();
            let s = dot(cross(sub(p4, p3), sub(p2, p1)), r13);
            if omega.is_nan() || s == 0.0 {
                continue;
            }
            total += omega * s.signum();
        }
    }
    total / (4.0 * std::f64::consts::PI)
}

/// Plain midpoint-rule evaluation of the same integral, used to pin down the
/// sign of the closed form.
pub fn gauss_integral_numeric(beta: &PolygonalCurve, gamma: &PolygonalCurve, steps: usize) -> f64 {
    let sample = |c: &PolygonalCurve| -> Vec<([f64; 3], [f64; 3])> {
        let v: Vec<[f64; 3]> = c.vertices().iter().map(to_f64).collect();
        let mut out = Vec::new();
        for i in 0..v.len() {
            let (a, b) = (v[i], v[(i + 1) % v.len()]);
            let d = sub(b, a);
            for s in 0..steps {
                let t = (s as f64 + 0.5) / steps as f64;
                let p = [a[0] + t * d[0], a[1] + t * d[1], a[2] + t * d[2]];
                let dp = [
                    d[0] / steps as f64,
                    d[1] / steps as f64,
                    d[2] / steps as f64,
                ];
                out.push((p, dp));
            }
        }
        out
    };
    let (xs, ys) = (sample(beta), sample(gamma));
    let mut total = 0.0;
    for (x, dx) in &xs {
        for (y, dy) in &ys {
            let r = sub(*x, *y);
            let len = dot(r, r).sqrt();
            total += dot(r, cross(*dx, *dy)) / (len * len * len);
        }
    }
    total / (4.0 * std::f64::consts::PI)
}

/// Rotation `q v q⁻¹` for the integer quaternion `q = (w, x, y, z)`, which
/// is a rational orthogonal matrix after dividing by `|q|²`.
pub fn rotation(q: [i64; 4]) -> [[BigRational; 3]; 3] {
    let [w, x, y, z] = q;
    let n = w * w + x * x + y * y + z * z;
    assert!(n > 0);
    let m = [
        [
            w * w + x * x - y * y - z * z,
            2 * (x * y - w * z),
            2 * (x * z + w * y),
        ],
        [
            2 * (x * y + w * z),
            w * w - x * x + y * y - z * z,
            2 * (y * z - w * x),
        ],
        [
            2 * (x * z - w * y),
            2 * (y * z + w * x),
            w * w - x * x - y * y + z * z,
        ],
    ];
    m.map(|row| row.map(|e| BigRational::new(e.into(), n.into())))
}

/// `p ↦ scale · (R p) + t`.
pub fn affine<'a>(
    rot: &'a [[BigRational; 3]; 3],
    scale: &BigRational,
    shift: [i64; 3],
) -> impl Fn(&RationalPoint3) -> RationalPoint3 + 'a {
    let scale = scale.clone();
    move |p| {
        let c = p.coords();
        let img: Vec<BigRational> = (0..3)
            .map(|i| {
                let r = &rot[i][0] * c[0] + &rot[i][1] * c[1] + &rot[i][2] * c[2];
                r * &scale + BigRational::from_integer(shift[i].into())
            })
            .collect();
        RationalPoint3::new(img[0].clone(), img[1].clone(), img[2].clone())
    }
}
