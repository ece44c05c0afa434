mod common;

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::Rng;

use extremal_links::complex::{
    find_graph_homeomorph, find_subcomplex, join, link_intersection, links_as_set_system,
    verify_homeomorph_witness, verify_subcomplex_witness, vertex_link, SearchLimits,
    SimplicialComplex,
};
use extremal_links::linking::{
    admissible_apexes, admissible_directions, coplanar, crossing_sum_along, linking_number_cone,
    linking_number_cone_with_apex, linking_number_crossings, PolygonalCurve, RationalPoint3,
};
use extremal_links::set_system::{
    atom_decomposition, binomial, chain_identities, intersection_bound, intersection_bound_holds,
    max_r_intersection, ordered_intersection_sum, total_size, verify_power_mean_bound, SetSystem,
};

use common::*;

fn set_system() -> impl Strategy<Value = SetSystem> {
    (1usize..=10, 0usize..=6).prop_flat_map(|(a, m)| {
        prop::collection::vec(prop::collection::vec(any::<bool>(), a), m).prop_map(move |rows| {
            let subsets: Vec<Vec<usize>> = rows
                .iter()
                .map(|row| (0..a).filter(|&q| row[q]).collect())
                .collect();
            SetSystem::from_subsets(a, &subsets).unwrap()
        })
    })
}

fn members(sys: &SetSystem) -> Vec<BTreeSet<usize>> {
    (0..sys.len())
        .map(|j| sys.members(j).into_iter().collect())
        .collect()
}

fn brute_max_intersection(sets: &[BTreeSet<usize>], r: usize) -> u64 {
    fn rec(sets: &[BTreeSet<usize>], r: usize, start: usize, acc: Option<BTreeSet<usize>>) -> u64 {
        if r == 0 {
            return acc.map_or(0, |s| s.len() as u64);
        }
        (start..sets.len())
            .map(|j| {
                let next = match &acc {
                    None => sets[j].clone(),
                    Some(s) => s.intersection(&sets[j]).copied().collect(),
                };
                rec(sets, r - 1, j + 1, Some(next))
            })
            .max()
            .unwrap_or(0)
    }
    rec(sets, r, 0, None)
}

fn brute_ordered_sum(sets: &[BTreeSet<usize>], a: usize, r: usize) -> u64 {
    (0..a)
        .map(|q| sets.iter().filter(|s| s.contains(&q)).count() as u64)
        .map(|d| d.pow(r as u32))
        .sum()
}

fn ground_permuted(sys: &SetSystem, perm: &[usize]) -> SetSystem {
    let subsets: Vec<Vec<usize>> = (0..sys.len())
        .map(|j| {
            let mut s: Vec<usize> = sys.members(j).into_iter().map(|q| perm[q]).collect();
            s.sort_unstable();
            s
        })
        .collect();
    SetSystem::from_subsets(sys.ground_size(), &subsets).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn max_intersection_matches_brute_force(sys in set_system(), r in 1usize..=4) {
        prop_assert_eq!(max_r_intersection(&sys, r), brute_max_intersection(&members(&sys), r));
    }

    #[test]
    fn ordered_sum_matches_degree_powers(sys in set_system(), r in 1usize..=4) {
        let expect = brute_ordered_sum(&members(&sys), sys.ground_size(), r);
        prop_assert_eq!(ordered_intersection_sum(&sys, r), BigUint::from(expect));
        if r == 1 {
            prop_assert_eq!(expect, total_size(&sys));
        }
    }

    #[test]
    fn atom_moments(sys in set_system(), r in 1usize..=4) {
        let atoms = atom_decomposition(&sys);
        prop_assert_eq!(atoms.total(), sys.ground_size() as u64);
        prop_assert_eq!(atoms.weighted_sum(1), BigUint::from(total_size(&sys)));
        prop_assert_eq!(atoms.weighted_sum(r), ordered_intersection_sum(&sys, r));
    }

    #[test]
    fn intersection_bound_exact_check_agrees_with_float(sys in set_system(), r in 1usize..=4) {
        let (m, a) = (sys.len() as u64, sys.ground_size() as u64);
        let s = max_r_intersection(&sys, r);
        let lhs = total_size(&sys);
        prop_assert!(intersection_bound_holds(lhs, r, m, a, s));
        // probe the exact predicate around the float bound
        let bound = intersection_bound(r, m, a, s);
        for probe in [bound.floor() as u64, bound.floor() as u64 + 1, bound.ceil() as u64 + 1] {
            let gap = probe as f64 - bound;
            if gap.abs() > 1e-6 {
                prop_assert_eq!(intersection_bound_holds(probe, r, m, a, s), gap < 0.0);
            }
        }
    }

    #[test]
    fn chain_and_power_mean_hold(sys in set_system(), r in 1usize..=4) {
        let chain = chain_identities(&sys, r);
        prop_assert!(chain.holds(), "{chain:?}");
        let unordered: u64 = {
            let sets = members(&sys);
            let mut total = 0u64;
            let mut idx: Vec<usize> = (0..r).collect();
            if sets.len() >= r {
                loop {
                    let inter = idx[1..].iter().fold(sets[idx[0]].clone(), |acc, &j| {
                        acc.intersection(&sets[j]).copied().collect()
                    });
                    total += inter.len() as u64;
                    let Some(i) = (0..r).rev().find(|&i| idx[i] < sets.len() - r + i) else { break };
                    idx[i] += 1;
                    for k in i + 1..r {
                        idx[k] = idx[k - 1] + 1;
                    }
                }
            }
            total
        };
        prop_assert_eq!(chain.unordered_intersection_sum.clone(), BigUint::from(unordered));
        let degrees: BigUint = (0..sys.ground_size())
            .map(|q| binomial((0..sys.len()).filter(|&j| sys.contains(j, q)).count() as u64, r as u64))
            .sum();
        prop_assert_eq!(chain.degree_binomial_sum, degrees);
        prop_assert!(verify_power_mean_bound(&sys, r).holds);
    }

    #[test]
    fn invariant_under_permutations(sys in set_system(), r in 1usize..=3, seed in any::<u64>()) {
        let mut rng = rng(seed);
        let mut order: Vec<usize> = (0..sys.len()).collect();
        rand::seq::SliceRandom::shuffle(order.as_mut_slice(), &mut rng);
        let mut perm: Vec<usize> = (0..sys.ground_size()).collect();
        rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), &mut rng);
        for other in [sys.permuted(&order), ground_permuted(&sys, &perm)] {
            prop_assert_eq!(total_size(&other), total_size(&sys));
            prop_assert_eq!(max_r_intersection(&other, r), max_r_intersection(&sys, r));
            prop_assert_eq!(ordered_intersection_sum(&other, r), ordered_intersection_sum(&sys, r));
        }
    }

    #[test]
    fn adding_an_element_is_monotone(sys in set_system(), r in 1usize..=3, j in any::<prop::sample::Index>(), q in any::<prop::sample::Index>()) {
        prop_assume!(!sys.is_empty());
        let (j, q) = (j.index(sys.len()), q.index(sys.ground_size()));
        let mut bigger = sys.clone();
        bigger.insert(j, q).unwrap();
        prop_assert!(total_size(&bigger) >= total_size(&sys));
        prop_assert!(max_r_intersection(&bigger, r) >= max_r_intersection(&sys, r));
        prop_assert!(ordered_intersection_sum(&bigger, r) >= ordered_intersection_sum(&sys, r));
    }

    #[test]
    fn set_system_json_round_trip(sys in set_system()) {
        let text = serde_json::to_string(&sys).unwrap();
        let back: SetSystem = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, sys);
    }
}

fn complex_strategy(max_n: usize, max_dim: usize) -> impl Strategy<Value = SimplicialComplex> {
    (1usize..=max_n, 0usize..=8, any::<u64>())
        .prop_map(move |(n, facets, seed)| random_complex(&mut rng(seed), n, max_dim, facets))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn f_vector_matches_closure(k in complex_strategy(10, 4)) {
        prop_assert_eq!(k.f_vector().counts, closure_f_vector(&k));
    }

    #[test]
    fn join_f_vector_is_a_convolution(k in complex_strategy(6, 3), l in complex_strategy(6, 3)) {
        let j = join(&k, &l);
        let expect = convolved_f_vector(&k.f_vector().counts, &l.f_vector().counts);
        prop_assert_eq!(&j.f_vector().counts, &expect);
        prop_assert_eq!(closure_f_vector(&j), expect);
    }

    #[test]
    fn link_incidence_double_count(k in complex_strategy(10, 3)) {
        let f = k.f_vector();
        for dim in 0..f.counts.len().saturating_sub(1) {
            let sum: u64 = k
                .vertices()
                .iter()
                .map(|v| vertex_link(&k, v).unwrap().f_vector().get(dim as isize))
                .sum();
            prop_assert_eq!(sum, (dim as u64 + 2) * f.get(dim as isize + 1));
        }
    }

    #[test]
    fn link_intersection_is_symmetric(k in complex_strategy(8, 3), seed in any::<u64>()) {
        let n = k.vertices().len();
        let mut rng = rng(seed);
        let count = rng.gen_range(1..=n.min(3));
        let picks: Vec<String> = rand::seq::index::sample(&mut rng, n, count)
            .into_iter()
            .map(|i| k.label(i).to_string())
            .collect();
        let mut shuffled = picks.clone();
        shuffled.reverse();
        let a = link_intersection(&k, &picks).unwrap();
        prop_assert_eq!(&a, &link_intersection(&k, &shuffled).unwrap());
        // direct definition: σ with σ ∪ {v} ∈ K for every picked v
        let idx: Vec<usize> = picks.iter().map(|p| k.vertex_index(p).unwrap()).collect();
        for dim in 0..4usize {
            let direct: Vec<Vec<usize>> = k
                .simplices(dim)
                .iter()
                .filter(|s| idx.iter().all(|v| {
                    !s.contains(v) && {
                        let mut t = (*s).clone();
                        t.push(*v);
                        t.sort_unstable();
                        k.contains_simplex(&t)
                    }
                }))
                .cloned()
                .collect();
            prop_assert_eq!(a.simplices(dim).to_vec(), direct);
        }
    }

    #[test]
    fn link_set_system_shape(k in complex_strategy(9, 3)) {
        let d = k.dimension();
        prop_assume!(d >= 1);
        let sys = links_as_set_system(&k, d as usize - 1);
        prop_assert_eq!(sys.len(), k.vertices().len());
        prop_assert_eq!(sys.ground_size() as u64, k.f_vector().get(d - 1));
        prop_assert_eq!(total_size(&sys), (d as u64 + 1) * k.f_vector().get(d));
    }

    #[test]
    fn planted_subcomplex_is_found(pattern in complex_strategy(5, 2), extra in complex_strategy(9, 2), seed in any::<u64>()) {
        // host = pattern on shuffled labels inside a larger random complex
        let pn = pattern.vertices().len();
        let hn = extra.vertices().len().max(pn);
        let mut rng = rng(seed);
        let place: Vec<usize> = rand::seq::index::sample(&mut rng, hn, pn).into_vec();
        let mut facets: Vec<Vec<usize>> = extra.facets().to_vec();
        for f in pattern.facets() {
            let mut g: Vec<usize> = f.iter().map(|&v| place[v]).collect();
            g.sort_unstable();
            facets.push(g);
        }
        let host = SimplicialComplex::new((0..hn).map(|i| format!("h{i}")).collect(), facets).unwrap();
        let w = find_subcomplex(&host, &pattern, SearchLimits::default()).unwrap();
        let w = w.expect("planted copy must be found");
        prop_assert!(verify_subcomplex_witness(&host, &pattern, &w));
    }
}

/// Replaces every edge of `g` by a path with `lengths[e]` inner vertices and
/// adds `noise` random extra edges among fresh vertices.
fn subdivide(
    g: &SimplicialComplex,
    lengths: &[usize],
    noise: usize,
    rng: &mut rand_chacha::ChaCha8Rng,
) -> SimplicialComplex {
    let mut n = g.vertices().len();
    let mut edges = Vec::new();
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        let mut prev = a;
        for _ in 0..lengths[e % lengths.len()] {
            edges.push((prev, n));
            prev = n;
            n += 1;
        }
        edges.push((prev, b));
    }
    let total = n + 3;
    for _ in 0..noise {
        let x = rng.gen_range(0..total);
        let y = rng.gen_range(0..total);
        if x != y {
            edges.push((x.min(y), x.max(y)));
        }
    }
    edges.sort_unstable();
    edges.dedup();
    SimplicialComplex::graph(total, &edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn planted_subdivision_is_found(
        which in 0usize..3,
        lengths in prop::collection::vec(0usize..3, 1..6),
        noise in 0usize..6,
        seed in any::<u64>(),
    ) {
        let pattern = match which {
            0 => complete(4),
            1 => complete_bipartite(3, 3),
            _ => complete(5),
        };
        let host = subdivide(&pattern, &lengths, noise, &mut rng(seed));
        let w = find_graph_homeomorph(&host, &pattern, SearchLimits::default()).unwrap();
        let w = w.expect("planted subdivision must be found");
        prop_assert!(verify_homeomorph_witness(&host, &pattern, &w));
    }
}

fn pair_strategy() -> impl Strategy<Value = (PolygonalCurve, PolygonalCurve)> {
    any::<u64>().prop_map(|seed| random_pair(&mut rng(seed), 8))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn algorithms_agree_with_gauss_integral((beta, gamma) in pair_strategy()) {
        let cone = linking_number_cone(&beta, &gamma).unwrap();
        let crossings = linking_number_crossings(&beta, &gamma).unwrap();
        prop_assert_eq!(cone, crossings);
        let gauss = gauss_linking_number(&beta, &gamma);
        prop_assert!((gauss - cone as f64).abs() < 1e-6, "gauss {gauss} vs {cone}");
    }

    #[test]
    fn orientation_and_symmetry((beta, gamma) in pair_strategy()) {
        let lk = linking_number_cone(&beta, &gamma).unwrap();
        prop_assert_eq!(linking_number_cone(&gamma, &beta).unwrap(), lk);
        prop_assert_eq!(linking_number_cone(&beta.reversed(), &gamma).unwrap(), -lk);
        prop_assert_eq!(linking_number_crossings(&beta, &gamma.reversed()).unwrap(), -lk);
        prop_assert_eq!(linking_number_cone(&beta.reversed(), &gamma.reversed()).unwrap(), lk);
    }

    #[test]
    fn rotation_and_subdivision((beta, gamma) in pair_strategy(), k in 0usize..12, s in 0usize..12) {
        let lk = linking_number_crossings(&beta, &gamma).unwrap();
        let b = beta.rotated(k).subdivided(s % beta.len());
        let g = gamma.rotated(s).subdivided(k % gamma.len());
        prop_assert_eq!(linking_number_cone(&b, &g).unwrap(), lk);
        prop_assert_eq!(linking_number_crossings(&b, &g).unwrap(), lk);
    }

    #[test]
    fn rigid_motion_and_scaling(
        (beta, gamma) in pair_strategy(),
        q in prop::array::uniform4(-3i64..=3),
        shift in prop::array::uniform3(-20i64..=20),
        num in 1i64..=9,
        den in 1i64..=9,
    ) {
        prop_assume!(q.iter().any(|&x| x != 0));
        let lk = linking_number_cone(&beta, &gamma).unwrap();
        let rot = rotation(q);
        let scale = BigRational::new(num.into(), den.into());
        let f = affine(&rot, &scale, shift);
        let (b, g) = (beta.map(&f).unwrap(), gamma.map(&f).unwrap());
        prop_assert_eq!(linking_number_cone(&b, &g).unwrap(), lk);
        prop_assert_eq!(linking_number_crossings(&b, &g).unwrap(), lk);
    }

    #[test]
    fn independent_of_apex_and_direction((beta, gamma) in pair_strategy()) {
        let lk = linking_number_cone(&beta, &gamma).unwrap();
        let apexes = admissible_apexes(&beta, &gamma, 3);
        prop_assert_eq!(apexes.len(), 3);
        for p in &apexes {
            prop_assert_eq!(linking_number_cone_with_apex(&beta, &gamma, p), Some(lk));
        }
        let dirs = admissible_directions(&beta, &gamma, 3);
        prop_assert_eq!(dirs.len(), 3);
        for (a, b) in &dirs {
            prop_assert_eq!(crossing_sum_along(&beta, &gamma, a, b), Some(2 * lk));
        }
    }

    #[test]
    fn coplanar_curves_do_not_link(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let flat = |rng: &mut rand_chacha::ChaCha8Rng| loop {
            let n = rng.gen_range(3..=8);
            let pts: Vec<RationalPoint3> = (0..n)
                .map(|_| RationalPoint3::from_ints(rng.gen_range(-9..=9), rng.gen_range(-9..=9), 0))
                .collect();
            if let Ok(c) = PolygonalCurve::new(pts) {
                return c;
            }
        };
        let (beta, gamma) = loop {
            let (b, g) = (flat(&mut rng), flat(&mut rng));
            if b.is_disjoint_from(&g) {
                break (b, g);
            }
        };
        prop_assert!(coplanar(&beta, &gamma));
        prop_assert_eq!(linking_number_cone(&beta, &gamma).unwrap(), 0);
        prop_assert_eq!(linking_number_crossings(&beta, &gamma).unwrap(), 0);
    }
}

#[test]
fn gauss_closed_form_matches_quadrature() {
    for (beta, gamma) in [hopf(), double_clasp()] {
        let closed = gauss_linking_number(&beta, &gamma);
        let numeric = gauss_integral_numeric(&beta, &gamma, 200);
        assert!((closed - numeric).abs() < 0.02, "{closed} vs {numeric}");
    }
}

#[test]
fn hopf_and_double_clasp_signs() {
    let (beta, gamma) = hopf();
    let lk = linking_number_cone(&beta, &gamma).unwrap();
    assert_eq!(lk.abs(), 1);
    assert_eq!(lk as f64, gauss_linking_number(&beta, &gamma).round());
    let (beta, gamma) = double_clasp();
    let lk = linking_number_cone(&beta, &gamma).unwrap();
    assert_eq!(lk.abs(), 2);
    assert_eq!(linking_number_crossings(&beta, &gamma).unwrap(), lk);
    assert_eq!(lk as f64, gauss_linking_number(&beta, &gamma).round());
}
