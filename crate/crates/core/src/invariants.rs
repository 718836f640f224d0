use crate::correspondence::{
    is_valid_colouring, random_assignment, random_permutation_assignment, uniform, CorrespondenceAssignment,
    PartialColouring,
};
use crate::counting::{
    count_colourings, count_extensions, enumerate_colourings, frontier_count, min_count_over_permutations,
    min_count_over_permutations_reduced, CountConfig,
};
use crate::extension::{extend_3cc_girth5, extend_5cc};
use crate::structure::{deficiency, is_deletable, minimum_list_sizes, DeletabilityStatus};
use crate::{bounds, families, graph6, io, planarity, Edge, Graph, PlaneGraph, Subgraph, VertexSet};
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn graph_from_bits(n: usize, bits: u64) -> Graph {
    let mut edges = Vec::new();
    let mut i = 0;
    for a in 0..n {
        for b in a + 1..n {
            if bits >> i & 1 == 1 {
                edges.push((a, b));
            }
            i += 1;
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

fn small_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, any::<u64>()).prop_map(|(n, bits)| graph_from_bits(n, bits))
}

/// Deletes edges at random until planar.
fn planar_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (small_graph(max_n), any::<u64>()).prop_map(|(mut g, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        while !planarity::is_planar(&g) {
            let e = *g.edge_list().choose(&mut rng).unwrap();
            g = g.without_edge(e);
        }
        g
    })
}

fn assignment_for(g: &Graph, seed: u64, max_list: usize) -> CorrespondenceAssignment {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sizes: Vec<usize> = (0..g.vertex_count()).map(|v| 1 + (seed as usize + v * 7) % max_list).collect();
    random_assignment(g, &sizes, max_list + 1, 0.6, &mut rng)
}

fn colourings_of_s(g: &Graph, s: VertexSet, a: &CorrespondenceAssignment) -> Vec<PartialColouring> {
    let (sg, map) = g.induced_relabelled(s);
    let sa = a.relabelled(&sg, &map);
    enumerate_colourings(&sg, &sa, None)
        .unwrap()
        .into_iter()
        .map(|c| PartialColouring(c.0.into_iter().map(|(v, col)| (map[v], col)).collect()))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn counting_engines_agree(g in small_graph(7), seed in any::<u64>()) {
        let a = assignment_for(&g, seed, 4);
        let all = enumerate_colourings(&g, &a, None).unwrap();
        prop_assert!(all.iter().all(|c| is_valid_colouring(&g, &a, c)));
        let par = count_colourings(&g, &a, &CountConfig::default()).unwrap();
        let seq = count_colourings(&g, &a, &CountConfig::sequential()).unwrap();
        prop_assert_eq!(&par, &seq);
        prop_assert_eq!(&par.count, &BigUint::from(all.len()));
        prop_assert_eq!(frontier_count(&g, &a).unwrap(), par.count);
    }

    /// `Π|L(v)| ≥ count ≥ Π|L(v)| − Σ_e |M_e|·Π_{w ∉ e}|L(w)|`.
    #[test]
    fn union_bound(g in small_graph(7), seed in any::<u64>()) {
        let a = assignment_for(&g, seed, 4);
        let count = count_colourings(&g, &a, &CountConfig::sequential()).unwrap().count;
        let sizes: Vec<i64> = a.list_sizes().iter().map(|&s| s as i64).collect();
        let total: i64 = sizes.iter().product();
        let mut lost = 0i64;
        for e in g.edges() {
            let rest: i64 = (0..sizes.len()).filter(|&w| !e.contains(w)).map(|w| sizes[w]).product();
            lost += a.matching(e).len() as i64 * rest;
        }
        prop_assert!(count <= BigUint::from(total as u64));
        prop_assert!(BigUint::from((total - lost).max(0) as u64) <= count);
    }

    /// Summing extension counts over the colourings of `S` gives the full count.
    #[test]
    fn chain_rule(g in small_graph(6), seed in any::<u64>(), mask in any::<u64>()) {
        let a = assignment_for(&g, seed, 3);
        let s_set = VertexSet(mask & g.vertices().0);
        let s = Subgraph::induced(&g, s_set);
        let mut sum = BigUint::from(0u8);
        for phi in colourings_of_s(&g, s_set, &a) {
            sum += count_extensions(&g, &a, &s, &phi, &CountConfig::sequential()).unwrap().count;
        }
        prop_assert_eq!(sum, count_colourings(&g, &a, &CountConfig::sequential()).unwrap().count);
    }

    #[test]
    fn deficiency_is_additive(g in small_graph(8), m1 in any::<u64>(), m2 in any::<u64>(), gp in 3u32..7) {
        let k_set = VertexSet(m1 & g.vertices().0);
        let h_set = VertexSet(m2 & k_set.0);
        let k = Subgraph::induced(&g, k_set);
        let h = Subgraph::induced(&g, h_set);
        let (kg, map) = g.induced_relabelled(k_set);
        let h_in_k = Subgraph::induced(&kg, (0..map.len()).filter(|&i| h_set.contains(map[i])).collect());
        let whole = deficiency(&g, &h, gp).unwrap().def_g;
        let parts = deficiency(&g, &k, gp).unwrap().def_g + deficiency(&kg, &h_in_k, gp).unwrap().def_g;
        prop_assert_eq!(whole, parts);
    }

    #[test]
    fn sampling_is_deterministic(g in small_graph(6), seed in any::<u64>()) {
        let draw = |s| random_permutation_assignment(&g, 3, &mut ChaCha8Rng::seed_from_u64(s));
        prop_assert_eq!(draw(seed), draw(seed));
        let a = assignment_for(&g, seed, 3);
        let r1 = count_colourings(&g, &a, &CountConfig::default()).unwrap();
        let r2 = count_colourings(&g, &a, &CountConfig::default()).unwrap();
        prop_assert_eq!(r1, r2);
    }

    #[test]
    fn round_trips(g in small_graph(9), seed in any::<u64>()) {
        prop_assert_eq!(graph6::decode(&graph6::encode(&g)).unwrap(), g.clone());
        let mut a = assignment_for(&g, seed, 4);
        if seed % 2 == 0 {
            a.k = Some(1);
        }
        prop_assert_eq!(io::parse_assignment(&io::emit_assignment(&a), &g).unwrap(), a.clone());
        let c = PartialColouring(a.lists.iter().enumerate().filter_map(|(v, l)| l.first().map(|&c| (v, c))).collect());
        prop_assert_eq!(io::parse_colouring(&io::emit_colouring(&c)).unwrap(), c);
        if let Some(pg) = planarity::embed(&g) {
            prop_assert_eq!(io::parse_embedding(&io::emit_embedding(&pg)).unwrap(), pg);
        }
    }

    /// A not-deletable verdict always carries an uncolourable witness with the
    /// required list sizes.
    #[test]
    fn deletability_witnesses(g in small_graph(6), mask in 1u64..64, r in 2usize..4) {
        let x = VertexSet(mask & g.vertices().0);
        prop_assume!(!x.is_empty());
        let h = Subgraph::induced(&g, x);
        let v = is_deletable(&g, &h, r, 1 << 22).unwrap();
        let sizes = minimum_list_sizes(&g, &h, r);
        match v.status {
            DeletabilityStatus::NotDeletable => {
                let w = v.witness.unwrap();
                let (hg, map) = g.induced_relabelled(x);
                for &orig in &map {
                    prop_assert!(w.lists[orig].len() >= sizes[orig]);
                }
                let local = w.relabelled(&hg, &map);
                prop_assert_eq!(count_colourings(&hg, &local, &CountConfig::sequential()).unwrap().count, BigUint::from(0u8));
            }
            DeletabilityStatus::Deletable => prop_assert!(v.witness.is_none()),
            DeletabilityStatus::UnknownBudget => {}
        }
    }

    /// Counts meet every bound whose hypotheses hold.
    #[test]
    fn planar_bounds_hold(g in planar_graph(7), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_permutation_assignment(&g, 5, &mut rng);
        let c = count_colourings(&g, &a, &CountConfig::sequential()).unwrap().count;
        prop_assert!(bounds::planar_5cc_bound(g.vertex_count()).met_by(&c));
        if !g.is_forest() {
            prop_assert!(bounds::euler_girth_slack(&g).unwrap() >= num_rational::Ratio::from_integer(2));
        }
    }
}

/// Wheels, grids and the icosahedron with a precoloured outer edge.
fn plane_fixture(which: u8) -> PlaneGraph {
    match which % 6 {
        0 => families::plane_wheel(5).unwrap(),
        1 => families::plane_wheel(8).unwrap(),
        2 => families::plane_grid(3, 3).unwrap(),
        3 => families::plane_grid(3, 4).unwrap(),
        4 => families::plane_icosahedron(),
        _ => families::plane_complete(4).unwrap(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn extension_never_fails(which in any::<u8>(), seed in any::<u64>(), density in 0.0f64..=1.0) {
        let pg = plane_fixture(which);
        let g = pg.graph();
        let outer = pg.outer_vertices();
        let sizes: Vec<usize> = (0..g.vertex_count()).map(|v| if outer.contains(v) { 3 } else { 5 }).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_assignment(g, &sizes, 6, density, &mut rng);
        let walk = pg.outer_face();
        let (x, y) = (walk[0], walk[1]);
        let s = Subgraph::new(VertexSet::singleton(x).with(y), [Edge::new(x, y)]).unwrap();
        let phis = colourings_of_s(g, s.vertices, &a);
        let phi = phis.choose(&mut rng).unwrap();
        let c = extend_5cc(&pg, &a, &s, phi).unwrap();
        prop_assert!(is_valid_colouring(g, &a, &c));
        prop_assert_eq!(c.len(), g.vertex_count());
        prop_assert_eq!(c.restricted(s.vertices), phi.clone());
    }

    #[test]
    fn girth5_extension_never_fails(n in 5usize..12, seed in any::<u64>()) {
        let pg = families::plane_cycle(n).unwrap();
        let g = pg.graph();
        let s = Subgraph::new(VertexSet::singleton(0).with(1), [Edge::new(0, 1)]).unwrap();
        let ind: VertexSet = (3..n - 1).step_by(2).collect();
        let sizes: Vec<usize> = (0..n).map(|v| if ind.contains(v) { 2 } else { 3 }).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_assignment(g, &sizes, 4, 1.0, &mut rng);
        let phis = colourings_of_s(g, s.vertices, &a);
        let phi = phis.choose(&mut rng).unwrap();
        let c = extend_3cc_girth5(&pg, &a, &s, ind, phi).unwrap();
        prop_assert!(is_valid_colouring(g, &a, &c));
        prop_assert_eq!(c.restricted(s.vertices), phi.clone());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// The spanning-forest reduction of the permutation space keeps the minimum.
    #[test]
    fn reduction_keeps_minimum(g in small_graph(5).prop_filter("few edges", |g| g.edge_count() <= 5)) {
        let config = CountConfig::default();
        let full = min_count_over_permutations(&g, 3, u128::MAX, &config).unwrap();
        let reduced = min_count_over_permutations_reduced(&g, 3, u128::MAX, &config).unwrap();
        prop_assert_eq!(full.result.count, reduced.result.count);
    }
}

#[test]
fn identity_assignments_count_proper_colourings() {
    let g = families::petersen();
    let c = count_colourings(&g, &uniform(&g, 3), &CountConfig::default()).unwrap();
    assert_eq!(c.count, BigUint::from(120u8));
}
