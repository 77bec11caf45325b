//! Property tests over random small graphs.

mod common;

use std::collections::BTreeSet;

use fourient_core::atlas;
use fourient_core::bijection;
use fourient_core::classes::{self, ClassIndex, ReversalKind};
use fourient_core::fourientation::{self, EdgeState, Fourientation, Orientation};
use fourient_core::graph::Graph;
use fourient_core::io;
use fourient_core::lawrence::{build_lawrence, Heights, MaximalSimplex, Side};
use fourient_core::linalg::{self, Rational};
use fourient_core::matroid::RepresentedMatroid;
use fourient_core::ribbon;
use fourient_core::selftest;
use fourient_core::signature::{self, Signature, SignaturePolarity};
use proptest::prelude::*;

/// A random spanning tree plus extra edges, with random directions.
fn graph(max_vertices: usize, max_extra: usize, loops: bool) -> impl Strategy<Value = Graph> {
    (2..=max_vertices)
        .prop_flat_map(move |v| {
            let parents: Vec<_> = (1..v).map(|i| 0..i).collect();
            let extra = prop::collection::vec((0..v, 0..v), 0..=max_extra);
            let flips = prop::collection::vec(any::<bool>(), v - 1 + max_extra);
            (Just(v), parents, extra, flips)
        })
        .prop_map(move |(v, parents, extra, flips)| {
            let mut edges: Vec<(usize, usize)> =
                parents.into_iter().enumerate().map(|(i, p)| (p, i + 1)).collect();
            edges.extend(extra.into_iter().filter(|(a, b)| loops || a != b));
            for (e, flip) in edges.iter_mut().zip(flips) {
                if flip {
                    *e = (e.1, e.0);
                }
            }
            Graph::new(v, edges).unwrap()
        })
}

fn matroid(g: &Graph) -> RepresentedMatroid {
    RepresentedMatroid::from_graph(g).unwrap()
}

fn weights(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-30i64..=30, n)
}

fn rationals(w: &[i64]) -> Vec<Rational> {
    w.iter().map(|&x| linalg::rational(x)).collect()
}

fn fourientation_of(code: &[u8]) -> Fourientation {
    Fourientation::new(
        code.iter()
            .map(|c| match c % 4 {
                0 => EdgeState::Empty,
                1 => EdgeState::Plus,
                2 => EdgeState::Minus,
                _ => EdgeState::Bi,
            })
            .collect(),
    )
}

/// A signature picking one orientation of each (co)circuit by bit.
fn signature_from_bits(m: &RepresentedMatroid, polarity: SignaturePolarity, bits: u64) -> Signature {
    let pool = match polarity {
        SignaturePolarity::Circuit => m.signed_circuits(),
        SignaturePolarity::Cocircuit => m.signed_cocircuits(),
    };
    let chosen = pool
        .chunks(2)
        .enumerate()
        .map(|(i, pair)| pair[(bits >> (i % 64) & 1) as usize].clone());
    Signature::new(m, polarity, chosen).unwrap()
}

fn acyclic(m: &RepresentedMatroid, polarity: SignaturePolarity, w: &[i64]) -> Option<Signature> {
    signature::acyclic_signature_from_weights(m, &rationals(w), polarity).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn orthogonality_and_duality(g in graph(5, 4, true)) {
        let m = matroid(&g);
        prop_assert_eq!(selftest::check_orthogonality(&m), Ok(()));
        prop_assert_eq!(selftest::check_duality(&m), Ok(()));
        prop_assert_eq!(selftest::check_matrix_tree(&m), Ok(()));
        prop_assert_eq!(selftest::check_circuits_fundamental(&m), Ok(()));
    }

    #[test]
    fn fundamental_decomposition(g in graph(5, 4, true)) {
        let m = matroid(&g);
        prop_assert_eq!(selftest::check_fundamental_decomposition(&m), Ok(()));
    }

    #[test]
    fn conformal_decomposition(g in graph(5, 4, false), a in any::<usize>(), b in any::<usize>()) {
        let m = matroid(&g);
        let cs = m.signed_circuits();
        prop_assume!(!cs.is_empty());
        let (c, d) = (&cs[a % cs.len()], &cs[b % cs.len()]);
        let u: Vec<i64> = c.entries().iter().zip(d.entries()).map(|(&x, &y)| (x + y) as i64).collect();
        let parts = m.conformal_decompose(&u).unwrap();
        let mut sum = vec![0i64; m.n()];
        for (k, v) in &parts {
            prop_assert!(*k > 0);
            prop_assert!(fourient_core::matroid::is_conformal(v, &u));
            for (s, &x) in sum.iter_mut().zip(v.entries()) {
                *s += k * x as i64;
            }
        }
        prop_assert_eq!(sum, u);
    }

    #[test]
    fn exclusivity_and_three_painting(
        g in graph(5, 4, true),
        code in prop::collection::vec(any::<u8>(), 8),
    ) {
        let m = matroid(&g);
        let f = fourientation_of(&code[..m.n().min(8)]);
        prop_assume!(f.len() == m.n());
        let pc = fourientation::potential_circuits(&m, &f);
        let pcc = fourientation::potential_cocircuits(&m, &f);
        for c in &pc {
            for d in &pcc {
                prop_assert!(c.support().iter().all(|&e| d.get(e) == 0));
            }
        }
        for e in f.one_way_edges() {
            let s = f.get(e).sign().unwrap();
            let in_c = pc.iter().any(|c| c.get(e) == s);
            let in_cc = pcc.iter().any(|d| d.get(e) == s);
            prop_assert!(in_c != in_cc, "edge {} of {}", e + 1, f);
        }
    }

    #[test]
    fn class_count_equals_basis_count(g in graph(5, 4, true)) {
        let m = matroid(&g);
        prop_assert_eq!(classes::enumerate_classes(&m).unwrap().len(), m.bases().len());
    }

    #[test]
    fn projection_agrees_with_search(g in graph(5, 3, true), x in any::<u64>(), y in any::<u64>()) {
        let m = matroid(&g);
        let n = m.n();
        let o1 = Orientation::from_mask(x & ((1 << n) - 1), n);
        let o2 = Orientation::from_mask(y & ((1 << n) - 1), n);
        prop_assert_eq!(
            classes::class_equivalent(&m, &o1, &o2),
            classes::class_equivalent_bfs(&m, &o1, &o2)
        );
        let rep = classes::canonical_representative(&m, &o1).unwrap();
        prop_assert!(classes::class_equivalent_bfs(&m, &o1, &rep));
        let (cs, ds) = classes::class_difference(&m, &o1, &rep).unwrap();
        let mut o = o1.clone();
        let mut used = 0u64;
        for v in cs.iter().chain(&ds) {
            let (p, q) = v.masks();
            prop_assert_eq!(used & (p | q), 0);
            used |= p | q;
            prop_assert!(o1.contains_vector(v));
            o = o.reverse(v);
        }
        prop_assert_eq!(o, rep);
    }

    #[test]
    fn acyclic_implies_triangulating(g in graph(5, 4, true), w in weights(8)) {
        let m = matroid(&g);
        for polarity in [SignaturePolarity::Circuit, SignaturePolarity::Cocircuit] {
            let Some(sig) = acyclic(&m, polarity, &w[..m.n()]) else { continue };
            prop_assert!(signature::is_acyclic(&m, &sig).is_acyclic());
            prop_assert!(signature::is_triangulating_signature(&m, &sig).unwrap());
            let a = signature::atlas_from_signature(&m, &sig).unwrap();
            prop_assert!(atlas::is_triangulating(&m, &a));
            prop_assert!(atlas::is_dissecting(&m, &a));
            let back = signature::signature_from_atlas(&m, &a).unwrap();
            prop_assert_eq!(&back, &sig);
            prop_assert_eq!(signature::atlas_from_signature(&m, &back).unwrap(), a);
        }
    }

    #[test]
    fn acyclicity_certificates_check_out(g in graph(5, 4, false), bits in any::<u64>()) {
        let m = matroid(&g);
        let sig = signature_from_bits(&m, SignaturePolarity::Circuit, bits);
        match signature::is_acyclic(&m, &sig) {
            signature::Acyclicity::Acyclic { witness } => {
                for v in sig.vectors() {
                    prop_assert!(v.dot_rational(&witness) >= linalg::rational(1));
                }
            }
            signature::Acyclicity::Cyclic { certificate } => {
                prop_assert!(signature::is_zero_combination(m.n(), &certificate));
                prop_assert!(certificate.iter().all(|(v, _)| sig.contains(v)));
            }
        }
    }

    #[test]
    fn graph_criterion_matches_definition(g in graph(5, 4, true), bits in any::<u64>()) {
        let m = matroid(&g);
        let sig = signature_from_bits(&m, SignaturePolarity::Circuit, bits);
        prop_assert_eq!(
            signature::is_triangulating_cycle_signature_graph(&m, &sig).unwrap(),
            signature::is_triangulating_signature(&m, &sig).unwrap()
        );
    }

    #[test]
    fn triangulating_signatures_round_trip(g in graph(5, 4, true), bits in any::<u64>()) {
        let m = matroid(&g);
        for polarity in [SignaturePolarity::Circuit, SignaturePolarity::Cocircuit] {
            let sig = signature_from_bits(&m, polarity, bits);
            if !signature::is_triangulating_signature(&m, &sig).unwrap() {
                continue;
            }
            let a = signature::atlas_from_signature(&m, &sig).unwrap();
            prop_assert!(atlas::is_triangulating(&m, &a));
            prop_assert_eq!(signature::signature_from_atlas(&m, &a).unwrap(), sig);
        }
    }

    #[test]
    fn tour_atlases_dissect(g in graph(4, 4, true), seed in any::<u64>()) {
        let m = matroid(&g);
        let rg = common::random_ribbon(&g, &mut common::rng(seed));
        let a = ribbon::bernardi_external_atlas(&m, &rg).unwrap();
        prop_assert_eq!(atlas::dissecting_violation(&m, &a), None);
        let int = ribbon::away_from_root_internal_atlas(&m, rg.root_vertex()).unwrap();
        prop_assert!(atlas::is_triangulating(&m, &int));
        let fbar = bijection::f_bar(&m, &a, &int, true).unwrap();
        prop_assert!(fbar.is_bijective());
    }

    #[test]
    fn signature_pairs_give_bijections(g in graph(5, 3, true), w in weights(7), v in weights(7)) {
        let m = matroid(&g);
        let n = m.n();
        let (Some(s), Some(t)) = (
            acyclic(&m, SignaturePolarity::Circuit, &w[..n]),
            acyclic(&m, SignaturePolarity::Cocircuit, &v[..n]),
        ) else {
            return Ok(());
        };
        let ext = signature::atlas_from_signature(&m, &s).unwrap();
        let int = signature::atlas_from_signature(&m, &t).unwrap();
        let fbar = bijection::f_bar(&m, &ext, &int, true).unwrap();
        prop_assert!(fbar.is_bijective());
        let table = bijection::phi_table(&m, &ext, &int, true).unwrap();
        prop_assert!(table.is_tiling());
        prop_assert!(table.is_bijective());
        for (b, o, _) in &fbar.table {
            prop_assert_eq!(table.get(o), b.edges().to_vec());
            prop_assert!(signature::is_compatible(&m, o, &s) && signature::is_compatible(&m, o, &t));
        }
        let compatible = bijection::compatible_orientations(&m, &s, &t).unwrap();
        prop_assert_eq!(compatible.len(), m.bases().len());
        let report = bijection::specialization_report(&m, &s, &t).unwrap();
        prop_assert!(report.independents_match && report.spannings_match);
    }

    #[test]
    fn one_triangulating_atlas_suffices(g in graph(4, 3, true), w in weights(6), seed in any::<u64>()) {
        // A tour atlas need not be triangulating; paired with a triangulating
        // internal atlas the map is still a bijection.
        let m = matroid(&g);
        let Some(t) = acyclic(&m, SignaturePolarity::Cocircuit, &w[..m.n()]) else {
            return Ok(());
        };
        let rg = common::random_ribbon(&g, &mut common::rng(seed));
        let ext = ribbon::bernardi_external_atlas(&m, &rg).unwrap();
        let int = signature::atlas_from_signature(&m, &t).unwrap();
        let table = bijection::phi_table(&m, &ext, &int, true).unwrap();
        prop_assert!(table.is_tiling());
    }

    #[test]
    fn io_round_trips(g in graph(4, 3, true), w in weights(6), v in weights(6)) {
        let m = matroid(&g);
        let n = m.n();
        prop_assert_eq!(io::parse_graph(&io::graph_to_json(&g)).unwrap(), g.clone());
        let Some(s) = acyclic(&m, SignaturePolarity::Circuit, &w[..n]) else { return Ok(()) };
        let Some(t) = acyclic(&m, SignaturePolarity::Cocircuit, &v[..n]) else { return Ok(()) };
        prop_assert_eq!(io::parse_signature(&m, &io::signature_to_json(&s)).unwrap(), s.clone());
        prop_assert_eq!(io::parse_signature(&m, &io::signature_to_json(&t)).unwrap(), t.clone());
        let ext = signature::atlas_from_signature(&m, &s).unwrap();
        let int = signature::atlas_from_signature(&m, &t).unwrap();
        prop_assert_eq!(io::parse_atlas(&m, &io::atlas_to_json(&ext)).unwrap(), ext.clone());
        prop_assert_eq!(io::parse_atlas(&m, &io::atlas_to_json(&int)).unwrap(), int.clone());
        let f = bijection::f_table(&m, &ext, &int).unwrap();
        prop_assert_eq!(io::parse_f_table(n, &io::f_table_to_json(&f)).unwrap(), f);
        let table = bijection::phi_table(&m, &ext, &int, true).unwrap();
        prop_assert_eq!(io::parse_phi_table(n, &io::phi_table_to_json(&table)).unwrap(), table);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn simplex_gram_determinant_is_n(g in graph(4, 2, false)) {
        let m = matroid(&g);
        let model = build_lawrence(&m, Side::Primal).unwrap();
        for s in model.enumerate_maximal_simplices() {
            prop_assert_eq!(model.gram_determinant(&s).unwrap(), linalg::rational(m.n() as i64));
            let cols: Vec<Vec<i64>> = s.vertices().iter().map(|&v| model.vertex(v)).collect();
            let square = linalg::transpose(&cols, model.dimension());
            prop_assert_eq!(linalg::determinant(&square).abs(), 1);
        }
    }

    #[test]
    fn dual_model_matches_internal_atlases(g in graph(4, 2, false), v in weights(5)) {
        let m = matroid(&g);
        prop_assume!(m.coloops().is_empty());
        let Some(t) = acyclic(&m, SignaturePolarity::Cocircuit, &v[..m.n()]) else { return Ok(()) };
        let model = build_lawrence(&m, Side::Dual).unwrap();
        let int = signature::atlas_from_signature(&m, &t).unwrap();
        let cells = model.simplices_of_atlas(&int).unwrap();
        prop_assert!(model.classify_family(&cells).triangulation);
        prop_assert_eq!(model.chi_atlas(&cells).unwrap(), int);
        let mut all = model.enumerate_maximal_simplices();
        all.sort();
        prop_assert_eq!(all, common::oriented_basis_simplices(&m, Side::Dual));
    }

    #[test]
    fn predicates_match_geometry(g in graph(3, 2, false), i in any::<usize>(), j in any::<usize>()) {
        let m = matroid(&g);
        prop_assume!(m.n() + m.rank() <= 7);
        let model = build_lawrence(&m, Side::Primal).unwrap();
        let all = model.enumerate_maximal_simplices();
        let (s1, s2) = (&all[i % all.len()], &all[j % all.len()]);
        let geo = model.geometric_oracle(s1, s2).unwrap();
        prop_assert_eq!(model.interiors_disjoint(s1, s2).unwrap(), !geo.interiors_intersect);
        prop_assert_eq!(model.common_face(s1, s2).unwrap(), geo.common_face);
    }

    #[test]
    fn dissections_cover_the_polytope(g in graph(3, 2, false), w in weights(5)) {
        let m = matroid(&g);
        prop_assume!(m.n() + m.rank() <= 7);
        let Some(s) = acyclic(&m, SignaturePolarity::Circuit, &w[..m.n()]) else { return Ok(()) };
        let model = build_lawrence(&m, Side::Primal).unwrap();
        let a = signature::atlas_from_signature(&m, &s).unwrap();
        let cells = model.simplices_of_atlas(&a).unwrap();
        prop_assert!(model.classify_family(&cells).dissection);
        for probe in model.enumerate_maximal_simplices() {
            let p = model.barycenter(&probe);
            prop_assert!(cells.iter().any(|c| model.simplex_contains(c, &p).unwrap()));
        }
        // Dropping a cell uncovers its barycenter.
        for (k, c) in cells.iter().enumerate() {
            let p = model.barycenter(c);
            prop_assert!(!cells.iter().enumerate().any(|(l, d)| l != k && model.simplex_contains(d, &p).unwrap()));
        }
    }

    #[test]
    fn regular_triangulations_are_lower_cells(
        g in graph(3, 2, false),
        hs in prop::collection::vec((-20i64..=20, 1i64..=3), 10),
    ) {
        let m = matroid(&g);
        prop_assume!(m.n() + m.rank() <= 7);
        let model = build_lawrence(&m, Side::Primal).unwrap();
        let values: Vec<Rational> = hs[..2 * m.n()].iter().map(|&(p, q)| linalg::ratio(p, q)).collect();
        let h = Heights::from_interleaved(&values);
        let (Ok(a), Ok(cells)) = (
            model.regular_triangulation_from_heights(&h),
            model.regular_triangulation_geometric(&h),
        ) else {
            return Ok(());
        };
        prop_assert_eq!(model.chi_atlas(&cells).unwrap(), a);
        prop_assert!(model.classify_family(&cells).triangulation);
        let js = io::heights_to_json(&h);
        prop_assert_eq!(io::parse_heights(m.n(), &js).unwrap(), h);
        let fam = io::family_to_json(&cells);
        prop_assert_eq!(io::parse_family(m.n(), &fam).unwrap(), cells);
    }
}

#[test]
fn phi_table_is_deterministic_across_thread_counts() {
    let m = catalog_matroid("k4");
    let n = m.n();
    let s = signature::acyclic_signature_from_weights(&m, &selftest::power_weights(n, 2, false), SignaturePolarity::Circuit).unwrap();
    let t = signature::acyclic_signature_from_weights(&m, &selftest::power_weights(n, 3, true), SignaturePolarity::Cocircuit).unwrap();
    let ext = signature::atlas_from_signature(&m, &s).unwrap();
    let int = signature::atlas_from_signature(&m, &t).unwrap();
    let outputs: BTreeSet<String> = [1, 2, 4]
        .into_iter()
        .map(|k| {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(k).build().unwrap();
            pool.install(|| io::phi_table_to_json(&bijection::phi_table(&m, &ext, &int, true).unwrap()))
        })
        .collect();
    assert_eq!(outputs.len(), 1);
}

#[test]
fn class_index_members_partition_orientations() {
    let m = catalog_matroid("k4");
    for kind in [ReversalKind::CircuitsAndCocircuits, ReversalKind::Circuits, ReversalKind::Cocircuits] {
        let index = ClassIndex::build(&m, kind).unwrap();
        let total: usize = (0..index.len()).map(|c| index.members(c).len()).sum();
        assert_eq!(total, 64);
    }
    // One circuit-reversal class per independent set.
    let circuits = ClassIndex::build(&m, ReversalKind::Circuits).unwrap();
    let independents = (0..1u64 << 6)
        .filter(|x| m.is_independent(&(0..6).filter(|e| x >> e & 1 == 1).collect::<Vec<_>>()))
        .count();
    assert_eq!(circuits.len(), independents);
}

fn catalog_matroid(name: &str) -> RepresentedMatroid {
    fourient_core::catalog::get(name).unwrap().matroid().unwrap()
}

#[test]
fn simplices_of_a_non_simplex_are_rejected() {
    let m = catalog_matroid("theta");
    let model = build_lawrence(&m, Side::Primal).unwrap();
    let s = MaximalSimplex::from_fourientation(&"bb".parse().unwrap());
    assert!(model.chi_simplex(&s).is_err());
}
