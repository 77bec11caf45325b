#![allow(dead_code)]

use fourient_core::fourientation::{EdgeState, Fourientation};
use fourient_core::graph::Graph;
use fourient_core::lawrence::{MaximalSimplex, Side};
use fourient_core::linalg::{self, Rational};
use fourient_core::matroid::RepresentedMatroid;
use fourient_core::ribbon::{HalfEdge, RibbonGraph};
use fourient_core::signature::{self, Signature, SignaturePolarity};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_weights(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> Vec<Rational> {
    (0..n)
        .map(|_| linalg::rational(rng.gen_range(-bound..=bound)))
        .collect()
}

/// Redraws integer weights until they are generic for the polarity.
pub fn random_acyclic(
    m: &RepresentedMatroid,
    polarity: SignaturePolarity,
    rng: &mut ChaCha8Rng,
) -> (Signature, Vec<Rational>) {
    loop {
        let w = random_weights(rng, m.n(), 20);
        if let Ok(s) = signature::acyclic_signature_from_weights(m, &w, polarity) {
            return (s, w);
        }
    }
}

/// Uniformly shuffled rotations with a random root half-edge.
pub fn random_ribbon(g: &Graph, rng: &mut ChaCha8Rng) -> RibbonGraph {
    let mut rotations = vec![Vec::new(); g.vertex_count()];
    for (e, &(t, h)) in g.edges().iter().enumerate() {
        rotations[t].push(HalfEdge::new(e, 0));
        rotations[h].push(HalfEdge::new(e, 1));
    }
    for rot in &mut rotations {
        rot.shuffle(rng);
    }
    let candidates: Vec<usize> = (0..g.vertex_count())
        .filter(|&v| !rotations[v].is_empty())
        .collect();
    let q = *candidates.choose(rng).expect("graph has an edge");
    let root = *rotations[q].choose(rng).unwrap();
    RibbonGraph::new(g.clone(), rotations, q, root).expect("shuffled rotations are valid")
}

/// The simplices of every oriented basis of the side's polarity, built
/// directly from bases and sign choices.
pub fn oriented_basis_simplices(m: &RepresentedMatroid, side: Side) -> Vec<MaximalSimplex> {
    let n = m.n();
    let mut out = Vec::new();
    for b in m.bases() {
        let one_way: Vec<usize> = match side {
            Side::Primal => b.complement(n),
            Side::Dual => b.edges().to_vec(),
        };
        for signs in 0..1u32 << one_way.len() {
            let mut f = Fourientation::filled(n, EdgeState::Bi);
            for (k, &e) in one_way.iter().enumerate() {
                let s = if signs >> k & 1 == 0 { EdgeState::Plus } else { EdgeState::Minus };
                f.set(e, s);
            }
            out.push(MaximalSimplex::from_fourientation(&f));
        }
    }
    out.sort();
    out
}
