//! Circuit and cocircuit signatures and their atlases.

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};

use crate::atlas::{Atlas, Polarity};
use crate::error::{Error, Result};
use crate::fourientation::{EdgeState, Fourientation, Orientation};
use crate::linalg::{self, Rational};
use crate::lp;
use crate::matroid::{Basis, RepresentedMatroid, SignedVector, VectorKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SignaturePolarity {
    Circuit,
    Cocircuit,
}

impl SignaturePolarity {
    pub fn atlas_polarity(self) -> Polarity {
        match self {
            SignaturePolarity::Circuit => Polarity::External,
            SignaturePolarity::Cocircuit => Polarity::Internal,
        }
    }

    fn pool(self, m: &RepresentedMatroid) -> &[SignedVector] {
        match self {
            SignaturePolarity::Circuit => m.signed_circuits(),
            SignaturePolarity::Cocircuit => m.signed_cocircuits(),
        }
    }

    fn kind(self) -> VectorKind {
        match self {
            SignaturePolarity::Circuit => VectorKind::Circuit,
            SignaturePolarity::Cocircuit => VectorKind::Cocircuit,
        }
    }
}

/// One chosen orientation per circuit (or cocircuit), listed in the
/// matroid's enumeration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    polarity: SignaturePolarity,
    chosen: Vec<SignedVector>,
    index: HashMap<Vec<usize>, usize>,
}

impl Signature {
    /// Accepts the vectors in any order; each must be a signed (co)circuit
    /// and every (co)circuit must be chosen exactly once.
    pub fn new(
        m: &RepresentedMatroid,
        polarity: SignaturePolarity,
        vectors: impl IntoIterator<Item = SignedVector>,
    ) -> Result<Self> {
        let pool = polarity.pool(m);
        let mut picked: HashMap<Vec<usize>, SignedVector> = HashMap::new();
        for v in vectors {
            let v = v.with_kind(polarity.kind());
            if v.len() != m.n() {
                return Err(Error::LengthMismatch {
                    expected: m.n(),
                    got: v.len(),
                });
            }
            if !pool.contains(&v) {
                return Err(Error::InvalidSignature(format!(
                    "{v} is not a signed {}",
                    kind_name(polarity)
                )));
            }
            if picked.insert(v.support(), v.clone()).is_some() {
                return Err(Error::InvalidSignature(format!(
                    "support of {v} is chosen twice"
                )));
            }
        }
        let mut chosen = Vec::with_capacity(pool.len() / 2);
        for pair in pool.chunks(2) {
            let support = pair[0].support();
            match picked.remove(&support) {
                Some(v) => chosen.push(v),
                None => {
                    return Err(Error::InvalidSignature(format!(
                        "no orientation chosen for {}",
                        pair[0]
                    )))
                }
            }
        }
        Ok(Self::from_chosen(polarity, chosen))
    }

    fn from_chosen(polarity: SignaturePolarity, chosen: Vec<SignedVector>) -> Self {
        let index = chosen
            .iter()
            .enumerate()
            .map(|(i, v)| (v.support(), i))
            .collect();
        Signature {
            polarity,
            chosen,
            index,
        }
    }

    pub fn polarity(&self) -> SignaturePolarity {
        self.polarity
    }

    pub fn vectors(&self) -> &[SignedVector] {
        &self.chosen
    }

    pub fn len(&self) -> usize {
        self.chosen.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chosen.is_empty()
    }

    pub fn contains(&self, v: &SignedVector) -> bool {
        self.index
            .get(&v.support())
            .is_some_and(|&i| self.chosen[i].entries() == v.entries())
    }

    /// The chosen orientation on the given support.
    pub fn chosen_for(&self, support: &[usize]) -> Option<&SignedVector> {
        self.index.get(support).map(|&i| &self.chosen[i])
    }
}

fn kind_name(p: SignaturePolarity) -> &'static str {
    match p {
        SignaturePolarity::Circuit => "circuit",
        SignaturePolarity::Cocircuit => "cocircuit",
    }
}

/// Fundamental (co)circuits of a basis with `+1` on their own edge.
fn fundamentals(
    m: &RepresentedMatroid,
    b: &Basis,
    polarity: SignaturePolarity,
) -> Result<Vec<(usize, SignedVector)>> {
    match polarity {
        SignaturePolarity::Circuit => m.fundamental_circuits(b),
        SignaturePolarity::Cocircuit => m.fundamental_cocircuits(b),
    }
}

/// Each one-way edge follows the signature's choice on its fundamental
/// (co)circuit; the remaining edges are bioriented.
pub fn atlas_from_signature(m: &RepresentedMatroid, sig: &Signature) -> Result<Atlas> {
    let mut entries = Vec::with_capacity(m.bases().len());
    for b in m.bases() {
        let mut f = Fourientation::filled(m.n(), EdgeState::Bi);
        for (e, c) in fundamentals(m, b, sig.polarity)? {
            let chosen = sig
                .chosen_for(&c.support())
                .ok_or_else(|| Error::InvalidSignature(format!("{c} is not covered")))?;
            f.set(e, EdgeState::from_sign(chosen.get(e)));
        }
        entries.push((b.clone(), f));
    }
    Atlas::new(m, sig.polarity.atlas_polarity(), entries)
}

/// Reads each (co)circuit off the oriented bases in which it is
/// fundamental, scanning bases in lexicographic order.
pub fn signature_from_atlas(m: &RepresentedMatroid, a: &Atlas) -> Result<Signature> {
    let polarity = match a.polarity() {
        Polarity::External => SignaturePolarity::Circuit,
        Polarity::Internal => SignaturePolarity::Cocircuit,
    };
    let mut read: HashMap<Vec<usize>, (SignedVector, Basis)> = HashMap::new();
    for (b, f) in a.iter() {
        for (e, c) in fundamentals(m, b, polarity)? {
            let sign = f.get(e).sign().expect("one-way edge in an oriented basis");
            let v = if sign > 0 { c } else { c.negated() };
            match read.get(&v.support()) {
                None => {
                    read.insert(v.support(), (v, b.clone()));
                }
                Some((w, first)) if w.entries() != v.entries() => {
                    return Err(Error::NotSignatureInduced {
                        first: first.clone(),
                        second: b.clone(),
                        circuit: w.clone(),
                    });
                }
                Some(_) => {}
            }
        }
    }
    Signature::new(m, polarity, read.into_values().map(|(v, _)| v))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Acyclicity {
    /// `w . sigma(C) >= 1` for every chosen vector.
    Acyclic { witness: Vec<Rational> },
    /// Nonnegative coefficients summing to 1 whose combination vanishes.
    Cyclic {
        certificate: Vec<(SignedVector, Rational)>,
    },
}

impl Acyclicity {
    pub fn is_acyclic(&self) -> bool {
        matches!(self, Acyclicity::Acyclic { .. })
    }
}

/// Decides acyclicity by exact linear programming, returning a separating
/// weight vector or a vanishing nonnegative combination.
pub fn is_acyclic(m: &RepresentedMatroid, sig: &Signature) -> Acyclicity {
    let n = m.n();
    let vs = sig.vectors();
    let k = vs.len();
    if k == 0 {
        return Acyclicity::Acyclic {
            witness: vec![Rational::zero(); n],
        };
    }
    // sigma_C . (p - q) - s_C = 1 with p, q, s >= 0.
    let cols = 2 * n + k;
    let rows: Vec<Vec<Rational>> = vs
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let mut row = vec![Rational::zero(); cols];
            for e in 0..n {
                let x = linalg::rational(v.get(e) as i64);
                row[n + e] = -x.clone();
                row[e] = x;
            }
            row[2 * n + i] = -Rational::one();
            row
        })
        .collect();
    let b = vec![Rational::one(); k];
    if let Some(x) = lp::feasible_point(&rows, &b, cols) {
        let witness = (0..n).map(|e| &x[e] - &x[n + e]).collect();
        return Acyclicity::Acyclic { witness };
    }
    // sum_C a_C sigma_C = 0, sum_C a_C = 1, a >= 0.
    let mut rows: Vec<Vec<Rational>> = (0..n)
        .map(|e| vs.iter().map(|v| linalg::rational(v.get(e) as i64)).collect())
        .collect();
    rows.push(vec![Rational::one(); k]);
    let mut b = vec![Rational::zero(); n];
    b.push(Rational::one());
    let a = lp::feasible_point(&rows, &b, k)
        .expect("one of the two alternative systems is feasible");
    let certificate = vs
        .iter()
        .zip(a)
        .filter(|(_, x)| x.is_positive())
        .map(|(v, x)| (v.clone(), x))
        .collect();
    Acyclicity::Cyclic { certificate }
}

/// True when the nonnegative combination is nonzero and vanishes.
pub fn is_zero_combination(n: usize, combo: &[(SignedVector, Rational)]) -> bool {
    if combo.is_empty() || combo.iter().any(|(_, a)| a.is_negative()) {
        return false;
    }
    if combo.iter().all(|(_, a)| a.is_zero()) {
        return false;
    }
    (0..n).all(|e| {
        combo
            .iter()
            .map(|(v, a)| a * linalg::rational(v.get(e) as i64))
            .sum::<Rational>()
            .is_zero()
    })
}

/// Definition-based check: every signed (co)circuit inside an oriented
/// basis of the induced atlas is already chosen.
pub fn is_triangulating_signature(m: &RepresentedMatroid, sig: &Signature) -> Result<bool> {
    Ok(triangulating_signature_violation(m, sig)?.is_none())
}

/// First oriented basis containing an unchosen (co)circuit.
pub fn triangulating_signature_violation(
    m: &RepresentedMatroid,
    sig: &Signature,
) -> Result<Option<(Basis, SignedVector)>> {
    let atlas = atlas_from_signature(m, sig)?;
    let pool = sig.polarity.pool(m);
    for (b, f) in atlas.iter() {
        if let Some(c) = pool.iter().find(|c| f.contains_vector(c) && !sig.contains(c)) {
            return Ok(Some((b.clone(), c.clone())));
        }
    }
    Ok(None)
}

/// Graph criterion: a cycle signature is triangulating iff no three
/// chosen directed cycles sum to zero.
pub fn is_triangulating_cycle_signature_graph(
    m: &RepresentedMatroid,
    sig: &Signature,
) -> Result<bool> {
    Ok(zero_triple(m, sig)?.is_none())
}

/// Three chosen directed cycles summing to zero, if any.
pub fn zero_triple(
    m: &RepresentedMatroid,
    sig: &Signature,
) -> Result<Option<[SignedVector; 3]>> {
    if m.graph().is_none() {
        return Err(Error::NotGraphic);
    }
    if sig.polarity != SignaturePolarity::Circuit {
        return Err(Error::PolarityMismatch {
            expected: "circuit",
        });
    }
    let vs = sig.vectors();
    let n = m.n();
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            let partial: Vec<i8> = (0..n).map(|e| vs[i].get(e) + vs[j].get(e)).collect();
            if partial.iter().any(|x| x.abs() > 1) {
                continue;
            }
            for l in j + 1..vs.len() {
                if (0..n).all(|e| partial[e] + vs[l].get(e) == 0) {
                    return Ok(Some([vs[i].clone(), vs[j].clone(), vs[l].clone()]));
                }
            }
        }
    }
    Ok(None)
}

/// Chooses, for each (co)circuit, the orientation with positive inner
/// product against `w`.
pub fn acyclic_signature_from_weights(
    m: &RepresentedMatroid,
    w: &[Rational],
    polarity: SignaturePolarity,
) -> Result<Signature> {
    if w.len() != m.n() {
        return Err(Error::LengthMismatch {
            expected: m.n(),
            got: w.len(),
        });
    }
    let pool = polarity.pool(m);
    let mut chosen = Vec::with_capacity(pool.len() / 2);
    for pair in pool.chunks(2) {
        let d = pair[0].dot_rational(w);
        if d.is_zero() {
            return Err(Error::NonGeneric(pair[0].clone()));
        }
        chosen.push(if d.is_positive() {
            pair[0].clone()
        } else {
            pair[1].clone()
        });
    }
    Ok(Signature::from_chosen(polarity, chosen))
}

/// Every signed (co)circuit contained in `o` is chosen by `sig`.
pub fn is_compatible(m: &RepresentedMatroid, o: &Orientation, sig: &Signature) -> bool {
    sig.polarity
        .pool(m)
        .iter()
        .all(|c| !o.contains_vector(c) || sig.contains(c))
}
