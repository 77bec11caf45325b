//! Circuit-cocircuit reversal classes of orientations.
//!
//! Two equivalence tests are provided: an algebraic one that splits the
//! difference vector orthogonally into kernel and row-space parts, and a
//! breadth-first search over single reversals used as an oracle.

use std::collections::{HashSet, VecDeque};

use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::fourientation::Orientation;
use crate::graph::Dsu;
use crate::linalg::{self, Rational};
use crate::matroid::{RepresentedMatroid, SignedVector};

/// Upper bound on `n` for anything that walks all `2^n` orientations.
pub const ORIENTATION_CAP: usize = 20;

/// Orthogonal projection onto the row space, `P = M^T (M M^T)^{-1} M`,
/// stored as an integer matrix over a common denominator.
#[derive(Debug, Clone)]
pub struct Projector {
    numer: Vec<Vec<i64>>,
    denom: i64,
}

impl Projector {
    pub(crate) fn new(m: &RepresentedMatroid) -> Self {
        let n = m.n();
        let a = linalg::to_rational(m.matrix());
        let at = linalg::transpose(&a, n);
        let gram = linalg::mat_mul(&a, &at);
        let inv = linalg::inverse(&gram).expect("full row rank gives an invertible Gram matrix");
        let p = linalg::mat_mul(&linalg::mat_mul(&at, &inv), &a);
        let denom = p
            .iter()
            .flatten()
            .map(|x| x.denom().to_i64().expect("small denominators"))
            .fold(1i64, |acc, d| acc.lcm(&d));
        let numer = p
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| {
                        let scaled = x * linalg::rational(denom);
                        linalg::as_integer(&scaled).expect("common denominator")
                    })
                    .collect()
            })
            .collect();
        Projector { numer, denom }
    }

    /// `denom * P d`.
    fn apply_scaled(&self, d: &[i64]) -> Vec<i64> {
        linalg::mat_vec(&self.numer, d)
    }

    pub fn project(&self, d: &[i64]) -> Vec<Rational> {
        self.apply_scaled(d)
            .into_iter()
            .map(|x| linalg::ratio(x, self.denom))
            .collect()
    }
}

/// Kernel and row-space parts of `o1 - o2` (halved), if both are
/// admissible {0, ±1} reversal sets.
fn split_difference(
    m: &RepresentedMatroid,
    o1: &Orientation,
    o2: &Orientation,
) -> Option<(Vec<i64>, Vec<i64>)> {
    if o1.len() != m.n() || o2.len() != m.n() {
        return None;
    }
    let d: Vec<i64> = (0..m.n())
        .map(|e| {
            if o1.get(e) != o2.get(e) {
                o1.get(e) as i64
            } else {
                0
            }
        })
        .collect();
    let proj = m.projector();
    let scaled = proj.apply_scaled(&d);
    let mut u = vec![0i64; m.n()];
    let mut ustar = vec![0i64; m.n()];
    for e in 0..m.n() {
        if scaled[e] % proj.denom != 0 {
            return None;
        }
        let s = scaled[e] / proj.denom;
        let k = d[e] - s;
        // Both parts must be 0 or equal to d_e, and not both nonzero.
        let ok = |x: i64| x == 0 || x == d[e];
        if !ok(s) || !ok(k) || (s != 0 && k != 0) {
            return None;
        }
        ustar[e] = s;
        u[e] = k;
    }
    Some((u, ustar))
}

/// Whether the two orientations lie in one reversal class.
pub fn class_equivalent(m: &RepresentedMatroid, o1: &Orientation, o2: &Orientation) -> bool {
    split_difference(m, o1, o2).is_some()
}

/// Support-disjoint signed circuits and cocircuits in `o1` whose reversal
/// turns `o1` into `o2`.
pub fn class_difference(
    m: &RepresentedMatroid,
    o1: &Orientation,
    o2: &Orientation,
) -> Result<(Vec<SignedVector>, Vec<SignedVector>)> {
    let (u, ustar) = split_difference(m, o1, o2).ok_or(Error::NotEquivalent)?;
    let circuits = decompose_part(m, &u, true)?;
    let cocircuits = decompose_part(m, &ustar, false)?;
    Ok((circuits, cocircuits))
}

fn decompose_part(m: &RepresentedMatroid, u: &[i64], kernel: bool) -> Result<Vec<SignedVector>> {
    if u.iter().all(|&x| x == 0) {
        return Ok(Vec::new());
    }
    debug_assert!(if kernel { m.in_kernel(u) } else { m.in_rowspace(u) });
    Ok(m
        .conformal_decompose(u)?
        .into_iter()
        .map(|(k, c)| {
            debug_assert_eq!(k, 1);
            c
        })
        .collect())
}

/// Which reversals generate the equivalence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReversalKind {
    CircuitsAndCocircuits,
    Circuits,
    Cocircuits,
}

fn reversal_pool(m: &RepresentedMatroid, kind: ReversalKind) -> Vec<(u64, u64)> {
    let mut pool = Vec::new();
    if kind != ReversalKind::Cocircuits {
        pool.extend(m.signed_circuits().iter().map(|c| c.masks()));
    }
    if kind != ReversalKind::Circuits {
        pool.extend(m.signed_cocircuits().iter().map(|c| c.masks()));
    }
    pool
}

fn check_cap(n: usize) -> Result<()> {
    if n > ORIENTATION_CAP {
        return Err(Error::TooLarge {
            what: "orientation enumeration",
            n,
            cap: ORIENTATION_CAP,
        });
    }
    Ok(())
}

/// Orientation mask (bit set = Minus) contains the signed vector.
fn mask_contains(mask: u64, (plus, minus): (u64, u64)) -> bool {
    plus & mask == 0 && minus & mask == minus
}

/// Oracle: breadth-first search from `o1` over single reversals.
pub fn class_equivalent_bfs(m: &RepresentedMatroid, o1: &Orientation, o2: &Orientation) -> bool {
    if o1.len() != m.n() || o2.len() != m.n() || m.n() > 63 {
        return false;
    }
    let pool = reversal_pool(m, ReversalKind::CircuitsAndCocircuits);
    let target = o2.mask();
    let start = o1.mask();
    let mut seen = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        if x == target {
            return true;
        }
        for &c in &pool {
            if mask_contains(x, c) {
                let y = x ^ (c.0 | c.1);
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
    }
    false
}

/// Sort key realizing the per-edge order Plus < Minus with edge 1 first.
fn lex_key(mask: u64, n: usize) -> u64 {
    (0..n).fold(0, |k, e| k << 1 | (mask >> e & 1))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReversalClass {
    pub canonical: Orientation,
    pub members: Option<Vec<Orientation>>,
}

/// Partition of all `2^n` orientations into reversal classes.
#[derive(Debug, Clone)]
pub struct ClassIndex {
    n: usize,
    class_of: Vec<u32>,
    reps: Vec<Orientation>,
}

impl ClassIndex {
    pub fn build(m: &RepresentedMatroid, kind: ReversalKind) -> Result<Self> {
        let n = m.n();
        check_cap(n)?;
        let total = 1usize << n;
        let mut dsu = Dsu::new(total);
        for (plus, minus) in reversal_pool(m, kind) {
            let support = plus | minus;
            let free = !support & ((1u64 << n) - 1);
            // Walk every orientation agreeing with the vector on its support.
            let mut sub = free;
            loop {
                let x = sub | minus;
                dsu.union(x as usize, (x ^ support) as usize);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & free;
            }
        }
        let mut best: Vec<Option<u64>> = vec![None; total];
        for x in 0..total as u64 {
            let r = dsu.find(x as usize);
            let k = lex_key(x, n);
            if best[r].is_none_or(|b| lex_key(b, n) > k) {
                best[r] = Some(x);
            }
        }
        let mut roots: Vec<(u64, usize)> = best
            .iter()
            .enumerate()
            .filter_map(|(r, b)| b.map(|x| (lex_key(x, n), r)))
            .collect();
        roots.sort_unstable();
        let mut id_of_root = vec![u32::MAX; total];
        let mut reps = Vec::with_capacity(roots.len());
        for (i, &(_, r)) in roots.iter().enumerate() {
            id_of_root[r] = i as u32;
            reps.push(Orientation::from_mask(best[r].unwrap(), n));
        }
        let class_of = (0..total).map(|x| id_of_root[dsu.find(x)]).collect();
        Ok(ClassIndex { n, class_of, reps })
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn class_of(&self, o: &Orientation) -> usize {
        self.class_of[o.mask() as usize] as usize
    }

    pub fn representative(&self, class: usize) -> &Orientation {
        &self.reps[class]
    }

    pub fn representatives(&self) -> &[Orientation] {
        &self.reps
    }

    pub fn members(&self, class: usize) -> Vec<Orientation> {
        (0..self.class_of.len())
            .filter(|&x| self.class_of[x] as usize == class)
            .map(|x| Orientation::from_mask(x as u64, self.n))
            .collect()
    }

    pub fn classes(&self) -> Vec<ReversalClass> {
        let mut members: Vec<Vec<Orientation>> = vec![Vec::new(); self.reps.len()];
        for (x, &c) in self.class_of.iter().enumerate() {
            members[c as usize].push(Orientation::from_mask(x as u64, self.n));
        }
        self.reps
            .iter()
            .cloned()
            .zip(members)
            .map(|(canonical, m)| ReversalClass {
                canonical,
                members: Some(m),
            })
            .collect()
    }
}

/// All reversal classes, ordered by canonical representative.
pub fn enumerate_classes(m: &RepresentedMatroid) -> Result<Vec<ReversalClass>> {
    Ok(ClassIndex::build(m, ReversalKind::CircuitsAndCocircuits)?.classes())
}

/// Lexicographically least member of the class of `o`.
pub fn canonical_representative(m: &RepresentedMatroid, o: &Orientation) -> Result<Orientation> {
    check_cap(m.n())?;
    let n = m.n();
    let pool = reversal_pool(m, ReversalKind::CircuitsAndCocircuits);
    let start = o.mask();
    let mut seen = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    let mut best = start;
    while let Some(x) = queue.pop_front() {
        if lex_key(x, n) < lex_key(best, n) {
            best = x;
        }
        for &c in &pool {
            if mask_contains(x, c) {
                let y = x ^ (c.0 | c.1);
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
    }
    Ok(Orientation::from_mask(best, n))
}
