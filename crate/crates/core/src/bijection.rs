//! The map from bases to orientations induced by a pair of atlases, its
//! class-level version and the extension to all subsets.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::atlas::{self, Atlas, Polarity};
use crate::classes::{self, ClassIndex, ReversalKind};
use crate::error::{Error, Result};
use crate::fourientation::Orientation;
use crate::matroid::{Basis, RepresentedMatroid};
use crate::signature::{self, Signature, SignaturePolarity};

/// Upper bound on `n` for the full subset table.
pub const PHI_CAP: usize = 16;

/// `B -> B_ext ∩ B_int`.
pub fn f_map(a_ext: &Atlas, a_int: &Atlas, b: &Basis) -> Result<Orientation> {
    a_ext.expect_polarity(Polarity::External)?;
    a_int.expect_polarity(Polarity::Internal)?;
    let fe = a_ext
        .get(b)
        .ok_or_else(|| Error::InvalidAtlas(format!("{b} missing from the external atlas")))?;
    let fi = a_int
        .get(b)
        .ok_or_else(|| Error::InvalidAtlas(format!("{b} missing from the internal atlas")))?;
    Ok(fe
        .intersect(fi)
        .to_orientation()
        .expect("external and internal oriented bases meet in an orientation"))
}

/// The value of `f` on every basis, in lexicographic basis order.
pub fn f_table(m: &RepresentedMatroid, a_ext: &Atlas, a_int: &Atlas) -> Result<Vec<(Basis, Orientation)>> {
    m.bases()
        .iter()
        .map(|b| Ok((b.clone(), f_map(a_ext, a_int, b)?)))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Hypotheses {
    pub external_dissecting: bool,
    pub internal_dissecting: bool,
    pub external_triangulating: bool,
    pub internal_triangulating: bool,
}

impl Hypotheses {
    /// Both atlases dissecting and at least one triangulating.
    pub fn hold(&self) -> bool {
        self.external_dissecting
            && self.internal_dissecting
            && (self.external_triangulating || self.internal_triangulating)
    }

    fn describe(&self) -> String {
        format!(
            "external dissecting={}, triangulating={}; internal dissecting={}, triangulating={}",
            self.external_dissecting,
            self.external_triangulating,
            self.internal_dissecting,
            self.internal_triangulating
        )
    }
}

pub fn check_hypotheses(m: &RepresentedMatroid, a_ext: &Atlas, a_int: &Atlas) -> Hypotheses {
    Hypotheses {
        external_dissecting: atlas::is_dissecting(m, a_ext),
        internal_dissecting: atlas::is_dissecting(m, a_int),
        external_triangulating: atlas::is_triangulating(m, a_ext),
        internal_triangulating: atlas::is_triangulating(m, a_int),
    }
}

fn require_hypotheses(m: &RepresentedMatroid, a_ext: &Atlas, a_int: &Atlas) -> Result<()> {
    let h = check_hypotheses(m, a_ext, a_int);
    if !h.hold() {
        return Err(Error::Hypothesis(h.describe()));
    }
    Ok(())
}

/// Result of composing `f` with the class map.
#[derive(Debug, Clone)]
pub struct FBar {
    /// Basis, its image and the index of the image's class.
    pub table: Vec<(Basis, Orientation, usize)>,
    pub class_count: usize,
    /// Two bases landing in one class, if any.
    pub collision: Option<(Basis, Basis)>,
    /// `None` when verification was skipped.
    pub hypotheses: Option<Hypotheses>,
}

impl FBar {
    pub fn is_bijective(&self) -> bool {
        self.collision.is_none() && self.table.len() == self.class_count
    }
}

pub fn f_bar(m: &RepresentedMatroid, a_ext: &Atlas, a_int: &Atlas, verify: bool) -> Result<FBar> {
    let index = ClassIndex::build(m, ReversalKind::CircuitsAndCocircuits)?;
    f_bar_with(m, a_ext, a_int, verify, &index)
}

/// As [`f_bar`], reusing a prebuilt class index.
pub fn f_bar_with(
    m: &RepresentedMatroid,
    a_ext: &Atlas,
    a_int: &Atlas,
    verify: bool,
    index: &ClassIndex,
) -> Result<FBar> {
    let hypotheses = verify.then(|| check_hypotheses(m, a_ext, a_int));
    let mut owner: HashMap<usize, Basis> = HashMap::new();
    let mut collision = None;
    let mut table = Vec::with_capacity(m.bases().len());
    for (b, o) in f_table(m, a_ext, a_int)? {
        let c = index.class_of(&o);
        if let Some(prev) = owner.get(&c) {
            collision.get_or_insert((prev.clone(), b.clone()));
        } else {
            owner.insert(c, b.clone());
        }
        table.push((b, o, c));
    }
    Ok(FBar {
        table,
        class_count: index.len(),
        collision,
        hypotheses,
    })
}

/// Subset assigned to every orientation, indexed by orientation mask
/// (bit `e` set means edge `e` is Minus).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiTable {
    n: usize,
    subsets: Vec<u64>,
}

impl PhiTable {
    /// Builds a table from explicit `(orientation, subset)` pairs.
    pub fn from_entries(n: usize, entries: &[(Orientation, Vec<usize>)]) -> Result<Self> {
        if n > PHI_CAP {
            return Err(Error::TooLarge {
                what: "subset table",
                n,
                cap: PHI_CAP,
            });
        }
        let mut subsets = vec![None; 1 << n];
        for (o, s) in entries {
            if o.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    got: o.len(),
                });
            }
            if let Some(&e) = s.iter().find(|&&e| e >= n) {
                return Err(Error::EdgeOutOfRange { edge: e + 1, n });
            }
            subsets[o.mask() as usize] = Some(s.iter().fold(0u64, |m, &e| m | 1 << e));
        }
        let subsets = subsets
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidAtlas("table does not cover every orientation".into()))?;
        Ok(PhiTable { n, subsets })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, o: &Orientation) -> Vec<usize> {
        let s = self.subsets[o.mask() as usize];
        (0..self.n).filter(|&e| s >> e & 1 == 1).collect()
    }

    pub fn entries(&self) -> Vec<(Orientation, Vec<usize>)> {
        (0..self.subsets.len() as u64)
            .map(|x| {
                let o = Orientation::from_mask(x, self.n);
                let s = self.get(&o);
                (o, s)
            })
            .collect()
    }

    /// True when distinct orientations get distinct subsets.
    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.subsets.len()];
        self.subsets
            .iter()
            .all(|&s| !std::mem::replace(&mut seen[s as usize], true))
    }

    /// The orientation sent to `subset`.
    pub fn inverse(&self, subset: &[usize]) -> Option<Orientation> {
        let s = subset.iter().fold(0u64, |m, &e| m | 1 << e);
        self.subsets
            .iter()
            .position(|&x| x == s)
            .map(|x| Orientation::from_mask(x as u64, self.n))
    }

    /// Any two orientations differ on some edge of the symmetric
    /// difference of their subsets.
    pub fn is_tiling(&self) -> bool {
        self.tiling_violation().is_none()
    }

    pub fn tiling_violation(&self) -> Option<(Orientation, Orientation)> {
        let k = self.subsets.len();
        (0..k).into_par_iter().find_map_first(|a| {
            (a + 1..k).find_map(|b| {
                let differ = (a ^ b) as u64;
                let sym = self.subsets[a] ^ self.subsets[b];
                (differ & sym == 0).then(|| {
                    (
                        Orientation::from_mask(a as u64, self.n),
                        Orientation::from_mask(b as u64, self.n),
                    )
                })
            })
        })
    }
}

fn edge_mask(edges: &[usize]) -> u64 {
    edges.iter().fold(0u64, |m, &e| m | 1 << e)
}

/// `(B ∪ circuits) \ cocircuits` where `f(B)` and `o` differ by the listed
/// disjoint circuits and cocircuits.
fn subset_for(m: &RepresentedMatroid, b: &Basis, fb: &Orientation, o: &Orientation) -> Result<u64> {
    let (circuits, cocircuits) = classes::class_difference(m, fb, o)?;
    let mut s = edge_mask(b.edges());
    for c in &circuits {
        s |= edge_mask(&c.support());
    }
    for c in &cocircuits {
        s &= !edge_mask(&c.support());
    }
    Ok(s)
}

/// The full table of the extended map.
///
/// With `verify`, fails unless both atlases are dissecting and one is
/// triangulating. Without it the table is still built when `f` is injective
/// on classes.
pub fn phi_table(m: &RepresentedMatroid, a_ext: &Atlas, a_int: &Atlas, verify: bool) -> Result<PhiTable> {
    let n = m.n();
    if n > PHI_CAP {
        return Err(Error::TooLarge {
            what: "subset table",
            n,
            cap: PHI_CAP,
        });
    }
    if verify {
        require_hypotheses(m, a_ext, a_int)?;
    }
    let index = ClassIndex::build(m, ReversalKind::CircuitsAndCocircuits)?;
    let fbar = f_bar_with(m, a_ext, a_int, false, &index)?;
    if let Some((b1, b2)) = &fbar.collision {
        return Err(Error::Hypothesis(format!(
            "{b1} and {b2} map into the same reversal class"
        )));
    }
    let mut by_class: Vec<Option<(Basis, Orientation)>> = vec![None; index.len()];
    for (b, o, c) in fbar.table {
        by_class[c] = Some((b, o));
    }
    let subsets = (0..1u64 << n)
        .into_par_iter()
        .map(|x| {
            let o = Orientation::from_mask(x, n);
            let (b, fb) = by_class[index.class_of(&o)].as_ref().ok_or_else(|| {
                Error::Hypothesis(format!("no basis maps into the class of {o}"))
            })?;
            subset_for(m, b, fb, &o)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PhiTable { n, subsets })
}

/// The extended map at one orientation, located with the algebraic
/// equivalence test.
pub fn phi(
    m: &RepresentedMatroid,
    a_ext: &Atlas,
    a_int: &Atlas,
    o: &Orientation,
    verify: bool,
) -> Result<Vec<usize>> {
    if verify {
        require_hypotheses(m, a_ext, a_int)?;
    }
    for (b, fb) in f_table(m, a_ext, a_int)? {
        if classes::class_equivalent(m, &fb, o) {
            let s = subset_for(m, &b, &fb, o)?;
            return Ok((0..m.n()).filter(|&e| s >> e & 1 == 1).collect());
        }
    }
    Err(Error::Hypothesis(format!("no basis maps into the class of {o}")))
}

pub fn phi_inverse(
    m: &RepresentedMatroid,
    a_ext: &Atlas,
    a_int: &Atlas,
    subset: &[usize],
    verify: bool,
) -> Result<Orientation> {
    let table = phi_table(m, a_ext, a_int, verify)?;
    table
        .inverse(subset)
        .ok_or_else(|| Error::Hypothesis("subset has no preimage".into()))
}

/// All orientations compatible with both signatures.
pub fn compatible_orientations(
    m: &RepresentedMatroid,
    sigma: &Signature,
    sigma_star: &Signature,
) -> Result<Vec<Orientation>> {
    check_signature_pair(sigma, sigma_star)?;
    let n = m.n();
    if n > classes::ORIENTATION_CAP {
        return Err(Error::TooLarge {
            what: "orientation enumeration",
            n,
            cap: classes::ORIENTATION_CAP,
        });
    }
    Ok((0..1u64 << n)
        .into_par_iter()
        .map(|x| Orientation::from_mask(x, n))
        .filter(|o| {
            signature::is_compatible(m, o, sigma) && signature::is_compatible(m, o, sigma_star)
        })
        .collect())
}

fn check_signature_pair(sigma: &Signature, sigma_star: &Signature) -> Result<()> {
    if sigma.polarity() != SignaturePolarity::Circuit {
        return Err(Error::PolarityMismatch {
            expected: "circuit",
        });
    }
    if sigma_star.polarity() != SignaturePolarity::Cocircuit {
        return Err(Error::PolarityMismatch {
            expected: "cocircuit",
        });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpecializationReport {
    pub independents_match: bool,
    pub spannings_match: bool,
}

/// Checks that the extended map restricts to
/// sigma-compatible orientations -> independent sets and
/// sigma*-compatible orientations -> spanning sets, and that the preimages
/// of independent (spanning) sets represent the circuit (cocircuit)
/// reversal classes.
pub fn specialization_report(
    m: &RepresentedMatroid,
    sigma: &Signature,
    sigma_star: &Signature,
) -> Result<SpecializationReport> {
    check_signature_pair(sigma, sigma_star)?;
    let a_ext = signature::atlas_from_signature(m, sigma)?;
    let a_int = signature::atlas_from_signature(m, sigma_star)?;
    let table = phi_table(m, &a_ext, &a_int, true)?;
    let n = m.n();
    let entries = table.entries();
    let side = |sig: &Signature, in_family: &dyn Fn(&[usize]) -> bool, kind: ReversalKind| -> Result<bool> {
        let index = ClassIndex::build(m, kind)?;
        let mut family_preimages = Vec::new();
        let mut compatible_images = Vec::new();
        for (o, s) in &entries {
            if signature::is_compatible(m, o, sig) {
                compatible_images.push(s.clone());
            }
            if in_family(s) {
                family_preimages.push(o.clone());
            }
        }
        // Compatible orientations map exactly onto the family.
        let onto = compatible_images.iter().all(|s| in_family(s))
            && compatible_images.len() == family_preimages.len();
        // One preimage per restricted reversal class.
        let mut hit = vec![false; index.len()];
        let mut reps = true;
        for o in &family_preimages {
            let c = index.class_of(o);
            reps &= !std::mem::replace(&mut hit[c], true);
        }
        reps &= hit.iter().all(|&h| h);
        Ok(onto && reps)
    };
    let independents_match = side(sigma, &|s| m.is_independent(s), ReversalKind::Circuits)?;
    let spannings_match = side(sigma_star, &|s| m.is_spanning(s), ReversalKind::Cocircuits)?;
    debug_assert_eq!(entries.len(), 1 << n);
    Ok(SpecializationReport {
        independents_match,
        spannings_match,
    })
}
