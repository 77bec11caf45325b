//! Oriented bases, atlases and the dissecting/triangulating predicates.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fourientation::{self, EdgeState, Fourientation};
use crate::matroid::{Basis, RepresentedMatroid};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarity {
    External,
    Internal,
}

impl Polarity {
    pub fn name(self) -> &'static str {
        match self {
            Polarity::External => "external",
            Polarity::Internal => "internal",
        }
    }
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrientedBasis {
    pub basis: Basis,
    pub fourientation: Fourientation,
    pub polarity: Polarity,
}

impl OrientedBasis {
    /// Checks the bioriented/one-way pattern required by the polarity.
    pub fn new(basis: Basis, fourientation: Fourientation, polarity: Polarity) -> Result<Self> {
        check_shape(&basis, &fourientation, polarity)?;
        Ok(OrientedBasis {
            basis,
            fourientation,
            polarity,
        })
    }
}

fn check_shape(basis: &Basis, f: &Fourientation, polarity: Polarity) -> Result<()> {
    for (e, &s) in f.states().iter().enumerate() {
        let bi_here = match polarity {
            Polarity::External => basis.contains(e),
            Polarity::Internal => !basis.contains(e),
        };
        let ok = if bi_here {
            s == EdgeState::Bi
        } else {
            s.is_one_way()
        };
        if !ok {
            return Err(Error::InvalidAtlas(format!(
                "edge {} of {} has state {:?} in an {polarity} oriented basis",
                e + 1,
                basis,
                s
            )));
        }
    }
    Ok(())
}

/// One oriented basis per basis, keyed in lexicographic basis order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Atlas {
    polarity: Polarity,
    entries: BTreeMap<Basis, Fourientation>,
}

impl Atlas {
    /// Validates coverage of every basis and the polarity of each entry.
    pub fn new(
        m: &RepresentedMatroid,
        polarity: Polarity,
        entries: impl IntoIterator<Item = (Basis, Fourientation)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (b, f) in entries {
            if f.len() != m.n() {
                return Err(Error::LengthMismatch {
                    expected: m.n(),
                    got: f.len(),
                });
            }
            if !m.is_basis(b.edges()) || b.edges().iter().any(|&e| e >= m.n()) {
                return Err(Error::InvalidAtlas(format!("{b} is not a basis")));
            }
            check_shape(&b, &f, polarity)?;
            if map.insert(b.clone(), f).is_some() {
                return Err(Error::InvalidAtlas(format!("{b} appears twice")));
            }
        }
        if let Some(missing) = m.bases().iter().find(|b| !map.contains_key(*b)) {
            return Err(Error::InvalidAtlas(format!("{missing} is missing")));
        }
        Ok(Atlas {
            polarity,
            entries: map,
        })
    }

    pub fn polarity(&self) -> Polarity {
        self.polarity
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, b: &Basis) -> Option<&Fourientation> {
        self.entries.get(b)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Basis, &Fourientation)> {
        self.entries.iter()
    }

    pub fn oriented_bases(&self) -> Vec<OrientedBasis> {
        self.entries
            .iter()
            .map(|(b, f)| OrientedBasis {
                basis: b.clone(),
                fourientation: f.clone(),
                polarity: self.polarity,
            })
            .collect()
    }

    pub(crate) fn expect_polarity(&self, expected: Polarity) -> Result<()> {
        if self.polarity != expected {
            return Err(Error::PolarityMismatch {
                expected: expected.name(),
            });
        }
        Ok(())
    }
}

/// The fourientation compared for a pair of entries: `B1 ∩ -B2` for
/// external atlases and `(B1 ∩ -B2)^c` for internal ones.
pub fn pair_fourientation(polarity: Polarity, f1: &Fourientation, f2: &Fourientation) -> Fourientation {
    let f = f1.intersect(&f2.negate());
    match polarity {
        Polarity::External => f,
        Polarity::Internal => f.complement(),
    }
}

fn pair_is_dissecting(m: &RepresentedMatroid, polarity: Polarity, f: &Fourientation) -> bool {
    match polarity {
        Polarity::External => fourientation::has_potential_cocircuit(m, f),
        Polarity::Internal => fourientation::has_potential_circuit(m, f),
    }
}

fn pair_is_triangulating(m: &RepresentedMatroid, polarity: Polarity, f: &Fourientation) -> bool {
    match polarity {
        Polarity::External => !fourientation::has_potential_circuit(m, f),
        Polarity::Internal => !fourientation::has_potential_cocircuit(m, f),
    }
}

/// First unordered pair (in lexicographic order) failing `ok`.
///
/// The condition is symmetric: swapping the pair negates the compared
/// fourientation, which negates its potential circuits and cocircuits.
fn first_violation(
    a: &Atlas,
    ok: impl Fn(&Fourientation) -> bool + Sync,
) -> Option<(Basis, Basis)> {
    let list: Vec<(&Basis, &Fourientation)> = a.entries.iter().collect();
    (0..list.len()).into_par_iter().find_map_first(|i| {
        (i + 1..list.len()).find_map(|j| {
            let f = pair_fourientation(a.polarity, list[i].1, list[j].1);
            if ok(&f) {
                None
            } else {
                Some((list[i].0.clone(), list[j].0.clone()))
            }
        })
    })
}

pub fn dissecting_violation(m: &RepresentedMatroid, a: &Atlas) -> Option<(Basis, Basis)> {
    first_violation(a, |f| pair_is_dissecting(m, a.polarity, f))
}

pub fn triangulating_violation(m: &RepresentedMatroid, a: &Atlas) -> Option<(Basis, Basis)> {
    first_violation(a, |f| pair_is_triangulating(m, a.polarity, f))
}

pub fn is_dissecting(m: &RepresentedMatroid, a: &Atlas) -> bool {
    dissecting_violation(m, a).is_none()
}

pub fn is_triangulating(m: &RepresentedMatroid, a: &Atlas) -> bool {
    triangulating_violation(m, a).is_none()
}
