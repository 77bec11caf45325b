//! Fourientations, orientations and potential circuits/cocircuits.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matroid::{ArcId, RepresentedMatroid, SignedVector};

/// State of one edge: no arc, one of the two arcs, or both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeState {
    Empty,
    Plus,
    Minus,
    Bi,
}

impl EdgeState {
    pub fn has_plus(self) -> bool {
        matches!(self, EdgeState::Plus | EdgeState::Bi)
    }

    pub fn has_minus(self) -> bool {
        matches!(self, EdgeState::Minus | EdgeState::Bi)
    }

    fn from_arcs(plus: bool, minus: bool) -> Self {
        match (plus, minus) {
            (false, false) => EdgeState::Empty,
            (true, false) => EdgeState::Plus,
            (false, true) => EdgeState::Minus,
            (true, true) => EdgeState::Bi,
        }
    }

    pub fn negate(self) -> Self {
        EdgeState::from_arcs(self.has_minus(), self.has_plus())
    }

    pub fn complement(self) -> Self {
        EdgeState::from_arcs(!self.has_plus(), !self.has_minus())
    }

    pub fn intersect(self, other: Self) -> Self {
        EdgeState::from_arcs(
            self.has_plus() && other.has_plus(),
            self.has_minus() && other.has_minus(),
        )
    }

    pub fn is_one_way(self) -> bool {
        matches!(self, EdgeState::Plus | EdgeState::Minus)
    }

    /// Sign of a one-way edge.
    pub fn sign(self) -> Option<i8> {
        match self {
            EdgeState::Plus => Some(1),
            EdgeState::Minus => Some(-1),
            _ => None,
        }
    }

    pub fn from_sign(sign: i8) -> Self {
        if sign > 0 {
            EdgeState::Plus
        } else {
            EdgeState::Minus
        }
    }

    pub fn symbol(self) -> char {
        match self {
            EdgeState::Empty => 'o',
            EdgeState::Plus => '+',
            EdgeState::Minus => '-',
            EdgeState::Bi => 'b',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fourientation {
    states: Vec<EdgeState>,
}

impl Fourientation {
    pub fn new(states: Vec<EdgeState>) -> Self {
        Fourientation { states }
    }

    pub fn filled(n: usize, state: EdgeState) -> Self {
        Fourientation {
            states: vec![state; n],
        }
    }

    pub fn states(&self) -> &[EdgeState] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn get(&self, edge: usize) -> EdgeState {
        self.states[edge]
    }

    pub fn set(&mut self, edge: usize, state: EdgeState) {
        self.states[edge] = state;
    }

    pub fn contains_arc(&self, arc: ArcId) -> bool {
        let s = self.states[arc.edge()];
        if arc.sign() > 0 {
            s.has_plus()
        } else {
            s.has_minus()
        }
    }

    pub fn negate(&self) -> Self {
        self.map(EdgeState::negate)
    }

    pub fn complement(&self) -> Self {
        self.map(EdgeState::complement)
    }

    /// `-F^c`: swaps Empty and Bi, keeps the one-way edges.
    pub fn minus_complement(&self) -> Self {
        self.complement().negate()
    }

    /// Edges outside `edges` become Empty.
    pub fn restrict(&self, edges: &[usize]) -> Self {
        let mut out = Fourientation::filled(self.len(), EdgeState::Empty);
        for &e in edges {
            out.states[e] = self.states[e];
        }
        out
    }

    pub fn intersect(&self, other: &Fourientation) -> Self {
        Fourientation {
            states: self
                .states
                .iter()
                .zip(&other.states)
                .map(|(a, b)| a.intersect(*b))
                .collect(),
        }
    }

    /// True when every arc of `v` is in the fourientation.
    pub fn contains_vector(&self, v: &SignedVector) -> bool {
        v.entries()
            .iter()
            .zip(&self.states)
            .all(|(&x, s)| match x {
                0 => true,
                1 => s.has_plus(),
                _ => s.has_minus(),
            })
    }

    pub fn one_way_edges(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&e| self.states[e].is_one_way())
            .collect()
    }

    pub fn to_orientation(&self) -> Option<Orientation> {
        self.states
            .iter()
            .map(|s| s.sign())
            .collect::<Option<Vec<_>>>()
            .map(Orientation::new)
    }

    fn map(&self, f: impl Fn(EdgeState) -> EdgeState) -> Self {
        Fourientation {
            states: self.states.iter().map(|&s| f(s)).collect(),
        }
    }
}

impl fmt::Display for Fourientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.states.iter().map(|s| s.symbol()).collect();
        f.write_str(&s)
    }
}

impl FromStr for Fourientation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let states = s
            .chars()
            .enumerate()
            .map(|(i, c)| match c {
                'o' => Ok(EdgeState::Empty),
                '+' => Ok(EdgeState::Plus),
                '-' => Ok(EdgeState::Minus),
                'b' => Ok(EdgeState::Bi),
                other => Err(Error::Parse {
                    line: 1,
                    column: i + 1,
                    message: format!("unexpected fourientation symbol {other:?}"),
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Fourientation::new(states))
    }
}

/// Every edge oriented one way; stored as signs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Orientation {
    signs: Vec<i8>,
}

impl Orientation {
    pub fn new(signs: Vec<i8>) -> Self {
        debug_assert!(signs.iter().all(|&s| s == 1 || s == -1));
        Orientation { signs }
    }

    pub fn all_plus(n: usize) -> Self {
        Orientation { signs: vec![1; n] }
    }

    /// Bit `e` of `mask` set means edge `e` is Minus.
    pub fn from_mask(mask: u64, n: usize) -> Self {
        Orientation {
            signs: (0..n)
                .map(|e| if mask >> e & 1 == 1 { -1 } else { 1 })
                .collect(),
        }
    }

    pub fn mask(&self) -> u64 {
        self.signs
            .iter()
            .enumerate()
            .filter(|(_, &s)| s < 0)
            .fold(0, |m, (e, _)| m | 1 << e)
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn get(&self, edge: usize) -> i8 {
        self.signs[edge]
    }

    pub fn contains_vector(&self, v: &SignedVector) -> bool {
        v.entries()
            .iter()
            .zip(&self.signs)
            .all(|(&x, &s)| x == 0 || x == s)
    }

    /// Reverses every edge in the support of `v`.
    pub fn reverse(&self, v: &SignedVector) -> Self {
        Orientation {
            signs: self
                .signs
                .iter()
                .zip(v.entries())
                .map(|(&s, &x)| if x != 0 { -s } else { s })
                .collect(),
        }
    }

    pub fn to_fourientation(&self) -> Fourientation {
        Fourientation::new(self.signs.iter().map(|&s| EdgeState::from_sign(s)).collect())
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self
            .signs
            .iter()
            .map(|&s| if s > 0 { '+' } else { '-' })
            .collect();
        f.write_str(&s)
    }
}

impl FromStr for Orientation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let signs = s
            .chars()
            .enumerate()
            .map(|(i, c)| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                other => Err(Error::Parse {
                    line: 1,
                    column: i + 1,
                    message: format!("unexpected orientation symbol {other:?}"),
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Orientation::new(signs))
    }
}

/// Signed circuits with all arcs in `f`.
pub fn potential_circuits(m: &RepresentedMatroid, f: &Fourientation) -> Vec<SignedVector> {
    m.signed_circuits()
        .iter()
        .filter(|c| f.contains_vector(c))
        .cloned()
        .collect()
}

/// Signed cocircuits with all arcs in `-F^c`.
pub fn potential_cocircuits(m: &RepresentedMatroid, f: &Fourientation) -> Vec<SignedVector> {
    let g = f.minus_complement();
    m.signed_cocircuits()
        .iter()
        .filter(|c| g.contains_vector(c))
        .cloned()
        .collect()
}

pub fn has_potential_circuit(m: &RepresentedMatroid, f: &Fourientation) -> bool {
    m.signed_circuits().iter().any(|c| f.contains_vector(c))
}

pub fn has_potential_cocircuit(m: &RepresentedMatroid, f: &Fourientation) -> bool {
    let g = f.minus_complement();
    m.signed_cocircuits().iter().any(|c| g.contains_vector(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use EdgeState::*;

    fn theta() -> RepresentedMatroid {
        RepresentedMatroid::from_matrix(vec![vec![-1, -1]]).unwrap()
    }

    fn triangle() -> RepresentedMatroid {
        let g = Graph::from_one_based(3, &[(1, 2), (2, 3), (3, 1)]).unwrap();
        RepresentedMatroid::from_graph(&g).unwrap()
    }

    #[test]
    fn algebra_examples() {
        let bi = Fourientation::filled(3, Bi);
        assert_eq!(bi.negate(), bi);
        assert_eq!(Fourientation::filled(3, Empty).minus_complement(), bi);
        let f = Fourientation::new(vec![Plus, Bi]);
        assert_eq!(f.complement(), Fourientation::new(vec![Minus, Empty]));
        assert_eq!(f.minus_complement(), Fourientation::new(vec![Plus, Empty]));
        assert_eq!(f.restrict(&[1]), Fourientation::new(vec![Empty, Bi]));
    }

    #[test]
    fn text_round_trip() {
        let f: Fourientation = "o+-b".parse().unwrap();
        assert_eq!(f.to_string(), "o+-b");
        let o: Orientation = "+-".parse().unwrap();
        assert_eq!(o.mask(), 0b10);
        assert_eq!(Orientation::from_mask(0b10, 2), o);
        assert!("+x".parse::<Orientation>().is_err());
    }

    #[test]
    fn potential_examples() {
        let m = triangle();
        assert_eq!(potential_circuits(&m, &Fourientation::filled(3, Bi)).len(), 2);
        let p = potential_circuits(&m, &Fourientation::filled(3, Plus));
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].entries(), &[1, 1, 1]);
        assert!(potential_circuits(&m, &Fourientation::filled(3, Empty)).is_empty());
        assert_eq!(
            potential_cocircuits(&m, &Fourientation::filled(3, Empty)).len(),
            m.signed_cocircuits().len()
        );
        assert!(potential_cocircuits(&m, &Fourientation::filled(3, Bi)).is_empty());
        let t = theta();
        assert!(potential_cocircuits(&t, &Fourientation::new(vec![Minus, Plus])).is_empty());
    }
}
