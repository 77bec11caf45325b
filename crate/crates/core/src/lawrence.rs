//! Lawrence matrices and polytopes.
//!
//! The Lawrence matrix of an `r x n` matrix `W` is `[[W, 0], [I, I]]`.
//! Column `i` is the vertex `P_{+i}` and column `n + i` is `P_{-i}`; a
//! vertex `P_{±i}` corresponds to the arc `e_{±i}`. The primal polytope uses
//! `M` and encodes external oriented bases; the dual one uses `M*` and
//! encodes internal oriented bases of `M`.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::atlas::{self, Atlas, OrientedBasis, Polarity};
use crate::error::{Error, Result};
use crate::fourientation::{self, EdgeState, Fourientation};
use crate::linalg::{self, Rational};
use crate::lp::{self, LpResult};
use crate::matroid::{ArcId, Basis, RepresentedMatroid};
use crate::signature::{self, SignaturePolarity};

/// Upper bound on `n + r` for the geometric oracle.
pub const GEOMETRY_CAP: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Primal,
    Dual,
}

/// A vertex `P_{±i}`, identified with the arc `e_{±i}`.
pub type VertexId = ArcId;

/// A set of vertices, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MaximalSimplex(Vec<VertexId>);

impl MaximalSimplex {
    pub fn new(mut vertices: Vec<VertexId>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        MaximalSimplex(vertices)
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Fourientation holding exactly the arcs of the vertices.
    pub fn fourientation(&self, n: usize) -> Fourientation {
        let mut f = Fourientation::filled(n, EdgeState::Empty);
        for v in &self.0 {
            let e = v.edge();
            let s = f.get(e);
            let plus = s.has_plus() || v.sign() > 0;
            let minus = s.has_minus() || v.sign() < 0;
            f.set(
                e,
                match (plus, minus) {
                    (true, true) => EdgeState::Bi,
                    (true, false) => EdgeState::Plus,
                    (false, true) => EdgeState::Minus,
                    (false, false) => EdgeState::Empty,
                },
            );
        }
        f
    }

    /// The simplex whose vertices are the arcs of `f`.
    pub fn from_fourientation(f: &Fourientation) -> Self {
        let mut vs = Vec::new();
        for (e, &s) in f.states().iter().enumerate() {
            if s.has_plus() {
                vs.push(ArcId::from_edge(e, 1));
            }
            if s.has_minus() {
                vs.push(ArcId::from_edge(e, -1));
            }
        }
        MaximalSimplex::new(vs)
    }
}

impl fmt::Display for MaximalSimplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.iter().map(|v| format!("P{}", v.value())).join(","))
    }
}

#[derive(Debug, Clone)]
pub struct LawrenceModel {
    base: RepresentedMatroid,
    /// `M` on the primal side, `M*` on the dual side.
    working: RepresentedMatroid,
    side: Side,
    matrix: Vec<Vec<i64>>,
}

pub fn build_lawrence(m: &RepresentedMatroid, side: Side) -> Result<LawrenceModel> {
    let working = match side {
        Side::Primal => {
            if let Some(&e) = m.loops().first() {
                return Err(Error::LoopInLawrence { edge: e + 1 });
            }
            m.clone()
        }
        Side::Dual => {
            if let Some(&e) = m.coloops().first() {
                return Err(Error::ColoopInLawrence { edge: e + 1 });
            }
            m.dual()?
        }
    };
    let n = m.n();
    let r = working.rank();
    let mut matrix = vec![vec![0i64; 2 * n]; n + r];
    for (i, row) in working.matrix().iter().enumerate() {
        matrix[i][..n].copy_from_slice(row);
    }
    for e in 0..n {
        matrix[r + e][e] = 1;
        matrix[r + e][n + e] = 1;
    }
    Ok(LawrenceModel {
        base: m.clone(),
        working,
        side,
        matrix,
    })
}

/// `sqrt(sqrt_arg) / denominator`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymbolicVolume {
    pub multiplier: u128,
    pub sqrt_arg: u64,
    pub denominator: u128,
}

impl fmt::Display for SymbolicVolume {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = gcd(self.multiplier, self.denominator);
        let (num, den) = (self.multiplier / g, self.denominator / g);
        let root = if self.sqrt_arg == 1 {
            String::new()
        } else {
            format!("√{}", self.sqrt_arg)
        };
        let head = match (num, root.is_empty()) {
            (1, false) => root,
            (k, true) => k.to_string(),
            (k, false) => format!("{k}{root}"),
        };
        if den == 1 {
            f.write_str(&head)
        } else {
            write!(f, "{head}/{den}")
        }
    }
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilyClass {
    pub dissection: bool,
    pub triangulation: bool,
}

/// Result of the direct geometric comparison of two simplices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeometricVerdict {
    pub interiors_intersect: bool,
    pub common_face: bool,
}

impl LawrenceModel {
    pub fn base(&self) -> &RepresentedMatroid {
        &self.base
    }

    pub fn working(&self) -> &RepresentedMatroid {
        &self.working
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    /// Rows of the Lawrence matrix, `n + r` (with `r` of the working side).
    pub fn dimension(&self) -> usize {
        self.matrix.len()
    }

    pub fn vertex_count(&self) -> usize {
        2 * self.n()
    }

    pub fn column_index(&self, v: VertexId) -> usize {
        if v.sign() > 0 {
            v.edge()
        } else {
            self.n() + v.edge()
        }
    }

    pub fn vertex(&self, v: VertexId) -> Vec<i64> {
        let c = self.column_index(v);
        self.matrix.iter().map(|row| row[c]).collect()
    }

    pub fn all_vertices(&self) -> Vec<VertexId> {
        (0..self.n())
            .flat_map(|e| [ArcId::from_edge(e, 1), ArcId::from_edge(e, -1)])
            .collect()
    }

    fn check_vertices(&self, s: &MaximalSimplex) -> Result<()> {
        if let Some(v) = s.vertices().iter().find(|v| v.edge() >= self.n()) {
            return Err(Error::EdgeOutOfRange {
                edge: v.edge() + 1,
                n: self.n(),
            });
        }
        Ok(())
    }

    /// `n + r` vertices with linearly independent columns.
    pub fn is_maximal_simplex(&self, s: &MaximalSimplex) -> bool {
        if s.len() != self.dimension() || self.check_vertices(s).is_err() {
            return false;
        }
        let cols: Vec<usize> = s.vertices().iter().map(|&v| self.column_index(v)).collect();
        linalg::column_rank(&self.matrix, &cols) == cols.len()
    }

    /// Maximal simplices among all `(n + r)`-subsets of vertices, by rank.
    pub fn enumerate_maximal_simplices(&self) -> Vec<MaximalSimplex> {
        self.all_vertices()
            .into_iter()
            .combinations(self.dimension())
            .map(MaximalSimplex::new)
            .filter(|s| self.is_maximal_simplex(s))
            .collect()
    }

    /// The oriented basis encoded by a maximal simplex.
    pub fn chi_simplex(&self, s: &MaximalSimplex) -> Result<OrientedBasis> {
        if !self.is_maximal_simplex(s) {
            return Err(Error::NotASimplex(s.to_string()));
        }
        let f = s.fourientation(self.n());
        let bi: Vec<usize> = (0..self.n()).filter(|&e| f.get(e) == EdgeState::Bi).collect();
        let (basis, polarity) = match self.side {
            Side::Primal => (Basis::new(bi), Polarity::External),
            Side::Dual => (Basis::new(f.one_way_edges()), Polarity::Internal),
        };
        if !self.base.is_basis(basis.edges()) {
            return Err(Error::NotASimplex(format!("{s} does not encode a basis")));
        }
        OrientedBasis::new(basis, f, polarity)
    }

    pub fn chi_atlas(&self, family: &[MaximalSimplex]) -> Result<Atlas> {
        let mut entries = Vec::with_capacity(family.len());
        for s in family {
            let ob = self.chi_simplex(s)?;
            entries.push((ob.basis, ob.fourientation));
        }
        Atlas::new(&self.base, self.atlas_polarity(), entries)
    }

    pub fn atlas_polarity(&self) -> Polarity {
        match self.side {
            Side::Primal => Polarity::External,
            Side::Dual => Polarity::Internal,
        }
    }

    /// The simplices of an atlas of the matching polarity.
    pub fn simplices_of_atlas(&self, a: &Atlas) -> Result<Vec<MaximalSimplex>> {
        a.expect_polarity(self.atlas_polarity())?;
        Ok(a.iter()
            .map(|(_, f)| MaximalSimplex::from_fourientation(f))
            .collect())
    }

    /// `B1 ∩ -B2` read as fourientations of the working matroid.
    fn pair_fourientation(&self, s1: &MaximalSimplex, s2: &MaximalSimplex) -> Result<Fourientation> {
        for s in [s1, s2] {
            if !self.is_maximal_simplex(s) {
                return Err(Error::NotASimplex(s.to_string()));
            }
        }
        let f1 = s1.fourientation(self.n());
        let f2 = s2.fourientation(self.n());
        Ok(atlas::pair_fourientation(Polarity::External, &f1, &f2))
    }

    /// Interiors are disjoint iff `B1 ∩ -B2` has a potential cocircuit.
    pub fn interiors_disjoint(&self, s1: &MaximalSimplex, s2: &MaximalSimplex) -> Result<bool> {
        if s1 == s2 {
            return Ok(false);
        }
        let f = self.pair_fourientation(s1, s2)?;
        Ok(fourientation::has_potential_cocircuit(&self.working, &f))
    }

    /// The simplices meet in a common face iff `B1 ∩ -B2` has no potential
    /// circuit.
    pub fn common_face(&self, s1: &MaximalSimplex, s2: &MaximalSimplex) -> Result<bool> {
        if s1 == s2 {
            return Ok(true);
        }
        let f = self.pair_fourientation(s1, s2)?;
        Ok(!fourientation::has_potential_circuit(&self.working, &f))
    }

    /// Dissection/triangulation by the combinatorial criteria; coverage is
    /// implied by having one simplex per basis, all of equal volume.
    pub fn classify_family(&self, family: &[MaximalSimplex]) -> FamilyClass {
        let none = FamilyClass {
            dissection: false,
            triangulation: false,
        };
        if family.iter().any(|s| !self.is_maximal_simplex(s)) || !family.iter().all_unique() {
            return none;
        }
        let Ok(a) = self.chi_atlas(family) else {
            return none;
        };
        let working_atlas = self.working_atlas(&a);
        FamilyClass {
            dissection: atlas::is_dissecting(&self.working, &working_atlas),
            triangulation: atlas::is_triangulating(&self.working, &working_atlas),
        }
    }

    /// The same oriented bases as an external atlas of the working matroid.
    fn working_atlas(&self, a: &Atlas) -> Atlas {
        match self.side {
            Side::Primal => a.clone(),
            Side::Dual => Atlas::new(
                &self.working,
                Polarity::External,
                a.iter()
                    .map(|(b, f)| (Basis::new(b.complement(self.n())), f.clone())),
            )
            .expect("complements of bases are bases of the dual"),
        }
    }

    pub fn simplex_volume(&self) -> SymbolicVolume {
        let d = self.dimension() - 1;
        SymbolicVolume {
            multiplier: 1,
            sqrt_arg: self.n() as u64,
            denominator: (1..=d as u128).product(),
        }
    }

    /// `|bases|` times the simplex volume.
    pub fn polytope_volume(&self) -> SymbolicVolume {
        SymbolicVolume {
            multiplier: self.base.bases().len() as u128,
            ..self.simplex_volume()
        }
    }

    /// Regular triangulation for heights `h`, via the signature chosen by
    /// `-w` with `w_i = h(+i) - h(-i)`.
    pub fn regular_triangulation_from_heights(&self, h: &Heights) -> Result<Atlas> {
        let w = h.differences(self.n())?;
        let minus_w: Vec<Rational> = w.iter().map(|x| -x.clone()).collect();
        let polarity = match self.side {
            Side::Primal => SignaturePolarity::Circuit,
            Side::Dual => SignaturePolarity::Cocircuit,
        };
        let sigma = signature::acyclic_signature_from_weights(&self.base, &minus_w, polarity)?;
        signature::atlas_from_signature(&self.base, &sigma)
    }

    /// Lower simplices of the lifted point set, found directly: a maximal
    /// simplex is a cell iff the affine interpolation of its heights lies
    /// strictly below every other lifted vertex.
    pub fn regular_triangulation_geometric(&self, h: &Heights) -> Result<Vec<MaximalSimplex>> {
        let heights: Vec<Rational> = self
            .all_vertices()
            .iter()
            .map(|&v| h.get(v))
            .collect::<Result<_>>()?;
        let all = self.all_vertices();
        let mut cells = Vec::new();
        for s in self.enumerate_maximal_simplices() {
            let cols: Vec<Vec<i64>> = s.vertices().iter().map(|&v| self.vertex(v)).collect();
            let n_mat = linalg::to_rational(&linalg::transpose(&cols, self.dimension()));
            let inv = linalg::inverse(&n_mat).expect("maximal simplices are nonsingular");
            let hs: Vec<Rational> = s
                .vertices()
                .iter()
                .map(|&v| heights[self.vertex_position(v)].clone())
                .collect();
            let mut lower = true;
            for (k, &v) in all.iter().enumerate() {
                if s.vertices().contains(&v) {
                    continue;
                }
                let p: Vec<Rational> = self.vertex(v).into_iter().map(linalg::rational).collect();
                let lambda: Vec<Rational> = inv
                    .iter()
                    .map(|row| row.iter().zip(&p).map(|(a, b)| a * b).sum())
                    .collect();
                let interp: Rational = lambda.iter().zip(&hs).map(|(a, b)| a * b).sum();
                if heights[k] == interp {
                    return Err(Error::NonGenericHeights(format!(
                        "P{} lies on the lifted hyperplane of {s}",
                        v.value()
                    )));
                }
                if heights[k] < interp {
                    lower = false;
                    break;
                }
            }
            if lower {
                cells.push(s);
            }
        }
        Ok(cells)
    }

    fn vertex_position(&self, v: VertexId) -> usize {
        2 * v.edge() + usize::from(v.sign() < 0)
    }

    /// Exact check by linear programming: whether the relative interiors of
    /// the two simplices meet, and whether they intersect in a common face.
    pub fn geometric_oracle(&self, s1: &MaximalSimplex, s2: &MaximalSimplex) -> Result<GeometricVerdict> {
        if self.dimension() > GEOMETRY_CAP {
            return Err(Error::TooLarge {
                what: "geometric oracle",
                n: self.dimension(),
                cap: GEOMETRY_CAP,
            });
        }
        self.check_vertices(s1)?;
        self.check_vertices(s2)?;
        let interiors_intersect = self.relative_interiors_meet(s1.vertices(), s2.vertices());
        let common_face = self.meet_in_common_face(s1.vertices(), s2.vertices());
        Ok(GeometricVerdict {
            interiors_intersect,
            common_face,
        })
    }

    /// Maximize `t` with all barycentric coefficients at least `t`, written
    /// as `lambda = lambda' + t`, `mu = mu' + t` with everything nonnegative.
    pub fn relative_interiors_meet(&self, a: &[VertexId], b: &[VertexId]) -> bool {
        if a.is_empty() || b.is_empty() {
            return false;
        }
        let k1 = a.len();
        let k2 = b.len();
        let t = k1 + k2;
        let cols = t + 1;
        let pa: Vec<Vec<i64>> = a.iter().map(|&v| self.vertex(v)).collect();
        let pb: Vec<Vec<i64>> = b.iter().map(|&v| self.vertex(v)).collect();
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        let mut sum_a = vec![Rational::zero(); cols];
        for x in sum_a.iter_mut().take(k1) {
            *x = Rational::one();
        }
        sum_a[t] = linalg::rational(k1 as i64);
        rows.push(sum_a);
        rhs.push(Rational::one());
        let mut sum_b = vec![Rational::zero(); cols];
        for x in sum_b.iter_mut().skip(k1).take(k2) {
            *x = Rational::one();
        }
        sum_b[t] = linalg::rational(k2 as i64);
        rows.push(sum_b);
        rhs.push(Rational::one());
        for coord in 0..self.dimension() {
            let mut row = vec![Rational::zero(); cols];
            let mut tcoef = 0i64;
            for (i, p) in pa.iter().enumerate() {
                row[i] = linalg::rational(p[coord]);
                tcoef += p[coord];
            }
            for (j, p) in pb.iter().enumerate() {
                row[k1 + j] = linalg::rational(-p[coord]);
                tcoef -= p[coord];
            }
            row[t] = linalg::rational(tcoef);
            rows.push(row);
            rhs.push(Rational::zero());
        }
        let mut c = vec![Rational::zero(); cols];
        c[t] = Rational::one();
        match lp::maximize(&rows, &rhs, &c) {
            LpResult::Optimal { value, .. } => value.is_positive(),
            LpResult::Infeasible => false,
            LpResult::Unbounded => unreachable!("barycentric coefficients are bounded"),
        }
    }

    /// Every pair of faces with meeting relative interiors coincides.
    ///
    /// Faces whose vertices cover different edge sets are skipped: the last
    /// `n` coordinates of a relative-interior point are positive exactly on
    /// the edges the face touches.
    pub fn meet_in_common_face(&self, a: &[VertexId], b: &[VertexId]) -> bool {
        let edges = |f: &[VertexId]| -> u64 { f.iter().fold(0, |m, v| m | 1 << v.edge()) };
        let faces = |s: &[VertexId]| -> Vec<Vec<VertexId>> {
            (1..=s.len())
                .flat_map(|k| s.iter().copied().combinations(k))
                .collect()
        };
        let fa = faces(a);
        let fb = faces(b);
        let mut by_edges: BTreeMap<u64, Vec<&Vec<VertexId>>> = BTreeMap::new();
        for f in &fb {
            by_edges.entry(edges(f)).or_default().push(f);
        }
        fa.par_iter().all(|f1| {
            by_edges.get(&edges(f1)).is_none_or(|cands| {
                cands
                    .iter()
                    .all(|f2| f1 == *f2 || !self.relative_interiors_meet(f1, f2))
            })
        })
    }

    /// Whether the point lies in the simplex (barycentric coordinates).
    pub fn simplex_contains(&self, s: &MaximalSimplex, x: &[Rational]) -> Result<bool> {
        if !self.is_maximal_simplex(s) {
            return Err(Error::NotASimplex(s.to_string()));
        }
        let cols: Vec<Vec<i64>> = s.vertices().iter().map(|&v| self.vertex(v)).collect();
        let n_mat = linalg::to_rational(&linalg::transpose(&cols, self.dimension()));
        let lambda = linalg::solve(&n_mat, x).expect("maximal simplices are nonsingular");
        Ok(lambda.iter().all(|l| !l.is_negative()))
    }

    /// Barycenter of a vertex set.
    pub fn barycenter(&self, s: &MaximalSimplex) -> Vec<Rational> {
        let k = linalg::rational(s.len() as i64);
        (0..self.dimension())
            .map(|coord| {
                let sum: i64 = s.vertices().iter().map(|&v| self.vertex(v)[coord]).sum();
                linalg::rational(sum) / &k
            })
            .collect()
    }

    /// Squared volume times `(d!)^2`: the Gram determinant of the edge
    /// vectors `v_i - v_0` of the simplex.
    pub fn gram_determinant(&self, s: &MaximalSimplex) -> Result<Rational> {
        if !self.is_maximal_simplex(s) {
            return Err(Error::NotASimplex(s.to_string()));
        }
        let pts: Vec<Vec<i64>> = s.vertices().iter().map(|&v| self.vertex(v)).collect();
        let diffs: Vec<Vec<i64>> = pts[1..]
            .iter()
            .map(|p| p.iter().zip(&pts[0]).map(|(a, b)| a - b).collect())
            .collect();
        let gram: Vec<Vec<i64>> = diffs
            .iter()
            .map(|u| {
                diffs
                    .iter()
                    .map(|v| u.iter().zip(v).map(|(a, b)| a * b).sum())
                    .collect()
            })
            .collect();
        Ok(linalg::rational(linalg::determinant(&gram) as i64))
    }
}

/// Heights of the vertices `P_{±i}`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Heights(BTreeMap<i32, Rational>);

impl Heights {
    pub fn new() -> Self {
        Heights::default()
    }

    pub fn insert(&mut self, v: VertexId, h: Rational) {
        self.0.insert(v.value(), h);
    }

    /// From values ordered `h(+1), h(-1), h(+2), h(-2), ...`.
    pub fn from_interleaved(values: &[Rational]) -> Self {
        let mut h = Heights::new();
        for (k, x) in values.iter().enumerate() {
            let e = k / 2;
            let sign = if k % 2 == 0 { 1 } else { -1 };
            h.insert(ArcId::from_edge(e, sign), x.clone());
        }
        h
    }

    pub fn get(&self, v: VertexId) -> Result<Rational> {
        self.0
            .get(&v.value())
            .cloned()
            .ok_or_else(|| Error::NonGenericHeights(format!("no height for P{}", v.value())))
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, &Rational)> {
        self.0.iter().map(|(&k, v)| (k, v))
    }

    /// `w_i = h(+i) - h(-i)`.
    pub fn differences(&self, n: usize) -> Result<Vec<Rational>> {
        (0..n)
            .map(|e| Ok(self.get(ArcId::from_edge(e, 1))? - self.get(ArcId::from_edge(e, -1))?))
            .collect()
    }
}
