//! Regular matroids represented by totally unimodular matrices.
//!
//! Edges are indexed from 0 inside the library. Every text format and every
//! `Display` implementation shows them 1-based, matching the usual `e_1..e_n`
//! labelling.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use itertools::Itertools;
use num_traits::Zero;

use crate::classes::Projector;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{self, Rational};

/// Upper bound on `n` for the exhaustive total-unimodularity check.
pub const TU_CHECK_CAP: usize = 16;

/// An arc `e_i` (positive) or `e_{-i}` (negative) of edge `i`, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArcId(i32);

impl ArcId {
    pub fn new(value: i32, n: usize) -> Result<Self> {
        let edge = value.unsigned_abs() as usize;
        if value == 0 || edge > n {
            return Err(Error::EdgeOutOfRange { edge, n });
        }
        Ok(ArcId(value))
    }

    /// Arc on the 0-based `edge` with the given sign.
    pub fn from_edge(edge: usize, sign: i8) -> Self {
        let v = edge as i32 + 1;
        ArcId(if sign < 0 { -v } else { v })
    }

    pub fn value(self) -> i32 {
        self.0
    }

    /// 0-based edge index.
    pub fn edge(self) -> usize {
        self.0.unsigned_abs() as usize - 1
    }

    pub fn sign(self) -> i8 {
        if self.0 > 0 {
            1
        } else {
            -1
        }
    }

    pub fn reversed(self) -> Self {
        ArcId(-self.0)
    }
}

impl fmt::Display for ArcId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:+}", self.0)
    }
}

/// A basis as a sorted list of 0-based edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Basis(Vec<usize>);

impl Basis {
    pub fn new(mut edges: Vec<usize>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        Basis(edges)
    }

    pub fn edges(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, edge: usize) -> bool {
        self.0.binary_search(&edge).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn complement(&self, n: usize) -> Vec<usize> {
        (0..n).filter(|&e| !self.contains(e)).collect()
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|e| e + 1).collect()
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.iter().map(|e| e + 1).join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VectorKind {
    Circuit,
    Cocircuit,
    General,
}

/// A {-1, 0, +1} vector on the edges. Equality and order look at the
/// entries only; the kind is a tag.
#[derive(Debug, Clone)]
pub struct SignedVector {
    entries: Vec<i8>,
    kind: VectorKind,
}

impl PartialEq for SignedVector {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries
    }
}

impl Eq for SignedVector {}

impl std::hash::Hash for SignedVector {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.entries.hash(state);
    }
}

impl PartialOrd for SignedVector {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SignedVector {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.entries.cmp(&other.entries)
    }
}

impl SignedVector {
    pub fn new(entries: Vec<i8>, kind: VectorKind) -> Self {
        debug_assert!(entries.iter().all(|x| (-1..=1).contains(x)));
        SignedVector { entries, kind }
    }

    pub fn general(entries: Vec<i8>) -> Self {
        SignedVector::new(entries, VectorKind::General)
    }

    pub fn entries(&self) -> &[i8] {
        &self.entries
    }

    pub fn kind(&self) -> VectorKind {
        self.kind
    }

    pub fn with_kind(mut self, kind: VectorKind) -> Self {
        self.kind = kind;
        self
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, edge: usize) -> i8 {
        self.entries[edge]
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.entries.len())
            .filter(|&e| self.entries[e] != 0)
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn negated(&self) -> Self {
        SignedVector {
            entries: self.entries.iter().map(|x| -x).collect(),
            kind: self.kind,
        }
    }

    pub fn dot(&self, other: &SignedVector) -> i64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| a as i64 * b as i64)
            .sum()
    }

    pub fn dot_rational(&self, w: &[Rational]) -> Rational {
        self.entries
            .iter()
            .zip(w)
            .filter(|(&a, _)| a != 0)
            .map(|(&a, x)| if a > 0 { x.clone() } else { -x.clone() })
            .sum()
    }

    pub fn to_i64(&self) -> Vec<i64> {
        self.entries.iter().map(|&x| x as i64).collect()
    }

    /// Bit masks of the edges carrying +1 and -1.
    pub fn masks(&self) -> (u64, u64) {
        let mut plus = 0u64;
        let mut minus = 0u64;
        for (e, &x) in self.entries.iter().enumerate() {
            match x {
                1 => plus |= 1 << e,
                -1 => minus |= 1 << e,
                _ => {}
            }
        }
        (plus, minus)
    }

    /// Arc set of the vector.
    pub fn arcs(&self) -> Vec<ArcId> {
        self.support()
            .into_iter()
            .map(|e| ArcId::from_edge(e, self.entries[e]))
            .collect()
    }
}

impl fmt::Display for SignedVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.entries.iter().join(","))
    }
}

#[derive(Debug, Default)]
struct Cache {
    dual_matrix: OnceLock<Vec<Vec<i64>>>,
    bases: OnceLock<Vec<Basis>>,
    circuits: OnceLock<Vec<SignedVector>>,
    cocircuits: OnceLock<Vec<SignedVector>>,
    projector: OnceLock<Projector>,
}

impl Clone for Cache {
    fn clone(&self) -> Self {
        Cache::default()
    }
}

/// A regular matroid given by an `r x n` totally unimodular matrix of full
/// row rank.
#[derive(Debug, Clone)]
pub struct RepresentedMatroid {
    matrix: Vec<Vec<i64>>,
    n: usize,
    rank: usize,
    graph: Option<Graph>,
    edge_labels: Option<Vec<String>>,
    cache: Cache,
}

impl PartialEq for RepresentedMatroid {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix && self.n == other.n
    }
}

impl RepresentedMatroid {
    /// Oriented incidence matrix of a connected graph with the row of the
    /// highest-indexed vertex removed.
    pub fn from_graph(graph: &Graph) -> Result<Self> {
        if graph.edge_count() == 0 {
            return Err(Error::EmptyEdgeSet);
        }
        if !graph.is_connected() {
            return Err(Error::Disconnected);
        }
        if graph.vertex_count() < 2 {
            return Err(Error::RankZero);
        }
        let mut matrix = graph.incidence_matrix();
        matrix.pop();
        let rank = matrix.len();
        Ok(RepresentedMatroid {
            n: graph.edge_count(),
            rank,
            matrix,
            graph: Some(graph.clone()),
            edge_labels: None,
            cache: Cache::default(),
        })
    }

    /// Validates entries, full row rank and total unimodularity.
    pub fn from_matrix(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = validate_shape(&rows)?;
        if n > TU_CHECK_CAP {
            return Err(Error::TooLarge {
                what: "total unimodularity check",
                n,
                cap: TU_CHECK_CAP,
            });
        }
        let rank = linalg::rank(&rows);
        if rank < rows.len() {
            return Err(Error::RankDeficient {
                rows: rows.len(),
                rank,
            });
        }
        check_totally_unimodular(&rows)?;
        Ok(Self::from_trusted(rows, n))
    }

    /// Skips validation; the caller guarantees a full-rank TU matrix.
    pub(crate) fn from_trusted(matrix: Vec<Vec<i64>>, n: usize) -> Self {
        RepresentedMatroid {
            rank: matrix.len(),
            n,
            matrix,
            graph: None,
            edge_labels: None,
            cache: Cache::default(),
        }
    }

    pub fn with_edge_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: labels.len(),
            });
        }
        self.edge_labels = Some(labels);
        Ok(self)
    }

    pub fn edge_labels(&self) -> Option<&[String]> {
        self.edge_labels.as_deref()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn graph(&self) -> Option<&Graph> {
        self.graph.as_ref()
    }

    /// Rows spanning the kernel of the matrix; empty when `r = n`.
    ///
    /// Built from the lexicographically first basis `B`: after reducing to
    /// `[I | D]` on `B`, the rows are `[-D^T | I]` put back in edge order, so
    /// each row is a fundamental circuit of `B`.
    pub fn dual_matrix(&self) -> &[Vec<i64>] {
        self.cache.dual_matrix.get_or_init(|| {
            let basis = &self.bases()[0];
            basis
                .complement(self.n)
                .into_iter()
                .map(|e| self.fundamental_circuit_entries(basis, e))
                .collect()
        })
    }

    pub fn dual(&self) -> Result<RepresentedMatroid> {
        if self.rank == self.n {
            return Err(Error::DualRankZero);
        }
        Ok(RepresentedMatroid::from_trusted(
            self.dual_matrix().to_vec(),
            self.n,
        ))
    }

    pub fn loops(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&e| self.matrix.iter().all(|row| row[e] == 0))
            .collect()
    }

    pub fn coloops(&self) -> Vec<usize> {
        let dual = self.dual_matrix();
        (0..self.n)
            .filter(|&e| dual.iter().all(|row| row[e] == 0))
            .collect()
    }

    pub fn column_rank(&self, edges: &[usize]) -> usize {
        linalg::column_rank(&self.matrix, edges)
    }

    pub fn is_independent(&self, edges: &[usize]) -> bool {
        self.column_rank(edges) == edges.len()
    }

    pub fn is_spanning(&self, edges: &[usize]) -> bool {
        self.column_rank(edges) == self.rank
    }

    pub fn is_basis(&self, edges: &[usize]) -> bool {
        edges.len() == self.rank && self.is_independent(edges)
    }

    /// All bases in lexicographic order of their edge lists.
    pub fn bases(&self) -> &[Basis] {
        self.cache.bases.get_or_init(|| {
            (0..self.n)
                .combinations(self.rank)
                .filter(|c| self.is_independent(c))
                .map(Basis)
                .collect()
        })
    }

    pub fn signed_circuits(&self) -> &[SignedVector] {
        self.cache
            .circuits
            .get_or_init(|| signed_kernel_circuits(&self.matrix, self.n, VectorKind::Circuit))
    }

    /// Signed circuits of the dual representation.
    pub fn signed_cocircuits(&self) -> &[SignedVector] {
        self.cache.cocircuits.get_or_init(|| {
            signed_kernel_circuits(self.dual_matrix(), self.n, VectorKind::Cocircuit)
        })
    }

    pub(crate) fn projector(&self) -> &Projector {
        self.cache.projector.get_or_init(|| Projector::new(self))
    }

    pub fn in_kernel(&self, u: &[i64]) -> bool {
        u.len() == self.n && linalg::mat_vec(&self.matrix, u).iter().all(|&x| x == 0)
    }

    pub fn in_rowspace(&self, u: &[i64]) -> bool {
        u.len() == self.n && linalg::mat_vec(self.dual_matrix(), u).iter().all(|&x| x == 0)
    }

    fn check_basis(&self, b: &Basis) -> Result<()> {
        if b.edges().iter().any(|&e| e >= self.n) || !self.is_basis(b.edges()) {
            return Err(Error::NotABasis(b.clone()));
        }
        Ok(())
    }

    /// `B^{-1} M` with rows ordered like the basis edges.
    fn standard_form(&self, b: &Basis) -> Vec<Vec<i64>> {
        let mut order: Vec<usize> = b.edges().to_vec();
        order.extend(b.complement(self.n));
        let permuted: Vec<Vec<i64>> = self
            .matrix
            .iter()
            .map(|row| order.iter().map(|&c| row[c]).collect())
            .collect();
        let (reduced, pivots) = linalg::rref(linalg::to_rational(&permuted));
        debug_assert_eq!(pivots, (0..self.rank).collect::<Vec<_>>());
        reduced
            .iter()
            .map(|row| {
                let mut out = vec![0i64; self.n];
                for (k, &c) in order.iter().enumerate() {
                    out[c] = linalg::as_integer(&row[k]).expect("TU reduction is integral");
                }
                out
            })
            .collect()
    }

    fn fundamental_circuit_entries(&self, b: &Basis, e: usize) -> Vec<i64> {
        let form = self.standard_form(b);
        let mut v = vec![0i64; self.n];
        v[e] = 1;
        for (row, &be) in form.iter().zip(b.edges()) {
            v[be] = -row[e];
        }
        v
    }

    /// The signed circuit in `B + e` whose sign on `e` matches the arc.
    pub fn fundamental_circuit(&self, b: &Basis, arc: ArcId) -> Result<SignedVector> {
        let e = arc.edge();
        if e >= self.n {
            return Err(Error::EdgeOutOfRange {
                edge: e + 1,
                n: self.n,
            });
        }
        self.check_basis(b)?;
        if b.contains(e) {
            return Err(Error::EdgeInBasis {
                edge: e + 1,
                basis: b.clone(),
            });
        }
        let v = self.fundamental_circuit_entries(b, e);
        Ok(to_signed(&v, arc.sign(), VectorKind::Circuit))
    }

    /// The signed cocircuit in `(E - B) + e` whose sign on `e` matches the arc.
    pub fn fundamental_cocircuit(&self, b: &Basis, arc: ArcId) -> Result<SignedVector> {
        let e = arc.edge();
        if e >= self.n {
            return Err(Error::EdgeOutOfRange {
                edge: e + 1,
                n: self.n,
            });
        }
        self.check_basis(b)?;
        let Some(pos) = b.edges().iter().position(|&x| x == e) else {
            return Err(Error::EdgeNotInBasis {
                edge: e + 1,
                basis: b.clone(),
            });
        };
        let form = self.standard_form(b);
        Ok(to_signed(&form[pos], arc.sign(), VectorKind::Cocircuit))
    }

    /// Fundamental circuits of every external edge, each with `+1` on its edge.
    pub fn fundamental_circuits(&self, b: &Basis) -> Result<Vec<(usize, SignedVector)>> {
        self.check_basis(b)?;
        let form = self.standard_form(b);
        Ok(b.complement(self.n)
            .into_iter()
            .map(|e| {
                let mut v = vec![0i64; self.n];
                v[e] = 1;
                for (row, &be) in form.iter().zip(b.edges()) {
                    v[be] = -row[e];
                }
                (e, to_signed(&v, 1, VectorKind::Circuit))
            })
            .collect())
    }

    /// Fundamental cocircuits of every basis edge, each with `+1` on its edge.
    pub fn fundamental_cocircuits(&self, b: &Basis) -> Result<Vec<(usize, SignedVector)>> {
        self.check_basis(b)?;
        let form = self.standard_form(b);
        Ok(b.edges()
            .iter()
            .zip(&form)
            .map(|(&e, row)| (e, to_signed(row, 1, VectorKind::Cocircuit)))
            .collect())
    }

    /// Writes `u` (in the kernel or the row space) as a positive combination
    /// of conformal signed circuits or cocircuits.
    ///
    /// Greedy: repeatedly subtract the largest multiple of the first
    /// conformal (co)circuit that keeps the remainder conformal. For
    /// {0, ±1} inputs the components come out support-disjoint with
    /// coefficient 1.
    pub fn conformal_decompose(&self, u: &[i64]) -> Result<Vec<(i64, SignedVector)>> {
        if u.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: u.len(),
            });
        }
        let pool = if self.in_kernel(u) {
            self.signed_circuits()
        } else if self.in_rowspace(u) {
            self.signed_cocircuits()
        } else {
            return Err(Error::NotInSubspace);
        };
        let mut rest = u.to_vec();
        let mut out = Vec::new();
        while rest.iter().any(|&x| x != 0) {
            let c = pool
                .iter()
                .find(|c| is_conformal(c, &rest))
                .expect("conformal decomposition exists for subspace vectors");
            let k = c
                .support()
                .iter()
                .map(|&e| rest[e].abs())
                .min()
                .expect("circuits are nonempty");
            for e in c.support() {
                rest[e] -= k * c.get(e) as i64;
            }
            out.push((k, c.clone()));
        }
        Ok(out)
    }
}

/// True when `c`'s support lies in `u`'s support with matching signs.
pub fn is_conformal(c: &SignedVector, u: &[i64]) -> bool {
    c.entries().iter().zip(u).all(|(&x, &y)| match x {
        0 => true,
        1 => y > 0,
        _ => y < 0,
    })
}

fn to_signed(v: &[i64], sign_on_e: i8, kind: VectorKind) -> SignedVector {
    let s = sign_on_e as i64;
    SignedVector::new(v.iter().map(|&x| (x * s) as i8).collect(), kind)
}

fn validate_shape(rows: &[Vec<i64>]) -> Result<usize> {
    if rows.is_empty() {
        return Err(Error::RankZero);
    }
    let n = rows[0].len();
    if n == 0 {
        return Err(Error::EmptyEdgeSet);
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::RaggedMatrix);
        }
        for (j, &x) in row.iter().enumerate() {
            if !(-1..=1).contains(&x) {
                return Err(Error::InvalidEntry {
                    row: i + 1,
                    col: j + 1,
                    value: x,
                });
            }
        }
    }
    Ok(n)
}

/// Exhaustive check of every square submatrix, smallest first.
pub fn check_totally_unimodular(rows: &[Vec<i64>]) -> Result<()> {
    if rows.is_empty() {
        return Ok(());
    }
    let r = rows.len();
    let n = rows[0].len();
    for k in 1..=r.min(n) {
        for rs in (0..r).combinations(k) {
            for cs in (0..n).combinations(k) {
                let sub: Vec<Vec<i64>> = rs
                    .iter()
                    .map(|&i| cs.iter().map(|&j| rows[i][j]).collect())
                    .collect();
                let det = linalg::determinant(&sub);
                if det.abs() > 1 {
                    return Err(Error::NotTotallyUnimodular {
                        rows: rs.iter().map(|i| i + 1).collect(),
                        cols: cs.iter().map(|j| j + 1).collect(),
                        det,
                    });
                }
            }
        }
    }
    Ok(())
}

/// Signed {0, ±1} vectors of minimal support in the kernel of `matrix`.
///
/// Supports are scanned by increasing size then lexicographically; a support
/// `S` is a circuit iff its columns have rank `|S| - 1` and the (then
/// one-dimensional) kernel vector is nonzero on all of `S`. Each circuit
/// contributes the vector with positive first entry, then its negative.
pub(crate) fn signed_kernel_circuits(
    matrix: &[Vec<i64>],
    n: usize,
    kind: VectorKind,
) -> Vec<SignedVector> {
    let rank = if matrix.is_empty() {
        0
    } else {
        linalg::rank(matrix)
    };
    let mut out = Vec::new();
    let mut found: Vec<BTreeSet<usize>> = Vec::new();
    for size in 1..=(rank + 1).min(n) {
        for cols in (0..n).combinations(size) {
            if linalg::column_rank(matrix, &cols) != size - 1 {
                continue;
            }
            let set: BTreeSet<usize> = cols.iter().copied().collect();
            if found.iter().any(|f| f.is_subset(&set)) {
                continue;
            }
            let sub: Vec<Vec<i64>> = matrix
                .iter()
                .map(|row| cols.iter().map(|&c| row[c]).collect())
                .collect();
            let kernel = linalg::kernel_basis(&linalg::to_rational(&sub), size);
            debug_assert_eq!(kernel.len(), 1);
            let v = &kernel[0];
            if v.iter().any(|x| x.is_zero()) {
                continue;
            }
            let scale = v[0].clone();
            let mut entries = vec![0i8; n];
            for (k, &c) in cols.iter().enumerate() {
                let x = &v[k] / &scale;
                let s = linalg::as_integer(&x).expect("TU circuits have unit entries");
                entries[c] = s as i8;
            }
            let sv = SignedVector::new(entries, kind);
            out.push(sv.negated());
            out.push(sv);
            let last = out.len() - 1;
            out.swap(last - 1, last);
            found.push(set);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theta() -> RepresentedMatroid {
        RepresentedMatroid::from_matrix(vec![vec![-1, -1]]).unwrap()
    }

    fn triangle() -> RepresentedMatroid {
        let g = Graph::from_one_based(3, &[(1, 2), (2, 3), (3, 1)]).unwrap();
        RepresentedMatroid::from_graph(&g).unwrap()
    }

    #[test]
    fn theta_graph_matrix() {
        let g = Graph::from_one_based(2, &[(1, 2), (1, 2)]).unwrap();
        let m = RepresentedMatroid::from_graph(&g).unwrap();
        assert_eq!(m.matrix(), &[vec![-1, -1]]);
        let g = Graph::from_one_based(2, &[(1, 2)]).unwrap();
        let m = RepresentedMatroid::from_graph(&g).unwrap();
        assert_eq!(m.matrix(), &[vec![-1]]);
    }

    #[test]
    fn triangle_kernel() {
        let m = triangle();
        assert_eq!(m.rank(), 2);
        assert!(m.in_kernel(&[1, 1, 1]));
        let c: Vec<_> = m.signed_circuits().iter().map(|c| c.to_i64()).collect();
        assert_eq!(c, vec![vec![1, 1, 1], vec![-1, -1, -1]]);
    }

    #[test]
    fn graph_errors() {
        let g = Graph::from_one_based(3, &[(1, 2)]).unwrap();
        assert!(matches!(
            RepresentedMatroid::from_graph(&g),
            Err(Error::Disconnected)
        ));
        let g = Graph::from_one_based(2, &[]).unwrap();
        assert!(matches!(
            RepresentedMatroid::from_graph(&g),
            Err(Error::EmptyEdgeSet)
        ));
    }

    #[test]
    fn non_tu_matrix_reports_witness() {
        let err = RepresentedMatroid::from_matrix(vec![vec![1, 1], vec![1, -1]]).unwrap_err();
        match err {
            Error::NotTotallyUnimodular { rows, cols, det } => {
                assert_eq!(rows, vec![1, 2]);
                assert_eq!(cols, vec![1, 2]);
                assert_eq!(det, -2);
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn rank_deficient_matrix() {
        let err = RepresentedMatroid::from_matrix(vec![vec![1, 0], vec![1, 0]]).unwrap_err();
        assert!(matches!(err, Error::RankDeficient { rows: 2, rank: 1 }));
    }

    #[test]
    fn identity_is_free_matroid() {
        let m = RepresentedMatroid::from_matrix(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]])
            .unwrap();
        assert_eq!(m.bases().len(), 1);
        assert!(m.signed_circuits().is_empty());
        assert_eq!(m.coloops(), vec![0, 1, 2]);
        assert_eq!(m.signed_cocircuits().len(), 6);
        assert!(matches!(m.dual(), Err(Error::DualRankZero)));
    }

    #[test]
    fn theta_dual() {
        let m = theta();
        let d = m.dual().unwrap();
        assert_eq!(d.matrix(), &[vec![-1, 1]]);
        let co: Vec<_> = m.signed_cocircuits().iter().map(|c| c.to_i64()).collect();
        assert_eq!(co, vec![vec![1, 1], vec![-1, -1]]);
        let circ: Vec<_> = m.signed_circuits().iter().map(|c| c.to_i64()).collect();
        assert_eq!(circ, vec![vec![1, -1], vec![-1, 1]]);
    }

    #[test]
    fn triangle_dual_spans_kernel() {
        let m = triangle();
        let d = m.dual().unwrap();
        assert_eq!(d.rank(), 1);
        let row = &d.matrix()[0];
        assert!(m.in_kernel(row));
        assert!(row.iter().all(|x| x.abs() == 1));
    }

    #[test]
    fn fundamental_circuits_and_errors() {
        let m = triangle();
        let b = Basis::new(vec![0, 1]);
        let c = m.fundamental_circuit(&b, ArcId::new(3, 3).unwrap()).unwrap();
        assert_eq!(c.to_i64(), vec![1, 1, 1]);
        let m = theta();
        let b = Basis::new(vec![0]);
        let c = m.fundamental_circuit(&b, ArcId::new(2, 2).unwrap()).unwrap();
        assert_eq!(c.to_i64(), vec![-1, 1]);
        assert!(matches!(
            m.fundamental_circuit(&b, ArcId::new(1, 2).unwrap()),
            Err(Error::EdgeInBasis { edge: 1, .. })
        ));
        let cc = m
            .fundamental_cocircuit(&b, ArcId::new(-1, 2).unwrap())
            .unwrap();
        assert_eq!(cc.to_i64(), vec![-1, -1]);
        assert!(matches!(
            m.fundamental_cocircuit(&b, ArcId::new(2, 2).unwrap()),
            Err(Error::EdgeNotInBasis { edge: 2, .. })
        ));
    }

    #[test]
    fn loop_is_one_edge_circuit() {
        let g = Graph::from_one_based(2, &[(1, 2), (2, 2)]).unwrap();
        let m = RepresentedMatroid::from_graph(&g).unwrap();
        assert_eq!(m.loops(), vec![1]);
        let c: Vec<_> = m.signed_circuits().iter().map(|c| c.to_i64()).collect();
        assert_eq!(c, vec![vec![0, 1], vec![0, -1]]);
    }

    #[test]
    fn conformal_cases() {
        let m = triangle();
        let d = m.conformal_decompose(&[1, 1, 1]).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].0, 1);
        assert!(m.conformal_decompose(&[0, 0, 0]).unwrap().is_empty());
        assert!(matches!(
            m.conformal_decompose(&[1, 0, 0]),
            Err(Error::NotInSubspace)
        ));
        let d = m.conformal_decompose(&[3, 3, 3]).unwrap();
        assert_eq!(d, vec![(3, m.signed_circuits()[0].clone())]);
    }

    #[test]
    fn basis_display_is_one_based() {
        assert_eq!(Basis::new(vec![2, 0]).to_string(), "{1,3}");
        assert_eq!(ArcId::new(-2, 3).unwrap().to_string(), "-2");
    }
}
