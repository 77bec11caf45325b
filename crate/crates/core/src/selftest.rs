//! Invariant checks over catalog entries.
//!
//! Every check returns `Err(witness)` on failure so that a report can name
//! the smallest offending object it found.

use std::collections::BTreeSet;
use std::fmt;
use std::time::Instant;

use itertools::Itertools;

use crate::atlas;
use crate::bijection;
use crate::catalog::{self, CatalogEntry};
use crate::classes::{self, ClassIndex, ReversalKind};
use crate::fourientation::{self, EdgeState, Fourientation, Orientation};
use crate::lawrence::{build_lawrence, MaximalSimplex, Side};
use crate::linalg::{self, Rational};
use crate::matroid::{ArcId, RepresentedMatroid, SignedVector};
use crate::ribbon;
use crate::signature::{self, Signature, SignaturePolarity};

pub type Check = std::result::Result<(), String>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    Quick,
    Full,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(String),
    Skip(String),
}

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub entry: String,
    pub check: &'static str,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub results: Vec<CheckResult>,
    pub seconds: f64,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results
            .iter()
            .filter(|r| matches!(r.outcome, Outcome::Fail(_)))
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            match &r.outcome {
                Outcome::Pass => writeln!(f, "PASS {} / {}", r.entry, r.check)?,
                Outcome::Skip(why) => writeln!(f, "SKIP {} / {}: {why}", r.entry, r.check)?,
                Outcome::Fail(w) => writeln!(f, "FAIL {} / {}: {w}", r.entry, r.check)?,
            }
        }
        let fails = self.failures().count();
        writeln!(
            f,
            "{} checks, {} failed, {:.2}s",
            self.results.len(),
            fails,
            self.seconds
        )
    }
}

/// Weights `±base^e`, nonzero on every nonzero {0, ±1} vector when
/// `base >= 3` (or `base = 2` with no alternation).
pub fn power_weights(n: usize, base: i64, alternate: bool) -> Vec<Rational> {
    (0..n)
        .map(|e| {
            let x = linalg::rational(base.pow(e as u32));
            if alternate && e % 2 == 1 {
                -x
            } else {
                x
            }
        })
        .collect()
}

pub fn check_orthogonality(m: &RepresentedMatroid) -> Check {
    for c in m.signed_circuits() {
        for d in m.signed_cocircuits() {
            if c.dot(d) != 0 {
                return Err(format!("{c} . {d} = {}", c.dot(d)));
            }
            let meet: Vec<usize> = c.support().into_iter().filter(|&e| d.get(e) != 0).collect();
            if meet.is_empty() {
                continue;
            }
            let agree = meet.iter().any(|&e| c.get(e) == d.get(e));
            let disagree = meet.iter().any(|&e| c.get(e) != d.get(e));
            if !(agree && disagree) {
                return Err(format!("{c} and {d} lack an agreeing and a disagreeing edge"));
            }
        }
    }
    Ok(())
}

fn add_into(acc: &mut [i64], v: &SignedVector) {
    for (a, &x) in acc.iter_mut().zip(v.entries()) {
        *a += x as i64;
    }
}

pub fn check_fundamental_decomposition(m: &RepresentedMatroid) -> Check {
    for b in m.bases() {
        for c in m.signed_circuits() {
            let mut acc = vec![0i64; m.n()];
            for e in c.support().into_iter().filter(|&e| !b.contains(e)) {
                let f = m
                    .fundamental_circuit(b, ArcId::from_edge(e, c.get(e)))
                    .map_err(|e| e.to_string())?;
                add_into(&mut acc, &f);
            }
            if acc != c.to_i64() {
                return Err(format!("circuit {c} at basis {b}: sum is {acc:?}"));
            }
        }
        for d in m.signed_cocircuits() {
            let mut acc = vec![0i64; m.n()];
            for e in d.support().into_iter().filter(|&e| b.contains(e)) {
                let f = m
                    .fundamental_cocircuit(b, ArcId::from_edge(e, d.get(e)))
                    .map_err(|e| e.to_string())?;
                add_into(&mut acc, &f);
            }
            if acc != d.to_i64() {
                return Err(format!("cocircuit {d} at basis {b}: sum is {acc:?}"));
            }
        }
    }
    Ok(())
}

pub fn check_duality(m: &RepresentedMatroid) -> Check {
    if m.rank() == m.n() {
        return Ok(());
    }
    let dual = m.dual().map_err(|e| e.to_string())?;
    let a: BTreeSet<&[i8]> = dual.signed_circuits().iter().map(|c| c.entries()).collect();
    let b: BTreeSet<&[i8]> = m.signed_cocircuits().iter().map(|c| c.entries()).collect();
    if a != b {
        let extra = a.symmetric_difference(&b).next().map(|v| format!("{v:?}"));
        return Err(format!("dual circuits differ from cocircuits at {extra:?}"));
    }
    if dual.bases().len() != m.bases().len() {
        return Err("dual has a different number of bases".into());
    }
    Ok(())
}

/// Bases against the reduced Laplacian determinant.
pub fn check_matrix_tree(m: &RepresentedMatroid) -> Check {
    let Some(g) = m.graph() else {
        return Ok(());
    };
    let nv = g.vertex_count();
    let mut lap = vec![vec![0i64; nv]; nv];
    for &(a, b) in g.edges() {
        if a != b {
            lap[a][a] += 1;
            lap[b][b] += 1;
            lap[a][b] -= 1;
            lap[b][a] -= 1;
        }
    }
    let reduced: Vec<Vec<i64>> = lap[..nv - 1].iter().map(|r| r[..nv - 1].to_vec()).collect();
    let det = if reduced.is_empty() {
        1
    } else {
        linalg::determinant(&reduced)
    };
    if det != m.bases().len() as i128 {
        return Err(format!("{} bases, Laplacian minor {det}", m.bases().len()));
    }
    Ok(())
}

pub fn check_circuits_fundamental(m: &RepresentedMatroid) -> Check {
    let mut seen: BTreeSet<Vec<i8>> = BTreeSet::new();
    for b in m.bases() {
        for (_, c) in m.fundamental_circuits(b).map_err(|e| e.to_string())? {
            seen.insert(c.negated().entries().to_vec());
            seen.insert(c.entries().to_vec());
        }
    }
    match m.signed_circuits().iter().find(|c| !seen.contains(c.entries())) {
        Some(c) => Err(format!("{c} is not fundamental for any basis")),
        None => Ok(()),
    }
}

/// The fourientations to scan: all of them when `4^n` is small, otherwise
/// an evenly spread deterministic sample.
fn fourientations(n: usize, limit: usize) -> Vec<Fourientation> {
    let total = 1u64 << (2 * n);
    let decode = |x: u64| {
        Fourientation::new(
            (0..n)
                .map(|e| match x >> (2 * e) & 3 {
                    0 => EdgeState::Empty,
                    1 => EdgeState::Plus,
                    2 => EdgeState::Minus,
                    _ => EdgeState::Bi,
                })
                .collect(),
        )
    };
    if total <= limit as u64 {
        (0..total).map(decode).collect()
    } else {
        // Multiplication by an odd constant permutes residues mod 4^n.
        (0..limit as u64)
            .map(|i| decode(i.wrapping_mul(0x9E37_79B9_7F4A_7C15) & (total - 1)))
            .collect()
    }
}

pub fn check_exclusivity_and_painting(m: &RepresentedMatroid, limit: usize) -> Check {
    for f in fourientations(m.n(), limit) {
        let pc = fourientation::potential_circuits(m, &f);
        let pcc = fourientation::potential_cocircuits(m, &f);
        for c in &pc {
            if let Some(d) = pcc.iter().find(|d| c.support().iter().any(|&e| d.get(e) != 0)) {
                return Err(format!("F = {f}: potential circuit {c} meets potential cocircuit {d}"));
            }
        }
        for e in f.one_way_edges() {
            let s = f.get(e).sign().expect("one-way");
            let in_c = pc.iter().any(|c| c.get(e) == s);
            let in_cc = pcc.iter().any(|d| d.get(e) == s);
            if in_c == in_cc {
                return Err(format!(
                    "F = {f}, edge {}: in a potential circuit {in_c}, in a potential cocircuit {in_cc}",
                    e + 1
                ));
            }
        }
    }
    Ok(())
}

pub fn check_gioan_count(m: &RepresentedMatroid) -> Check {
    let classes = classes::enumerate_classes(m).map_err(|e| e.to_string())?;
    if classes.len() != m.bases().len() {
        return Err(format!("{} classes, {} bases", classes.len(), m.bases().len()));
    }
    Ok(())
}

/// Algebraic test against the search oracle: every orientation against
/// every other when `n <= all_pairs_cap`, otherwise against each class
/// representative.
pub fn check_projection_vs_bfs(m: &RepresentedMatroid, all_pairs_cap: usize) -> Check {
    let n = m.n();
    let all: Vec<Orientation> = (0..1u64 << n).map(|x| Orientation::from_mask(x, n)).collect();
    let index = ClassIndex::build(m, ReversalKind::CircuitsAndCocircuits).map_err(|e| e.to_string())?;
    let targets: Vec<Orientation> = if n <= all_pairs_cap {
        all.clone()
    } else {
        index.representatives().to_vec()
    };
    for o1 in &all {
        for o2 in &targets {
            let fast = classes::class_equivalent(m, o1, o2);
            let slow = classes::class_equivalent_bfs(m, o1, o2);
            if fast != slow {
                return Err(format!("{o1} vs {o2}: projection {fast}, search {slow}"));
            }
        }
    }
    Ok(())
}

pub fn check_class_difference(m: &RepresentedMatroid) -> Check {
    let n = m.n();
    let index = ClassIndex::build(m, ReversalKind::CircuitsAndCocircuits).map_err(|e| e.to_string())?;
    for x in 0..1u64 << n {
        let o1 = Orientation::from_mask(x, n);
        let o2 = index.representative(index.class_of(&o1));
        let (cs, ds) = classes::class_difference(m, &o1, o2).map_err(|e| e.to_string())?;
        let mut used = 0u64;
        let mut o = o1.clone();
        for v in cs.iter().chain(&ds) {
            let (p, q) = v.masks();
            if used & (p | q) != 0 {
                return Err(format!("{o1} -> {o2}: {v} overlaps an earlier part"));
            }
            used |= p | q;
            if !o1.contains_vector(v) {
                return Err(format!("{o1} -> {o2}: {v} is not contained in {o1}"));
            }
            o = o.reverse(v);
        }
        if &o != o2 {
            return Err(format!("{o1} -> {o2}: reversals give {o}"));
        }
    }
    Ok(())
}

/// Acyclic signatures from a few weight patterns.
pub fn sample_acyclic_signatures(m: &RepresentedMatroid, polarity: SignaturePolarity) -> Vec<Signature> {
    let n = m.n();
    [(2, false), (3, true), (5, false), (4, true)]
        .iter()
        .filter_map(|&(base, alt)| {
            signature::acyclic_signature_from_weights(m, &power_weights(n, base, alt), polarity).ok()
        })
        .collect()
}

/// Acyclic implies triangulating; triangulating atlases are dissecting; the
/// signature and atlas round-trip.
pub fn check_acyclic_signatures(m: &RepresentedMatroid) -> Check {
    for polarity in [SignaturePolarity::Circuit, SignaturePolarity::Cocircuit] {
        for sig in sample_acyclic_signatures(m, polarity) {
            if !signature::is_acyclic(m, &sig).is_acyclic() {
                return Err(format!("weight-induced signature {:?} judged cyclic", sig.vectors()));
            }
            if let Some((b, c)) =
                signature::triangulating_signature_violation(m, &sig).map_err(|e| e.to_string())?
            {
                return Err(format!("acyclic signature not triangulating: {c} inside basis {b}"));
            }
            let a = signature::atlas_from_signature(m, &sig).map_err(|e| e.to_string())?;
            if let Some((b1, b2)) = atlas::triangulating_violation(m, &a) {
                return Err(format!("induced atlas not triangulating at {b1}, {b2}"));
            }
            if let Some((b1, b2)) = atlas::dissecting_violation(m, &a) {
                return Err(format!("induced atlas not dissecting at {b1}, {b2}"));
            }
            let back = signature::signature_from_atlas(m, &a).map_err(|e| e.to_string())?;
            if back != sig {
                return Err("signature -> atlas -> signature changed the signature".into());
            }
            let again = signature::atlas_from_signature(m, &back).map_err(|e| e.to_string())?;
            if again != a {
                return Err("atlas -> signature -> atlas changed the atlas".into());
            }
        }
    }
    Ok(())
}

/// Cycle signatures obtained from acyclic ones by flipping one cycle.
pub fn perturbed_circuit_signatures(m: &RepresentedMatroid) -> Vec<Signature> {
    let mut out = Vec::new();
    for sig in sample_acyclic_signatures(m, SignaturePolarity::Circuit).into_iter().take(2) {
        for i in 0..sig.len() {
            let mut vs = sig.vectors().to_vec();
            vs[i] = vs[i].negated();
            if let Ok(s) = Signature::new(m, SignaturePolarity::Circuit, vs) {
                out.push(s);
            }
        }
        out.push(sig);
    }
    out
}

pub fn check_graph_criterion(m: &RepresentedMatroid, sigs: &[Signature]) -> Check {
    if m.graph().is_none() {
        return Ok(());
    }
    for sig in sigs {
        let by_graph = signature::is_triangulating_cycle_signature_graph(m, sig).map_err(|e| e.to_string())?;
        let by_def = signature::is_triangulating_signature(m, sig).map_err(|e| e.to_string())?;
        if by_graph != by_def {
            return Err(format!(
                "signature {}: graph criterion {by_graph}, definition {by_def}",
                sig.vectors().iter().join(" ")
            ));
        }
    }
    Ok(())
}

pub fn check_bijections(m: &RepresentedMatroid, phi_cap: usize) -> Check {
    let sigma = sample_acyclic_signatures(m, SignaturePolarity::Circuit)
        .into_iter()
        .next()
        .ok_or("no circuit signature")?;
    let sigma_star = sample_acyclic_signatures(m, SignaturePolarity::Cocircuit)
        .into_iter()
        .nth(1)
        .ok_or("no cocircuit signature")?;
    let ext = signature::atlas_from_signature(m, &sigma).map_err(|e| e.to_string())?;
    let int = signature::atlas_from_signature(m, &sigma_star).map_err(|e| e.to_string())?;
    let fbar = bijection::f_bar(m, &ext, &int, true).map_err(|e| e.to_string())?;
    if !fbar.hypotheses.is_some_and(|h| h.hold()) {
        return Err(format!("hypotheses fail: {:?}", fbar.hypotheses));
    }
    if let Some((b1, b2)) = fbar.collision {
        return Err(format!("{b1} and {b2} land in one class"));
    }
    if !fbar.is_bijective() {
        return Err(format!("{} bases, {} classes", fbar.table.len(), fbar.class_count));
    }
    for (b, o, _) in &fbar.table {
        if !signature::is_compatible(m, o, &sigma) || !signature::is_compatible(m, o, &sigma_star) {
            return Err(format!("f({b}) = {o} is not compatible"));
        }
    }
    let compatible = bijection::compatible_orientations(m, &sigma, &sigma_star).map_err(|e| e.to_string())?;
    if compatible.len() != m.bases().len() {
        return Err(format!("{} compatible orientations, {} bases", compatible.len(), m.bases().len()));
    }
    if m.n() > phi_cap {
        return Ok(());
    }
    let table = bijection::phi_table(m, &ext, &int, true).map_err(|e| e.to_string())?;
    if let Some((o1, o2)) = table.tiling_violation() {
        return Err(format!("phi is not tiling at {o1}, {o2}"));
    }
    if !table.is_bijective() {
        return Err("phi is not bijective".into());
    }
    for (b, o, _) in &fbar.table {
        if table.get(o) != b.edges() {
            return Err(format!("phi(f({b})) = {:?}", table.get(o)));
        }
    }
    let report = bijection::specialization_report(m, &sigma, &sigma_star).map_err(|e| e.to_string())?;
    if !(report.independents_match && report.spannings_match) {
        return Err(format!("specialization: {report:?}"));
    }
    Ok(())
}

pub fn check_bernardi(entry: &CatalogEntry, m: &RepresentedMatroid) -> Check {
    let Some(rg) = entry.ribbon().map_err(|e| e.to_string())? else {
        return Ok(());
    };
    let a = ribbon::bernardi_external_atlas(m, &rg).map_err(|e| e.to_string())?;
    if let Some((b1, b2)) = atlas::dissecting_violation(m, &a) {
        return Err(format!("tour atlas not dissecting at {b1}, {b2}"));
    }
    let int = ribbon::away_from_root_internal_atlas(m, rg.root_vertex()).map_err(|e| e.to_string())?;
    if !atlas::is_triangulating(m, &int) {
        return Err("away-from-root atlas is not triangulating".into());
    }
    let fbar = bijection::f_bar(m, &a, &int, true).map_err(|e| e.to_string())?;
    if !fbar.is_bijective() {
        return Err(format!("tour pair not bijective: {:?}", fbar.collision));
    }
    Ok(())
}

/// Rank test against the oriented-basis reading for every vertex subset of
/// the right size, on each side that admits a model.
pub fn check_chi_correspondence(m: &RepresentedMatroid) -> Check {
    for side in [Side::Primal, Side::Dual] {
        let Ok(model) = build_lawrence(m, side) else {
            continue;
        };
        let n = m.n();
        for vs in model.all_vertices().into_iter().combinations(model.dimension()) {
            let s = MaximalSimplex::new(vs);
            let f = s.fourientation(n);
            let encodes = f.states().iter().all(|&x| x != EdgeState::Empty) && {
                let edges: Vec<usize> = match side {
                    Side::Primal => (0..n).filter(|&e| f.get(e) == EdgeState::Bi).collect(),
                    Side::Dual => f.one_way_edges(),
                };
                m.is_basis(&edges)
            };
            if model.is_maximal_simplex(&s) != encodes {
                return Err(format!("{side:?} side, {s}: rank test disagrees with {f}"));
            }
            if encodes && model.chi_simplex(&s).is_err() {
                return Err(format!("{side:?} side, {s}: no oriented basis"));
            }
        }
    }
    Ok(())
}

pub fn check_expected_bases(entry: &CatalogEntry, m: &RepresentedMatroid) -> Check {
    match entry.expected_bases {
        Some(k) if k != m.bases().len() => Err(format!("expected {k}, found {}", m.bases().len())),
        _ => Ok(()),
    }
}

/// Checks on an entry's own signature: zero-sum certificate, the LP verdict,
/// the graph criterion and (in full scope) the definition.
pub fn check_entry_signature(entry: &CatalogEntry, m: &RepresentedMatroid, scope: Scope) -> Check {
    let Some(sig) = entry.signature(m).map_err(|e| e.to_string())? else {
        return Ok(());
    };
    let acyc = signature::is_acyclic(m, &sig);
    if !entry.certificate.is_empty() {
        let vs = entry.certificate_vectors().map_err(|e| e.to_string())?;
        let combo: Vec<(SignedVector, Rational)> =
            vs.into_iter().map(|v| (v, linalg::rational(1))).collect();
        if !signature::is_zero_combination(m.n(), &combo) {
            return Err("listed certificate does not sum to zero".into());
        }
        match &acyc {
            signature::Acyclicity::Cyclic { certificate } => {
                if !signature::is_zero_combination(m.n(), certificate) {
                    return Err("solver certificate does not vanish".into());
                }
            }
            signature::Acyclicity::Acyclic { .. } => {
                return Err("signature with a zero-sum certificate judged acyclic".into())
            }
        }
    }
    if let Some(t) = signature::zero_triple(m, &sig).map_err(|e| e.to_string())? {
        return Err(format!("zero triple {} {} {}", t[0], t[1], t[2]));
    }
    if scope == Scope::Full {
        if let Some((b, c)) =
            signature::triangulating_signature_violation(m, &sig).map_err(|e| e.to_string())?
        {
            return Err(format!("{c} inside basis {b} is not chosen"));
        }
    }
    Ok(())
}

fn record(report: &mut Report, entry: &str, check: &'static str, run: impl FnOnce() -> Check) {
    let outcome = match run() {
        Ok(()) => Outcome::Pass,
        Err(w) => Outcome::Fail(w),
    };
    report.results.push(CheckResult {
        entry: entry.to_string(),
        check,
        outcome,
    });
}

fn skip(report: &mut Report, entry: &str, check: &'static str, why: &str) {
    report.results.push(CheckResult {
        entry: entry.to_string(),
        check,
        outcome: Outcome::Skip(why.to_string()),
    });
}

pub fn run_entries(entries: &[CatalogEntry], scope: Scope) -> Report {
    let start = Instant::now();
    let mut report = Report::default();
    let painting_limit = match scope {
        Scope::Quick => 1 << 12,
        Scope::Full => 1 << 18,
    };
    for entry in entries {
        let name = entry.name.as_str();
        let m = match entry.matroid() {
            Ok(m) => m,
            Err(e) => {
                let w = e.to_string();
                record(&mut report, name, "load", || Err(w));
                continue;
            }
        };
        let n = m.n();
        record(&mut report, name, "bases count", || check_expected_bases(entry, &m));
        record(&mut report, name, "matrix-tree", || check_matrix_tree(&m));
        record(&mut report, name, "orthogonality", || check_orthogonality(&m));
        record(&mut report, name, "fundamental decomposition", || {
            check_fundamental_decomposition(&m)
        });
        record(&mut report, name, "circuits are fundamental", || check_circuits_fundamental(&m));
        record(&mut report, name, "duality", || check_duality(&m));
        record(&mut report, name, "exclusivity and 3-painting", || {
            check_exclusivity_and_painting(&m, painting_limit)
        });
        record(&mut report, name, "class count", || check_gioan_count(&m));
        if n <= 8 {
            record(&mut report, name, "projection vs search", || check_projection_vs_bfs(&m, 6));
        } else {
            skip(&mut report, name, "projection vs search", "n > 8");
        }
        record(&mut report, name, "class difference", || check_class_difference(&m));
        record(&mut report, name, "acyclic signatures", || check_acyclic_signatures(&m));
        if scope == Scope::Full || n <= 6 {
            record(&mut report, name, "graph criterion", || {
                check_graph_criterion(&m, &perturbed_circuit_signatures(&m))
            });
        } else {
            skip(&mut report, name, "graph criterion", "quick scope");
        }
        record(&mut report, name, "bijections", || check_bijections(&m, 10));
        record(&mut report, name, "tour atlas", || check_bernardi(entry, &m));
        if n <= 6 {
            record(&mut report, name, "simplex correspondence", || check_chi_correspondence(&m));
        } else {
            skip(&mut report, name, "simplex correspondence", "n > 6");
        }
        if !entry.labeled_vectors().is_empty() {
            record(&mut report, name, "entry signature", || {
                check_entry_signature(entry, &m, scope)
            });
        }
    }
    report.seconds = start.elapsed().as_secs_f64();
    report
}

pub fn run_builtin(scope: Scope) -> Report {
    run_entries(&catalog::builtin(), scope)
}
