//! Exact two-phase simplex method over the rationals with Bland's rule.
//!
//! Problems are given in standard form: maximize `c.x` subject to
//! `A x = b`, `x >= 0`.

use num_traits::{One, Signed, Zero};

use crate::linalg::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpResult {
    Optimal { x: Vec<Rational>, value: Rational },
    Infeasible,
    Unbounded,
}

impl LpResult {
    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpResult::Infeasible)
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    cols: usize,
}

enum Step {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rational {
        &self.rows[i][self.cols]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x = &*x - &f * y;
                    }
                }
            }
        }
        self.basis[r] = c;
    }

    /// Runs simplex iterations maximizing `cost` over columns `0..allowed`.
    fn optimize(&mut self, cost: &[Rational], allowed: usize) -> Step {
        loop {
            let entering = (0..allowed).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let mut r = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !self.rows[i][j].is_zero() && !cost[b].is_zero() {
                        r -= &cost[b] * &self.rows[i][j];
                    }
                }
                r.is_positive()
            });
            let Some(j) = entering else {
                return Step::Optimal;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][j];
                if a.is_positive() {
                    let ratio = self.rhs(i) / a;
                    let better = match &leave {
                        None => true,
                        Some((li, lr)) => {
                            ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            let Some((r, _)) = leave else {
                return Step::Unbounded;
            };
            self.pivot(r, j);
        }
    }

    fn solution(&self, n: usize) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); n];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < n {
                x[b] = self.rhs(i).clone();
            }
        }
        x
    }
}

/// Maximizes `c.x` subject to `A x = b`, `x >= 0`.
pub fn maximize(a: &[Vec<Rational>], b: &[Rational], c: &[Rational]) -> LpResult {
    let m = a.len();
    let n = c.len();
    let cols = n + m;
    let rows: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            let flip = b[i].is_negative();
            let mut row: Vec<Rational> = a[i]
                .iter()
                .map(|x| if flip { -x.clone() } else { x.clone() })
                .collect();
            row.extend((0..m).map(|k| {
                if k == i {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            row.push(if flip { -b[i].clone() } else { b[i].clone() });
            row
        })
        .collect();
    let mut t = Tableau {
        rows,
        basis: (n..n + m).collect(),
        cols,
    };
    let phase1: Vec<Rational> = (0..cols)
        .map(|j| {
            if j < n {
                Rational::zero()
            } else {
                -Rational::one()
            }
        })
        .collect();
    t.optimize(&phase1, cols);
    let infeasibility: Rational = t
        .basis
        .iter()
        .enumerate()
        .filter(|(_, &bj)| bj >= n)
        .map(|(i, _)| t.rhs(i).clone())
        .sum();
    if infeasibility.is_positive() {
        return LpResult::Infeasible;
    }
    // Drive zero-valued artificials out of the basis or drop redundant rows.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }
    let mut phase2 = c.to_vec();
    phase2.extend((0..m).map(|_| Rational::zero()));
    match t.optimize(&phase2, n) {
        Step::Unbounded => LpResult::Unbounded,
        Step::Optimal => {
            let x = t.solution(n);
            let value = x.iter().zip(c).map(|(xi, ci)| xi * ci).sum();
            LpResult::Optimal { x, value }
        }
    }
}

/// A point of `{x >= 0 : A x = b}`, if any.
pub fn feasible_point(a: &[Vec<Rational>], b: &[Rational], n: usize) -> Option<Vec<Rational>> {
    let c = vec![Rational::zero(); n];
    match maximize(a, b, &c) {
        LpResult::Optimal { x, .. } => Some(x),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rational, ratio};

    fn q(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| rational(x)).collect())
            .collect()
    }

    #[test]
    fn small_maximization() {
        // max x + y with x + 2y + s1 = 4, 3x + y + s2 = 6.
        let a = q(&[&[1, 2, 1, 0], &[3, 1, 0, 1]]);
        let b = vec![rational(4), rational(6)];
        let c = vec![rational(1), rational(1), rational(0), rational(0)];
        match maximize(&a, &b, &c) {
            LpResult::Optimal { x, value } => {
                assert_eq!(value, ratio(14, 5));
                assert_eq!(x[0], ratio(8, 5));
                assert_eq!(x[1], ratio(6, 5));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let a = q(&[&[1, 1]]);
        assert_eq!(
            maximize(&a, &[rational(-1)], &[rational(0), rational(0)]),
            LpResult::Infeasible
        );
        let a = q(&[&[1, -1]]);
        assert_eq!(
            maximize(&a, &[rational(1)], &[rational(1), rational(0)]),
            LpResult::Unbounded
        );
    }

    #[test]
    fn redundant_rows() {
        let a = q(&[&[1, 1], &[2, 2]]);
        let b = vec![rational(1), rational(2)];
        let x = feasible_point(&a, &b, 2).unwrap();
        assert_eq!(&x[0] + &x[1], rational(1));
    }

    #[test]
    fn degenerate_cycling_example_terminates() {
        // Beale's example, which cycles under the textbook largest-coefficient rule.
        let a = vec![
            vec![ratio(1, 4), rational(-60), ratio(-1, 25), rational(9), rational(1), rational(0), rational(0)],
            vec![ratio(1, 2), rational(-90), ratio(-1, 50), rational(3), rational(0), rational(1), rational(0)],
            vec![rational(0), rational(0), rational(1), rational(0), rational(0), rational(0), rational(1)],
        ];
        let b = vec![rational(0), rational(0), rational(1)];
        let c = vec![ratio(3, 4), rational(-150), ratio(1, 50), rational(-6), rational(0), rational(0), rational(0)];
        match maximize(&a, &b, &c) {
            LpResult::Optimal { value, .. } => assert_eq!(value, ratio(1, 20)),
            other => panic!("{other:?}"),
        }
    }
}
