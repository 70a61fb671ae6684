//! Dense two-phase simplex over exact rationals.
//!
//! Pivoting follows Bland's rule (lowest-index entering column, lowest-index
//! basic variable among ratio-test ties), which rules out cycling. Problems
//! here are tiny (a handful of strategies), so a dense tableau is adequate.

use num_traits::{Signed, Zero};

use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// `maximize objective·x` subject to the constraints and `x ≥ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { point: Vec<Rational>, value: Rational },
    Infeasible,
    Unbounded,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        Self {
            objective: vec![Rational::zero(); num_vars],
            constraints: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn add(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) {
        assert_eq!(coeffs.len(), self.num_vars(), "constraint width");
        self.constraints.push(Constraint { coeffs, relation, rhs });
    }

    /// Whether `x` satisfies every constraint and `x ≥ 0`.
    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        x.len() == self.num_vars()
            && x.iter().all(|v| !v.is_negative())
            && self.constraints.iter().all(|c| {
                let lhs: Rational = c.coeffs.iter().zip(x).map(|(a, b)| a * b).sum();
                match c.relation {
                    Relation::Le => lhs <= c.rhs,
                    Relation::Ge => lhs >= c.rhs,
                    Relation::Eq => lhs == c.rhs,
                }
            })
    }

    pub fn solve(&self) -> LpOutcome {
        Tableau::build(self).solve(&self.objective)
    }
}

struct Tableau {
    /// `rows[r]` holds the constraint coefficients followed by the rhs.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    num_original: usize,
    /// Columns at or beyond this index are artificial.
    first_artificial: usize,
    width: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let n = lp.num_vars();
        let m = lp.constraints.len();
        // Normalize to non-negative right-hand sides.
        let normalized: Vec<(Vec<Rational>, Relation, Rational)> = lp
            .constraints
            .iter()
            .map(|c| {
                if c.rhs.is_negative() {
                    let rel = match c.relation {
                        Relation::Le => Relation::Ge,
                        Relation::Ge => Relation::Le,
                        Relation::Eq => Relation::Eq,
                    };
                    (c.coeffs.iter().map(|a| -a).collect(), rel, -&c.rhs)
                } else {
                    (c.coeffs.clone(), c.relation, c.rhs.clone())
                }
            })
            .collect();
        let slacks = normalized.iter().filter(|c| c.1 != Relation::Eq).count();
        let artificials = normalized.iter().filter(|c| c.1 != Relation::Le).count();
        let first_artificial = n + slacks;
        let width = first_artificial + artificials;

        let mut rows = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let (mut next_slack, mut next_art) = (n, first_artificial);
        for (coeffs, rel, rhs) in normalized {
            let mut row = vec![Rational::zero(); width + 1];
            row[..n].clone_from_slice(&coeffs);
            match rel {
                Relation::Le => {
                    row[next_slack] = Rational::from_integer(1.into());
                    basis.push(next_slack);
                    next_slack += 1;
                }
                Relation::Ge => {
                    row[next_slack] = Rational::from_integer((-1).into());
                    next_slack += 1;
                    row[next_art] = Rational::from_integer(1.into());
                    basis.push(next_art);
                    next_art += 1;
                }
                Relation::Eq => {
                    row[next_art] = Rational::from_integer(1.into());
                    basis.push(next_art);
                    next_art += 1;
                }
            }
            row[width] = rhs;
            rows.push(row);
        }
        Self { rows, basis, num_original: n, first_artificial, width }
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let p = self.rows[r][col].clone();
        for v in self.rows[r].iter_mut() {
            *v /= &p;
        }
        let pivot_row = self.rows[r].clone();
        for (k, row) in self.rows.iter_mut().enumerate() {
            if k == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        self.basis[r] = col;
    }

    /// Runs simplex iterations for `maximize cost·x` over columns `< limit`.
    /// Returns `false` if the objective is unbounded.
    fn optimize(&mut self, cost: &[Rational], limit: usize) -> bool {
        loop {
            let entering = (0..limit).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let mut d = cost[j].clone();
                for (r, &b) in self.basis.iter().enumerate() {
                    if !cost[b].is_zero() && !self.rows[r][j].is_zero() {
                        d -= &cost[b] * &self.rows[r][j];
                    }
                }
                d.is_positive()
            });
            let Some(col) = entering else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for (r, row) in self.rows.iter().enumerate() {
                if !row[col].is_positive() {
                    continue;
                }
                let ratio = &row[self.width] / &row[col];
                let better = match &best {
                    None => true,
                    Some((br, bv)) => ratio < *bv || (ratio == *bv && self.basis[r] < self.basis[*br]),
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            match best {
                None => return false,
                Some((r, _)) => self.pivot(r, col),
            }
        }
    }

    fn value(&self, cost: &[Rational]) -> Rational {
        self.basis
            .iter()
            .zip(&self.rows)
            .map(|(&b, row)| &cost[b] * &row[self.width])
            .sum()
    }

    fn solve(mut self, objective: &[Rational]) -> LpOutcome {
        let minus_one = Rational::from_integer((-1).into());
        if self.first_artificial < self.width {
            let mut cost = vec![Rational::zero(); self.width];
            for c in cost.iter_mut().skip(self.first_artificial) {
                *c = minus_one.clone();
            }
            // Phase 1 is bounded by 0 from above.
            self.optimize(&cost, self.width);
            if self.value(&cost).is_negative() {
                return LpOutcome::Infeasible;
            }
            // Drive zero-level artificials out of the basis, dropping
            // redundant rows.
            let mut r = 0;
            while r < self.rows.len() {
                if self.basis[r] >= self.first_artificial {
                    match (0..self.first_artificial).find(|&j| !self.rows[r][j].is_zero()) {
                        Some(j) => self.pivot(r, j),
                        None => {
                            self.rows.remove(r);
                            self.basis.remove(r);
                            continue;
                        }
                    }
                }
                r += 1;
            }
        }
        let mut cost = vec![Rational::zero(); self.width];
        cost[..self.num_original].clone_from_slice(objective);
        if !self.optimize(&cost, self.first_artificial) {
            return LpOutcome::Unbounded;
        }
        let mut point = vec![Rational::zero(); self.num_original];
        for (r, &b) in self.basis.iter().enumerate() {
            if b < self.num_original {
                point[b] = self.rows[r][self.width].clone();
            }
        }
        let value = point.iter().zip(objective).map(|(x, c)| x * c).sum();
        LpOutcome::Optimal { point, value }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn textbook_maximum() {
        // max 3x + 5y st x ≤ 4, 2y ≤ 12, 3x + 2y ≤ 18 → (2, 6), 36.
        let mut lp = LinearProgram::new(2);
        lp.objective = v(&[3, 5]);
        lp.add(v(&[1, 0]), Relation::Le, int(4));
        lp.add(v(&[0, 2]), Relation::Le, int(12));
        lp.add(v(&[3, 2]), Relation::Le, int(18));
        assert_eq!(
            lp.solve(),
            LpOutcome::Optimal { point: v(&[2, 6]), value: int(36) }
        );
    }

    #[test]
    fn equality_and_ge_rows() {
        // max x - y st x + y = 1, x ≥ 1/3 (written as -x ≤ -1/3), y ≥ 1/4.
        let mut lp = LinearProgram::new(2);
        lp.objective = v(&[1, -1]);
        lp.add(v(&[1, 1]), Relation::Eq, int(1));
        lp.add(v(&[-1, 0]), Relation::Le, ratio(-1, 3));
        lp.add(v(&[0, 1]), Relation::Ge, ratio(1, 4));
        match lp.solve() {
            LpOutcome::Optimal { point, value } => {
                assert_eq!(point, vec![ratio(3, 4), ratio(1, 4)]);
                assert_eq!(value, ratio(1, 2));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LinearProgram::new(1);
        lp.add(v(&[1]), Relation::Ge, int(2));
        lp.add(v(&[1]), Relation::Le, int(1));
        assert_eq!(lp.solve(), LpOutcome::Infeasible);

        let mut lp = LinearProgram::new(2);
        lp.objective = v(&[1, 0]);
        lp.add(v(&[1, -1]), Relation::Le, int(1));
        assert_eq!(lp.solve(), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_equalities() {
        let mut lp = LinearProgram::new(2);
        lp.objective = v(&[0, 1]);
        lp.add(v(&[1, 1]), Relation::Eq, int(2));
        lp.add(v(&[2, 2]), Relation::Eq, int(4));
        match lp.solve() {
            LpOutcome::Optimal { point, value } => {
                assert_eq!(value, int(2));
                assert!(lp.is_feasible(&point));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn degenerate_cycling_example() {
        // Beale's example cycles under the largest-coefficient rule.
        let mut lp = LinearProgram::new(4);
        lp.objective = vec![ratio(3, 4), int(-150), ratio(1, 50), int(-6)];
        lp.add(vec![ratio(1, 4), int(-60), ratio(-1, 25), int(9)], Relation::Le, int(0));
        lp.add(vec![ratio(1, 2), int(-90), ratio(-1, 50), int(3)], Relation::Le, int(0));
        lp.add(vec![int(0), int(0), int(1), int(0)], Relation::Le, int(1));
        match lp.solve() {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, ratio(1, 20));
                assert!(lp.is_feasible(&point));
            }
            other => panic!("{other:?}"),
        }
    }
}
