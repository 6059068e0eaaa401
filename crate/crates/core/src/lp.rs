//! Exact rational linear programming: a dense two-phase simplex with
//! Bland's rule, plus the two feasibility queries the cone kernel needs.

use num::{One, Signed, Zero};

use crate::vector::{RatVector, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// `maximize objective·x` subject to the constraints; variable `j` is
/// unrestricted in sign when `free[j]` and nonnegative otherwise.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    pub objective: Vec<Rational>,
    pub free: Vec<bool>,
    pub constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: Rational, point: Vec<Rational> },
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for e in self.rows[r].iter_mut() {
            *e *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (e, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *e -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Maximizes `cost` over the allowed columns. Returns `false` when
    /// unbounded.
    fn optimize(&mut self, cost: &[Rational], allowed: &[bool]) -> bool {
        loop {
            let entering = (0..self.width).find(|&j| {
                if !allowed[j] || self.basis.contains(&j) {
                    return false;
                }
                let mut reduced = cost[j].clone();
                for (i, row) in self.rows.iter().enumerate() {
                    if !row[j].is_zero() {
                        reduced -= &cost[self.basis[i]] * &row[j];
                    }
                }
                reduced.is_positive()
            });
            let Some(j) = entering else { return true };
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[j].is_positive() {
                    let ratio = &row[self.width] / &row[j];
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            let Some((r, _)) = best else { return false };
            self.pivot(r, j);
        }
    }

    fn value(&self, cost: &[Rational]) -> Rational {
        self.rows
            .iter()
            .enumerate()
            .fold(Rational::zero(), |acc, (i, row)| acc + &cost[self.basis[i]] * &row[self.width])
    }
}

impl LinearProgram {
    pub fn solve(&self) -> LpOutcome {
        let n = self.objective.len();
        // Column layout: structural (free vars split in two), slacks, artificials.
        let mut col_of = Vec::with_capacity(n);
        let mut width = 0;
        for &f in &self.free {
            col_of.push(width);
            width += if f { 2 } else { 1 };
        }
        let structural = width;
        let slack_count = self.constraints.iter().filter(|c| c.relation != Relation::Eq).count();
        let m = self.constraints.len();
        let art_start = structural + slack_count;
        width = art_start + m;

        let mut rows = Vec::with_capacity(m);
        let mut slack = structural;
        for (i, c) in self.constraints.iter().enumerate() {
            let mut row = vec![Rational::zero(); width + 1];
            for (j, a) in c.coeffs.iter().enumerate() {
                row[col_of[j]] = a.clone();
                if self.free[j] {
                    row[col_of[j] + 1] = -a.clone();
                }
            }
            match c.relation {
                Relation::Le => {
                    row[slack] = Rational::one();
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = -Rational::one();
                    slack += 1;
                }
                Relation::Eq => {}
            }
            row[width] = c.rhs.clone();
            if row[width].is_negative() {
                for e in row.iter_mut() {
                    *e = -e.clone();
                }
            }
            row[art_start + i] = Rational::one();
            rows.push(row);
        }
        let mut tab = Tableau { rows, basis: (art_start..art_start + m).collect(), width };

        let phase1: Vec<Rational> =
            (0..width).map(|j| if j >= art_start { -Rational::one() } else { Rational::zero() }).collect();
        let all = vec![true; width];
        tab.optimize(&phase1, &all);
        if tab.value(&phase1).is_negative() {
            return LpOutcome::Infeasible;
        }
        // Drive zero-level artificials out of the basis; drop redundant rows.
        let mut i = 0;
        while i < tab.rows.len() {
            if tab.basis[i] >= art_start {
                match (0..art_start).find(|&j| !tab.rows[i][j].is_zero()) {
                    Some(j) => {
                        tab.pivot(i, j);
                        i += 1;
                    }
                    None => {
                        tab.rows.remove(i);
                        tab.basis.remove(i);
                    }
                }
            } else {
                i += 1;
            }
        }

        let mut phase2 = vec![Rational::zero(); width];
        for (j, c) in self.objective.iter().enumerate() {
            phase2[col_of[j]] = c.clone();
            if self.free[j] {
                phase2[col_of[j] + 1] = -c.clone();
            }
        }
        let allowed: Vec<bool> = (0..width).map(|j| j < art_start).collect();
        if !tab.optimize(&phase2, &allowed) {
            return LpOutcome::Unbounded;
        }
        let mut columns = vec![Rational::zero(); width];
        for (i, &b) in tab.basis.iter().enumerate() {
            columns[b] = tab.rows[i][width].clone();
        }
        let point: Vec<Rational> = (0..n)
            .map(|j| {
                let v = columns[col_of[j]].clone();
                if self.free[j] {
                    v - &columns[col_of[j] + 1]
                } else {
                    v
                }
            })
            .collect();
        let value = self.objective.iter().zip(&point).fold(Rational::zero(), |acc, (c, x)| acc + c * x);
        LpOutcome::Optimal { value, point }
    }
}

/// Looks for `x` with `e·x = 0` for every equality and `n·x < 0` for every
/// inequality. Maximizes a slack `t ≤ 1` with `n·x + t ≤ 0`; the strict
/// system is feasible iff the optimum is positive. Returns a witness.
pub fn strictly_feasible(equalities: &[RatVector], inequalities: &[RatVector], dim: usize) -> Option<RatVector> {
    if inequalities.is_empty() {
        return Some(RatVector::zero(dim));
    }
    let mut free = vec![true; dim];
    free.push(false);
    let mut objective = vec![Rational::zero(); dim];
    objective.push(Rational::one());
    let mut constraints = Vec::new();
    for e in equalities {
        let mut coeffs = e.0.clone();
        coeffs.push(Rational::zero());
        constraints.push(Constraint { coeffs, relation: Relation::Eq, rhs: Rational::zero() });
    }
    for n in inequalities {
        let mut coeffs = n.0.clone();
        coeffs.push(Rational::one());
        constraints.push(Constraint { coeffs, relation: Relation::Le, rhs: Rational::zero() });
    }
    let mut cap = vec![Rational::zero(); dim];
    cap.push(Rational::one());
    constraints.push(Constraint { coeffs: cap, relation: Relation::Le, rhs: Rational::one() });
    match (LinearProgram { objective, free, constraints }).solve() {
        LpOutcome::Optimal { value, mut point } if value.is_positive() => {
            point.pop();
            Some(RatVector(point))
        }
        _ => None,
    }
}

/// Nonnegative coefficients expressing `p` in the conic hull of
/// `generators`, if they exist.
pub fn conic_combination(generators: &[RatVector], p: &RatVector) -> Option<Vec<Rational>> {
    let k = generators.len();
    let constraints = (0..p.len())
        .map(|i| Constraint {
            coeffs: generators.iter().map(|g| g[i].clone()).collect(),
            relation: Relation::Eq,
            rhs: p[i].clone(),
        })
        .collect();
    let lp = LinearProgram { objective: vec![Rational::zero(); k], free: vec![false; k], constraints };
    match lp.solve() {
        LpOutcome::Optimal { point, .. } => Some(point),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector::rat;

    fn rv(v: &[i64]) -> RatVector {
        RatVector::from_ints(v)
    }

    #[test]
    fn small_lp_optimum() {
        // max x + y  s.t. x + 2y ≤ 4, 3x + y ≤ 6, x,y ≥ 0  → (8/5, 6/5), value 14/5
        let lp = LinearProgram {
            objective: vec![rat(1), rat(1)],
            free: vec![false, false],
            constraints: vec![
                Constraint { coeffs: vec![rat(1), rat(2)], relation: Relation::Le, rhs: rat(4) },
                Constraint { coeffs: vec![rat(3), rat(1)], relation: Relation::Le, rhs: rat(6) },
            ],
        };
        match lp.solve() {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, rat(14) / rat(5));
                assert_eq!(point, vec![rat(8) / rat(5), rat(6) / rat(5)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let infeasible = LinearProgram {
            objective: vec![rat(0)],
            free: vec![false],
            constraints: vec![Constraint { coeffs: vec![rat(1)], relation: Relation::Le, rhs: rat(-1) }],
        };
        assert_eq!(infeasible.solve(), LpOutcome::Infeasible);
        let unbounded = LinearProgram {
            objective: vec![rat(1)],
            free: vec![true],
            constraints: vec![Constraint { coeffs: vec![rat(-1)], relation: Relation::Le, rhs: rat(0) }],
        };
        assert_eq!(unbounded.solve(), LpOutcome::Unbounded);
    }

    #[test]
    fn strict_feasibility() {
        // x₂ = x₁, x₂ − 2x₁ < 0: feasible (e.g. (1,1)).
        let w = strictly_feasible(&[rv(&[-1, 1])], &[rv(&[-2, 1])], 2).unwrap();
        assert_eq!(&w[0], &w[1]);
        assert!((&w[1] - &(&w[0] * rat(2))).is_negative());
        // x₁ = x₂ and x₁ < 0 and −x₂ < 0: infeasible.
        assert!(strictly_feasible(&[rv(&[1, -1])], &[rv(&[1, 0]), rv(&[0, -1])], 2).is_none());
    }

    #[test]
    fn conic_membership() {
        let gens = [rv(&[1, 0]), rv(&[1, 1])];
        let c = conic_combination(&gens, &rv(&[3, 1])).unwrap();
        assert_eq!(c, vec![rat(2), rat(1)]);
        assert!(conic_combination(&gens, &rv(&[0, 1])).is_none());
        assert!(conic_combination(&[], &rv(&[0, 0])).is_some());
    }
}
