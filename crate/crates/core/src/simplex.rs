//! Exact primal simplex for `min c.x` subject to `A x <= b`, `x >= 0`, with
//! `b >= 0` so that the slack basis is feasible. Bland's rule throughout.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

pub(crate) struct Solution {
    pub x: Vec<Rational>,
    pub objective: Rational,
    /// Whether the optimal face contains more than one point.
    pub tie: bool,
}

#[derive(Clone)]
struct Tableau {
    vars: usize,
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
}

impl Tableau {
    fn new(a: &[Vec<Rational>], b: &[Rational]) -> Result<Self> {
        let vars = a.first().map_or(0, Vec::len);
        let m = a.len();
        if b.iter().any(Signed::is_negative) {
            return Err(Error::InvalidInput("right-hand side must be nonnegative".into()));
        }
        let rows = a
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut r = row.clone();
                r.resize(vars + m, Rational::zero());
                r[vars + i] = Rational::from_integer(1.into());
                r
            })
            .collect();
        Ok(Self {
            vars,
            rows,
            rhs: b.to_vec(),
            basis: (vars..vars + m).collect(),
        })
    }

    fn columns(&self) -> usize {
        self.vars + self.rows.len()
    }

    fn reduced_costs(&self, cost: &[Rational]) -> Vec<Rational> {
        (0..self.columns())
            .map(|j| {
                let mut r = cost[j].clone();
                for (i, &bj) in self.basis.iter().enumerate() {
                    if !cost[bj].is_zero() && !self.rows[i][j].is_zero() {
                        r -= &cost[bj] * &self.rows[i][j];
                    }
                }
                r
            })
            .collect()
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.rows[row][col].clone();
        for v in self.rows[row].iter_mut() {
            *v /= &p;
        }
        self.rhs[row] /= &p;
        let pivot_row = self.rows[row].clone();
        let pivot_rhs = self.rhs[row].clone();
        for i in 0..self.rows.len() {
            if i == row || self.rows[i][col].is_zero() {
                continue;
            }
            let f = self.rows[i][col].clone();
            for (v, pv) in self.rows[i].iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
            self.rhs[i] -= &f * &pivot_rhs;
        }
        self.basis[row] = col;
    }

    /// Minimizes `cost` over the columns marked allowed (the others stay at
    /// zero; they must be nonbasic on entry).
    fn minimize(&mut self, cost: &[Rational], allowed: &[bool]) -> Result<()> {
        loop {
            let reduced = self.reduced_costs(cost);
            let entering = (0..self.columns())
                .find(|&j| allowed[j] && reduced[j].is_negative() && !self.basis.contains(&j));
            let Some(col) = entering else {
                return Ok(());
            };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &best {
                    None => true,
                    Some((r, q)) => ratio < *q || (ratio == *q && self.basis[i] < self.basis[*r]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((row, _)) = best else {
                return Err(Error::Numerical("linear program is unbounded".into()));
            };
            self.pivot(row, col);
        }
    }

    fn point(&self) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); self.vars];
        for (i, &bj) in self.basis.iter().enumerate() {
            if bj < self.vars {
                x[bj] = self.rhs[i].clone();
            }
        }
        x
    }
}

pub(crate) fn solve(a: &[Vec<Rational>], b: &[Rational], c: &[Rational]) -> Result<Solution> {
    let mut t = Tableau::new(a, b)?;
    let total = t.columns();
    let mut cost = c.to_vec();
    cost.resize(total, Rational::zero());
    t.minimize(&cost, &vec![true; total])?;
    let x = t.point();
    let objective = crate::rational::dot(c, &x);

    let reduced = t.reduced_costs(&cost);
    let face: Vec<bool> = (0..total)
        .map(|j| t.basis.contains(&j) || reduced[j].is_zero())
        .collect();
    let degenerate_face = (0..total).any(|j| !t.basis.contains(&j) && reduced[j].is_zero());
    let mut tie = false;
    if degenerate_face {
        'coords: for i in 0..t.vars {
            for sign in [1i64, -1] {
                let mut probe = vec![Rational::zero(); total];
                probe[i] = Rational::from_integer(sign.into());
                let mut copy = t.clone();
                copy.minimize(&probe, &face)?;
                if copy.point()[i] != x[i] {
                    tie = true;
                    break 'coords;
                }
            }
        }
    }
    Ok(Solution { x, objective, tie })
}
