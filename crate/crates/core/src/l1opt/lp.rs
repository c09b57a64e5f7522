//! Exact rational simplex method (two-phase, Bland's rule).
//!
//! Free variables are pivoted into the basis before phase 1 and never leave
//! it; their rows are excluded from ratio tests. Their values are read back
//! from the rows as they stood after that elimination.

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::rational::Q;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum VarBound {
    Free,
    NonNegative,
}

/// `minimise objective·x` subject to `rows·x = rhs` and the variable bounds.
/// Rows are sparse `(variable, coefficient)` lists.
#[derive(Clone, Debug, PartialEq)]
pub struct LpInstance {
    pub objective: Vec<Q>,
    pub rows: Vec<Vec<(usize, Q)>>,
    pub rhs: Vec<Q>,
    pub bounds: Vec<VarBound>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub value: Q,
    pub x: Vec<Q>,
    /// Basic variables of the final tableau, sorted.
    pub basis: Vec<usize>,
    pub pivots: usize,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum LpError {
    #[error("infeasible")]
    Infeasible,
    #[error("unbounded")]
    Unbounded,
    #[error("malformed instance: {0}")]
    Malformed(String),
}

impl LpInstance {
    pub fn variable_count(&self) -> usize {
        self.bounds.len()
    }

    fn validate(&self) -> Result<(), LpError> {
        let nv = self.bounds.len();
        if self.objective.len() != nv {
            return Err(LpError::Malformed(format!(
                "{} objective coefficients for {nv} variables",
                self.objective.len()
            )));
        }
        if self.rhs.len() != self.rows.len() {
            return Err(LpError::Malformed(format!(
                "{} right-hand sides for {} rows",
                self.rhs.len(),
                self.rows.len()
            )));
        }
        for (i, row) in self.rows.iter().enumerate() {
            if let Some((j, _)) = row.iter().find(|(j, _)| *j >= nv) {
                return Err(LpError::Malformed(format!(
                    "row {i} references variable {j}"
                )));
            }
        }
        Ok(())
    }

    /// Checks `x` against every constraint and bound.
    pub fn is_feasible(&self, x: &[Q]) -> bool {
        x.len() == self.bounds.len()
            && self
                .bounds
                .iter()
                .zip(x)
                .all(|(b, v)| *b == VarBound::Free || !v.is_negative())
            && self.rows.iter().zip(&self.rhs).all(|(row, rhs)| {
                row.iter().fold(Q::zero(), |acc, (j, a)| acc + a * &x[*j]) == *rhs
            })
    }

    pub fn evaluate(&self, x: &[Q]) -> Q {
        self.objective
            .iter()
            .zip(x)
            .fold(Q::zero(), |acc, (c, v)| acc + c * v)
    }
}

struct Tableau {
    a: Vec<Vec<Q>>,
    b: Vec<Q>,
    basic: Vec<Option<usize>>,
    active: Vec<bool>,
    costs: Vec<Vec<Q>>,
    pivots: usize,
}

impl Tableau {
    /// Pivots on `(r, col)`, updating row `r`, the rows selected by `scope`
    /// and every cost row.
    fn pivot(&mut self, r: usize, col: usize, all_rows: bool) {
        let inv = self.a[r][col].recip();
        let row: Vec<(usize, Q)> = self.a[r]
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, v)| (k, v * &inv))
            .collect();
        for (k, v) in &row {
            self.a[r][*k] = v.clone();
        }
        self.b[r] *= &inv;
        let br = self.b[r].clone();
        for i in 0..self.a.len() {
            if i == r || !(all_rows || self.active[i]) || self.a[i][col].is_zero() {
                continue;
            }
            let f = self.a[i][col].clone();
            let target = &mut self.a[i];
            for (k, v) in &row {
                target[*k] -= &f * v;
            }
            self.b[i] -= &f * &br;
        }
        for cost in self.costs.iter_mut() {
            if cost[col].is_zero() {
                continue;
            }
            let f = cost[col].clone();
            for (k, v) in &row {
                cost[*k] -= &f * v;
            }
        }
        self.basic[r] = Some(col);
        self.pivots += 1;
    }

    /// Bland's rule on cost row `which`, entering only among `eligible`.
    fn run(&mut self, which: usize, eligible: &[bool]) -> Result<(), LpError> {
        loop {
            let Some(col) = (0..eligible.len())
                .find(|&j| eligible[j] && self.costs[which][j].is_negative())
            else {
                return Ok(());
            };
            let mut best: Option<(usize, Q)> = None;
            for i in 0..self.a.len() {
                if !self.active[i] || !self.a[i][col].is_positive() {
                    continue;
                }
                let ratio = &self.b[i] / &self.a[i][col];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basic[i] < self.basic[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((r, _)) = best else {
                return Err(LpError::Unbounded);
            };
            self.pivot(r, col, false);
        }
    }
}

/// Solves `lp` exactly. Deterministic: identical instances give identical
/// bases, solutions and pivot counts.
pub fn solve_lp(lp: &LpInstance) -> Result<LpSolution, LpError> {
    lp.validate()?;
    let nv = lp.bounds.len();
    let m = lp.rows.len();
    let width = nv + m;
    let mut a = vec![vec![Q::zero(); width]; m];
    for (i, row) in lp.rows.iter().enumerate() {
        for (j, v) in row {
            a[i][*j] += v;
        }
    }
    let mut phase2 = vec![Q::zero(); width];
    phase2[..nv].clone_from_slice(&lp.objective);
    let mut t = Tableau {
        a,
        b: lp.rhs.clone(),
        basic: vec![None; m],
        active: vec![true; m],
        costs: vec![phase2],
        pivots: 0,
    };

    // Phase 0: eliminate free variables.
    let mut free_rows = Vec::new();
    for j in (0..nv).filter(|&j| lp.bounds[j] == VarBound::Free) {
        if let Some(r) = (0..m).find(|&r| t.active[r] && !t.a[r][j].is_zero()) {
            t.pivot(r, j, true);
            t.active[r] = false;
            free_rows.push(r);
        }
    }
    let free_snapshot: Vec<(usize, Vec<Q>, Q)> = free_rows
        .iter()
        .map(|&r| (r, t.a[r].clone(), t.b[r].clone()))
        .collect();

    // Phase 1: artificial basis on the remaining rows.
    let mut phase1 = vec![Q::zero(); width];
    for r in (0..m).filter(|&r| t.active[r]) {
        if t.b[r].is_negative() {
            for v in t.a[r].iter_mut() {
                *v = -&*v;
            }
            t.b[r] = -&t.b[r];
        }
        t.a[r][nv + r] = Q::one();
        t.basic[r] = Some(nv + r);
        for j in 0..nv {
            if !t.a[r][j].is_zero() {
                phase1[j] -= &t.a[r][j];
            }
        }
    }
    t.costs.push(phase1);
    let eligible: Vec<bool> = (0..width)
        .map(|j| j < nv && lp.bounds[j] == VarBound::NonNegative)
        .collect();
    t.run(1, &eligible)?;
    let infeasibility = (0..m)
        .filter(|&r| t.active[r] && t.basic[r].is_some_and(|j| j >= nv))
        .fold(Q::zero(), |acc, r| acc + &t.b[r]);
    if infeasibility.is_positive() {
        return Err(LpError::Infeasible);
    }
    for r in 0..m {
        if !t.active[r] || !t.basic[r].is_some_and(|j| j >= nv) {
            continue;
        }
        match (0..nv).find(|&j| eligible[j] && !t.a[r][j].is_zero()) {
            Some(j) => t.pivot(r, j, false),
            None => t.active[r] = false,
        }
    }
    t.costs.pop();

    // Phase 2.
    let is_basic = |t: &Tableau, j: usize| t.basic.contains(&Some(j));
    for j in (0..nv).filter(|&j| lp.bounds[j] == VarBound::Free) {
        if !is_basic(&t, j) && !t.costs[0][j].is_zero() {
            return Err(LpError::Unbounded);
        }
    }
    t.run(0, &eligible)?;

    let mut x = vec![Q::zero(); nv];
    for r in 0..m {
        if let (true, Some(j)) = (t.active[r], t.basic[r]) {
            x[j] = t.b[r].clone();
        }
    }
    for (r, row, rhs) in &free_snapshot {
        let j = t.basic[*r].expect("free rows keep their variable");
        let rest = row
            .iter()
            .enumerate()
            .take(nv)
            .filter(|(k, v)| *k != j && !v.is_zero())
            .fold(Q::zero(), |acc, (k, v)| acc + v * &x[k]);
        x[j] = rhs - rest;
    }
    let mut basis: Vec<usize> = (0..m)
        .filter(|&r| t.active[r] || free_rows.contains(&r))
        .filter_map(|r| t.basic[r])
        .collect();
    basis.sort_unstable();
    Ok(LpSolution {
        value: lp.evaluate(&x),
        x,
        basis,
        pivots: t.pivots,
    })
}
