//! Reference computations that share no code with the library: plain
//! `BigRational` dense linear algebra, a textbook two-phase tableau simplex
//! with artificial variables, brute-force tuple enumeration and classical
//! oriented simplicial homology.

#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type R = BigRational;

pub fn r(n: i64, d: i64) -> R {
    R::new(BigInt::from(n), BigInt::from(d))
}

/// A complex given by its facets, vertices `0..vertex_count`.
pub struct Model {
    pub vertex_count: u32,
    faces: BTreeSet<Vec<u32>>,
}

impl Model {
    pub fn new(vertex_count: u32, facets: &[Vec<u32>]) -> Self {
        let mut faces = BTreeSet::new();
        for v in 0..vertex_count {
            faces.insert(vec![v]);
        }
        for f in facets {
            let mut f = f.clone();
            f.sort();
            f.dedup();
            // every non-empty subset
            for mask in 1u32..(1 << f.len()) {
                let sub: Vec<u32> = (0..f.len())
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| f[i])
                    .collect();
                faces.insert(sub);
            }
        }
        Self {
            vertex_count,
            faces,
        }
    }

    pub fn has_support(&self, tuple: &[u32]) -> bool {
        let mut s = tuple.to_vec();
        s.sort();
        s.dedup();
        self.faces.contains(&s)
    }

    /// All `(n+1)`-tuples over the vertices whose support is a face, in
    /// lexicographic order.
    pub fn tuples(&self, n: usize) -> Vec<Vec<u32>> {
        let v = self.vertex_count as u64;
        let total = v.pow(n as u32 + 1);
        let mut out = Vec::new();
        for code in 0..total {
            let mut t = vec![0u32; n + 1];
            let mut c = code;
            for i in (0..=n).rev() {
                t[i] = (c % v) as u32;
                c /= v;
            }
            if self.has_support(&t) {
                out.push(t);
            }
        }
        out
    }

    pub fn simplices(&self, k: usize) -> Vec<Vec<u32>> {
        self.faces.iter().filter(|f| f.len() == k + 1).cloned().collect()
    }
}

fn delete(t: &[u32], j: usize) -> Vec<u32> {
    let mut t = t.to_vec();
    t.remove(j);
    t
}

fn sign(j: usize) -> R {
    if j % 2 == 0 {
        R::one()
    } else {
        -R::one()
    }
}

fn position(list: &[Vec<u32>], t: &[u32]) -> usize {
    list.binary_search_by(|x| x.as_slice().cmp(t))
        .expect("face of a basis element is in the basis")
}

/// Dense matrix of the j-th face map (`None`: alternating sum) from
/// `n`-tuples to `(n-1)`-tuples.
pub fn face_matrix(model: &Model, n: usize, j: Option<usize>) -> Vec<Vec<R>> {
    let rows = model.tuples(n - 1);
    let cols = model.tuples(n);
    let mut m = vec![vec![R::zero(); cols.len()]; rows.len()];
    for (c, t) in cols.iter().enumerate() {
        let js: Vec<usize> = match j {
            Some(j) => vec![j],
            None => (0..=n).collect(),
        };
        for i in js {
            let coeff = if j.is_some() { R::one() } else { sign(i) };
            m[position(&rows, &delete(t, i))][c] += coeff;
        }
    }
    m
}

/// Gauss-Jordan on a copy; returns (reduced rows, pivot columns).
pub fn rref(mut m: Vec<Vec<R>>) -> (Vec<Vec<R>>, Vec<usize>) {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r0 = 0;
    for c in 0..cols {
        if r0 == rows {
            break;
        }
        let Some(p) = (r0..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r0, p);
        let inv = m[r0][c].recip();
        for x in m[r0].iter_mut() {
            *x *= &inv;
        }
        let prow = m[r0].clone();
        let nz: Vec<usize> = (0..cols).filter(|&k| !prow[k].is_zero()).collect();
        for i in 0..rows {
            if i != r0 && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for &k in &nz {
                    let d = &f * &prow[k];
                    m[i][k] -= d;
                }
            }
        }
        pivots.push(c);
        r0 += 1;
    }
    (m, pivots)
}

pub fn rank(m: Vec<Vec<R>>) -> usize {
    rref(m).1.len()
}

pub fn transpose(m: &[Vec<R>], cols: usize) -> Vec<Vec<R>> {
    (0..cols)
        .map(|c| m.iter().map(|row| row[c].clone()).collect())
        .collect()
}

/// Basis of `{x : m x = 0}`.
pub fn null_space(m: Vec<Vec<R>>, cols: usize) -> Vec<Vec<R>> {
    let (red, pivots) = rref(m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![R::zero(); cols];
            v[f] = R::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -red[i][f].clone();
            }
            v
        })
        .collect()
}

/// Betti number of the classical oriented simplicial chain complex.
pub fn classical_betti(model: &Model, n: usize) -> usize {
    let boundary_rank = |k: usize| -> usize {
        if k == 0 {
            return 0;
        }
        let rows = model.simplices(k - 1);
        let cols = model.simplices(k);
        if cols.is_empty() || rows.is_empty() {
            return 0;
        }
        let mut m = vec![vec![R::zero(); cols.len()]; rows.len()];
        for (c, s) in cols.iter().enumerate() {
            for i in 0..=k {
                m[position(&rows, &delete(s, i))][c] += sign(i);
            }
        }
        rank(m)
    };
    model.simplices(n).len() - boundary_rank(n) - boundary_rank(n + 1)
}

#[derive(Debug, PartialEq)]
pub enum LpFailure {
    Infeasible,
    Unbounded,
}

/// `min c·x` subject to `A x = b`, `x >= 0`. Full tableau, one artificial
/// per row, Bland's rule in both phases.
pub fn simplex_min(a: &[Vec<R>], b: &[R], c: &[R]) -> Result<(R, Vec<R>), LpFailure> {
    let m = a.len();
    let n = c.len();
    let width = n + m + 1;
    let rhs = n + m;
    let mut t: Vec<Vec<R>> = Vec::with_capacity(m);
    for i in 0..m {
        let flip = b[i].is_negative();
        let mut row = vec![R::zero(); width];
        for j in 0..n {
            row[j] = if flip { -a[i][j].clone() } else { a[i][j].clone() };
        }
        row[n + i] = R::one();
        row[rhs] = b[i].abs();
        t.push(row);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // phase one: minimise the sum of artificials
    let mut cost = vec![R::zero(); width];
    for row in &t {
        for j in 0..n {
            cost[j] -= &row[j];
        }
        cost[rhs] -= &row[rhs];
    }
    run(&mut t, &mut basis, &mut cost, n + m)?;
    if !cost[rhs].is_zero() {
        return Err(LpFailure::Infeasible);
    }

    // drive remaining artificials out, dropping redundant rows
    let mut i = 0;
    while i < t.len() {
        if basis[i] >= n {
            match (0..n).find(|&j| !t[i][j].is_zero()) {
                Some(j) => {
                    pivot(&mut t, &mut basis, &mut cost, i, j);
                    i += 1;
                }
                None => {
                    t.remove(i);
                    basis.remove(i);
                }
            }
        } else {
            i += 1;
        }
    }

    // phase two on the original objective, artificials barred
    let mut cost = vec![R::zero(); width];
    cost[..n].clone_from_slice(c);
    for (i, &bj) in basis.iter().enumerate() {
        if !cost[bj].is_zero() {
            let f = cost[bj].clone();
            for k in 0..width {
                let d = &f * &t[i][k];
                cost[k] -= d;
            }
        }
    }
    run(&mut t, &mut basis, &mut cost, n)?;
    let mut x = vec![R::zero(); n];
    for (i, &bj) in basis.iter().enumerate() {
        x[bj] = t[i][rhs].clone();
    }
    let value = c.iter().zip(&x).map(|(ci, xi)| ci * xi).sum();
    Ok((value, x))
}

fn pivot(t: &mut [Vec<R>], basis: &mut [usize], cost: &mut [R], r: usize, col: usize) {
    let inv = t[r][col].recip();
    for x in t[r].iter_mut() {
        *x *= &inv;
    }
    let prow = t[r].clone();
    let nz: Vec<usize> = (0..prow.len()).filter(|&k| !prow[k].is_zero()).collect();
    for (i, row) in t.iter_mut().enumerate() {
        if i != r && !row[col].is_zero() {
            let f = row[col].clone();
            for &k in &nz {
                let d = &f * &prow[k];
                row[k] -= d;
            }
        }
    }
    if !cost[col].is_zero() {
        let f = cost[col].clone();
        for &k in &nz {
            let d = &f * &prow[k];
            cost[k] -= d;
        }
    }
    basis[r] = col;
}

fn run(
    t: &mut [Vec<R>],
    basis: &mut [usize],
    cost: &mut [R],
    eligible: usize,
) -> Result<(), LpFailure> {
    let rhs = cost.len() - 1;
    loop {
        let Some(col) = (0..eligible).find(|&j| cost[j].is_negative()) else {
            return Ok(());
        };
        let mut best: Option<(usize, R)> = None;
        for i in 0..t.len() {
            if t[i][col].is_positive() {
                let ratio = &t[i][rhs] / &t[i][col];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && basis[i] < basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = best else {
            return Err(LpFailure::Unbounded);
        };
        pivot(t, basis, cost, r, col);
    }
}

/// Minimum l1 norm over cycles homologous to `rep` (an `n`-chain given as
/// tuple/coefficient pairs), optionally restricted to normalised cycles.
///
/// Variables are `z = p - q`; the class is pinned by `φ(z) = φ(rep)` for a
/// basis of the left kernel of `∂_{n+1}`.
pub fn class_seminorm(model: &Model, n: usize, rep: &[(Vec<u32>, R)], normalised: bool) -> R {
    let basis = model.tuples(n);
    let k = basis.len();
    let mut c = vec![R::zero(); k];
    for (t, v) in rep {
        c[position(&basis, t)] += v;
    }
    let up = face_matrix(model, n + 1, None);
    let up_cols = up.first().map_or(0, |r| r.len());
    let cocycles = null_space(transpose(&up, up_cols), k);

    let mut rows: Vec<Vec<R>> = Vec::new();
    let mut rhs = Vec::new();
    for phi in &cocycles {
        rows.push(phi.clone());
        rhs.push(phi.iter().zip(&c).map(|(a, b)| a * b).sum());
    }
    if normalised {
        for j in 0..n {
            for row in face_matrix(model, n, Some(j)) {
                rows.push(row);
                rhs.push(R::zero());
            }
        }
    }
    let a: Vec<Vec<R>> = rows
        .iter()
        .map(|row| row.iter().cloned().chain(row.iter().map(|x| -x)).collect())
        .collect();
    let cost = vec![R::one(); 2 * k];
    simplex_min(&a, &rhs, &cost).expect("class program is feasible and bounded").0
}

/// Every basic solution of `A x = b, x >= 0` by trying all column subsets;
/// only for tiny programs.
pub fn brute_force_min(a: &[Vec<R>], b: &[R], c: &[R]) -> Option<R> {
    let m = a.len();
    let n = c.len();
    let rk = rank(a.to_vec());
    let mut best: Option<R> = None;
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != rk {
            continue;
        }
        let cols: Vec<usize> = (0..n).filter(|j| mask & (1 << j) != 0).collect();
        let aug: Vec<Vec<R>> = (0..m)
            .map(|i| {
                cols.iter()
                    .map(|&j| a[i][j].clone())
                    .chain([b[i].clone()])
                    .collect()
            })
            .collect();
        let (red, pivots) = rref(aug);
        if pivots.len() != rk || pivots.contains(&cols.len()) {
            continue;
        }
        let mut x = vec![R::zero(); n];
        for (i, &p) in pivots.iter().enumerate() {
            x[cols[p]] = red[i][cols.len()].clone();
        }
        if x.iter().any(|v| v.is_negative()) {
            continue;
        }
        let v: R = c.iter().zip(&x).map(|(ci, xi)| ci * xi).sum();
        if best.as_ref().is_none_or(|b| v < *b) {
            best = Some(v);
        }
    }
    best
}
