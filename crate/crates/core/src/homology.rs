//! Exact rational linear algebra on the affine-model chain complex: boundary
//! matrices, cycle and boundary spaces, Betti numbers, homology generators and
//! homologousness witnesses.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};

use crate::chain::Chain;
use crate::error::{Error, Result};
use crate::rational::Q;
use crate::scomplex::{AffineSimplex, SimplicialComplex};
use crate::DEFAULT_DIM_CAP;

/// Column-sparse rational matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub columns: Vec<Vec<(usize, Q)>>,
}

impl SparseMatrix {
    pub fn column(&self, j: usize) -> &[(usize, Q)] {
        &self.columns[j]
    }

    pub fn to_dense_rows(&self) -> Vec<Vec<Q>> {
        let mut out = vec![vec![Q::zero(); self.cols]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col {
                out[*i][j] = v.clone();
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        Echelon::reduce(self.to_dense_rows(), self.cols, false).rank()
    }
}

/// Matrix of `∂: C_n -> C_{n-1}` in the canonical bases `basis(n)` (columns)
/// and `basis(n-1)` (rows).
pub fn boundary_matrix(complex: &SimplicialComplex, n: usize) -> Result<SparseMatrix> {
    if n == 0 {
        return Err(Error::ZeroDimensionalFace);
    }
    let source = complex.basis(n);
    let target = complex.basis(n - 1);
    let mut columns = Vec::with_capacity(source.len());
    for s in &source.simplices {
        let bd = Chain::simplex(s.clone()).boundary()?;
        let mut col: Vec<(usize, Q)> = bd
            .terms()
            .map(|(t, c)| {
                let i = target
                    .index_of(t)
                    .expect("faces of model simplices are model simplices");
                (i, c.clone())
            })
            .collect();
        col.sort_by_key(|(i, _)| *i);
        columns.push(col);
    }
    Ok(SparseMatrix {
        rows: target.len(),
        cols: source.len(),
        columns,
    })
}

/// Reduced row echelon form of a dense matrix, optionally with the row
/// transformation `T` such that `T·A = R`.
///
/// Pivots are chosen as the first non-zero entry, scanning columns left to
/// right and rows top to bottom, so the result is deterministic.
#[derive(Clone, Debug)]
pub struct Echelon {
    cols: usize,
    rref: Vec<Vec<Q>>,
    pivots: Vec<usize>,
    transform: Option<Vec<Vec<Q>>>,
}

impl Echelon {
    pub fn reduce(mut rows: Vec<Vec<Q>>, cols: usize, track: bool) -> Self {
        let m = rows.len();
        if track {
            for (i, row) in rows.iter_mut().enumerate() {
                row.extend((0..m).map(|k| if k == i { Q::one() } else { Q::zero() }));
            }
        }
        let width = if track { cols + m } else { cols };
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..cols {
            if r == m {
                break;
            }
            let Some(p) = (r..m).find(|&i| !rows[i][col].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let inv = rows[r][col].recip();
            let pivot_row: Vec<(usize, Q)> = (col..width)
                .filter(|&k| !rows[r][k].is_zero())
                .map(|k| (k, &rows[r][k] * &inv))
                .collect();
            for (k, v) in &pivot_row {
                rows[r][*k] = v.clone();
            }
            for i in 0..m {
                if i == r || rows[i][col].is_zero() {
                    continue;
                }
                let factor = rows[i][col].clone();
                let row = &mut rows[i];
                for (k, v) in &pivot_row {
                    row[*k] -= &factor * v;
                }
            }
            pivots.push(col);
            r += 1;
        }
        let transform = track.then(|| {
            rows.iter_mut()
                .map(|row| row.split_off(cols))
                .collect::<Vec<_>>()
        });
        Self {
            cols,
            rref: rows,
            pivots,
            transform,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<Q>] {
        &self.rref
    }

    /// Basis of the null space, one vector per non-pivot column in
    /// increasing order.
    pub fn kernel(&self) -> Vec<Vec<Q>> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![Q::zero(); self.cols];
                v[f] = Q::one();
                for (i, &p) in self.pivots.iter().enumerate() {
                    let a = &self.rref[i][f];
                    if !a.is_zero() {
                        v[p] = -a;
                    }
                }
                v
            })
            .collect()
    }

    /// Rows of `T` spanning the left null space (only with tracking).
    pub fn left_kernel(&self) -> Option<&[Vec<Q>]> {
        self.transform.as_ref().map(|t| &t[self.rank()..])
    }

    /// Solves `A x = b` for sparse `b` given as `(row, value)` pairs.
    /// `Err(i)` names a left null vector (row `i` of `T`) with non-zero
    /// pairing against `b`.
    pub fn solve(&self, rhs: &[(usize, Q)]) -> Option<std::result::Result<Vec<Q>, usize>> {
        let t = self.transform.as_ref()?;
        let apply = |row: &Vec<Q>| {
            rhs.iter()
                .fold(Q::zero(), |acc, (k, v)| acc + &row[*k] * v)
        };
        for (i, row) in t.iter().enumerate().skip(self.rank()) {
            if !apply(row).is_zero() {
                return Some(Err(i));
            }
        }
        let mut x = vec![Q::zero(); self.cols];
        for (i, &p) in self.pivots.iter().enumerate() {
            x[p] = apply(&t[i]);
        }
        Some(Ok(x))
    }
}

/// A linearly independent family of `dim`-chains.
#[derive(Clone, Debug, PartialEq)]
pub struct SubspaceBasis {
    pub dim: usize,
    pub vectors: Vec<Chain>,
}

impl SubspaceBasis {
    pub fn rank(&self) -> usize {
        self.vectors.len()
    }
}

/// Outcome of a homologousness query.
#[derive(Clone, Debug, PartialEq)]
pub enum Homologous {
    /// `boundary(witness) = a - b`.
    Witness(Chain),
    /// A cocycle `φ` (coefficients on the `n`-simplex basis) with
    /// `φ ∘ ∂ = 0` and `φ(a - b) = pairing ≠ 0`.
    Refusal { cocycle: Chain, pairing: Q },
}

impl Homologous {
    pub fn witness(&self) -> Option<&Chain> {
        match self {
            Homologous::Witness(w) => Some(w),
            Homologous::Refusal { .. } => None,
        }
    }

    pub fn is_homologous(&self) -> bool {
        matches!(self, Homologous::Witness(_))
    }
}

/// Homology computations for one complex, with cached eliminations.
pub struct HomologyEngine<'a> {
    complex: &'a SimplicialComplex,
    cap: usize,
    echelons: Mutex<HashMap<usize, Arc<Echelon>>>,
}

impl<'a> HomologyEngine<'a> {
    pub fn new(complex: &'a SimplicialComplex) -> Self {
        Self::with_cap(complex, DEFAULT_DIM_CAP)
    }

    pub fn with_cap(complex: &'a SimplicialComplex, cap: usize) -> Self {
        Self {
            complex,
            cap,
            echelons: Mutex::new(HashMap::new()),
        }
    }

    pub fn complex(&self) -> &'a SimplicialComplex {
        self.complex
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    fn check_cap(&self, n: usize) -> Result<()> {
        if n > self.cap {
            return Err(Error::DimensionCap { dim: n, cap: self.cap });
        }
        Ok(())
    }

    /// Tracked RREF of the boundary matrix `∂_n`.
    pub fn echelon(&self, n: usize) -> Result<Arc<Echelon>> {
        self.check_cap(n)?;
        if let Some(e) = self.echelons.lock().unwrap().get(&n) {
            return Ok(Arc::clone(e));
        }
        let m = boundary_matrix(self.complex, n)?;
        let e = Arc::new(Echelon::reduce(m.to_dense_rows(), m.cols, true));
        self.echelons.lock().unwrap().insert(n, Arc::clone(&e));
        Ok(e)
    }

    pub fn boundary_rank(&self, n: usize) -> Result<usize> {
        if n == 0 {
            return Ok(0);
        }
        Ok(self.echelon(n)?.rank())
    }

    fn to_chain(&self, n: usize, coords: &[Q]) -> Chain {
        let basis = self.complex.basis(n);
        let mut c = Chain::zero(n);
        for (s, v) in basis.simplices.iter().zip(coords) {
            c.add_term(s.clone(), v.clone());
        }
        c
    }

    fn coords(&self, chain: &Chain) -> Result<Vec<(usize, Q)>> {
        let basis = self.complex.basis(chain.dim());
        chain
            .terms()
            .map(|(s, c)| {
                basis
                    .index_of(s)
                    .map(|i| (i, c.clone()))
                    .ok_or_else(|| Error::NotInComplex(s.vertices().to_vec()))
            })
            .collect()
    }

    /// Kernel of `∂_n`; all of `C_0` when `n = 0`.
    pub fn cycle_space(&self, n: usize) -> Result<SubspaceBasis> {
        self.check_cap(n)?;
        let vectors = if n == 0 {
            self.complex
                .basis(0)
                .simplices
                .iter()
                .map(|s| Chain::simplex(s.clone()))
                .collect()
        } else {
            self.echelon(n)?
                .kernel()
                .iter()
                .map(|v| self.to_chain(n, v))
                .collect()
        };
        Ok(SubspaceBasis { dim: n, vectors })
    }

    /// Image of `∂_{n+1}`, spanned by the pivot columns of its elimination.
    pub fn boundary_space(&self, n: usize) -> Result<SubspaceBasis> {
        self.check_cap(n + 1)?;
        let e = self.echelon(n + 1)?;
        let source = self.complex.basis(n + 1);
        let vectors = e
            .pivot_columns()
            .iter()
            .map(|&j| Chain::simplex(source.simplices[j].clone()).boundary())
            .collect::<Result<_>>()?;
        Ok(SubspaceBasis { dim: n, vectors })
    }

    pub fn betti(&self, n: usize) -> Result<usize> {
        self.check_cap(n + 1)?;
        let cycles = if n == 0 {
            self.complex.basis(0).len()
        } else {
            self.complex.basis(n).len() - self.boundary_rank(n)?
        };
        Ok(cycles - self.boundary_rank(n + 1)?)
    }

    /// Cycles completing a basis of the boundary space to one of the cycle
    /// space, taken greedily from [`cycle_space`](Self::cycle_space) in order.
    /// Their classes form a basis of `H_n`.
    pub fn generators(&self, n: usize) -> Result<Vec<Chain>> {
        let dim = self.complex.basis(n).len();
        let mut span = SpanReducer::new(dim);
        for b in self.boundary_space(n)?.vectors {
            span.insert(self.dense(&b)?);
        }
        let mut out = Vec::new();
        for z in self.cycle_space(n)?.vectors {
            if span.insert(self.dense(&z)?) {
                out.push(z);
            }
        }
        Ok(out)
    }

    fn dense(&self, chain: &Chain) -> Result<Vec<Q>> {
        let mut v = vec![Q::zero(); self.complex.basis(chain.dim()).len()];
        for (i, c) in self.coords(chain)? {
            v[i] = c;
        }
        Ok(v)
    }

    /// Decides whether the cycles `a` and `b` are homologous.
    ///
    /// If the union of all vertices in `a - b` spans a face, the cone from
    /// its smallest vertex is tried first; otherwise (or if the cone fails)
    /// the cached elimination of `∂_{n+1}` is used, which also yields the
    /// refusal certificate.
    pub fn homologous(&self, a: &Chain, b: &Chain) -> Result<Homologous> {
        if a.dim() != b.dim() {
            return Err(Error::DimensionMismatch {
                expected: a.dim(),
                found: b.dim(),
            });
        }
        let n = a.dim();
        for c in [a, b] {
            c.validate(self.complex)?;
            if !c.is_cycle() {
                return Err(Error::NotACycle(n));
            }
        }
        let diff = a.sub(b)?;
        if diff.is_zero() {
            return Ok(Homologous::Witness(Chain::zero(n + 1)));
        }
        if let Some(w) = cone_witness(self.complex, &diff) {
            return Ok(Homologous::Witness(w));
        }
        self.check_cap(n + 1)?;
        let e = self.echelon(n + 1)?;
        match e.solve(&self.coords(&diff)?).expect("tracked elimination") {
            Ok(x) => Ok(Homologous::Witness(self.to_chain(n + 1, &x))),
            Err(row) => {
                let cocycle = self.to_chain(n, &e.transform.as_ref().unwrap()[row]);
                let pairing = pair(&cocycle, &diff);
                Ok(Homologous::Refusal { cocycle, pairing })
            }
        }
    }
}

/// `Σ_σ φ(σ)·c(σ)`.
pub fn pair(cochain: &Chain, chain: &Chain) -> Q {
    chain
        .terms()
        .fold(Q::zero(), |acc, (s, c)| acc + cochain.coeff(s) * c)
}

/// Cone of `cycle` from the smallest vertex of its support, returned only if
/// the whole support is a face and the cone's boundary equals `cycle`.
pub fn cone_witness(complex: &SimplicialComplex, cycle: &Chain) -> Option<Chain> {
    let support = cycle.vertex_support();
    let &apex = support.first()?;
    if !complex.is_face(&support) {
        return None;
    }
    let mut w = Chain::zero(cycle.dim() + 1);
    for (s, c) in cycle.terms() {
        let mut v = Vec::with_capacity(s.dim() + 2);
        v.push(apex);
        v.extend_from_slice(s.vertices());
        w.add_term(AffineSimplex::new(v), c.clone());
    }
    (w.boundary().ok()? == *cycle).then_some(w)
}

/// Incremental row-echelon span used to test linear independence.
struct SpanReducer {
    rows: Vec<(usize, Vec<Q>)>,
    dim: usize,
}

impl SpanReducer {
    fn new(dim: usize) -> Self {
        Self {
            rows: Vec::new(),
            dim,
        }
    }

    /// Inserts `v` and reports whether it was independent of the span.
    fn insert(&mut self, mut v: Vec<Q>) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (k, r) in row.iter().enumerate() {
                if !r.is_zero() {
                    v[k] -= &f * r;
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        // keep existing rows reduced at the new pivot
        for (_, row) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (k, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    row[k] -= &f * x;
                }
            }
        }
        self.rows.push((p, v));
        true
    }
}
