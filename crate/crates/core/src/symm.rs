//! Symmetric-group combinatorics and the symmetrisation operator
//!
//! ```text
//! sym_n(σ) = 1/(n+1)! · Σ_{π ∈ Σ_{n+1}} sgn(π) · σ∘Δ(π)
//! ```
//!
//! extended linearly to chains. On the affine model `σ∘Δ(π)` is the tuple
//! `(v_{π(0)}, ..., v_{π(n)})`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;

use crate::chain::Chain;
use crate::error::{Error, Result};
use crate::rational::{factorial, Q};
use crate::scomplex::{AffineSimplex, Permutation};
use crate::DEFAULT_DIM_CAP;

/// All `(n+1)!` permutations of `{0, ..., n}` in lexicographic order of their
/// image tuples, starting from the identity.
pub fn enumerate_permutations(n: usize, cap: usize) -> Result<Vec<Permutation>> {
    if n > cap {
        return Err(Error::DimensionCap { dim: n, cap });
    }
    let mut images: Vec<usize> = (0..=n).collect();
    let mut out = Vec::new();
    loop {
        out.push(Permutation::new(images.clone())?);
        if !next_permutation(&mut images) {
            break;
        }
    }
    Ok(out)
}

fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// The cycle `(j j-1 ... 1 0)` on `{0, ..., n}`: `0 -> j`, `i -> i-1` for
/// `1 <= i <= j`, fixed above `j`. Its sign is `(-1)^j`.
///
/// Deleting position `j` after permuting by `π` equals permuting by `π∘τ_j`
/// and deleting position 0.
pub fn cyclic_tau(j: usize, n: usize) -> Result<Permutation> {
    if j > n {
        return Err(Error::FaceIndexOutOfRange { index: j, dim: n });
    }
    let images = (0..=n)
        .map(|i| match i {
            0 => j,
            i if i <= j => i - 1,
            i => i,
        })
        .collect();
    Permutation::new(images)
}

/// Symmetrisation with a dimension cap and a per-tuple memo table.
///
/// The memo is shared behind a mutex; results do not depend on whether a
/// tuple was cached.
pub struct Symmetriser {
    cap: usize,
    permutations: Mutex<HashMap<usize, Arc<Vec<Permutation>>>>,
    memo: Mutex<HashMap<AffineSimplex, Arc<Chain>>>,
}

impl Default for Symmetriser {
    fn default() -> Self {
        Self::new(DEFAULT_DIM_CAP)
    }
}

impl Symmetriser {
    pub fn new(cap: usize) -> Self {
        Self {
            cap,
            permutations: Mutex::new(HashMap::new()),
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    fn permutations(&self, n: usize) -> Result<Arc<Vec<Permutation>>> {
        if let Some(p) = self.permutations.lock().unwrap().get(&n) {
            return Ok(Arc::clone(p));
        }
        let perms = Arc::new(enumerate_permutations(n, self.cap)?);
        self.permutations
            .lock()
            .unwrap()
            .insert(n, Arc::clone(&perms));
        Ok(perms)
    }

    /// `sym_n` of a single tuple.
    pub fn symmetrise_simplex(&self, simplex: &AffineSimplex) -> Result<Arc<Chain>> {
        let n = simplex.dim();
        if n > self.cap {
            return Err(Error::DimensionCap {
                dim: n,
                cap: self.cap,
            });
        }
        if let Some(c) = self.memo.lock().unwrap().get(simplex) {
            return Ok(Arc::clone(c));
        }
        let weight = Q::new(BigInt::from(1), factorial(n + 1));
        let neg_weight = -weight.clone();
        let mut out = Chain::zero(n);
        for perm in self.permutations(n)?.iter() {
            let coeff = if perm.sign() > 0 {
                weight.clone()
            } else {
                neg_weight.clone()
            };
            out.add_term(simplex.permute(perm)?, coeff);
        }
        let out = Arc::new(out);
        self.memo
            .lock()
            .unwrap()
            .insert(simplex.clone(), Arc::clone(&out));
        Ok(out)
    }

    pub fn symmetrise(&self, chain: &Chain) -> Result<Chain> {
        if chain.dim() > self.cap {
            return Err(Error::DimensionCap {
                dim: chain.dim(),
                cap: self.cap,
            });
        }
        let mut out = Chain::zero(chain.dim());
        for (s, c) in chain.terms() {
            out.add_scaled(c, &*self.symmetrise_simplex(s)?)?;
        }
        Ok(out)
    }
}

/// Symmetrises with a fresh default-capped [`Symmetriser`].
pub fn symmetrise(chain: &Chain) -> Result<Chain> {
    Symmetriser::default().symmetrise(chain)
}
