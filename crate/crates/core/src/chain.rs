//! Sparse chains with exact rational coefficients.

use std::collections::btree_map::{self, BTreeMap};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_q, parse_q, Q};
use crate::scomplex::{AffineSimplex, SimplicialComplex};

/// A finitely supported rational combination of affine `dim`-simplices.
///
/// Zero coefficients are never stored, so two chains are equal exactly when
/// their term maps are equal.
#[derive(Clone, PartialEq, Eq)]
pub struct Chain {
    dim: usize,
    terms: BTreeMap<AffineSimplex, Q>,
}

impl Chain {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn simplex(simplex: impl Into<AffineSimplex>) -> Self {
        let simplex = simplex.into();
        let mut c = Self::zero(simplex.dim());
        c.terms.insert(simplex, Q::one());
        c
    }

    /// Sums the given terms; repeated simplices are added together.
    pub fn from_terms<I, S>(dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, Q)>,
        S: Into<AffineSimplex>,
    {
        let mut c = Self::zero(dim);
        for (s, coeff) in terms {
            let s = s.into();
            if s.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: s.dim(),
                });
            }
            c.add_term(s, coeff);
        }
        Ok(c)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, simplex: &AffineSimplex) -> Q {
        self.terms.get(simplex).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> btree_map::Iter<'_, AffineSimplex, Q> {
        self.terms.iter()
    }

    /// Adds `coeff * simplex` in place. Panics on a dimension mismatch.
    pub fn add_term(&mut self, simplex: AffineSimplex, coeff: Q) {
        assert_eq!(simplex.dim(), self.dim, "simplex dimension");
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(simplex) {
            btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += scalar * other`.
    pub fn add_scaled(&mut self, scalar: &Q, other: &Chain) -> Result<()> {
        self.check_dim(other.dim)?;
        if scalar.is_zero() {
            return Ok(());
        }
        for (s, c) in &other.terms {
            self.add_term(s.clone(), scalar * c);
        }
        Ok(())
    }

    pub fn scale(&self, scalar: &Q) -> Chain {
        if scalar.is_zero() {
            return Chain::zero(self.dim);
        }
        Chain {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(s, c)| (s.clone(), c * scalar))
                .collect(),
        }
    }

    pub fn add(&self, other: &Chain) -> Result<Chain> {
        let mut out = self.clone();
        out.add_scaled(&Q::one(), other)?;
        Ok(out)
    }

    pub fn sub(&self, other: &Chain) -> Result<Chain> {
        let mut out = self.clone();
        out.add_scaled(&-Q::one(), other)?;
        Ok(out)
    }

    pub fn neg(&self) -> Chain {
        self.scale(&-Q::one())
    }

    /// `sum_i scalars[i] * chains[i]`; every chain must have dimension `dim`.
    pub fn linear_combine(dim: usize, scalars: &[Q], chains: &[Chain]) -> Result<Chain> {
        if scalars.len() != chains.len() {
            return Err(Error::LengthMismatch {
                what: "linear combination",
                scalars: scalars.len(),
                chains: chains.len(),
            });
        }
        let mut out = Chain::zero(dim);
        for (a, c) in scalars.iter().zip(chains) {
            out.add_scaled(a, c)?;
        }
        Ok(out)
    }

    /// Linear extension of the `j`-th face map.
    pub fn face_map(&self, j: usize) -> Result<Chain> {
        if self.dim == 0 {
            return Err(Error::ZeroDimensionalFace);
        }
        if j > self.dim {
            return Err(Error::FaceIndexOutOfRange {
                index: j,
                dim: self.dim,
            });
        }
        let mut out = Chain::zero(self.dim - 1);
        for (s, c) in &self.terms {
            out.add_term(s.face(j)?, c.clone());
        }
        Ok(out)
    }

    /// `sum_j (-1)^j face_map(j)`.
    pub fn boundary(&self) -> Result<Chain> {
        if self.dim == 0 {
            return Err(Error::ZeroDimensionalFace);
        }
        let mut out = Chain::zero(self.dim - 1);
        for (s, c) in &self.terms {
            for j in 0..=self.dim {
                let coeff = if j % 2 == 0 { c.clone() } else { -c };
                out.add_term(s.face(j)?, coeff);
            }
        }
        Ok(out)
    }

    /// Cycles are chains with zero boundary; every 0-chain is a cycle.
    pub fn is_cycle(&self) -> bool {
        self.dim == 0 || self.boundary().map(|b| b.is_zero()).unwrap_or(false)
    }

    pub fn l1_norm(&self) -> Q {
        self.terms.values().fold(Q::zero(), |acc, c| acc + c.abs())
    }

    /// Membership in the Moore normalisation: killed by the face maps
    /// `0..dim` (all but the last). Every 0-chain qualifies.
    pub fn is_normalised(&self) -> bool {
        (0..self.dim).all(|j| self.face_map(j).map(|f| f.is_zero()).unwrap_or(false))
    }

    /// Sum of coefficients; the augmentation on 0-chains.
    pub fn coefficient_sum(&self) -> Q {
        self.terms.values().fold(Q::zero(), |acc, c| acc + c)
    }

    /// Union of the supports of all terms, sorted.
    pub fn vertex_support(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self
            .terms
            .keys()
            .flat_map(|s| s.vertices().iter().copied())
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Checks that every term lives in the affine model of `complex`.
    pub fn validate(&self, complex: &SimplicialComplex) -> Result<()> {
        self.terms.keys().try_for_each(|s| complex.check(s))
    }

    fn check_dim(&self, other: usize) -> Result<()> {
        if other != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other,
            });
        }
        Ok(())
    }

    pub fn to_serial(&self) -> Vec<ChainTerm> {
        self.terms
            .iter()
            .map(|(s, c)| ChainTerm {
                simplex: s.vertices().to_vec(),
                coeff: format_q(c),
            })
            .collect()
    }

    /// Rebuilds a chain from serialised terms. An empty list needs `dim`.
    pub fn from_serial(terms: &[ChainTerm], dim: Option<usize>) -> Result<Chain> {
        let dim = match (terms.first(), dim) {
            (_, Some(d)) => d,
            (Some(t), None) if !t.simplex.is_empty() => t.simplex.len() - 1,
            _ => {
                return Err(Error::MalformedChain(
                    "cannot infer the dimension of an empty chain".into(),
                ))
            }
        };
        let mut out = Chain::zero(dim);
        for t in terms {
            if t.simplex.len() != dim + 1 {
                return Err(Error::MalformedChain(format!(
                    "simplex {:?} has {} vertices, expected {}",
                    t.simplex,
                    t.simplex.len(),
                    dim + 1
                )));
            }
            out.add_term(AffineSimplex::new(t.simplex.clone()), parse_q(&t.coeff)?);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_serial()).expect("chain serialisation")
    }

    pub fn from_json(text: &str, dim: Option<usize>) -> Result<Chain> {
        let terms: Vec<ChainTerm> =
            serde_json::from_str(text).map_err(|e| Error::MalformedChain(e.to_string()))?;
        Chain::from_serial(&terms, dim)
    }
}

impl fmt::Debug for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Chain[{}]{{", self.dim)?;
        fmt::Display::fmt(self, f)?;
        write!(f, "}}")
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (s, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if c.is_negative() {
                write!(f, "- {}·{}", -c, s)?;
            } else if i > 0 {
                write!(f, "+ {}·{}", c, s)?;
            } else {
                write!(f, "{}·{}", c, s)?;
            }
        }
        Ok(())
    }
}

/// One serialised term: `{ "simplex": [0, 1], "coeff": "1/2" }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainTerm {
    pub simplex: Vec<u32>,
    pub coeff: String,
}
