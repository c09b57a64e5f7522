//! The l1 semi-norm and the normalised l1 semi-norm of a homology class, as
//! exact linear programs over the affine model.
//!
//! For a cycle `c` of dimension `n` both programs minimise `‖z‖₁` over cycles
//! `z` homologous to `c`, written as `z = p - q` with `p, q ≥ 0` and objective
//! `Σ (p + q)`. The normalised program adds `∂_j z = 0` for `j < n`.
//!
//! The homology constraint `z - c ∈ im ∂_{n+1}` has two encodings:
//!
//! - [`Encoding::BoundaryVariables`]: free variables `b` with `z = c + ∂b`.
//! - [`Encoding::Cocycles`]: `φ(z) = φ(c)` for a basis of the left kernel of
//!   `∂_{n+1}`, taken from the cached elimination in [`HomologyEngine`]. This
//!   is what eliminating `b` by pivoting produces, done once per complex and
//!   dimension instead of once per program.

pub mod lp;

use num_traits::Zero;
use serde::Serialize;

pub use lp::{solve_lp, LpError, LpInstance, LpSolution, VarBound};

use crate::chain::{Chain, ChainTerm};
use crate::error::{Error, Result};
use crate::homology::{HomologyEngine, Homologous};
use crate::rational::{format_q, qi, Q};
use crate::scomplex::SimplicialComplex;
use crate::symm::Symmetriser;
use crate::DEFAULT_DIM_CAP;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Encoding {
    #[default]
    Cocycles,
    BoundaryVariables,
}

/// An optimal cycle for one of the two programs.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassOptimum {
    pub value: Q,
    pub chain: Chain,
    pub solution: LpSolution,
}

/// Both semi-norms of one class, the optima, and the symmetrised optimum.
#[derive(Clone, Debug, PartialEq)]
pub struct NormReport {
    pub class_representative: Chain,
    pub seminorm: Q,
    pub normalised_seminorm: Q,
    pub optimal_chain: Chain,
    pub optimal_normalised_chain: Chain,
    /// `sym(optimal_chain)`: a normalised cycle in the same class.
    pub symmetrised_optimum: Chain,
    pub symmetrised_norm: Q,
    /// `max(1, 2^(n-1))`.
    pub equivalence_factor: Q,
}

/// Serialisable form of [`NormReport`] with exact fraction strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormReportDoc {
    pub dim: usize,
    pub seminorm: String,
    pub normalised_seminorm: String,
    pub equal: bool,
    pub symmetrised_norm: String,
    pub equivalence_factor: String,
    pub class_representative: Vec<ChainTerm>,
    pub optimal_chain: Vec<ChainTerm>,
    pub optimal_normalised_chain: Vec<ChainTerm>,
    pub symmetrised_optimum: Vec<ChainTerm>,
}

impl NormReport {
    pub fn dim(&self) -> usize {
        self.class_representative.dim()
    }

    pub fn to_doc(&self) -> NormReportDoc {
        NormReportDoc {
            dim: self.dim(),
            seminorm: format_q(&self.seminorm),
            normalised_seminorm: format_q(&self.normalised_seminorm),
            equal: self.seminorm == self.normalised_seminorm,
            symmetrised_norm: format_q(&self.symmetrised_norm),
            equivalence_factor: format_q(&self.equivalence_factor),
            class_representative: self.class_representative.to_serial(),
            optimal_chain: self.optimal_chain.to_serial(),
            optimal_normalised_chain: self.optimal_normalised_chain.to_serial(),
            symmetrised_optimum: self.symmetrised_optimum.to_serial(),
        }
    }
}

/// `max(1, 2^(n-1))`.
pub fn equivalence_factor(n: usize) -> Q {
    if n <= 1 {
        qi(1)
    } else {
        Q::from_integer(num_bigint::BigInt::from(2).pow(n as u32 - 1))
    }
}

/// Solves the two class-wise programs for one complex.
pub struct NormSolver<'a> {
    homology: HomologyEngine<'a>,
    symmetriser: Symmetriser,
    encoding: Encoding,
}

impl<'a> NormSolver<'a> {
    pub fn new(complex: &'a SimplicialComplex) -> Self {
        Self::with_cap(complex, DEFAULT_DIM_CAP)
    }

    pub fn with_cap(complex: &'a SimplicialComplex, cap: usize) -> Self {
        Self {
            homology: HomologyEngine::with_cap(complex, cap),
            symmetriser: Symmetriser::new(cap),
            encoding: Encoding::default(),
        }
    }

    pub fn with_encoding(mut self, encoding: Encoding) -> Self {
        self.encoding = encoding;
        self
    }

    pub fn homology(&self) -> &HomologyEngine<'a> {
        &self.homology
    }

    pub fn symmetriser(&self) -> &Symmetriser {
        &self.symmetriser
    }

    fn complex(&self) -> &'a SimplicialComplex {
        self.homology.complex()
    }

    fn check_cycle(&self, c: &Chain) -> Result<()> {
        let n = c.dim();
        if n + 1 > self.homology.cap() {
            return Err(Error::DimensionCap {
                dim: n + 1,
                cap: self.homology.cap(),
            });
        }
        c.validate(self.complex())?;
        if !c.is_cycle() {
            return Err(Error::NotACycle(n));
        }
        Ok(())
    }

    /// The program for the class of `c`; `normalised` adds the Moore
    /// constraints. Variables are `[b (free, boundary encoding only) | p | q]`.
    pub fn class_lp(&self, c: &Chain, normalised: bool) -> Result<LpInstance> {
        self.check_cycle(c)?;
        let k = self.complex();
        let n = c.dim();
        let basis = k.basis(n);
        let len = basis.len();
        let offset = match self.encoding {
            Encoding::Cocycles => 0,
            Encoding::BoundaryVariables => k.basis(n + 1).len(),
        };
        let p = |i: usize| offset + i;
        let q = |i: usize| offset + len + i;
        let mut rows: Vec<Vec<(usize, Q)>> = Vec::new();
        let mut rhs = Vec::new();
        let one = qi(1);
        let minus_one = qi(-1);

        match self.encoding {
            Encoding::Cocycles => {
                let e = self.homology.echelon(n + 1)?;
                let coords: Vec<Q> = basis.simplices.iter().map(|s| c.coeff(s)).collect();
                for phi in e.left_kernel().expect("tracked elimination") {
                    let mut row = Vec::new();
                    let mut value = Q::zero();
                    for (i, a) in phi.iter().enumerate() {
                        if a.is_zero() {
                            continue;
                        }
                        row.push((p(i), a.clone()));
                        row.push((q(i), -a));
                        value += a * &coords[i];
                    }
                    if !row.is_empty() {
                        rows.push(row);
                        rhs.push(value);
                    }
                }
            }
            Encoding::BoundaryVariables => {
                // p_σ - q_σ - Σ_τ ∂[σ,τ] b_τ = c_σ
                let mut by_row: Vec<Vec<(usize, Q)>> = (0..len)
                    .map(|i| vec![(p(i), one.clone()), (q(i), minus_one.clone())])
                    .collect();
                for (t, tau) in k.basis(n + 1).simplices.iter().enumerate() {
                    for (s, coeff) in Chain::simplex(tau.clone()).boundary()?.terms() {
                        let i = basis.index_of(s).expect("faces stay in the model");
                        by_row[i].push((t, -coeff));
                    }
                }
                for (i, row) in by_row.into_iter().enumerate() {
                    rows.push(row);
                    rhs.push(c.coeff(&basis.simplices[i]));
                }
            }
        }

        if normalised && n > 0 {
            let target = k.basis(n - 1);
            for j in 0..n {
                let mut by_face: Vec<Vec<(usize, Q)>> = vec![Vec::new(); target.len()];
                for (i, s) in basis.simplices.iter().enumerate() {
                    let f = target.index_of(&s.face(j)?).expect("faces stay in the model");
                    by_face[f].push((p(i), one.clone()));
                    by_face[f].push((q(i), minus_one.clone()));
                }
                for row in by_face.into_iter().filter(|r| !r.is_empty()) {
                    rows.push(row);
                    rhs.push(Q::zero());
                }
            }
        }

        let mut bounds = vec![VarBound::Free; offset];
        bounds.extend(std::iter::repeat_n(VarBound::NonNegative, 2 * len));
        let mut objective = vec![Q::zero(); offset];
        objective.extend(std::iter::repeat_n(one, 2 * len));
        Ok(LpInstance {
            objective,
            rows,
            rhs,
            bounds,
        })
    }

    fn optimise(&self, c: &Chain, normalised: bool) -> Result<ClassOptimum> {
        let lp = self.class_lp(c, normalised)?;
        let solution = solve_lp(&lp)?;
        let n = c.dim();
        let basis = self.complex().basis(n);
        let offset = lp.variable_count() - 2 * basis.len();
        let mut chain = Chain::zero(n);
        for (i, s) in basis.simplices.iter().enumerate() {
            let z = &solution.x[offset + i] - &solution.x[offset + basis.len() + i];
            chain.add_term(s.clone(), z);
        }
        Ok(ClassOptimum {
            value: solution.value.clone(),
            chain,
            solution,
        })
    }

    /// `min ‖c + ∂b‖₁` over all `(n+1)`-chains `b`.
    pub fn min_l1_in_class(&self, c: &Chain) -> Result<ClassOptimum> {
        self.optimise(c, false)
    }

    /// The same minimum over normalised cycles only.
    pub fn min_l1_normalised(&self, c: &Chain) -> Result<ClassOptimum> {
        self.optimise(c, true)
    }

    /// Runs both programs and the symmetrisation route, failing hard on any
    /// violated relation.
    pub fn verify_equality(&self, c: &Chain) -> Result<NormReport> {
        let plain = self.min_l1_in_class(c)?;
        let normalised = self.min_l1_normalised(c)?;
        let sym = self.symmetriser.symmetrise(&plain.chain)?;
        let report = NormReport {
            class_representative: c.clone(),
            seminorm: plain.value.clone(),
            normalised_seminorm: normalised.value.clone(),
            symmetrised_norm: sym.l1_norm(),
            symmetrised_optimum: sym,
            optimal_chain: plain.chain,
            optimal_normalised_chain: normalised.chain,
            equivalence_factor: equivalence_factor(c.dim()),
        };
        if report.seminorm != report.normalised_seminorm {
            return Err(Error::SeminormMismatch(Box::new(report)));
        }
        self.check_report(&report)?;
        Ok(report)
    }

    /// Checks every relation a [`NormReport`] promises.
    pub fn check_report(&self, r: &NormReport) -> Result<()> {
        let fail = |what: &str| Err(Error::CheckFailed(what.to_string()));
        let c = &r.class_representative;
        if r.optimal_chain.l1_norm() != r.seminorm
            || r.optimal_normalised_chain.l1_norm() != r.normalised_seminorm
        {
            return fail("optimum norms do not match reported values");
        }
        for (name, z) in [
            ("optimal chain", &r.optimal_chain),
            ("optimal normalised chain", &r.optimal_normalised_chain),
            ("symmetrised optimum", &r.symmetrised_optimum),
        ] {
            if !z.is_cycle() {
                return fail(&format!("{name} is not a cycle"));
            }
            if !matches!(self.homology.homologous(z, c)?, Homologous::Witness(_)) {
                return fail(&format!("{name} is not homologous to the input"));
            }
        }
        if !r.optimal_normalised_chain.is_normalised() {
            return fail("normalised optimum is not normalised");
        }
        if !r.symmetrised_optimum.is_normalised() {
            return fail("symmetrised optimum is not normalised");
        }
        if r.symmetrised_norm > r.seminorm {
            return fail("symmetrisation increased the norm of the optimum");
        }
        if r.seminorm > r.normalised_seminorm
            || r.normalised_seminorm > &r.equivalence_factor * &r.seminorm
        {
            return fail("equivalence sandwich violated");
        }
        if r.seminorm.is_negative() {
            return fail("negative semi-norm");
        }
        Ok(())
    }
}
