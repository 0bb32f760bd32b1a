//! Closed-form eigenfunctions, their linear combinations within one
//! eigenspace, and the symmetry, folding and frame-vanishing checks.

use std::f64::consts::PI;

use serde::Serialize;

use crate::algebra::{AlgebraicValue, Parity};
use crate::error::{Error, Result};
use crate::folding::{self, KFrame};
use crate::qlattice::{Bc, Domain, Problem, QuantumNumber};
use crate::sampling::LowDiscrepancy;
use crate::spectrum::odd_core;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Trig {
    Cos,
    Sin,
}

impl Trig {
    pub fn apply(self, x: f64) -> f64 {
        match self {
            Trig::Cos => x.cos(),
            Trig::Sin => x.sin(),
        }
    }
}

/// coef · ∏_a trig_a(freq_a · x_a)
#[derive(Clone, Debug)]
pub struct SeparableTerm {
    pub coef: f64,
    pub factors: Vec<(Trig, f64)>,
}

impl SeparableTerm {
    pub fn eval(&self, p: &[f64]) -> f64 {
        self.factors
            .iter()
            .zip(p)
            .fold(self.coef, |acc, ((t, w), x)| acc * t.apply(w * x))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EigenfunctionCombo {
    problem: Problem,
    terms: Vec<(f64, QuantumNumber)>,
    value: AlgebraicValue,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Symmetry {
    Even,
    Odd,
    Neither,
}

impl EigenfunctionCombo {
    pub fn new(problem: Problem, terms: Vec<(f64, QuantumNumber)>) -> Result<Self> {
        let first = terms
            .first()
            .ok_or_else(|| Error::InvalidArgument("a combination needs at least one term".into()))?;
        if terms.iter().any(|(_, m)| m.problem() != problem) {
            return Err(Error::InvalidArgument(format!("all terms must belong to the {problem} problem")));
        }
        if terms.iter().any(|(c, _)| !c.is_finite()) {
            return Err(Error::InvalidArgument("coefficients must be finite".into()));
        }
        if terms.iter().all(|(c, _)| *c == 0.0) {
            return Err(Error::InvalidArgument("at least one coefficient must be nonzero".into()));
        }
        let value = first.1.value();
        if let Some((_, m)) = terms.iter().find(|(_, m)| m.value() != value) {
            return Err(Error::InvalidArgument(format!(
                "{m} has eigenvalue {} but the combination has {value}",
                m.value()
            )));
        }
        Ok(EigenfunctionCombo { problem, terms, value })
    }

    pub fn basis(m: &QuantumNumber) -> Self {
        EigenfunctionCombo {
            problem: m.problem(),
            terms: vec![(1.0, m.clone())],
            value: m.value(),
        }
    }

    pub fn problem(&self) -> Problem {
        self.problem
    }

    pub fn terms(&self) -> &[(f64, QuantumNumber)] {
        &self.terms
    }

    pub fn value(&self) -> &AlgebraicValue {
        &self.value
    }

    /// Expansion into products of one-dimensional factors.
    pub fn separable(&self) -> Vec<SeparableTerm> {
        let domain = self.problem.domain;
        let trig = match self.problem.bc {
            Bc::Neumann => Trig::Cos,
            Bc::Dirichlet => Trig::Sin,
        };
        let mut out = Vec::new();
        for (c, m) in &self.terms {
            if *c == 0.0 {
                continue;
            }
            let e = m.entries();
            match domain {
                Domain::Triangle => {
                    let (a, b) = (e[0] as f64, e[1] as f64);
                    let sign = if self.problem.bc == Bc::Dirichlet { -1.0 } else { 1.0 };
                    out.push(SeparableTerm {
                        coef: *c,
                        factors: vec![(trig, a), (trig, b)],
                    });
                    out.push(SeparableTerm {
                        coef: sign * c,
                        factors: vec![(trig, b), (trig, a)],
                    });
                }
                Domain::Box(_) => out.push(SeparableTerm {
                    coef: *c,
                    factors: e
                        .iter()
                        .enumerate()
                        .map(|(j, &mj)| (trig, domain.axis_scale(j) * mj as f64))
                        .collect(),
                }),
            }
        }
        out
    }

    pub fn eval(&self, p: &[f64]) -> Result<f64> {
        if !folding::contains(self.problem.domain, p) {
            return Err(Error::OutsideDomain(p.to_vec()));
        }
        Ok(self.eval_unchecked(p))
    }

    /// Evaluation without the domain check (the formula extends to R^n).
    pub fn eval_unchecked(&self, p: &[f64]) -> f64 {
        self.separable().iter().map(|t| t.eval(p)).sum()
    }

    /// Upper bound for sup |f|.
    pub fn sup_bound(&self) -> f64 {
        self.separable().iter().map(|t| t.coef.abs()).sum()
    }

    /// Largest number of half-periods along each axis of the bounding box.
    pub fn half_periods(&self) -> Vec<f64> {
        let lengths = self.problem.domain.edge_lengths();
        let mut hp = vec![0.0f64; lengths.len()];
        for t in self.separable() {
            for (a, (_, w)) in t.factors.iter().enumerate() {
                hp[a] = hp[a].max(w * lengths[a] / PI);
            }
        }
        hp
    }

    /// Fφ = φ∘U, expressed through F_Q on every term.
    pub fn fold_fn(&self) -> Result<Self> {
        if self.value.parity() == Parity::Odd {
            return Err(Error::FoldParity(self.value.to_string()));
        }
        let terms = self
            .terms
            .iter()
            .map(|(c, m)| Ok((*c, folding::fold_qn(m)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(EigenfunctionCombo {
            problem: self.problem,
            terms,
            value: self.value.scale_gamma2(-1)?,
        })
    }

    /// Uφ = φ∘F on the half domain, extended evenly; expressed through U_Q.
    pub fn unfold_fn(&self) -> Result<Self> {
        let terms = self
            .terms
            .iter()
            .map(|(c, m)| Ok((*c, folding::unfold_qn(m)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(EigenfunctionCombo {
            problem: self.problem,
            terms,
            value: self.value.scale_gamma2(1)?,
        })
    }

    /// Compares f(p) with f(R(p)) on quasi-random interior samples.
    pub fn symmetry_check(&self, samples: usize, seed: u64) -> Symmetry {
        let domain = self.problem.domain;
        let mut seq = LowDiscrepancy::new(domain.dim(), seed);
        let mut pairs = Vec::with_capacity(samples.max(1));
        let mut scale = 0.0f64;
        for _ in 0..samples.max(1) {
            let p = interior_point(domain, &seq.next_point());
            let q = folding::reflect(domain, &p).expect("interior point");
            let (a, b) = (self.eval_unchecked(&p), self.eval_unchecked(&q));
            scale = scale.max(a.abs()).max(b.abs());
            pairs.push((a, b));
        }
        if scale == 0.0 {
            scale = self.sup_bound();
        }
        let tol = 1e-9 * scale;
        if pairs.iter().all(|(a, b)| (a - b).abs() <= tol) {
            Symmetry::Even
        } else if pairs.iter().all(|(a, b)| (a + b).abs() <= tol) {
            Symmetry::Odd
        } else {
            Symmetry::Neither
        }
    }

    /// Largest |f| over quasi-random interior samples.
    pub fn sup_estimate(&self, samples: usize, seed: u64) -> f64 {
        let domain = self.problem.domain;
        let mut seq = LowDiscrepancy::new(domain.dim(), seed);
        (0..samples.max(1))
            .map(|_| self.eval_unchecked(&interior_point(domain, &seq.next_point())).abs())
            .fold(0.0, f64::max)
    }

    /// Largest |f| over sampled points of the frame S^(k), where k is the
    /// folding depth of the eigenvalue.
    pub fn frame_vanishing(&self, frame: &KFrame, samples: usize, seed: u64) -> Result<FrameVanishing> {
        if frame.domain != self.problem.domain {
            return Err(Error::InvalidArgument("frame and function live on different domains".into()));
        }
        let core = odd_core(&self.value)?;
        if core.k != frame.k {
            return Err(Error::InvalidArgument(format!(
                "eigenvalue {} has folding depth {}, frame has k={}",
                self.value, core.k, frame.k
            )));
        }
        let points = frame.sample(samples, seed);
        let max_abs = points
            .iter()
            .map(|p| self.eval_unchecked(p).abs())
            .fold(0.0, f64::max);
        let sup = self.sup_estimate(4096, seed);
        Ok(FrameVanishing {
            k: frame.k,
            samples: points.len(),
            max_abs,
            sup_estimate: sup,
            relative: if sup > 0.0 { max_abs / sup } else { max_abs },
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FrameVanishing {
    pub k: u32,
    pub samples: usize,
    pub max_abs: f64,
    pub sup_estimate: f64,
    pub relative: f64,
}

/// Maps a point of the open unit cube into the open domain.
pub fn interior_point(domain: Domain, u: &[f64]) -> Vec<f64> {
    match domain {
        Domain::Triangle => {
            let (a, b) = (u[0].max(u[1]), u[0].min(u[1]));
            vec![PI * a, PI * b]
        }
        Domain::Box(_) => u
            .iter()
            .zip(domain.edge_lengths())
            .map(|(t, l)| t * l)
            .collect(),
    }
}
