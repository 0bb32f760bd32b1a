//! Sorted spectra with positions, counting functions, multiplicities and the
//! odd-core decomposition λ = γ^(2k)·λ⁽⁰⁾.

use std::cmp::Ordering;

use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::algebra::{AlgebraicValue, Cutoff, Parity};
use crate::error::{Error, Result};
use crate::qlattice::{enumerate_below, Domain, Problem, QuantumNumber};

#[derive(Clone, Debug, Serialize)]
pub struct Level {
    /// 1-based index of the first appearance of the value.
    pub position: usize,
    pub value: AlgebraicValue,
    pub members: Vec<QuantumNumber>,
}

impl Level {
    pub fn multiplicity(&self) -> usize {
        self.members.len()
    }

    pub fn is_simple(&self) -> bool {
        self.members.len() == 1
    }

    pub fn parity(&self) -> Parity {
        self.value.parity()
    }
}

#[derive(Clone, Debug)]
pub struct SpectrumIndex {
    problem: Problem,
    cutoff: Cutoff,
    levels: Vec<Level>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Counting {
    /// Number of eigenvalues strictly below λ.
    pub below: u64,
    /// Number of eigenvalues at most λ.
    pub at_most: u64,
    /// Spectral position: `below + 1` at an eigenvalue, `below` otherwise.
    pub position: u64,
    pub multiplicity: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OddCore {
    pub core: AlgebraicValue,
    pub k: u32,
}

pub fn build_index(problem: Problem, cutoff: &Cutoff) -> Result<SpectrumIndex> {
    if !cutoff.is_positive() {
        return Err(Error::InvalidArgument("cutoff must be positive".into()));
    }
    let region = enumerate_below(problem, cutoff)?;
    let mut levels: Vec<Level> = Vec::new();
    let mut position = 1;
    for (m, v) in region.points().iter().zip(region.values()) {
        match levels.last_mut() {
            Some(last) if last.value == *v => last.members.push(m.clone()),
            _ => {
                if let Some(last) = levels.last() {
                    position += last.members.len();
                }
                levels.push(Level {
                    position,
                    value: v.clone(),
                    members: vec![m.clone()],
                });
            }
        }
    }
    Ok(SpectrumIndex {
        problem,
        cutoff: cutoff.clone(),
        levels,
    })
}

impl SpectrumIndex {
    pub fn problem(&self) -> Problem {
        self.problem
    }

    pub fn cutoff(&self) -> &Cutoff {
        &self.cutoff
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    fn check_range(&self, v: &AlgebraicValue) -> Result<()> {
        if v.n() != self.problem.ring() {
            return Err(Error::RingMismatch(v.n(), self.problem.ring()));
        }
        if !self.cutoff.admits(v) {
            return Err(Error::OutOfRange {
                value: v.to_string(),
                cutoff: self.cutoff.to_string(),
            });
        }
        Ok(())
    }

    fn split_point(&self, v: &AlgebraicValue) -> usize {
        self.levels.partition_point(|l| l.value.cmp(v) == Ordering::Less)
    }

    /// The level holding `v`, if `v` is an eigenvalue below the cutoff.
    pub fn level(&self, v: &AlgebraicValue) -> Option<&Level> {
        if self.check_range(v).is_err() {
            return None;
        }
        self.levels.get(self.split_point(v)).filter(|l| l.value == *v)
    }

    /// The level occupying spectral position `pos` (1-based).
    pub fn level_at_position(&self, pos: usize) -> Option<&Level> {
        let i = self.levels.partition_point(|l| l.position + l.members.len() <= pos);
        self.levels.get(i).filter(|l| l.position <= pos)
    }

    pub fn counting(&self, v: &AlgebraicValue) -> Result<Counting> {
        self.check_range(v)?;
        let i = self.split_point(v);
        let below: u64 = self.levels[..i].iter().map(|l| l.members.len() as u64).sum();
        let multiplicity = match self.levels.get(i) {
            Some(l) if l.value == *v => l.members.len() as u64,
            _ => 0,
        };
        Ok(Counting {
            below,
            at_most: below + multiplicity,
            position: below + u64::from(multiplicity > 0),
            multiplicity,
        })
    }

    /// Total number of eigenvalues (with multiplicity) below the cutoff.
    pub fn total(&self) -> usize {
        self.levels.iter().map(|l| l.members.len()).sum()
    }
}

/// Strips folding factors until the value becomes odd.
pub fn odd_core(v: &AlgebraicValue) -> Result<OddCore> {
    if v.is_zero() {
        return Err(Error::InvalidArgument("zero has no odd core".into()));
    }
    let mut core = v.clone();
    let mut k = 0;
    while core.parity() == Parity::Even {
        core = core.scale_gamma2(-1)?;
        k += 1;
    }
    Ok(OddCore { core, k })
}

/// Number of (a, b) ∈ Z² with a² + b² = z.
pub fn r2(z: u64) -> u64 {
    let mut count = 0;
    let mut a = 0u64;
    while a * a <= z {
        let rest = z - a * a;
        let b = rest.isqrt();
        if b * b == rest {
            count += if a == 0 { 1 } else { 2 } * if b == 0 { 1 } else { 2 };
        }
        a += 1;
    }
    count
}

/// Number of (a, b) ∈ N₀² with a² + 2b² = c: the multiplicity of c in the
/// rectangle spectrum.
pub fn rect_multiplicity(c: u64) -> u64 {
    let mut count = 0;
    let mut b = 0u64;
    while 2 * b * b <= c {
        let rest = c - 2 * b * b;
        let a = rest.isqrt();
        if a * a == rest {
            count += 1;
        }
        b += 1;
    }
    count
}

/// Multiplicity of an even-dimensional box eigenvalue as the product of the
/// rectangle multiplicities of its coefficients.
pub fn multiplicity_by_factorization(n: u32, v: &AlgebraicValue) -> Result<u64> {
    if n % 2 == 1 || v.n() != n {
        return Err(Error::InvalidArgument(format!(
            "factorization needs an even dimension matching the value ring, got n={n}"
        )));
    }
    let mut product = 1u64;
    for c in v.coeffs() {
        let c = if c.is_negative() { None } else { c.to_u64() }
            .ok_or_else(|| Error::NotAnEigenvalue(v.to_string()))?;
        let d = rect_multiplicity(c);
        if d == 0 {
            return Err(Error::NotAnEigenvalue(v.to_string()));
        }
        product *= d;
    }
    Ok(product)
}

/// Convenience: the Neumann spectrum of a domain.
pub fn neumann_index(domain: Domain, cutoff: &Cutoff) -> Result<SpectrumIndex> {
    build_index(Problem::new(domain, crate::qlattice::Bc::Neumann), cutoff)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: u32, c: i64) -> AlgebraicValue {
        AlgebraicValue::from_integer(n, c)
    }

    #[test]
    fn triangle_levels() {
        let si = build_index(Problem::triangle(), &Cutoff::integer(1, 11)).unwrap();
        let values: Vec<String> = si.levels().iter().map(|l| l.value.to_string()).collect();
        assert_eq!(values, ["0", "1", "2", "4", "5", "8", "9", "10"]);
        assert!(si.levels().iter().all(Level::is_simple));
        let positions: Vec<usize> = si.levels().iter().map(|l| l.position).collect();
        assert_eq!(positions, [1, 2, 3, 4, 5, 6, 7, 8]);
    }

    #[test]
    fn box_levels() {
        let si = build_index(Problem::boxed(2).unwrap(), &Cutoff::integer(2, 7)).unwrap();
        let values: Vec<String> = si.levels().iter().map(|l| l.value.to_string()).collect();
        assert_eq!(values, ["0", "1", "2", "3", "4", "6"]);
        assert_eq!(si.level(&int(2, 3)).unwrap().position, 4);
        assert_eq!(si.level(&int(2, 6)).unwrap().position, 6);
    }

    #[test]
    fn counting_examples() {
        let si = build_index(Problem::triangle(), &Cutoff::integer(1, 30)).unwrap();
        let c = si.counting(&int(1, 8)).unwrap();
        assert_eq!((c.below, c.position), (5, 6));
        let c = si.counting(&int(1, 3)).unwrap();
        assert_eq!((c.below, c.position, c.multiplicity), (3, 3, 0));
        let c = si.counting(&int(1, 0)).unwrap();
        assert_eq!((c.below, c.position), (0, 1));
        let l = si.level(&int(1, 25)).unwrap();
        let members: Vec<String> = l.members.iter().map(|m| m.to_string()).collect();
        assert_eq!(members, ["(4,3)", "(5,0)"]);
        assert!(si.counting(&int(1, 30)).is_err());
        assert_eq!(si.level_at_position(l.position + 1).unwrap().value, int(1, 25));
    }

    #[test]
    fn odd_cores() {
        assert_eq!(odd_core(&int(1, 8)).unwrap(), OddCore { core: int(1, 1), k: 3 });
        assert_eq!(odd_core(&int(1, 5)).unwrap(), OddCore { core: int(1, 5), k: 0 });
        assert_eq!(odd_core(&int(2, 6)).unwrap(), OddCore { core: int(2, 3), k: 1 });
        assert!(odd_core(&int(1, 0)).is_err());
    }

    #[test]
    fn sums_of_squares() {
        assert_eq!(r2(5), 8);
        assert_eq!(r2(0), 1);
        assert_eq!(r2(10), 8);
        assert_eq!(r2(3), 0);
        assert_eq!(rect_multiplicity(9), 2);
        assert_eq!(rect_multiplicity(0), 1);
    }

    #[test]
    fn factorized_multiplicities() {
        let v = AlgebraicValue::from_quantum_number(4, &[1, 1, 1, 1]).unwrap();
        assert_eq!(v.to_string(), "3 + 3*g^2");
        assert_eq!(multiplicity_by_factorization(4, &v).unwrap(), 1);
        assert_eq!(multiplicity_by_factorization(2, &int(2, 9)).unwrap(), 2);
        assert_eq!(multiplicity_by_factorization(4, &int(4, 9)).unwrap(), 2);
        assert!(multiplicity_by_factorization(2, &int(2, 5)).is_err());
        assert!(multiplicity_by_factorization(3, &int(3, 9)).is_err());
    }
}
