//! Courant-sharpness verdicts for every eigenvalue below a cutoff.
//!
//! Each non-sharp verdict carries a witness that the engine re-checks with
//! exact arithmetic before returning; sharp verdicts are confirmed by an
//! explicit nodal count equal to the spectral position.

use std::cmp::Ordering;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{AlgebraicValue, Cutoff, Parity};
use crate::error::{Error, Result};
use crate::folding::{subdomain_spectrum_value, Subdomain};
use crate::nodal::count_basis;
use crate::qlattice::{
    reference_set_box, reference_set_triangle, Bc, Domain, Problem, QuantumNumber, TriangleReference,
};
use crate::spectrum::{build_index, odd_core, Level, OddCore, SpectrumIndex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Reason {
    GroundState,
    OrthogonalitySecond,
    ExplicitCount,
    OddBoundary,
    SubdomainMultiplicity,
    MultipleEigenvalue,
    ReferenceSetStrict,
    BoxCaseAnalysis,
}

impl Reason {
    pub fn is_sharp_reason(self) -> bool {
        matches!(
            self,
            Reason::GroundState | Reason::OrthogonalitySecond | Reason::ExplicitCount
        )
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Witness {
    /// ν of the unique eigenfunction equals N(λ).
    Count { nu: u64 },
    /// Two even points of Q(λ) whose right neighbours leave Q(λ).
    BoundaryPoints { points: [QuantumNumber; 2] },
    /// Two quantum numbers of a frame subdomain sharing the eigenvalue.
    SubdomainPair {
        subdomain: Subdomain,
        pairs: [(u64, u64); 2],
        value: AlgebraicValue,
    },
    /// The eigenspace has dimension above one.
    Multiplicity { d: usize },
    /// A set of ν lattice points inside Q(λ) ∪ {m}, plus a further point of
    /// Q(λ) outside it.
    ReferenceSet {
        kind: TriangleReference,
        size: u64,
        extra: QuantumNumber,
    },
    /// A lattice point below λ outside the box {m̃ ≤ m}.
    BoxPoint {
        point: QuantumNumber,
        value: AlgebraicValue,
        nu: u64,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    /// First spectral index carrying the value.
    pub position: usize,
    pub value: AlgebraicValue,
    pub value_f64: f64,
    pub multiplicity: usize,
    pub parity: Parity,
    pub core: Option<OddCore>,
    pub members: Vec<QuantumNumber>,
    /// N(λ)
    pub spectral_position: u64,
    pub sharp: bool,
    pub reason: Reason,
    pub witness: Witness,
}

fn new_verdict(index: &SpectrumIndex, level: &Level, sharp: bool, reason: Reason, witness: Witness) -> Result<Verdict> {
    let core = if level.value.is_zero() {
        None
    } else {
        Some(odd_core(&level.value)?)
    };
    Ok(Verdict {
        position: level.position,
        value: level.value.clone(),
        value_f64: level.value.to_f64(),
        multiplicity: level.multiplicity(),
        parity: level.parity(),
        core,
        members: level.members.clone(),
        spectral_position: index.counting(&level.value)?.position,
        sharp,
        reason,
        witness,
    })
}

fn fail(level: &Level, what: impl std::fmt::Display) -> Error {
    Error::Consistency(format!("eigenvalue {} at position {}: {what}", level.value, level.position))
}

fn below(v: &AlgebraicValue, bound: &AlgebraicValue) -> bool {
    v.cmp(bound) == Ordering::Less
}

/// p ∈ Q(λ), p is even, and p + e₁ ∉ Q(λ).
fn even_right_boundary(p: &QuantumNumber, lambda: &AlgebraicValue) -> bool {
    p.parity() == Parity::Even
        && below(&p.value(), lambda)
        && p.right_neighbour().is_none_or(|r| !below(&r.value(), lambda))
}

/// Sharp verdict after confirming ν = N(λ) for the unique eigenfunction.
fn confirm_sharp(index: &SpectrumIndex, level: &Level, reason: Reason) -> Result<Verdict> {
    if !level.is_simple() {
        return Err(fail(level, "sharp candidate is not simple"));
    }
    let nu = count_basis(&level.members[0])?.nu;
    let n = index.counting(&level.value)?.position;
    if nu != n {
        return Err(fail(level, format!("no criterion applies and ν = {nu} ≠ N = {n}")));
    }
    new_verdict(index, level, true, reason, Witness::Count { nu })
}

fn ensure_cutoff(index: &SpectrumIndex, min_levels: usize) -> Result<()> {
    if index.total() < min_levels {
        return Err(Error::InvalidArgument(format!(
            "cutoff {} leaves only {} eigenvalues; at least {min_levels} are needed",
            index.cutoff(),
            index.total()
        )));
    }
    Ok(())
}

/// Verdicts for the Neumann triangle.
pub fn classify_triangle(cutoff: &Cutoff) -> Result<Vec<Verdict>> {
    let index = build_index(Problem::triangle(), cutoff)?;
    if !cutoff.admits(&AlgebraicValue::from_integer(1, 8)) {
        return Err(Error::InvalidArgument("the triangle cutoff must be at least 9".into()));
    }
    index
        .levels()
        .par_iter()
        .map(|level| classify_triangle_level(&index, level))
        .collect()
}

fn classify_triangle_level(index: &SpectrumIndex, level: &Level) -> Result<Verdict> {
    let v = &level.value;
    if v.is_zero() {
        return confirm_sharp(index, level, Reason::GroundState);
    }
    let oc = odd_core(v)?;
    if oc.k == 0 {
        if level.position == 2 {
            return confirm_sharp(index, level, Reason::OrthogonalitySecond);
        }
        let m = &level.members[0];
        let (a, b) = (m.entries()[0], m.entries()[1]);
        let second = if b >= 1 { vec![a, b - 1] } else { vec![a - 1, 2] };
        let points = [
            QuantumNumber::new(m.problem(), vec![a - 1, b])?,
            QuantumNumber::new(m.problem(), second)?,
        ];
        if points[0] == points[1] || !points.iter().all(|p| even_right_boundary(p, v)) {
            return Err(fail(level, format!("boundary witnesses {} and {} fail", points[0], points[1])));
        }
        return new_verdict(index, level, false, Reason::OddBoundary, Witness::BoundaryPoints { points });
    }

    let core_level = index
        .level(&oc.core)
        .ok_or_else(|| fail(level, "odd core missing from the spectrum"))?;
    if let Some(cm) = core_level.members.iter().find(|m| m.entries()[1] != 0) {
        let (m, n) = (cm.entries()[0], cm.entries()[1]);
        let (subdomain, pairs) = if oc.k == 1 {
            let p = ((m + n - 1) / 2, (m - n - 1) / 2);
            (Subdomain::SquareS, [p, (p.1, p.0)])
        } else {
            (Subdomain::RectR(oc.k), [(m + n, m - n), (m - n, m + n)])
        };
        for (p, q) in pairs {
            if subdomain_spectrum_value(subdomain, p, q)? != *v {
                return Err(fail(level, format!("subdomain value at ({p},{q}) differs")));
            }
        }
        if pairs[0] == pairs[1] {
            return Err(fail(level, "subdomain witnesses coincide"));
        }
        return new_verdict(
            index,
            level,
            false,
            Reason::SubdomainMultiplicity,
            Witness::SubdomainPair {
                subdomain,
                pairs,
                value: v.clone(),
            },
        );
    }

    if level.multiplicity() > 1 {
        return new_verdict(
            index,
            level,
            false,
            Reason::MultipleEigenvalue,
            Witness::Multiplicity { d: level.multiplicity() },
        );
    }
    let member = &level.members[0];
    let (a, b) = (member.entries()[0], member.entries()[1]);
    let reference = if a == b && a >= 3 {
        Some((TriangleReference::Diag(a), vec![a + 1, 0]))
    } else if b == 0 && a % 2 == 0 && a >= 4 {
        Some((TriangleReference::Axis(a), vec![a - 1, 2]))
    } else {
        None
    };
    let Some((kind, extra)) = reference else {
        return confirm_sharp(index, level, Reason::ExplicitCount);
    };
    let set = reference_set_triangle(kind)?;
    let nu = count_basis(member)?.nu;
    if set.len() as u64 != nu {
        return Err(fail(level, format!("reference set has {} points but ν = {nu}", set.len())));
    }
    if set.iter().any(|p| p.value().cmp(v) == Ordering::Greater) {
        return Err(fail(level, "reference set leaves Q(λ) ∪ {m}"));
    }
    let extra = QuantumNumber::new(member.problem(), extra)?;
    if set.contains(&extra) || !below(&extra.value(), v) {
        return Err(fail(level, format!("extra point {extra} is not a new point of Q(λ)")));
    }
    new_verdict(
        index,
        level,
        false,
        Reason::ReferenceSetStrict,
        Witness::ReferenceSet {
            kind,
            size: nu,
            extra,
        },
    )
}

/// Verdicts for the Neumann box of dimension n.
pub fn classify_box(n: u32, cutoff: &Cutoff) -> Result<Vec<Verdict>> {
    let problem = Problem::new(Domain::new_box(n)?, Bc::Neumann);
    let index = build_index(problem, cutoff)?;
    ensure_cutoff(&index, 7)?;
    index
        .levels()
        .par_iter()
        .map(|level| classify_box_level(&index, level))
        .collect()
}

/// Lattice point below λ_m lying outside {m̃ ≤ m}, following the case
/// analysis on the shape of m. `None` for the sharp exceptions.
pub fn box_witness_point(m: &[u64]) -> Option<Vec<u64>> {
    let n = m.len();
    let unit = |k: usize, x: u64| {
        let mut v = vec![0; n];
        v[k] = x;
        v
    };
    if let Some(k) = (0..n - 1).find(|&k| m[k] < m[k + 1]) {
        return Some(unit(k, m[k] + 1));
    }
    let min = *m.iter().min().expect("nonempty");
    let first_min = m.iter().position(|&x| x == min).expect("present");
    match first_min {
        0 => {
            let c = m[0];
            if c == 0 || (n == 2 && c == 1) {
                None
            } else {
                Some(unit(0, c + 1))
            }
        }
        1 => {
            let (m1, m2) = (m[0], m[1]);
            if (n >= 3 && m2 >= 1) || (n == 2 && m2 >= 3) {
                Some(unit(1, m2 + 1))
            } else if n >= 3 {
                (m1 >= 2).then(|| unit(1, 1))
            } else {
                match (m1, m2) {
                    (3, 2) => Some(unit(0, 4)),
                    (_, 2) => Some(unit(1, 3)),
                    (_, 1) if m1 >= 3 => Some(unit(1, 2)),
                    (_, 0) if m1 >= 2 => Some(unit(1, 1)),
                    _ => None,
                }
            }
        }
        i => Some(unit(i, m[i] + 1)),
    }
}

fn classify_box_level(index: &SpectrumIndex, level: &Level) -> Result<Verdict> {
    let v = &level.value;
    if v.is_zero() {
        return confirm_sharp(index, level, Reason::GroundState);
    }
    if level.position == 2 {
        return confirm_sharp(index, level, Reason::OrthogonalitySecond);
    }
    if level.multiplicity() > 1 {
        return new_verdict(
            index,
            level,
            false,
            Reason::MultipleEigenvalue,
            Witness::Multiplicity { d: level.multiplicity() },
        );
    }
    let m = &level.members[0];
    let Some(point) = box_witness_point(m.entries()) else {
        return confirm_sharp(index, level, Reason::ExplicitCount);
    };
    let point = QuantumNumber::new(m.problem(), point)?;
    let value = point.value();
    if !below(&value, v) {
        return Err(fail(level, format!("witness {point} has value {value}, not below")));
    }
    if point.entries().iter().zip(m.entries()).all(|(a, b)| a <= b) {
        return Err(fail(level, format!("witness {point} lies inside the reference box")));
    }
    let nu = reference_set_box(m)?.len() as u64;
    let n = index.counting(v)?.position;
    if nu >= n {
        return Err(fail(level, format!("ν = {nu} is not below N = {n}")));
    }
    new_verdict(
        index,
        level,
        false,
        Reason::BoxCaseAnalysis,
        Witness::BoxPoint { point, value, nu },
    )
}

/// Sharp positions of a verdict list, expanded over multiplicities.
pub fn sharp_positions(verdicts: &[Verdict]) -> Vec<usize> {
    verdicts.iter().filter(|v| v.sharp).map(|v| v.position).collect()
}

/// Human-readable justification for one verdict.
pub fn explain(v: &Verdict) -> String {
    let mut s = String::new();
    let members: Vec<String> = v.members.iter().map(|m| m.to_string()).collect();
    let _ = writeln!(s, "eigenvalue {} (≈ {:.6}) at position {}", v.value, v.value_f64, v.position);
    let _ = writeln!(s, "multiplicity {}, members {}", v.multiplicity, members.join(" "));
    let _ = writeln!(s, "parity {}, N(λ) = {}", v.parity, v.spectral_position);
    if let Some(c) = &v.core {
        let _ = writeln!(s, "odd core {} with k = {}", c.core, c.k);
    }
    let _ = writeln!(s, "verdict: {} ({:?})", if v.sharp { "Courant-sharp" } else { "not Courant-sharp" }, v.reason);
    let line = match &v.witness {
        Witness::Count { nu } => format!("nodal count ν = {nu} equals N(λ) = {}", v.spectral_position),
        Witness::BoundaryPoints { points } => format!(
            "{} and {} are even, lie below λ, and their right neighbours do not; so |∂Q(λ) ∩ E| > 1 and every eigenfunction falls short of N(λ)",
            points[0], points[1]
        ),
        Witness::SubdomainPair { subdomain, pairs, value } => format!(
            "on the frame subdomain {:?} the quantum numbers {:?} and {:?} share the eigenvalue {}; the restriction is not simple, so no eigenfunction reaches N(λ)",
            subdomain, pairs[0], pairs[1], value
        ),
        Witness::Multiplicity { d } => format!(
            "the eigenspace has dimension {d}; multiple eigenvalues cannot be Courant-sharp"
        ),
        Witness::ReferenceSet { kind, size, extra } => format!(
            "reference set {kind:?} has {size} = ν points inside Q(λ) ∪ {{m}}; {extra} is a further point of Q(λ), so N(λ) > ν"
        ),
        Witness::BoxPoint { point, value, nu } => format!(
            "{point} has eigenvalue {value} below λ and lies outside the box of {nu} = ν points under m, so N(λ) > ν"
        ),
    };
    let _ = writeln!(s, "witness: {line}");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_small_cutoff() {
        let v = classify_triangle(&Cutoff::integer(1, 100)).unwrap();
        assert_eq!(sharp_positions(&v), [1, 2, 3, 4, 6]);
        let nine = v.iter().find(|x| x.value == AlgebraicValue::from_integer(1, 9)).unwrap();
        match &nine.witness {
            Witness::BoundaryPoints { points } => {
                let e: Vec<&[u64]> = points.iter().map(|p| p.entries()).collect();
                assert_eq!(e, [&[2u64, 0][..], &[2, 2][..]]);
            }
            w => panic!("unexpected witness {w:?}"),
        }
        let ten = v.iter().find(|x| x.value == AlgebraicValue::from_integer(1, 10)).unwrap();
        assert_eq!(ten.reason, Reason::SubdomainMultiplicity);
        match &ten.witness {
            Witness::SubdomainPair { pairs, .. } => assert_eq!(*pairs, [(1, 0), (0, 1)]),
            w => panic!("unexpected witness {w:?}"),
        }
        assert!(classify_triangle(&Cutoff::integer(1, 8)).is_err());
    }

    #[test]
    fn box_small_cutoff() {
        let v = classify_box(2, &Cutoff::integer(2, 60)).unwrap();
        assert_eq!(sharp_positions(&v), [1, 2, 4, 6]);
        let sharp_values: Vec<String> = v.iter().filter(|x| x.sharp).map(|x| x.value.to_string()).collect();
        assert_eq!(sharp_values, ["0", "1", "3", "6"]);
        let seventeen = v.iter().find(|x| x.value == AlgebraicValue::from_integer(2, 17)).unwrap();
        match &seventeen.witness {
            Witness::BoxPoint { point, value, .. } => {
                assert_eq!(point.entries(), &[4, 0]);
                assert_eq!(value.to_string(), "16");
            }
            w => panic!("unexpected witness {w:?}"),
        }
        let v3 = classify_box(3, &Cutoff::integer(3, 30)).unwrap();
        assert_eq!(sharp_positions(&v3), [1, 2]);
    }

    #[test]
    fn witness_points() {
        assert_eq!(box_witness_point(&[1, 2]), Some(vec![2, 0]));
        assert_eq!(box_witness_point(&[1, 1]), None);
        assert_eq!(box_witness_point(&[2, 1]), None);
        assert_eq!(box_witness_point(&[3, 2]), Some(vec![4, 0]));
        assert_eq!(box_witness_point(&[5, 2]), Some(vec![0, 3]));
        assert_eq!(box_witness_point(&[3, 1]), Some(vec![0, 2]));
        assert_eq!(box_witness_point(&[2, 0]), Some(vec![0, 1]));
        assert_eq!(box_witness_point(&[3, 1, 0]), Some(vec![0, 0, 1]));
        assert_eq!(box_witness_point(&[2, 0, 0]), Some(vec![0, 1, 0]));
    }

    #[test]
    fn explanations_name_the_witness() {
        let v = classify_triangle(&Cutoff::integer(1, 20)).unwrap();
        let text = explain(&v[6]);
        assert!(text.contains("witness"), "{text}");
    }
}
