//! Quantum-number lattices and the lattice sets built on them.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::algebra::{AlgebraicValue, Cutoff, Parity};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Domain {
    /// D = {0 ≤ y ≤ x ≤ π}.
    Triangle,
    /// n-dimensional box with edges π/γ^j, γ = 2^(1/n), n ≥ 2.
    Box(u32),
}

impl Domain {
    pub fn new_box(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!("box dimension must be at least 2, got {n}")));
        }
        Ok(Domain::Box(n))
    }

    /// Ring index of the eigenvalues (1 for the triangle).
    pub fn ring(&self) -> u32 {
        match self {
            Domain::Triangle => 1,
            Domain::Box(n) => *n,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Domain::Triangle => 2,
            Domain::Box(n) => *n as usize,
        }
    }

    /// γ = 2^(1/n) for boxes; the triangle's similarity ratio √2.
    pub fn gamma(&self) -> f64 {
        match self {
            Domain::Triangle => 2f64.sqrt(),
            Domain::Box(n) => 2f64.powf(1.0 / *n as f64),
        }
    }

    /// Side lengths of the bounding box.
    pub fn edge_lengths(&self) -> Vec<f64> {
        match self {
            Domain::Triangle => vec![PI, PI],
            Domain::Box(n) => {
                let g = self.gamma();
                (0..*n).map(|j| PI / g.powi(j as i32)).collect()
            }
        }
    }

    /// Frequency multiplier of axis `j` in the cosine basis.
    pub fn axis_scale(&self, j: usize) -> f64 {
        match self {
            Domain::Triangle => 1.0,
            Domain::Box(_) => self.gamma().powi(j as i32),
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Triangle => f.write_str("triangle"),
            Domain::Box(n) => write!(f, "box{n}"),
        }
    }
}

impl Serialize for Domain {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Bc {
    Neumann,
    Dirichlet,
}

impl fmt::Display for Bc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Bc::Neumann => "neumann",
            Bc::Dirichlet => "dirichlet",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Problem {
    pub domain: Domain,
    pub bc: Bc,
}

impl Problem {
    pub fn new(domain: Domain, bc: Bc) -> Self {
        Problem { domain, bc }
    }

    pub fn triangle() -> Self {
        Problem::new(Domain::Triangle, Bc::Neumann)
    }

    pub fn boxed(n: u32) -> Result<Self> {
        Ok(Problem::new(Domain::new_box(n)?, Bc::Neumann))
    }

    pub fn ring(&self) -> u32 {
        self.domain.ring()
    }

    pub fn dim(&self) -> usize {
        self.domain.dim()
    }

    fn min_entry(&self) -> u64 {
        match self.bc {
            Bc::Neumann => 0,
            Bc::Dirichlet => 1,
        }
    }

    pub fn is_valid(&self, m: &[u64]) -> bool {
        if m.len() != self.dim() {
            return false;
        }
        match (self.domain, self.bc) {
            (Domain::Triangle, Bc::Neumann) => m[0] >= m[1],
            (Domain::Triangle, Bc::Dirichlet) => m[0] > m[1] && m[1] >= 1,
            (Domain::Box(_), bc) => bc == Bc::Neumann || m.iter().all(|&x| x >= 1),
        }
    }

    /// Lattice parity of a quantum number (equals the eigenvalue parity).
    pub fn lattice_parity(&self, m: &[u64]) -> Parity {
        let odd = match self.domain {
            Domain::Triangle => (m[0] + m[1]) % 2 == 1,
            Domain::Box(_) => m[0] % 2 == 1,
        };
        if odd {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.domain, self.bc)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuantumNumber {
    problem: Problem,
    m: Vec<u64>,
}

impl QuantumNumber {
    pub fn new(problem: Problem, m: Vec<u64>) -> Result<Self> {
        if !problem.is_valid(&m) {
            return Err(Error::InvalidArgument(format!(
                "{m:?} is not a quantum number of the {problem} problem"
            )));
        }
        Ok(QuantumNumber { problem, m })
    }

    pub fn from_signed(problem: Problem, m: &[i64]) -> Result<Self> {
        if let Some(x) = m.iter().find(|&&x| x < 0) {
            return Err(Error::InvalidArgument(format!("negative quantum number entry {x}")));
        }
        Self::new(problem, m.iter().map(|&x| x as u64).collect())
    }

    pub fn problem(&self) -> Problem {
        self.problem
    }

    pub fn entries(&self) -> &[u64] {
        &self.m
    }

    pub fn value(&self) -> AlgebraicValue {
        AlgebraicValue::from_quantum_number(self.problem.ring(), &self.m)
            .expect("validated quantum number")
    }

    pub fn parity(&self) -> Parity {
        self.problem.lattice_parity(&self.m)
    }

    /// m + e₁, if that is still a quantum number.
    pub fn right_neighbour(&self) -> Option<Self> {
        let mut m = self.m.clone();
        m[0] += 1;
        Self::new(self.problem, m).ok()
    }
}

impl PartialOrd for QuantumNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuantumNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        self.problem
            .cmp(&other.problem)
            .then_with(|| self.m.cmp(&other.m))
    }
}

impl fmt::Display for QuantumNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.m.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

impl Serialize for QuantumNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.m.serialize(s)
    }
}

/// All quantum numbers with eigenvalue strictly below a cutoff, ordered by
/// value and then lexicographically.
#[derive(Clone, Debug)]
pub struct LatticeRegion {
    problem: Problem,
    cutoff: Cutoff,
    points: Vec<QuantumNumber>,
    values: Vec<AlgebraicValue>,
}

impl LatticeRegion {
    pub fn problem(&self) -> Problem {
        self.problem
    }

    pub fn cutoff(&self) -> &Cutoff {
        &self.cutoff
    }

    pub fn points(&self) -> &[QuantumNumber] {
        &self.points
    }

    pub fn values(&self) -> &[AlgebraicValue] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, m: &QuantumNumber) -> bool {
        m.problem == self.problem && self.cutoff.admits(&m.value())
    }

    /// Splits into (odd, even) lattice points.
    pub fn parity_split(&self) -> (Vec<QuantumNumber>, Vec<QuantumNumber>) {
        self.points
            .iter()
            .cloned()
            .partition(|m| m.parity() == Parity::Odd)
    }

    /// Points whose right neighbour m + e₁ is not in the region.
    pub fn right_boundary(&self) -> Vec<QuantumNumber> {
        self.points
            .iter()
            .filter(|m| match m.right_neighbour() {
                Some(r) => !self.cutoff.admits(&r.value()),
                None => true,
            })
            .cloned()
            .collect()
    }
}

/// Enumerates every quantum number with eigenvalue strictly below `cutoff`.
pub fn enumerate_below(problem: Problem, cutoff: &Cutoff) -> Result<LatticeRegion> {
    if cutoff.n() != problem.ring() {
        return Err(Error::RingMismatch(cutoff.n(), problem.ring()));
    }
    let c = cutoff.to_f64().max(0.0);
    let limit = c * (1.0 + 1e-9) + 1e-9;
    let dim = problem.dim();
    let scales: Vec<f64> = (0..dim).map(|j| problem.domain.axis_scale(j)).collect();
    let bounds: Vec<u64> = scales.iter().map(|s| (c.sqrt() / s).floor() as u64 + 1).collect();
    let lo = problem.min_entry();

    let mut found: Vec<(AlgebraicValue, QuantumNumber)> = Vec::new();
    let mut m = vec![lo; dim];
    fn rec(
        j: usize,
        partial: f64,
        m: &mut Vec<u64>,
        ctx: &(Problem, &Cutoff, f64, &[f64], &[u64], u64),
        out: &mut Vec<(AlgebraicValue, QuantumNumber)>,
    ) {
        let (problem, cutoff, limit, scales, bounds, lo) = *ctx;
        if j == m.len() {
            if problem.is_valid(m) {
                let value = AlgebraicValue::from_quantum_number(problem.ring(), m).expect("valid");
                if cutoff.admits(&value) {
                    out.push((value, QuantumNumber { problem, m: m.clone() }));
                }
            }
            return;
        }
        for x in lo..=bounds[j] {
            let t = scales[j] * x as f64;
            let s = partial + t * t;
            if s > limit {
                break;
            }
            m[j] = x;
            rec(j + 1, s, m, ctx, out);
        }
        m[j] = lo;
    }
    let ctx = (problem, cutoff, limit, scales.as_slice(), bounds.as_slice(), lo);
    rec(0, 0.0, &mut m, &ctx, &mut found);
    found.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.m.cmp(&b.1.m)));
    let (values, points) = found.into_iter().unzip();
    Ok(LatticeRegion {
        problem,
        cutoff: cutoff.clone(),
        points,
        values,
    })
}

/// Q(λ): quantum numbers with eigenvalue strictly below `v`.
pub fn region_below(problem: Problem, v: &AlgebraicValue) -> Result<LatticeRegion> {
    enumerate_below(problem, &Cutoff::exact(v.clone()))
}

/// Reference sets for the triangle's simple even eigenvalues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TriangleReference {
    /// Points (i, j) with 0 ≤ j ≤ i ≤ m, attached to λ_{m,m}.
    Diag(u64),
    /// Attached to λ_{2m,0}; carries the first entry 2m.
    Axis(u64),
}

pub fn reference_set_triangle(kind: TriangleReference) -> Result<Vec<QuantumNumber>> {
    let p = Problem::triangle();
    let mut out = Vec::new();
    match kind {
        TriangleReference::Diag(m) => {
            if m < 1 {
                return Err(Error::InvalidArgument("Diag needs m ≥ 1".into()));
            }
            for i in 0..=m {
                for j in 0..=i {
                    out.push(QuantumNumber::new(p, vec![i, j])?);
                }
            }
        }
        TriangleReference::Axis(two_m) => {
            if two_m < 2 || two_m % 2 == 1 {
                return Err(Error::InvalidArgument("Axis needs an even entry ≥ 2".into()));
            }
            let m = (two_m / 2) as i64;
            for i in 0..=m {
                for j in -i..=i {
                    out.push(QuantumNumber::new(p, vec![(m + j) as u64, (m - i) as u64])?);
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// The lattice box {m̃ ∈ Q : m̃_j ≤ m_j}.
pub fn reference_set_box(m: &QuantumNumber) -> Result<Vec<QuantumNumber>> {
    let problem = m.problem();
    if !matches!(problem.domain, Domain::Box(_)) {
        return Err(Error::InvalidArgument("reference box needs a box quantum number".into()));
    }
    let lo = problem.min_entry();
    let mut out = Vec::new();
    let mut cur: Vec<u64> = vec![lo; m.m.len()];
    loop {
        out.push(QuantumNumber {
            problem,
            m: cur.clone(),
        });
        let mut j = cur.len();
        loop {
            if j == 0 {
                return Ok(out);
            }
            j -= 1;
            if cur[j] < m.m[j] {
                cur[j] += 1;
                for x in cur.iter_mut().skip(j + 1) {
                    *x = lo;
                }
                break;
            }
        }
    }
}
