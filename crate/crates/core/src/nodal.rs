//! Nodal-domain counts (closed form and grid oracle), nodal deficiency
//! bounds and the Dirichlet deficiency identity.

use serde::Serialize;

use crate::algebra::{AlgebraicValue, Cutoff, Parity};
use crate::eigenfn::{EigenfunctionCombo, SeparableTerm};
use crate::error::{Error, Result};
use crate::folding::{domain_mask, partition_count};
use crate::qlattice::{region_below, Bc, Domain, Problem, QuantumNumber};
use crate::raster::{components, Grid, EXCLUDED};
use crate::spectrum::{build_index, odd_core, SpectrumIndex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CountMethod {
    Formula,
    Grid { resolution: usize, stable: bool },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NodalCount {
    pub nu: u64,
    pub method: CountMethod,
}

/// Closed-form ν for box basis functions and the triangle shapes (m,m),
/// (2m,0).
pub fn count_formula(m: &QuantumNumber) -> Result<NodalCount> {
    let e = m.entries();
    let p = m.problem();
    let nu = match (p.domain, p.bc) {
        (Domain::Box(_), Bc::Neumann) => e.iter().map(|&x| x + 1).product(),
        (Domain::Box(_), Bc::Dirichlet) => e.iter().product(),
        (Domain::Triangle, Bc::Neumann) if e[0] == e[1] => (e[0] + 1) * (e[0] + 2) / 2,
        (Domain::Triangle, Bc::Neumann) if e[1] == 0 && e[0] % 2 == 0 => (e[0] / 2 + 1).pow(2),
        _ => {
            return Err(Error::Unsupported(format!(
                "no closed-form nodal count for {m} on the {p}; use the grid count"
            )))
        }
    };
    Ok(NodalCount {
        nu,
        method: CountMethod::Formula,
    })
}

/// Sign raster of a function together with its component labels.
#[derive(Clone, Debug)]
pub struct NodalRaster {
    pub grid: Grid,
    pub signs: Vec<i8>,
    pub labels: Vec<u32>,
    pub count: usize,
}

const MAX_DEPTH: u32 = 24;

struct Sampler<'a> {
    terms: &'a [SeparableTerm],
    /// |∂²f/∂x_a²| ≤ curvature[a]
    curvature: Vec<f64>,
}

impl Sampler<'_> {
    fn eval(&self, p: &[f64]) -> f64 {
        self.terms.iter().map(|t| t.eval(p)).sum()
    }

    /// True when f keeps the sign `s` on the segment from `p` (value `va`)
    /// to p + len·e_axis (value `vb`).
    fn keeps_sign(&self, p: &mut [f64], axis: usize, len: f64, va: f64, vb: f64, depth: u32) -> bool {
        if va.abs().min(vb.abs()) > self.curvature[axis] * len * len / 8.0 {
            return true;
        }
        if depth >= MAX_DEPTH {
            return false;
        }
        let x0 = p[axis];
        p[axis] = x0 + len / 2.0;
        let vm = self.eval(p);
        p[axis] = x0;
        if vm == 0.0 || (vm > 0.0) != (va > 0.0) {
            return false;
        }
        if !self.keeps_sign(p, axis, len / 2.0, va, vm, depth + 1) {
            return false;
        }
        p[axis] = x0 + len / 2.0;
        let ok = self.keeps_sign(p, axis, len / 2.0, vm, vb, depth + 1);
        p[axis] = x0;
        ok
    }
}

fn auto_cells(f: &EigenfunctionCombo, resolution: Option<usize>) -> Vec<usize> {
    let lengths = f.problem().domain.edge_lengths();
    let hp = f.half_periods();
    let mut cells: Vec<usize> = hp.iter().map(|h| 8 * h.ceil() as usize + 8).collect();
    if let Domain::Triangle = f.problem().domain {
        let c = cells[0].max(cells[1]);
        cells = vec![c, c];
    }
    cells[0] = cells[0].max(16);
    if let Some(r) = resolution {
        for (a, c) in cells.iter_mut().enumerate() {
            let want = (r as f64 * lengths[a] / lengths[0]).ceil() as usize;
            *c = (*c).max(want);
        }
    }
    cells
}

fn raster(f: &EigenfunctionCombo, cells: &[usize], want_labels: bool) -> (Grid, Vec<i8>, crate::raster::Components) {
    let domain = f.problem().domain;
    let lengths = domain.edge_lengths();
    let grid = Grid::new(&lengths, cells);
    let terms = f.separable();
    let dim = cells.len();

    // Per-term, per-axis factor tables.
    let tables: Vec<Vec<Vec<f64>>> = terms
        .iter()
        .map(|t| {
            t.factors
                .iter()
                .enumerate()
                .map(|(a, (trig, w))| (0..cells[a]).map(|i| trig.apply(w * grid.coord(a, i))).collect())
                .collect()
        })
        .collect();
    let mut mask = domain_mask(domain, &grid);
    let mut values = vec![0.0f64; grid.len()];
    let mut mi = vec![0usize; dim];
    for (idx, v) in values.iter_mut().enumerate() {
        if mask[idx] {
            let mut s = 0.0;
            for (t, tab) in terms.iter().zip(&tables) {
                let mut prod = t.coef;
                for (a, col) in tab.iter().enumerate() {
                    prod *= col[mi[a]];
                }
                s += prod;
            }
            *v = s;
            if s == 0.0 {
                mask[idx] = false;
            }
        }
        for a in (0..dim).rev() {
            mi[a] += 1;
            if mi[a] < cells[a] {
                break;
            }
            mi[a] = 0;
        }
    }
    let signs: Vec<i8> = values
        .iter()
        .zip(&mask)
        .map(|(v, &m)| if !m { 0 } else if *v > 0.0 { 1 } else { -1 })
        .collect();
    let curvature = (0..dim)
        .map(|a| terms.iter().map(|t| t.coef.abs() * t.factors[a].1 * t.factors[a].1).sum())
        .collect();
    let sampler = Sampler {
        terms: &terms,
        curvature,
    };
    let comps = components(
        &grid,
        &mask,
        |idx, axis| {
            let nb = idx + grid.stride(axis);
            if signs[idx] != signs[nb] {
                return false;
            }
            let h = grid.spacing(axis);
            if values[idx].abs().min(values[nb].abs()) > sampler.curvature[axis] * h * h / 8.0 {
                return true;
            }
            let mut p = grid.point(idx);
            sampler.keeps_sign(&mut p, axis, grid.spacing(axis), values[idx], values[nb], 0)
        },
        want_labels,
    );
    (grid, signs, comps)
}

/// Grid oracle for ν: components of same-sign samples joined along
/// certified sign-constant edges, accepted once a resolution and its
/// doubling agree.
pub fn count_grid(f: &EigenfunctionCombo, resolution: Option<usize>) -> Result<NodalCount> {
    let mut cells = auto_cells(f, resolution);
    let mut count = raster(f, &cells, false).2.count;
    for _ in 0..3 {
        let finer: Vec<usize> = cells.iter().map(|c| 2 * c).collect();
        let next = raster(f, &finer, false).2.count;
        if next == count {
            return Ok(NodalCount {
                nu: count as u64,
                method: CountMethod::Grid {
                    resolution: cells[0],
                    stable: true,
                },
            });
        }
        cells = finer;
        count = next;
    }
    Err(Error::Unstable(format!(
        "nodal count of {:?} changed under every refinement up to {} cells",
        f.terms(),
        cells[0]
    )))
}

/// Labelled sign raster at the automatic (or requested) resolution.
pub fn nodal_raster(f: &EigenfunctionCombo, resolution: Option<usize>) -> NodalRaster {
    let cells = auto_cells(f, resolution);
    let (grid, signs, comps) = raster(f, &cells, true);
    NodalRaster {
        grid,
        signs,
        labels: comps.labels.unwrap_or_default(),
        count: comps.count,
    }
}

impl NodalRaster {
    pub fn is_included(&self, idx: usize) -> bool {
        self.labels[idx] != EXCLUDED
    }
}

/// ν by formula when available, otherwise by the grid oracle.
pub fn count_basis(m: &QuantumNumber) -> Result<NodalCount> {
    count_formula(m).or_else(|_| count_grid(&EigenfunctionCombo::basis(m), None))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Delta {
    Exact(i64),
    AtLeast(i64),
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundTerms {
    /// Multiplicity of the odd core (equal to that of λ).
    pub d_core: u64,
    pub k: u32,
    /// Number of pieces of the k-frame partition.
    pub m_k: u64,
    /// |∂→Q(λ⁽⁰⁾) ∩ E|, used only when k = 0.
    pub boundary_even: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DeficiencyReport {
    pub lambda: AlgebraicValue,
    pub position: u64,
    pub multiplicity: u64,
    pub core: AlgebraicValue,
    pub bound_terms: BoundTerms,
    /// (d − 1)(M(k) − 1)
    pub frame_bound: i64,
    /// |∂→Q(λ⁽⁰⁾) ∩ E| − 1 when k = 0
    pub boundary_bound: Option<i64>,
    pub lower_bound: i64,
    pub delta: Delta,
    /// Grid count of the unique basis function, for simple eigenvalues.
    pub nu: Option<u64>,
}

fn cutoff_above(v: &AlgebraicValue) -> Cutoff {
    Cutoff::exact(v.add(&AlgebraicValue::from_integer(v.n(), 1)).expect("same ring"))
}

/// Lower bounds on δ(λ) for a nonzero Neumann eigenvalue.
pub fn deficiency_bound(domain: Domain, lambda: &AlgebraicValue) -> Result<DeficiencyReport> {
    let index = build_index(Problem::new(domain, Bc::Neumann), &cutoff_above(lambda))?;
    deficiency_bound_in(&index, lambda)
}

pub fn deficiency_bound_in(index: &SpectrumIndex, lambda: &AlgebraicValue) -> Result<DeficiencyReport> {
    let problem = index.problem();
    if problem.bc != Bc::Neumann {
        return Err(Error::Unsupported("deficiency bounds are stated for the Neumann problem".into()));
    }
    let level = index
        .level(lambda)
        .ok_or_else(|| Error::NotAnEigenvalue(lambda.to_string()))?;
    if lambda.is_zero() {
        return Err(Error::InvalidArgument("the ground state has no odd core".into()));
    }
    let counting = index.counting(lambda)?;
    let oc = odd_core(lambda)?;
    let d_core = index
        .level(&oc.core)
        .ok_or_else(|| Error::Consistency(format!("odd core {} missing from the spectrum", oc.core)))?
        .multiplicity() as u64;
    if d_core != level.multiplicity() as u64 {
        return Err(Error::Consistency(format!(
            "multiplicity of {lambda} is {} but its odd core {} has {d_core}",
            level.multiplicity(),
            oc.core
        )));
    }
    let m_k = partition_count(problem.domain, oc.k)?;
    let frame_bound = (d_core as i64 - 1) * (m_k as i64 - 1);
    let boundary_even = if oc.k == 0 {
        let region = region_below(problem, &oc.core)?;
        Some(
            region
                .right_boundary()
                .iter()
                .filter(|m| m.parity() == Parity::Even)
                .count() as u64,
        )
    } else {
        None
    };
    let boundary_bound = boundary_even.map(|b| b as i64 - 1);
    let lower_bound = frame_bound.max(boundary_bound.unwrap_or(0)).max(0);
    Ok(DeficiencyReport {
        lambda: lambda.clone(),
        position: counting.position,
        multiplicity: counting.multiplicity,
        core: oc.core,
        bound_terms: BoundTerms {
            d_core,
            k: oc.k,
            m_k,
            boundary_even,
        },
        frame_bound,
        boundary_bound,
        lower_bound,
        delta: Delta::AtLeast(lower_bound),
        nu: None,
    })
}

/// δ = N(λ) − ν(φ) for a simple eigenvalue, with ν from the grid oracle.
pub fn exact_deficiency_in(index: &SpectrumIndex, lambda: &AlgebraicValue) -> Result<(i64, NodalCount)> {
    let level = index
        .level(lambda)
        .ok_or_else(|| Error::NotAnEigenvalue(lambda.to_string()))?;
    if !level.is_simple() {
        return Err(Error::Unsupported(format!(
            "{lambda} has multiplicity {}; δ needs a minimum over the eigenspace",
            level.multiplicity()
        )));
    }
    let count = count_grid(&EigenfunctionCombo::basis(&level.members[0]), None)?;
    let n = index.counting(lambda)?.position as i64;
    Ok((n - count.nu as i64, count))
}

/// Bounds plus, for simple eigenvalues, the exact grid-computed δ.
pub fn deficiency_report(domain: Domain, lambda: &AlgebraicValue) -> Result<DeficiencyReport> {
    let index = build_index(Problem::new(domain, Bc::Neumann), &cutoff_above(lambda))?;
    let mut report = deficiency_bound_in(&index, lambda)?;
    if report.multiplicity == 1 {
        let (delta, count) = exact_deficiency_in(&index, lambda)?;
        report.delta = Delta::Exact(delta);
        report.nu = Some(count.nu);
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct DirichletCheck {
    pub lambda: AlgebraicValue,
    pub half: AlgebraicValue,
    pub position: u64,
    pub nu: u64,
    pub half_position: u64,
    pub half_nu: u64,
    /// |∂→Q(λ) ∩ O|
    pub boundary_odd: u64,
    /// N(λ) − ν(φ_λ)
    pub lhs: i64,
    /// 2·δ(λ/γ²) + |∂→Q(λ) ∩ O| − 1
    pub rhs: i64,
}

/// Both sides of the Dirichlet deficiency identity for an even simple
/// eigenvalue whose fold is simple too.
pub fn dirichlet_deficiency_check(domain: Domain, lambda: &AlgebraicValue) -> Result<DirichletCheck> {
    let index = build_index(Problem::new(domain, Bc::Dirichlet), &cutoff_above(lambda))?;
    dirichlet_deficiency_check_in(&index, lambda)
}

pub fn dirichlet_deficiency_check_in(index: &SpectrumIndex, lambda: &AlgebraicValue) -> Result<DirichletCheck> {
    let problem = index.problem();
    if problem.bc != Bc::Dirichlet {
        return Err(Error::InvalidArgument("the identity concerns the Dirichlet problem".into()));
    }
    if index.level(lambda).is_none() {
        return Err(Error::NotAnEigenvalue(lambda.to_string()));
    }
    if lambda.parity() != Parity::Even {
        return Err(Error::InvalidArgument(format!("{lambda} is odd; the identity needs an even eigenvalue")));
    }
    let half = lambda.scale_gamma2(-1)?;
    if index.level(&half).is_none() {
        return Err(Error::Unsupported(format!("{half} is not a Dirichlet eigenvalue")));
    }
    let (lhs, count) = exact_deficiency_in(index, lambda)?;
    let (half_delta, half_count) = exact_deficiency_in(index, &half)?;
    let boundary_odd = region_below(problem, lambda)?
        .right_boundary()
        .iter()
        .filter(|m| m.parity() == Parity::Odd)
        .count() as u64;
    Ok(DirichletCheck {
        lambda: lambda.clone(),
        half: half.clone(),
        position: index.counting(lambda)?.position,
        nu: count.nu,
        half_position: index.counting(&half)?.position,
        half_nu: half_count.nu,
        boundary_odd,
        lhs,
        rhs: 2 * half_delta + boundary_odd as i64 - 1,
    })
}
