//! Folding and unfolding between a domain and its half, the symmetry
//! reflection, k-frames and the partitions they induce.
//!
//! F maps the half domain onto the whole domain, U = F⁻¹ maps the whole
//! domain onto the half, and R reflects across the cut L.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Mutex, OnceLock};

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::AlgebraicValue;
use crate::error::{Error, Result};
use crate::qlattice::{Domain, QuantumNumber};
use crate::raster::{components, Grid};
use crate::sampling::LowDiscrepancy;

pub type Rat = Ratio<i64>;

const GEOM_TOL: f64 = 1e-9;

/// True when `p` lies in the closed domain.
pub fn contains(domain: Domain, p: &[f64]) -> bool {
    if p.len() != domain.dim() || p.iter().any(|x| !x.is_finite()) {
        return false;
    }
    match domain {
        Domain::Triangle => {
            let (x, y) = (p[0], p[1]);
            y >= -GEOM_TOL && y <= x + GEOM_TOL && x <= PI + GEOM_TOL
        }
        Domain::Box(_) => p
            .iter()
            .zip(domain.edge_lengths())
            .all(|(&x, l)| x >= -GEOM_TOL && x <= l + GEOM_TOL),
    }
}

/// True when `p` lies in the closed half domain.
pub fn in_half(domain: Domain, p: &[f64]) -> bool {
    contains(domain, p)
        && match domain {
            Domain::Triangle => p[0] + p[1] <= PI + GEOM_TOL,
            Domain::Box(_) => p[0] <= PI / 2.0 + GEOM_TOL,
        }
}

/// F: half domain → domain.
pub fn fold_point(domain: Domain, p: &[f64]) -> Result<Vec<f64>> {
    if !in_half(domain, p) {
        return Err(Error::OutsideDomain(p.to_vec()));
    }
    Ok(match domain {
        Domain::Triangle => vec![p[0] + p[1], p[0] - p[1]],
        Domain::Box(_) => {
            let g = domain.gamma();
            let mut q: Vec<f64> = p[1..].iter().map(|x| g * x).collect();
            q.push(g * p[0]);
            q
        }
    })
}

/// U: domain → half domain.
pub fn unfold_point(domain: Domain, p: &[f64]) -> Result<Vec<f64>> {
    if !contains(domain, p) {
        return Err(Error::OutsideDomain(p.to_vec()));
    }
    Ok(match domain {
        Domain::Triangle => vec![(p[0] + p[1]) / 2.0, (p[0] - p[1]) / 2.0],
        Domain::Box(_) => {
            let g = domain.gamma();
            let n = p.len();
            let mut q = vec![p[n - 1] / g];
            q.extend(p[..n - 1].iter().map(|x| x / g));
            q
        }
    })
}

/// R: reflection across L.
pub fn reflect(domain: Domain, p: &[f64]) -> Result<Vec<f64>> {
    if !contains(domain, p) {
        return Err(Error::OutsideDomain(p.to_vec()));
    }
    Ok(match domain {
        Domain::Triangle => vec![PI - p[1], PI - p[0]],
        Domain::Box(_) => {
            let mut q = p.to_vec();
            q[0] = PI - q[0];
            q
        }
    })
}

/// U_Q: multiplies the eigenvalue by the folding factor.
pub fn unfold_qn(m: &QuantumNumber) -> Result<QuantumNumber> {
    let e = m.entries();
    let next = match m.problem().domain {
        Domain::Triangle => vec![e[0] + e[1], e[0] - e[1]],
        Domain::Box(_) => {
            let n = e.len();
            let mut v = vec![2 * e[n - 1]];
            v.extend_from_slice(&e[..n - 1]);
            v
        }
    };
    QuantumNumber::new(m.problem(), next)
}

/// F_Q: divides the eigenvalue by the folding factor; needs even parity.
pub fn fold_qn(m: &QuantumNumber) -> Result<QuantumNumber> {
    let e = m.entries();
    let next = match m.problem().domain {
        Domain::Triangle => {
            if (e[0] + e[1]) % 2 == 1 {
                return Err(Error::FoldParity(m.to_string()));
            }
            vec![(e[0] + e[1]) / 2, (e[0] - e[1]) / 2]
        }
        Domain::Box(_) => {
            if e[0] % 2 == 1 {
                return Err(Error::FoldParity(m.to_string()));
            }
            let mut v = e[1..].to_vec();
            v.push(e[0] / 2);
            v
        }
    };
    QuantumNumber::new(m.problem(), next)
}

/// Explicit subdomains of the triangle's frame partitions with known spectra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Subdomain {
    /// The square (π/2, π) × (0, π/2).
    SquareS,
    /// The rectangle cut out by the k-frame, k ≥ 2.
    RectR(u32),
}

pub fn subdomain_spectrum_value(sub: Subdomain, p: u64, q: u64) -> Result<AlgebraicValue> {
    match sub {
        Subdomain::SquareS => {
            let v = (2 * p + 1).pow(2) + (2 * q + 1).pow(2);
            Ok(AlgebraicValue::from_integer(1, v))
        }
        Subdomain::RectR(k) => {
            if k < 2 || p < 1 || q % 2 == 0 {
                return Err(Error::InvalidArgument(format!(
                    "rectangle spectrum needs k ≥ 2, p ≥ 1 and odd q, got k={k}, p={p}, q={q}"
                )));
            }
            let v = (p * p + q * q) << (k - 1);
            Ok(AlgebraicValue::from_integer(1, v))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Facet {
    /// Triangle segment, endpoints in units of π.
    Segment { a: [Rat; 2], b: [Rat; 2] },
    /// Piece of the hyperplane t_axis = const in normalized box coordinates
    /// t_j = x_j / l_j; `ranges[axis]` is degenerate.
    Slab { axis: usize, ranges: Vec<(Rat, Rat)> },
}

fn half() -> Rat {
    Rat::new(1, 2)
}

impl Facet {
    fn normalized(self) -> Self {
        match self {
            Facet::Segment { a, b } if b < a => Facet::Segment { a: b, b: a },
            other => other,
        }
    }

    /// Preimage under F restricted to the half domain, i.e. the image under U.
    fn unfold(&self) -> Facet {
        match self {
            Facet::Segment { a, b } => {
                let u = |p: &[Rat; 2]| [(p[0] + p[1]) * half(), (p[0] - p[1]) * half()];
                Facet::Segment { a: u(a), b: u(b) }.normalized()
            }
            Facet::Slab { axis, ranges } => {
                let n = ranges.len();
                let mut next = Vec::with_capacity(n);
                let (lo, hi) = ranges[n - 1];
                next.push((lo * half(), hi * half()));
                next.extend_from_slice(&ranges[..n - 1]);
                Facet::Slab {
                    axis: (axis + 1) % n,
                    ranges: next,
                }
            }
        }
    }

    fn reflect(&self) -> Facet {
        match self {
            Facet::Segment { a, b } => {
                let r = |p: &[Rat; 2]| [Rat::one() - p[1], Rat::one() - p[0]];
                Facet::Segment { a: r(a), b: r(b) }.normalized()
            }
            Facet::Slab { axis, ranges } => {
                let mut next = ranges.clone();
                let (lo, hi) = next[0];
                next[0] = (Rat::one() - hi, Rat::one() - lo);
                Facet::Slab { axis: *axis, ranges: next }
            }
        }
    }

    /// Physical endpoints of a segment.
    pub fn segment_points(&self) -> Option<([f64; 2], [f64; 2])> {
        match self {
            Facet::Segment { a, b } => Some(([pi_f(a[0]), pi_f(a[1])], [pi_f(b[0]), pi_f(b[1])])),
            Facet::Slab { .. } => None,
        }
    }

    /// Physical bounds per axis of a slab.
    pub fn slab_bounds(&self, domain: Domain) -> Option<(usize, Vec<(f64, f64)>)> {
        match self {
            Facet::Slab { axis, ranges } => {
                let lengths = domain.edge_lengths();
                let b = ranges
                    .iter()
                    .zip(&lengths)
                    .map(|((lo, hi), l)| (rat_f(*lo) * l, rat_f(*hi) * l))
                    .collect();
                Some((*axis, b))
            }
            Facet::Segment { .. } => None,
        }
    }

    /// Length or (n−1)-dimensional area.
    pub fn measure(&self, domain: Domain) -> f64 {
        match self {
            Facet::Segment { .. } => {
                let (a, b) = self.segment_points().expect("segment");
                ((b[0] - a[0]).powi(2) + (b[1] - a[1]).powi(2)).sqrt()
            }
            Facet::Slab { axis, .. } => {
                let (_, b) = self.slab_bounds(domain).expect("slab");
                b.iter()
                    .enumerate()
                    .filter(|(j, _)| j != axis)
                    .map(|(_, (lo, hi))| hi - lo)
                    .product()
            }
        }
    }

    /// Distance-tolerant membership of a physical point.
    pub fn contains_point(&self, domain: Domain, p: &[f64], tol: f64) -> bool {
        match self {
            Facet::Segment { .. } => {
                let (a, b) = self.segment_points().expect("segment");
                let d = [b[0] - a[0], b[1] - a[1]];
                let len2 = d[0] * d[0] + d[1] * d[1];
                let s = (((p[0] - a[0]) * d[0] + (p[1] - a[1]) * d[1]) / len2).clamp(0.0, 1.0);
                let q = [a[0] + s * d[0], a[1] + s * d[1]];
                ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt() <= tol
            }
            Facet::Slab { .. } => {
                let (_, b) = self.slab_bounds(domain).expect("slab");
                b.iter()
                    .zip(p)
                    .all(|((lo, hi), x)| *x >= lo - tol && *x <= hi + tol)
            }
        }
    }

    /// Point at unit-cube parameters `u` (only the first dim−1 entries are used).
    fn point_at(&self, domain: Domain, u: &[f64]) -> Vec<f64> {
        match self {
            Facet::Segment { .. } => {
                let (a, b) = self.segment_points().expect("segment");
                let s = u[0];
                vec![a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1])]
            }
            Facet::Slab { axis, .. } => {
                let (_, b) = self.slab_bounds(domain).expect("slab");
                let mut k = 0;
                b.iter()
                    .enumerate()
                    .map(|(j, (lo, hi))| {
                        if j == *axis {
                            *lo
                        } else {
                            let x = lo + u[k] * (hi - lo);
                            k += 1;
                            x
                        }
                    })
                    .collect()
            }
        }
    }
}

fn rat_f(r: Rat) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn pi_f(r: Rat) -> f64 {
    rat_f(r) * PI
}

/// S^(k): the k-fold unfolding of the cut L.
#[derive(Clone, Debug)]
pub struct KFrame {
    pub domain: Domain,
    pub k: u32,
    pub facets: Vec<Facet>,
}

pub fn build_frame(domain: Domain, k: u32) -> KFrame {
    let mut facets = vec![match domain {
        Domain::Triangle => Facet::Segment {
            a: [half(), half()],
            b: [Rat::one(), Rat::zero()],
        },
        Domain::Box(n) => {
            let mut ranges = vec![(Rat::zero(), Rat::one()); n as usize];
            ranges[0] = (half(), half());
            Facet::Slab { axis: 0, ranges }
        }
    }];
    for _ in 0..k {
        let mut next: Vec<Facet> = Vec::with_capacity(2 * facets.len());
        for f in &facets {
            let u = f.unfold();
            next.push(u.reflect());
            next.push(u);
        }
        next.sort();
        next.dedup();
        facets = next;
    }
    KFrame { domain, k, facets }
}

impl KFrame {
    pub fn contains_point(&self, p: &[f64], tol: f64) -> bool {
        self.facets.iter().any(|f| f.contains_point(self.domain, p, tol))
    }

    /// Roughly `total` points spread over the facets in proportion to measure,
    /// at least one per facet.
    pub fn sample(&self, total: usize, seed: u64) -> Vec<Vec<f64>> {
        let measures: Vec<f64> = self.facets.iter().map(|f| f.measure(self.domain)).collect();
        let sum: f64 = measures.iter().sum();
        let mut seq = LowDiscrepancy::new(self.domain.dim().saturating_sub(1).max(1), seed);
        let mut out = Vec::with_capacity(total + self.facets.len());
        for (f, m) in self.facets.iter().zip(&measures) {
            let count = ((total as f64) * m / sum).round().max(1.0) as usize;
            for _ in 0..count {
                out.push(f.point_at(self.domain, &seq.next_point()));
            }
        }
        out
    }
}

/// One connected piece of the domain minus a frame.
#[derive(Clone, Debug, Serialize)]
pub struct SubdomainInfo {
    pub representative: Vec<f64>,
    /// Share of the domain's samples that fall in this piece.
    pub sample_fraction: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Partition {
    pub k: u32,
    pub count: u64,
    /// Samples per axis at which the count was certified.
    pub resolution: Vec<usize>,
    pub subdomains: Vec<SubdomainInfo>,
}

fn frame_cells(domain: Domain, k: u32) -> Vec<usize> {
    match domain {
        Domain::Triangle => {
            let c = 16 * (1usize << k.div_ceil(2)) + 16;
            vec![c, c]
        }
        Domain::Box(n) => {
            let c = 8 * (1usize << k.div_ceil(n)) + 8;
            vec![c; n as usize]
        }
    }
}

/// Sample mask of the open domain.
pub(crate) fn domain_mask(domain: Domain, grid: &Grid) -> Vec<bool> {
    match domain {
        Domain::Triangle => (0..grid.len())
            .map(|idx| {
                let mi = grid.multi_index(idx);
                grid.coord(1, mi[1]) < grid.coord(0, mi[0])
            })
            .collect(),
        Domain::Box(_) => vec![true; grid.len()],
    }
}

fn frame_cuts(frame: &KFrame, grid: &Grid) -> Vec<Vec<bool>> {
    let dim = grid.dims().len();
    let mut cut = vec![vec![false; grid.len()]; dim];
    for f in &frame.facets {
        match f {
            Facet::Segment { .. } => {
                let (a, b) = f.segment_points().expect("segment");
                // Crossings with lines x = const cut edges along y, and vice versa.
                for line_axis in 0..2 {
                    let other = 1 - line_axis;
                    if a[line_axis] == b[line_axis] {
                        continue;
                    }
                    let (lo, hi) = if a[line_axis] < b[line_axis] {
                        (a[line_axis], b[line_axis])
                    } else {
                        (b[line_axis], a[line_axis])
                    };
                    let first = grid.first_above(line_axis, lo);
                    for i in first..grid.dims()[line_axis] {
                        let x = grid.coord(line_axis, i);
                        if x > hi {
                            break;
                        }
                        let s = (x - a[line_axis]) / (b[line_axis] - a[line_axis]);
                        let y = a[other] + s * (b[other] - a[other]);
                        if let Some(j) = grid.index_below(other, y) {
                            if j + 1 < grid.dims()[other] {
                                let mut mi = [0usize; 2];
                                mi[line_axis] = i;
                                mi[other] = j;
                                let idx = mi[0] * grid.stride(0) + mi[1] * grid.stride(1);
                                cut[other][idx] = true;
                            }
                        }
                    }
                }
            }
            Facet::Slab { .. } => {
                let (axis, bounds) = f.slab_bounds(frame.domain).expect("slab");
                let Some(i0) = grid.index_below(axis, bounds[axis].0) else {
                    continue;
                };
                if i0 + 1 >= grid.dims()[axis] {
                    continue;
                }
                let mut spans = Vec::with_capacity(dim);
                for (j, (lo, hi)) in bounds.iter().enumerate() {
                    if j == axis {
                        spans.push((i0, i0));
                        continue;
                    }
                    let first = grid.first_above(j, *lo);
                    let last = match grid.last_below(j, *hi) {
                        Some(i) => i,
                        None => {
                            spans.clear();
                            break;
                        }
                    };
                    if first > last {
                        spans.clear();
                        break;
                    }
                    spans.push((first, last));
                }
                if spans.len() != dim {
                    continue;
                }
                let mut mi: Vec<usize> = spans.iter().map(|s| s.0).collect();
                'walk: loop {
                    let idx: usize = mi.iter().enumerate().map(|(a, i)| i * grid.stride(a)).sum();
                    cut[axis][idx] = true;
                    for a in (0..dim).rev() {
                        if mi[a] < spans[a].1 {
                            mi[a] += 1;
                            continue 'walk;
                        }
                        mi[a] = spans[a].0;
                    }
                    break;
                }
            }
        }
    }
    cut
}

fn raster_partition(frame: &KFrame, cells: &[usize], want_labels: bool) -> (Grid, crate::raster::Components) {
    let grid = Grid::new(&frame.domain.edge_lengths(), cells);
    let mask = domain_mask(frame.domain, &grid);
    let cut = frame_cuts(frame, &grid);
    let comps = components(&grid, &mask, |idx, axis| !cut[axis][idx], want_labels);
    (grid, comps)
}

/// Connected components of the open domain minus S^(k), certified by
/// agreement between a resolution and its doubling.
pub fn partition(domain: Domain, k: u32) -> Result<Partition> {
    let frame = build_frame(domain, k);
    let mut cells = frame_cells(domain, k);
    let mut count = raster_partition(&frame, &cells, false).1.count;
    for _ in 0..3 {
        let finer: Vec<usize> = cells.iter().map(|c| 2 * c).collect();
        let next = raster_partition(&frame, &finer, false).1.count;
        if next == count {
            let (grid, comps) = raster_partition(&frame, &cells, true);
            let labels = comps.labels.expect("labels requested");
            let mut reps: Vec<Option<Vec<f64>>> = vec![None; comps.count];
            let mut sizes = vec![0usize; comps.count];
            let mut total = 0usize;
            for (idx, &l) in labels.iter().enumerate() {
                if l == crate::raster::EXCLUDED {
                    continue;
                }
                total += 1;
                sizes[l as usize] += 1;
                if reps[l as usize].is_none() {
                    reps[l as usize] = Some(grid.point(idx));
                }
            }
            let subdomains = reps
                .into_iter()
                .zip(sizes)
                .map(|(r, s)| SubdomainInfo {
                    representative: r.expect("every label has a sample"),
                    sample_fraction: s as f64 / total as f64,
                })
                .collect();
            return Ok(Partition {
                k,
                count: count as u64,
                resolution: cells,
                subdomains,
            });
        }
        cells = finer;
        count = next;
    }
    Err(Error::Unstable(format!(
        "frame partition of the {domain} at k={k} changed under every refinement up to {cells:?}"
    )))
}

fn partition_memo() -> &'static Mutex<HashMap<(Domain, u32), u64>> {
    static MEMO: OnceLock<Mutex<HashMap<(Domain, u32), u64>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// M(k): number of pieces of the k-frame partition (memoized).
pub fn partition_count(domain: Domain, k: u32) -> Result<u64> {
    if let Some(&m) = partition_memo().lock().expect("memo lock").get(&(domain, k)) {
        return Ok(m);
    }
    let m = partition(domain, k)?.count;
    partition_memo().lock().expect("memo lock").insert((domain, k), m);
    Ok(m)
}
