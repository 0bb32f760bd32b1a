//! End-to-end acceptance checks, one per criterion, shared by the
//! `acceptance` test target and the CLI `selftest` command.

use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{AlgebraicValue, Cutoff, Parity};
use crate::courant::{classify_box, classify_triangle, sharp_positions, Verdict};
use crate::eigenfn::{interior_point, EigenfunctionCombo, Symmetry};
use crate::error::{Error, Result};
use crate::folding::{build_frame, fold_point, fold_qn, partition_count, unfold_qn};
use crate::nodal::{count_formula, count_grid, deficiency_bound_in, dirichlet_deficiency_check_in, exact_deficiency_in};
use crate::qlattice::{enumerate_below, Bc, Domain, Problem, QuantumNumber};
use crate::sampling::LowDiscrepancy;
use crate::spectrum::{build_index, multiplicity_by_factorization, r2};

pub const SEED: u64 = 0x5eed_2024;

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] criterion {} {}: {} ({:.1} s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.seconds
        )
    }
}

type Check = fn() -> Result<String>;

const CRITERIA: [(u8, &str, Check); 9] = [
    (1, "triangle verdicts", criterion_1),
    (2, "box verdicts", criterion_2),
    (3, "nodal formula vs grid", criterion_3),
    (4, "multiplicity arithmetic", criterion_4),
    (5, "frame counts and deficiency bounds", criterion_5),
    (6, "vanishing on frames", criterion_6),
    (7, "folding algebra", criterion_7),
    (8, "dirichlet identity and parity flip", criterion_8),
    (9, "odd lattice vs half-triangle spectrum", criterion_9),
];

pub fn criterion_ids() -> Vec<u8> {
    CRITERIA.iter().map(|c| c.0).collect()
}

pub fn run(id: u8) -> Result<CriterionResult> {
    let (id, name, check) = *CRITERIA
        .iter()
        .find(|c| c.0 == id)
        .ok_or_else(|| Error::InvalidArgument(format!("no criterion {id}")))?;
    let start = Instant::now();
    let outcome = check();
    let seconds = start.elapsed().as_secs_f64();
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(e) => (false, e.to_string()),
    };
    Ok(CriterionResult {
        id,
        name,
        passed,
        detail,
        seconds,
    })
}

pub fn run_all() -> Vec<CriterionResult> {
    criterion_ids()
        .into_iter()
        .map(|id| run(id).expect("known id"))
        .collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Consistency(msg()))
    }
}

fn within(elapsed: Duration, limit: f64, what: &str) -> Result<()> {
    ensure(elapsed.as_secs_f64() < limit, || {
        format!("{what} took {:.1} s, limit {limit} s", elapsed.as_secs_f64())
    })
}

fn sharp_values(v: &[Verdict]) -> Vec<String> {
    v.iter().filter(|x| x.sharp).map(|x| x.value.to_string()).collect()
}

fn criterion_1() -> Result<String> {
    let start = Instant::now();
    let v = classify_triangle(&Cutoff::integer(1, 5000))?;
    let elapsed = start.elapsed();
    let pos = sharp_positions(&v);
    ensure(pos == [1, 2, 3, 4, 6], || format!("sharp positions {pos:?}"))?;
    let vals = sharp_values(&v);
    ensure(vals == ["0", "1", "2", "4", "8"], || format!("sharp values {vals:?}"))?;
    within(elapsed, 30.0, "classification")?;
    Ok(format!(
        "{} levels, sharp positions {pos:?}, {} verified witnesses, {:.2} s",
        v.len(),
        v.len() - pos.len(),
        elapsed.as_secs_f64()
    ))
}

fn criterion_2() -> Result<String> {
    let start = Instant::now();
    let mut parts = Vec::new();
    for (n, cutoff, expected) in [(2u32, 2000, &[1usize, 2, 4, 6][..]), (3, 500, &[1, 2]), (4, 500, &[1, 2])] {
        let v = classify_box(n, &Cutoff::integer(n, cutoff))?;
        let pos = sharp_positions(&v);
        ensure(pos == expected, || format!("n={n}: sharp positions {pos:?}"))?;
        if n == 2 {
            let vals = sharp_values(&v);
            ensure(vals == ["0", "1", "3", "6"], || format!("n=2 sharp values {vals:?}"))?;
        }
        parts.push(format!("n={n}: {} levels, sharp {pos:?}", v.len()));
    }
    within(start.elapsed(), 60.0, "box classification")?;
    Ok(parts.join("; "))
}

fn grid_matches_formula(m: &QuantumNumber) -> Result<u64> {
    let formula = count_formula(m)?.nu;
    let grid = count_grid(&EigenfunctionCombo::basis(m), None)?.nu;
    ensure(formula == grid, || format!("{m}: formula {formula}, grid {grid}"))?;
    Ok(grid)
}

fn all_entries(n: usize, max: u64) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=max).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn criterion_3() -> Result<String> {
    let mut checked = 0usize;
    for n in [2u32, 3] {
        let p = Problem::boxed(n)?;
        let qns: Vec<Vec<u64>> = all_entries(n as usize, 8);
        let counts: Vec<u64> = qns
            .par_iter()
            .map(|e| grid_matches_formula(&QuantumNumber::new(p, e.clone())?))
            .collect::<Result<_>>()?;
        checked += counts.len();
    }
    let t = Problem::triangle();
    for m in 1..=6u64 {
        grid_matches_formula(&QuantumNumber::new(t, vec![m, m])?)?;
        grid_matches_formula(&QuantumNumber::new(t, vec![2 * m, 0])?)?;
        checked += 2;
    }
    let named = [
        (t, vec![3, 3], 10),
        (t, vec![6, 0], 16),
        (Problem::boxed(2)?, vec![1, 1], 4),
        (Problem::boxed(2)?, vec![2, 1], 6),
    ];
    for (p, e, want) in named {
        let m = QuantumNumber::new(p, e)?;
        let nu = grid_matches_formula(&m)?;
        ensure(nu == want, || format!("{m}: ν = {nu}, expected {want}"))?;
    }
    Ok(format!("{checked} basis functions agree, including ν(3,3)=10, ν(6,0)=16, ν(1,1)=4, ν(2,1)=6"))
}

fn criterion_4() -> Result<String> {
    for z in 1..=2000u64 {
        let base = r2(z);
        for k in 1..=6 {
            let scaled = r2(z << k);
            ensure(scaled == base, || format!("r2({z}) = {base} but r2({z}·2^{k}) = {scaled}"))?;
        }
    }
    let mut levels = 0;
    for n in [3u32, 5] {
        let index = build_index(Problem::boxed(n)?, &Cutoff::integer(n, 200))?;
        let bad = index.levels().iter().find(|l| !l.is_simple());
        ensure(bad.is_none(), || format!("n={n}: {} is not simple", bad.unwrap().value))?;
        levels += index.total();
    }
    for n in [2u32, 4] {
        let index = build_index(Problem::boxed(n)?, &Cutoff::integer(n, 200))?;
        for l in index.levels() {
            let f = multiplicity_by_factorization(n, &l.value)?;
            ensure(f == l.multiplicity() as u64, || {
                format!("n={n}, {}: factorization {f}, enumeration {}", l.value, l.multiplicity())
            })?;
        }
        levels += index.total();
    }
    Ok(format!("r2 invariant for z ≤ 2000, k ≤ 6; {levels} box levels checked"))
}

fn criterion_5() -> Result<String> {
    for n in [2u32, 3] {
        for k in 0..=8u32 {
            let got = partition_count(Domain::Box(n), k)?;
            let want = (1u64 << (k / n)) + 1;
            ensure(got == want, || format!("M({k}) for n={n}: flood fill {got}, formula {want}"))?;
        }
    }
    let mut simple = 0usize;
    for domain in [Domain::Triangle, Domain::Box(2), Domain::Box(3)] {
        let problem = Problem::new(domain, Bc::Neumann);
        let index = build_index(problem, &Cutoff::integer(problem.ring(), 201))?;
        let targets: Vec<AlgebraicValue> = index
            .levels()
            .iter()
            .filter(|l| l.is_simple() && !l.value.is_zero())
            .map(|l| l.value.clone())
            .collect();
        let results: Vec<()> = targets
            .par_iter()
            .map(|v| {
                let report = deficiency_bound_in(&index, v)?;
                let (delta, _) = exact_deficiency_in(&index, v)?;
                ensure(report.lower_bound <= delta, || {
                    format!("{domain}, {v}: bound {} exceeds δ = {delta}", report.lower_bound)
                })
            })
            .collect::<Result<_>>()?;
        simple += results.len();
    }
    Ok(format!("M(k) formula for n=2,3, k ≤ 8; bounds hold on {simple} simple eigenvalues"))
}

fn criterion_6() -> Result<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst = 0.0f64;
    let mut cases = 0;
    for (domain, core_cap, cutoff) in [(Domain::Triangle, 100, 1700), (Domain::Box(2), 40, 700), (Domain::Box(3), 30, 200)] {
        let problem = Problem::new(domain, Bc::Neumann);
        let index = build_index(problem, &Cutoff::integer(problem.ring(), cutoff))?;
        let cores: Vec<&AlgebraicValue> = index
            .levels()
            .iter()
            .map(|l| &l.value)
            .filter(|v| v.parity() == Parity::Odd && v.to_f64() < core_cap as f64)
            .collect();
        for case in 0..50 {
            let core = cores[rng.gen_range(0..cores.len())];
            let k = rng.gen_range(0..=4u32);
            let value = core.scale_gamma2(k as i32)?;
            let level = index
                .level(&value)
                .ok_or_else(|| Error::Consistency(format!("{value} missing below {cutoff}")))?;
            let terms = level
                .members
                .iter()
                .map(|m| {
                    let c: f64 = rng.gen_range(-1.0..1.0);
                    (if c.abs() < 1e-3 { 0.5 } else { c }, m.clone())
                })
                .collect();
            let f = EigenfunctionCombo::new(problem, terms)?;
            let r = f.frame_vanishing(&build_frame(domain, k), 10_000, SEED + case)?;
            ensure(r.relative <= 1e-9, || {
                format!("{domain}, λ = {value}, k = {k}: max |φ| / sup = {:e}", r.relative)
            })?;
            worst = worst.max(r.relative);
            cases += 1;
        }
    }
    Ok(format!("{cases} random eigenfunctions, worst relative frame value {worst:.2e}"))
}

fn fold_roundtrip(m: &QuantumNumber) -> Result<()> {
    let u = unfold_qn(m)?;
    let value = m.value();
    ensure(fold_qn(&u)? == *m, || format!("F_Q(U_Q({m})) ≠ {m}"))?;
    ensure(u.value() == value.scale_gamma2(1)?, || format!("λ(U_Q({m})) is not γ²λ"))?;
    if m.parity() == Parity::Even {
        let f = fold_qn(m)?;
        ensure(unfold_qn(&f)? == *m, || format!("U_Q(F_Q({m})) ≠ {m}"))?;
        ensure(f.value() == value.scale_gamma2(-1)?, || format!("λ(F_Q({m})) is not λ/γ²"))?;
    } else {
        ensure(fold_qn(m).is_err(), || format!("odd {m} folded"))?;
    }
    Ok(())
}

fn odometer(n: usize, max: u64, first: u64, mut visit: impl FnMut(&[u64]) -> Result<()>) -> Result<()> {
    let mut e = vec![0u64; n];
    e[0] = first;
    loop {
        visit(&e)?;
        let mut j = n - 1;
        loop {
            if j == 0 {
                return Ok(());
            }
            if e[j] < max {
                e[j] += 1;
                break;
            }
            e[j] = 0;
            j -= 1;
        }
    }
}

fn criterion_7() -> Result<String> {
    let mut total = 0u64;
    let t = Problem::triangle();
    for a in 0..=20u64 {
        for b in 0..=a {
            fold_roundtrip(&QuantumNumber::new(t, vec![a, b])?)?;
            total += 1;
        }
    }
    for n in 2..=6u32 {
        let p = Problem::boxed(n)?;
        let counts: Vec<u64> = (0..=20u64)
            .into_par_iter()
            .map(|first| {
                let mut c = 0u64;
                odometer(n as usize, 20, first, |e| {
                    c += 1;
                    fold_roundtrip(&QuantumNumber::new(p, e.to_vec())?)
                })?;
                Ok(c)
            })
            .collect::<Result<_>>()?;
        total += counts.iter().sum::<u64>();
    }

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst = 0.0f64;
    for domain in [Domain::Triangle, Domain::Box(2), Domain::Box(3), Domain::Box(4)] {
        let problem = Problem::new(domain, Bc::Neumann);
        let mut seq = LowDiscrepancy::new(domain.dim(), SEED);
        let points = enumerate_below(problem, &Cutoff::integer(problem.ring(), 60))?;
        for _ in 0..1000 / 4 {
            let m = &points.points()[rng.gen_range(0..points.len())];
            let phi = EigenfunctionCombo::basis(m);
            let up = phi.unfold_fn()?;
            let half = loop {
                let p = interior_point(domain, &seq.next_point());
                if crate::folding::in_half(domain, &p) {
                    break p;
                }
            };
            let lhs = up.eval(&half)?;
            let rhs = phi.eval(&fold_point(domain, &half)?)?;
            let rel = (lhs - rhs).abs() / phi.sup_bound();
            ensure(rel <= 1e-12, || format!("{domain}, {m}: folding law off by {rel:e}"))?;
            worst = worst.max(rel);
        }
    }
    Ok(format!(
        "{total} quantum numbers round-trip with exact γ^±2 scaling; pointwise law worst {worst:.1e} on 1000 points"
    ))
}

fn criterion_8() -> Result<String> {
    let problem = Problem::new(Domain::Box(2), Bc::Dirichlet);
    let index = build_index(problem, &Cutoff::integer(2, 301))?;
    let mut qualifying = Vec::new();
    for l in index.levels() {
        if l.parity() != Parity::Even || !l.is_simple() {
            continue;
        }
        let half = l.value.scale_gamma2(-1)?;
        if index.level(&half).is_some_and(|h| h.is_simple()) {
            qualifying.push(l.value.clone());
        }
    }
    let checks = qualifying
        .par_iter()
        .map(|v| {
            let c = dirichlet_deficiency_check_in(&index, v)?;
            ensure(c.lhs == c.rhs, || format!("λ = {v}: δ = {}, identity gives {}", c.lhs, c.rhs))?;
            Ok(c)
        })
        .collect::<Result<Vec<_>>>()?;
    let six = checks
        .iter()
        .find(|c| c.lambda == AlgebraicValue::from_integer(2, 6))
        .ok_or_else(|| Error::Consistency("λ = 6 did not qualify".into()))?;
    ensure(six.lhs == 0, || format!("δ(6) = {}", six.lhs))?;

    let mut flips = 0usize;
    for domain in [Domain::Triangle, Domain::Box(2), Domain::Box(3)] {
        let p = Problem::new(domain, Bc::Dirichlet);
        let region = enumerate_below(p, &Cutoff::integer(p.ring(), 201))?;
        for m in region.points() {
            let want = match m.parity() {
                Parity::Odd => Symmetry::Even,
                Parity::Even => Symmetry::Odd,
            };
            let got = EigenfunctionCombo::basis(m).symmetry_check(64, SEED);
            ensure(got == want, || format!("{domain} Dirichlet {m}: {got:?}, expected {want:?}"))?;
            flips += 1;
        }
    }
    Ok(format!(
        "identity exact on {} eigenvalues (δ(6) = 0); parity flip on {flips} Dirichlet basis functions",
        checks.len()
    ))
}

fn criterion_9() -> Result<String> {
    let region = enumerate_below(Problem::triangle(), &Cutoff::integer(1, 2001))?;
    let mut odd: Vec<u64> = region
        .points()
        .iter()
        .filter(|m| m.parity() == Parity::Odd)
        .map(|m| m.entries().iter().map(|x| x * x).sum())
        .collect();
    odd.sort_unstable();
    // N-N-D-D square of side π/√2 restricted to functions symmetric about its diagonal.
    let mut dnn = Vec::new();
    for p in 0u64.. {
        if (2 * p + 1).pow(2) / 2 > 2001 {
            break;
        }
        for q in 0..=p {
            let v = ((2 * p + 1).pow(2) + (2 * q + 1).pow(2)) / 2;
            if v < 2001 {
                dnn.push(v);
            }
        }
    }
    dnn.sort_unstable();
    let mut previous = 0;
    for lambda in 1..=2000u64 {
        let lattice = odd.partition_point(|&v| v < lambda);
        let spectral = dnn.partition_point(|&v| v < lambda);
        ensure(lattice == spectral, || format!("λ = {lambda}: |O(λ)| = {lattice}, DNN count {spectral}"))?;
        ensure(lattice >= previous, || format!("count decreases at {lambda}"))?;
        previous = lattice;
    }
    Ok(format!("counts agree for every integer λ ≤ 2000 ({previous} odd points)"))
}
