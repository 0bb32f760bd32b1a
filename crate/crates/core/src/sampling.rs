//! Deterministic low-discrepancy samples and irrational grid offsets.

/// Fractional parts of √2, √3, √5, √7, √11, √13, √17, √19.
pub const GRID_OFFSETS: [f64; 8] = [
    0.414_213_562_373_095,
    0.732_050_807_568_877,
    0.236_067_977_499_790,
    0.645_751_311_064_591,
    0.316_624_790_355_400,
    0.605_551_275_463_989,
    0.123_105_625_617_661,
    0.358_898_943_540_674,
];

pub fn grid_offset(axis: usize) -> f64 {
    GRID_OFFSETS[axis % GRID_OFFSETS.len()]
}

/// Additive recurrence with the generalized golden ratio: point i is
/// frac(s + i·α) with α_j = φ_d^-(j+1), where φ_d is the root of
/// x^(d+1) = x + 1.
#[derive(Clone, Debug)]
pub struct LowDiscrepancy {
    alpha: Vec<f64>,
    state: Vec<f64>,
}

impl LowDiscrepancy {
    pub fn new(dim: usize, seed: u64) -> Self {
        let mut phi = 2.0f64;
        for _ in 0..64 {
            phi = (1.0 + phi).powf(1.0 / (dim as f64 + 1.0));
        }
        let alpha = (0..dim).map(|j| phi.powi(-(j as i32 + 1)).fract()).collect();
        let state = (0..dim)
            .map(|j| (grid_offset(j) * (seed as f64 + 1.0)).fract())
            .collect();
        LowDiscrepancy { alpha, state }
    }

    pub fn dim(&self) -> usize {
        self.alpha.len()
    }

    /// Next point of the unit cube, strictly inside (0, 1)^d.
    pub fn next_point(&mut self) -> Vec<f64> {
        for (s, a) in self.state.iter_mut().zip(&self.alpha) {
            *s = (*s + a).fract();
        }
        self.state.iter().map(|&s| s.clamp(1e-12, 1.0 - 1e-12)).collect()
    }
}
