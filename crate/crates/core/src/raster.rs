//! Uniform sample grids with irrational offsets and connected-component
//! labelling over 2n-neighbour edges.

use petgraph::unionfind::UnionFind;

use crate::sampling::grid_offset;

#[derive(Clone, Debug)]
pub struct Grid {
    dims: Vec<usize>,
    h: Vec<f64>,
    strides: Vec<usize>,
}

impl Grid {
    /// Grid over [0, l_a] with `cells[a]` samples per axis.
    pub fn new(lengths: &[f64], cells: &[usize]) -> Self {
        assert_eq!(lengths.len(), cells.len());
        let dims = cells.to_vec();
        let h = lengths.iter().zip(cells).map(|(l, &c)| l / c as f64).collect();
        let mut strides = vec![1; dims.len()];
        for a in (0..dims.len().saturating_sub(1)).rev() {
            strides[a] = strides[a + 1] * dims[a + 1];
        }
        Grid { dims, h, strides }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn spacing(&self, axis: usize) -> f64 {
        self.h[axis]
    }

    pub fn stride(&self, axis: usize) -> usize {
        self.strides[axis]
    }

    pub fn len(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn coord(&self, axis: usize, i: usize) -> f64 {
        (i as f64 + grid_offset(axis)) * self.h[axis]
    }

    /// Index of the last sample whose coordinate is below `x`, if any.
    pub fn index_below(&self, axis: usize, x: f64) -> Option<usize> {
        let t = x / self.h[axis] - grid_offset(axis);
        if t < 0.0 {
            return None;
        }
        let i = t.floor() as usize;
        (i < self.dims[axis]).then_some(i)
    }

    /// First sample index whose coordinate exceeds `x`.
    pub fn first_above(&self, axis: usize, x: f64) -> usize {
        let t = x / self.h[axis] - grid_offset(axis);
        if t < 0.0 {
            0
        } else {
            t.floor() as usize + 1
        }
    }

    /// Last sample index whose coordinate is below `x`, clamped to the grid.
    pub fn last_below(&self, axis: usize, x: f64) -> Option<usize> {
        let t = x / self.h[axis] - grid_offset(axis);
        if t < 0.0 {
            None
        } else {
            Some((t.floor() as usize).min(self.dims[axis] - 1))
        }
    }

    pub fn multi_index(&self, mut idx: usize) -> Vec<usize> {
        self.strides
            .iter()
            .map(|&s| {
                let i = idx / s;
                idx %= s;
                i
            })
            .collect()
    }

    pub fn point(&self, idx: usize) -> Vec<f64> {
        self.multi_index(idx)
            .into_iter()
            .enumerate()
            .map(|(a, i)| self.coord(a, i))
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct Components {
    pub count: usize,
    /// Component label per sample; `u32::MAX` marks excluded samples.
    pub labels: Option<Vec<u32>>,
}

pub const EXCLUDED: u32 = u32::MAX;

/// Counts connected components among samples with `mask[idx]`, joining each
/// sample to its +axis neighbour when `joined(idx, axis)` holds.
pub fn components(
    grid: &Grid,
    mask: &[bool],
    mut joined: impl FnMut(usize, usize) -> bool,
    want_labels: bool,
) -> Components {
    let total = grid.len();
    let dim = grid.dims.len();
    let mut uf: UnionFind<u32> = UnionFind::new(total);
    let mut included = 0usize;
    let mut unions = 0usize;
    let mut mi = vec![0usize; dim];
    for idx in 0..total {
        if mask[idx] {
            included += 1;
            for a in 0..dim {
                if mi[a] + 1 < grid.dims[a] {
                    let nb = idx + grid.strides[a];
                    if mask[nb] && joined(idx, a) && uf.union(idx as u32, nb as u32) {
                        unions += 1;
                    }
                }
            }
        }
        for a in (0..dim).rev() {
            mi[a] += 1;
            if mi[a] < grid.dims[a] {
                break;
            }
            mi[a] = 0;
        }
    }
    let labels = want_labels.then(|| {
        let reps = uf.into_labeling();
        let mut map = std::collections::HashMap::new();
        reps.iter()
            .enumerate()
            .map(|(idx, &r)| {
                if !mask[idx] {
                    EXCLUDED
                } else {
                    let next = map.len() as u32;
                    *map.entry(r).or_insert(next)
                }
            })
            .collect()
    });
    Components {
        count: included - unions,
        labels,
    }
}
