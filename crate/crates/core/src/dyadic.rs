//! Finite-resolution model of the dyadic group.
//!
//! A point of the group is a 0/1 coordinate sequence; at resolution `N` only
//! the first `N` coordinates are resolved and a point is stored as the index
//! whose bit `j` (least-significant first) is coordinate `x_j`. The group
//! operation is coordinatewise addition mod 2, i.e. XOR of indices. Under
//! this bit order the natural-order fast transform in [`crate::walsh`]
//! produces Walsh-Paley coefficients with no reordering pass.
//!
//! Haar measure gives each coordinate value mass 1/2, so a cell at
//! resolution `N` has measure `2^-N` and the dyadic interval `I_M(x)` (all
//! points agreeing with `x` in the first `M` coordinates) has measure `2^-M`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard cap on the resolution; `2^24` doubles is ~128 MiB per function.
pub const MAX_RESOLUTION: u32 = 24;

/// Default resolution for the experiment front ends.
pub const DEFAULT_RESOLUTION: u32 = 14;

/// Number of resolved coordinates `N`; functions live on `2^N` cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Resolution(u32);

impl Resolution {
    pub fn new(n: u32) -> Result<Self> {
        if (1..=MAX_RESOLUTION).contains(&n) {
            Ok(Resolution(n))
        } else {
            Err(Error::InvalidResolution(n))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Number of resolution-`N` cells, `2^N`.
    pub fn cells(self) -> usize {
        1 << self.0
    }

    /// Largest representable order, `2^N`.
    pub fn max_order(self) -> u64 {
        1 << self.0
    }
}

impl TryFrom<u32> for Resolution {
    type Error = Error;
    fn try_from(n: u32) -> Result<Self> {
        Resolution::new(n)
    }
}

impl From<Resolution> for u32 {
    fn from(r: Resolution) -> u32 {
        r.0
    }
}

/// A group element at finite resolution: index in `[0, 2^N)` with bit `j`
/// equal to coordinate `x_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointIndex(u32);

impl PointIndex {
    pub fn new(i: u32) -> Self {
        PointIndex(i)
    }

    /// The generator `e_j`: coordinate `j` equal to one, all others zero.
    pub fn unit(j: u32) -> Self {
        PointIndex(1 << j)
    }

    pub fn zero() -> Self {
        PointIndex(0)
    }

    pub fn value(self) -> u32 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// Coordinate `x_j` of the point.
    pub fn coordinate(self, j: u32) -> u8 {
        ((self.0 >> j) & 1) as u8
    }

    /// Coordinatewise addition mod 2 (XOR of indices). Self-inverse, with
    /// identity `0`.
    pub fn group_add(self, rhs: PointIndex) -> PointIndex {
        PointIndex(self.0 ^ rhs.0)
    }

    pub fn is_valid_at(self, resolution: Resolution) -> bool {
        (self.0 as usize) < resolution.cells()
    }
}

/// The dyadic interval `I_M(base)`: all points whose first `M` coordinates
/// agree with `base`. The base stores those `M` coordinates; bits at or
/// above `M` must be zero. Its index set at resolution `N >= M` has
/// `2^(N-M)` cells and Haar measure `2^-M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Subcube {
    level: u32,
    base: PointIndex,
}

impl Subcube {
    pub fn new(level: u32, base: PointIndex) -> Result<Self> {
        if level > MAX_RESOLUTION || (level < 32 && base.value() >> level != 0) {
            return Err(Error::InvalidSubcube {
                level,
                base: base.value() as u64,
                resolution: MAX_RESOLUTION,
            });
        }
        Ok(Subcube { level, base })
    }

    /// The whole group, `I_0`.
    pub fn whole() -> Self {
        Subcube {
            level: 0,
            base: PointIndex::zero(),
        }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn base(&self) -> PointIndex {
        self.base
    }

    /// Haar measure `2^-M`.
    pub fn measure(&self) -> f64 {
        (-(self.level as f64)).exp2()
    }

    pub fn contains(&self, x: PointIndex) -> bool {
        let mask = (1u32 << self.level) - 1;
        x.value() & mask == self.base.value()
    }

    /// All cell indices of the interval at resolution `N`, in increasing
    /// order: `base + t * 2^M` for `t` in `[0, 2^(N-M))`.
    ///
    /// Fails with an invalid-subcube error when `M > N`.
    pub fn indices(&self, resolution: Resolution) -> Result<Vec<usize>> {
        if self.level > resolution.get() {
            return Err(Error::InvalidSubcube {
                level: self.level,
                base: self.base.value() as u64,
                resolution: resolution.get(),
            });
        }
        let step = 1usize << self.level;
        let count = 1usize << (resolution.get() - self.level);
        Ok((0..count).map(|t| self.base.index() + t * step).collect())
    }
}

/// One member of the standard decomposition of the complement of `I_M(0)`,
/// tagged with its `(k, l)` label. Pieces with `k < l < M` fix coordinates
/// `x_k = x_l = 1`, zeros in between, and carry one choice of the free
/// coordinates `x_(l+1)..x_(M-1)`; pieces with `l = M` fix `x_k = 1` and
/// zeros elsewhere below `M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComplementPiece {
    pub k: u32,
    pub l: u32,
    pub cube: Subcube,
}

/// Decompose the complement of `I_M(0)` into disjoint level-`M` subcubes.
///
/// The pieces are ordered by `(k, l)` with the `l = M` piece closing each
/// `k` group, and within a `(k, l)` label by the value of the free
/// coordinates. Their index sets are pairwise disjoint and cover exactly
/// the complement of `I_M(0)` at every resolution `N >= M`.
pub fn partition_complement(m: u32) -> Result<Vec<ComplementPiece>> {
    if m == 0 || m > MAX_RESOLUTION {
        return Err(Error::InvalidSubcube {
            level: m,
            base: 0,
            resolution: MAX_RESOLUTION,
        });
    }
    let mut pieces = Vec::new();
    for k in 0..m {
        for l in k + 1..=m {
            if l < m {
                // free coordinates x_(l+1)..x_(M-1)
                let free_bits = m - 1 - l;
                for free in 0..1u32 << free_bits {
                    let base = (1 << k) | (1 << l) | (free << (l + 1));
                    pieces.push(ComplementPiece {
                        k,
                        l,
                        cube: Subcube::new(m, PointIndex::new(base))?,
                    });
                }
            } else {
                pieces.push(ComplementPiece {
                    k,
                    l,
                    cube: Subcube::new(m, PointIndex::new(1 << k))?,
                });
            }
        }
    }
    Ok(pieces)
}

/// A real-valued function constant on resolution-`N` cells, stored as its
/// `2^N` cell values. This is the universal function representation:
/// kernels, partial sums, means, maximal functions and atoms are all step
/// functions.
#[derive(Debug, Clone, PartialEq)]
pub struct StepFunction {
    resolution: Resolution,
    values: Vec<f64>,
}

impl StepFunction {
    pub fn from_values(resolution: Resolution, values: Vec<f64>) -> Result<Self> {
        if values.len() != resolution.cells() {
            return Err(Error::ValueLength {
                got: values.len(),
                resolution: resolution.get(),
            });
        }
        Ok(StepFunction { resolution, values })
    }

    pub fn zero(resolution: Resolution) -> Self {
        StepFunction {
            resolution,
            values: vec![0.0; resolution.cells()],
        }
    }

    pub fn constant(resolution: Resolution, c: f64) -> Self {
        StepFunction {
            resolution,
            values: vec![c; resolution.cells()],
        }
    }

    /// Indicator function of a dyadic interval.
    pub fn indicator(resolution: Resolution, cube: &Subcube) -> Result<Self> {
        let mut f = StepFunction::zero(resolution);
        for i in cube.indices(resolution)? {
            f.values[i] = 1.0;
        }
        Ok(f)
    }

    pub fn resolution(&self) -> Resolution {
        self.resolution
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn value(&self, x: PointIndex) -> f64 {
        self.values[x.index()]
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// The translate `x -> f(x + t)` (group translation).
    pub fn translate(&self, t: PointIndex) -> StepFunction {
        let values = (0..self.values.len())
            .map(|i| self.values[i ^ t.index()])
            .collect();
        StepFunction {
            resolution: self.resolution,
            values,
        }
    }

    pub fn scaled(&self, c: f64) -> StepFunction {
        StepFunction {
            resolution: self.resolution,
            values: self.values.iter().map(|v| c * v).collect(),
        }
    }

    /// Exact Haar integral over the whole group: `2^-N * sum of values`,
    /// summed over the aligned binary tree so that the result is invariant
    /// under group translation of the integrand.
    pub fn integrate(&self) -> f64 {
        dyadic_sum(&self.values) * self.resolution.measure_per_cell()
    }

    /// Haar integral restricted to a dyadic interval.
    pub fn integrate_on(&self, cube: &Subcube) -> Result<f64> {
        if cube.level() > self.resolution.get() {
            return Err(Error::InvalidSubcube {
                level: cube.level(),
                base: cube.base().value() as u64,
                resolution: self.resolution.get(),
            });
        }
        let step = 1usize << cube.level();
        let count = 1usize << (self.resolution.get() - cube.level());
        let mut buf = Vec::with_capacity(count);
        buf.extend((0..count).map(|t| self.values[cube.base().index() + t * step]));
        Ok(dyadic_sum(&buf) * self.resolution.measure_per_cell())
    }
}

impl Resolution {
    /// Haar measure of a single cell, `2^-N`.
    pub fn measure_per_cell(self) -> f64 {
        (-(self.0 as f64)).exp2()
    }
}

/// Sum a power-of-two-length slice over the aligned binary tree: adjacent
/// pairs first, then pairs of pairs, and so on. Every tree node covers an
/// aligned dyadic index range, so a group translation of the input permutes
/// whole subtrees and the floating-point result is bit-identical. The tree
/// also bounds round-off to O(log n) rounding steps per element.
pub fn dyadic_sum(values: &[f64]) -> f64 {
    debug_assert!(values.len().is_power_of_two());
    match values.len() {
        0 => return 0.0,
        1 => return values[0],
        _ => {}
    }
    let mut buf: Vec<f64> = values
        .chunks_exact(2)
        .map(|pair| pair[0] + pair[1])
        .collect();
    let mut len = buf.len();
    while len > 1 {
        len /= 2;
        for i in 0..len {
            buf[i] = buf[2 * i] + buf[2 * i + 1];
        }
    }
    buf[0]
}
