//! The Walsh-Paley system and its fast transform.
//!
//! With the bit-order convention of [`crate::dyadic`], the Walsh function of
//! frequency `n` takes the value `(-1)^popcount(n AND i)` on cell `i`, which
//! is exactly the natural-order Walsh-Hadamard matrix. Analysis therefore
//! reduces to the iterative in-place butterfly with a `2^-N` Haar factor,
//! and synthesis to the same butterfly with no factor, so that analysis
//! coefficients literally equal the Walsh-Fourier coefficients
//! `f^(n) = integral of f * w_n`.

use crate::dyadic::{PointIndex, Resolution, StepFunction};
use crate::error::{Error, Result};

/// Evaluate the Walsh-Paley function `w_n` at a point: the product of the
/// Rademacher factors `r_k^(n_k)`, i.e. `(-1)^popcount(n AND x)`.
pub fn walsh_eval(n: u64, x: PointIndex) -> i32 {
    if (n & x.value() as u64).count_ones() & 1 == 0 {
        1
    } else {
        -1
    }
}

/// In-place natural-order Walsh-Hadamard butterfly, `O(len * log len)`.
/// No bit-reversal stage is needed under the library's bit-order convention.
pub fn fwht_in_place(values: &mut [f64]) {
    let len = values.len();
    debug_assert!(len.is_power_of_two());
    let mut h = 1;
    while h < len {
        let mut block = 0;
        while block < len {
            for j in block..block + h {
                let a = values[j];
                let b = values[j + h];
                values[j] = a + b;
                values[j + h] = a - b;
            }
            block += 2 * h;
        }
        h *= 2;
    }
}

/// Walsh-Fourier coefficients of a resolution-`N` function: entry `n` is
/// `f^(n)` for `0 <= n < 2^N`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffVector {
    resolution: Resolution,
    coeffs: Vec<f64>,
}

impl CoeffVector {
    pub fn from_coeffs(resolution: Resolution, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != resolution.cells() {
            return Err(Error::ValueLength {
                got: coeffs.len(),
                resolution: resolution.get(),
            });
        }
        Ok(CoeffVector {
            resolution,
            coeffs,
        })
    }

    pub fn zero(resolution: Resolution) -> Self {
        CoeffVector {
            resolution,
            coeffs: vec![0.0; resolution.cells()],
        }
    }

    pub fn resolution(&self) -> Resolution {
        self.resolution
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [f64] {
        &mut self.coeffs
    }

    pub fn coeff(&self, n: u64) -> f64 {
        self.coeffs[n as usize]
    }
}

/// Walsh-Fourier analysis: `coeffs[n] = 2^-N * sum_i f(i) w_n(i)`, computed
/// by the fast butterfly. Exact inverse of [`synthesize`].
pub fn analyze(f: &StepFunction) -> CoeffVector {
    let mut coeffs = f.values().to_vec();
    fwht_in_place(&mut coeffs);
    let scale = f.resolution().measure_per_cell();
    for c in &mut coeffs {
        *c *= scale;
    }
    CoeffVector {
        resolution: f.resolution(),
        coeffs,
    }
}

/// Walsh-Fourier synthesis: `f(i) = sum_n coeffs[n] w_n(i)`, the full
/// partial sum `S_(2^N)` of the coefficient vector.
pub fn synthesize(c: &CoeffVector) -> StepFunction {
    let mut values = c.coeffs.clone();
    fwht_in_place(&mut values);
    StepFunction::from_values(c.resolution, values).expect("coefficient length matches resolution")
}

/// The Dirichlet kernel `D_n`, the sum of the first `n` Walsh functions,
/// realized by synthesis of a 0/1 coefficient mask. For `n = 2^m` the
/// result equals `2^m` on `I_m(0)` and `0` elsewhere.
pub fn dirichlet_kernel(n: u64, resolution: Resolution) -> Result<StepFunction> {
    if n == 0 {
        return Err(Error::OrderOutOfRange {
            n,
            max: resolution.max_order(),
        });
    }
    if n > resolution.max_order() {
        return Err(Error::ResolutionTooCoarse {
            resolution: resolution.get(),
            needed: 64 - (n - 1).leading_zeros(),
        });
    }
    let mut mask = CoeffVector::zero(resolution);
    for j in 0..n as usize {
        mask.coeffs[j] = 1.0;
    }
    Ok(synthesize(&mask))
}

/// The partial sum `S_n f` from a coefficient vector: synthesis of the
/// coefficients truncated below `n`.
pub fn partial_sum(c: &CoeffVector, n: u64) -> Result<StepFunction> {
    if n == 0 || n > c.resolution.max_order() {
        return Err(Error::OrderOutOfRange {
            n,
            max: c.resolution.max_order(),
        });
    }
    let mut truncated = CoeffVector::zero(c.resolution);
    truncated.coeffs[..n as usize].copy_from_slice(&c.coeffs[..n as usize]);
    Ok(synthesize(&truncated))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyadic::Subcube;

    fn res(n: u32) -> Resolution {
        Resolution::new(n).unwrap()
    }

    /// Sample `w_n` on every cell.
    fn sampled_walsh(n: u64, r: Resolution) -> StepFunction {
        let values = (0..r.cells())
            .map(|i| walsh_eval(n, PointIndex::new(i as u32)) as f64)
            .collect();
        StepFunction::from_values(r, values).unwrap()
    }

    #[test]
    fn walsh_eval_examples() {
        for x in 0..64u32 {
            assert_eq!(walsh_eval(0, PointIndex::new(x)), 1);
        }
        assert_eq!(walsh_eval(1, PointIndex::unit(0)), -1);
        // popcount(5 & 5) = 2
        assert_eq!(walsh_eval(5, PointIndex::new(5)), 1);
    }

    #[test]
    fn walsh_eval_matches_rademacher_product() {
        let r = res(6);
        for n in 0..r.max_order() {
            for i in 0..r.cells() as u32 {
                let x = PointIndex::new(i);
                let mut product = 1i32;
                for k in 0..6 {
                    if (n >> k) & 1 == 1 {
                        product *= if x.coordinate(k) == 1 { -1 } else { 1 };
                    }
                }
                assert_eq!(walsh_eval(n, x), product, "n={n}, x={i}");
            }
        }
    }

    #[test]
    fn analyze_picks_out_single_mode() {
        let r = res(2);
        let c = analyze(&sampled_walsh(3, r));
        assert_eq!(c.coeffs(), &[0.0, 0.0, 0.0, 1.0]);

        let c = analyze(&StepFunction::constant(r, 1.0));
        assert_eq!(c.coeffs(), &[1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn orthonormality_exhaustive_small() {
        for n in 1..=6u32 {
            let r = res(n);
            for m in 0..r.max_order() {
                let c = analyze(&sampled_walsh(m, r));
                for (j, &v) in c.coeffs().iter().enumerate() {
                    let want = if j as u64 == m { 1.0 } else { 0.0 };
                    assert_eq!(v, want, "N={n}, mode {m}, coeff {j}");
                }
            }
        }
    }

    #[test]
    fn round_trip_identity() {
        let r = res(10);
        let mut f = StepFunction::zero(r);
        for (i, v) in f.values_mut().iter_mut().enumerate() {
            *v = ((i as f64) * 0.7391).sin();
        }
        let back = synthesize(&analyze(&f));
        for (a, b) in f.values().iter().zip(back.values()) {
            assert!((a - b).abs() <= 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn synthesize_examples() {
        let r = res(2);
        // unit coefficient vector reproduces the sampled Walsh function
        for m in 0..4u64 {
            let mut c = CoeffVector::zero(r);
            c.coeffs_mut()[m as usize] = 1.0;
            assert_eq!(synthesize(&c).values(), sampled_walsh(m, r).values());
        }
        // all-ones coefficients give the Dirichlet kernel D_4
        let c = CoeffVector::from_coeffs(r, vec![1.0; 4]).unwrap();
        assert_eq!(synthesize(&c).values(), &[4.0, 0.0, 0.0, 0.0]);
        // zero coefficients give the zero function
        assert_eq!(
            synthesize(&CoeffVector::zero(r)).values(),
            StepFunction::zero(r).values()
        );
    }

    #[test]
    fn dirichlet_closed_form_at_powers_of_two() {
        for n_res in 1..=8u32 {
            let r = res(n_res);
            for m in 0..=n_res {
                let kernel = dirichlet_kernel(1 << m, r).unwrap();
                let cube = Subcube::new(m, PointIndex::zero()).unwrap();
                for (i, &v) in kernel.values().iter().enumerate() {
                    let want = if cube.contains(PointIndex::new(i as u32)) {
                        (1u64 << m) as f64
                    } else {
                        0.0
                    };
                    assert_eq!(v, want, "N={n_res}, m={m}, cell {i}");
                }
            }
        }
    }

    #[test]
    fn dirichlet_small_orders() {
        let r = res(2);
        assert_eq!(dirichlet_kernel(1, r).unwrap().values(), &[1.0; 4]);

        // direct summation oracle for D_3
        let direct: Vec<f64> = (0..4u32)
            .map(|i| {
                (0..3u64)
                    .map(|k| walsh_eval(k, PointIndex::new(i)) as f64)
                    .sum()
            })
            .collect();
        assert_eq!(direct, vec![3.0, 1.0, 1.0, -1.0]);
        assert_eq!(dirichlet_kernel(3, r).unwrap().values(), &direct[..]);
    }

    #[test]
    fn dirichlet_integral_is_one() {
        let f = dirichlet_kernel(4, res(6)).unwrap();
        assert!((f.integrate() - 1.0).abs() < 1e-14);
        let cube = Subcube::new(2, PointIndex::zero()).unwrap();
        assert!((f.integrate_on(&cube).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn dirichlet_order_errors() {
        assert!(matches!(
            dirichlet_kernel(0, res(3)),
            Err(Error::OrderOutOfRange { .. })
        ));
        assert!(matches!(
            dirichlet_kernel(9, res(3)),
            Err(Error::ResolutionTooCoarse { .. })
        ));
    }

    #[test]
    fn partial_sum_limits() {
        let r = res(5);
        let mut f = StepFunction::zero(r);
        for (i, v) in f.values_mut().iter_mut().enumerate() {
            *v = (i as f64 * 1.3).cos();
        }
        let c = analyze(&f);

        // n = 2^N reproduces the synthesis of the full series
        let full = partial_sum(&c, 32).unwrap();
        assert_eq!(full.values(), synthesize(&c).values());

        // n = 1 is the constant f^(0)
        let first = partial_sum(&c, 1).unwrap();
        for &v in first.values() {
            assert_eq!(v, c.coeff(0));
        }

        assert!(partial_sum(&c, 0).is_err());
        assert!(partial_sum(&c, 33).is_err());
    }

    #[test]
    fn dyadic_partial_sum_is_local_average() {
        let r = res(6);
        let mut f = StepFunction::zero(r);
        for (i, v) in f.values_mut().iter_mut().enumerate() {
            *v = ((i * i + 3) % 17) as f64 - 8.0;
        }
        let c = analyze(&f);
        for m in 0..=6u32 {
            let s = partial_sum(&c, 1 << m).unwrap();
            for b in 0..1u32 << m {
                let cube = Subcube::new(m, PointIndex::new(b)).unwrap();
                let avg = f.integrate_on(&cube).unwrap() * (1u64 << m) as f64;
                for i in cube.indices(r).unwrap() {
                    let got = s.values()[i];
                    assert!(
                        (got - avg).abs() <= 1e-12 * avg.abs().max(1.0),
                        "m={m}, b={b}: {got} vs {avg}"
                    );
                }
            }
        }
    }

    #[test]
    fn dyadic_partial_sum_constant_on_subcubes_exactly() {
        let r = res(7);
        let mut f = StepFunction::zero(r);
        for (i, v) in f.values_mut().iter_mut().enumerate() {
            *v = (i as f64).sqrt() - 5.0;
        }
        let c = analyze(&f);
        for m in 0..=7u32 {
            let s = partial_sum(&c, 1 << m).unwrap();
            for b in 0..1usize << m {
                let first = s.values()[b];
                for i in (b..r.cells()).step_by(1 << m) {
                    assert_eq!(s.values()[i], first, "m={m}, cell {i}");
                }
            }
        }
    }
}
