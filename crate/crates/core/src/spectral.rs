//! Discrete Fourier magnitudes and period-doubling detection from spectral
//! peaks.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::cubic::modulus;
use crate::{Error, Result};

/// Default fraction of the strongest bin a peak must reach to count as
/// relevant in [`first_relevant_peak`].
pub const DEFAULT_RELEVANCE: f64 = 0.005;

/// Magnitudes `|X_j|` of the DFT of a real series.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    /// series length
    pub n: usize,
    /// `|X_j|` for `j = 0..n`
    pub magnitudes: Vec<f64>,
}

/// Peak location in (possibly fractional) bin units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak {
    /// refined bin index
    pub index: f64,
    /// magnitude at the integer bin
    pub magnitude: f64,
}

fn fft_in_place(a: &mut [Complex64]) {
    let n = a.len();
    let mut j = 0;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            a.swap(i, j);
        }
    }
    let mut len = 2;
    while len <= n {
        let ang = -2.0 * core::f64::consts::PI / len as f64;
        for start in (0..n).step_by(len) {
            for k in 0..len / 2 {
                let w = Complex64::new(libm::cos(ang * k as f64), libm::sin(ang * k as f64));
                let u = a[start + k];
                let v = a[start + k + len / 2] * w;
                a[start + k] = u + v;
                a[start + k + len / 2] = u - v;
            }
        }
        len <<= 1;
    }
}

/// `X_j = sum_k s_k exp(-2 pi i j k / n)`. Radix-2 FFT for power-of-two
/// lengths, direct summation otherwise.
pub fn dft(series: &[f64]) -> Spectrum {
    let n = series.len();
    let coeffs: Vec<Complex64> = if n.is_power_of_two() {
        let mut a: Vec<Complex64> = series.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        fft_in_place(&mut a);
        a
    } else {
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        let base = -2.0 * core::f64::consts::PI / n as f64;
        for (j, o) in out.iter_mut().enumerate() {
            for (k, &x) in series.iter().enumerate() {
                let ang = base * ((j * k) % n) as f64;
                *o += Complex64::new(x * libm::cos(ang), x * libm::sin(ang));
            }
        }
        out
    };
    Spectrum { n, magnitudes: coeffs.iter().map(modulus).collect() }
}

fn refine(mag: &[f64], k: usize) -> f64 {
    if k == 0 || k + 1 >= mag.len() {
        return k as f64;
    }
    let (a, b, c) = (mag[k - 1], mag[k], mag[k + 1]);
    if a <= 1e-12 * b || c <= 1e-12 * b {
        return k as f64;
    }
    let (la, lb, lc) = (libm::log(a), libm::log(b), libm::log(c));
    let denom = la - 2.0 * lb + lc;
    if denom >= 0.0 {
        return k as f64;
    }
    let d = 0.5 * (la - lc) / denom;
    k as f64 + d.clamp(-0.5, 0.5)
}

/// Strongest bin in `[0, n/2]` (or `[1, n/2]` with `exclude_dc`), with
/// sub-bin refinement by a parabola through the log-magnitudes.
pub fn dominant_peak(s: &Spectrum, exclude_dc: bool) -> Result<Peak> {
    if s.n < 4 {
        return Err(Error::InvalidArgument("spectrum needs at least four samples"));
    }
    let lo = usize::from(exclude_dc);
    let half = s.n / 2;
    let mut k = lo;
    for j in lo..=half {
        if s.magnitudes[j] > s.magnitudes[k] {
            k = j;
        }
    }
    Ok(Peak { index: refine(&s.magnitudes, k), magnitude: s.magnitudes[k] })
}

/// Lowest-frequency strict local maximum in `[1, n/2]` whose magnitude is at
/// least `relevance` times the largest magnitude in that range.
pub fn first_relevant_peak(s: &Spectrum, relevance: f64) -> Option<Peak> {
    if s.n < 4 {
        return None;
    }
    let half = s.n / 2;
    let m = &s.magnitudes;
    let top = m[1..=half].iter().copied().fold(0.0, f64::max);
    if !(top > 0.0) {
        return None;
    }
    (1..half)
        .find(|&j| m[j] > m[j - 1] && m[j] > m[j + 1] && m[j] >= relevance * top)
        .map(|k| Peak { index: refine(m, k), magnitude: m[k] })
}

/// True when each peak index is within `rel_tol` of half the previous one.
pub fn detect_halving(peaks: &[f64], rel_tol: f64) -> bool {
    peaks.len() >= 2
        && peaks.windows(2).all(|w| {
            let want = 0.5 * w[0];
            want > 0.0 && (w[1] - want).abs() <= rel_tol * want
        })
}

/// [`detect_halving`] on the first relevant peaks of successive spectra.
pub fn detect_halving_in(spectra: &[Spectrum], rel_tol: f64, relevance: f64) -> bool {
    let peaks: Option<Vec<f64>> = spectra.iter().map(|s| first_relevant_peak(s, relevance).map(|p| p.index)).collect();
    peaks.is_some_and(|p| detect_halving(&p, rel_tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive(series: &[f64]) -> Vec<f64> {
        let n = series.len();
        (0..n)
            .map(|j| {
                let (mut re, mut im) = (0.0, 0.0);
                for (k, x) in series.iter().enumerate() {
                    let a = -2.0 * core::f64::consts::PI * (j as f64) * (k as f64) / n as f64;
                    re += x * a.cos();
                    im += x * a.sin();
                }
                (re * re + im * im).sqrt()
            })
            .collect()
    }

    #[test]
    fn pure_tone_peak() {
        let n = 256;
        let s: Vec<f64> = (0..n).map(|k| (2.0 * core::f64::consts::PI * 16.0 * k as f64 / n as f64).cos()).collect();
        let sp = dft(&s);
        let p = dominant_peak(&sp, true).unwrap();
        assert!((p.index - 16.0).abs() < 1e-9);
        assert!((p.magnitude - 128.0).abs() < 1e-9);
    }

    #[test]
    fn halving_examples() {
        assert!(detect_halving(&[183.0, 91.5, 45.75], 0.05));
        assert!(!detect_halving(&[100.0, 100.0], 0.05));
        assert!(detect_halving(&[100.0, 51.0], 0.05));
        assert!(!detect_halving(&[100.0], 0.05));
    }

    #[test]
    fn first_relevant_prefers_low_frequency() {
        let n = 512;
        let s: Vec<f64> = (0..n)
            .map(|k| {
                let t = 2.0 * core::f64::consts::PI * k as f64 / n as f64;
                (100.0 * t).cos() + 0.1 * (50.0 * t).cos()
            })
            .collect();
        let sp = dft(&s);
        assert!((dominant_peak(&sp, true).unwrap().index - 100.0).abs() < 1e-6);
        assert!((first_relevant_peak(&sp, DEFAULT_RELEVANCE).unwrap().index - 50.0).abs() < 1e-6);
    }

    #[test]
    fn constant_and_delta() {
        let sp = dft(&[0.5; 8]);
        assert!((sp.magnitudes[0] - 4.0).abs() < 1e-12);
        assert!(sp.magnitudes[1..].iter().all(|m| m.abs() < 1e-12));
        let mut d = [0.0; 12];
        d[0] = 1.0;
        assert!(dft(&d).magnitudes.iter().all(|m| (m - 1.0).abs() < 1e-12));
    }

    #[test]
    fn cosine_bins() {
        let s: Vec<f64> = (0..64).map(|k| (2.0 * core::f64::consts::PI * k as f64 * 5.0 / 64.0).cos()).collect();
        let sp = dft(&s);
        assert!((sp.magnitudes[5] - 32.0).abs() < 1e-9);
        assert!((sp.magnitudes[59] - 32.0).abs() < 1e-9);
        assert!((dominant_peak(&sp, true).unwrap().index - 5.0).abs() < 0.01);
    }

    #[test]
    fn ties_go_to_lower_index() {
        let mut magnitudes = vec![0.1; 16];
        magnitudes[3] = 2.0;
        magnitudes[6] = 2.0;
        let p = dominant_peak(&Spectrum { n: 16, magnitudes }, true).unwrap();
        assert_eq!(p.index, 3.0);
    }

    #[test]
    fn short_spectrum_rejected() {
        assert!(dominant_peak(&dft(&[1.0, 2.0]), true).is_err());
    }

    proptest! {
        #[test]
        fn fft_matches_direct_sum(v in proptest::collection::vec(-1.0..1.0f64, 64)) {
            let fast = dft(&v).magnitudes;
            for (a, b) in fast.iter().zip(naive(&v)) {
                prop_assert!((a - b).abs() < 1e-9);
            }
        }

        #[test]
        fn parseval_and_symmetry(v in proptest::collection::vec(-1.0..1.0f64, 1..70)) {
            let sp = dft(&v);
            let n = v.len();
            let energy: f64 = v.iter().map(|x| x * x).sum();
            let spec_energy: f64 = sp.magnitudes.iter().map(|m| m * m).sum::<f64>() / n as f64;
            prop_assert!((energy - spec_energy).abs() <= 1e-9 * energy.max(1e-300));
            for j in 1..n {
                prop_assert!((sp.magnitudes[j] - sp.magnitudes[n - j]).abs() <= 1e-9 * (1.0 + sp.magnitudes[j]));
            }
        }

        #[test]
        fn direct_matches_oracle(v in proptest::collection::vec(-1.0..1.0f64, 3..40)) {
            let d = dft(&v).magnitudes;
            for (a, b) in d.iter().zip(naive(&v)) {
                prop_assert!((a - b).abs() < 1e-9);
            }
        }
    }
}
