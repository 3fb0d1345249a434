//! Roots of real monic cubics and eigenvalues of 3x3 matrices.
//!
//! Roots come from the depressed cubic (Cardano when there is one real root,
//! the trigonometric form when all three are real), followed by a few Newton
//! steps in complex arithmetic. Results for real coefficients are returned as
//! either three real numbers or one real number plus an exact conjugate pair.

use core::cmp::Ordering;

use num_complex::Complex64;

use crate::Mat3;

const NEWTON_STEPS: usize = 3;

/// `|z|` through `libm`, so results do not depend on which float backend
/// `num-complex` was built with.
pub fn modulus(z: &Complex64) -> f64 {
    libm::hypot(z.re, z.im)
}

fn horner(c: &[f64; 3], l: Complex64) -> (Complex64, Complex64) {
    // p(l) = l^3 + c2 l^2 + c1 l + c0, p'(l) = 3 l^2 + 2 c2 l + c1
    let p = ((l + c[0]) * l + c[1]) * l + c[2];
    let dp = (l * 3.0 + 2.0 * c[0]) * l + c[1];
    (p, dp)
}

fn polish(c: &[f64; 3], mut l: Complex64) -> Complex64 {
    let (mut p, mut dp) = horner(c, l);
    for _ in 0..NEWTON_STEPS {
        if modulus(&p) == 0.0 || modulus(&dp) == 0.0 {
            break;
        }
        let cand = l - p / dp;
        let (pc, dpc) = horner(c, cand);
        if !(modulus(&pc) < modulus(&p)) {
            break;
        }
        l = cand;
        p = pc;
        dp = dpc;
    }
    l
}

/// Real roots of `l^2 + b l + c`, or a conjugate pair, avoiding cancellation.
fn quadratic(b: f64, c: f64) -> [Complex64; 2] {
    let disc = b * b - 4.0 * c;
    if disc >= 0.0 {
        let s = libm::sqrt(disc);
        let q = -0.5 * (b + if b >= 0.0 { s } else { -s });
        if q == 0.0 {
            return [Complex64::new(0.0, 0.0); 2];
        }
        [Complex64::new(q, 0.0), Complex64::new(c / q, 0.0)]
    } else {
        let re = -0.5 * b;
        let im = 0.5 * libm::sqrt(-disc);
        [Complex64::new(re, im), Complex64::new(re, -im)]
    }
}

/// Roots of `l^3 + c2 l^2 + c1 l + c0`, sorted with [`eigen_order`].
pub fn cubic_roots(c2: f64, c1: f64, c0: f64) -> [Complex64; 3] {
    let coeffs = [c2, c1, c0];
    let mut roots = if c0 == 0.0 {
        // exact zero root; deflate
        let [a, b] = quadratic(c2, c1);
        [Complex64::new(0.0, 0.0), a, b]
    } else {
        let shift = c2 / 3.0;
        let p = c1 - c2 * c2 / 3.0;
        let q = 2.0 * c2 * c2 * c2 / 27.0 - c2 * c1 / 3.0 + c0;
        let disc = 0.25 * q * q + p * p * p / 27.0;
        let t = if disc > 0.0 || p == 0.0 {
            let sq = libm::sqrt(disc.max(0.0));
            // larger-magnitude branch for u to avoid cancellation
            let w = if q > 0.0 { -0.5 * q - sq } else { -0.5 * q + sq };
            let u = libm::cbrt(w);
            let v = if u == 0.0 { 0.0 } else { -p / (3.0 * u) };
            let re = -0.5 * (u + v);
            let im = 0.5 * libm::sqrt(3.0) * (u - v);
            [Complex64::new(u + v, 0.0), Complex64::new(re, im), Complex64::new(re, -im)]
        } else {
            let r = libm::sqrt(-p / 3.0);
            let arg = (1.5 * q / (p * r)).clamp(-1.0, 1.0);
            let theta = libm::acos(arg) / 3.0;
            let tau = 2.0 * core::f64::consts::PI / 3.0;
            [
                Complex64::new(2.0 * r * libm::cos(theta), 0.0),
                Complex64::new(2.0 * r * libm::cos(theta - tau), 0.0),
                Complex64::new(2.0 * r * libm::cos(theta - 2.0 * tau), 0.0),
            ]
        };
        [t[0] - shift, t[1] - shift, t[2] - shift]
    };
    for r in roots.iter_mut() {
        *r = polish(&coeffs, *r);
    }
    symmetrize(&mut roots);
    roots.sort_by(eigen_order);
    roots
}

/// Forces the real-coefficient structure: the root closest to the real axis
/// becomes real and the other two become real or an exact conjugate pair.
fn symmetrize(roots: &mut [Complex64; 3]) {
    roots.sort_by(|a, b| a.im.abs().partial_cmp(&b.im.abs()).unwrap_or(Ordering::Equal));
    roots[0].im = 0.0;
    let (a, b) = (roots[1], roots[2]);
    let scale = 1.0_f64.max(modulus(&a)).max(modulus(&b));
    if a.im.abs().max(b.im.abs()) <= 1e-13 * scale {
        roots[1].im = 0.0;
        roots[2].im = 0.0;
    } else {
        let re = 0.5 * (a.re + b.re);
        let im = 0.5 * (a.im.abs() + b.im.abs());
        roots[1] = Complex64::new(re, im);
        roots[2] = Complex64::new(re, -im);
    }
}

/// Descending modulus, then descending real part, then descending imaginary part.
pub fn eigen_order(a: &Complex64, b: &Complex64) -> Ordering {
    modulus(b)
        .partial_cmp(&modulus(a))
        .unwrap_or(Ordering::Equal)
        .then(b.re.partial_cmp(&a.re).unwrap_or(Ordering::Equal))
        .then(b.im.partial_cmp(&a.im).unwrap_or(Ordering::Equal))
}

/// Eigenvalues of a 3x3 real matrix via its characteristic polynomial.
pub fn eigenvalues(m: &Mat3) -> [Complex64; 3] {
    let [c2, c1, c0] = m.char_poly();
    cubic_roots(c2, c1, c0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn three_real_roots() {
        // (l-1)(l-2)(l-3)
        let r = cubic_roots(-6.0, 11.0, -6.0);
        assert!(close(r[0], Complex64::new(3.0, 0.0), 1e-14));
        assert!(close(r[1], Complex64::new(2.0, 0.0), 1e-14));
        assert!(close(r[2], Complex64::new(1.0, 0.0), 1e-14));
        assert!(r.iter().all(|z| z.im == 0.0));
    }

    #[test]
    fn one_real_and_pair() {
        // (l-0.5)(l^2 - 2 l + 5): roots 0.5, 1 +- 2i
        let r = cubic_roots(-2.5, 6.0, -2.5);
        assert!(close(r[0], Complex64::new(1.0, 2.0), 1e-14));
        assert!(close(r[1], Complex64::new(1.0, -2.0), 1e-14));
        assert!(close(r[2], Complex64::new(0.5, 0.0), 1e-14));
        assert_eq!(r[0].im, -r[1].im);
    }

    #[test]
    fn zero_constant_term_is_deflated() {
        // diag(mu, 0, 0)
        let r = cubic_roots(-2.5, 0.0, 0.0);
        assert_eq!(r[0], Complex64::new(2.5, 0.0));
        assert_eq!(r[1].norm(), 0.0);
        assert_eq!(r[2].norm(), 0.0);
    }

    #[test]
    fn triple_root() {
        // (l-1)^3
        let r = cubic_roots(-3.0, 3.0, -1.0);
        for z in r {
            assert!(close(z, Complex64::new(1.0, 0.0), 1e-5));
        }
    }

    #[test]
    fn ordering_is_modulus_then_real_part() {
        let mut v = [Complex64::new(-2.0, 0.0), Complex64::new(2.0, 0.0), Complex64::new(0.1, 0.0)];
        v.sort_by(eigen_order);
        assert_eq!(v[0].re, 2.0);
        assert_eq!(v[1].re, -2.0);
    }

    proptest! {
        #[test]
        fn roots_reproduce_polynomial(
            r0 in -3.0..3.0f64, re in -3.0..3.0f64, im in 0.01..3.0f64,
        ) {
            // (l - r0)(l^2 - 2 re l + re^2 + im^2)
            let m = re * re + im * im;
            let c2 = -(r0 + 2.0 * re);
            let c1 = 2.0 * re * r0 + m;
            let c0 = -r0 * m;
            let roots = cubic_roots(c2, c1, c0);
            let expect = [
                Complex64::new(r0, 0.0),
                Complex64::new(re, im),
                Complex64::new(re, -im),
            ];
            for e in expect {
                let best = roots.iter().map(|z| (z - e).norm()).fold(f64::INFINITY, f64::min);
                prop_assert!(best < 1e-9 * (1.0 + e.norm()), "root {e} missing from {roots:?}");
            }
        }

        #[test]
        fn distinct_real_roots(a in -3.0..3.0f64, b in -3.0..3.0f64, c in -3.0..3.0f64) {
            prop_assume!((a - b).abs() > 1e-3 && (b - c).abs() > 1e-3 && (a - c).abs() > 1e-3);
            let roots = cubic_roots(-(a + b + c), a * b + b * c + a * c, -a * b * c);
            for e in [a, b, c] {
                let best = roots.iter().map(|z| (z - Complex64::new(e, 0.0)).norm()).fold(f64::INFINITY, f64::min);
                prop_assert!(best < 1e-9, "root {e} missing from {roots:?}");
            }
        }
    }
}
