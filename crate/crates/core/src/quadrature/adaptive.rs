//! Globally adaptive 7/15-point Gauss–Kronrod integration, real and complex,
//! plus a principal-value rule for simple poles inside the interval.

use std::f64::consts::PI;

use nalgebra::Complex;

use crate::error::{Error, Result};

// Kronrod abscissae (positive half) and weights; the odd-indexed abscissae are
// the 7-point Gauss nodes.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

const MAX_INTERVALS: usize = 4000;

#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { abs: 1e-14, rel: 1e-13 }
    }
}

struct Segment {
    lo: f64,
    hi: f64,
    value: Complex<f64>,
    error: f64,
}

fn kronrod<F: FnMut(f64) -> Complex<f64>>(f: &mut F, lo: f64, hi: f64) -> Segment {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center);
    let mut gauss = fc * WG[3];
    let mut kron = fc * WGK[7];
    for (j, &x) in XGK.iter().take(7).enumerate() {
        let s = f(center - half * x) + f(center + half * x);
        kron += s * WGK[j];
        if j % 2 == 1 {
            gauss += s * WG[j / 2];
        }
    }
    Segment {
        lo,
        hi,
        value: kron * half,
        error: ((kron - gauss) * half).norm(),
    }
}

/// `int_lo^hi f(x) dx` for complex-valued `f`.
pub fn integrate_complex<F: FnMut(f64) -> Complex<f64>>(
    mut f: F,
    lo: f64,
    hi: f64,
    tol: Tolerance,
) -> Result<Complex<f64>> {
    if lo == hi {
        return Ok(Complex::new(0.0, 0.0));
    }
    let mut segments = vec![kronrod(&mut f, lo, hi)];
    loop {
        let total: Complex<f64> = segments.iter().map(|s| s.value).sum();
        let error: f64 = segments.iter().map(|s| s.error).sum();
        if !(total.re.is_finite() && total.im.is_finite()) {
            return Err(Error::Numerical("non-finite integrand".into()));
        }
        if error <= tol.abs.max(tol.rel * total.norm()) {
            return Ok(total);
        }
        if segments.len() >= MAX_INTERVALS {
            return Err(Error::NonConvergence {
                what: "adaptive quadrature",
                iterations: segments.len(),
            });
        }
        let (worst, _) = segments
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.error.total_cmp(&b.1.error))
            .expect("non-empty");
        let s = segments.swap_remove(worst);
        let mid = 0.5 * (s.lo + s.hi);
        if mid <= s.lo || mid >= s.hi {
            // Interval exhausted at machine precision; accept what we have.
            return Ok(total);
        }
        segments.push(kronrod(&mut f, s.lo, mid));
        segments.push(kronrod(&mut f, mid, s.hi));
    }
}

pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, tol: Tolerance) -> Result<f64> {
    integrate_complex(|x| Complex::new(f(x), 0.0), lo, hi, tol).map(|v| v.re)
}

/// `int_a^b g(x) / sqrt((b-x)(x-a)) dx`, integrated in `theta` with
/// `x = center + half_width cos(theta)`.
pub fn integrate_arcsine<F: FnMut(f64) -> f64>(mut g: F, a: f64, b: f64, tol: Tolerance) -> Result<f64> {
    let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
    integrate(|t| g(c + h * t.cos()), 0.0, PI, tol)
}

pub fn integrate_arcsine_complex<F: FnMut(f64) -> Complex<f64>>(
    mut g: F,
    a: f64,
    b: f64,
    tol: Tolerance,
) -> Result<Complex<f64>> {
    let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
    integrate_complex(|t| g(c + h * t.cos()), 0.0, PI, tol)
}

/// Principal value of `int_0^pi k(theta) / (p - x(theta)) dtheta` where
/// `x(theta) = center + half_width cos(theta)` and `p` lies strictly inside
/// the interval.
///
/// A window symmetric about the pole is folded onto itself so the odd part of
/// the singularity cancels analytically; the remainder is regular.
pub fn principal_value_theta<K: FnMut(f64) -> f64>(
    mut k: K,
    center: f64,
    half_width: f64,
    p: f64,
    tol: Tolerance,
) -> Result<f64> {
    let u = (p - center) / half_width;
    if !(u > -1.0 && u < 1.0) {
        return Err(Error::InvalidParameter {
            name: "pole",
            value: p,
            reason: "principal value pole must lie inside the interval",
        });
    }
    let tp = u.acos();
    let d = 0.5 * tp.min(PI - tp);
    // Distance to the pole computed without cancellation:
    // p - x(t) = H (cos tp - cos t) = 2H sin((t+tp)/2) sin((t-tp)/2).
    let gap = |t: f64| 2.0 * half_width * (0.5 * (t + tp)).sin() * (0.5 * (t - tp)).sin();
    // The folded terms are each O(1/s) and cancel to O(1), leaving rounding
    // noise of order eps/s that no refinement removes; floor the absolute
    // tolerance at that level.
    let pole_scale = (k(tp).abs() + k(tp + d).abs() + k(tp - d).abs()) / (half_width * tp.sin());
    let window_tol = Tolerance {
        abs: tol.abs.max(256.0 * f64::EPSILON * pole_scale),
        rel: tol.rel,
    };
    let window = integrate(
        |s| k(tp + s) / gap(tp + s) + k(tp - s) / gap(tp - s),
        0.0,
        d,
        window_tol,
    )?;
    let left = integrate(|t| k(t) / gap(t), 0.0, tp - d, tol)?;
    let right = integrate(|t| k(t) / gap(t), tp + d, PI, tol)?;
    Ok(window + left + right)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn kronrod_is_exact_for_degree_22() {
        let s = kronrod(&mut |x: f64| Complex::new(x.powi(22) + x.powi(3), 0.0), -1.0, 1.0);
        assert_relative_eq!(s.value.re, 2.0 / 23.0, epsilon = 1e-15);
        let s = kronrod(&mut |x: f64| Complex::new(x.powi(12), 0.0), 0.0, 1.0);
        assert_relative_eq!(s.value.re, 1.0 / 13.0, epsilon = 1e-15);
    }

    #[test]
    fn adaptive_handles_sharp_features() {
        let v = integrate(|x| 1.0 / (1e-4 + x * x), -1.0, 1.0, Tolerance::default()).unwrap();
        assert_relative_eq!(v, 2.0 * (1.0f64 / 1e-2).atan() / 1e-2, max_relative = 1e-12);
        let v = integrate(|x| x.sqrt(), 0.0, 1.0, Tolerance::default()).unwrap();
        assert_relative_eq!(v, 2.0 / 3.0, max_relative = 1e-12);
    }

    #[test]
    fn complex_integrand() {
        let z = Complex::new(0.3, 0.7);
        let v = integrate_complex(
            |x| Complex::new(1.0, 0.0) / (Complex::new(x, 0.0) - z),
            0.0,
            1.0,
            Tolerance::default(),
        )
        .unwrap();
        let expect = ((Complex::new(1.0, 0.0) - z) / (-z)).ln();
        assert!((v - expect).norm() < 1e-13);
    }

    #[test]
    fn arcsine_weight_normalises() {
        let v = integrate_arcsine(|_| 1.0, 1.0, 2.0, Tolerance::default()).unwrap();
        assert_relative_eq!(v, PI, epsilon = 1e-14);
    }

    #[test]
    fn principal_value_of_constant_kernel_vanishes() {
        for p in [0.1, 0.5, 1.9, 1.999] {
            let v = principal_value_theta(|_| 1.0, 1.0, 1.0, p, Tolerance::default()).unwrap();
            assert!(v.abs() < 1e-12, "p = {p}: {v}");
        }
        assert!(principal_value_theta(|_| 1.0, 1.0, 1.0, 2.5, Tolerance::default()).is_err());
    }
}
