//! Closed-form integrals over an arcsine-type weight on `[a, b]`, each paired
//! with an independent numerical evaluation.
//!
//! Parameter lists (all real):
//!
//! | id                                  | params                     |
//! |-------------------------------------|----------------------------|
//! | C264, C265                          | a, b                       |
//! | C253, C254, C255                    | a, b (b < 1)               |
//! | C248, C263, C250, C251              | a, b, t (t > b)            |
//! | C263neg                             | a, b, t (t > b)            |
//! | Cpvnull                             | a, b, z (z > b)            |
//! | C266, C267, C268                    | a, b, y (a < y < b)        |
//! | C269                                | a, b, x (a < x < b < 1)    |
//! | CH                                  | a, b, Re z, Im z (b < 1)   |
//! | CG                                  | a, b, t, Re z, Im z        |

use std::f64::consts::PI;

use nalgebra::Complex;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};

use super::adaptive::{integrate_arcsine, integrate_arcsine_complex, principal_value_theta, Tolerance};

pub const IDENTITIES: [&str; 17] = [
    "C248", "C263", "C264", "C265", "C250", "C251", "C253", "C254", "C255", "C266", "C267", "C269", "C263neg",
    "Cpvnull", "C268", "CH", "CG",
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub id: String,
    /// Closed form (real part).
    pub lhs: f64,
    /// Numerical quadrature (real part).
    pub rhs: f64,
    /// Imaginary parts; zero for the real identities.
    pub lhs_im: f64,
    pub rhs_im: f64,
    /// `|lhs - rhs| / (1 + |lhs|)`.
    pub residual: f64,
}

type C64 = Complex<f64>;

const TOL: Tolerance = Tolerance { abs: 1e-15, rel: 1e-14 };

fn bad(name: &'static str, value: f64, reason: &'static str) -> Error {
    Error::InvalidParameter { name, value, reason }
}

struct Params<'a> {
    id: &'a str,
    p: &'a [f64],
}

impl Params<'_> {
    fn arity(&self, n: usize) -> Result<()> {
        if self.p.len() == n && self.p.iter().all(|v| v.is_finite()) {
            Ok(())
        } else {
            Err(Error::InvalidParameter {
                name: "params",
                value: self.p.len() as f64,
                reason: "wrong number of finite parameters for identity",
            })
        }
    }

    fn ab(&self, below_one: bool) -> Result<(f64, f64)> {
        let (a, b) = (self.p[0], self.p[1]);
        if !(a > 0.0) {
            return Err(bad("a", a, "identities need 0 < a"));
        }
        if !(b > a) {
            return Err(bad("b", b, "identities need a < b"));
        }
        if below_one && !(b < 1.0) {
            return Err(bad("b", b, "identities involving ln(1 - x) need b < 1"));
        }
        Ok((a, b))
    }

    fn above(&self, i: usize, b: f64, name: &'static str) -> Result<f64> {
        let t = self.p[i];
        if t > b {
            Ok(t)
        } else {
            Err(bad(name, t, "must exceed the upper endpoint b"))
        }
    }

    fn inside(&self, i: usize, a: f64, b: f64, name: &'static str) -> Result<f64> {
        let y = self.p[i];
        if y > a && y < b {
            Ok(y)
        } else {
            Err(bad(name, y, "must lie strictly inside (a, b)"))
        }
    }

    fn complex_z(&self, i: usize, a: f64, b: f64) -> Result<C64> {
        let z = C64::new(self.p[i], self.p[i + 1]);
        if z.im == 0.0 && z.re >= a && z.re <= b {
            return Err(bad("z", z.re, "real z must lie outside [a, b]"));
        }
        Ok(z)
    }
}

fn real(lhs: f64, rhs: f64) -> (C64, C64) {
    (C64::new(lhs, 0.0), C64::new(rhs, 0.0))
}

/// Evaluates identity `id` at `params`, returning both sides and the residual.
pub fn verify_identity(id: &str, params: &[f64]) -> Result<IdentityCheck> {
    let p = Params { id, p: params };
    let (lhs, rhs) = match p.id {
        "C248" => {
            p.arity(3)?;
            let (a, b) = p.ab(false)?;
            let t = p.above(2, b, "t")?;
            let lhs = 2.0 * PI * (((t + a).sqrt() + (t + b).sqrt()) / 2.0).ln();
            real(lhs, integrate_arcsine(|x| (x + t).ln(), a, b, TOL)?)
        }
        "C263" => {
            p.arity(3)?;
            let (a, b) = p.ab(false)?;
            let t = p.above(2, b, "t")?;
            real(
                PI / ((t + a) * (t + b)).sqrt(),
                integrate_arcsine(|x| 1.0 / (x + t), a, b, TOL)?,
            )
        }
        "C264" => {
            p.arity(2)?;
            let (a, b) = p.ab(false)?;
            real(PI, integrate_arcsine(|_| 1.0, a, b, TOL)?)
        }
        "C265" => {
            p.arity(2)?;
            let (a, b) = p.ab(false)?;
            real(PI * (a + b) / 2.0, integrate_arcsine(|x| x, a, b, TOL)?)
        }
        "C250" => {
            p.arity(3)?;
            let (a, b) = p.ab(false)?;
            let t = p.above(2, b, "t")?;
            let sab = (a * b).sqrt();
            let num = (sab + ((t + a) * (t + b)).sqrt()).powi(2) - t * t;
            let den = (a.sqrt() + b.sqrt()).powi(2);
            real(
                PI / sab * (num / den).ln(),
                integrate_arcsine(|x| (x + t).ln() / x, a, b, TOL)?,
            )
        }
        "C251" => {
            p.arity(3)?;
            let (a, b) = p.ab(false)?;
            let t = p.above(2, b, "t")?;
            let lhs = PI * ((a + t).sqrt() - (b + t).sqrt()).powi(2) / 2.0
                + PI * (a + b) / 2.0 * ((2.0 * (t + ((a + t) * (b + t)).sqrt()) + a + b) / 4.0).ln();
            real(lhs, integrate_arcsine(|x| x * (x + t).ln(), a, b, TOL)?)
        }
        "C253" => {
            p.arity(2)?;
            let (a, b) = p.ab(true)?;
            let lhs = 2.0 * PI * (((1.0 - a).sqrt() + (1.0 - b).sqrt()) / 2.0).ln();
            real(lhs, integrate_arcsine(|x| (-x).ln_1p(), a, b, TOL)?)
        }
        "C254" => {
            p.arity(2)?;
            let (a, b) = p.ab(true)?;
            let sab = (a * b).sqrt();
            let num = 1.0 - (sab - ((1.0 - a) * (1.0 - b)).sqrt()).powi(2);
            let den = (a.sqrt() + b.sqrt()).powi(2);
            real(
                PI / sab * (num / den).ln(),
                integrate_arcsine(|x| (-x).ln_1p() / x, a, b, TOL)?,
            )
        }
        "C255" => {
            p.arity(2)?;
            let (a, b) = p.ab(true)?;
            let (ra, rb) = ((1.0 - a).sqrt(), (1.0 - b).sqrt());
            let lhs = 2.0 * PI / (ra * rb) * (0.5 / ra + 0.5 / rb).ln();
            real(lhs, integrate_arcsine(|x| (-x).ln_1p() / (x - 1.0), a, b, TOL)?)
        }
        "C266" => {
            p.arity(3)?;
            let (a, b) = p.ab(false)?;
            let y = p.inside(2, a, b, "y")?;
            let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
            real(0.0, principal_value_theta(|_| 1.0, c, h, y, TOL)?)
        }
        "C267" => {
            p.arity(3)?;
            let (a, b) = p.ab(false)?;
            let y = p.inside(2, a, b, "y")?;
            let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
            let k = |t: f64| (h * t.sin()).powi(2) / (c + h * t.cos());
            real(PI * (1.0 - (a * b).sqrt() / y), principal_value_theta(k, c, h, y, TOL)?)
        }
        "C269" => {
            p.arity(3)?;
            let (a, b) = p.ab(true)?;
            let x = p.inside(2, a, b, "x")?;
            let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
            let k = |t: f64| (h * t.sin()).powi(2) / (1.0 - c - h * t.cos());
            let lhs = PI * (((1.0 - a) * (1.0 - b)).sqrt() / (1.0 - x) - 1.0);
            real(lhs, principal_value_theta(k, c, h, x, TOL)?)
        }
        "C263neg" => {
            p.arity(3)?;
            let (a, b) = p.ab(false)?;
            let t = p.above(2, b, "t")?;
            real(
                -PI / ((t - a) * (t - b)).sqrt(),
                integrate_arcsine(|x| 1.0 / (x - t), a, b, TOL)?,
            )
        }
        "Cpvnull" => {
            p.arity(3)?;
            let (a, b) = p.ab(false)?;
            let z = p.above(2, b, "z")?;
            let root = ((z - a) * (z - b)).sqrt();
            real(0.0, integrate_arcsine(|x| root / (z - x) - 1.0, a, b, TOL)?)
        }
        "C268" => {
            p.arity(3)?;
            let (a, b) = p.ab(false)?;
            let y = p.inside(2, a, b, "y")?;
            let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
            let k = |t: f64| (h * t.sin()).powi(2);
            real(PI * (y - c), principal_value_theta(k, c, h, y, TOL)?)
        }
        "CH" => {
            p.arity(4)?;
            let (a, b) = p.ab(true)?;
            let z = p.complex_z(2, a, b)?;
            (
                ch_closed_form(a, b, z),
                integrate_arcsine_complex(|x| (-x).ln_1p() / (x - z), a, b, TOL)?,
            )
        }
        "CG" => {
            p.arity(5)?;
            let (a, b) = p.ab(false)?;
            let t = p.p[2];
            if !(t > 0.0) {
                return Err(bad("t", t, "must be positive"));
            }
            let z = p.complex_z(3, a, b)?;
            (
                cg_closed_form(a, b, t, z),
                integrate_arcsine_complex(|x| (x + t).ln() / (x - z), a, b, TOL)?,
            )
        }
        other => return Err(Error::UnknownIdentity(other.to_string())),
    };
    Ok(IdentityCheck {
        id: id.to_string(),
        lhs: lhs.re,
        rhs: rhs.re,
        lhs_im: lhs.im,
        rhs_im: rhs.im,
        residual: (lhs - rhs).norm() / (1.0 + lhs.norm()),
    })
}

/// `sqrt(z - a) sqrt(z - b)` with principal roots, analytic off `[a, b]`.
fn joukowski_root(a: f64, b: f64, z: C64) -> C64 {
    (z - a).sqrt() * (z - b).sqrt()
}

fn ch_closed_form(a: f64, b: f64, z: C64) -> C64 {
    let big_a = joukowski_root(a, b, z);
    let num = big_a * 2.0 + z * 2.0 - (a + b);
    let den = big_a * (2.0 * ((1.0 - a) * (1.0 - b)).sqrt()) + z * (2.0 - a - b) - (a + b) + 2.0 * a * b;
    (num / den).ln() * PI / big_a
}

fn cg_closed_form(a: f64, b: f64, t: f64, z: C64) -> C64 {
    let big_a = joukowski_root(a, b, z);
    let tz = z + t;
    let s = (C64::new(a + b, 0.0) - z * 2.0) * tz;
    let a2 = big_a * big_a;
    let num = a2 * 2.0 + s + big_a * 2.0 * (a2 + s + tz * tz).sqrt();
    let den = tz * tz * (C64::new(a + b, 0.0) - z * 2.0 + big_a * 2.0);
    (num / den).ln() * PI / big_a
}

/// Draws a valid parameter list for `id`.
pub fn random_identity_params<R: Rng + ?Sized>(id: &str, rng: &mut R) -> Result<Vec<f64>> {
    let a = rng.random_range(0.05..0.5);
    let b = a + rng.random_range(0.05..0.45);
    let t = b + rng.random_range(0.05..5.0);
    let y = a + (b - a) * rng.random_range(0.02..0.98);
    let zim = rng.random_range(0.05..3.0) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
    let zre = rng.random_range(-3.0..4.0);
    Ok(match id {
        "C264" | "C265" | "C253" | "C254" | "C255" => vec![a, b],
        "C248" | "C263" | "C250" | "C251" | "C263neg" | "Cpvnull" => vec![a, b, t],
        "C266" | "C267" | "C268" | "C269" => vec![a, b, y],
        "CH" => vec![a, b, zre, zim],
        "CG" => vec![a, b, rng.random_range(0.1..5.0), zre, zim],
        other => return Err(Error::UnknownIdentity(other.to_string())),
    })
}
