//! Real polynomials and a bracketed root finder for their smallest positive root.

use crate::error::{Error, Result};

/// Polynomial with coefficients in ascending powers: `c[0] + c[1] x + c[2] x^2 + ...`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<f64>) -> Self {
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| k as f64 * c)
                .collect(),
        )
    }

    /// Sum of `|c_k x^k|`, the scale against which a residual at `x` is judged.
    pub fn magnitude(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| (c * x.powi(k as i32)).abs())
            .sum()
    }
}

/// Settings for [`smallest_positive_root`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootSearch {
    /// Upper end of the search interval `(0, upper]`.
    pub upper: f64,
    /// Spacing of the coarse sign-change scan.
    pub scan_step: f64,
    /// Bisection stops once the bracket is narrower than this.
    pub width: f64,
    pub newton_steps: usize,
}

impl Default for RootSearch {
    fn default() -> Self {
        Self {
            upper: 0.25,
            scan_step: 1.0 / 4096.0,
            width: 1e-14,
            newton_steps: 3,
        }
    }
}

/// Smallest root of `poly` in `(0, upper]`: scan for the first sign change,
/// bisect the bracket, then polish with Newton steps that stay inside it.
pub fn smallest_positive_root(poly: &Polynomial, search: RootSearch) -> Result<f64> {
    let steps = (search.upper / search.scan_step).ceil() as usize;
    let mut lo = 0.0;
    let mut f_lo = poly.eval(lo);
    for k in 1..=steps {
        let hi = (k as f64 * search.scan_step).min(search.upper);
        let f_hi = poly.eval(hi);
        if f_hi == 0.0 {
            return Ok(hi);
        }
        if f_lo != 0.0 && f_lo.signum() != f_hi.signum() {
            return Ok(refine(poly, lo, hi, f_lo, search));
        }
        lo = hi;
        f_lo = f_hi;
    }
    Err(Error::RootNotBracketed {
        lo: 0.0,
        hi: search.upper,
    })
}

fn refine(poly: &Polynomial, mut lo: f64, mut hi: f64, f_lo: f64, search: RootSearch) -> f64 {
    let lo_sign = f_lo.signum();
    while hi - lo > search.width {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = poly.eval(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if f_mid.signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let deriv = poly.derivative();
    let mut x = 0.5 * (lo + hi);
    let mut fx = poly.eval(x);
    for _ in 0..search.newton_steps {
        let slope = deriv.eval(x);
        if slope == 0.0 || fx == 0.0 {
            break;
        }
        let next = x - fx / slope;
        // polish only; never leave the certified bracket
        if !(lo..=hi).contains(&next) {
            break;
        }
        let f_next = poly.eval(next);
        if f_next.abs() >= fx.abs() {
            break;
        }
        x = next;
        fx = f_next;
    }
    x
}
