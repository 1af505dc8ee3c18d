//! Complete elliptic integrals via the arithmetic-geometric mean.
//!
//! Gauss: K(k) M(sqrt(1-k^2), 1) = pi/2. E comes from the companion sums
//! E = K (1 - sum 2^{n-1} c_n^2) with c_0 = k, c_n = (b_{n-1} - a_{n-1})/2,
//! so both integrals converge quadratically with the same iteration.

use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Modulus convention: k (not the parameter m = k^2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticKE {
    pub k: f64,
    pub big_k: f64,
    pub big_e: f64,
}

const MAX_ITER: usize = 40;
const EPS: f64 = 1e-15;

/// Arithmetic-geometric mean of two positive numbers.
///
/// Stops when the sequences agree to `1e-15` relative; order of the
/// arguments does not matter.
pub fn agm(alpha: f64, beta: f64) -> Result<f64> {
    if !(alpha > 0.0 && beta > 0.0) || !alpha.is_finite() || !beta.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "agm requires positive finite arguments, got ({alpha}, {beta})"
        )));
    }
    let (mut a, mut b) = if alpha <= beta {
        (alpha, beta)
    } else {
        (beta, alpha)
    };
    for _ in 0..MAX_ITER {
        if b - a < EPS * b {
            break;
        }
        let an = (a * b).sqrt();
        let bn = 0.5 * (a + b);
        a = an;
        b = bn;
    }
    Ok(0.5 * (a + b))
}

/// K(k) and E(k) for 0 <= k < 1.
pub fn elliptic_ke(k: f64) -> Result<EllipticKE> {
    if !(0.0..1.0).contains(&k) {
        return Err(Error::InvalidArgument(format!(
            "elliptic_ke requires 0 <= k < 1 (K diverges at k = 1), got {k}"
        )));
    }
    if k == 0.0 {
        return Ok(EllipticKE {
            k,
            big_k: PI / 2.0,
            big_e: PI / 2.0,
        });
    }
    let kp = ((1.0 - k) * (1.0 + k)).sqrt();
    let mut a = 1.0;
    let mut b = kp;
    let mut c = k;
    let mut sum = 0.5 * c * c; // 2^{-1} c_0^2
    let mut pow2 = 0.5;
    for _ in 0..MAX_ITER {
        if c.abs() < EPS * a {
            break;
        }
        let an = 0.5 * (a + b);
        let bn = (a * b).sqrt();
        c = 0.5 * (a - b);
        pow2 *= 2.0;
        sum += pow2 * c * c;
        a = an;
        b = bn;
    }
    let big_k = PI / (2.0 * a);
    Ok(EllipticKE {
        k,
        big_k,
        big_e: big_k * (1.0 - sum),
    })
}
