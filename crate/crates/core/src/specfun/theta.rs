//! Jacobi theta functions of complex argument with derivatives in z.
//!
//! Convention (nome q = e^{i pi tau}, Im tau > 0):
//!
//! ```text
//! theta3(z) = sum_m q^{m^2} e^{2 pi i m z}
//! theta4(z) = sum_m (-1)^m q^{m^2} e^{2 pi i m z}
//! theta2(z) = sum_m q^{(m+1/2)^2} e^{(2m+1) pi i z}
//! theta1(z) = -i sum_m (-1)^m q^{(m+1/2)^2} e^{(2m+1) pi i z}
//! ```
//!
//! Arguments are first reduced modulo the lattice Z + tau Z, which keeps the
//! series argument in the fundamental domain where a handful of terms reach
//! round-off; the quasi-periodicity factors are restored afterwards. For
//! `theta1`/`theta2` the z + tau shift carries an extra (-1), and the z + 1
//! shift flips the sign of `theta1`/`theta2` only.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Modulus, nome and truncation budget for the theta series.
#[derive(Debug, Clone, Copy)]
pub struct ThetaContext {
    pub tau: Complex64,
    pub nome: Complex64,
    pub max_terms: usize,
    pub tol: f64,
}

impl ThetaContext {
    /// Context for a modulus with Im tau > 0 (Re tau = 0 in all uses here,
    /// but any tau in the upper half plane is accepted).
    pub fn new(tau: Complex64) -> Result<Self> {
        if !(tau.im > 0.0) || !tau.im.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "theta modulus requires Im tau > 0, got {tau}"
            )));
        }
        let nome = (Complex64::i() * PI * tau).exp();
        Ok(ThetaContext {
            tau,
            nome,
            max_terms: 64,
            tol: 1e-16,
        })
    }

    /// Purely imaginary modulus i*t.
    pub fn from_imag(t: f64) -> Result<Self> {
        Self::new(Complex64::new(0.0, t))
    }
}

/// theta_j(z; tau), j in 1..=4.
pub fn theta(j: u8, z: Complex64, ctx: &ThetaContext) -> Result<Complex64> {
    theta_deriv(j, 0, z, ctx)
}

/// order-th derivative in z of theta_j, order <= 2.
pub fn theta_deriv(j: u8, order: u8, z: Complex64, ctx: &ThetaContext) -> Result<Complex64> {
    if !(1..=4).contains(&j) {
        return Err(Error::InvalidArgument(format!(
            "theta index must be 1..=4, got {j}"
        )));
    }
    if order > 2 {
        return Err(Error::InvalidArgument(format!(
            "theta derivatives implemented for order <= 2, got {order}"
        )));
    }
    let (w, k, sign) = reduce(j, z, ctx.tau);
    // theta_j(z) = sign * e^{-2 pi i k z + pi i k^2 tau} theta_j(w),  w = z - n - k tau.
    // Differentiating the product in z (dw/dz = 1):
    //   F^(r) = pref(z) * sum_i binom(r,i) (-2 pi i k)^{r-i} theta_j^(i)(w)
    let pref = sign
        * (Complex64::new(0.0, -2.0 * PI * k) * z + Complex64::i() * PI * k * k * ctx.tau).exp();
    let lam = Complex64::new(0.0, -2.0 * PI * k);
    let val = match order {
        0 => series(j, 0, w, ctx),
        1 => series(j, 1, w, ctx) + lam * series(j, 0, w, ctx),
        _ => {
            series(j, 2, w, ctx)
                + 2.0 * lam * series(j, 1, w, ctx)
                + lam * lam * series(j, 0, w, ctx)
        }
    };
    Ok(pref * val)
}

/// log theta3(z; tau) with the lattice-reduction prefactor kept in log space,
/// so large arguments (where theta3 itself overflows) stay representable.
pub fn log_theta3(z: Complex64, ctx: &ThetaContext) -> Result<Complex64> {
    let (w, k, _) = reduce(3, z, ctx.tau);
    let log_pref = Complex64::new(0.0, -2.0 * PI * k) * z + Complex64::i() * PI * k * k * ctx.tau;
    let v = series(3, 0, w, ctx);
    Ok(log_pref + v.ln())
}

/// Reduce z = w + n + k tau with |Re w| <= 1/2, |Im w| <= Im tau / 2 and
/// return (w, k, parity sign of the shifts for theta_j).
fn reduce(j: u8, z: Complex64, tau: Complex64) -> (Complex64, f64, f64) {
    let k = (z.im / tau.im).round();
    let w1 = z - k * tau;
    let n = w1.re.round();
    let w = w1 - n;
    let mut sign = 1.0;
    // z + 1 flips theta1, theta2; z + tau flips theta1, theta4.
    if (j == 1 || j == 2) && (n as i64) % 2 != 0 {
        sign = -sign;
    }
    if (j == 1 || j == 4) && (k as i64) % 2 != 0 {
        sign = -sign;
    }
    (w, k, sign)
}

/// Raw series for theta_j^{(order)}(w) with w already in the fundamental
/// domain. Terms decay like q^{m(m-1)} there, so `max_terms` is generous.
fn series(j: u8, order: u8, w: Complex64, ctx: &ThetaContext) -> Complex64 {
    let tau = ctx.tau;
    let mut sum = Complex64::new(0.0, 0.0);
    if j == 3 || j == 4 {
        // m = 0 term (order >= 1 kills it)
        if order == 0 {
            sum += 1.0;
        }
        for m in 1..=ctx.max_terms as i64 {
            let mf = m as f64;
            let amp = (Complex64::i() * PI * tau * mf * mf).exp();
            let alt = if j == 4 && m % 2 != 0 { -1.0 } else { 1.0 };
            let e_plus = (Complex64::new(0.0, 2.0 * PI * mf) * w).exp();
            let e_minus = (Complex64::new(0.0, -2.0 * PI * mf) * w).exp();
            let (ph_p, ph_m) = (
                Complex64::new(0.0, 2.0 * PI * mf).powu(order as u32),
                Complex64::new(0.0, -2.0 * PI * mf).powu(order as u32),
            );
            let term = alt * amp * (ph_p * e_plus + ph_m * e_minus);
            sum += term;
            if term.norm() < ctx.tol && m > 2 {
                break;
            }
        }
    } else {
        // half-integer indices m + 1/2, m >= 0 paired with -(m+1)
        for m in 0..ctx.max_terms as i64 {
            let hm = m as f64 + 0.5;
            let amp = (Complex64::i() * PI * tau * hm * hm).exp();
            let alt = if m % 2 != 0 { -1.0 } else { 1.0 };
            let e_plus = (Complex64::new(0.0, 2.0 * PI * hm) * w).exp();
            let e_minus = (Complex64::new(0.0, -2.0 * PI * hm) * w).exp();
            let (ph_p, ph_m) = (
                Complex64::new(0.0, 2.0 * PI * hm).powu(order as u32),
                Complex64::new(0.0, -2.0 * PI * hm).powu(order as u32),
            );
            let term = if j == 2 {
                amp * (ph_p * e_plus + ph_m * e_minus)
            } else {
                // theta1 pairs index m with -(m+1), which carries (-1)^{m+1}
                // and the opposite exponent, hence the relative minus.
                -Complex64::i() * alt * amp * (ph_p * e_plus - ph_m * e_minus)
            };
            sum += term;
            if term.norm() < ctx.tol && m > 2 {
                break;
            }
        }
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx_i() -> ThetaContext {
        ThetaContext::from_imag(1.0).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rejects_bad_modulus_and_index() {
        assert!(ThetaContext::from_imag(0.0).is_err());
        assert!(ThetaContext::from_imag(-1.0).is_err());
        assert!(theta(0, c(0.0, 0.0), &ctx_i()).is_err());
        assert!(theta(5, c(0.0, 0.0), &ctx_i()).is_err());
        assert!(theta_deriv(3, 3, c(0.0, 0.0), &ctx_i()).is_err());
    }

    #[test]
    fn theta_constants_at_tau_i() {
        // direct series oracle: theta3(0; i) = 1 + 2 sum e^{-pi m^2}
        let mut oracle = 1.0;
        for m in 1..20 {
            oracle += 2.0 * (-PI * (m * m) as f64).exp();
        }
        let t3 = theta(3, c(0.0, 0.0), &ctx_i()).unwrap();
        assert!((t3.re - oracle).abs() < 1e-15);
        assert!((t3.re - 1.086_434_811_213_308).abs() < 1e-14);
        assert!(t3.im.abs() < 1e-16);

        // dominated by the m = 0 term at tau = 10i
        let big = ThetaContext::from_imag(10.0).unwrap();
        let t3 = theta(3, c(0.0, 0.0), &big).unwrap();
        assert!((t3.re - 1.0 - 2.0 * (-10.0 * PI).exp()).abs() < 1e-15);

        // mpmath reference values at tau = i
        let t2 = theta(2, c(0.0, 0.0), &ctx_i()).unwrap();
        let t4 = theta(4, c(0.0, 0.0), &ctx_i()).unwrap();
        assert!((t2.re - 0.913_579_138_156_116_8).abs() < 1e-14);
        assert!((t4.re - 0.913_579_138_156_116_8).abs() < 1e-14);
    }

    #[test]
    fn half_period_shift_relations() {
        // theta2 and theta4 expressed through theta1/theta3 shifts:
        // theta4(z) = theta3(z + 1/2), theta2(z) = theta1(z + 1/2),
        // theta2(z) = e^{-i pi z + i pi tau/4} theta3(z - tau/2)
        for t in [0.7, 1.0, 2.3] {
            let ctx = ThetaContext::from_imag(t).unwrap();
            assert!(ctx.nome.norm() < 1.0);
            for z in [c(0.0, 0.0), c(0.31, -0.12), c(-0.6, 0.44)] {
                let t4 = theta(4, z, &ctx).unwrap();
                let t3_half = theta(3, z + 0.5, &ctx).unwrap();
                assert!((t4 - t3_half).norm() < 1e-13);
                let t2 = theta(2, z, &ctx).unwrap();
                let t1_half = theta(1, z + 0.5, &ctx).unwrap();
                assert!((t2 - t1_half).norm() < 1e-13);
                let shifted = (-Complex64::i() * PI * z + Complex64::i() * PI * ctx.tau / 4.0)
                    .exp()
                    * theta(3, z - ctx.tau / 2.0, &ctx).unwrap();
                assert!((t2 - shifted).norm() < 1e-13 * t2.norm().max(1.0));
            }
        }
    }

    #[test]
    fn periodicity_and_quasi_periodicity() {
        let ctx = ctx_i();
        let z = c(0.3, 0.2);
        let t = |zz| theta(3, zz, &ctx).unwrap();
        assert!(
            (t(z + 1.0) - t(z)).norm() < 1e-14,
            "theta3(z+1) = theta3(z)"
        );
        let lhs = t(z + ctx.tau);
        let rhs = (c(0.0, -2.0 * PI) * z - Complex64::i() * PI * ctx.tau).exp() * t(z);
        assert!((lhs - rhs).norm() < 1e-13, "theta3(z+tau) relation");

        // theta1 and theta4 pick up a minus under z + tau
        let t1 = |zz| theta(1, zz, &ctx).unwrap();
        let lhs = t1(z + ctx.tau);
        let rhs = -(c(0.0, -2.0 * PI) * z - Complex64::i() * PI * ctx.tau).exp() * t1(z);
        assert!((lhs - rhs).norm() < 1e-13, "theta1(z+tau) relation");
        let t4f = |zz| theta(4, zz, &ctx).unwrap();
        let lhs = t4f(z + ctx.tau);
        let rhs = -(c(0.0, -2.0 * PI) * z - Complex64::i() * PI * ctx.tau).exp() * t4f(z);
        assert!((lhs - rhs).norm() < 1e-13, "theta4(z+tau) relation");
    }

    #[test]
    fn parity() {
        let ctx = ctx_i();
        let z = c(0.17, -0.05);
        let t1 = theta(1, z, &ctx).unwrap() + theta(1, -z, &ctx).unwrap();
        assert!(t1.norm() < 1e-14, "theta1 odd");
        for j in 2..=4 {
            let d = theta(j, z, &ctx).unwrap() - theta(j, -z, &ctx).unwrap();
            assert!(d.norm() < 1e-14, "theta{j} even");
        }
    }

    #[test]
    fn derivative_identities() {
        let ctx = ctx_i();
        let zero = c(0.0, 0.0);
        // theta3 even => theta3'(0) = 0
        assert!(theta_deriv(3, 1, zero, &ctx).unwrap().norm() < 1e-15);
        // theta1'(0) = pi theta2 theta3 theta4
        let t1p = theta_deriv(1, 1, zero, &ctx).unwrap();
        let prod = PI
            * theta(2, zero, &ctx).unwrap()
            * theta(3, zero, &ctx).unwrap()
            * theta(4, zero, &ctx).unwrap();
        assert!(
            (t1p - prod).norm() < 1e-12,
            "theta1' = pi theta2 theta3 theta4"
        );
        // finite-difference cross-check of first and second derivatives
        let z = c(0.23, 0.11);
        let h = 1e-5;
        let fd1 = (theta(3, z + h, &ctx).unwrap() - theta(3, z - h, &ctx).unwrap()) / (2.0 * h);
        assert!((fd1 - theta_deriv(3, 1, z, &ctx).unwrap()).norm() < 1e-9);
        let fd2 = (theta(3, z + h, &ctx).unwrap() - 2.0 * theta(3, z, &ctx).unwrap()
            + theta(3, z - h, &ctx).unwrap())
            / (h * h);
        assert!((fd2 - theta_deriv(3, 2, z, &ctx).unwrap()).norm() < 1e-5);
    }

    #[test]
    fn heat_equation() {
        // theta3''(0; tau) / theta3(0; tau) = 4 pi i d/dtau log theta3(0; tau)
        let ctx = ctx_i();
        let zero = c(0.0, 0.0);
        let lhs = theta_deriv(3, 2, zero, &ctx).unwrap() / theta(3, zero, &ctx).unwrap();
        let h = 1e-6;
        let up = ThetaContext::from_imag(1.0 + h).unwrap();
        let dn = ThetaContext::from_imag(1.0 - h).unwrap();
        let fd = (theta(3, zero, &up).unwrap().ln() - theta(3, zero, &dn).unwrap().ln())
            / c(0.0, 2.0 * h);
        let rhs = 4.0 * Complex64::i() * PI * fd;
        assert!((lhs - rhs).norm() < 1e-6, "heat equation: {lhs} vs {rhs}");
    }

    #[test]
    fn log_theta3_tracks_large_arguments() {
        let ctx = ctx_i();
        // moderate argument: agree with the direct log
        let z = c(0.3, 0.4);
        let direct = theta(3, z, &ctx).unwrap().ln();
        let viaref = log_theta3(z, &ctx).unwrap();
        assert!((direct - viaref).norm() < 1e-13);
        // large imaginary argument: theta3 itself would overflow near |Im z| ~ 30
        let z = c(0.2, 500.0);
        let lt = log_theta3(z, &ctx).unwrap();
        assert!(lt.re.is_finite() && lt.re > 1e5);
    }
}
