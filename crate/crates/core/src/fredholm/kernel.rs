//! Airy and sine kernels with stable diagonal and near-diagonal evaluation.

use crate::specfun::airy;

/// Which integrable kernel a determinant is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelKind {
    Airy,
    Sine,
}

/// Kernel selector carried by the Nystrom machinery.
#[derive(Debug, Clone, Copy)]
pub struct KernelSpec {
    pub kind: KernelKind,
}

impl KernelSpec {
    pub fn eval(&self, z: f64, zp: f64) -> f64 {
        match self.kind {
            KernelKind::Airy => airy_kernel(z, zp),
            KernelKind::Sine => sine_kernel(z, zp),
        }
    }
}

/// Below this separation the difference quotient loses ~6 digits, so the
/// kernel switches to the diagonal closed form plus its second-order Taylor
/// correction at the midpoint.
const NEAR_DIAGONAL: f64 = 1e-6;

/// Airy kernel (Ai(z)Ai'(z') - Ai'(z)Ai(z')) / (z - z').
///
/// On the diagonal this is Ai'(z)^2 - z Ai(z)^2 (l'Hopital with Ai'' = z Ai).
pub fn airy_kernel(z: f64, zp: f64) -> f64 {
    let delta = z - zp;
    if delta.abs() < NEAR_DIAGONAL {
        let m = 0.5 * (z + zp);
        let v = airy(m);
        let (a, p) = (v.ai, v.ai_prime);
        let diag = p * p - m * a * a;
        // K(m - d/2, m + d/2) = K_diag(m) + d^2/6 [a p / 2 + m (p^2 - m a^2)]
        diag + delta * delta / 6.0 * (0.5 * a * p + m * (p * p - m * a * a))
    } else {
        let (vz, vzp) = (airy(z), airy(zp));
        (vz.ai * vzp.ai_prime - vz.ai_prime * vzp.ai) / delta
    }
}

/// Sine kernel sin(x - y) / (pi (x - y)) with diagonal value 1/pi.
pub fn sine_kernel(x: f64, y: f64) -> f64 {
    let u = x - y;
    if u.abs() < 1e-8 {
        // sinc expansion; the u^2 term already sits at 1e-16 relative
        (1.0 - u * u / 6.0) / std::f64::consts::PI
    } else {
        u.sin() / (std::f64::consts::PI * u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fredholm::gauss_legendre;

    #[test]
    fn airy_diagonal_at_zero() {
        // K(0,0) = Ai'(0)^2
        let v = airy(0.0);
        let want = v.ai_prime * v.ai_prime;
        assert!((airy_kernel(0.0, 0.0) - want).abs() < 1e-15);
        assert!((want - 0.066_987_483_779_663_97).abs() < 1e-10);
    }

    #[test]
    fn airy_symmetry() {
        for (z, zp) in [(1.0, 2.5), (-3.2, 0.7), (-8.0, -7.9)] {
            assert_eq!(airy_kernel(z, zp), airy_kernel(zp, z));
        }
    }

    #[test]
    fn airy_near_diagonal_blend_matches_quotient() {
        // the blend and the raw difference quotient must agree at the same
        // argument pair across the switch window
        for z in [-2.3, 0.3, 1.7] {
            for delta in [5e-7, 9e-7, 2e-6, 1e-5] {
                let (va, vb) = (airy(z), airy(z + delta));
                let quotient = (va.ai * vb.ai_prime - va.ai_prime * vb.ai) / (-delta);
                let blended = {
                    let m = z + 0.5 * delta;
                    let v = airy(m);
                    let (a, p) = (v.ai, v.ai_prime);
                    p * p - m * a * a
                        + delta * delta / 6.0 * (0.5 * a * p + m * (p * p - m * a * a))
                };
                assert!(
                    (quotient - blended).abs() < 1e-9,
                    "z={z}, delta={delta}: {quotient} vs {blended}"
                );
                // and the public kernel is one of the two
                let k = airy_kernel(z, z + delta);
                assert!((k - blended).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn airy_matches_integral_form() {
        // K(z, z') = int_0^inf Ai(z + t) Ai(z' + t) dt at (0.5, 1.5);
        // quadrature oracle on [0, 5] + [5, 15] + [15, 40].
        let (z, zp) = (0.5, 1.5);
        let mut integral = 0.0;
        for (lo, hi, n) in [(0.0, 5.0, 120), (5.0, 15.0, 120), (15.0, 40.0, 120)] {
            let r = gauss_legendre(n, lo, hi).unwrap();
            integral += r.integrate(|t| airy(z + t).ai * airy(zp + t).ai);
        }
        assert!(
            (integral - airy_kernel(z, zp)).abs() < 1e-8,
            "integral form: {integral} vs {}",
            airy_kernel(z, zp)
        );
        // reference value for the same point
        assert!((airy_kernel(z, zp) - 0.006_425_572_171_279_504).abs() < 1e-12);
    }

    #[test]
    fn sine_values() {
        assert!((sine_kernel(2.0, 2.0) - 1.0 / std::f64::consts::PI).abs() < 1e-16);
        assert!(sine_kernel(std::f64::consts::PI, 0.0).abs() < 1e-16);
        let (x, y) = (0.37, -1.2);
        assert_eq!(sine_kernel(x, y), sine_kernel(y, x));
    }
}
