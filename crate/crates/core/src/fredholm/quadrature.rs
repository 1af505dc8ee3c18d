//! Gauss-Legendre rules by Newton iteration on the Legendre recurrence.

use crate::dd::TwoFloat;
use crate::error::{Error, Result};

/// Nodes and positive weights on an interval (lo, hi).
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub lo: f64,
    pub hi: f64,
}

impl QuadratureRule {
    /// Apply the rule to a function.
    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// n-point Gauss-Legendre rule on (lo, hi); exact for polynomials of degree
/// <= 2n - 1.
pub fn gauss_legendre(n: usize, lo: f64, hi: f64) -> Result<QuadratureRule> {
    if n < 1 {
        return Err(Error::InvalidArgument(
            "gauss_legendre requires n >= 1".into(),
        ));
    }
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "gauss_legendre requires finite lo < hi, got ({lo}, {hi})"
        )));
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let half = 0.5 * (hi - lo);
    let mid = 0.5 * (hi + lo);
    // Roots come in +/- pairs; solve the upper half and mirror.
    let m = n.div_ceil(2);
    for i in 0..m {
        // Chebyshev-like initial guess for the i-th root (descending).
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut pp = 0.0;
        for _ in 0..100 {
            // Legendre P_n(x) and P_{n-1}(x) by the three-term recurrence.
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            pp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / pp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * pp * pp);
        nodes[i] = mid - half * x;
        nodes[n - 1 - i] = mid + half * x;
        weights[i] = half * w;
        weights[n - 1 - i] = half * w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = mid;
    }
    Ok(QuadratureRule {
        nodes,
        weights,
        lo,
        hi,
    })
}

/// Gauss-Legendre rule polished to double-double, for the determinant
/// assembly. Starting from the f64 nodes, two Newton corrections with the
/// Legendre recurrence carried in double-double push node and weight errors
/// to ~1e-32, so the discretization itself injects no f64-level noise into
/// the node-doubling certificates.
pub(crate) fn gauss_legendre_dd(
    n: usize,
    lo: f64,
    hi: f64,
) -> Result<(Vec<TwoFloat>, Vec<TwoFloat>)> {
    let base = gauss_legendre(n, -1.0, 1.0)?;
    let half = TwoFloat::from_sub(hi, lo).mul(TwoFloat::new(0.5));
    let mid = TwoFloat::from_sub(hi, -lo).mul(TwoFloat::new(0.5));
    let mut nodes = vec![TwoFloat::new(0.0); n];
    let mut weights = vec![TwoFloat::new(0.0); n];
    for (i, &x0) in base.nodes.iter().enumerate() {
        let mut x = TwoFloat::new(x0);
        let mut pp = TwoFloat::new(1.0);
        for _ in 0..2 {
            let (p, pm1) = legendre_pair_dd(n, x);
            // P'_n = n (x P_n - P_{n-1}) / (x^2 - 1)
            let x2m1 = x.mul(x).sub(TwoFloat::new(1.0));
            pp = TwoFloat::new(n as f64).mul(x.mul(p).sub(pm1)).div(x2m1);
            x = x.sub(p.div(pp));
        }
        // w = 2 / ((1 - x^2) P'^2) on (-1, 1)
        let one_m = TwoFloat::new(1.0).sub(x.mul(x));
        let w = TwoFloat::new(2.0).div(one_m.mul(pp).mul(pp));
        nodes[i] = mid.add(half.mul(x));
        weights[i] = half.mul(w);
    }
    Ok((nodes, weights))
}

fn legendre_pair_dd(n: usize, x: TwoFloat) -> (TwoFloat, TwoFloat) {
    let mut p0 = TwoFloat::new(1.0);
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = TwoFloat::new(2.0 * kf - 1.0)
            .mul(x)
            .mul(p1)
            .sub(TwoFloat::new(kf - 1.0).mul(p0))
            .div(TwoFloat::new(kf));
        p0 = p1;
        p1 = p2;
    }
    (p1, p0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_point_is_midpoint_rule() {
        let r = gauss_legendre(1, -1.0, 1.0).unwrap();
        assert!(r.nodes[0].abs() < 1e-15);
        assert!((r.weights[0] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn two_point_nodes() {
        // P_2 roots are +/- 1/sqrt(3), weights 1, 1.
        let r = gauss_legendre(2, -1.0, 1.0).unwrap();
        let x = 1.0 / 3f64.sqrt();
        assert!((r.nodes[0] + x).abs() < 1e-15);
        assert!((r.nodes[1] - x).abs() < 1e-15);
        assert!((r.weights[0] - 1.0).abs() < 1e-15 && (r.weights[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn exactness_degree_five() {
        let r = gauss_legendre(3, 0.0, 1.0).unwrap();
        let integral = r.integrate(|x| x.powi(4));
        assert!((integral - 0.2).abs() < 1e-15, "int x^4 on (0,1) = 1/5");
    }

    #[test]
    fn weights_sum_and_node_ordering() {
        for n in [1, 2, 5, 40, 200, 641] {
            let (lo, hi) = (-2.5, 7.0);
            let r = gauss_legendre(n, lo, hi).unwrap();
            let sum: f64 = r.weights.iter().sum();
            assert!(
                (sum - (hi - lo)).abs() < 1e-12 * (hi - lo),
                "weight sum at n={n}"
            );
            for i in 1..n {
                assert!(r.nodes[i] > r.nodes[i - 1], "nodes increasing at n={n}");
            }
            assert!(r.nodes[0] > lo && r.nodes[n - 1] < hi);
            assert!(r.weights.iter().all(|&w| w > 0.0));
        }
    }

    #[test]
    fn dd_rule_refines_the_f64_rule() {
        let (nodes, weights) = gauss_legendre_dd(40, -1.0, 3.0).unwrap();
        let base = gauss_legendre(40, -1.0, 3.0).unwrap();
        let mut sum = TwoFloat::new(0.0);
        for (i, w) in weights.iter().enumerate() {
            assert!((nodes[i].hi - base.nodes[i]).abs() < 1e-13);
            assert!((w.hi - base.weights[i]).abs() < 1e-13);
            sum = sum.add(*w);
        }
        // weight sum equals the length to double-double accuracy
        assert!((sum.value() - 4.0).abs() < 1e-28, "sum = {:?}", sum);
        // degree-5 exactness at double-double accuracy on (0,1)
        let (nodes, weights) = gauss_legendre_dd(3, 0.0, 1.0).unwrap();
        let mut integral = TwoFloat::new(0.0);
        for (x, w) in nodes.iter().zip(&weights) {
            let x4 = x.mul(*x).mul(*x).mul(*x);
            integral = integral.add(w.mul(x4));
        }
        assert!((integral.value() - 0.2).abs() < 1e-29);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(gauss_legendre(0, 0.0, 1.0).is_err());
        assert!(gauss_legendre(4, 1.0, 1.0).is_err());
        assert!(gauss_legendre(4, 2.0, 1.0).is_err());
    }

    #[test]
    fn high_order_accuracy() {
        // analytic integrand, compare against a closed form
        let r = gauss_legendre(40, 0.0, std::f64::consts::PI).unwrap();
        let integral = r.integrate(f64::sin);
        assert!((integral - 2.0).abs() < 1e-14);
    }
}
