//! The genus-1 surface of p(z)^{1/2}, p(z) = (z-a)(z-b)(z-c): cycle
//! integrals, the polynomial q, the g-function coefficients, Omega, tau, the
//! Abel map u, the constant d and the beta roots.
//!
//! Sign conventions follow the first sheet fixed by p(z)^{1/2} > 0 for
//! z > a. On (c, b) the first-sheet root is the negative of the positive
//! real root, which is where the signs of J_k and d come from:
//!
//! ```text
//! J_k = -int_c^b z^k dz / |p|^{1/2}          (J_0 < 0, J_1 > 0, J_2 < 0)
//! I_k = (1/i) int_b^a z^k dz / |p|^{1/2}     (purely imaginary, Im I_0 < 0)
//! tau = I_0 / J_0,   Im tau > 0,   I_1 J_0 - J_1 I_0 = 2 pi i.
//! ```
//!
//! Endpoint square-root singularities are removed exactly by sin^2 /
//! quadratic substitutions, so fixed-order Gauss-Legendre converges
//! spectrally. alpha_2 is assembled from the exact polynomial part
//! -(a^3 + 2c(b-c)^2 + (b-c)^3)/12 plus a small quadrature-determined
//! remainder, which keeps it accurate in the near-degenerate regime b -> c
//! where the naive symmetric-function formula loses all significant digits.

use crate::error::{Error, Result};
use crate::fredholm::gauss_legendre;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Default node count for the spectral quadratures.
const NODES: usize = 200;

/// Endpoints c < b < a < 0 and the scale s > 0 of the two-gap set
/// (sc, sb) u (sa, +inf).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapConfig {
    a: f64,
    b: f64,
    c: f64,
    s: f64,
}

impl GapConfig {
    /// Validates the strict ordering c < b < a < 0, s > 0 and refuses
    /// configurations double precision cannot separate
    /// (b - c < 1e-8, a - b < 1e-8 or |a| < 1e-10).
    pub fn new(a: f64, b: f64, c: f64, s: f64) -> Result<Self> {
        if ![a, b, c, s].iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidArgument(
                "endpoints and scale must be finite".into(),
            ));
        }
        if !(c < b && b < a && a < 0.0) {
            return Err(Error::InvalidArgument(format!(
                "endpoints must satisfy c < b < a < 0, got c={c}, b={b}, a={a}"
            )));
        }
        if !(s > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "scale must satisfy s > 0, got {s}"
            )));
        }
        if b - c < 1e-8 || a - b < 1e-8 || a.abs() < 1e-10 {
            return Err(Error::Degenerate(format!(
                "branch points too close: b-c={:.3e}, a-b={:.3e}, |a|={:.3e}",
                b - c,
                a - b,
                a.abs()
            )));
        }
        Ok(GapConfig { a, b, c, s })
    }

    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn c(&self) -> f64 {
        self.c
    }
    pub fn s(&self) -> f64 {
        self.s
    }

    /// Same endpoints at a different scale.
    pub fn with_s(&self, s: f64) -> Result<Self> {
        Self::new(self.a, self.b, self.c, s)
    }
}

/// Periods of z^k dz / p(z)^{1/2} around the B_1 and A_1 cycles.
#[derive(Debug, Clone, Copy)]
pub struct CycleIntegrals {
    pub j0: f64,
    pub j1: f64,
    pub j2: f64,
    /// Imaginary parts of the purely imaginary I_0, I_1, I_2.
    pub i0: f64,
    pub i1: f64,
    pub i2: f64,
    /// Elliptic modulus k = sqrt((b-c)/(a-c)).
    pub modulus: f64,
}

/// Everything attached to the surface: cycle integrals, q(z) = z^2 + q1 z +
/// q0, the g-function expansion coefficients, Omega, tau, the Abel constant
/// d and the zeros of beta - beta^{-1}.
#[derive(Debug, Clone, Copy)]
pub struct EllipticData {
    pub cycles: CycleIntegrals,
    pub q1: f64,
    pub q0: f64,
    pub alpha1: f64,
    pub alpha2: f64,
    pub omega: f64,
    /// Purely imaginary, Im tau > 0.
    pub tau: Complex64,
    /// Abel-map image of the arc from c to beta_1^*, in (0, 1/2).
    pub d: f64,
    pub beta1_star: f64,
    pub beta2_star: f64,
    /// u_+(b) = -tau/2.
    pub u_b_plus: Complex64,
    /// u_+(c) = -(1 + tau)/2.
    pub u_c_plus: Complex64,
    cfg: GapConfig,
}

/// Integrate f(z) against the positive measure dz/|p|^{1/2} over (c, b);
/// z = c + (b-c) sin^2 t removes both endpoint singularities.
fn b_cycle_integral(cfg: &GapConfig, mut f: impl FnMut(f64) -> f64) -> f64 {
    let (a, b, c) = (cfg.a, cfg.b, cfg.c);
    let rule = gauss_legendre(NODES, 0.0, PI / 2.0).expect("fixed bounds");
    rule.integrate(|t| {
        let sin2 = t.sin().powi(2);
        let z = c + (b - c) * sin2;
        2.0 * f(z) / (a - c - (b - c) * sin2).sqrt()
    })
}

/// Same positive measure over (b, a), z = b + (a-b) sin^2 t. When b-c is
/// small the integrand develops a boundary layer of width
/// sqrt((b-c)/(a-b)) at t = 0, so that panel is integrated separately.
fn a_cycle_integral(cfg: &GapConfig, mut f: impl FnMut(f64) -> f64) -> f64 {
    let (a, b, c) = (cfg.a, cfg.b, cfg.c);
    let mut g = |t: f64| {
        let sin2 = t.sin().powi(2);
        let z = b + (a - b) * sin2;
        2.0 * f(z) / (b - c + (a - b) * sin2).sqrt()
    };
    let layer = ((b - c) / (a - b)).sqrt();
    if layer < 0.01 {
        let t_star = (10.0 * layer).min(PI / 4.0);
        let near = gauss_legendre(NODES, 0.0, t_star).expect("fixed bounds");
        let far = gauss_legendre(NODES, t_star, PI / 2.0).expect("fixed bounds");
        near.integrate(&mut g) + far.integrate(&mut g)
    } else {
        gauss_legendre(NODES, 0.0, PI / 2.0)
            .expect("fixed bounds")
            .integrate(&mut g)
    }
}

/// Moments of z^k, k = 0, 1, 2, against one cycle measure in a single pass.
fn cycle_moments(cfg: &GapConfig, over_gap: bool) -> [f64; 3] {
    let mut s = [0.0; 3];
    let accumulate = |z: f64, s: &mut [f64; 3], base: f64| {
        s[0] += base;
        s[1] += base * z;
        s[2] += base * z * z;
    };
    if over_gap {
        b_cycle_integral_weighted(cfg, |z, base| accumulate(z, &mut s, base));
    } else {
        a_cycle_integral_weighted(cfg, |z, base| accumulate(z, &mut s, base));
    }
    s
}

/// Like [`b_cycle_integral`] but hands (z, weight) pairs to the sink.
fn b_cycle_integral_weighted(cfg: &GapConfig, mut sink: impl FnMut(f64, f64)) {
    let (a, b, c) = (cfg.a, cfg.b, cfg.c);
    let rule = gauss_legendre(NODES, 0.0, PI / 2.0).expect("fixed bounds");
    for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
        let sin2 = t.sin().powi(2);
        let z = c + (b - c) * sin2;
        sink(z, 2.0 * w / (a - c - (b - c) * sin2).sqrt());
    }
}

fn a_cycle_integral_weighted(cfg: &GapConfig, mut sink: impl FnMut(f64, f64)) {
    let (a, b, c) = (cfg.a, cfg.b, cfg.c);
    let run = |lo: f64, hi: f64, sink: &mut dyn FnMut(f64, f64)| {
        let rule = gauss_legendre(NODES, lo, hi).expect("fixed bounds");
        for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
            let sin2 = t.sin().powi(2);
            let z = b + (a - b) * sin2;
            sink(z, 2.0 * w / (b - c + (a - b) * sin2).sqrt());
        }
    };
    let layer = ((b - c) / (a - b)).sqrt();
    if layer < 0.01 {
        let t_star = (10.0 * layer).min(PI / 4.0);
        run(0.0, t_star, &mut sink);
        run(t_star, PI / 2.0, &mut sink);
    } else {
        run(0.0, PI / 2.0, &mut sink);
    }
}

/// Cycle integrals J_k (real) and I_k (imaginary parts), with the modulus.
pub fn cycle_integrals(cfg: &GapConfig) -> CycleIntegrals {
    let jm = cycle_moments(cfg, true);
    let im = cycle_moments(cfg, false);
    CycleIntegrals {
        j0: -jm[0],
        j1: -jm[1],
        j2: -jm[2],
        i0: -im[0],
        i1: -im[1],
        i2: -im[2],
        modulus: ((cfg.b - cfg.c) / (cfg.a - cfg.c)).sqrt(),
    }
}

/// All derived quantities of the surface.
pub fn elliptic_data(cfg: &GapConfig) -> Result<EllipticData> {
    let (a, b, c) = (cfg.a, cfg.b, cfg.c);
    let cycles = cycle_integrals(cfg);
    let (j0, j1, j2) = (cycles.j0, cycles.j1, cycles.j2);
    let q1 = -(a + b + c) / 2.0;

    // q0 through the combined moment keeps it accurate when b -> c: the
    // integrand z (z + q1) is evaluated directly instead of differencing
    // the large moments J_2 and q1 J_1.
    let w_comb = b_cycle_integral(cfg, |z| z * (z + q1));
    let q0 = w_comb / j0;

    // internal consistency: the B_1-cycle identity 3 J_2 + 4 q1 J_1 + e2 J_0 = 0
    let e2 = a * b + a * c + b * c;
    let b1_residual = 3.0 * j2 + 4.0 * q1 * j1 + e2 * j0;
    let scale = j2.abs().max(1.0);
    if b1_residual.abs() > 1e-9 * scale {
        return Err(Error::InternalConsistency(format!(
            "B1-cycle relation residual {b1_residual:.3e} exceeds 1e-9; quadrature defect"
        )));
    }

    let alpha1 = 0.5 * e2 - 0.25 * (a * a + b * b + c * c) - 2.0 * q0;
    // alpha2 = -(1/12)(a^3+b^3+c^3 - (a+b)(a+c)(b+c) + 4(a+b+c) q0)
    //        = -(1/12)(a^3 + 2c eps^2 + eps^3) - ((a+b+c)/3) delta,
    // with eps = b - c and delta = q0 - ac/2 - a eps / 4 exactly.
    let eps = b - c;
    let delta = q0 - 0.5 * a * c - 0.25 * a * eps;
    let alpha2 =
        -(a.powi(3) + 2.0 * c * eps * eps + eps.powi(3)) / 12.0 - (a + b + c) / 3.0 * delta;

    // Omega = (i/pi)(I_2 + q1 I_1 + q0 I_0) as one real integral of q(z)
    let omega = a_cycle_integral(cfg, |z| (z + q1) * z + q0) / PI;
    // cross-check against the moment assembly; disagreement flags a bug
    let omega_moments = -(cycles.i2 + q1 * cycles.i1 + q0 * cycles.i0) / PI;
    if (omega - omega_moments).abs() > 1e-10 * omega.abs().max(1.0) {
        return Err(Error::InternalConsistency(format!(
            "Omega mismatch between combined and moment quadratures: {:.3e}",
            omega - omega_moments
        )));
    }

    let tau = Complex64::new(0.0, cycles.i0 / j0);
    if !(tau.im > 0.0) {
        return Err(Error::InternalConsistency(
            "tau must have positive imaginary part".into(),
        ));
    }

    // h(z) = (z-a)(z-c) - (z-b) = z^2 - (a+c+1) z + ac + b; stable quadratic
    // roots via q = -(B + sign(B) sqrt(disc))/2, roots q and C/q
    let bq = -(a + c + 1.0);
    let cq = a * c + b;
    let disc = (bq * bq - 4.0 * cq).sqrt();
    let qroot = -(bq + disc.copysign(bq)) / 2.0;
    let (mut beta1_star, mut beta2_star) = (qroot, cq / qroot);
    if beta1_star > beta2_star {
        std::mem::swap(&mut beta1_star, &mut beta2_star);
    }
    if !(beta1_star > c && beta1_star < b && beta2_star > a) {
        return Err(Error::InternalConsistency(format!(
            "beta roots {beta1_star}, {beta2_star} outside (c,b) x (a,inf)"
        )));
    }

    // d = -(1/(2 J_0)) int_c^{beta1*} dz/sqrt((a-z)(b-z)(z-c)), z = c + (b1-c) w^2
    let rule = gauss_legendre(NODES, 0.0, 1.0).expect("fixed bounds");
    let span = beta1_star - c;
    let w_int = rule.integrate(|v| {
        let z = c + span * v * v;
        2.0 * span.sqrt() / ((a - z) * (b - z)).sqrt()
    });
    let d = -w_int / (2.0 * j0);
    if !(d > 0.0 && d < 0.5) {
        return Err(Error::InternalConsistency(format!(
            "Abel constant d = {d} outside (0, 1/2)"
        )));
    }

    Ok(EllipticData {
        cycles,
        q1,
        q0,
        alpha1,
        alpha2,
        omega,
        tau,
        d,
        beta1_star,
        beta2_star,
        u_b_plus: -tau / 2.0,
        u_c_plus: -(1.0 + tau) / 2.0,
        cfg: *cfg,
    })
}

impl EllipticData {
    /// q(z) = z^2 + q1 z + q0.
    pub fn q(&self, z: f64) -> f64 {
        (z + self.q1) * z + self.q0
    }

    /// Residual of the gap condition int_c^b q / p^{1/2} = 0 (identically
    /// satisfied by the construction of q0 up to quadrature round-off).
    pub fn gap_condition_residual(&self) -> f64 {
        b_cycle_integral(&self.cfg, |z| self.q(z)).abs()
    }

    /// Abel map u(x) for x >= a on the first sheet; u(a) = 0, decreasing to
    /// -1/2 as x -> infinity.
    pub fn u(&self, x: f64) -> Result<f64> {
        u_impl(&self.cfg, self.cycles.j0, x)
    }

    /// g(x) = int_a^x q / p^{1/2} for x >= a.
    pub fn g(&self, x: f64) -> Result<f64> {
        g_impl(&self.cfg, self.q1, self.q0, x)
    }

    pub fn config(&self) -> &GapConfig {
        &self.cfg
    }
}

/// Split point between the quadratic substitution at a and the r = w^{-1/2}
/// substitution that handles the tail; always positive.
fn far_split(cfg: &GapConfig) -> f64 {
    (cfg.a + 2.0 * (cfg.a - cfg.c)).max(-2.0 * cfg.a)
}

fn u_impl(cfg: &GapConfig, j0: f64, x: f64) -> Result<f64> {
    let (a, b, c) = (cfg.a, cfg.b, cfg.c);
    if !(x >= a) {
        return Err(Error::InvalidArgument(format!(
            "u(x) requires x >= a = {a}, got {x}"
        )));
    }
    if x == a {
        return Ok(0.0);
    }
    let x0 = far_split(cfg);
    let near_hi = x.min(x0);
    let rule = gauss_legendre(NODES, 0.0, 1.0).expect("fixed bounds");
    let span = near_hi - a;
    let mut total = rule.integrate(|v| {
        let w = a + span * v * v;
        2.0 * span.sqrt() / ((w - b) * (w - c)).sqrt()
    });
    if x > x0 {
        // int_{x0}^{x} dw/sqrt(p) = int 2 dr / sqrt((1-a r^2)(1-b r^2)(1-c r^2))
        let far = gauss_legendre(NODES, x.powf(-0.5), x0.powf(-0.5)).expect("fixed bounds");
        total += far.integrate(|r| {
            let r2 = r * r;
            2.0 / ((1.0 - a * r2) * (1.0 - b * r2) * (1.0 - c * r2)).sqrt()
        });
    }
    Ok(total / (2.0 * j0))
}

fn g_impl(cfg: &GapConfig, q1: f64, q0: f64, x: f64) -> Result<f64> {
    let (a, b, c) = (cfg.a, cfg.b, cfg.c);
    if !(x >= a) {
        return Err(Error::InvalidArgument(format!(
            "g(x) requires x >= a = {a}, got {x}"
        )));
    }
    if x == a {
        return Ok(0.0);
    }
    let x0 = far_split(cfg);
    let near_hi = x.min(x0);
    let rule = gauss_legendre(NODES, 0.0, 1.0).expect("fixed bounds");
    let span = near_hi - a;
    let mut total = rule.integrate(|v| {
        let w = a + span * v * v;
        2.0 * span.sqrt() * ((w + q1) * w + q0) / ((w - b) * (w - c)).sqrt()
    });
    if x > x0 {
        // dyadic panels tame the r^{-4} growth of the transformed integrand
        let r_lo = x.powf(-0.5);
        let r_hi = x0.powf(-0.5);
        let mut lo = r_lo;
        while lo < r_hi {
            let hi = (2.0 * lo).min(r_hi);
            let rule = gauss_legendre(64, lo, hi).expect("fixed bounds");
            total += rule.integrate(|r| {
                let r2 = r * r;
                let poly = (1.0 / (r2 * r2)) + q1 / r2 + q0;
                2.0 * poly / ((1.0 - a * r2) * (1.0 - b * r2) * (1.0 - c * r2)).sqrt()
            });
            lo = hi;
        }
    }
    Ok(total)
}

/// Abel map as a standalone operation (recomputes J_0; prefer
/// [`EllipticData::u`] in loops).
pub fn u_map(cfg: &GapConfig, x: f64) -> Result<f64> {
    let cycles = cycle_integrals(cfg);
    u_impl(cfg, cycles.j0, x)
}

/// beta(x) = ((x-a)(x-c)/(x-b))^{1/4}, positive branch on (a, inf).
pub fn beta_fn(cfg: &GapConfig, x: f64) -> Result<f64> {
    if !(x > cfg.a) {
        return Err(Error::InvalidArgument(format!(
            "beta(x) requires x > a = {}, got {x}",
            cfg.a
        )));
    }
    Ok(((x - cfg.a) * (x - cfg.c) / (x - cfg.b)).powf(0.25))
}

/// g(x) = int_a^x q / p^{1/2} as a standalone operation.
pub fn g_eval(cfg: &GapConfig, x: f64) -> Result<f64> {
    let ed = elliptic_data(cfg)?;
    ed.g(x)
}
