//! Executable verification: every identity the expansion machinery relies
//! on, bound into pass/fail checks with explicit tolerances.
//!
//! Checks split into two regimes that are never mixed: exact identities
//! (residuals at or below 1e-9, limited only by quadrature round-off) and
//! asymptotic gates (empirical decrease of an o(1) error, judged at
//! desk-scale parameters).

use crate::asymptotics::{two_gap_asym, ExpansionForm};
use crate::error::Result;
use crate::fredholm::{det_gap_sine, det_one_gap_airy, det_two_gap};
use crate::geometry::{beta_fn, cycle_integrals, elliptic_data, EllipticData, GapConfig};
use crate::specfun::{elliptic_ke, theta, theta_deriv, ThetaContext};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

/// One named residual against one tolerance.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub context: String,
}

impl CheckReport {
    fn new(name: impl Into<String>, residual: f64, tolerance: f64, context: String) -> Self {
        let residual = residual.abs();
        CheckReport {
            name: name.into(),
            residual,
            tolerance,
            passed: residual <= tolerance,
            context,
        }
    }
}

fn ctx_of(cfg: &GapConfig) -> String {
    format!("a={}, b={}, c={}, s={}", cfg.a(), cfg.b(), cfg.c(), cfg.s())
}

/// Lemma-level theta-constant identities:
/// theta3^4 = J0^2 (a-c)/pi^2, theta4^4 = J0^2 (a-b)/pi^2,
/// theta2^4 = J0^2 (b-c)/pi^2.
pub fn check_theta_constants(cfg: &GapConfig, ed: &EllipticData) -> Result<Vec<CheckReport>> {
    let ctx = ThetaContext::new(ed.tau)?;
    let zero = Complex64::new(0.0, 0.0);
    let j0sq = ed.cycles.j0 * ed.cycles.j0;
    let scale = j0sq * (cfg.a() - cfg.c()) / (PI * PI);
    let mut out = Vec::with_capacity(3);
    for (j, gap, label) in [
        (3u8, cfg.a() - cfg.c(), "theta3^4 = J0^2 (a-c)/pi^2"),
        (4u8, cfg.a() - cfg.b(), "theta4^4 = J0^2 (a-b)/pi^2"),
        (2u8, cfg.b() - cfg.c(), "theta2^4 = J0^2 (b-c)/pi^2"),
    ] {
        let t = theta(j, zero, &ctx)?;
        let lhs = t.powu(4).re;
        let rhs = j0sq * gap / (PI * PI);
        out.push(CheckReport::new(
            label,
            (lhs - rhs) / scale.max(1e-30),
            1e-10,
            ctx_of(cfg),
        ));
    }
    Ok(out)
}

/// Riemann period relation I1 J0 - J1 I0 = 2 pi i and the Legendre relation
/// at the configuration's elliptic modulus.
pub fn check_cycle_relations(cfg: &GapConfig) -> Result<Vec<CheckReport>> {
    let cyc = cycle_integrals(cfg);
    let riemann = (cyc.i1 * cyc.j0 - cyc.j1 * cyc.i0 - 2.0 * PI) / (2.0 * PI);
    let k = cyc.modulus;
    let kp = ((1.0 - k) * (1.0 + k)).sqrt();
    let ek = elliptic_ke(k)?;
    let ekp = elliptic_ke(kp)?;
    let legendre = ekp.big_k * ek.big_e + ek.big_k * ekp.big_e - ek.big_k * ekp.big_k - PI / 2.0;
    Ok(vec![
        CheckReport::new(
            "Riemann relation I1 J0 - J1 I0 = 2 pi i",
            riemann,
            1e-10,
            ctx_of(cfg),
        ),
        CheckReport::new(
            "Legendre relation at modulus k",
            legendre,
            1e-13,
            ctx_of(cfg),
        ),
    ])
}

/// The four theta ratios entering the outer parametrix, evaluated at u.
fn theta_entries(u: f64, w: f64, d: f64, ctx: &ThetaContext) -> Result<[Complex64; 4]> {
    let t = |x: f64| theta(3, Complex64::new(x, 0.0), ctx);
    let t30 = t(0.0)?;
    let t3w = t(w)?;
    let t_ud = t(u + d)?;
    let t_umd = t(u - d)?;
    Ok([
        t30 * t(u + w + d)? / (t3w * t_ud),
        t30 * t(u - w - d)? / (t3w * t_umd),
        t30 * t(u + w - d)? / (t3w * t_umd),
        t30 * t(u - w + d)? / (t3w * t_ud),
    ])
}

/// det P^infty(z; s) = 1 at real samples z > a.
pub fn check_pinfty_det(
    cfg: &GapConfig,
    ed: &EllipticData,
    s: f64,
    z_samples: &[f64],
) -> Result<CheckReport> {
    let ctx = ThetaContext::new(ed.tau)?;
    let w = s.powf(1.5) * ed.omega;
    let mut worst = 0.0f64;
    for &z in z_samples {
        let u = ed.u(z)?;
        let beta = beta_fn(cfg, z)?;
        let n_plus = 0.5 * (beta + 1.0 / beta);
        let n_minus = Complex64::new(0.0, -0.5) * (beta - 1.0 / beta);
        let [t11, t12, t21, t22] = theta_entries(u, w, ed.d, &ctx)?;
        let det = (t11 * n_plus) * (t22 * n_plus) - (t12 * n_minus) * (-t21 * n_minus);
        worst = worst.max((det - 1.0).norm());
    }
    Ok(CheckReport::new(
        "det P^infty = 1 on (a, inf)",
        worst,
        1e-9,
        format!("{}, s={s}, {} samples", ctx_of(cfg), z_samples.len()),
    ))
}

/// Default parametrix sample points: spread over (a, inf) plus the special
/// point beta2* where beta - beta^{-1} vanishes.
pub fn default_pinfty_samples(cfg: &GapConfig, ed: &EllipticData) -> Vec<f64> {
    let span = cfg.a() - cfg.c();
    let mut pts: Vec<f64> = [0.11, 0.47, 1.3, 2.9, 6.1]
        .iter()
        .map(|&f| cfg.a() + f * span)
        .collect();
    pts.push(ed.beta2_star);
    pts.retain(|&z| (z - ed.beta2_star).abs() > 1e-3 || z == ed.beta2_star);
    pts
}

/// Log-derivative identities at the shifted Abel points:
/// `[theta3'/theta3 - theta1'/theta1](u_+(b) + d) = J0` and
/// `[theta3'/theta3 - theta1'/theta1](d) = J0 (a - c)`.
pub fn check_logderiv_identities(cfg: &GapConfig, ed: &EllipticData) -> Result<Vec<CheckReport>> {
    let ctx = ThetaContext::new(ed.tau)?;
    let ratio_diff = |z: Complex64| -> Result<Complex64> {
        let t3 = theta(3, z, &ctx)?;
        let t3p = theta_deriv(3, 1, z, &ctx)?;
        let t1 = theta(1, z, &ctx)?;
        let t1p = theta_deriv(1, 1, z, &ctx)?;
        Ok(t3p / t3 - t1p / t1)
    };
    let j0 = ed.cycles.j0;
    let at_b = ed.u_b_plus + ed.d; // d - tau/2
    let v = (ratio_diff(at_b)? - j0).norm() / j0.abs().max(1.0);
    let at_d = Complex64::new(ed.d, 0.0);
    let target = j0 * (cfg.a() - cfg.c());
    let ix = (ratio_diff(at_d)? - target).norm() / target.abs().max(1.0);
    Ok(vec![
        CheckReport::new(
            "log-derivative difference at u_+(b)+d equals J0",
            v,
            1e-9,
            ctx_of(cfg),
        ),
        CheckReport::new(
            "log-derivative difference at d equals J0 (a-c)",
            ix,
            1e-9,
            ctx_of(cfg),
        ),
    ])
}

/// Central-difference checks of the closed-form derivatives of Omega, tau
/// and alpha2 in the endpoints a and b.
pub fn check_param_derivatives(cfg: &GapConfig) -> Result<Vec<CheckReport>> {
    let (a, b, c) = (cfg.a(), cfg.b(), cfg.c());
    let ed = elliptic_data(cfg)?;
    let j0 = ed.cycles.j0;
    let context = ctx_of(cfg);
    let mut out = Vec::with_capacity(6);

    let data_at = |aa: f64, bb: f64| -> Result<EllipticData> {
        elliptic_data(&GapConfig::new(aa, bb, c, cfg.s())?)
    };

    let hb = 1e-5 * b.abs().max(1.0);
    let (bp, bm) = (data_at(a, b + hb)?, data_at(a, b - hb)?);
    let fd_omega_b = (bp.omega - bm.omega) / (2.0 * hb);
    let fd_tau_b = (bp.tau.im - bm.tau.im) / (2.0 * hb);
    let fd_alpha2_b = (bp.alpha2 - bm.alpha2) / (2.0 * hb);
    out.push(CheckReport::new(
        "dOmega/db = q(b)/((a-b)(b-c) J0)",
        fd_omega_b - ed.q(b) / ((a - b) * (b - c) * j0),
        1e-6,
        context.clone(),
    ));
    out.push(CheckReport::new(
        "dtau/db = -pi i/(J0^2 (a-b)(b-c))",
        fd_tau_b + PI / (j0 * j0 * (a - b) * (b - c)),
        1e-6,
        context.clone(),
    ));
    out.push(CheckReport::new(
        "dalpha2/db = q(b)^2/((a-b)(b-c))",
        fd_alpha2_b - ed.q(b) * ed.q(b) / ((a - b) * (b - c)),
        1e-6,
        context.clone(),
    ));

    let ha = 1e-5 * a.abs().max(1.0);
    let (ap, am) = (data_at(a + ha, b)?, data_at(a - ha, b)?);
    let fd_omega_a = (ap.omega - am.omega) / (2.0 * ha);
    let fd_tau_a = (ap.tau.im - am.tau.im) / (2.0 * ha);
    let fd_alpha2_a = (ap.alpha2 - am.alpha2) / (2.0 * ha);
    out.push(CheckReport::new(
        "dOmega/da = -q(a)/((a-b)(a-c) J0)",
        fd_omega_a + ed.q(a) / ((a - b) * (a - c) * j0),
        1e-6,
        context.clone(),
    ));
    out.push(CheckReport::new(
        "dtau/da = pi i/(J0^2 (a-b)(a-c))",
        fd_tau_a - PI / (j0 * j0 * (a - b) * (a - c)),
        1e-6,
        context.clone(),
    ));
    out.push(CheckReport::new(
        "dalpha2/da = -q(a)^2/((a-b)(a-c))",
        fd_alpha2_a + ed.q(a) * ed.q(a) / ((a - b) * (a - c)),
        1e-6,
        context,
    ));
    Ok(out)
}

/// Sign results and sharp bounds on q plus the elliptic-integral estimates
/// used to prove them: q(a) < 0, q(b) <= -(a-b)(b-c)/3,
/// q(c) >= (a-c)(b-c)/3, E/K > sqrt(1-k^2), K <= (pi/2)(1-k^2)^{-1/4}.
pub fn check_q_signs_and_bounds(cfg: &GapConfig) -> Result<Vec<CheckReport>> {
    let ed = elliptic_data(cfg)?;
    let (a, b, c) = (cfg.a(), cfg.b(), cfg.c());
    let k = ed.cycles.modulus;
    let ke = elliptic_ke(k)?;
    let kp2 = 1.0 - k * k;
    let context = ctx_of(cfg);
    // signed slack: negative or zero means the inequality holds
    let checks = [
        ("q(a) < 0", ed.q(a)),
        ("q(b) <= -(a-b)(b-c)/3", ed.q(b) + (a - b) * (b - c) / 3.0),
        ("q(c) >= (a-c)(b-c)/3", (a - c) * (b - c) / 3.0 - ed.q(c)),
        ("E/K > sqrt(1-k^2)", kp2.sqrt() - ke.big_e / ke.big_k),
        (
            "K <= (pi/2)(1-k^2)^{-1/4}",
            ke.big_k - PI / 2.0 / kp2.powf(0.25),
        ),
    ];
    Ok(checks
        .iter()
        .map(|(name, slack)| {
            let passed = *slack <= 0.0;
            CheckReport {
                name: (*name).into(),
                residual: slack.max(0.0),
                tolerance: 0.0,
                passed,
                context: context.clone(),
            }
        })
        .collect())
}

/// The headline gate: |numeric log P - theorem1 total| decreases along
/// `s_list` and ends below `gate`. This certifies the constant chi; the
/// o(1) error admits no fixed rate, so decrease is the honest assertion.
pub fn check_theorem1(cfg: &GapConfig, s_list: &[f64]) -> Result<CheckReport> {
    let gate = 0.05;
    let mut errs = Vec::with_capacity(s_list.len());
    for &s in s_list {
        let scaled = cfg.with_s(s)?;
        let ed = elliptic_data(&scaled)?;
        let det = det_two_gap(&scaled, 80)?;
        let asym = two_gap_asym(&scaled, &ed, ExpansionForm::Theorem1)?;
        errs.push((det.log_det - asym.total).abs());
    }
    let decreasing = errs.windows(2).all(|p| p[1] < p[0]);
    let last = *errs.last().expect("s_list must not be empty");
    // a non-decreasing error sequence fails the gate outright
    let residual = if decreasing { last } else { f64::INFINITY };
    Ok(CheckReport::new(
        "theorem1: |log det - asymptotic| decreasing, final below gate",
        residual,
        gate,
        format!(
            "{}, s_list={s_list:?}, errors={errs:?}; 0.05 is a desk-scale gate, the o(1) term carries no rate",
            ctx_of(cfg)
        ),
    ))
}

/// Separation-of-gaps residual
/// |log P(sJ) - log det_sine(-t0 sqrt|c|, t0 sqrt|c|) - log det_airy(-t1, inf)|
/// in the regime b = c + 2 t0 / s^{3/2}, a = -t1 / s.
pub fn check_separation(s: f64, t0: f64, t1: f64, c: f64) -> Result<CheckReport> {
    let a = -t1 / s;
    let b = c + 2.0 * t0 / s.powf(1.5);
    let cfg = GapConfig::new(a, b, c, s)?;
    let two_gap = det_two_gap(&cfg, 80)?;
    let sine = det_gap_sine(t0 * c.abs().sqrt())?;
    let airy = det_one_gap_airy(t1)?;
    let residual = two_gap.log_det - sine.log_det - airy.log_det;
    Ok(CheckReport::new(
        "separation: two-gap determinant splits into sine x airy",
        residual,
        0.02,
        format!("s={s}, t0={t0}, t1={t1}, c={c}"),
    ))
}

/// Seeded random configurations kept away from the degeneracy guards:
/// a in (-2, -0.3), gaps a-b and b-c in (0.3, 2), s in (0.5, 4).
pub fn sample_configs(count: usize, seed: u64) -> Vec<GapConfig> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let a = rng.gen_range(-2.0..-0.3);
            let b = a - rng.gen_range(0.3..2.0);
            let c = b - rng.gen_range(0.3..2.0);
            let s = rng.gen_range(0.5..4.0);
            GapConfig::new(a, b, c, s).expect("sampler stays inside guards")
        })
        .collect()
}

/// The exact-identity suite over `count` seeded configurations: theta
/// constants, Riemann/Legendre, det P^infty, the log-derivative
/// identities, and the q-sign/elliptic bounds.
pub fn exact_identity_suite(seed: u64, count: usize) -> Result<Vec<CheckReport>> {
    let mut reports = Vec::new();
    for cfg in sample_configs(count, seed) {
        let ed = elliptic_data(&cfg)?;
        reports.extend(check_theta_constants(&cfg, &ed)?);
        reports.extend(check_cycle_relations(&cfg)?);
        let samples = default_pinfty_samples(&cfg, &ed);
        reports.push(check_pinfty_det(&cfg, &ed, cfg.s(), &samples)?);
        reports.extend(check_logderiv_identities(&cfg, &ed)?);
        reports.extend(check_q_signs_and_bounds(&cfg)?);
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> GapConfig {
        GapConfig::new(-1.0, -2.0, -3.0, 1.0).unwrap()
    }

    #[test]
    fn theta_constants_on_base_config() {
        let cfg = base();
        let ed = elliptic_data(&cfg).unwrap();
        let reports = check_theta_constants(&cfg, &ed).unwrap();
        assert!(reports.iter().all(|r| r.passed), "{reports:?}");
        // symmetric configuration: theta2^4 = theta4^4 since a-b = b-c
        let ctx = ThetaContext::new(ed.tau).unwrap();
        let zero = Complex64::new(0.0, 0.0);
        let t2 = theta(2, zero, &ctx).unwrap().powu(4).re;
        let t4 = theta(4, zero, &ctx).unwrap().powu(4).re;
        let t3 = theta(3, zero, &ctx).unwrap().powu(4).re;
        assert!((t2 - t4).abs() < 1e-12);
        // Jacobi: theta3^4 = theta2^4 + theta4^4
        assert!((t3 - t2 - t4).abs() < 1e-12);
        // reference magnitude from the series oracle
        assert!((t3 - 1.393_203_929_685_676).abs() < 1e-9);
    }

    #[test]
    fn pinfty_det_is_one_and_s_independent() {
        let cfg = base();
        let ed = elliptic_data(&cfg).unwrap();
        let samples = default_pinfty_samples(&cfg, &ed);
        assert!(samples.len() >= 5);
        let mut residuals = Vec::new();
        for s in [0.5, 1.0, 7.0] {
            let r = check_pinfty_det(&cfg, &ed, s, &samples).unwrap();
            assert!(r.passed, "{r:?}");
            residuals.push(r.residual);
        }
        // the determinant identity holds for every s: residual scale does not drift
        assert!(residuals.iter().all(|&r| r < 1e-9));
    }

    #[test]
    fn logderiv_identities_on_base_config() {
        let cfg = base();
        let ed = elliptic_data(&cfg).unwrap();
        let reports = check_logderiv_identities(&cfg, &ed).unwrap();
        assert!(reports.iter().all(|r| r.passed), "{reports:?}");
        // arithmetic cross-check: the two targets differ by J0 (a-c-1)
        let j0 = ed.cycles.j0;
        let diff = j0 * (cfg.a() - cfg.c()) - j0;
        assert!((diff - j0 * (cfg.a() - cfg.c() - 1.0)).abs() < 1e-14);
    }

    #[test]
    fn param_derivatives_on_base_config() {
        let reports = check_param_derivatives(&base()).unwrap();
        assert_eq!(reports.len(), 6);
        assert!(reports.iter().all(|r| r.passed), "{reports:?}");
    }

    #[test]
    fn q_bounds_hold_on_samples() {
        for cfg in sample_configs(100, 11) {
            let reports = check_q_signs_and_bounds(&cfg).unwrap();
            assert!(reports.iter().all(|r| r.passed), "{:?}", reports);
        }
    }

    #[test]
    fn sampler_is_deterministic() {
        let a = sample_configs(10, 7);
        let b = sample_configs(10, 7);
        assert_eq!(a, b);
        let c = sample_configs(10, 8);
        assert_ne!(a, c);
    }

    #[test]
    fn report_passed_tracks_tolerance() {
        let r = CheckReport::new("x", 2e-9, 1e-9, String::new());
        assert!(!r.passed);
        let r = CheckReport::new("x", 0.5e-9, 1e-9, String::new());
        assert!(r.passed);
    }
}
