//! Large-s expansions: the two-gap theorem in its three equivalent forms,
//! the classical one-gap formulas, and the separation-regime expansion.
//!
//! The three forms differ only by where the theta constant and the modular
//! transformation are absorbed:
//!
//! ```text
//! theorem1: -alpha2 s^3 - log(s)/2 + log(theta3(w)/theta3(0)) + chi
//! remark1:  -alpha2 s^3 - log(s)/2 + log theta3(w)             + chi1
//! remark3:  -alpha2* s^3 - log(s)/2 + log theta3(w/tau; -1/tau) + chi1*
//! ```
//!
//! with w = s^{3/2} Omega and alpha2* = i pi Omega^2 / tau + alpha2. They
//! agree identically through theta3(0)^4 = J0^2 (a-c)/pi^2 and the modular
//! relation theta3(z; tau) = e^{-i pi z^2/tau} (-i tau)^{-1/2}
//! theta3(z/tau; -1/tau); the constructor cross-checks this numerically and
//! treats disagreement as an error, not a warning.

use crate::error::{Error, Result};
use crate::geometry::{elliptic_data, EllipticData, GapConfig};
use crate::specfun::{log_theta3, theta, zeta_prime_minus1, ThetaContext};
use num_complex::Complex64;

/// The constant terms of all three expansion forms plus the classical
/// one-gap constants they are built from.
#[derive(Debug, Clone, Copy)]
pub struct AsymptoticConstants {
    pub chi: f64,
    pub chi1: f64,
    pub chi1_star: f64,
    pub alpha2_star: f64,
    pub c_sine: f64,
    pub chi_airy: f64,
    pub zeta_p: f64,
}

/// Which printed form of the expansion to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpansionForm {
    Theorem1,
    Remark1,
    Remark3,
}

impl ExpansionForm {
    pub const ALL: [ExpansionForm; 3] = [
        ExpansionForm::Theorem1,
        ExpansionForm::Remark1,
        ExpansionForm::Remark3,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ExpansionForm::Theorem1 => "theorem1",
            ExpansionForm::Remark1 => "remark1",
            ExpansionForm::Remark3 => "remark3",
        }
    }
}

impl std::str::FromStr for ExpansionForm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "theorem1" => Ok(ExpansionForm::Theorem1),
            "remark1" => Ok(ExpansionForm::Remark1),
            "remark3" => Ok(ExpansionForm::Remark3),
            other => Err(Error::InvalidArgument(format!(
                "unknown expansion form '{other}' (theorem1 | remark1 | remark3)"
            ))),
        }
    }
}

/// Per-term evaluation of one expansion form.
#[derive(Debug, Clone, Copy)]
pub struct AsymptoticBreakdown {
    pub cubic_term: f64,
    pub log_term: f64,
    /// w = s^{3/2} Omega, the theta phase.
    pub theta_phase: f64,
    pub theta_term: f64,
    pub constant_term: f64,
    pub total: f64,
    pub form: ExpansionForm,
}

/// c_sine = (1/12) log 2 + 3 zeta'(-1), the Widom-Dyson constant.
pub fn widom_dyson_constant() -> f64 {
    2f64.ln() / 12.0 + 3.0 * zeta_prime_minus1()
}

/// chi_Airy = (1/24) log 2 + zeta'(-1), the Tracy-Widom constant.
pub fn tracy_widom_constant() -> f64 {
    2f64.ln() / 24.0 + zeta_prime_minus1()
}

/// Assemble the constant terms for a configuration; fails if the forms do
/// not reproduce each other through the theta-constant identity.
pub fn constants(cfg: &GapConfig, ed: &EllipticData) -> Result<AsymptoticConstants> {
    let (a, c) = (cfg.a(), cfg.c());
    let zeta_p = zeta_prime_minus1();
    let c_sine = widom_dyson_constant();
    let chi_airy = tracy_widom_constant();
    let qa = ed.q(a);
    let qb = ed.q(cfg.b());
    let qc = ed.q(c);
    let qqq = (qa * qb * qc).abs();
    let j0 = ed.cycles.j0;
    let i0_abs = ed.cycles.i0.abs();

    let chi = 0.25 * (a - c).ln() - 0.125 * (2.0 * qqq).ln() + c_sine + chi_airy;
    let chi1 = -0.5 * (j0.abs() / std::f64::consts::PI).ln() - 0.125 * qqq.ln() + 4.0 * zeta_p;
    let chi1_star = -0.5 * (i0_abs / std::f64::consts::PI).ln() - 0.125 * qqq.ln() + 4.0 * zeta_p;

    // alpha2* = i pi Omega^2 / tau + alpha2 is real for purely imaginary tau
    let shift = Complex64::i() * std::f64::consts::PI * ed.omega * ed.omega / ed.tau;
    if shift.im.abs() > 1e-12 * shift.re.abs().max(1.0) {
        return Err(Error::InternalConsistency(format!(
            "alpha2* acquired an imaginary part {:.3e}",
            shift.im
        )));
    }
    let alpha2_star = shift.re + ed.alpha2;

    // cross-form consistency: chi - chi1 = log theta3(0), which encodes
    // theta3(0)^4 = J0^2 (a - c) / pi^2
    let ctx = ThetaContext::new(ed.tau)?;
    let t30 = theta(3, Complex64::new(0.0, 0.0), &ctx)?.re;
    let residual = (chi - chi1 - t30.ln()).abs();
    if residual > 1e-12 {
        return Err(Error::InternalConsistency(format!(
            "constant terms disagree across forms by {residual:.3e}"
        )));
    }

    Ok(AsymptoticConstants {
        chi,
        chi1,
        chi1_star,
        alpha2_star,
        c_sine,
        chi_airy,
        zeta_p,
    })
}

/// Per-term breakdown of the chosen expansion form at the configuration's
/// scale s.
pub fn two_gap_asym(
    cfg: &GapConfig,
    ed: &EllipticData,
    form: ExpansionForm,
) -> Result<AsymptoticBreakdown> {
    let consts = constants(cfg, ed)?;
    let s = cfg.s();
    let w = s.powf(1.5) * ed.omega;
    let log_term = -0.5 * s.ln();
    let ctx = ThetaContext::new(ed.tau)?;
    let zero = Complex64::new(0.0, 0.0);

    let (cubic_term, theta_term, constant_term) = match form {
        ExpansionForm::Theorem1 => {
            let t3w = theta(3, Complex64::new(w, 0.0), &ctx)?.re;
            let t30 = theta(3, zero, &ctx)?.re;
            (-ed.alpha2 * s.powi(3), (t3w / t30).ln(), consts.chi)
        }
        ExpansionForm::Remark1 => {
            let t3w = theta(3, Complex64::new(w, 0.0), &ctx)?.re;
            (-ed.alpha2 * s.powi(3), t3w.ln(), consts.chi1)
        }
        ExpansionForm::Remark3 => {
            // theta3(w/tau; -1/tau): the argument is large and imaginary, so
            // the log is taken with the reduction prefactor kept in log space
            let tau_dual = -Complex64::new(1.0, 0.0) / ed.tau;
            let ctx_dual = ThetaContext::new(tau_dual)?;
            let z = Complex64::new(w, 0.0) / ed.tau;
            let lt = log_theta3(z, &ctx_dual)?;
            if lt.im.abs() > 1e-9 {
                return Err(Error::InternalConsistency(format!(
                    "log theta3 in the dual form has imaginary part {:.3e}",
                    lt.im
                )));
            }
            (-consts.alpha2_star * s.powi(3), lt.re, consts.chi1_star)
        }
    };
    Ok(AsymptoticBreakdown {
        cubic_term,
        log_term,
        theta_phase: w,
        theta_term,
        constant_term,
        total: cubic_term + log_term + theta_term + constant_term,
        form,
    })
}

/// Tracy-Widom one-gap expansion -s^3/12 - (1/8) log s + chi_Airy.
pub fn tw_asym(s: f64) -> f64 {
    -s.powi(3) / 12.0 - s.ln() / 8.0 + tracy_widom_constant()
}

/// Sine-kernel one-gap expansion -t^2/2 - (1/4) log t + c_sine.
pub fn sine_asym(t: f64) -> f64 {
    -t * t / 2.0 - t.ln() / 4.0 + widom_dyson_constant()
}

/// The differential-identity antiderivative D and its separation-regime
/// expansion, evaluated in the regime a = -t1/s, b = c + 2 t0 / s^{3/2}.
#[derive(Debug, Clone, Copy)]
pub struct SeparationD {
    /// D(a, b) = -alpha2 s^3 + log theta3(s^{3/2} Omega; tau)
    ///           - log|J0|/2 - log|q(a) q(b) q(c)|/8, evaluated exactly.
    pub exact: f64,
    /// The closed expansion of D in the separation regime.
    pub expansion: f64,
    pub difference: f64,
}

/// Evaluate D(alpha, beta) both ways in the separation regime.
pub fn separation_d(c: f64, s: f64, t0: f64, t1: f64) -> Result<SeparationD> {
    if !(t0 > 0.0 && t1 > 0.0 && s > 0.0) {
        return Err(Error::InvalidArgument(
            "separation regime needs s, t0, t1 > 0".into(),
        ));
    }
    let a = -t1 / s;
    let b = c + 2.0 * t0 / s.powf(1.5);
    if !(b < a) {
        return Err(Error::InvalidArgument(format!(
            "separation regime violated: b = {b} must stay below a = {a}; increase s"
        )));
    }
    let cfg = GapConfig::new(a, b, c, s)?;
    let ed = elliptic_data(&cfg)?;
    let qqq = (ed.q(a) * ed.q(b) * ed.q(c)).abs();
    let w = s.powf(1.5) * ed.omega;
    let ctx = ThetaContext::new(ed.tau)?;
    let t3w = theta(3, Complex64::new(w, 0.0), &ctx)?.re;
    let exact =
        -ed.alpha2 * s.powi(3) + t3w.ln() - 0.5 * ed.cycles.j0.abs().ln() - 0.125 * qqq.ln();
    let expansion = -c.abs() * t0 * t0 / 2.0
        - 0.25 * (c.abs().sqrt() * t0).ln()
        - t1.powi(3) / 12.0
        - 0.125 * t1.ln()
        + 0.5 * s.ln()
        + 0.125 * 2f64.ln()
        - 0.5 * std::f64::consts::PI.ln();
    Ok(SeparationD {
        exact,
        expansion,
        difference: exact - expansion,
    })
}
