//! Numerical certification of the closed forms.
//!
//! Every check here works from class members (Schwarz function plus
//! parameters) and never from the closed-form expressions it certifies,
//! except to read off the value being compared against.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

use crate::class_params::{
    ClassParams, NamedClass, DEFAULT_ALPHA, DEFAULT_BETA, DEFAULT_LAMBDA, DEFAULT_M,
};
use crate::closed_forms::{
    distortion, koebe_radius, p_disk, radius_of_starlikeness, re_lower_bound, st_disk, Disk,
};
use crate::error::{Error, Result};
use crate::function_rep::{eval_extremal, ClassMember, QuadratureConfig, SchwarzSampler};

/// Largest radius probed by the radius oracles.
pub const TOP_RADIUS: f64 = 1.0 - 1e-6;

/// Agreement required between a numeric radius and the closed form.
pub const RADIUS_TOL: f64 = 1e-6;

/// Agreement required between the extremal real part and the lower bound.
pub const ATTAINMENT_TOL: f64 = 1e-9;

/// Agreement required between the extremal modulus maximum and the upper bound.
pub const SHARPNESS_TOL: f64 = 1e-6;

/// Relative agreement between the integral representation and the extremal function.
pub const REPRESENTATION_TOL: f64 = 1e-9;

/// Error allowed at `r = 1 - 10^-6` in the Koebe limit.
pub const KOEBE_LIMIT_TOL: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanConfig {
    /// Points on each circle `|z| = r`.
    pub angle_count: usize,
    /// Termination width for golden-section and bisection searches.
    pub bisect_tol: f64,
    /// Random members drawn in addition to the identity member.
    pub sample_count: usize,
    pub seed: u64,
    /// Allowed excess in containment checks.
    pub slack: f64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            angle_count: 2048,
            bisect_tol: 1e-9,
            sample_count: 200,
            seed: 0,
            slack: 1e-9,
        }
    }
}

impl ScanConfig {
    pub fn validate(&self) -> Result<()> {
        if self.angle_count < 8 {
            return Err(Error::OutOfRange(format!(
                "angle_count {} must be at least 8",
                self.angle_count
            )));
        }
        if !(self.bisect_tol > 0.0) {
            return Err(Error::OutOfRange("bisect_tol must be > 0".into()));
        }
        if !(self.slack >= 0.0) {
            return Err(Error::OutOfRange("slack must be >= 0".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

/// Outcome of one certification check.
///
/// For agreement checks `abs_err = |closed_form - numeric|`. For containment
/// checks `closed_form` is the bound, `numeric` the extreme observed value and
/// `abs_err` the amount by which the bound is exceeded (0 when contained).
/// Either way `verdict` is `pass` exactly when `abs_err <= tolerance`, unless
/// the note records an additional failed condition.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    pub quantity: String,
    pub closed_form: f64,
    pub numeric: f64,
    pub abs_err: f64,
    pub tolerance: f64,
    pub samples: usize,
    pub verdict: Verdict,
    pub note: String,
}

impl OracleReport {
    fn agreement(
        quantity: &str,
        closed_form: f64,
        numeric: f64,
        tolerance: f64,
        samples: usize,
        note: String,
    ) -> Self {
        let abs_err = (closed_form - numeric).abs();
        Self {
            quantity: quantity.to_owned(),
            closed_form,
            numeric,
            abs_err,
            tolerance,
            samples,
            verdict: Verdict::from_bool(abs_err <= tolerance),
            note,
        }
    }

    fn containment(
        quantity: &str,
        bound: f64,
        observed: f64,
        excess: f64,
        tolerance: f64,
        samples: usize,
        note: String,
    ) -> Self {
        Self {
            quantity: quantity.to_owned(),
            closed_form: bound,
            numeric: observed,
            abs_err: excess,
            tolerance,
            samples,
            verdict: Verdict::from_bool(excess <= tolerance),
            note,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section search for a minimum of a unimodal `f` on `[lo, hi]`.
pub fn golden_min<F: FnMut(f64) -> f64>(
    mut f: F,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
) -> (f64, f64) {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > tol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

fn angle(k: usize, n: usize) -> f64 {
    TAU * k as f64 / n as f64
}

/// Minimum of `g(θ)` over `[0, 2π)`: grid scan, then golden-section search
/// between the neighbours of the best grid point.
fn circle_min<F>(mut g: F, n: usize, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut best = (0, f64::INFINITY);
    for k in 0..n {
        let v = g(angle(k, n))?;
        if v < best.1 {
            best = (k, v);
        }
    }
    let center = angle(best.0, n);
    let step = TAU / n as f64;
    let mut failure = None;
    let (_, refined) = golden_min(
        |t| match g(t) {
            Ok(v) => v,
            Err(e) => {
                failure = Some(e);
                f64::INFINITY
            }
        },
        center - step,
        center + step,
        tol,
    );
    match failure {
        Some(e) => Err(e),
        None => Ok(refined.min(best.1)),
    }
}

/// `min Re z f'(z)/f(z)` over `|z| = r` for a given member.
pub fn min_re_logderiv(member: &ClassMember, r: f64, cfg: &ScanConfig) -> Result<f64> {
    circle_min(
        |t| Ok(member.logderiv(Complex64::from_polar(r, t))?.re),
        cfg.angle_count,
        cfg.bisect_tol,
    )
}

fn check_open_radius(r: f64) -> Result<()> {
    if r > 0.0 && r < 1.0 {
        Ok(())
    } else {
        Err(Error::OutOfRange(format!("r = {r} must lie in (0, 1)")))
    }
}

/// `min Re z f'/f` on `|z| = r` for the member generated by `ω(z) = z`.
pub fn min_re_logderiv_extremal(params: &ClassParams, r: f64, cfg: &ScanConfig) -> Result<f64> {
    cfg.validate()?;
    check_open_radius(r)?;
    min_re_logderiv(&ClassMember::identity(*params), r, cfg)
}

/// First radius at which `min Re z f'/f` on the circle reaches zero, searched
/// on `(0, limit]`. `Re z f'/f` is harmonic, so the circle minimum is
/// nonincreasing in `r` and the sign change is unique.
fn loss_radius(member: &ClassMember, limit: f64, cfg: &ScanConfig) -> Result<Option<f64>> {
    if min_re_logderiv(member, limit, cfg)? > 0.0 {
        return Ok(None);
    }
    let (mut lo, mut hi) = (0.0, limit);
    while hi - lo > cfg.bisect_tol {
        let mid = 0.5 * (lo + hi);
        if min_re_logderiv(member, mid, cfg)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Some(0.5 * (lo + hi)))
}

/// Radius of starlikeness estimated by bisection on the extremal member.
pub fn estimate_radius_numeric(params: &ClassParams, cfg: &ScanConfig) -> Result<f64> {
    cfg.validate()?;
    Ok(loss_radius(&ClassMember::identity(*params), TOP_RADIUS, cfg)?.unwrap_or(1.0))
}

fn sampled_members<'a>(
    params: &'a ClassParams,
    cfg: &ScanConfig,
) -> impl Iterator<Item = ClassMember> + 'a {
    let sampler = SchwarzSampler::new(cfg.seed);
    std::iter::once(ClassMember::identity(*params)).chain(
        (0..cfg.sample_count as u64).map(move |i| ClassMember::new(*params, sampler.sample(i))),
    )
}

/// Smallest positivity-loss radius over the identity member and
/// `cfg.sample_count` random members.
pub fn estimate_radius_sampled(params: &ClassParams, cfg: &ScanConfig) -> Result<f64> {
    let mut best = estimate_radius_numeric(params, cfg)?;
    for member in sampled_members(params, cfg).skip(1) {
        if let Some(r) = loss_radius(&member, best.min(TOP_RADIUS), cfg)? {
            best = best.min(r);
        }
    }
    Ok(best)
}

/// Maximum distance from `disk.center` over members × angles on `|z| = r`.
fn farthest_from<F>(
    params: &ClassParams,
    r: f64,
    cfg: &ScanConfig,
    disk: &Disk,
    mut value: F,
) -> Result<(f64, usize)>
where
    F: FnMut(&ClassMember, Complex64) -> Result<Complex64>,
{
    let mut farthest = 0.0f64;
    let mut members = 0;
    for member in sampled_members(params, cfg) {
        for k in 0..cfg.angle_count {
            let z = Complex64::from_polar(r, angle(k, cfg.angle_count));
            farthest = farthest.max(disk.distance_to_center(value(&member, z)?));
        }
        members += 1;
    }
    Ok((farthest, members))
}

/// Checks that `z f'/f` of every sampled member lies in `disk` on `|z| = r`.
///
/// Normally `disk` is [`st_disk`]; other disks can be passed to confirm that
/// a wrong center is detected.
pub fn check_logderiv_containment(
    params: &ClassParams,
    r: f64,
    cfg: &ScanConfig,
    disk: Disk,
) -> Result<OracleReport> {
    cfg.validate()?;
    check_open_radius(r)?;
    let (farthest, members) = farthest_from(params, r, cfg, &disk, |m, z| m.logderiv(z))?;
    Ok(OracleReport::containment(
        "logderiv_disk_containment",
        disk.radius,
        farthest,
        (farthest - disk.radius).max(0.0),
        cfg.slack,
        members * cfg.angle_count,
        format!("r={r}, center={}{:+}i", disk.center.re, disk.center.im),
    ))
}

/// [`check_logderiv_containment`] against the closed-form disk.
pub fn check_disk_containment(
    params: &ClassParams,
    r: f64,
    cfg: &ScanConfig,
) -> Result<OracleReport> {
    check_open_radius(r)?;
    check_logderiv_containment(params, r, cfg, st_disk(params, r)?)
}

/// Checks that `p(z)` of every sampled member lies in [`p_disk`] on `|z| = r`.
pub fn check_p_disk_containment(
    params: &ClassParams,
    r: f64,
    cfg: &ScanConfig,
) -> Result<OracleReport> {
    cfg.validate()?;
    check_open_radius(r)?;
    let disk = p_disk(params, r)?;
    let (farthest, members) = farthest_from(params, r, cfg, &disk, |m, z| m.p(z))?;
    Ok(OracleReport::containment(
        "p_disk_containment",
        disk.radius,
        farthest,
        (farthest - disk.radius).max(0.0),
        cfg.slack,
        members * cfg.angle_count,
        format!("r={r}"),
    ))
}

/// Extreme values of `|f(z)|` over sampled members × angles on `|z| = r`.
pub fn modulus_range(
    params: &ClassParams,
    r: f64,
    cfg: &ScanConfig,
    quad: &QuadratureConfig,
) -> Result<(f64, f64)> {
    let mut range = (f64::INFINITY, 0.0f64);
    for member in sampled_members(params, cfg) {
        for k in 0..cfg.angle_count {
            let modulus = member
                .f(Complex64::from_polar(r, angle(k, cfg.angle_count)), quad)?
                .norm();
            range = (range.0.min(modulus), range.1.max(modulus));
        }
    }
    Ok(range)
}

/// Whether the upper and lower growth bounds hold for every member.
///
/// `Re(b (p - 1))` ranges over `Re(b) c ± |b| ρ` where `c` is the real center
/// of the disk of `p - 1`, whose sign is that of `-B`. The upper bound needs
/// `Re(b) c <= |b| c`, true when `B <= 0`; the lower bound needs
/// `Re(b) c >= -|b| c`, true when `B >= 0`. A positive real `b` satisfies both.
pub fn certified_sides(params: &ClassParams) -> (bool, bool) {
    let real = params.has_positive_real_order();
    (real || params.b() <= 0.0, real || params.b() >= 0.0)
}

/// Checks the growth bounds against sampled members on `|z| = r`, and for
/// positive real `b` that the extremal function attains the upper bound.
pub fn distortion_envelope(
    params: &ClassParams,
    r: f64,
    cfg: &ScanConfig,
    quad: &QuadratureConfig,
) -> Result<OracleReport> {
    cfg.validate()?;
    check_open_radius(r)?;
    let bounds = distortion(params, r)?;
    let (min, max) = modulus_range(params, r, cfg, quad)?;
    let (upper_ok, lower_ok) = certified_sides(params);
    let over = (max - bounds.upper).max(0.0);
    let under = (bounds.lower - min).max(0.0);

    let mut excess = 0.0f64;
    let mut notes = vec![format!(
        "r={r}, lower={}, min|f|={min}, upper={}, max|f|={max}",
        bounds.lower, bounds.upper
    )];
    for (certified, side, amount) in [(upper_ok, "upper", over), (lower_ok, "lower", under)] {
        if certified {
            excess = excess.max(amount);
        } else {
            notes.push(format!(
                "{side} bound not certified for this b (observed excess {amount:e})"
            ));
        }
    }

    let mut sharp = true;
    if params.has_positive_real_order() {
        let peak = -circle_min(
            |t| Ok(-eval_extremal(params, Complex64::from_polar(r, t))?.norm()),
            cfg.angle_count,
            cfg.bisect_tol,
        )?;
        let gap = (peak - bounds.upper).abs();
        sharp = gap <= SHARPNESS_TOL * bounds.upper.max(1.0);
        notes.push(format!("extremal max|f*|={peak} (gap {gap:e})"));
    }
    let mut report = OracleReport::containment(
        "distortion_envelope",
        bounds.upper,
        max,
        excess,
        cfg.slack,
        (cfg.sample_count + 1) * cfg.angle_count,
        notes.join("; "),
    );
    if !sharp {
        report.verdict = Verdict::Fail;
    }
    Ok(report)
}

/// Lower growth bound at `r = 1 - 10^-k`, `k = 2..=6`, against the Koebe radius.
pub fn koebe_limit_numeric(params: &ClassParams) -> OracleReport {
    let radius = koebe_radius(params);
    let values: Vec<f64> = (2..=6)
        .map(|k| {
            let r = 1.0 - 10f64.powi(-k);
            distortion(params, r).expect("r in [0, 1)").lower
        })
        .collect();
    let errors: Vec<f64> = values.iter().map(|v| (v - radius).abs()).collect();
    let monotone = errors.windows(2).all(|w| w[1] <= w[0]);
    let numeric = values[values.len() - 1];
    let mut report = OracleReport::agreement(
        "koebe_limit",
        radius,
        numeric,
        KOEBE_LIMIT_TOL,
        values.len(),
        format!("errors k=2..6: {errors:?}; monotone={monotone}"),
    );
    if !monotone {
        report.verdict = Verdict::Fail;
    }
    report
}

pub fn check_radius_agreement(params: &ClassParams, cfg: &ScanConfig) -> Result<OracleReport> {
    let closed = radius_of_starlikeness(params);
    let numeric = estimate_radius_numeric(params, cfg)?;
    Ok(OracleReport::agreement(
        "radius_of_starlikeness",
        closed.effective,
        numeric,
        cfg.bisect_tol.max(RADIUS_TOL),
        1,
        format!("raw={}, boundary_free={}", closed.raw, closed.boundary_free),
    ))
}

/// Sampled-class radius: agrees with the closed form and never falls below
/// the identity-member estimate.
pub fn check_sampled_radius(params: &ClassParams, cfg: &ScanConfig) -> Result<OracleReport> {
    let closed = radius_of_starlikeness(params).effective;
    let identity = estimate_radius_numeric(params, cfg)?;
    let sampled = estimate_radius_sampled(params, cfg)?;
    let one_sided = sampled >= identity - cfg.bisect_tol;
    let mut report = OracleReport::agreement(
        "radius_sampled",
        closed,
        sampled,
        cfg.bisect_tol.max(RADIUS_TOL),
        cfg.sample_count + 1,
        format!("identity estimate {identity}; one-sided={one_sided}"),
    );
    if !one_sided {
        report.verdict = Verdict::Fail;
    }
    Ok(report)
}

/// The identity member attains the real-part lower bound on `|z| = r`.
pub fn check_attainment(params: &ClassParams, r: f64, cfg: &ScanConfig) -> Result<OracleReport> {
    let numeric = min_re_logderiv_extremal(params, r, cfg)?;
    Ok(OracleReport::agreement(
        "re_lower_bound_attainment",
        re_lower_bound(params, r)?,
        numeric,
        ATTAINMENT_TOL,
        cfg.angle_count,
        format!("r={r}"),
    ))
}

/// Integral representation of the identity member against the closed-form
/// extremal function, relative error on a polar grid with `|z| <= 0.9`.
pub fn check_representation(params: &ClassParams, quad: &QuadratureConfig) -> Result<OracleReport> {
    const ANGLES: usize = 16;
    let member = ClassMember::identity(*params);
    let mut worst = 0.0f64;
    let mut count = 0;
    for r in [0.3, 0.6, 0.9] {
        for k in 0..ANGLES {
            let z = Complex64::from_polar(r, angle(k, ANGLES));
            let exact = eval_extremal(params, z)?;
            let diff = (member.f(z, quad)? - exact).norm() / exact.norm().max(1.0);
            worst = worst.max(diff);
            count += 1;
        }
    }
    Ok(OracleReport::agreement(
        "integral_representation",
        0.0,
        worst,
        REPRESENTATION_TOL,
        count,
        "max |f_integral - f*| / max(1, |f*|)".into(),
    ))
}

/// A published special-case formula evaluated next to the general formula
/// it is meant to specialize.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubcaseCheck {
    pub label: String,
    pub published: f64,
    pub general: f64,
    pub agrees: bool,
}

impl SubcaseCheck {
    fn new(label: String, published: f64, general: f64) -> Self {
        Self {
            agrees: (published - general).abs() <= 1e-9 * general.abs().max(1.0),
            label,
            published,
            general,
        }
    }

    pub fn note(&self) -> String {
        format!(
            "{}: special-case expression gives {:.9}, general formula gives {:.9}{}",
            self.label,
            self.published,
            self.general,
            if self.agrees {
                ""
            } else {
                " (discrepancy; general formula used)"
            }
        )
    }
}

/// Special-case radius and Koebe expressions, evaluated at the default
/// subclass parameters and compared with the general formulas.
pub fn subcase_checks() -> Vec<SubcaseCheck> {
    let (alpha, beta, lambda, m) = (DEFAULT_ALPHA, DEFAULT_BETA, DEFAULT_LAMBDA, DEFAULT_M);
    let order = crate::class_params::DEFAULT_ORDER;
    let spiral = Complex64::from_polar((1.0 - alpha) * lambda.cos(), -lambda);
    let raw = |a: f64, b: f64, order: Complex64| {
        radius_of_starlikeness(&ClassParams::new(a, b, order).expect("valid")).raw
    };
    let inv_m = 1.0 / m;
    let one = Complex64::new(1.0, 0.0);

    vec![
        SubcaseCheck::new(
            format!("radius, A=beta, B=-beta, b=(1-alpha)e^(-i lambda)cos(lambda) [beta={beta}, alpha={alpha}, lambda={lambda:.6}]"),
            1.0 / (beta * ((1.0 - alpha) * lambda.cos() + (1.0 - (1.0 - alpha * alpha) * lambda.cos()).sqrt())),
            raw(beta, -beta, spiral),
        ),
        SubcaseCheck::new(
            format!("radius, A=1-2beta, B=-1, general b [beta={beta}, b={}{:+}i]", order.re, order.im),
            1.0 / ((1.0 - beta) * order.norm()
                + (1.0 + 2.0 * (1.0 - beta) * order.re + order.norm_sqr() * beta * beta).sqrt()),
            raw(1.0 - 2.0 * beta, -1.0, order),
        ),
        SubcaseCheck::new(
            format!("radius, A=1-2beta, B=-1, b=1 (starlike of order beta) [beta={beta}]"),
            1.0 / ((1.0 - beta) + (beta * beta - 2.0 * beta + 3.0).sqrt()),
            raw(1.0 - 2.0 * beta, -1.0, one),
        ),
        SubcaseCheck::new(
            format!("radius, A=1, B=1/M-1, general b [M={m}, b={}{:+}i]", order.re, order.im),
            1.0 / (order.norm() * (2.0 - inv_m)
                + (order.norm_sqr() * (2.0 - inv_m).powi(2) + 4.0 * inv_m * (inv_m - 1.0) * order.re + 1.0).sqrt()),
            raw(1.0, inv_m - 1.0, order),
        ),
        SubcaseCheck::new(
            format!("radius, A=1, B=1/M-1, b=1 [M={m}]"),
            1.0 / ((2.0 - inv_m).powi(2) + (5.0 * inv_m * inv_m - 4.0 * inv_m + 1.0).sqrt()),
            raw(1.0, inv_m - 1.0, one),
        ),
        SubcaseCheck::new(
            format!("Koebe radius, A=beta, B=-beta [beta={beta}, b={}{:+}i]", order.re, order.im),
            1.0 / (1.0 - beta).powf(2.0 * order.norm() * beta),
            koebe_radius(&NamedClass::St8 { beta, order }.resolve().expect("valid")),
        ),
    ]
}
