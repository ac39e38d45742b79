//! Concrete members of `S*(A, B, b)` built from Schwarz functions.
//!
//! A member is fixed by a Schwarz function `ω`; from it
//! `p = (1 + A ω)/(1 + B ω)`, `z f'/f = 1 + b (p - 1)` and
//! `f(z) = z exp(∫₀¹ b (p(zt) - 1)/t dt)`.
//!
//! The class `P` of functions with positive real part (`p(z) = 1 + Σ cₙ zⁿ`)
//! is the `A = 1, B = -1` case of the Janowski family and needs no separate
//! representation here.

use std::f64::consts::TAU;
use std::sync::OnceLock;

use gauss_quad::GaussLegendre;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::class_params::ClassParams;
use crate::error::{Error, Result};

/// Largest modulus accepted for evaluation points.
pub const MAX_MODULUS: f64 = 1.0 - 1e-9;

fn check_point(z: Complex64) -> Result<()> {
    let m = z.norm();
    if m <= MAX_MODULUS {
        Ok(())
    } else {
        Err(Error::OutOfDomain(m))
    }
}

/// `ω(z) = s e^{iθ} z ∏ (a_k - z)/(1 - conj(a_k) z)` with `0 <= s <= 1` and
/// `|a_k| < 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SchwarzSpec {
    rotation: f64,
    contraction: f64,
    zeros: Vec<Complex64>,
}

impl SchwarzSpec {
    pub fn new(rotation: f64, zeros: Vec<Complex64>) -> Result<Self> {
        Self::with_contraction(rotation, 1.0, zeros)
    }

    pub fn with_contraction(
        rotation: f64,
        contraction: f64,
        zeros: Vec<Complex64>,
    ) -> Result<Self> {
        if !rotation.is_finite() {
            return Err(Error::OutOfRange("rotation must be finite".into()));
        }
        if !(0.0..=1.0).contains(&contraction) {
            return Err(Error::OutOfRange(format!(
                "contraction {contraction} must lie in [0, 1]"
            )));
        }
        if let Some(a) = zeros.iter().find(|a| !(a.norm() < 1.0)) {
            return Err(Error::OutOfRange(format!(
                "Blaschke zero {a} must lie in the open unit disk"
            )));
        }
        Ok(Self {
            rotation,
            contraction,
            zeros,
        })
    }

    /// `ω(z) = z`.
    pub fn identity() -> Self {
        Self {
            rotation: 0.0,
            contraction: 1.0,
            zeros: Vec::new(),
        }
    }

    /// `ω(z) = c z` for `|c| <= 1`.
    pub fn linear(c: Complex64) -> Result<Self> {
        Self::with_contraction(c.arg(), c.norm(), Vec::new())
    }

    pub fn rotation(&self) -> f64 {
        self.rotation
    }

    pub fn zeros(&self) -> &[Complex64] {
        &self.zeros
    }

    /// `ω(z)/z`, analytic on the disk, equal to `ω'(0)` at the origin.
    fn quotient(&self, z: Complex64) -> Complex64 {
        let lead = Complex64::from_polar(self.contraction, self.rotation);
        self.zeros
            .iter()
            .fold(lead, |acc, &a| acc * (a - z) / (1.0 - a.conj() * z))
    }

    pub fn derivative_at_origin(&self) -> Complex64 {
        self.quotient(Complex64::new(0.0, 0.0))
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        check_point(z)?;
        Ok(z * self.quotient(z))
    }
}

/// Deterministic source of Schwarz functions: rotation uniform on `[0, 2π)`,
/// zero to three Blaschke factors with zeros uniform in `|a| < 0.95`.
///
/// Sample `i` depends only on `(seed, i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SchwarzSampler {
    seed: u64,
}

pub const SAMPLER_MAX_FACTORS: usize = 3;
pub const SAMPLER_ZERO_RADIUS: f64 = 0.95;

impl SchwarzSampler {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    pub fn sample(&self, index: u64) -> SchwarzSpec {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        let rotation = rng.random::<f64>() * TAU;
        let count = rng.random_range(0..=SAMPLER_MAX_FACTORS);
        let zeros = (0..count)
            .map(|_| {
                let radius = SAMPLER_ZERO_RADIUS * rng.random::<f64>().sqrt();
                Complex64::from_polar(radius, rng.random::<f64>() * TAU)
            })
            .collect();
        SchwarzSpec {
            rotation,
            contraction: 1.0,
            zeros,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    /// Convergence threshold on successive estimates of the exponent integral.
    pub tol: f64,
    /// Largest Gauss-Legendre rule tried; rules double from 32.
    pub max_nodes: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_nodes: 1024,
        }
    }
}

const MIN_NODES: usize = 32;
const RULE_LEVELS: usize = 8;

/// Gauss-Legendre rule with `32 * 2^level` nodes mapped to `[0, 1]`.
fn unit_rule(level: usize) -> &'static [(f64, f64)] {
    static RULES: [OnceLock<Vec<(f64, f64)>>; RULE_LEVELS] =
        [const { OnceLock::new() }; RULE_LEVELS];
    RULES[level].get_or_init(|| {
        let rule = GaussLegendre::new(MIN_NODES << level).expect("degree >= 2");
        rule.as_node_weight_pairs()
            .iter()
            .map(|&(x, w)| (0.5 * (x + 1.0), 0.5 * w))
            .collect()
    })
}

/// Integrates a complex function over `[0, 1]`, doubling the rule until two
/// successive estimates agree to `cfg.tol`.
pub fn integrate_unit<F>(cfg: &QuadratureConfig, mut integrand: F) -> Result<Complex64>
where
    F: FnMut(f64) -> Complex64,
{
    if !(cfg.tol > 0.0) {
        return Err(Error::OutOfRange(format!(
            "quadrature tol {} must be > 0",
            cfg.tol
        )));
    }
    let max_level = (0..RULE_LEVELS)
        .take_while(|&l| MIN_NODES << l <= cfg.max_nodes)
        .last()
        .ok_or_else(|| {
            Error::OutOfRange(format!(
                "max_nodes {} must be at least {MIN_NODES}",
                cfg.max_nodes
            ))
        })?;

    let mut apply = |level: usize| -> Complex64 {
        unit_rule(level)
            .iter()
            .map(|&(t, w)| integrand(t) * w)
            .sum()
    };
    let mut previous = apply(0);
    let mut last_change = f64::INFINITY;
    for level in 1..=max_level {
        let current = apply(level);
        last_change = (current - previous).norm();
        if last_change < cfg.tol {
            return Ok(current);
        }
        previous = current;
    }
    Err(Error::QuadratureFailure {
        tol: cfg.tol,
        max_nodes: MIN_NODES << max_level,
        last_change,
    })
}

/// A member of `S*(A, B, b)` generated by a Schwarz function.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassMember {
    pub params: ClassParams,
    pub schwarz: SchwarzSpec,
}

impl ClassMember {
    pub fn new(params: ClassParams, schwarz: SchwarzSpec) -> Self {
        Self { params, schwarz }
    }

    /// The member generated by `ω(z) = z`, whose `f` is the extremal function.
    pub fn identity(params: ClassParams) -> Self {
        Self::new(params, SchwarzSpec::identity())
    }

    /// `p(z) - 1 = (A - B) ω / (1 + B ω)`, computed without cancellation near 0.
    fn p_offset(&self, omega: Complex64) -> Complex64 {
        omega * self.params.spread() / (1.0 + omega * self.params.b())
    }

    pub fn p(&self, z: Complex64) -> Result<Complex64> {
        let omega = self.schwarz.eval(z)?;
        Ok((1.0 + omega * self.params.a()) / (1.0 + omega * self.params.b()))
    }

    /// `z f'(z)/f(z) = 1 + b (p(z) - 1)`.
    pub fn logderiv(&self, z: Complex64) -> Result<Complex64> {
        let omega = self.schwarz.eval(z)?;
        Ok(1.0 + self.params.order() * self.p_offset(omega))
    }

    /// `f(z) = z exp(∫₀¹ b (p(zt) - 1)/t dt)` by adaptive Gauss-Legendre.
    pub fn f(&self, z: Complex64, quad: &QuadratureConfig) -> Result<Complex64> {
        check_point(z)?;
        if z == Complex64::new(0.0, 0.0) {
            return Ok(z);
        }
        // (p(zt) - 1)/t = (A - B) z q(zt) / (1 + B zt q(zt)) with q = ω/z,
        // which is regular at t = 0.
        let (spread, b_lo, order) = (self.params.spread(), self.params.b(), self.params.order());
        let exponent = integrate_unit(quad, |t| {
            let zt = z * t;
            let q = self.schwarz.quotient(zt);
            order * spread * z * q / (1.0 + b_lo * zt * q)
        })?;
        Ok(z * exponent.exp())
    }
}

/// `f*(z) = z (1 + B z)^{b (A - B)/B}`, or `z e^{b A z}` when `B = 0`, on the
/// principal branch of `log(1 + B z)`.
pub fn eval_extremal(params: &ClassParams, z: Complex64) -> Result<Complex64> {
    check_point(z)?;
    let (a, b, order) = (params.a(), params.b(), params.order());
    let exponent = if b == 0.0 {
        order * a * z
    } else {
        order * (params.spread() / b) * (1.0 + z * b).ln()
    };
    Ok(z * exponent.exp())
}
