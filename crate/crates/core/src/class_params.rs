//! The parameter triple `(A, B, b)` and the named subclasses it specializes to.

use std::f64::consts::FRAC_PI_2;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Validated parameters of `S*(A, B, b)`.
///
/// `a` and `b` are the Janowski bounds `A` and `B` with `-1 < A <= 1` and
/// `-1 <= B < A`; `order` is the nonzero complex order `b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassParams {
    a: f64,
    b: f64,
    order: Complex64,
}

impl ClassParams {
    pub fn new(a: f64, b: f64, order: Complex64) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() || !order.re.is_finite() || !order.im.is_finite() {
            return Err(Error::OutOfRange("parameters must be finite".into()));
        }
        if !(a > -1.0 && a <= 1.0) {
            return Err(Error::OutOfRange(format!("A = {a} must lie in (-1, 1]")));
        }
        if !(b >= -1.0 && b < a) {
            return Err(Error::OutOfRange(format!(
                "B = {b} must lie in [-1, A) with A = {a}"
            )));
        }
        if order == Complex64::new(0.0, 0.0) {
            return Err(Error::OutOfRange("b must be nonzero".into()));
        }
        Ok(Self { a, b, order })
    }

    /// Shorthand for a real order `b`.
    pub fn real(a: f64, b: f64, order: f64) -> Result<Self> {
        Self::new(a, b, Complex64::new(order, 0.0))
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn order(&self) -> Complex64 {
        self.order
    }

    /// `A - B`, always positive.
    pub fn spread(&self) -> f64 {
        self.a - self.b
    }

    /// `|b| (A - B)`, the radius coefficient of the logarithmic-derivative disk.
    pub fn scaled_spread(&self) -> f64 {
        self.order.norm() * self.spread()
    }

    /// True when the order is a positive real number.
    pub fn has_positive_real_order(&self) -> bool {
        self.order.im == 0.0 && self.order.re > 0.0
    }
}

impl fmt::Display for ClassParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(A={}, B={}, b={}{:+}i)",
            self.a, self.b, self.order.re, self.order.im
        )
    }
}

/// The familiar subclasses obtained from special choices of `(A, B, b)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NamedClass {
    /// `S*(1, -1, 1)`.
    Starlike,
    /// `S*(1, -1, b)`.
    StarlikeComplexOrder { order: Complex64 },
    /// `S*(1, -1, 1 - beta)`, `0 <= beta < 1`.
    StarlikeOfOrder { beta: f64 },
    /// `S*(1, -1, e^{-i lambda} cos lambda)`, `|lambda| < pi/2`.
    Spirallike { lambda: f64 },
    /// `S*(1, -1, (1 - alpha) e^{-i lambda} cos lambda)`.
    SpirallikeOfOrder { alpha: f64, lambda: f64 },
    /// `S*(1, 0, b)`: `|ST(b) - 1| < 1`.
    St6 { order: Complex64 },
    /// `S*(beta, 0, b)`: `|ST(b) - 1| < beta`.
    St7 { beta: f64, order: Complex64 },
    /// `S*(beta, -beta, b)`: `|(ST(b) - 1)/(ST(b) + 1)| < beta`.
    St8 { beta: f64, order: Complex64 },
    /// `S*(1, 1/M - 1, b)`: `|ST(b) - M| < M`.
    St9 { m: f64, order: Complex64 },
    /// `S*(1 - 2 beta, -1, b)`: `Re ST(b) > beta`.
    St10 { beta: f64, order: Complex64 },
}

pub const DEFAULT_ORDER: Complex64 = Complex64::new(1.0, -0.5);
pub const DEFAULT_BETA: f64 = 0.5;
pub const DEFAULT_ALPHA: f64 = 0.25;
pub const DEFAULT_LAMBDA: f64 = std::f64::consts::FRAC_PI_6;
pub const DEFAULT_M: f64 = 2.0;

fn check(ok: bool, what: &str, value: f64) -> Result<()> {
    if ok && value.is_finite() {
        Ok(())
    } else {
        Err(Error::OutOfRange(format!("{what} (got {value})")))
    }
}

fn spiral_factor(lambda: f64) -> Complex64 {
    Complex64::from_polar(lambda.cos(), -lambda)
}

impl NamedClass {
    /// Resolves the subclass to its parameter triple.
    pub fn resolve(&self) -> Result<ClassParams> {
        match *self {
            NamedClass::Starlike => ClassParams::real(1.0, -1.0, 1.0),
            NamedClass::StarlikeComplexOrder { order } => ClassParams::new(1.0, -1.0, order),
            NamedClass::StarlikeOfOrder { beta } => {
                check((0.0..1.0).contains(&beta), "beta must lie in [0, 1)", beta)?;
                ClassParams::real(1.0, -1.0, 1.0 - beta)
            }
            NamedClass::Spirallike { lambda } => {
                check(lambda.abs() < FRAC_PI_2, "|lambda| must be < pi/2", lambda)?;
                ClassParams::new(1.0, -1.0, spiral_factor(lambda))
            }
            NamedClass::SpirallikeOfOrder { alpha, lambda } => {
                check(
                    (0.0..1.0).contains(&alpha),
                    "alpha must lie in [0, 1)",
                    alpha,
                )?;
                check(lambda.abs() < FRAC_PI_2, "|lambda| must be < pi/2", lambda)?;
                ClassParams::new(1.0, -1.0, spiral_factor(lambda) * (1.0 - alpha))
            }
            NamedClass::St6 { order } => ClassParams::new(1.0, 0.0, order),
            NamedClass::St7 { beta, order } => {
                check(beta > 0.0 && beta < 1.0, "beta must lie in (0, 1)", beta)?;
                ClassParams::new(beta, 0.0, order)
            }
            NamedClass::St8 { beta, order } => {
                check(beta > 0.0 && beta < 1.0, "beta must lie in (0, 1)", beta)?;
                ClassParams::new(beta, -beta, order)
            }
            NamedClass::St9 { m, order } => {
                check(m > 0.5, "M must be > 1/2", m)?;
                ClassParams::new(1.0, 1.0 / m - 1.0, order)
            }
            NamedClass::St10 { beta, order } => {
                check((0.0..1.0).contains(&beta), "beta must lie in [0, 1)", beta)?;
                ClassParams::new(1.0 - 2.0 * beta, -1.0, order)
            }
        }
    }

    /// The command-line name of the subclass.
    pub fn name(&self) -> &'static str {
        match self {
            NamedClass::Starlike => "starlike",
            NamedClass::StarlikeComplexOrder { .. } => "starlike-complex",
            NamedClass::StarlikeOfOrder { .. } => "starlike-order",
            NamedClass::Spirallike { .. } => "spirallike",
            NamedClass::SpirallikeOfOrder { .. } => "spirallike-order",
            NamedClass::St6 { .. } => "st6",
            NamedClass::St7 { .. } => "st7",
            NamedClass::St8 { .. } => "st8",
            NamedClass::St9 { .. } => "st9",
            NamedClass::St10 { .. } => "st10",
        }
    }

    /// All ten subclasses with their default free parameters.
    pub fn defaults() -> [NamedClass; 10] {
        let order = DEFAULT_ORDER;
        [
            NamedClass::Starlike,
            NamedClass::StarlikeComplexOrder { order },
            NamedClass::StarlikeOfOrder { beta: DEFAULT_BETA },
            NamedClass::Spirallike {
                lambda: DEFAULT_LAMBDA,
            },
            NamedClass::SpirallikeOfOrder {
                alpha: DEFAULT_ALPHA,
                lambda: DEFAULT_LAMBDA,
            },
            NamedClass::St6 { order },
            NamedClass::St7 {
                beta: DEFAULT_BETA,
                order,
            },
            NamedClass::St8 {
                beta: DEFAULT_BETA,
                order,
            },
            NamedClass::St9 {
                m: DEFAULT_M,
                order,
            },
            NamedClass::St10 {
                beta: DEFAULT_BETA,
                order,
            },
        ]
    }
}
