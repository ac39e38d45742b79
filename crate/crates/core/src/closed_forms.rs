//! Closed-form geometry of `S*(A, B, b)`: the disks containing `p(z)` and
//! `z f'(z)/f(z)` on `|z| = r`, the real-part lower bound, the radius of
//! starlikeness, the growth bounds for `|f(z)|` and the Koebe radius.

use num_complex::Complex64;
use serde::Serialize;

use crate::class_params::ClassParams;
use crate::error::{Error, Result};

/// A closed disk in the complex plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disk {
    pub center: Complex64,
    pub radius: f64,
}

impl Disk {
    pub fn new(center: Complex64, radius: f64) -> Self {
        debug_assert!(radius >= 0.0);
        Self { center, radius }
    }

    pub fn distance_to_center(&self, w: Complex64) -> f64 {
        (w - self.center).norm()
    }

    /// Whether `w` lies in the disk enlarged by `slack`.
    pub fn contains(&self, w: Complex64, slack: f64) -> bool {
        self.distance_to_center(w) <= self.radius + slack
    }

    /// `min Re w` over the disk.
    pub fn min_re(&self) -> f64 {
        self.center.re - self.radius
    }
}

/// Lower and upper bounds for `|f(z)|` on `|z| = r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bounds {
    pub lower: f64,
    pub upper: f64,
}

/// Radius of starlikeness.
///
/// `raw` is the positive zero of the real-part lower bound and may exceed 1
/// (or be infinite when there is no real zero); `effective` is `min(raw, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StarlikeRadius {
    pub raw: f64,
    pub effective: f64,
    pub boundary_free: bool,
}

fn check_radius(r: f64) -> Result<()> {
    if (0.0..1.0).contains(&r) {
        Ok(())
    } else {
        Err(Error::OutOfRange(format!("r = {r} must lie in [0, 1)")))
    }
}

/// Disk containing `p(z) = (1 + A ω)/(1 + B ω)` for `|z| = r`.
pub fn p_disk(params: &ClassParams, r: f64) -> Result<Disk> {
    check_radius(r)?;
    let (a, b) = (params.a(), params.b());
    let denom = 1.0 - b * b * r * r;
    let center = (1.0 - a * b * r * r) / denom;
    Ok(Disk::new(
        Complex64::new(center, 0.0),
        params.spread() * r / denom,
    ))
}

/// Coefficient of `r^2` in the numerator of the logarithmic-derivative disk
/// center: `B^2 + b (AB - B^2)`.
fn center_coefficient(params: &ClassParams) -> Complex64 {
    let (a, b) = (params.a(), params.b());
    b * b + params.order() * (a * b - b * b)
}

/// Disk containing `z f'(z)/f(z) = 1 + b (p(z) - 1)` for `|z| = r`.
pub fn st_disk(params: &ClassParams, r: f64) -> Result<Disk> {
    check_radius(r)?;
    let b = params.b();
    let denom = 1.0 - b * b * r * r;
    let center = (Complex64::new(1.0, 0.0) - center_coefficient(params) * (r * r)) / denom;
    Ok(Disk::new(center, params.scaled_spread() * r / denom))
}

/// Lower bound for `Re z f'(z)/f(z)` on `|z| = r`.
pub fn re_lower_bound(params: &ClassParams, r: f64) -> Result<f64> {
    check_radius(r)?;
    let b = params.b();
    let numerator = 1.0 - params.scaled_spread() * r - center_coefficient(params).re * r * r;
    Ok(numerator / (1.0 - b * b * r * r))
}

pub fn radius_of_starlikeness(params: &ClassParams) -> StarlikeRadius {
    // Zero of 1 - beta1 r - c r^2 in the form 2 / (beta1 + sqrt(disc)), which
    // avoids cancellation when c is small.
    let beta1 = params.scaled_spread();
    let c = center_coefficient(params).re;
    let disc = beta1 * beta1 + 4.0 * c;
    if disc < 0.0 {
        return StarlikeRadius {
            raw: f64::INFINITY,
            effective: 1.0,
            boundary_free: true,
        };
    }
    let raw = 2.0 / (beta1 + disc.sqrt());
    StarlikeRadius {
        raw,
        effective: raw.min(1.0),
        boundary_free: raw >= 1.0,
    }
}

/// `F(r; A, B, m) = r (1 + B r)^{m (A - B)/B}`, or `r e^{m A r}` when `B = 0`.
pub fn growth(r: f64, a: f64, b: f64, modulus: f64) -> f64 {
    if b == 0.0 {
        r * (modulus * a * r).exp()
    } else {
        r * (modulus * (a - b) / b * (b * r).ln_1p()).exp()
    }
}

/// Growth bounds `F(r; -A, -B, |b|) <= |f(z)| <= F(r; A, B, |b|)`.
pub fn distortion(params: &ClassParams, r: f64) -> Result<Bounds> {
    check_radius(r)?;
    let m = params.order().norm();
    let (a, b) = (params.a(), params.b());
    Ok(Bounds {
        lower: growth(r, -a, -b, m),
        upper: growth(r, a, b, m),
    })
}

/// Radius of the largest disk about the origin covered by every member:
/// the limit of the lower growth bound as `r -> 1`.
pub fn koebe_radius(params: &ClassParams) -> f64 {
    let m = params.order().norm();
    let (a, b) = (params.a(), params.b());
    if b == 0.0 {
        (-m * a).exp()
    } else {
        (1.0 - b).powf(m * (a - b) / b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_4, TAU};

    fn params(a: f64, b: f64, re: f64, im: f64) -> ClassParams {
        ClassParams::new(a, b, Complex64::new(re, im)).unwrap()
    }

    /// Circle through three points; the image of `|z| = r` under the
    /// identity-member map is a circle, so this recovers the disk without
    /// touching the closed forms.
    fn circumcircle(p: [Complex64; 3]) -> Disk {
        let [a, b, c] = p;
        let d = 2.0 * (a.re * (b.im - c.im) + b.re * (c.im - a.im) + c.re * (a.im - b.im));
        let (na, nb, nc) = (a.norm_sqr(), b.norm_sqr(), c.norm_sqr());
        let ux = (na * (b.im - c.im) + nb * (c.im - a.im) + nc * (a.im - b.im)) / d;
        let uy = (na * (c.re - b.re) + nb * (a.re - c.re) + nc * (b.re - a.re)) / d;
        let center = Complex64::new(ux, uy);
        Disk::new(center, (a - center).norm())
    }

    fn image_circle(p: &ClassParams, r: f64) -> Disk {
        let logderiv = |z: Complex64| {
            let pz = (1.0 + p.a() * z) / (1.0 + p.b() * z);
            1.0 + p.order() * (pz - 1.0)
        };
        let pts = [0.3, 2.1, 4.4].map(|t| logderiv(Complex64::from_polar(r, t)));
        circumcircle(pts)
    }

    #[test]
    fn p_disk_examples() {
        let d = p_disk(&params(1.0, -1.0, 1.0, 0.0), 0.5).unwrap();
        assert_abs_diff_eq!(d.center.re, 5.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(d.radius, 4.0 / 3.0, epsilon = 1e-15);

        let d = p_disk(&params(0.3, -0.2, 2.0, 1.0), 0.0).unwrap();
        assert_eq!((d.center, d.radius), (Complex64::new(1.0, 0.0), 0.0));

        let d = p_disk(&params(0.7, 0.0, 1.0, 0.0), 0.5).unwrap();
        assert_abs_diff_eq!(d.center.re, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(d.radius, 0.35, epsilon = 1e-15);
    }

    #[test]
    fn radius_argument_is_checked() {
        let p = params(1.0, -1.0, 1.0, 0.0);
        for r in [-0.1, 1.0, 1.5, f64::NAN] {
            assert!(matches!(p_disk(&p, r), Err(Error::OutOfRange(_))));
            assert!(st_disk(&p, r).is_err());
            assert!(re_lower_bound(&p, r).is_err());
            assert!(distortion(&p, r).is_err());
        }
    }

    #[test]
    fn st_disk_examples() {
        let p = params(1.0, -1.0, 2.0, 0.0);
        let d = st_disk(&p, 0.5).unwrap();
        assert_abs_diff_eq!(d.center.re, 7.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(d.center.im, 0.0);
        assert_abs_diff_eq!(d.radius, 8.0 / 3.0, epsilon = 1e-15);

        let oracle = image_circle(&p, 0.5);
        assert_abs_diff_eq!(oracle.center.re, 7.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(oracle.radius, 8.0 / 3.0, epsilon = 1e-12);

        let d = st_disk(&params(0.2, -0.9, -1.0, 3.0), 0.0).unwrap();
        assert_eq!((d.center, d.radius), (Complex64::new(1.0, 0.0), 0.0));
    }

    #[test]
    fn st_disk_matches_image_circle_for_complex_order() {
        for (a, b, re, im, r) in [
            (1.0, -1.0, 0.3, -1.2, 0.4),
            (0.6, 0.2, -2.0, 0.5, 0.8),
            (0.2, -0.7, 1.5, 1.5, 0.65),
            (1.0, 0.0, 0.0, 2.0, 0.9),
        ] {
            let p = params(a, b, re, im);
            let d = st_disk(&p, r).unwrap();
            let oracle = image_circle(&p, r);
            assert_abs_diff_eq!(d.center.re, oracle.center.re, epsilon = 1e-10);
            assert_abs_diff_eq!(d.center.im, oracle.center.im, epsilon = 1e-10);
            assert_abs_diff_eq!(d.radius, oracle.radius, epsilon = 1e-10);
        }
    }

    #[test]
    fn re_lower_bound_examples() {
        let p = params(1.0, -1.0, 1.0, 0.0);
        assert_abs_diff_eq!(re_lower_bound(&p, 0.5).unwrap(), 1.0 / 3.0, epsilon = 1e-15);
        for r in [0.1, 0.4, 0.77] {
            assert_abs_diff_eq!(
                re_lower_bound(&p, r).unwrap(),
                (1.0 - r) / (1.0 + r),
                epsilon = 1e-14
            );
        }
        assert_eq!(
            re_lower_bound(&params(0.4, 0.1, -3.0, 2.0), 0.0).unwrap(),
            1.0
        );
        assert_abs_diff_eq!(
            re_lower_bound(&params(1.0, 0.0, 1.0, 0.0), 0.5).unwrap(),
            0.5,
            epsilon = 1e-15
        );
    }

    #[test]
    fn radius_examples() {
        let s = radius_of_starlikeness(&params(1.0, -1.0, 1.0, 0.0));
        assert_abs_diff_eq!(s.raw, 1.0, epsilon = 1e-15);
        assert_eq!(s.effective, 1.0);
        assert!(s.boundary_free);

        let s = radius_of_starlikeness(&params(1.0, 0.0, 0.0, 2.0));
        assert_abs_diff_eq!(s.raw, 0.5, epsilon = 1e-15);
        assert!(!s.boundary_free);

        let s = radius_of_starlikeness(&params(0.5, 0.0, 1.0, 0.0));
        assert_abs_diff_eq!(s.raw, 2.0, epsilon = 1e-15);
        assert_eq!(s.effective, 1.0);

        let b = Complex64::from_polar(FRAC_PI_4.cos(), -FRAC_PI_4);
        let s = radius_of_starlikeness(&ClassParams::new(1.0, -1.0, b).unwrap());
        assert_abs_diff_eq!(s.raw, std::f64::consts::FRAC_1_SQRT_2, epsilon = 1e-15);

        let s = radius_of_starlikeness(&params(1.0, -1.0, 2.0, 0.0));
        assert_abs_diff_eq!(s.raw, 1.0 / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn distortion_examples() {
        let d = distortion(&params(1.0, -1.0, 1.0, 0.0), 0.5).unwrap();
        assert_abs_diff_eq!(d.lower, 2.0 / 9.0, epsilon = 1e-15);
        assert_abs_diff_eq!(d.upper, 2.0, epsilon = 1e-14);

        let d = distortion(&params(1.0, 0.0, 1.0, 0.0), 0.5).unwrap();
        assert_abs_diff_eq!(d.lower, 0.5 * (-0.5f64).exp(), epsilon = 1e-15);
        assert_abs_diff_eq!(d.upper, 0.5 * 0.5f64.exp(), epsilon = 1e-15);

        let d = distortion(&params(0.3, -0.4, 1.0, 2.0), 0.0).unwrap();
        assert_eq!((d.lower, d.upper), (0.0, 0.0));
    }

    #[test]
    fn koebe_examples() {
        assert_abs_diff_eq!(
            koebe_radius(&params(1.0, -1.0, 1.0, 0.0)),
            0.25,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            koebe_radius(&params(1.0, 0.0, 1.0, 0.0)),
            (-1.0f64).exp(),
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            koebe_radius(&params(0.0, -1.0, 1.0, 0.0)),
            0.5,
            epsilon = 1e-15
        );
    }

    #[test]
    fn koebe_is_limit_of_lower_bound() {
        for p in [
            params(1.0, -1.0, 1.0, 0.0),
            params(0.5, -0.5, 1.0, -0.5),
            params(1.0, -0.5, 0.3, 0.3),
            params(0.8, 0.3, 2.0, 0.0),
        ] {
            let errs: Vec<f64> = (2..=6)
                .map(|k| {
                    let r = 1.0 - 10f64.powi(-k);
                    (distortion(&p, r).unwrap().lower - koebe_radius(&p)).abs()
                })
                .collect();
            assert!(errs.windows(2).all(|w| w[1] < w[0]), "{p}: {errs:?}");
            assert!(errs[4] < 1e-3);
        }
    }

    #[test]
    fn upper_bound_increasing_for_nonpositive_b() {
        for p in [
            params(1.0, -1.0, 1.0, 0.0),
            params(0.3, -0.9, 0.5, 2.0),
            params(0.9, 0.0, -1.0, 0.0),
        ] {
            let values: Vec<f64> = (0..1000)
                .map(|k| distortion(&p, k as f64 / 1000.0).unwrap().upper)
                .collect();
            assert!(values.windows(2).all(|w| w[1] > w[0]), "{p}");
        }
    }

    fn arb_params() -> impl Strategy<Value = ClassParams> {
        (-0.999..1.0f64, 0.0..1.0f64, 0.01..3.0f64, 0.0..TAU).prop_map(|(a, t, m, arg)| {
            let b = -1.0 + t * (a + 1.0);
            ClassParams::new(a, b, Complex64::from_polar(m, arg)).unwrap()
        })
    }

    proptest! {
        #[test]
        fn re_lower_bound_is_disk_minimum(p in arb_params(), r in 0.0..0.999f64) {
            let d = st_disk(&p, r).unwrap();
            let lb = re_lower_bound(&p, r).unwrap();
            prop_assert!((lb - d.min_re()).abs() <= 1e-14 * (1.0 + d.radius));
        }

        #[test]
        fn lower_bound_positive_inside_radius(p in arb_params(), t in 0.0..1.0f64) {
            let s = radius_of_starlikeness(&p);
            let r = t * s.effective;
            if r < 1.0 {
                prop_assert!(re_lower_bound(&p, r).unwrap() > 0.0);
            }
            if !s.boundary_free && s.raw < 1.0 {
                prop_assert!(re_lower_bound(&p, s.raw).unwrap().abs() < 1e-12);
            }
            prop_assert!(s.effective == s.raw.min(1.0));
        }

        #[test]
        fn discriminant_never_negative(p in arb_params()) {
            // |b|^2 >= (Re b)^2 makes the discriminant a sum of a square and
            // a nonnegative term.
            prop_assert!(radius_of_starlikeness(&p).raw.is_finite());
        }

        #[test]
        fn unit_order_disks_coincide(a in -0.999..1.0f64, t in 0.0..1.0f64, r in 0.0..0.999f64) {
            let b = -1.0 + t * (a + 1.0);
            let p = ClassParams::real(a, b, 1.0).unwrap();
            let (s, q) = (st_disk(&p, r).unwrap(), p_disk(&p, r).unwrap());
            prop_assert!((s.center - q.center).norm() < 1e-15 * (1.0 + q.center.norm()));
            prop_assert!((s.radius - q.radius).abs() < 1e-15 * (1.0 + q.radius));
        }

        #[test]
        fn bounds_bracket_identity(p in arb_params(), r in 0.0..0.999f64) {
            let d = distortion(&p, r).unwrap();
            prop_assert!(d.lower <= r && r <= d.upper);
            prop_assert!(0.0 <= d.lower);
        }

        #[test]
        fn growth_continuous_at_b_zero(a in 0.01..1.0f64, m in 0.01..3.0f64, r in 0.0..0.999f64) {
            let at_zero = growth(r, a, 0.0, m);
            prop_assert!((growth(r, a, 1e-6, m) - at_zero).abs() < 1e-4);
            prop_assert!((growth(r, a, -1e-6, m) - at_zero).abs() < 1e-4);
        }
    }
}
