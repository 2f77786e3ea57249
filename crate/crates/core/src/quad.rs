//! Adaptive quadrature.
//!
//! Simpson's rule with interval bisection: a subinterval is accepted when
//! the refined estimate moves by less than its share of the tolerance.
//! Infinite domains are handled by the callers via truncation at the point
//! where the integrand falls below 1e-12, so quadrature-backed constants
//! are reproducible bit-for-bit given the rule.

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

fn adapt(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    adapt(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
        + adapt(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}

/// Integrate `f` over `[a, b]` to absolute tolerance `tol`.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson(a, b, fa, fm, fb);
    adapt(&f, a, b, fa, fm, fb, whole, tol, 48)
}

/// Integrate `f` over the rectangle `[x0,x1] x [y0,y1]` to absolute
/// tolerance `tol`, as an iterated 1-D integral.
pub fn integrate2d(
    f: impl Fn(f64, f64) -> f64 + Copy,
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
    tol: f64,
) -> f64 {
    let inner_tol = tol / (2.0 * (x1 - x0).abs().max(1.0));
    integrate(|x| integrate(|y| f(x, y), y0, y1, inner_tol), x0, x1, tol / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polynomial_is_exact() {
        let v = integrate(|x| 3.0 * x * x, 0.0, 2.0, 1e-12);
        assert!((v - 8.0).abs() < 1e-10);
    }

    #[test]
    fn gaussian_tail() {
        let v = integrate(|x| (-x * x).exp(), 0.0, 12.0, 1e-10);
        assert!((v - PI.sqrt() / 2.0).abs() < 1e-9);
    }

    #[test]
    fn unit_disc_area_by_slices() {
        // Integrand with square-root endpoints; the adaptive rule digs in.
        let v = integrate(|x| 2.0 * (1.0 - x * x).max(0.0).sqrt(), -1.0, 1.0, 1e-9);
        assert!((v - PI).abs() < 1e-7, "{v}");
    }

    #[test]
    fn separable_2d_product() {
        let v = integrate2d(|x, y| x * y, 0.0, 1.0, 0.0, 2.0, 1e-10);
        assert!((v - 1.0).abs() < 1e-8);
    }

    #[test]
    fn exponential_mean_over_quadrant() {
        // x * e^(-x-y) over the positive quadrant integrates to 1.
        let v = integrate2d(|x, y| x * (-x - y).exp(), 0.0, 40.0, 0.0, 40.0, 1e-8);
        assert!((v - 1.0).abs() < 1e-6, "{v}");
    }
}
