//! Closed-form and quadrature constants for the tractable families: the
//! template-area scaling laws, the Delaunay mean cell perimeter, and the
//! Hammersley mean edge length. Monte Carlo results are checked against
//! these.

use crate::error::invalid;
use crate::hammersley::hammersley_mean_edge;
use crate::templates::template_area;
use crate::Result;

/// Reference Monte Carlo value for the normalized MST length on random
/// points (no closed form is known).
pub const MST_L_REFERENCE: f64 = 0.633;

/// Scaling law for proximity graphs on the rate-1 Poisson process: with
/// template area `c`, an edge at distance s survives with probability
/// exp(-c s^2), giving
///   L = pi^(3/2) / (4 c^(3/2)),   mean degree = pi / c.
pub fn lemma1(c: f64) -> Result<(f64, f64)> {
    if !(c > 0.0) || !c.is_finite() {
        return Err(invalid(format!("template area must be positive, got {c}")));
    }
    let pi = std::f64::consts::PI;
    Ok((pi.powf(1.5) / (4.0 * c.powf(1.5)), pi / c))
}

/// Normalized Delaunay length: the mean cell perimeter 32/(3 pi), each
/// edge counted once.
pub fn delaunay_l() -> f64 {
    32.0 / (3.0 * std::f64::consts::PI)
}

/// Exact mean degree of any triangulation in the infinite model.
pub fn delaunay_degree() -> f64 {
    6.0
}

/// (beta, L, mean degree) along a beta grid, from the scaling law applied
/// to the template areas.
pub fn beta_curve_analytic(beta_grid: &[f64]) -> Result<Vec<(f64, f64, f64)>> {
    beta_grid
        .iter()
        .map(|&beta| {
            let (l, deg) = lemma1(template_area(beta)?)?;
            Ok((beta, l, deg))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    ClosedForm,
    Quadrature,
    /// Literature Monte Carlo value, used as a reference only.
    Reference,
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::ClosedForm => "closed-form",
            Provenance::Quadrature => "quadrature",
            Provenance::Reference => "reference",
        }
    }
}

#[derive(Debug, Clone)]
pub struct AnalyticValue {
    pub name: String,
    pub value: f64,
    pub provenance: Provenance,
    pub tolerance: f64,
}

impl AnalyticValue {
    fn new(name: &str, value: f64, provenance: Provenance, tolerance: f64) -> Self {
        AnalyticValue { name: name.to_string(), value, provenance, tolerance }
    }
}

/// Every named constant, for `analytics dump`.
pub fn dump() -> Vec<AnalyticValue> {
    use Provenance::*;
    let c_gabriel = template_area(1.0).expect("beta in range");
    let c_rng = template_area(2.0).expect("beta in range");
    let (l_gabriel, d_gabriel) = lemma1(c_gabriel).expect("positive area");
    let (l_rng, d_rng) = lemma1(c_rng).expect("positive area");
    let mean_edge = hammersley_mean_edge();
    vec![
        AnalyticValue::new("gabriel_template_area", c_gabriel, ClosedForm, 0.0),
        AnalyticValue::new("gabriel_L", l_gabriel, ClosedForm, 0.0),
        AnalyticValue::new("gabriel_degree", d_gabriel, ClosedForm, 0.0),
        AnalyticValue::new("rng_template_area", c_rng, ClosedForm, 0.0),
        AnalyticValue::new("rng_L", l_rng, ClosedForm, 0.0),
        AnalyticValue::new("rng_degree", d_rng, ClosedForm, 0.0),
        AnalyticValue::new("delaunay_L", delaunay_l(), ClosedForm, 0.0),
        AnalyticValue::new("delaunay_degree", delaunay_degree(), ClosedForm, 0.0),
        AnalyticValue::new("hammersley_mean_edge", mean_edge, Quadrature, 1e-6),
        AnalyticValue::new("hammersley_L", 2.0 * mean_edge, Quadrature, 2e-6),
        AnalyticValue::new("mst_L", MST_L_REFERENCE, Reference, 0.0),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::lens_area;
    use crate::quad::integrate;
    use std::f64::consts::PI;

    #[test]
    fn lemma1_gabriel_row() {
        let (l, d) = lemma1(PI / 4.0).unwrap();
        assert!((l - 2.0).abs() < 1e-12);
        assert!((d - 4.0).abs() < 1e-12);
    }

    #[test]
    fn lemma1_rng_row() {
        let (l, d) = lemma1(lens_area(1.0, 1.0, 1.0)).unwrap();
        assert!((l - 1.02).abs() < 0.005, "L {l}");
        assert!((d - 2.56).abs() < 0.005, "degree {d}");
    }

    #[test]
    fn lemma1_algebraic_identity() {
        let (l, d) = lemma1(PI).unwrap();
        assert!((l - 0.25).abs() < 1e-12);
        assert!((d - 1.0).abs() < 1e-12);
    }

    #[test]
    fn lemma1_matches_its_proof_integrals() {
        // mean degree = integral of exp(-c s^2) 2 pi s ds,
        // L = (1/2) integral of s exp(-c s^2) 2 pi s ds.
        for c in [PI / 4.0, lens_area(1.0, 1.0, 1.0), 0.3, 2.0] {
            let smax = (40.0 / c).sqrt();
            let deg = integrate(|s| (-c * s * s).exp() * 2.0 * PI * s, 0.0, smax, 1e-9);
            let l = 0.5 * integrate(|s| s * (-c * s * s).exp() * 2.0 * PI * s, 0.0, smax, 1e-9);
            let (lw, dw) = lemma1(c).unwrap();
            assert!((deg - dw).abs() < 1e-6, "degree {deg} vs {dw} at c={c}");
            assert!((l - lw).abs() < 1e-6, "L {l} vs {lw} at c={c}");
        }
    }

    #[test]
    fn delaunay_constant() {
        assert!((delaunay_l() - 3.3953) < 1e-3);
        assert!((delaunay_l() * 3.0 * PI / 32.0 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn beta_curve_monotone() {
        let grid = [1.0, 1.2, 1.4, 1.6, 1.8, 2.0];
        let curve = beta_curve_analytic(&grid).unwrap();
        assert!((curve[0].1 - 2.0).abs() < 1e-12);
        assert!((curve[0].2 - 4.0).abs() < 1e-12);
        let last = curve.last().unwrap();
        assert!((last.1 - 1.02).abs() < 0.005);
        assert!((last.2 - 2.56).abs() < 0.005);
        for w in curve.windows(2) {
            assert!(w[1].1 < w[0].1, "L must strictly decrease in beta");
            assert!(w[1].2 < w[0].2, "degree must strictly decrease in beta");
        }
    }

    #[test]
    fn dump_has_positive_values_and_tolerances() {
        let values = dump();
        assert!(values.len() >= 10);
        for v in values {
            assert!(v.value > 0.0, "{} must be positive", v.name);
            if v.provenance == Provenance::Quadrature {
                assert!(v.tolerance <= 1e-6 * 2.0);
            }
        }
    }
}
