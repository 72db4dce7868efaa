//! Gauss–Hermite and trapezoid quadrature rules.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::hermite::fill_hermite_functions;
use crate::spectral::tridiagonal_eigenvalues;

/// Largest order accepted by [`gauss_hermite_rule`].
pub const MAX_ORDER: usize = 600;
const MAX_INTERNAL_ORDER: usize = 1200;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    GaussHermite,
    Trapezoid,
}

/// Nodes and weights. For Gauss–Hermite, `weights` integrate `e^{−x²} p(x)` and
/// `plain_weights = weights · e^{x²}` integrate `f(x)` directly; for the trapezoid
/// the two coincide.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub plain_weights: Vec<f64>,
    pub scheme: Scheme,
    /// `(half_width, step)` of a trapezoid rule.
    pub domain: Option<(f64, f64)>,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// ∫ f(x) dx.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.plain_weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// ∫ e^{−x²} f(x) dx.
    pub fn integrate_weighted(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// Rule at doubled resolution, used for convergence checks.
    pub fn refined(&self) -> Result<QuadratureRule> {
        match self.scheme {
            Scheme::GaussHermite => gauss_hermite_internal((2 * self.len()).min(MAX_INTERNAL_ORDER))
                .map(|r| (*r).clone()),
            Scheme::Trapezoid => {
                let (l, h) = self.domain.expect("trapezoid rule carries its domain");
                trapezoid_rule(l, h / 2.0)
            }
        }
    }
}

/// Gauss–Hermite rule of order `m` (weight `e^{−x²}`), 1 ≤ m ≤ 600.
pub fn gauss_hermite_rule(m: usize) -> Result<QuadratureRule> {
    if m == 0 || m > MAX_ORDER {
        return Err(Error::QuadratureOrder(m));
    }
    gauss_hermite_internal(m).map(|r| (*r).clone())
}

pub(crate) fn gauss_hermite_internal(m: usize) -> Result<Arc<QuadratureRule>> {
    if m == 0 || m > MAX_INTERNAL_ORDER {
        return Err(Error::QuadratureOrder(m));
    }
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<QuadratureRule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(rule) = cache.lock().unwrap().get(&m) {
        return Ok(rule.clone());
    }
    let rule = Arc::new(build_gauss_hermite(m)?);
    cache.lock().unwrap().insert(m, rule.clone());
    Ok(rule)
}

fn build_gauss_hermite(m: usize) -> Result<QuadratureRule> {
    // Jacobi matrix of the Hermite weight: zero diagonal, off-diagonal √(k/2)
    let diag = vec![0.0; m];
    let off: Vec<f64> = (1..m).map(|k| (k as f64 / 2.0).sqrt()).collect();
    let mut nodes = tridiagonal_eigenvalues(&diag, &off)?;
    // exact symmetry about the origin
    for k in 0..m / 2 {
        let x = 0.5 * (nodes[m - 1 - k] - nodes[k]);
        nodes[k] = -x;
        nodes[m - 1 - k] = x;
    }
    if m % 2 == 1 {
        nodes[m / 2] = 0.0;
    }
    // Christoffel numbers: w_k e^{x_k²} = 1 / Σ_n φ_n(x_k)²
    let mut phi = vec![0.0; m];
    let mut plain = Vec::with_capacity(m);
    for &x in &nodes {
        fill_hermite_functions(x, &mut phi);
        plain.push(phi.iter().map(|p| p * p).sum::<f64>().recip());
    }
    let weights = nodes
        .iter()
        .zip(&plain)
        .map(|(&x, &w)| w * (-x * x).exp())
        .collect();
    Ok(QuadratureRule {
        nodes,
        weights,
        plain_weights: plain,
        scheme: Scheme::GaussHermite,
        domain: None,
    })
}

/// Composite trapezoid rule on `[−l, l]` with step close to `h`.
pub fn trapezoid_rule(l: f64, h: f64) -> Result<QuadratureRule> {
    if !(l > 0.0 && h > 0.0 && l.is_finite() && h.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "trapezoid rule needs positive half-width and step, got {l}, {h}"
        )));
    }
    let intervals = ((2.0 * l / h).round() as usize).max(2);
    let step = 2.0 * l / intervals as f64;
    let nodes: Vec<f64> = (0..=intervals).map(|i| -l + i as f64 * step).collect();
    let mut weights = vec![step; intervals + 1];
    weights[0] *= 0.5;
    weights[intervals] *= 0.5;
    Ok(QuadratureRule {
        nodes,
        plain_weights: weights.clone(),
        weights,
        scheme: Scheme::Trapezoid,
        domain: Some((l, step)),
    })
}

/// Σ weights of a Gauss–Hermite rule should reproduce this.
pub fn sqrt_pi() -> f64 {
    PI.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_one_and_two() {
        let r = gauss_hermite_rule(1).unwrap();
        assert_eq!(r.nodes, vec![0.0]);
        assert!((r.weights[0] - sqrt_pi()).abs() < 1e-14);
        let r = gauss_hermite_rule(2).unwrap();
        let x = 0.5f64.sqrt();
        assert!((r.nodes[0] + x).abs() < 1e-14 && (r.nodes[1] - x).abs() < 1e-14);
        for w in &r.weights {
            assert!((w - sqrt_pi() / 2.0).abs() < 1e-14);
        }
    }

    #[test]
    fn order_bounds() {
        assert!(matches!(gauss_hermite_rule(0), Err(Error::QuadratureOrder(0))));
        assert!(matches!(gauss_hermite_rule(601), Err(Error::QuadratureOrder(601))));
    }

    #[test]
    fn second_moment_exact() {
        let r = gauss_hermite_rule(5).unwrap();
        let v = r.integrate_weighted(|x| x * x);
        assert!((v - sqrt_pi() / 2.0).abs() < 1e-13);
    }

    #[test]
    fn monomials_up_to_twenty_at_order_sixteen() {
        let r = gauss_hermite_rule(16).unwrap();
        // ∫ e^{−x²} x^{2k} = Γ(k + 1/2)
        let mut exact = sqrt_pi();
        for deg in 0..=20 {
            let v = r.integrate_weighted(|x| x.powi(deg));
            if deg % 2 == 1 {
                assert!(v.abs() < 1e-10);
            } else {
                assert!((v - exact).abs() < 1e-10 * exact.max(1.0), "deg {deg}");
                exact *= (deg as f64 + 1.0) / 2.0;
            }
        }
    }

    #[test]
    fn weights_sum_for_large_orders() {
        for m in [64, 200, 600] {
            let r = gauss_hermite_rule(m).unwrap();
            assert!(r.weights.iter().all(|w| *w >= 0.0));
            assert!(r.plain_weights.iter().all(|w| *w > 0.0 && w.is_finite()));
            let s: f64 = r.weights.iter().sum();
            assert!((s - sqrt_pi()).abs() < 1e-12, "m={m}: {s}");
        }
    }

    #[test]
    fn plain_weights_integrate_gaussians() {
        let r = gauss_hermite_rule(80).unwrap();
        let v = r.integrate(|x| (-x * x / 2.0).exp());
        assert!((v - (2.0 * PI).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn trapezoid_integrates_gaussian() {
        let r = trapezoid_rule(10.0, 0.05).unwrap();
        assert!((r.integrate(|x| (-x * x).exp()) - sqrt_pi()).abs() < 1e-13);
        let fine = r.refined().unwrap();
        assert_eq!(fine.len(), 2 * r.len() - 1);
    }
}
