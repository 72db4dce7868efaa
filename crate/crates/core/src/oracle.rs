//! Finite-difference reference solver and adaptive integrator, independent of
//! the basis machinery.

use crate::error::{Error, Result};
use crate::operators::PotentialSpec;
use crate::spectral::{tridiagonal_eigenvalue, tridiagonal_eigenvector, trapezoid};

pub const DEFAULT_HALF_WIDTH: f64 = 30.0;
pub const DEFAULT_NPOINTS: usize = 12001;
pub const DEFAULT_RICHARDSON_TOLERANCE: f64 = 1e-5;
const MAX_HALVINGS: usize = 24;

/// Gaussian-sum potential with an optional `k r²` term.
#[derive(Debug, Clone, PartialEq)]
pub struct OraclePotential {
    pub gaussians: Vec<(f64, f64)>,
    pub r2: f64,
}

impl OraclePotential {
    pub fn oscillator() -> Self {
        Self {
            gaussians: Vec::new(),
            r2: 1.0,
        }
    }

    pub fn eval(&self, r: f64) -> f64 {
        self.r2 * r * r
            + self
                .gaussians
                .iter()
                .map(|(c, a)| c * (-a * r * r).exp())
                .sum::<f64>()
    }
}

impl From<&PotentialSpec> for OraclePotential {
    fn from(v: &PotentialSpec) -> Self {
        Self {
            gaussians: v.terms().to_vec(),
            r2: 0.0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct OracleSolution {
    /// Richardson-extrapolated ground energy.
    pub eigenvalue: f64,
    /// Fine-grid ground state, square-normalized, endpoints included.
    pub wave: Vec<f64>,
    pub grid: Vec<f64>,
    pub half_width: f64,
    pub npoints: usize,
    pub richardson_error: f64,
}

fn fd_eigenpair(v: &OraclePotential, l: f64, npoints: usize, want_vector: bool) -> Result<(f64, Vec<f64>)> {
    let h = 2.0 * l / (npoints - 1) as f64;
    let inv = 1.0 / (h * h);
    let interior: Vec<f64> = (1..npoints - 1).map(|i| -l + i as f64 * h).collect();
    let diag: Vec<f64> = interior.iter().map(|&x| 2.0 * inv + v.eval(x)).collect();
    let off = vec![-inv; interior.len() - 1];
    let e = tridiagonal_eigenvalue(&diag, &off, 0)?;
    let vec = if want_vector {
        tridiagonal_eigenvector(&diag, &off, e)
    } else {
        Vec::new()
    };
    Ok((e, vec))
}

/// Ground state of −d²/dr² + v on `[−l, l]` with Dirichlet ends, `npoints` including
/// both ends, solved at h and h/2 and Richardson-extrapolated.
pub fn fd_ground_state(v: &OraclePotential, l: f64, npoints: usize) -> Result<OracleSolution> {
    fd_ground_state_with_tolerance(v, l, npoints, DEFAULT_RICHARDSON_TOLERANCE)
}

pub fn fd_ground_state_with_tolerance(
    v: &OraclePotential,
    l: f64,
    npoints: usize,
    tol: f64,
) -> Result<OracleSolution> {
    if npoints < 500 {
        return Err(Error::InvalidArgument(format!("npoints must be at least 500, got {npoints}")));
    }
    if !(l >= 10.0 && l.is_finite()) {
        return Err(Error::InvalidArgument(format!("half-width must be at least 10, got {l}")));
    }
    let (coarse, _) = fd_eigenpair(v, l, npoints, false)?;
    let fine_points = 2 * npoints - 1;
    let (fine, interior) = fd_eigenpair(v, l, fine_points, true)?;
    let richardson_error = (coarse - fine).abs();
    if richardson_error > tol {
        return Err(Error::ResolutionInsufficient {
            error: richardson_error,
            tolerance: tol,
        });
    }
    let h = 2.0 * l / (fine_points - 1) as f64;
    let grid: Vec<f64> = (0..fine_points).map(|i| -l + i as f64 * h).collect();
    let mut wave = Vec::with_capacity(fine_points);
    wave.push(0.0);
    wave.extend(interior);
    wave.push(0.0);
    let norm = trapezoid(&grid, wave.iter().map(|w| w * w)).sqrt();
    let sign = if wave[fine_points / 2] < 0.0 { -1.0 } else { 1.0 };
    for w in &mut wave {
        *w *= sign / norm;
    }
    Ok(OracleSolution {
        eigenvalue: (4.0 * fine - coarse) / 3.0,
        wave,
        grid,
        half_width: l,
        npoints,
        richardson_error,
    })
}

/// ∫_{−l}^{l} f by trapezoid halving until successive estimates agree within `tol`.
pub fn integrate(f: impl Fn(f64) -> f64, l: f64, tol: f64) -> Result<f64> {
    if !(l > 0.0 && l.is_finite()) {
        return Err(Error::InvalidArgument(format!("half-width must be positive, got {l}")));
    }
    let mut intervals = 2usize;
    let mut h = l;
    let mut sum = 0.5 * (f(-l) + f(l)) + f(0.0);
    let mut estimate = sum * h;
    let mut change = f64::INFINITY;
    for halving in 1..=MAX_HALVINGS {
        h *= 0.5;
        let added: f64 = (0..intervals).map(|k| f(-l + (2 * k + 1) as f64 * h)).sum();
        sum += added;
        intervals *= 2;
        let next = sum * h;
        change = (next - estimate).abs();
        estimate = next;
        if halving >= 6 && change < tol {
            return Ok(estimate);
        }
    }
    Err(Error::QuadratureFailure {
        difference: change,
        tolerance: tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermite::hermite_functions;

    fn toy() -> OraclePotential {
        OraclePotential {
            gaussians: vec![(1.0, 9.0), (-1.0, 1.0)],
            r2: 0.0,
        }
    }

    #[test]
    fn gaussian_integral() {
        let v = integrate(|r| (-r * r).exp(), 10.0, 1e-12).unwrap();
        assert!((v - std::f64::consts::PI.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn hermite_normalization_and_orthogonality() {
        let n = integrate(|r| hermite_functions(r, 6)[5].powi(2), 12.0, 1e-12).unwrap();
        assert!((n - 1.0).abs() < 1e-9);
        let o = integrate(|r| {
            let h = hermite_functions(r, 6);
            h[3] * h[5]
        }, 12.0, 1e-12)
        .unwrap();
        assert!(o.abs() < 1e-9);
    }

    #[test]
    fn integrate_reports_failure() {
        assert!(matches!(
            integrate(|r| (1e7 * r).sin().abs(), 1.0, 1e-14),
            Err(Error::QuadratureFailure { .. })
        ));
    }

    #[test]
    fn oscillator_ground_state() {
        let s = fd_ground_state(&OraclePotential::oscillator(), 12.0, 4801).unwrap();
        assert!((s.eigenvalue - 1.0).abs() < 1e-6);
        let norm = trapezoid(&s.grid, s.wave.iter().map(|w| w * w));
        assert!((norm - 1.0).abs() < 1e-10);
        // ground state is the Gaussian π^{-1/4} e^{−r²/2}
        let mid = s.grid.len() / 2;
        assert!((s.wave[mid] - crate::hermite::pi_quarter_inv()).abs() < 1e-4);
    }

    #[test]
    fn weakly_bound_toy_state() {
        let s = fd_ground_state(&toy(), DEFAULT_HALF_WIDTH, DEFAULT_NPOINTS).unwrap();
        assert!((s.eigenvalue + 0.172_076_3).abs() < 1e-6, "{}", s.eigenvalue);
    }

    #[test]
    fn deeper_state() {
        let v = OraclePotential {
            gaussians: vec![(10.0, 9.0), (-5.0, 1.0)],
            r2: 0.0,
        };
        let s = fd_ground_state(&v, DEFAULT_HALF_WIDTH, DEFAULT_NPOINTS).unwrap();
        assert!((s.eigenvalue + 0.734_225_6).abs() < 1e-6, "{}", s.eigenvalue);
    }

    #[test]
    fn coarse_grid_is_rejected() {
        assert!(matches!(
            fd_ground_state(&toy(), DEFAULT_HALF_WIDTH, 500),
            Err(Error::ResolutionInsufficient { .. })
        ));
        assert!(fd_ground_state(&toy(), 5.0, 5000).is_err());
        assert!(fd_ground_state(&toy(), 20.0, 100).is_err());
    }

    #[test]
    fn grid_doubling_is_second_order() {
        let v = OraclePotential {
            gaussians: vec![(10.0, 9.0), (-5.0, 1.0)],
            r2: 0.0,
        };
        let a = fd_ground_state(&v, 20.0, 8001).unwrap();
        let b = fd_ground_state(&v, 20.0, 16001).unwrap();
        assert!((a.eigenvalue - b.eigenvalue).abs() < 4.0 * a.richardson_error);
    }

    #[test]
    fn oscillator_insensitive_to_domain() {
        let h = 0.005;
        let a = fd_ground_state(&OraclePotential::oscillator(), 12.0, (24.0 / h) as usize + 1).unwrap();
        let b = fd_ground_state(&OraclePotential::oscillator(), 16.0, (32.0 / h) as usize + 1).unwrap();
        assert!((a.eigenvalue - b.eigenvalue).abs() < 1e-9);
    }

    #[test]
    fn bound_states_insensitive_to_wide_domains() {
        let h = 0.005;
        for v in [
            toy(),
            OraclePotential {
                gaussians: vec![(10.0, 9.0), (-5.0, 1.0)],
                r2: 0.0,
            },
        ] {
            let a = fd_ground_state(&v, 30.0, (60.0 / h) as usize + 1).unwrap();
            let b = fd_ground_state(&v, 40.0, (80.0 / h) as usize + 1).unwrap();
            assert!((a.eigenvalue - b.eigenvalue).abs() < 1e-9);
        }
    }

    #[test]
    fn weak_binding_feels_a_narrow_box() {
        let h = 0.005;
        let a = fd_ground_state(&toy(), 12.0, (24.0 / h) as usize + 1).unwrap();
        let b = fd_ground_state(&toy(), 16.0, (32.0 / h) as usize + 1).unwrap();
        assert!((a.eigenvalue - b.eigenvalue).abs() > 1e-9);
        assert!(a.eigenvalue > b.eigenvalue);
    }
}
