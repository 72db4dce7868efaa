//! P/Q partition of a Hamiltonian matrix and the energy-dependent effective kernel
//! W(E) = PhQ (E − QhQ)⁻¹ QhP.

use nalgebra::{DMatrix, DVector};

use crate::basis::BasisSet;
use crate::error::{Error, Result};
use crate::grid::Axis;
use crate::kernels::{render_matrix_kernel, KernelGrid, KernelKind};
use crate::operators::OperatorMatrix;
use crate::spectral::{eigen_symmetric_matrix, Spectrum};

/// Minimum distance between a trial energy and the Q-block spectrum.
pub const POLE_THRESHOLD: f64 = 1e-10;
pub const DEFAULT_TOLERANCE: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 200;

#[derive(Debug, Clone)]
pub struct FeshbachPartition {
    pub n1: usize,
    pub n2: usize,
    pub basis: BasisSet,
    pub php: DMatrix<f64>,
    pub phq: DMatrix<f64>,
    pub qhq: DMatrix<f64>,
    q_spectrum: Spectrum,
    full: DMatrix<f64>,
}

impl FeshbachPartition {
    /// Number of basis functions left outside P ∪ Q.
    pub fn remainder_size(&self) -> usize {
        self.basis.len() - self.n2
    }

    pub fn q_eigenvalues(&self) -> &[f64] {
        &self.q_spectrum.eigenvalues
    }

    /// Retained n2 × n2 block.
    pub fn full_block(&self) -> &DMatrix<f64> {
        &self.full
    }

    pub fn php_ground(&self) -> Result<f64> {
        Ok(eigen_symmetric_matrix(&self.php)?.ground())
    }

    /// Ground energy and vector of the retained block.
    pub fn full_ground(&self) -> Result<(f64, DVector<f64>)> {
        let s = eigen_symmetric_matrix(&self.full)?;
        Ok((s.ground(), s.vector(0)))
    }
}

pub fn partition(h: &OperatorMatrix, n1: usize, n2: usize) -> Result<FeshbachPartition> {
    let n = h.len();
    if n1 == 0 || n1 >= n2 || n2 > n {
        return Err(Error::InvalidPartition(format!(
            "need 1 <= n1 < n2 <= {n}, got n1 = {n1}, n2 = {n2}"
        )));
    }
    let full = h.entries.view((0, 0), (n2, n2)).into_owned();
    let php = full.view((0, 0), (n1, n1)).into_owned();
    let phq = full.view((0, n1), (n1, n2 - n1)).into_owned();
    let qhq = full.view((n1, n1), (n2 - n1, n2 - n1)).into_owned();
    let q_spectrum = eigen_symmetric_matrix(&qhq)?;
    Ok(FeshbachPartition {
        n1,
        n2,
        basis: h.basis.clone(),
        php,
        phq,
        qhq,
        q_spectrum,
        full,
    })
}

/// W(e) through the eigen-decomposition of QhQ.
pub fn effective_kernel(part: &FeshbachPartition, e: f64) -> Result<DMatrix<f64>> {
    let q = &part.q_spectrum;
    if let Some(d) = q
        .eigenvalues
        .iter()
        .map(|mu| (e - mu).abs())
        .min_by(f64::total_cmp)
    {
        if d <= POLE_THRESHOLD {
            return Err(Error::ResolventPole { energy: e, distance: d });
        }
    }
    let coupling = &part.phq * &q.vectors;
    let mut w = DMatrix::zeros(part.n1, part.n1);
    for (k, mu) in q.eigenvalues.iter().enumerate() {
        let c = coupling.column(k);
        w += (c * c.transpose()) / (e - mu);
    }
    Ok(0.5 * (&w + w.transpose()))
}

#[derive(Debug, Clone)]
pub struct EffectiveSolve {
    pub energy: f64,
    pub iterations: usize,
    pub history: Vec<f64>,
    /// Ground state of PhP + W(energy), unit norm.
    pub p_state: DVector<f64>,
}

/// Fixed-point iteration E ← ground(PhP + W(E)) seeded with ground(PhP).
pub fn solve_selfconsistent(part: &FeshbachPartition, tol: f64, max_iter: usize) -> Result<EffectiveSolve> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let mut e = part.php_ground()?;
    let mut history = vec![e];
    let mut change = f64::INFINITY;
    for it in 1..=max_iter {
        let s = eigen_symmetric_matrix(&(&part.php + effective_kernel(part, e)?))?;
        let next = s.ground();
        change = (next - e).abs();
        history.push(next);
        e = next;
        if change < tol {
            return Ok(EffectiveSolve {
                energy: e,
                iterations: it,
                history,
                p_state: s.vector(0),
            });
        }
    }
    Err(Error::NoConvergence {
        iterations: max_iter,
        last_change: change,
    })
}

/// Σ_{ij∈P} χ_i(r) W(e)_ij χ_j(s).
pub fn render_effective(part: &FeshbachPartition, e: f64, r_axis: Axis, s_axis: Axis) -> Result<KernelGrid> {
    let w = effective_kernel(part, e)?;
    render_matrix_kernel(&part.basis, Some(&w), KernelKind::Effective, r_axis, s_axis)
}

/// Σ_{ij∈P} χ_i(r) (PhP)_ij χ_j(s).
pub fn render_php(part: &FeshbachPartition, r_axis: Axis, s_axis: Axis) -> Result<KernelGrid> {
    render_matrix_kernel(&part.basis, Some(&part.php), KernelKind::Hamiltonian, r_axis, s_axis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::BasisSpec;
    use crate::operators::OperatorKind;

    fn custom(m: DMatrix<f64>) -> OperatorMatrix {
        let b = BasisSpec::harmonic_oscillator(m.nrows()).realize().unwrap();
        OperatorMatrix::new(b, m, OperatorKind::Custom).unwrap()
    }

    #[test]
    fn partition_bounds() {
        let h = custom(DMatrix::identity(4, 4));
        assert!(partition(&h, 0, 2).is_err());
        assert!(partition(&h, 2, 2).is_err());
        assert!(partition(&h, 1, 5).is_err());
        let p = partition(&h, 3, 4).unwrap();
        assert_eq!(p.qhq.shape(), (1, 1));
        assert_eq!(p.phq.shape(), (3, 1));
        assert_eq!(p.remainder_size(), 0);
    }

    #[test]
    fn two_by_two_fixed_point() {
        let (a, b, d) = (1.0, 0.4, 3.0);
        let h = custom(DMatrix::from_row_slice(2, 2, &[a, b, b, d]));
        let p = partition(&h, 1, 2).unwrap();
        let w = effective_kernel(&p, 0.5).unwrap();
        assert!((w[(0, 0)] - b * b / (0.5 - d)).abs() < 1e-15);
        let s = solve_selfconsistent(&p, 1e-12, 200).unwrap();
        let exact = 0.5 * (a + d) - (0.25 * (a - d).powi(2) + b * b).sqrt();
        assert!((s.energy - exact).abs() < 1e-10);
        assert!(matches!(effective_kernel(&p, d), Err(Error::ResolventPole { .. })));
    }

    #[test]
    fn decoupled_blocks() {
        let h = custom(DMatrix::from_diagonal(&DVector::from_vec(vec![2.0, -1.0, 5.0, 7.0])));
        let p = partition(&h, 2, 4).unwrap();
        assert_eq!(effective_kernel(&p, 0.0).unwrap().amax(), 0.0);
        let s = solve_selfconsistent(&p, 1e-10, 200).unwrap();
        assert_eq!(s.iterations, 1);
        assert_eq!(s.energy, -1.0);
        let axis = Axis::symmetric(2.0, 0.5).unwrap();
        assert_eq!(render_effective(&p, 0.0, axis, axis).unwrap().values.amax(), 0.0);
    }

    #[test]
    fn iteration_limit_is_reported() {
        let h = custom(DMatrix::from_row_slice(2, 2, &[1.0, 0.4, 0.4, 3.0]));
        let p = partition(&h, 1, 2).unwrap();
        assert!(matches!(solve_selfconsistent(&p, 1e-14, 1), Err(Error::NoConvergence { .. })));
        assert!(solve_selfconsistent(&p, 0.0, 10).is_err());
    }

    #[test]
    fn exact_on_random_blocks() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..10 {
            let n = 8;
            let mut m = DMatrix::from_fn(n, n, |_, _| rng.random_range(-0.3..0.3));
            m = 0.5 * (&m + m.transpose());
            for i in 0..n {
                m[(i, i)] += i as f64;
            }
            let h = custom(m);
            let p = partition(&h, 3, 7).unwrap();
            let s = solve_selfconsistent(&p, 1e-12, 200).unwrap();
            let (e, v) = p.full_ground().unwrap();
            assert!((s.energy - e).abs() < 1e-8);
            let proj = v.rows(0, 3).normalize();
            let sign = proj.dot(&s.p_state).signum();
            assert!((proj * sign - &s.p_state).amax() < 1e-6);
        }
    }
}
