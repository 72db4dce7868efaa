//! Dense symmetric eigensolver, symmetric-tridiagonal eigenvalues, eigenfunction
//! synthesis and peak diagnostics.

use nalgebra::{DMatrix, DVector};

use crate::basis::BasisSet;
use crate::error::{Error, Result};
use crate::grid::Axis;
use crate::operators::OperatorMatrix;

const JACOBI_MAX_SWEEPS: usize = 100;
const JACOBI_RELATIVE_TOL: f64 = 1e-13;

/// Ascending eigenvalues with unit coefficient vectors stored as matrix columns.
///
/// Each vector has its largest-magnitude component positive.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub vectors: DMatrix<f64>,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn ground(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn vector(&self, k: usize) -> DVector<f64> {
        self.vectors.column(k).into_owned()
    }
}

pub fn eigen_symmetric(matrix: &OperatorMatrix) -> Result<Spectrum> {
    eigen_symmetric_matrix(&matrix.entries)
}

/// Full spectrum of a real symmetric matrix by cyclic Jacobi rotations.
///
/// Sweeps stop once the off-diagonal Frobenius norm falls below `1e-13 ‖M‖_F`.
pub fn eigen_symmetric_matrix(m: &DMatrix<f64>) -> Result<Spectrum> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: m.ncols(),
        });
    }
    let asym = max_asymmetry(m);
    let scale = m.iter().fold(0.0f64, |acc, x| acc.max(x.abs())).max(1.0);
    if asym > 1e-12 * scale {
        return Err(Error::NotSymmetric(asym));
    }

    // row-major working copy, symmetrized
    let mut a = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            a[i * n + j] = 0.5 * (m[(i, j)] + m[(j, i)]);
        }
    }
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let norm = a.iter().map(|x| x * x).sum::<f64>().sqrt();

    let mut converged = n <= 1 || norm == 0.0;
    let mut sweeps = 0;
    while !converged {
        let off = off_diagonal_norm(&a, n);
        if off < JACOBI_RELATIVE_TOL * norm {
            converged = true;
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::EigenNoConvergence(sweeps));
        }
        sweeps += 1;
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                if apq.abs() < 1e-300 {
                    a[p * n + q] = 0.0;
                    a[q * n + p] = 0.0;
                    continue;
                }
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                rotate(&mut a, &mut v, n, p, q, c, s);
            }
        }
    }
    debug_assert!(converged);

    let mut pairs: Vec<(f64, Vec<f64>)> = (0..n)
        .map(|k| {
            let mut col: Vec<f64> = (0..n).map(|i| v[i * n + k]).collect();
            apply_sign_convention(&mut col);
            (a[k * n + k], col)
        })
        .collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    // degenerate clusters: order by first significant component
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n {
            let tol = 1e-10 * pairs[end].0.abs().max(1.0);
            if pairs[end].0 - pairs[end - 1].0 > tol {
                break;
            }
            end += 1;
        }
        pairs[start..end].sort_by_key(|p| first_significant(&p.1));
        start = end;
    }

    let eigenvalues = pairs.iter().map(|p| p.0).collect();
    let vectors = DMatrix::from_fn(n, n, |i, k| pairs[k].1[i]);
    Ok(Spectrum {
        eigenvalues,
        vectors,
    })
}

fn rotate(a: &mut [f64], v: &mut [f64], n: usize, p: usize, q: usize, c: f64, s: f64) {
    for k in 0..n {
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        a[k * n + p] = c * akp - s * akq;
        a[k * n + q] = s * akp + c * akq;
    }
    for k in 0..n {
        let apk = a[p * n + k];
        let aqk = a[q * n + k];
        a[p * n + k] = c * apk - s * aqk;
        a[q * n + k] = s * apk + c * aqk;
    }
    a[p * n + q] = 0.0;
    a[q * n + p] = 0.0;
    for k in 0..n {
        let vkp = v[k * n + p];
        let vkq = v[k * n + q];
        v[k * n + p] = c * vkp - s * vkq;
        v[k * n + q] = s * vkp + c * vkq;
    }
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[i * n + j] * a[i * n + j];
            }
        }
    }
    sum.sqrt()
}

pub(crate) fn max_asymmetry(m: &DMatrix<f64>) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i + 1..n {
            worst = worst.max((m[(i, j)] - m[(j, i)]).abs());
        }
    }
    worst
}

fn apply_sign_convention(col: &mut [f64]) {
    let mut best = 0;
    for (i, x) in col.iter().enumerate() {
        if x.abs() > col[best].abs() * (1.0 + 1e-12) {
            best = i;
        }
    }
    if col[best] < 0.0 {
        col.iter_mut().for_each(|x| *x = -*x);
    }
}

fn first_significant(col: &[f64]) -> usize {
    col.iter().position(|x| x.abs() > 1e-8).unwrap_or(col.len())
}

/// Number of eigenvalues of the symmetric tridiagonal matrix strictly below `x`.
fn sturm_count(diag: &[f64], off: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for i in 0..diag.len() {
        let coupling = if i == 0 { 0.0 } else { off[i - 1] * off[i - 1] };
        q = diag[i] - x - if i == 0 { 0.0 } else { coupling / q };
        if q == 0.0 {
            q = -f64::EPSILON * (diag[i].abs() + x.abs()).max(f64::MIN_POSITIVE);
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

fn gershgorin(diag: &[f64], off: &[f64]) -> (f64, f64) {
    let n = diag.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let mut radius = 0.0;
        if i > 0 {
            radius += off[i - 1].abs();
        }
        if i + 1 < n {
            radius += off[i].abs();
        }
        lo = lo.min(diag[i] - radius);
        hi = hi.max(diag[i] + radius);
    }
    (lo, hi)
}

/// k-th smallest eigenvalue (0-based) of a symmetric tridiagonal matrix by
/// bisection on its Sturm sequence.
pub fn tridiagonal_eigenvalue(diag: &[f64], off: &[f64], k: usize) -> Result<f64> {
    let n = diag.len();
    if off.len() + 1 != n.max(1) {
        return Err(Error::DimensionMismatch {
            expected: n.saturating_sub(1),
            actual: off.len(),
        });
    }
    if k >= n {
        return Err(Error::IndexOutOfRange { index: k, len: n });
    }
    let (mut lo, mut hi) = gershgorin(diag, off);
    let pad = f64::EPSILON * (lo.abs() + hi.abs()) + f64::MIN_POSITIVE;
    lo -= pad;
    hi += pad;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if sturm_count(diag, off, mid) > k {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// All eigenvalues, ascending.
pub fn tridiagonal_eigenvalues(diag: &[f64], off: &[f64]) -> Result<Vec<f64>> {
    (0..diag.len())
        .map(|k| tridiagonal_eigenvalue(diag, off, k))
        .collect()
}

/// Eigenvector for a computed eigenvalue by inverse iteration, unit 2-norm,
/// largest component positive.
pub fn tridiagonal_eigenvector(diag: &[f64], off: &[f64], lambda: f64) -> Vec<f64> {
    let n = diag.len();
    let scale = diag
        .iter()
        .chain(off.iter())
        .fold(0.0f64, |acc, x| acc.max(x.abs()))
        .max(1.0);
    let tiny = f64::EPSILON * scale;
    let mut x = vec![1.0; n];
    for _ in 0..3 {
        // Thomas elimination on (T - λ I) y = x
        let mut c = vec![0.0; n];
        let mut d = vec![0.0; n];
        let mut pivot = diag[0] - lambda;
        if pivot.abs() < tiny {
            pivot = tiny;
        }
        if n > 1 {
            c[0] = off[0] / pivot;
        }
        d[0] = x[0] / pivot;
        for i in 1..n {
            pivot = diag[i] - lambda - off[i - 1] * c[i - 1];
            if pivot.abs() < tiny {
                pivot = tiny;
            }
            if i + 1 < n {
                c[i] = off[i] / pivot;
            }
            d[i] = (x[i] - off[i - 1] * d[i - 1]) / pivot;
        }
        let mut y = vec![0.0; n];
        y[n - 1] = d[n - 1];
        for i in (0..n - 1).rev() {
            y[i] = d[i] - c[i] * y[i + 1];
        }
        let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        x = y.into_iter().map(|v| v / norm).collect();
    }
    apply_sign_convention(&mut x);
    x
}

/// Grid samples of a synthesized wave function.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledWave {
    pub x: Vec<f64>,
    pub values: Vec<f64>,
}

impl SampledWave {
    /// Trapezoid square norm.
    pub fn norm_squared(&self) -> f64 {
        trapezoid(&self.x, self.values.iter().map(|v| v * v))
    }
}

pub(crate) fn trapezoid(x: &[f64], y: impl Iterator<Item = f64>) -> f64 {
    let y: Vec<f64> = y.collect();
    x.windows(2)
        .zip(y.windows(2))
        .map(|(xs, ys)| 0.5 * (xs[1] - xs[0]) * (ys[0] + ys[1]))
        .sum()
}

/// ψ(r) = Σ_i c_i χ_i(r) sampled on `axis`.
pub fn synthesize(basis: &BasisSet, coeffs: &DVector<f64>, axis: &Axis) -> Result<SampledWave> {
    if coeffs.len() != basis.len() {
        return Err(Error::DimensionMismatch {
            expected: basis.len(),
            actual: coeffs.len(),
        });
    }
    let x = axis.points();
    let values = x.iter().map(|&r| basis.values_at(r).dot(coeffs)).collect();
    Ok(SampledWave { x, values })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeakMetrics {
    pub max_abs: f64,
    pub peak_position: f64,
    /// Largest |r| with |ψ(r)| > 0.01 max_abs.
    pub effective_range: f64,
    /// Full width at half maximum of the principal peak.
    pub fwhm: f64,
}

pub fn peak_metrics(wave: &SampledWave) -> Result<PeakMetrics> {
    let n = wave.x.len();
    if n < 3 || wave.values.len() != n {
        return Err(Error::Degenerate("wave needs at least three samples".into()));
    }
    let step = wave.x[1] - wave.x[0];
    if step > 0.05 + 1e-12 {
        return Err(Error::InvalidArgument(format!(
            "peak metrics need grid step <= 0.05, got {step}"
        )));
    }
    let abs: Vec<f64> = wave.values.iter().map(|v| v.abs()).collect();
    let (k, &max_abs) = abs
        .iter()
        .enumerate()
        .fold((0, &0.0), |best, cur| if cur.1 > best.1 { cur } else { best });
    if max_abs == 0.0 {
        return Err(Error::Degenerate("wave is identically zero".into()));
    }
    let half = 0.5 * max_abs;
    let crossing = |i: usize, j: usize| {
        // linear interpolation between samples i (above half) and j (below)
        let t = (abs[i] - half) / (abs[i] - abs[j]);
        wave.x[i] + t * (wave.x[j] - wave.x[i])
    };
    let mut left = wave.x[0];
    let mut i = k;
    while i > 0 {
        if abs[i - 1] <= half {
            left = crossing(i, i - 1);
            break;
        }
        i -= 1;
    }
    let mut right = wave.x[n - 1];
    let mut j = k;
    while j + 1 < n {
        if abs[j + 1] <= half {
            right = crossing(j, j + 1);
            break;
        }
        j += 1;
    }
    let effective_range = wave
        .x
        .iter()
        .zip(&abs)
        .filter(|(_, a)| **a > 0.01 * max_abs)
        .map(|(x, _)| x.abs())
        .fold(0.0, f64::max);
    Ok(PeakMetrics {
        max_abs,
        peak_position: wave.x[k],
        effective_range,
        fwhm: right - left,
    })
}
