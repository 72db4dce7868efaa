//! Coordinate-space kernels K(r, s) = Σ χ_i(r) M_ij χ_j(s) and their diagnostics.

use nalgebra::DMatrix;

use crate::basis::BasisSet;
use crate::error::{Error, Result};
use crate::grid::Axis;
use crate::hermite::{derivative_from_values, derivative_sequence, fill_hermite_functions, MAX_DEGREE};
use crate::operators::{OperatorKind, OperatorMatrix};

/// Below this separation the compact identity kernel switches to its Taylor form.
pub const CONFLUENT_THRESHOLD: f64 = 1e-6;
/// Smallest identity-kernel crest accepted as a crest-ratio denominator.
pub const CREST_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelKind {
    Identity,
    Kinetic,
    PositionSquared,
    Potential,
    Separable,
    Hamiltonian,
    GeneralBasisIdentity,
    Effective,
    Custom,
}

impl From<OperatorKind> for KernelKind {
    fn from(k: OperatorKind) -> Self {
        match k {
            OperatorKind::Kinetic => KernelKind::Kinetic,
            OperatorKind::PositionSquared => KernelKind::PositionSquared,
            OperatorKind::LocalPotential => KernelKind::Potential,
            OperatorKind::Separable => KernelKind::Separable,
            OperatorKind::Hamiltonian => KernelKind::Hamiltonian,
            OperatorKind::Custom => KernelKind::Custom,
        }
    }
}

/// `values[(i, j)] = K(r_i, s_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelGrid {
    pub r_axis: Axis,
    pub s_axis: Axis,
    pub values: DMatrix<f64>,
    pub kind: KernelKind,
}

impl KernelGrid {
    /// max |K(r,s) − K(s,r)| on a square grid.
    pub fn exchange_asymmetry(&self) -> f64 {
        let n = self.values.nrows().min(self.values.ncols());
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..i {
                worst = worst.max((self.values[(i, j)] - self.values[(j, i)]).abs());
            }
        }
        worst
    }

    /// max |K(−r,−s) − K(r,s)| on an origin-symmetric grid.
    pub fn reflection_asymmetry(&self) -> f64 {
        let (nr, ns) = self.values.shape();
        let mut worst = 0.0f64;
        for i in 0..nr {
            for j in 0..ns {
                worst = worst.max((self.values[(i, j)] - self.values[(nr - 1 - i, ns - 1 - j)]).abs());
            }
        }
        worst
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CurveLabel {
    Crest,
    Cut(f64),
    CutWeight,
    KineticWeight,
    CrestRatio,
    Wave,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurveSeries {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub label: CurveLabel,
}

impl CurveSeries {
    /// (min, max) of the values.
    pub fn band(&self) -> (f64, f64) {
        self.y
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)))
    }

    /// Half of the peak-to-peak excursion.
    pub fn half_amplitude(&self) -> f64 {
        let (lo, hi) = self.band();
        0.5 * (hi - lo)
    }
}

/// Σ_ij a_i(r) M_ij b_j(s) on the grid, with `a`, `b` columns of sampled functions.
fn sandwich(left: &DMatrix<f64>, m: Option<&DMatrix<f64>>, right: &DMatrix<f64>) -> DMatrix<f64> {
    match m {
        Some(m) => left.transpose() * (m * right),
        None => left.transpose() * right,
    }
}

/// Kernel of `matrix` (identity when absent) on the given axes.
pub fn render_kernel(
    basis: &BasisSet,
    matrix: Option<&OperatorMatrix>,
    r_axis: Axis,
    s_axis: Axis,
) -> Result<KernelGrid> {
    let kind = match matrix {
        Some(m) => m.kind.into(),
        None if basis.is_oscillator() => KernelKind::Identity,
        None => KernelKind::GeneralBasisIdentity,
    };
    render_matrix_kernel(basis, matrix.map(|m| &m.entries), kind, r_axis, s_axis)
}

/// Kernel of an arbitrary matrix acting on the leading `m.nrows()` basis functions.
pub fn render_matrix_kernel(
    basis: &BasisSet,
    m: Option<&DMatrix<f64>>,
    kind: KernelKind,
    r_axis: Axis,
    s_axis: Axis,
) -> Result<KernelGrid> {
    let k = m.map_or(basis.len(), |m| m.nrows());
    if k > basis.len() || m.is_some_and(|m| m.ncols() != k) {
        return Err(Error::DimensionMismatch {
            expected: basis.len(),
            actual: k,
        });
    }
    let left = basis.values_on(&r_axis.points()).rows(0, k).into_owned();
    let right = basis.values_on(&s_axis.points()).rows(0, k).into_owned();
    Ok(KernelGrid {
        r_axis,
        s_axis,
        values: sandwich(&left, m, &right),
        kind,
    })
}

/// Σ_i φ_i(r) τ_i(s) from the raw family and its dual.
pub fn render_dual_identity(basis: &BasisSet, r_axis: Axis, s_axis: Axis) -> Result<KernelGrid> {
    let dual = basis.dual()?;
    let raw = basis.raw();
    let sample = |axis: &Axis| {
        let pts = axis.points();
        let mut m = DMatrix::zeros(raw.len(), pts.len());
        for (j, &r) in pts.iter().enumerate() {
            m.set_column(j, &raw.values_at(r));
        }
        m
    };
    Ok(KernelGrid {
        r_axis,
        s_axis,
        values: sandwich(&sample(&r_axis), Some(&dual.coeff.transpose()), &sample(&s_axis)),
        kind: KernelKind::GeneralBasisIdentity,
    })
}

fn check_count(n: usize, extra: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("kernel order must be at least 1".into()));
    }
    if n + extra > MAX_DEGREE {
        return Err(Error::UnsupportedDegree {
            degree: n + extra,
            max: MAX_DEGREE,
        });
    }
    Ok(())
}

/// Σ_{i=1}^{N} φ_i(r) φ_i(s) summed term by term.
pub fn identity_direct(n: usize, r: f64, s: f64) -> f64 {
    let a = crate::hermite::hermite_functions(r, n);
    let b = crate::hermite::hermite_functions(s, n);
    a.iter().zip(&b).map(|(x, y)| x * y).sum()
}

/// Compact two-term form of the N-term oscillator identity kernel.
pub fn christoffel_darboux(n: usize, r: f64, s: f64) -> Result<f64> {
    check_count(n, 1)?;
    let alpha = (n as f64 / 2.0).sqrt();
    let mut hr = vec![0.0; n + 1];
    let mut hs = vec![0.0; n + 1];
    fill_hermite_functions(r, &mut hr);
    fill_hermite_functions(s, &mut hs);
    let delta = s - r;
    if delta.abs() >= CONFLUENT_THRESHOLD {
        return Ok(alpha * (hs[n] * hr[n - 1] - hr[n] * hs[n - 1]) / delta);
    }
    // g(t) = φ_{N+1}(t) φ_N(r) − φ_{N+1}(r) φ_N(t), expanded about t = r
    let mut ext = vec![0.0; n + 2];
    fill_hermite_functions(r, &mut ext);
    let top = derivative_sequence(n, r, ext[n], derivative_from_values(&ext, n), 5);
    let low = derivative_sequence(n - 1, r, ext[n - 1], derivative_from_values(&ext, n - 1), 5);
    let mut sum = 0.0;
    let mut factorial = 1.0;
    let mut power = 1.0;
    for k in 1..=5 {
        factorial *= k as f64;
        let g = top[k] * ext[n - 1] - ext[n] * low[k];
        sum += g * power / factorial;
        power *= delta;
    }
    Ok(alpha * sum)
}

/// Two boundary terms that r² pushes past the N-th function.
fn r2_corrections(n: usize, hr: &[f64], hs: &[f64]) -> f64 {
    let nf = n as f64;
    let lower = if n >= 2 {
        hr[n] * (nf * (nf - 1.0)).sqrt() / 2.0 * hs[n - 2]
    } else {
        0.0
    };
    lower + hr[n + 1] * (nf * (nf + 1.0)).sqrt() / 2.0 * hs[n - 1]
}

/// r² D_N(r,s) minus the corrective terms, unsymmetrized.
pub fn r2_kernel_compact_raw(n: usize, r: f64, s: f64) -> Result<f64> {
    check_count(n, 2)?;
    let hr = crate::hermite::hermite_functions(r, n + 2);
    let hs = crate::hermite::hermite_functions(s, n + 2);
    Ok(r * r * christoffel_darboux(n, r, s)? - r2_corrections(n, &hr, &hs))
}

/// Compact form of the projected r² kernel, averaged over r ↔ s.
pub fn r2_kernel_compact(n: usize, r: f64, s: f64) -> Result<f64> {
    Ok(0.5 * (r2_kernel_compact_raw(n, r, s)? + r2_kernel_compact_raw(n, s, r)?))
}

/// Σ_{ij} φ_i(r) ⟨i|r²|j⟩ φ_j(s) summed term by term.
pub fn r2_kernel_direct(n: usize, r: f64, s: f64) -> f64 {
    let a = crate::hermite::hermite_functions(r, n);
    let b = crate::hermite::hermite_functions(s, n);
    let mut sum = 0.0;
    for i in 0..n {
        sum += a[i] * (i as f64 + 0.5) * b[i];
        if i + 2 < n {
            let c = ((i as f64 + 1.0) * (i as f64 + 2.0)).sqrt() / 2.0;
            sum += c * (a[i] * b[i + 2] + a[i + 2] * b[i]);
        }
    }
    sum
}

/// (r² − ∂²/∂r²) D_N(r, s) with the derivative taken analytically.
pub fn projected_oscillator_compact(n: usize, r: f64, s: f64) -> Result<f64> {
    check_count(n, 1)?;
    let alpha = (n as f64 / 2.0).sqrt();
    let mut hr = vec![0.0; n + 2];
    let mut hs = vec![0.0; n + 2];
    fill_hermite_functions(r, &mut hr);
    fill_hermite_functions(s, &mut hs);
    let nf = n as f64;
    let delta = r - s;
    // D = α u(r) / (r − s), u(t) = φ_{N+1}(t) φ_N(s) − φ_N(t) φ_{N+1}(s)
    let cutoff = 0.5 / (2.0 * nf + 1.0).sqrt();
    let d2 = if delta.abs() >= cutoff {
        let u = hr[n] * hs[n - 1] - hr[n - 1] * hs[n];
        let du = derivative_from_values(&hr, n) * hs[n - 1] - derivative_from_values(&hr, n - 1) * hs[n];
        let ddu = (r * r - (2.0 * nf + 1.0)) * hr[n] * hs[n - 1]
            - (r * r - (2.0 * nf - 1.0)) * hr[n - 1] * hs[n];
        alpha * (ddu / delta - 2.0 * du / (delta * delta) + 2.0 * u / (delta * delta * delta))
    } else {
        // expand u about t = s: ∂²_r D = α Σ_{k≥3} u⁽ᵏ⁾(s) (k−1)(k−2) δ^{k−3} / k!
        const ORDER: usize = 40;
        let top = derivative_sequence(n, s, hs[n], derivative_from_values(&hs, n), ORDER);
        let low = derivative_sequence(n - 1, s, hs[n - 1], derivative_from_values(&hs, n - 1), ORDER);
        let mut sum = 0.0;
        let mut factorial = 2.0;
        let mut power = 1.0;
        for k in 3..=ORDER {
            factorial *= k as f64;
            let u = top[k] * hs[n - 1] - low[k] * hs[n];
            sum += u * (k - 1) as f64 * (k - 2) as f64 * power / factorial;
            power *= delta;
        }
        alpha * sum
    };
    Ok(r * r * christoffel_darboux(n, r, s)? - d2)
}

/// ∫K(r, s) dr for the kernel of `matrix` (identity when absent).
pub fn cut_weight(basis: &BasisSet, matrix: Option<&OperatorMatrix>, s: f64) -> f64 {
    let m = basis.moments();
    let chi = basis.values_at(s);
    match matrix {
        Some(op) => m.dot(&(&op.entries * chi)),
        None => m.dot(&chi),
    }
}

pub fn cut_weight_curve(basis: &BasisSet, matrix: Option<&OperatorMatrix>, axis: Axis) -> CurveSeries {
    let label = match matrix.map(|m| m.kind) {
        Some(OperatorKind::Kinetic) => CurveLabel::KineticWeight,
        _ => CurveLabel::CutWeight,
    };
    let x = axis.points();
    let y = x.iter().map(|&s| cut_weight(basis, matrix, s)).collect();
    CurveSeries { x, y, label }
}

/// Crest K(r, r) and cuts K(·, s) at the grid points nearest to `s_values`.
pub fn crest_and_cuts(kernel: &KernelGrid, s_values: &[f64]) -> Result<(CurveSeries, Vec<CurveSeries>)> {
    let r = kernel.r_axis.points();
    let s = kernel.s_axis.points();
    let mut crest_x = Vec::new();
    let mut crest_y = Vec::new();
    for (i, &x) in r.iter().enumerate() {
        if let Ok(j) = kernel.s_axis.nearest(x) {
            if (s[j] - x).abs() < 1e-9 * kernel.s_axis.step.max(1.0) {
                crest_x.push(x);
                crest_y.push(kernel.values[(i, j)]);
            }
        }
    }
    let mut cuts = Vec::with_capacity(s_values.len());
    for &sv in s_values {
        let j = kernel.s_axis.nearest(sv)?;
        cuts.push(CurveSeries {
            x: r.clone(),
            y: kernel.values.column(j).iter().copied().collect(),
            label: CurveLabel::Cut(s[j]),
        });
    }
    Ok((
        CurveSeries {
            x: crest_x,
            y: crest_y,
            label: CurveLabel::Crest,
        },
        cuts,
    ))
}

/// K(r, r) / D_N(r, r).
pub fn crest_ratio(basis: &BasisSet, matrix: &OperatorMatrix, r: f64) -> Result<f64> {
    let chi = basis.values_at(r);
    let d = chi.norm_squared();
    if d <= CREST_FLOOR {
        return Err(Error::OutsideTrustRegion { r, crest: d });
    }
    Ok(chi.dot(&(&matrix.entries * &chi)) / d)
}

pub fn crest_ratio_curve(basis: &BasisSet, matrix: &OperatorMatrix, axis: Axis) -> Result<CurveSeries> {
    let x = axis.points();
    let y = x
        .iter()
        .map(|&r| crest_ratio(basis, matrix, r))
        .collect::<Result<Vec<_>>>()?;
    Ok(CurveSeries {
        x,
        y,
        label: CurveLabel::CrestRatio,
    })
}

/// Share of Σ|K| within `width` of either diagonal r = s or r = −s.
pub fn diagonal_mass_fraction(kernel: &KernelGrid, width: f64) -> f64 {
    let r = kernel.r_axis.points();
    let s = kernel.s_axis.points();
    let mut near = 0.0;
    let mut total = 0.0;
    for (i, &x) in r.iter().enumerate() {
        for (j, &y) in s.iter().enumerate() {
            let v = kernel.values[(i, j)].abs();
            total += v;
            if (x - y).abs() < width || (x + y).abs() < width {
                near += v;
            }
        }
    }
    if total == 0.0 {
        0.0
    } else {
        near / total
    }
}
