//! Expansion families and their orthonormalization.
//!
//! Every Gaussian-based family is stored as linear combinations of unit-normalized
//! primitives `g_c(r) = π^{-1/4} β^{-1/2} exp(−(r−c)²/(2β²))` of one common width,
//! so overlaps and operator matrices reduce to closed forms on the primitives.

use std::f64::consts::PI;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::hermite::{fill_hermite_functions, hermite_moments};
use crate::spectral::eigen_symmetric_matrix;

/// Largest Gram condition number accepted by orthonormalization and dualization.
pub const MAX_CONDITION: f64 = 1e12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    HarmonicOscillator,
    ShiftedGaussians,
    CenteredGaussians,
    SymmetricPairs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OrthoMethod {
    #[default]
    Lowdin,
    GramSchmidt,
}

/// Declarative description of a basis.
///
/// For `HarmonicOscillator`, `n` is the oscillator cutoff (degrees `0..n`) and
/// `parity` keeps the even or odd degrees among them. For the Gaussian families
/// `n` is the number of functions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisSpec {
    pub family: Family,
    pub n: usize,
    pub beta: f64,
    pub sigma: f64,
    pub parity: Option<Parity>,
    pub ortho: OrthoMethod,
}

impl BasisSpec {
    pub fn harmonic_oscillator(n: usize) -> Self {
        Self {
            family: Family::HarmonicOscillator,
            n,
            beta: 1.0,
            sigma: 1.0,
            parity: None,
            ortho: OrthoMethod::Lowdin,
        }
    }

    pub fn shifted_gaussians(n: usize, beta: f64, sigma: f64) -> Self {
        Self {
            family: Family::ShiftedGaussians,
            n,
            beta,
            sigma,
            parity: None,
            ortho: OrthoMethod::Lowdin,
        }
    }

    pub fn centered_gaussians(n: usize, beta: f64, sigma: f64) -> Self {
        Self {
            family: Family::CenteredGaussians,
            ..Self::shifted_gaussians(n, beta, sigma)
        }
    }

    pub fn symmetric_pairs(n: usize, beta: f64, sigma: f64) -> Self {
        Self {
            family: Family::SymmetricPairs,
            ..Self::shifted_gaussians(n, beta, sigma)
        }
    }

    pub fn with_parity(mut self, parity: Parity) -> Self {
        self.parity = Some(parity);
        self
    }

    pub fn with_ortho(mut self, ortho: OrthoMethod) -> Self {
        self.ortho = ortho;
        self
    }

    pub fn with_beta(mut self, beta: f64) -> Self {
        self.beta = beta;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidBasis(msg));
        if self.n == 0 {
            return bad("n must be at least 1".into());
        }
        if !(self.beta.is_finite() && self.beta > 0.0) {
            return bad(format!("beta must be positive, got {}", self.beta));
        }
        if self.family != Family::HarmonicOscillator {
            if !(self.sigma.is_finite() && self.sigma > 0.0) {
                return bad(format!("sigma must be positive, got {}", self.sigma));
            }
            if self.parity.is_some() {
                return bad("parity selection applies to the oscillator basis only".into());
            }
        }
        if self.family == Family::ShiftedGaussians && !self.n.is_multiple_of(2) {
            return bad(format!("shifted Gaussians need an even count, got {}", self.n));
        }
        if self.family == Family::HarmonicOscillator && self.degrees().is_empty() {
            return bad(format!("no oscillator states of the requested parity below {}", self.n));
        }
        Ok(())
    }

    /// Retained oscillator degrees (empty for Gaussian families).
    pub fn degrees(&self) -> Vec<usize> {
        if self.family != Family::HarmonicOscillator {
            return Vec::new();
        }
        (0..self.n)
            .filter(|d| match self.parity.unwrap_or(Parity::Both) {
                Parity::Even => d % 2 == 0,
                Parity::Odd => d % 2 == 1,
                Parity::Both => true,
            })
            .collect()
    }

    pub fn realize(&self) -> Result<BasisSet> {
        BasisSet::new(*self)
    }
}

/// Raw (generally non-orthogonal) expansion family.
#[derive(Debug, Clone)]
pub enum RawFamily {
    Hermite {
        degrees: Vec<usize>,
        beta: f64,
    },
    /// `raw_i = Σ_k combos[(i, k)] g_{centers[k]}`
    Gaussians {
        centers: Vec<f64>,
        beta: f64,
        combos: DMatrix<f64>,
    },
}

impl RawFamily {
    pub fn len(&self) -> usize {
        match self {
            RawFamily::Hermite { degrees, .. } => degrees.len(),
            RawFamily::Gaussians { combos, .. } => combos.nrows(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn beta(&self) -> f64 {
        match self {
            RawFamily::Hermite { beta, .. } | RawFamily::Gaussians { beta, .. } => *beta,
        }
    }

    /// Raw functions φ_1(r), …, φ_N(r).
    pub fn values_at(&self, r: f64) -> DVector<f64> {
        match self {
            RawFamily::Hermite { degrees, beta } => {
                let max = degrees.last().copied().unwrap_or(0);
                let mut h = vec![0.0; max + 1];
                fill_hermite_functions(r / beta, &mut h);
                let scale = beta.sqrt().recip();
                DVector::from_iterator(degrees.len(), degrees.iter().map(|&d| h[d] * scale))
            }
            RawFamily::Gaussians {
                centers,
                beta,
                combos,
            } => combos * primitive_values(centers, *beta, r),
        }
    }

    /// Matrix of ⟨φ_i|φ_j⟩.
    pub fn gram(&self) -> DMatrix<f64> {
        match self {
            RawFamily::Hermite { degrees, .. } => DMatrix::identity(degrees.len(), degrees.len()),
            RawFamily::Gaussians { beta, .. } => {
                let b = *beta;
                self.gaussian_matrix(|x, y| gaussian_overlap(x, y, b))
                    .expect("gaussian family")
            }
        }
    }

    /// `combos · [f(c_k, c_l)] · combosᵀ` for a closed-form primitive matrix element.
    pub(crate) fn gaussian_matrix(&self, f: impl Fn(f64, f64) -> f64) -> Option<DMatrix<f64>> {
        match self {
            RawFamily::Hermite { .. } => None,
            RawFamily::Gaussians {
                centers, combos, ..
            } => {
                let p = centers.len();
                let prim = DMatrix::from_fn(p, p, |k, l| f(centers[k], centers[l]));
                Some(combos * prim * combos.transpose())
            }
        }
    }

    /// ∫φ_i(r) dr.
    pub fn moments(&self) -> DVector<f64> {
        match self {
            RawFamily::Hermite { degrees, beta } => {
                let max = degrees.last().copied().unwrap_or(0);
                let m = hermite_moments(max + 1);
                DVector::from_iterator(degrees.len(), degrees.iter().map(|&d| m[d] * beta.sqrt()))
            }
            RawFamily::Gaussians {
                centers,
                beta,
                combos,
            } => {
                let one = (2.0 * PI.sqrt() * beta).sqrt();
                combos * DVector::from_element(centers.len(), one)
            }
        }
    }

    /// Half-width beyond which every raw function is negligible.
    pub fn support_half_width(&self) -> f64 {
        match self {
            RawFamily::Hermite { degrees, beta } => {
                let max = degrees.last().copied().unwrap_or(0) as f64;
                beta * ((2.0 * max + 1.0).sqrt() + 8.0)
            }
            RawFamily::Gaussians { centers, beta, .. } => {
                centers.iter().fold(0.0f64, |a, c| a.max(c.abs())) + 8.0 * beta
            }
        }
    }
}

fn primitive_values(centers: &[f64], beta: f64, r: f64) -> DVector<f64> {
    let norm = PI.powf(-0.25) / beta.sqrt();
    DVector::from_iterator(
        centers.len(),
        centers.iter().map(|c| {
            let d = (r - c) / beta;
            norm * (-0.5 * d * d).exp()
        }),
    )
}

/// ⟨g_a|g_b⟩ = exp(−(a−b)²/(4β²))
pub(crate) fn gaussian_overlap(a: f64, b: f64, beta: f64) -> f64 {
    let d = a - b;
    (-d * d / (4.0 * beta * beta)).exp()
}

/// ⟨g_a|−d²/dr²|g_b⟩
pub(crate) fn gaussian_kinetic(a: f64, b: f64, beta: f64) -> f64 {
    let d2 = (a - b) * (a - b);
    let b2 = beta * beta;
    (1.0 / (2.0 * b2)) * (1.0 - d2 / (2.0 * b2)) * gaussian_overlap(a, b, beta)
}

/// ⟨g_a|r²|g_b⟩
pub(crate) fn gaussian_r2(a: f64, b: f64, beta: f64) -> f64 {
    let mid = 0.5 * (a + b);
    (0.5 * beta * beta + mid * mid) * gaussian_overlap(a, b, beta)
}

/// ⟨g_a|e^{−k r²}|g_b⟩
pub(crate) fn gaussian_exp(a: f64, b: f64, beta: f64, k: f64) -> f64 {
    let mid = 0.5 * (a + b);
    let kb = k * beta * beta;
    gaussian_overlap(a, b, beta) / (1.0 + kb).sqrt() * (-k * mid * mid / (1.0 + kb)).exp()
}

/// Raw family of a validated spec, together with its Gram matrix via [`RawFamily::gram`].
pub fn build_raw_family(spec: &BasisSpec) -> Result<RawFamily> {
    spec.validate()?;
    let n = spec.n;
    let beta = spec.beta;
    let sigma = spec.sigma;
    Ok(match spec.family {
        Family::HarmonicOscillator => RawFamily::Hermite {
            degrees: spec.degrees(),
            beta,
        },
        Family::ShiftedGaussians | Family::CenteredGaussians => {
            let centers = (1..=n)
                .map(|i| i as f64 * sigma - (n as f64 + 1.0) * sigma / 2.0)
                .collect();
            RawFamily::Gaussians {
                centers,
                beta,
                combos: DMatrix::identity(n, n),
            }
        }
        Family::SymmetricPairs => {
            let rc: Vec<f64> = (1..=n).map(|i| (i as f64 - 0.5) * sigma).collect();
            let mut centers = rc.clone();
            centers.extend(rc.iter().map(|c| -c));
            let mut combos = DMatrix::zeros(n, 2 * n);
            for (i, c) in rc.iter().enumerate() {
                // ‖g_c + g_{−c}‖² = 2 (1 + ⟨g_c|g_{−c}⟩)
                let norm = (2.0 * (1.0 + gaussian_overlap(*c, -c, beta))).sqrt();
                combos[(i, i)] = 1.0 / norm;
                combos[(i, n + i)] = 1.0 / norm;
            }
            RawFamily::Gaussians {
                centers,
                beta,
                combos,
            }
        }
    })
}

/// Ratio of extreme Gram eigenvalues (infinite if the matrix is not positive definite).
pub fn condition_number(gram: &DMatrix<f64>) -> Result<f64> {
    let s = eigen_symmetric_matrix(gram)?;
    let lo = s.eigenvalues[0];
    let hi = *s.eigenvalues.last().unwrap();
    Ok(if lo <= 0.0 { f64::INFINITY } else { hi / lo })
}

/// Coefficient matrix C with `C S Cᵀ = I` for the Gram matrix S.
pub fn orthonormalize(gram: &DMatrix<f64>, method: OrthoMethod) -> Result<DMatrix<f64>> {
    let spectrum = eigen_symmetric_matrix(gram)?;
    let lo = spectrum.eigenvalues[0];
    let hi = *spectrum.eigenvalues.last().unwrap();
    let condition = if lo <= 0.0 { f64::INFINITY } else { hi / lo };
    if condition > MAX_CONDITION {
        return Err(Error::IllConditioned {
            condition,
            limit: MAX_CONDITION,
        });
    }
    Ok(match method {
        OrthoMethod::Lowdin => {
            let u = &spectrum.vectors;
            let d = DMatrix::from_diagonal(&DVector::from_iterator(
                spectrum.len(),
                spectrum.eigenvalues.iter().map(|l| l.sqrt().recip()),
            ));
            u * d * u.transpose()
        }
        OrthoMethod::GramSchmidt => modified_gram_schmidt(gram),
    })
}

/// Rows of the result are the S-orthonormal combinations; lower triangular.
fn modified_gram_schmidt(gram: &DMatrix<f64>) -> DMatrix<f64> {
    let n = gram.nrows();
    let mut c = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        let mut v = DVector::<f64>::zeros(n);
        v[i] = 1.0;
        // two passes keep the result orthonormal to rounding for moderate conditioning
        for _ in 0..2 {
            for j in 0..i {
                let cj = c.row(j).transpose();
                let proj = (gram * &v).dot(&cj);
                v -= cj * proj;
            }
        }
        let norm = (gram * &v).dot(&v).sqrt();
        c.set_row(i, &(v / norm).transpose());
    }
    c
}

/// Dual family τ_i = Σ_j D_ij φ_j with ⟨τ_i|φ_j⟩ = δ_ij.
#[derive(Debug, Clone)]
pub struct DualBasis {
    pub coeff: DMatrix<f64>,
}

pub fn dual_basis(gram: &DMatrix<f64>) -> Result<DualBasis> {
    let spectrum = eigen_symmetric_matrix(gram)?;
    let lo = spectrum.eigenvalues[0];
    let hi = *spectrum.eigenvalues.last().unwrap();
    let condition = if lo <= 0.0 { f64::INFINITY } else { hi / lo };
    if condition > MAX_CONDITION {
        return Err(Error::IllConditioned {
            condition,
            limit: MAX_CONDITION,
        });
    }
    let u = &spectrum.vectors;
    let d = DMatrix::from_diagonal(&DVector::from_iterator(
        spectrum.len(),
        spectrum.eigenvalues.iter().map(|l| l.recip()),
    ));
    Ok(DualBasis {
        coeff: u * d * u.transpose(),
    })
}

#[derive(Debug)]
struct Inner {
    spec: BasisSpec,
    raw: RawFamily,
    gram: DMatrix<f64>,
    coeff: DMatrix<f64>,
    condition: f64,
}

/// Realized orthonormal family χ_i = Σ_j C_ij φ_j. Cheap to clone.
#[derive(Debug, Clone)]
pub struct BasisSet {
    inner: Arc<Inner>,
}

impl BasisSet {
    pub fn new(spec: BasisSpec) -> Result<Self> {
        let raw = build_raw_family(&spec)?;
        let gram = raw.gram();
        let (coeff, condition) = match raw {
            RawFamily::Hermite { .. } => (DMatrix::identity(raw.len(), raw.len()), 1.0),
            RawFamily::Gaussians { .. } => {
                let condition = condition_number(&gram)?;
                (orthonormalize(&gram, spec.ortho)?, condition)
            }
        };
        Ok(Self {
            inner: Arc::new(Inner {
                spec,
                raw,
                gram,
                coeff,
                condition,
            }),
        })
    }

    pub fn spec(&self) -> &BasisSpec {
        &self.inner.spec
    }

    pub fn raw(&self) -> &RawFamily {
        &self.inner.raw
    }

    pub fn gram(&self) -> &DMatrix<f64> {
        &self.inner.gram
    }

    pub fn coeff(&self) -> &DMatrix<f64> {
        &self.inner.coeff
    }

    pub fn condition(&self) -> f64 {
        self.inner.condition
    }

    pub fn len(&self) -> usize {
        self.inner.raw.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_oscillator(&self) -> bool {
        matches!(self.inner.raw, RawFamily::Hermite { .. })
    }

    /// Parity of each χ_i when the family has definite parity.
    pub fn parities(&self) -> Option<Vec<Parity>> {
        match self.inner.spec.family {
            Family::HarmonicOscillator => Some(
                self.inner
                    .spec
                    .degrees()
                    .iter()
                    .map(|d| if d % 2 == 0 { Parity::Even } else { Parity::Odd })
                    .collect(),
            ),
            Family::SymmetricPairs => Some(vec![Parity::Even; self.len()]),
            _ => None,
        }
    }

    /// (χ_1(r), …, χ_N(r))
    pub fn values_at(&self, r: f64) -> DVector<f64> {
        let raw = self.inner.raw.values_at(r);
        if self.is_oscillator() {
            raw
        } else {
            &self.inner.coeff * raw
        }
    }

    /// Columns are `values_at` for each point.
    pub fn values_on(&self, points: &[f64]) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.len(), points.len());
        for (j, &r) in points.iter().enumerate() {
            m.set_column(j, &self.values_at(r));
        }
        m
    }

    /// χ_i(r) with 1-based `i`.
    pub fn evaluate(&self, i: usize, r: f64) -> Result<f64> {
        if i == 0 || i > self.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.len(),
            });
        }
        Ok(self.values_at(r)[i - 1])
    }

    /// ∫χ_i(r) dr.
    pub fn moments(&self) -> DVector<f64> {
        &self.inner.coeff * self.inner.raw.moments()
    }

    /// `C M Cᵀ` for a matrix expressed on the raw family.
    pub fn to_orthonormal(&self, raw_matrix: &DMatrix<f64>) -> DMatrix<f64> {
        let c = &self.inner.coeff;
        let m = c * raw_matrix * c.transpose();
        0.5 * (&m + m.transpose())
    }

    pub fn dual(&self) -> Result<DualBasis> {
        dual_basis(&self.inner.gram)
    }

    pub fn support_half_width(&self) -> f64 {
        self.inner.raw.support_half_width()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::integrate;

    fn max_dev_from_identity(m: &DMatrix<f64>) -> f64 {
        (m - DMatrix::identity(m.nrows(), m.ncols())).amax()
    }

    #[test]
    fn spec_validation() {
        assert!(BasisSpec::harmonic_oscillator(0).validate().is_err());
        assert!(BasisSpec::shifted_gaussians(3, 1.0, 1.0).validate().is_err());
        assert!(BasisSpec::shifted_gaussians(4, 0.0, 1.0).validate().is_err());
        assert!(BasisSpec::centered_gaussians(3, 0.1, -0.1).validate().is_err());
        assert!(BasisSpec::harmonic_oscillator(1)
            .with_parity(Parity::Odd)
            .validate()
            .is_err());
        assert!(BasisSpec::symmetric_pairs(3, 0.5, 0.5)
            .with_parity(Parity::Even)
            .validate()
            .is_err());
        assert!(BasisSpec::centered_gaussians(3, 0.1, 0.1).validate().is_ok());
    }

    #[test]
    fn oscillator_is_already_orthonormal() {
        let b = BasisSpec::harmonic_oscillator(12).realize().unwrap();
        assert_eq!(b.coeff(), &DMatrix::identity(12, 12));
        assert_eq!(b.gram(), &DMatrix::identity(12, 12));
        let v = b.evaluate(1, 0.0).unwrap();
        assert!((v - PI.powf(-0.25)).abs() < 1e-15);
        assert!(b.evaluate(13, 0.0).is_err());
        assert!(b.evaluate(0, 0.0).is_err());
    }

    #[test]
    fn parity_filtering_keeps_requested_degrees() {
        let even = BasisSpec::harmonic_oscillator(10).with_parity(Parity::Even);
        assert_eq!(even.degrees(), vec![0, 2, 4, 6, 8]);
        let odd = BasisSpec::harmonic_oscillator(10).with_parity(Parity::Odd);
        assert_eq!(odd.degrees(), vec![1, 3, 5, 7, 9]);
    }

    #[test]
    fn shifted_pair_overlap() {
        let raw = build_raw_family(&BasisSpec::shifted_gaussians(2, 1.0, 1.0)).unwrap();
        let g = raw.gram();
        assert!((g[(0, 1)] - (-0.25f64).exp()).abs() < 1e-15);
        assert!((g[(0, 1)] - 0.778_800_8).abs() < 1e-7);
    }

    #[test]
    fn centers_are_symmetric_about_origin() {
        if let RawFamily::Gaussians { centers, .. } =
            build_raw_family(&BasisSpec::shifted_gaussians(6, 1.0, 1.0)).unwrap()
        {
            assert_eq!(centers, vec![-2.5, -1.5, -0.5, 0.5, 1.5, 2.5]);
        } else {
            panic!("expected gaussians");
        }
    }

    #[test]
    fn pair_function_is_unit_normalized_by_quadrature() {
        let raw = build_raw_family(&BasisSpec::symmetric_pairs(1, 0.5, 0.5)).unwrap();
        let norm = integrate(|r| raw.values_at(r)[0].powi(2), 10.0, 1e-12).unwrap();
        assert!((norm - 1.0).abs() < 1e-10);
        assert!((raw.gram()[(0, 0)] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn gram_closed_form_matches_quadrature() {
        let raw = build_raw_family(&BasisSpec::symmetric_pairs(4, 0.5, 0.5)).unwrap();
        let g = raw.gram();
        for i in 0..4 {
            for j in 0..4 {
                let q = integrate(|r| raw.values_at(r)[i] * raw.values_at(r)[j], 12.0, 1e-12)
                    .unwrap();
                assert!((q - g[(i, j)]).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn identity_gram_gives_identity_coefficients() {
        let id = DMatrix::<f64>::identity(4, 4);
        for m in [OrthoMethod::Lowdin, OrthoMethod::GramSchmidt] {
            assert!(max_dev_from_identity(&orthonormalize(&id, m).unwrap()) < 1e-15);
        }
        assert!(max_dev_from_identity(&dual_basis(&id).unwrap().coeff) < 1e-15);
    }

    #[test]
    fn two_by_two_lowdin_and_inverse() {
        let a = 0.6;
        let s = DMatrix::from_row_slice(2, 2, &[1.0, a, a, 1.0]);
        let c = orthonormalize(&s, OrthoMethod::Lowdin).unwrap();
        assert!((c[(0, 1)] - c[(1, 0)]).abs() < 1e-15);
        assert!(max_dev_from_identity(&(&c * &s * c.transpose())) < 1e-12);
        let d = dual_basis(&s).unwrap().coeff;
        let expect = DMatrix::from_row_slice(2, 2, &[1.0, -a, -a, 1.0]) / (1.0 - a * a);
        assert!((d - expect).amax() < 1e-12);
    }

    #[test]
    fn fifty_shifted_gaussians_orthonormalize_both_ways() {
        let raw = build_raw_family(&BasisSpec::shifted_gaussians(50, 1.0, 1.0)).unwrap();
        let s = raw.gram();
        let c1 = orthonormalize(&s, OrthoMethod::Lowdin).unwrap();
        let c2 = orthonormalize(&s, OrthoMethod::GramSchmidt).unwrap();
        assert!(max_dev_from_identity(&(&c1 * &s * c1.transpose())) < 1e-10);
        assert!(max_dev_from_identity(&(&c2 * &s * c2.transpose())) < 1e-10);
        for i in 0..50 {
            for j in i + 1..50 {
                assert_eq!(c2[(i, j)], 0.0);
            }
        }
        // same span: C₁ S C₂ᵀ is orthogonal
        let u = &c1 * &s * c2.transpose();
        assert!(max_dev_from_identity(&(&u * u.transpose())) < 1e-9);
        let d = dual_basis(&s).unwrap().coeff;
        assert!(max_dev_from_identity(&(d * &s)) < 1e-9);
    }

    #[test]
    fn near_dependent_gaussians_are_rejected() {
        let spec = BasisSpec::shifted_gaussians(20, 1.0, 0.05);
        assert!(matches!(spec.realize(), Err(Error::IllConditioned { .. })));
        let raw = build_raw_family(&spec).unwrap();
        assert!(matches!(dual_basis(&raw.gram()), Err(Error::IllConditioned { .. })));
    }

    #[test]
    fn realized_sets_are_orthonormal_by_quadrature() {
        let specs = [
            BasisSpec::harmonic_oscillator(8),
            BasisSpec::shifted_gaussians(6, 1.0, 1.0),
            BasisSpec::shifted_gaussians(6, 1.0, 1.0).with_ortho(OrthoMethod::GramSchmidt),
            BasisSpec::centered_gaussians(5, 0.1, 0.1),
            BasisSpec::symmetric_pairs(5, 0.5, 0.5),
        ];
        for spec in specs {
            let b = spec.realize().unwrap();
            let l = b.support_half_width();
            let n = b.len();
            for i in 0..n {
                for j in i..n {
                    let q = integrate(|r| {
                        let v = b.values_at(r);
                        v[i] * v[j]
                    }, l, 1e-11)
                    .unwrap();
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert!((q - expect).abs() < 1e-8, "{spec:?} ({i},{j}) = {q}");
                }
            }
        }
    }

    #[test]
    fn parity_families_have_definite_symmetry() {
        let ho = BasisSpec::harmonic_oscillator(9).realize().unwrap();
        let pairs = BasisSpec::symmetric_pairs(6, 0.5, 0.5).realize().unwrap();
        for b in [ho, pairs] {
            let par = b.parities().unwrap();
            for r in [0.3, 1.7, 4.2] {
                let p = b.values_at(r);
                let m = b.values_at(-r);
                for i in 0..b.len() {
                    let sign = if par[i] == Parity::Even { 1.0 } else { -1.0 };
                    assert!((m[i] - sign * p[i]).abs() < 1e-13);
                }
            }
        }
    }

    #[test]
    fn moments_match_quadrature() {
        for spec in [
            BasisSpec::harmonic_oscillator(7),
            BasisSpec::shifted_gaussians(4, 1.0, 1.0),
            BasisSpec::symmetric_pairs(3, 0.5, 0.5),
        ] {
            let b = spec.realize().unwrap();
            let m = b.moments();
            for i in 0..b.len() {
                let q = integrate(|r| b.values_at(r)[i], b.support_half_width(), 1e-12).unwrap();
                assert!((q - m[i]).abs() < 1e-9);
            }
        }
    }
}
