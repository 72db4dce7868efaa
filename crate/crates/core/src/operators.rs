//! Matrix representations ⟨i|O|j⟩ on a realized basis.

use nalgebra::{DMatrix, DVector};

use crate::basis::{gaussian_exp, gaussian_kinetic, gaussian_r2, BasisSet, RawFamily};
use crate::error::{Error, Result};
use crate::quadrature::{gauss_hermite_internal, Scheme};
use crate::spectral::max_asymmetry;

pub use crate::quadrature::{gauss_hermite_rule, trapezoid_rule, QuadratureRule};

/// Largest entry change allowed when the quadrature resolution is doubled.
pub const QUADRATURE_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorKind {
    Kinetic,
    PositionSquared,
    LocalPotential,
    Separable,
    Hamiltonian,
    Custom,
}

#[derive(Debug, Clone)]
pub struct OperatorMatrix {
    pub basis: BasisSet,
    pub entries: DMatrix<f64>,
    pub kind: OperatorKind,
}

impl OperatorMatrix {
    pub fn new(basis: BasisSet, entries: DMatrix<f64>, kind: OperatorKind) -> Result<Self> {
        if entries.nrows() != basis.len() || entries.ncols() != basis.len() {
            return Err(Error::DimensionMismatch {
                expected: basis.len(),
                actual: entries.nrows().max(entries.ncols()),
            });
        }
        let asym = max_asymmetry(&entries);
        if asym > 1e-12 * entries.amax().max(1.0) {
            return Err(Error::NotSymmetric(asym));
        }
        Ok(Self {
            basis,
            entries,
            kind,
        })
    }

    pub fn len(&self) -> usize {
        self.entries.nrows()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Sum of two operators on the same basis.
    pub fn plus(&self, other: &OperatorMatrix, kind: OperatorKind) -> Result<Self> {
        if other.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                actual: other.len(),
            });
        }
        Self::new(self.basis.clone(), &self.entries + &other.entries, kind)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            basis: self.basis.clone(),
            entries: &self.entries * factor,
            kind: OperatorKind::Custom,
        }
    }
}

/// v(r) = Σ_k c_k exp(−a_k r²)
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialSpec {
    terms: Vec<(f64, f64)>,
}

impl PotentialSpec {
    pub fn new(terms: Vec<(f64, f64)>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidPotential("at least one term is required".into()));
        }
        for &(c, a) in &terms {
            if !c.is_finite() || !(a.is_finite() && a > 0.0) {
                return Err(Error::InvalidPotential(format!(
                    "term {c}·exp(−{a} r²) needs finite c and a > 0"
                )));
            }
        }
        Ok(Self { terms })
    }

    pub fn gaussian(c: f64, a: f64) -> Result<Self> {
        Self::new(vec![(c, a)])
    }

    pub fn terms(&self) -> &[(f64, f64)] {
        &self.terms
    }

    pub fn eval(&self, r: f64) -> f64 {
        self.terms.iter().map(|(c, a)| c * (-a * r * r).exp()).sum()
    }

    pub fn max_abs_on(&self, points: &[f64]) -> f64 {
        points.iter().fold(0.0f64, |m, &r| m.max(self.eval(r).abs()))
    }
}

fn oscillator_band(degrees: &[usize], sign: f64) -> DMatrix<f64> {
    let n = degrees.len();
    DMatrix::from_fn(n, n, |i, j| {
        let (a, b) = (degrees[i], degrees[j]);
        if a == b {
            a as f64 + 0.5
        } else if a.abs_diff(b) == 2 {
            let m = a.min(b) as f64;
            sign * ((m + 1.0) * (m + 2.0)).sqrt() / 2.0
        } else {
            0.0
        }
    })
}

/// ⟨i|−d²/dr²|j⟩
pub fn kinetic_matrix(basis: &BasisSet) -> OperatorMatrix {
    let entries = match basis.raw() {
        RawFamily::Hermite { degrees, beta } => oscillator_band(degrees, -1.0) / (beta * beta),
        raw @ RawFamily::Gaussians { beta, .. } => {
            let b = *beta;
            let m = raw.gaussian_matrix(|x, y| gaussian_kinetic(x, y, b)).unwrap();
            basis.to_orthonormal(&m)
        }
    };
    OperatorMatrix {
        basis: basis.clone(),
        entries,
        kind: OperatorKind::Kinetic,
    }
}

/// ⟨i|r²|j⟩
pub fn position_squared_matrix(basis: &BasisSet) -> OperatorMatrix {
    let entries = match basis.raw() {
        RawFamily::Hermite { degrees, beta } => oscillator_band(degrees, 1.0) * (beta * beta),
        raw @ RawFamily::Gaussians { beta, .. } => {
            let b = *beta;
            let m = raw.gaussian_matrix(|x, y| gaussian_r2(x, y, b)).unwrap();
            basis.to_orthonormal(&m)
        }
    };
    OperatorMatrix {
        basis: basis.clone(),
        entries,
        kind: OperatorKind::PositionSquared,
    }
}

/// −d²/dr² + r²
pub fn oscillator_matrix(basis: &BasisSet) -> OperatorMatrix {
    let t = kinetic_matrix(basis);
    let r = position_squared_matrix(basis);
    OperatorMatrix {
        basis: basis.clone(),
        entries: t.entries + r.entries,
        kind: OperatorKind::Hamiltonian,
    }
}

/// Quadrature used by default for a basis: Gauss–Hermite for the oscillator family,
/// a fine trapezoid covering every Gaussian otherwise.
pub fn default_rule(basis: &BasisSet) -> Result<QuadratureRule> {
    let n = basis.len();
    match basis.raw() {
        RawFamily::Hermite { degrees, .. } => {
            let top = degrees.last().copied().unwrap_or(0) + 1;
            let m = (2 * top.max(n) + 20).clamp(64, crate::quadrature::MAX_ORDER);
            gauss_hermite_rule(m)
        }
        RawFamily::Gaussians { beta, .. } => {
            let l = (1.5 * (n as f64).sqrt() + 10.0).max(basis.support_half_width());
            trapezoid_rule(l, (beta / 10.0).min(0.01))
        }
    }
}

/// Raw-family matrix of a Gaussian-sum potential with the given rule.
fn potential_raw(raw: &RawFamily, v: &PotentialSpec, rule: &QuadratureRule) -> DMatrix<f64> {
    let n = raw.len();
    match (raw, rule.scheme) {
        (RawFamily::Hermite { degrees, beta }, Scheme::GaussHermite) => {
            // φ_a φ_b e^{−a′x²} = p(x) e^{−(1+a′)x²}: rescale the nodes per term
            let top = degrees.last().copied().unwrap_or(0);
            let mut h = vec![0.0; top + 1];
            let mut m = DMatrix::zeros(n, n);
            for &(c, a) in v.terms() {
                if c == 0.0 {
                    continue;
                }
                let ap = a * beta * beta;
                let s = (1.0 + ap).sqrt();
                let mut vals = DMatrix::zeros(n, rule.len());
                let mut signs = vec![0.0; rule.len()];
                for (k, (&y, &pw)) in rule.nodes.iter().zip(&rule.plain_weights).enumerate() {
                    crate::hermite::fill_hermite_functions(y / s, &mut h);
                    let w = c * pw * (-y * y * ap / (1.0 + ap)).exp() / s;
                    signs[k] = w.signum();
                    let root = w.abs().sqrt();
                    for (i, &d) in degrees.iter().enumerate() {
                        vals[(i, k)] = h[d] * root;
                    }
                }
                let sq = quadratic_form(&vals, rule, |k| signs[k]);
                m += sq;
            }
            m
        }
        _ => {
            let scale = match raw {
                RawFamily::Hermite { beta, .. } if rule.scheme == Scheme::GaussHermite => *beta,
                _ => 1.0,
            };
            let mut vals = DMatrix::zeros(n, rule.len());
            let mut signs = vec![0.0; rule.len()];
            for (k, (&x, &pw)) in rule.nodes.iter().zip(&rule.plain_weights).enumerate() {
                let r = x * scale;
                let w = pw * scale * v.eval(r);
                signs[k] = w.signum();
                vals.set_column(k, &(raw.values_at(r) * w.abs().sqrt()));
            }
            quadratic_form(&vals, rule, |k| signs[k])
        }
    }
}

/// Σ_k sign_k · u_k u_kᵀ for the columns u_k of `vals`.
fn quadratic_form(vals: &DMatrix<f64>, rule: &QuadratureRule, sign: impl Fn(usize) -> f64) -> DMatrix<f64> {
    let mut signed = vals.clone();
    for k in 0..rule.len() {
        let s = sign(k);
        if s < 0.0 {
            signed.column_mut(k).neg_mut();
        } else if s == 0.0 {
            signed.column_mut(k).fill(0.0);
        }
    }
    let m = &signed * vals.transpose();
    0.5 * (&m + m.transpose())
}

/// ⟨i|v|j⟩ by quadrature, accepted only if doubling the resolution changes no
/// entry by more than [`QUADRATURE_TOLERANCE`]. Gaussian families are
/// additionally checked against the exact Gaussian-product formula.
pub fn local_potential_matrix(
    basis: &BasisSet,
    v: &PotentialSpec,
    rule: &QuadratureRule,
) -> Result<OperatorMatrix> {
    let raw = basis.raw();
    let coarse = potential_raw(raw, v, rule);
    let fine = potential_raw(raw, v, &refine(rule)?);
    let diff = (&coarse - &fine).amax();
    if diff > QUADRATURE_TOLERANCE {
        return Err(Error::QuadratureFailure {
            difference: diff,
            tolerance: QUADRATURE_TOLERANCE,
        });
    }
    if let RawFamily::Gaussians { beta, .. } = raw {
        let b = *beta;
        let exact = raw
            .gaussian_matrix(|x, y| {
                v.terms()
                    .iter()
                    .map(|&(c, a)| c * gaussian_exp(x, y, b, a))
                    .sum()
            })
            .unwrap();
        let diff = (&exact - &fine).amax();
        if diff > QUADRATURE_TOLERANCE {
            return Err(Error::QuadratureFailure {
                difference: diff,
                tolerance: QUADRATURE_TOLERANCE,
            });
        }
    }
    Ok(OperatorMatrix {
        basis: basis.clone(),
        entries: basis.to_orthonormal(&fine),
        kind: OperatorKind::LocalPotential,
    })
}

fn refine(rule: &QuadratureRule) -> Result<QuadratureRule> {
    match rule.scheme {
        Scheme::GaussHermite => {
            gauss_hermite_internal((2 * rule.len()).min(1200)).map(|r| (*r).clone())
        }
        Scheme::Trapezoid => rule.refined(),
    }
}

/// Form-factor overlaps g_i = ∫χ_i(r) ξ(r) dr, checked at doubled resolution.
pub fn separable_projection(
    basis: &BasisSet,
    xi: impl Fn(f64) -> f64,
    rule: &QuadratureRule,
) -> Result<DVector<f64>> {
    let project = |rule: &QuadratureRule| {
        let scale = if rule.scheme == Scheme::GaussHermite {
            basis.raw().beta()
        } else {
            1.0
        };
        let mut g = DVector::zeros(basis.len());
        for (&x, &w) in rule.nodes.iter().zip(&rule.plain_weights) {
            let r = x * scale;
            let f = xi(r);
            if f != 0.0 {
                g += basis.values_at(r) * (w * scale * f);
            }
        }
        g
    };
    let coarse = project(rule);
    let fine = project(&refine(rule)?);
    let diff = (&coarse - &fine).amax();
    if diff > QUADRATURE_TOLERANCE {
        return Err(Error::QuadratureFailure {
            difference: diff,
            tolerance: QUADRATURE_TOLERANCE,
        });
    }
    Ok(fine)
}

/// Rank-one operator g gᵀ.
pub fn separable_matrix(basis: &BasisSet, g: &DVector<f64>) -> Result<OperatorMatrix> {
    if g.len() != basis.len() {
        return Err(Error::DimensionMismatch {
            expected: basis.len(),
            actual: g.len(),
        });
    }
    Ok(OperatorMatrix {
        basis: basis.clone(),
        entries: g * g.transpose(),
        kind: OperatorKind::Separable,
    })
}

/// T + v with the default rule.
pub fn hamiltonian_matrix(basis: &BasisSet, v: &PotentialSpec) -> Result<OperatorMatrix> {
    let rule = default_rule(basis)?;
    let pot = local_potential_matrix(basis, v, &rule)?;
    let t = kinetic_matrix(basis);
    Ok(OperatorMatrix {
        basis: basis.clone(),
        entries: t.entries + pot.entries,
        kind: OperatorKind::Hamiltonian,
    })
}
