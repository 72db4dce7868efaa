//! Square-normalized Hermite functions (harmonic oscillator eigenstates).
//!
//! Degrees are 0-based here: `φ_0(r) = π^{-1/4} e^{-r²/2}`. Values come from the
//! three-term recurrence
//!
//! ```text
//! φ_{k+1}(r) = √(2/(k+1)) r φ_k(r) − √(k/(k+1)) φ_{k−1}(r)
//! ```
//!
//! run on the polynomial part with periodic rescaling, so the Gaussian factor is
//! applied last and large |r| never underflows the seed.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Largest degree accepted by [`hermite_function`].
pub const MAX_DEGREE: usize = 500;

const RESCALE: f64 = 1e150;

/// `π^{-1/4}`
pub fn pi_quarter_inv() -> f64 {
    PI.powf(-0.25)
}

/// Hermite function of the given degree at `r`.
pub fn hermite_function(degree: usize, r: f64) -> Result<f64> {
    if degree > MAX_DEGREE {
        return Err(Error::UnsupportedDegree {
            degree,
            max: MAX_DEGREE,
        });
    }
    let mut values = vec![0.0; degree + 1];
    fill_hermite_functions(r, &mut values);
    Ok(values[degree])
}

/// Values φ_0(r), …, φ_{count−1}(r).
pub fn hermite_functions(r: f64, count: usize) -> Vec<f64> {
    let mut values = vec![0.0; count];
    fill_hermite_functions(r, &mut values);
    values
}

/// Fills `out[k] = φ_k(r)` for every slot of `out`.
pub fn fill_hermite_functions(r: f64, out: &mut [f64]) {
    if out.is_empty() {
        return;
    }
    let half_sq = 0.5 * r * r;
    let mut log_scale = 0.0;
    let mut factor = (-half_sq).exp();
    let mut prev = 0.0;
    let mut cur = pi_quarter_inv();
    out[0] = cur * factor;
    for k in 0..out.len() - 1 {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * r * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE {
            cur /= RESCALE;
            prev /= RESCALE;
            log_scale += RESCALE.ln();
            factor = (log_scale - half_sq).exp();
        }
        out[k + 1] = cur * factor;
    }
}

/// First derivative φ_n′(r) from neighbouring values: `values` must hold degrees up to n+1.
pub fn derivative_from_values(values: &[f64], n: usize) -> f64 {
    let nf = n as f64;
    let lower = if n > 0 {
        (nf / 2.0).sqrt() * values[n - 1]
    } else {
        0.0
    };
    lower - ((nf + 1.0) / 2.0).sqrt() * values[n + 1]
}

/// Derivatives φ_n^{(k)}(r) for k = 0..=order, generated from the oscillator
/// equation φ″ = (r² − (2n+1)) φ differentiated repeatedly.
pub fn derivative_sequence(n: usize, r: f64, value: f64, first: f64, order: usize) -> Vec<f64> {
    let c = 2.0 * n as f64 + 1.0;
    let mut d = Vec::with_capacity(order + 1);
    d.push(value);
    if order >= 1 {
        d.push(first);
    }
    // φ^{(k+2)} = (r² − c) φ^{(k)} + 2k r φ^{(k−1)} + k(k−1) φ^{(k−2)}
    for k in 0..order.saturating_sub(1) {
        let kf = k as f64;
        let mut next = (r * r - c) * d[k];
        if k >= 1 {
            next += 2.0 * kf * r * d[k - 1];
        }
        if k >= 2 {
            next += kf * (kf - 1.0) * d[k - 2];
        }
        d.push(next);
    }
    d
}

/// Integrals ∫φ_n(r) dr for n = 0..count.
///
/// Odd degrees vanish; even degrees follow `m_n = √((n−1)/n) m_{n−2}` from `m_0 = √2 π^{1/4}`.
pub fn hermite_moments(count: usize) -> Vec<f64> {
    let mut m = vec![0.0; count];
    if count == 0 {
        return m;
    }
    m[0] = 2f64.sqrt() * PI.powf(0.25);
    let mut n = 2;
    while n < count {
        let nf = n as f64;
        m[n] = ((nf - 1.0) / nf).sqrt() * m[n - 2];
        n += 2;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn ground_state_at_origin() {
        assert_relative_eq!(hermite_function(0, 0.0).unwrap(), 0.751_125_544_464_942_5, epsilon = 1e-15);
        assert_eq!(hermite_function(1, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn degree_two_closed_form() {
        for r in [0.5, 1.0, 2.0] {
            let exact = pi_quarter_inv() * (2.0 * r * r - 1.0) * (-r * r / 2.0).exp() / 2f64.sqrt();
            assert!((hermite_function(2, r).unwrap() - exact).abs() < 1e-12);
        }
    }

    #[test]
    fn degree_one_has_factor_r() {
        for r in [-1.5, 0.3, 2.0] {
            let exact = 2f64.sqrt() * pi_quarter_inv() * r * (-r * r / 2.0).exp();
            assert!((hermite_function(1, r).unwrap() - exact).abs() < 1e-14);
        }
    }

    #[test]
    fn rejects_large_degree() {
        assert!(matches!(
            hermite_function(501, 1.0),
            Err(Error::UnsupportedDegree { degree: 501, .. })
        ));
    }

    // Reference values from 60-digit evaluation of H_n(r) e^{-r²/2} / √(2ⁿ n! √π).
    #[test]
    fn high_degree_matches_multiprecision() {
        let cases = [
            (200, 0.5, -0.148_508_257_896_247_00),
            (200, 3.3, -0.176_260_028_489_800_78),
            (200, 10.25, 0.082_984_600_399_138_352),
            (200, 19.0, -0.291_503_571_982_066_06),
            (200, 25.0, 8.686_156_931_994_076_7e-23),
            (200, -7.7, 0.163_518_997_194_971_40),
            (500, 12.5, -0.013_765_226_201_198_170),
        ];
        for (n, r, exact) in cases {
            let v = hermite_function(n, r).unwrap();
            assert!(v.is_finite());
            assert!(((v - exact) / exact).abs() < 1e-9, "n={n} r={r}: {v} vs {exact}");
        }
    }

    #[test]
    fn far_tail_underflows_cleanly() {
        let v = hermite_functions(60.0, 300);
        assert!(v.iter().all(|x| x.is_finite()));
        assert_eq!(v[0], 0.0);
    }

    #[test]
    fn derivative_sequence_matches_recurrence_derivative() {
        let r = 0.7;
        let vals = hermite_functions(r, 12);
        for n in 0..10 {
            let d1 = derivative_from_values(&vals, n);
            let seq = derivative_sequence(n, r, vals[n], d1, 2);
            let d2 = (r * r - (2 * n + 1) as f64) * vals[n];
            assert!((seq[2] - d2).abs() < 1e-14);
            // central difference of the first derivative
            let h = 1e-5;
            let fp = hermite_functions(r + h, 12)[n];
            let fm = hermite_functions(r - h, 12)[n];
            assert!(((fp - fm) / (2.0 * h) - d1).abs() < 1e-8);
        }
    }

    #[test]
    fn moments_match_known_values() {
        let m = hermite_moments(5);
        assert_relative_eq!(m[0], 2f64.sqrt() * PI.powf(0.25), epsilon = 1e-15);
        assert_eq!(m[1], 0.0);
        assert_relative_eq!(m[2], m[0] / 2f64.sqrt(), epsilon = 1e-15);
    }
}
