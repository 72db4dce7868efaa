use crate::error::{Error, Result};

/// Uniform 1-D sampling axis `min, min + step, …, max`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub step: f64,
}

impl Axis {
    pub fn new(min: f64, max: f64, step: f64) -> Result<Self> {
        if !(min.is_finite() && max.is_finite() && step.is_finite()) {
            return Err(Error::InvalidArgument("grid bounds must be finite".into()));
        }
        if step <= 0.0 || max < min {
            return Err(Error::InvalidArgument(format!(
                "grid {min}:{max}:{step} needs step > 0 and max >= min"
            )));
        }
        Ok(Self { min, max, step })
    }

    /// Symmetric axis `[-half_width, half_width]`.
    pub fn symmetric(half_width: f64, step: f64) -> Result<Self> {
        Self::new(-half_width, half_width, step)
    }

    /// Default axis for an N-term oscillator expansion: `±(1.5√N + 2)`, 4 points per unit.
    pub fn trust_region(n: usize) -> Self {
        let half = 1.5 * (n as f64).sqrt() + 2.0;
        Self {
            min: -half,
            max: half,
            step: 0.25,
        }
    }

    pub fn len(&self) -> usize {
        ((self.max - self.min) / self.step + 1e-9).floor() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.len())
            .map(|i| self.min + i as f64 * self.step)
            .collect()
    }

    /// Index of the grid point nearest to `x`.
    pub fn nearest(&self, x: f64) -> Result<usize> {
        let last = self.min + (self.len() - 1) as f64 * self.step;
        if x < self.min - 0.5 * self.step || x > last + 0.5 * self.step {
            return Err(Error::OutOfRange {
                position: x,
                min: self.min,
                max: last,
            });
        }
        let i = ((x - self.min) / self.step).round() as usize;
        Ok(i.min(self.len() - 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_include_both_ends() {
        let a = Axis::new(-1.0, 1.0, 0.25).unwrap();
        let p = a.points();
        assert_eq!(p.len(), 9);
        assert_eq!(p[0], -1.0);
        assert!((p[8] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn nearest_and_out_of_range() {
        let a = Axis::new(0.0, 2.0, 0.5).unwrap();
        assert_eq!(a.nearest(1.1).unwrap(), 2);
        assert!(matches!(a.nearest(3.0), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn rejects_bad_step() {
        assert!(Axis::new(0.0, 1.0, 0.0).is_err());
        assert!(Axis::new(1.0, 0.0, 0.1).is_err());
    }
}
