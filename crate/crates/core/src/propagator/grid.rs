use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridLayout {
    Uniform,
    /// `0` followed by geometrically spaced samples.
    Log,
    Custom,
}

/// Strictly increasing sample times starting at `t0 = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeGrid {
    samples: Vec<f64>,
    layout: GridLayout,
}

impl TimeGrid {
    /// `points` equally spaced samples on `[0, t_max]`.
    pub fn uniform(t_max: f64, points: usize) -> Result<Self> {
        if !(t_max > 0.0 && t_max.is_finite()) {
            return Err(Error::InvalidGrid("t_max must be positive"));
        }
        if points < 2 {
            return Err(Error::InvalidGrid("need at least two samples"));
        }
        let step = t_max / (points - 1) as f64;
        let mut samples: Vec<f64> = (0..points).map(|k| k as f64 * step).collect();
        samples[points - 1] = t_max;
        Ok(Self {
            samples,
            layout: GridLayout::Uniform,
        })
    }

    /// `0` followed by `points − 1` log-spaced samples on `[t_min, t_max]`.
    pub fn log(t_max: f64, points: usize, t_min: f64) -> Result<Self> {
        if !(t_max > 0.0 && t_max.is_finite()) {
            return Err(Error::InvalidGrid("t_max must be positive"));
        }
        if !(t_min > 0.0 && t_min < t_max) {
            return Err(Error::InvalidGrid("log grid needs 0 < t_min < t_max"));
        }
        if points < 3 {
            return Err(Error::InvalidGrid("log grid needs at least three samples"));
        }
        let m = points - 1;
        let ratio = (t_max / t_min).ln() / (m - 1) as f64;
        let mut samples = Vec::with_capacity(points);
        samples.push(0.0);
        samples.extend((0..m).map(|k| t_min * (ratio * k as f64).exp()));
        samples[points - 1] = t_max;
        Ok(Self {
            samples,
            layout: GridLayout::Log,
        })
    }

    pub fn from_samples(samples: Vec<f64>) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::InvalidGrid("need at least two samples"));
        }
        if samples[0] != 0.0 {
            return Err(Error::InvalidGrid("first sample must be t0 = 0"));
        }
        if samples.windows(2).any(|w| !(w[1] > w[0]) || !w[1].is_finite()) {
            return Err(Error::InvalidGrid("samples must be strictly increasing"));
        }
        let step = samples[1];
        let uniform = samples.windows(2).all(|w| ((w[1] - w[0]) - step).abs() <= 1e-9 * step);
        Ok(Self {
            samples,
            layout: if uniform {
                GridLayout::Uniform
            } else {
                GridLayout::Custom
            },
        })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn layout(&self) -> GridLayout {
        self.layout
    }

    pub fn t_max(&self) -> f64 {
        *self.samples.last().expect("grid is never empty")
    }

    pub fn uniform_step(&self) -> Option<f64> {
        (self.layout == GridLayout::Uniform).then(|| self.t_max() / (self.samples.len() - 1) as f64)
    }
}
