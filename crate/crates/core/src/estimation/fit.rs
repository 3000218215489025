use crate::error::{Error, Result};

/// Ordinary least-squares line `y = slope·x + intercept` with standard errors
/// from the residual variance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub slope_se: f64,
    pub intercept_se: f64,
}

impl LinearFit {
    /// Distance of the slope from `target` in units of its standard error.
    pub fn slope_z(&self, target: f64) -> f64 {
        (self.slope - target).abs() / self.slope_se
    }
}

pub fn linear_fit(xs: &[f64], ys: &[f64]) -> Result<LinearFit> {
    if xs.len() != ys.len() || xs.len() < 3 {
        return Err(Error::FitTooFewPoints {
            xs: xs.len(),
            ys: ys.len(),
        });
    }
    let n = xs.len() as f64;
    let x_mean = xs.iter().sum::<f64>() / n;
    let y_mean = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - x_mean).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::DegenerateAbscissae);
    }
    let sxy: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (x - x_mean) * (y - y_mean))
        .sum();
    let slope = sxy / sxx;
    let intercept = y_mean - slope * x_mean;
    let ssr: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - slope * x - intercept).powi(2))
        .sum();
    let residual_var = ssr / (n - 2.0);
    Ok(LinearFit {
        slope,
        intercept,
        slope_se: (residual_var / sxx).sqrt(),
        intercept_se: (residual_var * (1.0 / n + x_mean * x_mean / sxx)).sqrt(),
    })
}
