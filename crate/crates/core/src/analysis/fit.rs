/// Least-squares fit of `value ≈ a + b / sqrt(n)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InverseSqrtFit {
    pub a: f64,
    pub b: f64,
    pub rms: f64,
}

impl InverseSqrtFit {
    pub fn eval(&self, n: f64) -> f64 {
        self.a + self.b / n.sqrt()
    }
}

/// Unweighted linear least squares in the basis `{1, n^(-1/2)}`.
///
/// A series with a single point, or with every `n` equal, has no slope to
/// fit: `a` is the mean and `b` is zero. Returns `None` for an empty series
/// or any `n < 1`.
pub fn fit_inverse_sqrt(series: &[(f64, f64)]) -> Option<InverseSqrtFit> {
    if series.is_empty() || series.iter().any(|&(n, _)| n.is_nan() || n < 1.0) {
        return None;
    }
    let k = series.len() as f64;
    let xs: Vec<f64> = series.iter().map(|&(n, _)| 1.0 / n.sqrt()).collect();
    let x_mean = xs.iter().sum::<f64>() / k;
    let y_mean = series.iter().map(|&(_, v)| v).sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - x_mean).powi(2)).sum();
    let sxy: f64 = xs
        .iter()
        .zip(series)
        .map(|(x, &(_, y))| (x - x_mean) * (y - y_mean))
        .sum();
    let b = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let a = y_mean - b * x_mean;
    let rms = (xs
        .iter()
        .zip(series)
        .map(|(x, &(_, y))| (y - a - b * x).powi(2))
        .sum::<f64>()
        / k)
        .sqrt();
    Some(InverseSqrtFit { a, b, rms })
}
