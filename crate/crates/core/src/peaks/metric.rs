use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Admissibility {
    pub accepted: bool,
    /// `(1/2)^(1/(1 - alpha))`, the supremum of admissible ratios.
    pub threshold: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

/// `1/2 < alpha < 1` keeps `A^alpha` inside `W+`; `xi` below the threshold
/// makes `sum m(gap)^(1 - alpha)` converge.
pub fn admissible_parameters(alpha: f64, xi: f64) -> Admissibility {
    let threshold = 0.5f64.powf(1.0 / (1.0 - alpha));
    let reason = if !(alpha > 0.5 && alpha < 1.0) {
        Some(format!("alpha must satisfy 1/2 < alpha < 1, got {alpha}"))
    } else if !(xi > 0.0 && xi < threshold) {
        Some(format!("xi = {xi} must satisfy 0 < xi < {threshold}"))
    } else {
        None
    };
    Admissibility {
        accepted: reason.is_none(),
        threshold,
        reason,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MetricSumMode {
    /// Gaps of generations `0..=K`.
    Partial(u32),
    ClosedForm,
}

/// `sum over gaps of m(gap)^(1 - alpha) = (1 - 2 xi)^(1 - alpha) sum_k (2 xi^(1 - alpha))^k`.
/// The closed form is `+inf` when `2 xi^(1 - alpha) >= 1`.
pub fn metric_sum(xi: f64, alpha: f64, mode: MetricSumMode) -> f64 {
    let first = (1.0 - 2.0 * xi).powf(1.0 - alpha);
    let r = 2.0 * xi.powf(1.0 - alpha);
    match mode {
        MetricSumMode::ClosedForm => {
            if r >= 1.0 - 1e-12 {
                f64::INFINITY
            } else {
                first / (1.0 - r)
            }
        }
        MetricSumMode::Partial(k) => {
            let mut term = first;
            let mut total = 0.0;
            for _ in 0..=k {
                total += term;
                term *= r;
            }
            total
        }
    }
}
