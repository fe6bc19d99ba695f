use crate::error::ParamError;
use crate::sim::ParityOutcome;

/// Fastest capacity on a U-curve.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CapacityMinimum {
    pub m_opt: usize,
    pub t_min: f64,
}

/// Capacity with the smallest averaged parity time; capacities with no
/// average (every run exhausted) are skipped and ties go to the smaller `m`.
/// `None` when nothing reached parity.
pub fn u_curve_minimum(points: &[(usize, Option<f64>)]) -> Option<CapacityMinimum> {
    let mut best: Option<CapacityMinimum> = None;
    for &(m, t) in points {
        let Some(t) = t else { continue };
        let better = match best {
            None => true,
            Some(b) => t < b.t_min || (t == b.t_min && m < b.m_opt),
        };
        if better {
            best = Some(CapacityMinimum { m_opt: m, t_min: t });
        }
    }
    best
}

/// Median parity tick, exhausted runs counting as infinitely slow. An even
/// count averages the two middle values. Empty input gives infinity.
pub fn median_ticks(outcomes: &[ParityOutcome]) -> f64 {
    let mut ticks: Vec<f64> = outcomes
        .iter()
        .map(|o| o.reached_at().map_or(f64::INFINITY, |t| t as f64))
        .collect();
    if ticks.is_empty() {
        return f64::INFINITY;
    }
    ticks.sort_by(f64::total_cmp);
    let mid = ticks.len() / 2;
    if ticks.len() % 2 == 1 {
        ticks[mid]
    } else {
        0.5 * (ticks[mid - 1] + ticks[mid])
    }
}

/// Least-squares line of optimal capacity against group size.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RegressionResult {
    pub slope: f64,
    pub intercept: f64,
    /// Pearson correlation; NaN when every `m_opt` is the same.
    pub r: f64,
    pub samples: usize,
}

/// Ordinary least squares of `m_opt` on `N` with Pearson `r`.
pub fn optimal_capacity_regression(points: &[(f64, f64)]) -> Result<RegressionResult, ParamError> {
    let n = points.len();
    if n < 2 || points.iter().all(|p| p.0 == points[0].0) {
        return Err(ParamError::Regression);
    }
    let count = n as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / count;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / count;
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    for &(x, y) in points {
        let (dx, dy) = (x - mean_x, y - mean_y);
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    let slope = sxy / sxx;
    let r = if syy == 0.0 { f64::NAN } else { (sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0) };
    Ok(RegressionResult {
        slope,
        intercept: mean_y - slope * mean_x,
        r,
        samples: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn argmin_of_a_u_curve() {
        let curve = [(5, Some(9000.0)), (15, Some(4000.0)), (30, Some(7000.0))];
        assert_eq!(u_curve_minimum(&curve), Some(CapacityMinimum { m_opt: 15, t_min: 4000.0 }));
    }

    #[test]
    fn ties_go_to_the_cheaper_memory() {
        let curve = [(20, Some(5000.0)), (10, Some(5000.0))];
        assert_eq!(u_curve_minimum(&curve).unwrap().m_opt, 10);
    }

    #[test]
    fn exhausted_capacities_are_skipped() {
        assert_eq!(u_curve_minimum(&[(1, None), (2, None)]), None);
        let curve = [(1, None), (8, Some(700.0)), (40, Some(650.0))];
        assert_eq!(u_curve_minimum(&curve).unwrap().m_opt, 40);
    }

    #[test]
    fn medians_with_exhaustion() {
        let r = |tick| ParityOutcome::Reached { tick };
        let x = ParityOutcome::Exhausted { max_ticks: 10 };
        assert_eq!(median_ticks(&[r(5), r(1), r(3)]), 3.0);
        assert_eq!(median_ticks(&[r(4), r(2)]), 3.0);
        assert_eq!(median_ticks(&[r(4), x, x]), f64::INFINITY);
        assert_eq!(median_ticks(&[r(4), r(6), x]), 6.0);
        assert_eq!(median_ticks(&[]), f64::INFINITY);
    }

    #[test]
    fn exact_line() {
        let fit = optimal_capacity_regression(&[(40.0, 10.0), (80.0, 20.0), (120.0, 30.0)]).unwrap();
        assert!((fit.slope - 0.25).abs() < 1e-12);
        assert!(fit.intercept.abs() < 1e-12);
        assert!((fit.r - 1.0).abs() < 1e-12);
        assert_eq!(fit.samples, 3);
    }

    #[test]
    fn residual_case_matches_closed_form() {
        // x = 1..4, y = 1, 3, 2, 4: sxx = 5, syy = 5, sxy = 4
        let fit = optimal_capacity_regression(&[(1.0, 1.0), (2.0, 3.0), (3.0, 2.0), (4.0, 4.0)]).unwrap();
        assert!((fit.slope - 0.8).abs() < 1e-12);
        assert!((fit.intercept - 0.5).abs() < 1e-12);
        assert!((fit.r - 0.8).abs() < 1e-12);
    }

    #[test]
    fn two_points_are_perfectly_correlated() {
        let up = optimal_capacity_regression(&[(40.0, 12.0), (100.0, 30.0)]).unwrap();
        let down = optimal_capacity_regression(&[(40.0, 30.0), (100.0, 12.0)]).unwrap();
        assert!((up.r - 1.0).abs() < 1e-12 && (down.r + 1.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_inputs_are_rejected() {
        assert_eq!(optimal_capacity_regression(&[(40.0, 1.0)]), Err(ParamError::Regression));
        assert_eq!(
            optimal_capacity_regression(&[(40.0, 1.0), (40.0, 3.0)]),
            Err(ParamError::Regression)
        );
        assert!(optimal_capacity_regression(&[(40.0, 5.0), (80.0, 5.0)]).unwrap().r.is_nan());
    }
}
