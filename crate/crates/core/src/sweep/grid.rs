//! Cartesian parameter grids evaluated on a bounded worker pool.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AxisScale {
    #[default]
    Linear,
    Log,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridAxis {
    pub name: String,
    pub min: f64,
    pub max: f64,
    pub count: usize,
    #[serde(default)]
    pub scale: AxisScale,
}

impl GridAxis {
    pub fn linear(name: &str, min: f64, max: f64, count: usize) -> Self {
        Self { name: name.into(), min, max, count, scale: AxisScale::Linear }
    }

    pub fn log(name: &str, min: f64, max: f64, count: usize) -> Self {
        Self { name: name.into(), min, max, count, scale: AxisScale::Log }
    }

    pub fn validate(&self) -> Result<()> {
        if self.count < 2 {
            return Err(Error::Config(format!("axis `{}` needs count ≥ 2", self.name)));
        }
        if !(self.min.is_finite() && self.max.is_finite() && self.max > self.min) {
            return Err(Error::Config(format!("axis `{}` needs finite min < max", self.name)));
        }
        if self.scale == AxisScale::Log && self.min <= 0.0 {
            return Err(Error::Config(format!("log axis `{}` needs min > 0", self.name)));
        }
        Ok(())
    }

    /// Endpoints are exact.
    pub fn values(&self) -> Vec<f64> {
        let n = self.count - 1;
        (0..self.count)
            .map(|i| {
                if i == 0 {
                    return self.min;
                }
                if i == n {
                    return self.max;
                }
                let f = i as f64 / n as f64;
                match self.scale {
                    AxisScale::Linear => self.min + f * (self.max - self.min),
                    AxisScale::Log => (self.min.ln() + f * (self.max.ln() - self.min.ln())).exp(),
                }
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PointFailure {
    pub point: Vec<f64>,
    pub error: String,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct GridOutcome {
    /// Successful points in grid order: axis values followed by outputs.
    pub rows: Vec<Vec<f64>>,
    pub failures: Vec<PointFailure>,
    pub total: usize,
}

impl GridOutcome {
    /// More than 10% of points failed.
    pub fn excessive_failures(&self) -> bool {
        self.failures.len() * 10 > self.total
    }
}

/// All points of the Cartesian product, last axis fastest.
pub fn grid_points(axes: &[GridAxis]) -> Vec<Vec<f64>> {
    let values: Vec<Vec<f64>> = axes.iter().map(GridAxis::values).collect();
    let mut points = vec![Vec::new()];
    for v in &values {
        points = points.into_iter().flat_map(|p| v.iter().map(move |x| [p.as_slice(), &[*x]].concat())).collect();
    }
    points
}

pub fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Config(format!("worker pool: {e}")))
}

/// Evaluates `point_fn` on every grid point. Failures and non-finite outputs
/// are isolated per point; row order follows the grid, independent of
/// `workers`.
pub fn run_grid<F>(axes: &[GridAxis], workers: usize, point_fn: F) -> Result<GridOutcome>
where
    F: Fn(&[f64]) -> Result<Vec<f64>> + Sync,
{
    for a in axes {
        a.validate()?;
    }
    let points = grid_points(axes);
    let results: Vec<Result<Vec<f64>>> = pool(workers)?.install(|| {
        points
            .par_iter()
            .map(|p| {
                let out = point_fn(p)?;
                if let Some(x) = out.iter().find(|x| !x.is_finite()) {
                    return Err(Error::InvalidParameter {
                        name: "output".into(),
                        reason: format!("non-finite value {x}"),
                    });
                }
                Ok(out)
            })
            .collect()
    });
    let mut outcome = GridOutcome { total: points.len(), ..Default::default() };
    for (p, r) in points.into_iter().zip(results) {
        match r {
            Ok(out) => outcome.rows.push([p, out].concat()),
            Err(e) => outcome.failures.push(PointFailure { point: p, error: e.to_string() }),
        }
    }
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_values() {
        assert_eq!(GridAxis::linear("x", 0.0, 1.0, 3).values(), vec![0.0, 0.5, 1.0]);
        let v = GridAxis::log("x", 1.0, 100.0, 3).values();
        assert_eq!((v[0], v[2]), (1.0, 100.0));
        assert!((v[1] - 10.0).abs() < 1e-12);
        assert!(GridAxis::log("x", 0.0, 1.0, 3).validate().is_err());
        assert!(GridAxis::linear("x", 1.0, 1.0, 3).validate().is_err());
    }

    #[test]
    fn single_point_matches_direct_call() {
        let axes = [GridAxis::linear("a", 1.0, 2.0, 2), GridAxis::linear("b", 3.0, 4.0, 2)];
        let f = |p: &[f64]| Ok(vec![p[0] * p[1]]);
        let out = run_grid(&axes, 2, f).unwrap();
        assert_eq!(out.rows[0], vec![1.0, 3.0, 3.0]);
        assert_eq!(out.rows[1], vec![1.0, 4.0, 4.0]);
        assert_eq!(out.rows[3], vec![2.0, 4.0, f(&[2.0, 4.0]).unwrap()[0]]);
    }

    #[test]
    fn order_is_independent_of_workers() {
        let axes = [GridAxis::log("a", 1.0, 50.0, 17), GridAxis::linear("b", -1.0, 1.0, 13)];
        let f = |p: &[f64]| {
            // uneven cost so completion order differs
            let n = (p[0] as usize % 7) * 2000;
            let s: f64 = (0..n).map(|k| (k as f64 * p[1]).sin()).sum();
            if p[1] == 1.0 && p[0] == 50.0 {
                return Err(Error::Config("boom".into()));
            }
            Ok(vec![s, p[0].ln()])
        };
        let one = run_grid(&axes, 1, f).unwrap();
        let many = run_grid(&axes, 8, f).unwrap();
        assert_eq!(one, many);
        assert_eq!(one.failures.len(), 1);
        assert_eq!(one.total, 17 * 13);
        assert!(!one.excessive_failures());
    }

    #[test]
    fn non_finite_outputs_become_failures() {
        let axes = [GridAxis::linear("a", -1.0, 1.0, 5)];
        let out = run_grid(&axes, 2, |p| Ok(vec![1.0 / p[0]])).unwrap();
        assert_eq!(out.rows.len(), 4);
        assert_eq!(out.failures[0].point, vec![0.0]);
        let out = run_grid(&axes, 2, |p| Ok(vec![p[0].sqrt()])).unwrap();
        assert!(out.excessive_failures());
    }
}
