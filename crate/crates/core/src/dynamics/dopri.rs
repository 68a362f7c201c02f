//! Dormand–Prince 5(4) with Hairer's continuous extension, on complex state
//! vectors. Samples are produced exactly at requested times via dense output.

use crate::error::{Error, Result};
use crate::linalg::matrix::{C64, ZERO};

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StepControl {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
}

impl Default for StepControl {
    fn default() -> Self {
        Self { rtol: 1e-8, atol: 1e-10, max_steps: 50_000_000 }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct IntegrationStats {
    pub accepted: usize,
    pub rejected: usize,
    pub evaluations: usize,
    /// Sum over accepted steps of the max-abs embedded error estimate.
    pub local_error_sum: f64,
}

/// Integrates `y' = f(t, y)` from `grid[0]` through every grid time.
///
/// `sample(i, y)` is called for each grid index with the interpolated state;
/// `after_step(t, y)` after each accepted step. Either may abort by returning
/// an error.
pub fn integrate<F, S, A>(
    mut f: F,
    y0: &[C64],
    grid: &[f64],
    ctl: StepControl,
    mut sample: S,
    mut after_step: A,
) -> Result<IntegrationStats>
where
    F: FnMut(f64, &[C64], &mut [C64]),
    S: FnMut(usize, &[C64]) -> Result<()>,
    A: FnMut(f64, &[C64]) -> Result<()>,
{
    check_grid(grid)?;
    if !(ctl.rtol > 0.0 && ctl.atol > 0.0) {
        return Err(Error::InvalidParameter {
            name: "tolerances".into(),
            reason: "rtol and atol must be positive".into(),
        });
    }
    let n = y0.len();
    let mut stats = IntegrationStats::default();
    let mut y = y0.to_vec();
    sample(0, &y)?;
    if grid.len() == 1 {
        return Ok(stats);
    }
    let t_end = *grid.last().unwrap();
    let mut next = 1;

    let mut k: [Vec<C64>; 7] = std::array::from_fn(|_| vec![ZERO; n]);
    let mut tmp = vec![ZERO; n];
    let mut y_new = vec![ZERO; n];
    let mut rcont: [Vec<C64>; 5] = std::array::from_fn(|_| vec![ZERO; n]);
    let mut out = vec![ZERO; n];

    let mut t = grid[0];
    f(t, &y, &mut k[0]);
    stats.evaluations += 1;
    let (k0, rest) = k.split_at_mut(1);
    let mut h = initial_step(&mut f, t, &y, &k0[0], t_end - t, &ctl, &mut tmp, &mut rest[0]);
    stats.evaluations += 1;
    let mut last_rejected = false;

    while next < grid.len() {
        if stats.accepted + stats.rejected >= ctl.max_steps {
            return Err(Error::TooManySteps(ctl.max_steps));
        }
        if h < 1e-14 * t.abs().max(1.0) {
            return Err(Error::StepSizeUnderflow { t, h });
        }
        if t + h > t_end || (t_end - (t + h)) < 1e-12 * h {
            h = t_end - t;
        }

        stage(&mut tmp, &y, h, &[(A21, &k[0])]);
        f(t + C2 * h, &tmp, &mut k[1]);
        stage(&mut tmp, &y, h, &[(A31, &k[0]), (A32, &k[1])]);
        f(t + C3 * h, &tmp, &mut k[2]);
        stage(&mut tmp, &y, h, &[(A41, &k[0]), (A42, &k[1]), (A43, &k[2])]);
        f(t + C4 * h, &tmp, &mut k[3]);
        stage(&mut tmp, &y, h, &[(A51, &k[0]), (A52, &k[1]), (A53, &k[2]), (A54, &k[3])]);
        f(t + C5 * h, &tmp, &mut k[4]);
        stage(&mut tmp, &y, h, &[(A61, &k[0]), (A62, &k[1]), (A63, &k[2]), (A64, &k[3]), (A65, &k[4])]);
        f(t + h, &tmp, &mut k[5]);
        stage(&mut y_new, &y, h, &[(A71, &k[0]), (A73, &k[2]), (A74, &k[3]), (A75, &k[4]), (A76, &k[5])]);
        f(t + h, &y_new, &mut k[6]);
        stats.evaluations += 6;

        let mut sq = 0.0;
        let mut max_err = 0.0f64;
        for i in 0..n {
            let e = (k[0][i] * E1 + k[2][i] * E3 + k[3][i] * E4 + k[4][i] * E5 + k[5][i] * E6 + k[6][i] * E7) * h;
            let sc = ctl.atol + ctl.rtol * y[i].norm().max(y_new[i].norm());
            let r = e.norm() / sc;
            sq += r * r;
            max_err = max_err.max(e.norm());
        }
        let enorm = (sq / n.max(1) as f64).sqrt();

        if enorm <= 1.0 {
            stats.accepted += 1;
            stats.local_error_sum += max_err;
            for i in 0..n {
                let ydiff = y_new[i] - y[i];
                let bspl = k[0][i] * h - ydiff;
                rcont[0][i] = y[i];
                rcont[1][i] = ydiff;
                rcont[2][i] = bspl;
                rcont[3][i] = ydiff - k[6][i] * h - bspl;
                rcont[4][i] =
                    (k[0][i] * D1 + k[2][i] * D3 + k[3][i] * D4 + k[4][i] * D5 + k[5][i] * D6 + k[6][i] * D7) * h;
            }
            let t_new = if h == t_end - t { t_end } else { t + h };
            while next < grid.len() && grid[next] <= t_new {
                let theta = (grid[next] - t) / h;
                let theta1 = 1.0 - theta;
                for i in 0..n {
                    out[i] = rcont[0][i]
                        + (rcont[1][i] + (rcont[2][i] + (rcont[3][i] + rcont[4][i] * theta1) * theta) * theta1) * theta;
                }
                sample(next, &out)?;
                next += 1;
            }
            std::mem::swap(&mut y, &mut y_new);
            k.swap(0, 6);
            t = t_new;
            after_step(t, &y)?;
            let mut fac = 0.9 * enorm.max(1e-10).powf(-0.2);
            fac = fac.clamp(0.2, if last_rejected { 1.0 } else { 10.0 });
            h *= fac;
            last_rejected = false;
        } else {
            stats.rejected += 1;
            h *= (0.9 * enorm.powf(-0.2)).max(0.2);
            last_rejected = true;
        }
    }
    Ok(stats)
}

/// `out = y + h Σ a_j k_j`
fn stage(out: &mut [C64], y: &[C64], h: f64, terms: &[(f64, &Vec<C64>)]) {
    out.copy_from_slice(y);
    for (a, kj) in terms {
        let s = a * h;
        for (o, x) in out.iter_mut().zip(kj.iter()) {
            *o += x * s;
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn initial_step<F: FnMut(f64, &[C64], &mut [C64])>(
    f: &mut F,
    t: f64,
    y: &[C64],
    f0: &[C64],
    span: f64,
    ctl: &StepControl,
    y1: &mut [C64],
    f1: &mut [C64],
) -> f64 {
    let n = y.len().max(1) as f64;
    let scale = |i: usize| ctl.atol + ctl.rtol * y[i].norm();
    let rms = |v: &[C64]| (v.iter().enumerate().map(|(i, x)| (x.norm() / scale(i)).powi(2)).sum::<f64>() / n).sqrt();
    let d0 = rms(y);
    let d1 = rms(f0);
    let mut h0 = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
    h0 = h0.min(span);
    for i in 0..y.len() {
        y1[i] = y[i] + f0[i] * h0;
    }
    f(t + h0, y1, f1);
    let diff: Vec<C64> = f1.iter().zip(f0).map(|(a, b)| a - b).collect();
    let d2 = rms(&diff) / h0;
    let h1 = if d1.max(d2) <= 1e-15 { (h0 * 1e-3).max(1e-6) } else { (0.01 / d1.max(d2)).powf(0.2) };
    (100.0 * h0).min(h1).min(span)
}

pub(crate) fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidTimeGrid("empty".into()));
    }
    if grid[0] != 0.0 {
        return Err(Error::InvalidTimeGrid(format!("must start at 0, starts at {}", grid[0])));
    }
    if let Some(w) = grid.windows(2).find(|w| !(w[1].is_finite() && w[1] > w[0])) {
        return Err(Error::InvalidTimeGrid(format!("not strictly increasing at {} -> {}", w[0], w[1])));
    }
    Ok(())
}
