//! Resonance spectroscopy on the simulated models: frequency scans with
//! quadratic peak refinement, Rabi-frequency extraction from sampled
//! trajectories, and comparison reports against predicted constants.

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use thiserror::Error;

use crate::dynamics::{
    time_averaged_transition_probability, DynamicsError, PropagatorConfig, Trajectory,
};
use crate::models::{ModelError, ModelSpec};

#[derive(Debug, Error)]
pub enum ResonanceError {
    #[error("invalid resonance parameter {name} = {value}")]
    Config { name: &'static str, value: f64 },
    #[error("model construction failed at nu = {nu}")]
    Model {
        nu: f64,
        #[source]
        source: ModelError,
    },
    #[error("dynamics failed at nu = {nu}")]
    Dynamics {
        nu: f64,
        #[source]
        source: DynamicsError,
    },
    #[error("no oscillation: strongest spectral line {peak:.3e} below threshold {threshold:.3e}")]
    NoOscillation { peak: f64, threshold: f64 },
}

/// Transition-probability curve over a frequency grid with the refined peak.
#[derive(Debug, Clone)]
pub struct ScanResult {
    pub nu_grid: Vec<f64>,
    pub p_avg: Vec<f64>,
    pub peak_nu: f64,
    pub peak_value: f64,
    pub predicted_nu: f64,
    pub discrepancy: f64,
}

/// Cosine fit of an oscillating signal.
#[derive(Debug, Clone)]
pub struct RabiFit {
    pub omega_rabi: f64,
    pub amplitude: f64,
    pub residual: f64,
}

impl RabiFit {
    /// A fit counts when the root-mean-square misfit stays under a tenth of
    /// the oscillation amplitude.
    pub fn accepted(&self) -> bool {
        self.residual < 0.1 * self.amplitude
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ToleranceKind {
    Absolute,
    Relative,
}

#[derive(Debug, Clone)]
pub struct Comparison {
    pub predicted: f64,
    pub measured: f64,
    pub abs_error: f64,
    pub rel_error: f64,
    pub pass: bool,
    pub tolerance: f64,
    pub kind: ToleranceKind,
}

/// Vertex of the quadratic through the sampled maximum and its two
/// neighbors.  Falls back to the raw sample at a grid edge or when the local
/// curvature is not concave.  The vertex is clamped into the grid range.
pub fn refine_peak(grid: &[f64], values: &[f64]) -> (f64, f64) {
    assert_eq!(grid.len(), values.len());
    assert!(!grid.is_empty());
    let mut imax = 0;
    for (i, &v) in values.iter().enumerate() {
        if v > values[imax] {
            imax = i;
        }
    }
    if imax == 0 || imax + 1 == grid.len() {
        return (grid[imax], values[imax]);
    }
    let dxm = grid[imax] - grid[imax - 1];
    let dxp = grid[imax + 1] - grid[imax];
    let a = values[imax - 1] - values[imax];
    let b = values[imax + 1] - values[imax];
    let denom = dxm * dxp * (dxm + dxp);
    let curv = (a * dxp + b * dxm) / denom;
    let slope = (b * dxm * dxm - a * dxp * dxp) / denom;
    if !(curv < 0.0) {
        return (grid[imax], values[imax]);
    }
    let peak_nu = (grid[imax] - slope / (2.0 * curv)).clamp(grid[0], grid[grid.len() - 1]);
    let peak_value = values[imax] - slope * slope / (4.0 * curv);
    (peak_nu, peak_value)
}

/// Sweeps the modulation frequency, computing the time-averaged transition
/// probability between the probe basis states at every grid point, and
/// refines the peak location.  Grid points are independent and are evaluated
/// on worker threads; results are aggregated in grid order, so the output
/// and the choice of reported error are deterministic.
pub fn scan_nu<F>(
    build: F,
    nu_grid: &[f64],
    probe: (usize, usize),
    cfg: &PropagatorConfig,
    predicted_nu: f64,
) -> Result<ScanResult, ResonanceError>
where
    F: Fn(f64) -> Result<ModelSpec, ModelError> + Sync,
{
    if nu_grid.len() < 16 {
        return Err(ResonanceError::Config {
            name: "grid_length",
            value: nu_grid.len() as f64,
        });
    }
    for w in nu_grid.windows(2) {
        if !(w[1] > w[0]) {
            return Err(ResonanceError::Config {
                name: "grid_not_increasing_after",
                value: w[0],
            });
        }
    }
    let (lo, hi) = (nu_grid[0], nu_grid[nu_grid.len() - 1]);
    if !(predicted_nu >= lo && predicted_nu <= hi) {
        return Err(ResonanceError::Config {
            name: "predicted_nu",
            value: predicted_nu,
        });
    }
    let len = nu_grid.len();
    let workers = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .min(len);
    let mut slots: Vec<Option<Result<f64, ResonanceError>>> = Vec::new();
    slots.resize_with(len, || None);
    std::thread::scope(|scope| {
        let build = &build;
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                scope.spawn(move || {
                    let mut out = Vec::new();
                    let mut i = w;
                    while i < len {
                        let nu = nu_grid[i];
                        let p = build(nu)
                            .map_err(|source| ResonanceError::Model { nu, source })
                            .and_then(|model| {
                                time_averaged_transition_probability(
                                    &model, cfg, probe.0, probe.1,
                                )
                                .map_err(|source| ResonanceError::Dynamics { nu, source })
                            });
                        out.push((i, p));
                        i += workers;
                    }
                    out
                })
            })
            .collect();
        for handle in handles {
            for (i, p) in handle.join().expect("scan worker panicked") {
                slots[i] = Some(p);
            }
        }
    });
    let mut p_avg = Vec::with_capacity(len);
    for slot in slots {
        p_avg.push(slot.expect("scan point computed")?);
    }
    let (peak_nu, peak_value) = refine_peak(nu_grid, &p_avg);
    Ok(ScanResult {
        nu_grid: nu_grid.to_vec(),
        p_avg,
        peak_nu,
        peak_value,
        predicted_nu,
        discrepancy: (peak_nu - predicted_nu).abs(),
    })
}

/// Dominant oscillation frequency of a uniformly sampled trajectory.
///
/// The mean-removed signal goes through a discrete Fourier transform; the
/// strongest bin must rise above three times the spectral median (and above a
/// relative floor, so constant signals fail cleanly).  The bin frequency is
/// sharpened by parabolic interpolation and then by minimizing the misfit of
/// a three-parameter cosine fit, whose amplitude and root-mean-square
/// residual fill the report.  A final sample that breaks the uniform spacing
/// (a partial-period tail) is dropped; any other spacing defect is an error.
pub fn extract_rabi(traj: &Trajectory<f64>) -> Result<RabiFit, ResonanceError> {
    let mut times: &[f64] = &traj.times;
    let mut values: &[f64] = &traj.values;
    if times.len() != values.len() {
        return Err(ResonanceError::Config {
            name: "trajectory_lengths",
            value: times.len() as f64,
        });
    }
    if times.len() < 16 {
        return Err(ResonanceError::Config {
            name: "sample_count",
            value: times.len() as f64,
        });
    }
    let dt = times[1] - times[0];
    if !dt.is_finite() || dt <= 0.0 {
        return Err(ResonanceError::Config {
            name: "sample_spacing",
            value: dt,
        });
    }
    let mut end = times.len();
    for i in 1..times.len() - 1 {
        let step = times[i + 1] - times[i];
        if (step - dt).abs() > 1e-6 * dt {
            if i == times.len() - 2 {
                end = times.len() - 1;
            } else {
                return Err(ResonanceError::Config {
                    name: "sample_spacing",
                    value: times[i + 1],
                });
            }
        }
    }
    times = &times[..end];
    values = &values[..end];
    if times.len() < 16 {
        return Err(ResonanceError::Config {
            name: "sample_count",
            value: times.len() as f64,
        });
    }
    for &v in values {
        if !v.is_finite() {
            return Err(ResonanceError::Config {
                name: "sample_value",
                value: v,
            });
        }
    }

    let n = times.len();
    let mean = values.iter().sum::<f64>() / n as f64;
    let mut buf: Vec<Complex<f64>> = values.iter().map(|&v| Complex::new(v - mean, 0.0)).collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let half = n / 2;
    let mags: Vec<f64> = buf[1..half].iter().map(|z| z.norm()).collect();
    let mut kbest = 0usize;
    for (k, &m) in mags.iter().enumerate() {
        if m > mags[kbest] {
            kbest = k;
        }
    }
    let peak = mags[kbest];
    let mut sorted = mags.clone();
    sorted.sort_by(|x, y| x.partial_cmp(y).expect("finite magnitude"));
    let median = sorted[sorted.len() / 2];
    let scale = values.iter().fold(0.0f64, |acc, &v| acc.max(v.abs()));
    let threshold = (3.0 * median).max(1e-9 * scale * n as f64);
    if !(peak > threshold) {
        return Err(ResonanceError::NoOscillation { peak, threshold });
    }

    let delta = if kbest > 0 && kbest + 1 < mags.len() {
        let (l, c, r) = (mags[kbest - 1], mags[kbest], mags[kbest + 1]);
        let den = l - 2.0 * c + r;
        if den.abs() > f64::MIN_POSITIVE {
            (0.5 * (l - r) / den).clamp(-0.5, 0.5)
        } else {
            0.0
        }
    } else {
        0.0
    };
    let bin_width = 2.0 * std::f64::consts::PI / (n as f64 * dt);
    let omega0 = ((kbest + 1) as f64 + delta) * bin_width;
    let lo = (omega0 - bin_width).max(0.5 * bin_width);
    let hi = (omega0 + bin_width).min(std::f64::consts::PI / dt * 0.999);
    let omega = golden_min(lo, hi, |w| cosine_fit(times, values, w).0);
    let (sse, a, b) = cosine_fit(times, values, omega);
    if !sse.is_finite() {
        return Err(ResonanceError::NoOscillation { peak, threshold });
    }
    Ok(RabiFit {
        omega_rabi: omega,
        amplitude: a.hypot(b),
        residual: (sse / n as f64).sqrt(),
    })
}

/// Least-squares fit of a cos(wt) + b sin(wt) + c at fixed w; returns the
/// sum of squared residuals and the quadrature coefficients.
fn cosine_fit(times: &[f64], values: &[f64], w: f64) -> (f64, f64, f64) {
    let n = times.len() as f64;
    let (mut scc, mut scs, mut sc1, mut sss, mut ss1) = (0.0, 0.0, 0.0, 0.0, 0.0);
    let (mut scv, mut ssv, mut s1v) = (0.0, 0.0, 0.0);
    for (&t, &v) in times.iter().zip(values) {
        let (s, c) = (w * t).sin_cos();
        scc += c * c;
        scs += c * s;
        sc1 += c;
        sss += s * s;
        ss1 += s;
        scv += c * v;
        ssv += s * v;
        s1v += v;
    }
    let system = [
        [scc, scs, sc1, scv],
        [scs, sss, ss1, ssv],
        [sc1, ss1, n, s1v],
    ];
    let Some([a, b, c]) = solve3(system) else {
        return (f64::INFINITY, 0.0, 0.0);
    };
    let mut sse = 0.0;
    for (&t, &v) in times.iter().zip(values) {
        let (s, co) = (w * t).sin_cos();
        let r = v - (a * co + b * s + c);
        sse += r * r;
    }
    (sse, a, b)
}

fn solve3(mut m: [[f64; 4]; 3]) -> Option<[f64; 3]> {
    for col in 0..3 {
        let pivot = (col..3).max_by(|&x, &y| {
            m[x][col]
                .abs()
                .partial_cmp(&m[y][col].abs())
                .expect("finite pivot")
        })?;
        if m[pivot][col].abs() < 1e-300 {
            return None;
        }
        m.swap(col, pivot);
        for row in col + 1..3 {
            let f = m[row][col] / m[col][col];
            for k in col..4 {
                m[row][k] -= f * m[col][k];
            }
        }
    }
    let mut x = [0.0f64; 3];
    for row in (0..3).rev() {
        let mut acc = m[row][3];
        for k in row + 1..3 {
            acc -= m[row][k] * x[k];
        }
        x[row] = acc / m[row][row];
    }
    Some(x)
}

fn golden_min(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - phi * (hi - lo);
    let mut x2 = lo + phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..64 {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = f(x2);
        }
    }
    0.5 * (lo + hi)
}

/// Comparison record between a predicted and a measured value.
pub fn compare(
    predicted: f64,
    measured: f64,
    tolerance: f64,
    kind: ToleranceKind,
) -> Result<Comparison, ResonanceError> {
    if !tolerance.is_finite() || tolerance <= 0.0 {
        return Err(ResonanceError::Config {
            name: "tolerance",
            value: tolerance,
        });
    }
    let abs_error = (measured - predicted).abs();
    let rel_error = if predicted != 0.0 {
        abs_error / predicted.abs()
    } else if abs_error == 0.0 {
        0.0
    } else {
        f64::INFINITY
    };
    let pass = match kind {
        ToleranceKind::Absolute => abs_error <= tolerance,
        ToleranceKind::Relative => rel_error <= tolerance,
    };
    Ok(Comparison {
        predicted,
        measured,
        abs_error,
        rel_error,
        pass,
        tolerance,
        kind,
    })
}
