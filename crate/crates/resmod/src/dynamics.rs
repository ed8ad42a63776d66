//! Direct integration of the periodically driven models in their truncated
//! Hilbert spaces.
//!
//! The stepper is a fourth-order commutator-free scheme built from two
//! exponentials per step, each generated by a fixed linear combination of the
//! Hamiltonian at the two Gauss-Legendre nodes of the step.  Propagation over
//! many drive periods goes through the one-period propagator: whole periods
//! are composed by binary powering and a partial period is integrated as a
//! fresh segment starting at phase zero, which is valid because the
//! Hamiltonian is periodic.
//!
//! Two backends share the stepper.  When the modulation matrix has any
//! off-diagonal entry the propagator works in the lab frame with dense matrix
//! exponentials.  When the modulation is exactly diagonal (the amplifier, the
//! two-atom model, the driven collective spin, and every model with a purely
//! diagonal drive) the stepper instead works in the interaction picture of the
//! full diagonal part: the diagonal phases are integrated in closed form and
//! only the off-diagonal couplings, dressed with those phases, enter the
//! exponentials.  The couplings are kept as sparse triplets and each
//! exponential is applied by a truncated Taylor series, so one step costs a
//! handful of sparse-matrix products instead of a dense exponential.  Within
//! one backend the diagonal part is treated exactly, so purely diagonal
//! Hamiltonians integrate to machine precision independent of step count.

use ndarray::{Array1, Array2};
use thiserror::Error;

use crate::matutil::{expm, unitarity_defect};
use crate::models::ModelSpec;
use crate::C64;

/// Hard cap on the Hilbert-space dimension accepted by the integrator.
pub const DIM_CAP: usize = 4096;

const TAYLOR_DEGREE: usize = 12;
const TAYLOR_NORM_LIMIT: f64 = 0.25;

#[derive(Debug, Error)]
pub enum DynamicsError {
    #[error("invalid propagator parameter {name} = {value}")]
    Parameter { name: &'static str, value: f64 },
    #[error("dimension {dim} exceeds the integrator cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("unitarity defect {defect:.3e} exceeds tolerance {tol:.3e}")]
    IntegratorFailure { defect: f64, tol: f64 },
    #[error("initial state has norm {norm}, expected 1")]
    BadStateNorm { norm: f64 },
    #[error("state index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("population {population:.3e} in the top levels of factor {factor} exceeds {tol:.3e}")]
    Leakage {
        factor: usize,
        population: f64,
        tol: f64,
    },
    #[error("expectation value has imaginary part {imag:.3e}")]
    ComplexExpectation { imag: f64 },
}

/// Integration window and guard tolerances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagatorConfig {
    pub t_final: f64,
    pub steps_per_period: usize,
    /// Bound on the unitarity defect of computed propagators and on the norm
    /// drift of propagated states.
    pub unitarity_tol: f64,
    /// Bound on the population allowed in the top two levels of each bosonic
    /// factor; beyond it the truncated dynamics no longer represents the
    /// model.
    pub leakage_tol: f64,
}

impl PropagatorConfig {
    pub fn new(t_final: f64) -> Self {
        Self {
            t_final,
            steps_per_period: 128,
            unitarity_tol: 1e-8,
            leakage_tol: 1e-3,
        }
    }

    pub fn validate(&self) -> Result<(), DynamicsError> {
        if !self.t_final.is_finite() || self.t_final <= 0.0 {
            return Err(DynamicsError::Parameter {
                name: "t_final",
                value: self.t_final,
            });
        }
        if self.steps_per_period < 32 {
            return Err(DynamicsError::Parameter {
                name: "steps_per_period",
                value: self.steps_per_period as f64,
            });
        }
        if !self.unitarity_tol.is_finite() || self.unitarity_tol <= 0.0 {
            return Err(DynamicsError::Parameter {
                name: "unitarity_tol",
                value: self.unitarity_tol,
            });
        }
        if !self.leakage_tol.is_finite() || self.leakage_tol <= 0.0 {
            return Err(DynamicsError::Parameter {
                name: "leakage_tol",
                value: self.leakage_tol,
            });
        }
        Ok(())
    }
}

/// Propagator over the full window together with its unitarity defect.
#[derive(Debug, Clone)]
pub struct UnitaryResult {
    pub u: Array2<C64>,
    pub defect: f64,
}

#[derive(Debug, Clone)]
pub struct TrajectoryMeta {
    pub label: String,
    pub config: PropagatorConfig,
}

/// Samples at the period boundaries inside the window, plus the initial time
/// and, when the window ends mid-period, the final time.
#[derive(Debug, Clone)]
pub struct Trajectory<T> {
    pub times: Vec<f64>,
    pub values: Vec<T>,
    pub meta: TrajectoryMeta,
}

enum Backend {
    Dense,
    Phased(PhasedSystem),
}

struct PhasedSystem {
    d_static: Vec<f64>,
    d_mod: Vec<f64>,
    couplings: Vec<(usize, usize, C64)>,
    max_col_abs: f64,
}

fn backend_for(model: &ModelSpec) -> Backend {
    let d = model.dim();
    let zero = C64::new(0.0, 0.0);
    for i in 0..d {
        for j in 0..d {
            // Exact test: the builders produce literal zeros off the
            // diagonal whenever the drive is diagonal.
            if i != j && model.h_mod[[i, j]] != zero {
                return Backend::Dense;
            }
        }
    }
    let mut couplings = Vec::new();
    let mut col_abs = vec![0.0f64; d];
    for i in 0..d {
        for j in 0..d {
            if i == j {
                continue;
            }
            let v = model.h_static[[i, j]];
            if v != zero {
                couplings.push((i, j, v));
                col_abs[j] += v.norm();
            }
        }
    }
    Backend::Phased(PhasedSystem {
        d_static: (0..d).map(|i| model.h_static[[i, i]].re).collect(),
        d_mod: (0..d).map(|i| model.h_mod[[i, i]].re).collect(),
        couplings,
        max_col_abs: col_abs.iter().fold(0.0f64, |acc, &c| acc.max(c)),
    })
}

/// Fourth-order scheme constants: Gauss nodes c1, c2 and the exponent weights.
/// The first-applied exponential weights the early node by (3 + 2 sqrt 3)/12.
fn scheme_constants() -> (f64, f64, f64, f64) {
    let sqrt3 = 3f64.sqrt();
    let c1 = 0.5 - sqrt3 / 6.0;
    let c2 = 0.5 + sqrt3 / 6.0;
    let wa = (3.0 + 2.0 * sqrt3) / 12.0;
    let wb = (3.0 - 2.0 * sqrt3) / 12.0;
    (c1, c2, wa, wb)
}

/// Propagator for [0, t1] with the given number of steps.
fn segment(model: &ModelSpec, backend: &Backend, t1: f64, steps: usize) -> Array2<C64> {
    match backend {
        Backend::Dense => segment_dense(model, t1, steps),
        Backend::Phased(sys) => segment_phased(sys, model.nu, t1, steps),
    }
}

fn segment_dense(model: &ModelSpec, t1: f64, steps: usize) -> Array2<C64> {
    let d = model.dim();
    let h = t1 / steps as f64;
    let (c1, c2, wa, wb) = scheme_constants();
    let mih = C64::new(0.0, -h);
    let mut u = Array2::<C64>::eye(d);
    let mut x_first = Array2::<C64>::zeros((d, d));
    let mut x_second = Array2::<C64>::zeros((d, d));
    for s in 0..steps {
        let t0 = s as f64 * h;
        let ha = model.hamiltonian(t0 + c1 * h);
        let hb = model.hamiltonian(t0 + c2 * h);
        for i in 0..d {
            for j in 0..d {
                let (a, b) = (ha[[i, j]], hb[[i, j]]);
                x_first[[i, j]] = mih * (a * wa + b * wb);
                x_second[[i, j]] = mih * (a * wb + b * wa);
            }
        }
        u = expm(&x_second).dot(&expm(&x_first).dot(&u));
    }
    u
}

fn phases_into(sys: &PhasedSystem, nu: f64, t: f64, out: &mut [f64]) {
    let s = (nu * t).sin() / nu;
    for (i, slot) in out.iter_mut().enumerate() {
        *slot = sys.d_static[i] * t + sys.d_mod[i] * s;
    }
}

fn segment_phased(sys: &PhasedSystem, nu: f64, t1: f64, steps: usize) -> Array2<C64> {
    let d = sys.d_static.len();
    let h = t1 / steps as f64;
    let (c1, c2, wa, wb) = scheme_constants();
    let mih = C64::new(0.0, -h);
    // One-norm bound for either step exponent; splitting by powers of two
    // keeps each Taylor application inside its convergence budget.
    let bound = h.abs() * (wa.abs() + wb.abs()) * sys.max_col_abs;
    let splits = if bound > TAYLOR_NORM_LIMIT {
        ((bound / TAYLOR_NORM_LIMIT).log2().ceil() as u32).min(40)
    } else {
        0
    };
    let nnz = sys.couplings.len();
    let mut x_first = vec![(0usize, 0usize, C64::new(0.0, 0.0)); nnz];
    let mut x_second = x_first.clone();
    let mut th1 = vec![0.0f64; d];
    let mut th2 = vec![0.0f64; d];
    let mut u = Array2::<C64>::eye(d);
    let mut term = Array2::<C64>::zeros((d, d));
    let mut tmp = Array2::<C64>::zeros((d, d));
    for s in 0..steps {
        let t0 = s as f64 * h;
        phases_into(sys, nu, t0 + c1 * h, &mut th1);
        phases_into(sys, nu, t0 + c2 * h, &mut th2);
        for (k, &(i, j, v)) in sys.couplings.iter().enumerate() {
            let v1 = v * C64::from_polar(1.0, th1[i] - th1[j]);
            let v2 = v * C64::from_polar(1.0, th2[i] - th2[j]);
            x_first[k] = (i, j, mih * (v1 * wa + v2 * wb));
            x_second[k] = (i, j, mih * (v1 * wb + v2 * wa));
        }
        exp_apply(&mut x_first, splits, &mut u, &mut term, &mut tmp);
        exp_apply(&mut x_second, splits, &mut u, &mut term, &mut tmp);
    }
    // Back to the lab frame.  Segments start at time zero where the frame
    // phases vanish, so only the rows pick up phases.
    phases_into(sys, nu, t1, &mut th1);
    for i in 0..d {
        let row_phase = C64::from_polar(1.0, -th1[i]);
        for j in 0..d {
            u[[i, j]] *= row_phase;
        }
    }
    u
}

/// u <- exp(X) u for a sparse-triplet X, by 2^splits Taylor applications of
/// X / 2^splits.
fn exp_apply(
    x: &mut [(usize, usize, C64)],
    splits: u32,
    u: &mut Array2<C64>,
    term: &mut Array2<C64>,
    tmp: &mut Array2<C64>,
) {
    if x.is_empty() {
        return;
    }
    if splits > 0 {
        let scale = 0.5f64.powi(splits as i32);
        for entry in x.iter_mut() {
            entry.2 *= scale;
        }
    }
    for _ in 0..(1u64 << splits) {
        term.assign(u);
        for k in 1..=TAYLOR_DEGREE {
            sparse_mul_into(x, term, tmp);
            let inv = 1.0 / k as f64;
            tmp.mapv_inplace(|z| z * inv);
            std::mem::swap(term, tmp);
            *u += &*term;
        }
    }
}

/// dst = X src for a sparse-triplet X and dense src.
fn sparse_mul_into(x: &[(usize, usize, C64)], src: &Array2<C64>, dst: &mut Array2<C64>) {
    let d = src.ncols();
    let s = src.as_slice().expect("contiguous");
    let out = dst.as_slice_mut().expect("contiguous");
    out.fill(C64::new(0.0, 0.0));
    for &(i, j, v) in x {
        let (ri, rj) = (i * d, j * d);
        for c in 0..d {
            out[ri + c] += v * s[rj + c];
        }
    }
}

fn matrix_power(m: &Array2<C64>, n: u64) -> Array2<C64> {
    debug_assert!(n >= 1);
    let mut result = Array2::<C64>::eye(m.nrows());
    let mut base = m.clone();
    let mut k = n;
    while k > 1 {
        if k & 1 == 1 {
            result = result.dot(&base);
        }
        base = base.dot(&base);
        k >>= 1;
    }
    result.dot(&base)
}

/// Whole periods and the leftover time in the window, with both ends snapped
/// so that windows meant as exact multiples of the period round-trip cleanly.
fn split_periods(t_final: f64, period: f64) -> (u64, f64) {
    let ratio = t_final / period;
    let mut n = ratio.floor().max(0.0) as u64;
    let mut rem = t_final - n as f64 * period;
    let snap = 1e-9 * period;
    if rem <= snap {
        rem = 0.0;
    } else if period - rem <= snap {
        n += 1;
        rem = 0.0;
    }
    (n, rem)
}

fn remainder_steps(steps_per_period: usize, rem: f64, period: f64) -> usize {
    ((steps_per_period as f64 * rem / period).ceil() as usize).max(4)
}

fn check_dimension(model: &ModelSpec) -> Result<usize, DynamicsError> {
    let d = model.dim();
    if d > DIM_CAP {
        return Err(DynamicsError::DimensionCap { dim: d, cap: DIM_CAP });
    }
    Ok(d)
}

fn monodromy(
    model: &ModelSpec,
    backend: &Backend,
    cfg: &PropagatorConfig,
) -> Result<Array2<C64>, DynamicsError> {
    let m = segment(model, backend, model.period(), cfg.steps_per_period);
    let defect = unitarity_defect(&m);
    if defect > cfg.unitarity_tol {
        return Err(DynamicsError::IntegratorFailure {
            defect,
            tol: cfg.unitarity_tol,
        });
    }
    Ok(m)
}

/// Basis indices in the top two levels of each bosonic factor, keyed by the
/// factor position.
fn leakage_sets(model: &ModelSpec) -> Vec<(usize, Vec<usize>)> {
    let mut sets = Vec::new();
    for (fi, factor) in model.space.factors.iter().enumerate() {
        if !factor.kind.is_bosonic() {
            continue;
        }
        let cut = factor.dim.saturating_sub(2);
        let idxs = (0..model.dim())
            .filter(|&idx| model.space.unravel(idx)[fi] >= cut)
            .collect();
        sets.push((fi, idxs));
    }
    sets
}

fn check_sample(
    state: &Array1<C64>,
    sets: &[(usize, Vec<usize>)],
    cfg: &PropagatorConfig,
) -> Result<(), DynamicsError> {
    let norm = state.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > cfg.unitarity_tol {
        return Err(DynamicsError::IntegratorFailure {
            defect: (norm - 1.0).abs(),
            tol: cfg.unitarity_tol,
        });
    }
    for (factor, idxs) in sets {
        let population: f64 = idxs.iter().map(|&i| state[i].norm_sqr()).sum();
        if population > cfg.leakage_tol {
            return Err(DynamicsError::Leakage {
                factor: *factor,
                population,
                tol: cfg.leakage_tol,
            });
        }
    }
    Ok(())
}

/// Propagator over [0, t_final].
pub fn evolve_unitary(
    model: &ModelSpec,
    cfg: &PropagatorConfig,
) -> Result<UnitaryResult, DynamicsError> {
    cfg.validate()?;
    let d = check_dimension(model)?;
    let backend = backend_for(model);
    let period = model.period();
    let (n, rem) = split_periods(cfg.t_final, period);
    let mut u = if n >= 1 {
        matrix_power(&monodromy(model, &backend, cfg)?, n)
    } else {
        Array2::<C64>::eye(d)
    };
    if rem > 0.0 {
        let steps = remainder_steps(cfg.steps_per_period, rem, period);
        u = segment(model, &backend, rem, steps).dot(&u);
    }
    let defect = unitarity_defect(&u);
    if defect > cfg.unitarity_tol {
        return Err(DynamicsError::IntegratorFailure {
            defect,
            tol: cfg.unitarity_tol,
        });
    }
    Ok(UnitaryResult { u, defect })
}

/// State trajectory sampled at every period boundary in the window.  The
/// norm and the bosonic truncation guard are checked at every sample,
/// including the initial state.
pub fn evolve_state(
    model: &ModelSpec,
    cfg: &PropagatorConfig,
    psi0: &Array1<C64>,
) -> Result<Trajectory<Array1<C64>>, DynamicsError> {
    cfg.validate()?;
    let d = check_dimension(model)?;
    if psi0.len() != d {
        return Err(DynamicsError::Parameter {
            name: "initial_state_length",
            value: psi0.len() as f64,
        });
    }
    let norm = psi0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-12 {
        return Err(DynamicsError::BadStateNorm { norm });
    }
    let backend = backend_for(model);
    let period = model.period();
    let (n, rem) = split_periods(cfg.t_final, period);
    let sets = leakage_sets(model);
    check_sample(psi0, &sets, cfg)?;
    let mut times = Vec::with_capacity(n as usize + 2);
    let mut values = Vec::with_capacity(n as usize + 2);
    times.push(0.0);
    values.push(psi0.clone());
    let mut psi = psi0.clone();
    if n >= 1 {
        let m = monodromy(model, &backend, cfg)?;
        for j in 1..=n {
            psi = m.dot(&psi);
            check_sample(&psi, &sets, cfg)?;
            times.push(j as f64 * period);
            values.push(psi.clone());
        }
    }
    if rem > 0.0 {
        let steps = remainder_steps(cfg.steps_per_period, rem, period);
        let u = segment(model, &backend, rem, steps);
        psi = u.dot(&psi);
        check_sample(&psi, &sets, cfg)?;
        times.push(cfg.t_final);
        values.push(psi);
    }
    Ok(Trajectory {
        times,
        values,
        meta: TrajectoryMeta {
            label: model.label.clone(),
            config: *cfg,
        },
    })
}

/// Real expectation values of a Hermitian observable along the sampled
/// trajectory.
pub fn expectation_trajectory(
    model: &ModelSpec,
    cfg: &PropagatorConfig,
    psi0: &Array1<C64>,
    observable: &Array2<C64>,
) -> Result<Trajectory<f64>, DynamicsError> {
    let d = model.dim();
    if observable.dim() != (d, d) {
        return Err(DynamicsError::Parameter {
            name: "observable_dim",
            value: observable.nrows() as f64,
        });
    }
    let traj = evolve_state(model, cfg, psi0)?;
    let mut values = Vec::with_capacity(traj.values.len());
    for state in &traj.values {
        let opsi = observable.dot(state);
        let mut val = C64::new(0.0, 0.0);
        for i in 0..d {
            val += state[i].conj() * opsi[i];
        }
        if val.im.abs() >= 1e-10 {
            return Err(DynamicsError::ComplexExpectation { imag: val.im });
        }
        values.push(val.re);
    }
    Ok(Trajectory {
        times: traj.times,
        values,
        meta: traj.meta,
    })
}

/// Transition probability from basis state `initial` to basis state `final`,
/// averaged over the samples at whole periods.  Windows shorter than one
/// period fall back to the single terminal sample.  No truncation guard is
/// applied here: the average is a property of the truncated dynamics and is
/// well defined arbitrarily close to the truncation edge.
pub fn time_averaged_transition_probability(
    model: &ModelSpec,
    cfg: &PropagatorConfig,
    initial: usize,
    final_index: usize,
) -> Result<f64, DynamicsError> {
    cfg.validate()?;
    let d = check_dimension(model)?;
    for index in [initial, final_index] {
        if index >= d {
            return Err(DynamicsError::IndexOutOfRange { index, dim: d });
        }
    }
    let backend = backend_for(model);
    let period = model.period();
    let (n, rem) = split_periods(cfg.t_final, period);
    if n == 0 {
        if rem == 0.0 {
            // Window snapped to zero length; the propagator is the identity.
            return Ok(if initial == final_index { 1.0 } else { 0.0 });
        }
        let steps = remainder_steps(cfg.steps_per_period, rem, period);
        let u = segment(model, &backend, rem, steps);
        let defect = unitarity_defect(&u);
        if defect > cfg.unitarity_tol {
            return Err(DynamicsError::IntegratorFailure {
                defect,
                tol: cfg.unitarity_tol,
            });
        }
        return Ok(u[[final_index, initial]].norm_sqr().clamp(0.0, 1.0));
    }
    let m = monodromy(model, &backend, cfg)?;
    let mut psi = Array1::<C64>::zeros(d);
    psi[initial] = C64::new(1.0, 0.0);
    let mut acc = 0.0;
    for _ in 0..n {
        psi = m.dot(&psi);
        acc += psi[final_index].norm_sqr();
    }
    Ok((acc / n as f64).clamp(0.0, 1.0))
}
