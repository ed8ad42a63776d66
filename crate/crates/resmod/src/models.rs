//! Assembly of the time-dependent model Hamiltonians and their first-order
//! effective descriptions.
//!
//! Every model is stored as `H(t) = h_static + cos(nu t) h_mod` on an ordered
//! tensor product of algebra factors. Matrices use the product basis from
//! [`crate::liealg::ProductSpace`]: row-major composition with the last factor
//! varying fastest, and spin factors ordered by descending `X0` eigenvalue.
//!
//! The coupled-system interaction ladder is exposed one Hermitian row at a
//! time through [`coupled_interaction_term`]. At modulation order 3 the
//! operator table contains repeated shapes that differ only in which harmonic
//! channel multiplies them; rows here enumerate the distinct operator shapes
//! once and callers attach per-channel coefficients. Diagonal polynomial
//! factors always multiply from the right of their ladder product; the
//! returned matrix is the sum of that product and its conjugate transpose.

use std::collections::BTreeMap;

use ndarray::Array2;
use thiserror::Error;

use crate::coeffs::{weak_recursion, CoeffsError, CoefficientTable, Sign};
use crate::liealg::{
    build_generators, discrete_nabla, discrete_nabla1, structural_phi, tensor_embed, AlgebraKind,
    LieError, Poly1, Poly2, ProductSpace,
};
use crate::matutil::adjoint;
use crate::C64;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Coeffs(#[from] CoeffsError),
    #[error("parameter {name} = {value} is outside its allowed range")]
    Parameter { name: &'static str, value: f64 },
    #[error("no interaction row {row} at modulation order {m}")]
    RowOutOfRange { m: usize, row: usize },
    #[error("operation needs exactly {expected} tensor factors, got {got}")]
    FactorCount { expected: usize, got: usize },
}

fn positive(name: &'static str, value: f64) -> Result<(), ModelError> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(ModelError::Parameter { name, value })
    }
}

fn nonnegative(name: &'static str, value: f64) -> Result<(), ModelError> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(ModelError::Parameter { name, value })
    }
}

fn min_truncation(name: &'static str, dim: usize) -> Result<(), ModelError> {
    // Below four levels the leakage guard in the propagator has nothing to
    // watch and truncation artifacts dominate.
    if dim >= 4 {
        Ok(())
    } else {
        Err(ModelError::Parameter {
            name,
            value: dim as f64,
        })
    }
}

/// A Hamiltonian family `H(t) = h_static + cos(nu t) h_mod` on a product space.
#[derive(Debug, Clone)]
pub struct ModelSpec {
    pub space: ProductSpace,
    pub h_static: Array2<C64>,
    pub h_mod: Array2<C64>,
    pub nu: f64,
    pub params: BTreeMap<String, f64>,
    pub label: String,
}

impl ModelSpec {
    pub fn dim(&self) -> usize {
        self.space.dim
    }

    pub fn hamiltonian(&self, t: f64) -> Array2<C64> {
        let c = (self.nu * t).cos();
        &self.h_static + &self.h_mod.mapv(|z| z * c)
    }

    pub fn period(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.nu
    }
}

/// First-order effective description near one resonance.
///
/// `sign` selects the kinematics: compact factors give bounded oscillation,
/// noncompact ones hyperbolic growth.
#[derive(Debug, Clone)]
pub struct EffectiveModel {
    pub resonance_order: usize,
    pub g_eff: f64,
    pub shifted_frequencies: BTreeMap<String, f64>,
    pub sign: Sign,
    pub validity: String,
}

impl EffectiveModel {
    /// Predicted `<X0>`(t) from the initial `<X0>` and `Im <X+>`.
    pub fn predict_x0(&self, t: f64, x0_init: f64, im_xplus_init: f64) -> f64 {
        let arg = 2.0 * self.g_eff * t;
        match self.sign {
            Sign::Plus => x0_init * arg.cos() + im_xplus_init * arg.sin(),
            Sign::Minus => x0_init * arg.cosh() + im_xplus_init * arg.sinh(),
        }
    }
}

/// Single modulated system
/// `H(t) = omega X0 + 2 cos(nu t) (g0 X0 + g1 (X+ + X-))`.
pub fn build_single_modulated(
    kind: AlgebraKind,
    omega: f64,
    nu: f64,
    g0: f64,
    g1: f64,
) -> Result<ModelSpec, ModelError> {
    positive("omega", omega)?;
    positive("nu", nu)?;
    nonnegative("g0", g0)?;
    nonnegative("g1", g1)?;
    let space = tensor_embed(vec![build_generators(kind)?])?;
    let l = &space.lifted[0];
    let h_static = l.x_zero.mapv(|z| z * omega);
    let h_mod =
        l.x_zero.mapv(|z| z * (2.0 * g0)) + (&l.x_plus + &l.x_minus).mapv(|z| z * (2.0 * g1));
    let mut params = BTreeMap::new();
    params.insert("omega0".into(), omega);
    params.insert("nu".into(), nu);
    params.insert("g0".into(), g0);
    params.insert("g1".into(), g1);
    Ok(ModelSpec {
        space,
        h_static,
        h_mod,
        nu,
        params,
        label: "single".into(),
    })
}

/// Frequency-modulated system with an intensity-dependent coupling profile:
/// `H(t) = omega0 X0 + g (X+ f(X0) + f(X0) X-) + omega0 gamma cos(nu t) X0`.
///
/// `f` is evaluated on the `X0` diagonal; non-finite values are rejected.
pub fn build_nonlinear(
    kind: AlgebraKind,
    omega0: f64,
    gamma: f64,
    nu: f64,
    g: f64,
    f: impl Fn(f64) -> f64,
) -> Result<ModelSpec, ModelError> {
    positive("omega0", omega0)?;
    positive("nu", nu)?;
    nonnegative("gamma", gamma)?;
    nonnegative("g", g)?;
    let space = tensor_embed(vec![build_generators(kind)?])?;
    let gset = &space.factors[0];
    let dim = space.dim;
    let mut fdiag = Array2::<C64>::zeros((dim, dim));
    for (i, &x) in gset.x_zero_diag().iter().enumerate() {
        let v = f(x);
        if !v.is_finite() {
            return Err(ModelError::Parameter {
                name: "f(x0)",
                value: v,
            });
        }
        fdiag[[i, i]] = C64::new(v, 0.0);
    }
    let raised = gset.x_plus.dot(&fdiag);
    let coupling = (&raised + &adjoint(&raised)).mapv(|z| z * g);
    let h_static = gset.x_zero.mapv(|z| z * omega0) + coupling;
    let h_mod = gset.x_zero.mapv(|z| z * (omega0 * gamma));
    let mut params = BTreeMap::new();
    params.insert("omega0".into(), omega0);
    params.insert("gamma".into(), gamma);
    params.insert("nu".into(), nu);
    params.insert("g".into(), g);
    Ok(ModelSpec {
        space,
        h_static,
        h_mod,
        nu,
        params,
        label: "nonlinear".into(),
    })
}

/// Intensity-shift operator of the nonlinear model, diagonal in the `X0`
/// basis: `K = (phi(X0) - phi(X0 + 1)) f^2(X0) + phi(X0) (f^2(X0 - 1) - f^2(X0))`.
pub fn kerr_operator(kind: AlgebraKind, f: impl Fn(f64) -> f64) -> Result<Array2<C64>, ModelError> {
    let gset = build_generators(kind)?;
    let phi = structural_phi(&gset);
    let dphi = discrete_nabla1(&phi, 1);
    let dim = gset.dim;
    let mut out = Array2::<C64>::zeros((dim, dim));
    for (i, &x) in gset.x_zero_diag().iter().enumerate() {
        let (fx, fx_down) = (f(x), f(x - 1.0));
        if !(fx.is_finite() && fx_down.is_finite()) {
            return Err(ModelError::Parameter {
                name: "f(x0)",
                value: if fx.is_finite() { fx_down } else { fx },
            });
        }
        let value = dphi.eval(x) * fx * fx + phi.eval(x) * (fx_down * fx_down - fx * fx);
        out[[i, i]] = C64::new(value, 0.0);
    }
    Ok(out)
}

/// Two bosonic modes with a bilinear exchange coupling and frequency
/// modulation of the first:
/// `H(t) = wa n_a + wb n_b + g (a+ + a)(b+ + b) + wa gamma cos(nu t) n_a`.
pub fn build_amplifier(
    omega_a: f64,
    omega_b: f64,
    nu: f64,
    gamma: f64,
    g: f64,
    fock_a: usize,
    fock_b: usize,
) -> Result<ModelSpec, ModelError> {
    positive("omega_a", omega_a)?;
    positive("omega_b", omega_b)?;
    positive("nu", nu)?;
    nonnegative("gamma", gamma)?;
    nonnegative("g", g)?;
    min_truncation("fock_a", fock_a)?;
    min_truncation("fock_b", fock_b)?;
    let space = tensor_embed(vec![
        build_generators(AlgebraKind::H1 { dim: fock_a })?,
        build_generators(AlgebraKind::H1 { dim: fock_b })?,
    ])?;
    let (la, lb) = (&space.lifted[0], &space.lifted[1]);
    let xa = &la.x_plus + &la.x_minus;
    let xb = &lb.x_plus + &lb.x_minus;
    let h_static = la.x_zero.mapv(|z| z * omega_a)
        + lb.x_zero.mapv(|z| z * omega_b)
        + xa.dot(&xb).mapv(|z| z * g);
    let h_mod = la.x_zero.mapv(|z| z * (omega_a * gamma));
    let mut params = BTreeMap::new();
    params.insert("omega_a".into(), omega_a);
    params.insert("omega_b".into(), omega_b);
    params.insert("nu".into(), nu);
    params.insert("gamma".into(), gamma);
    params.insert("g".into(), g);
    params.insert("fock_a".into(), fock_a as f64);
    params.insert("fock_b".into(), fock_b as f64);
    Ok(ModelSpec {
        space,
        h_static,
        h_mod,
        nu,
        params,
        label: "amplifier".into(),
    })
}

/// Two two-level systems sharing a bosonic mode, with their splittings
/// modulated in phase:
/// `H(t) = w1 s_z1 + w2 s_z2 + wc n + (a+ + a)(g1 s_x1 + g2 s_x2)
///         + g0 cos(nu t)(s_z1 + s_z2)`
/// where `s_xi` is the full raise-plus-lower flip of atom `i`.
pub fn build_two_atom(
    omega1: f64,
    omega2: f64,
    omega_c: f64,
    nu: f64,
    g0: f64,
    g1: f64,
    g2: f64,
    fock_c: usize,
) -> Result<ModelSpec, ModelError> {
    positive("omega1", omega1)?;
    positive("omega2", omega2)?;
    positive("omega_c", omega_c)?;
    positive("nu", nu)?;
    nonnegative("g0", g0)?;
    nonnegative("g1", g1)?;
    nonnegative("g2", g2)?;
    min_truncation("fock_c", fock_c)?;
    let space = tensor_embed(vec![
        build_generators(AlgebraKind::Su2 { spin: 0.5 })?,
        build_generators(AlgebraKind::Su2 { spin: 0.5 })?,
        build_generators(AlgebraKind::H1 { dim: fock_c })?,
    ])?;
    let (l1, l2, lc) = (&space.lifted[0], &space.lifted[1], &space.lifted[2]);
    let quad = &lc.x_plus + &lc.x_minus;
    let flip1 = (&l1.x_plus + &l1.x_minus).dot(&quad).mapv(|z| z * g1);
    let flip2 = (&l2.x_plus + &l2.x_minus).dot(&quad).mapv(|z| z * g2);
    let h_static = l1.x_zero.mapv(|z| z * omega1)
        + l2.x_zero.mapv(|z| z * omega2)
        + lc.x_zero.mapv(|z| z * omega_c)
        + flip1
        + flip2;
    let h_mod = (&l1.x_zero + &l2.x_zero).mapv(|z| z * g0);
    let mut params = BTreeMap::new();
    params.insert("omega1".into(), omega1);
    params.insert("omega2".into(), omega2);
    params.insert("omega_c".into(), omega_c);
    params.insert("nu".into(), nu);
    params.insert("g0".into(), g0);
    params.insert("g1".into(), g1);
    params.insert("g2".into(), g2);
    params.insert("fock_c".into(), fock_c as f64);
    Ok(ModelSpec {
        space,
        h_static,
        h_mod,
        nu,
        params,
        label: "two_atom".into(),
    })
}

/// Collective spin coupled to a single mode with a modulated splitting:
/// `H(t) = w0 S_z + w1 n + g (S+ + S-)(a+ + a) + w0 gamma cos(nu t) S_z`.
pub fn build_dicke_modulated(
    spin: f64,
    omega0: f64,
    omega1: f64,
    nu: f64,
    gamma: f64,
    g: f64,
    fock: usize,
) -> Result<ModelSpec, ModelError> {
    positive("omega0", omega0)?;
    positive("omega1", omega1)?;
    positive("nu", nu)?;
    nonnegative("gamma", gamma)?;
    nonnegative("g", g)?;
    min_truncation("fock", fock)?;
    let space = tensor_embed(vec![
        build_generators(AlgebraKind::Su2 { spin })?,
        build_generators(AlgebraKind::H1 { dim: fock })?,
    ])?;
    let (ls, lb) = (&space.lifted[0], &space.lifted[1]);
    let h_static = ls.x_zero.mapv(|z| z * omega0)
        + lb.x_zero.mapv(|z| z * omega1)
        + (&ls.x_plus + &ls.x_minus)
            .dot(&(&lb.x_plus + &lb.x_minus))
            .mapv(|z| z * g);
    let h_mod = ls.x_zero.mapv(|z| z * (omega0 * gamma));
    let mut params = BTreeMap::new();
    params.insert("spin".into(), spin);
    params.insert("omega0".into(), omega0);
    params.insert("omega1".into(), omega1);
    params.insert("nu".into(), nu);
    params.insert("gamma".into(), gamma);
    params.insert("g".into(), g);
    params.insert("fock".into(), fock as f64);
    Ok(ModelSpec {
        space,
        h_static,
        h_mod,
        nu,
        params,
        label: "dicke".into(),
    })
}

/// Effective constants of the weakly modulated single system at the
/// `omega = (k+1) nu` resonance described by `table`.
///
/// pre: `k <= table.kmax`.
pub fn effective_single(table: &CoefficientTable, k: usize) -> EffectiveModel {
    let g_eff = table.g1 * table.eps(k);
    let mut shifted = BTreeMap::new();
    shifted.insert("omega_tilde".to_string(), table.omega);
    shifted.insert("nu_star".to_string(), table.omega / (k as f64 + 1.0));
    EffectiveModel {
        resonance_order: k,
        g_eff,
        shifted_frequencies: shifted,
        sign: table.sign,
        validity: format!(
            "first-order average near nu = omega/{}; needs |g1/omega| << 1",
            k + 1
        ),
    }
}

/// Predicted occupation of the initially empty mode of the amplifier model
/// under its effective bilinear coupling.
pub fn effective_amplifier_prediction(g_eff: f64, t: f64) -> f64 {
    (2.0 * g_eff * t).sinh().powi(2)
}

/// Predicted (stay, transfer) probabilities for the two-atom model started
/// with exactly one atom excited and the mode empty.
pub fn effective_two_atom_prediction(g_eff: f64, t: f64) -> (f64, f64) {
    let (s, c) = (g_eff * t).sin_cos();
    (c * c, s * s)
}

const INTERACTION_ROWS: [usize; 4] = [4, 2, 6, 6];

/// One Hermitian operator row of the coupled-system interaction ladder at
/// modulation order `m`, scaled by `coefficient`.
///
/// `row` is 1-based. `sideband` tags the harmonic channel the caller draws
/// the coefficient from; it does not change the operator shape. Rows whose
/// ladder powers exceed a finite factor are exactly zero.
///
/// Row tables (X acts on factor 0, Y on factor 1; `phi` is each factor's
/// structural polynomial and `D[m]f(x) = f(x) - f(x + m)`):
/// - order 0: rows 1-3 are `X+ Y-` (three harmonic channels), row 4 `X+ Y+`;
/// - order 1: `X+^2 D[1]phi_y(Y0)` and `Y+^2 D[1]phi_x(X0)`;
/// - order 2: `X+^3 Y+`, `X+ Y+^3`, `X+^3 Y-`, `Y+^3 X-` with the curvature
///   `D[1]^2 phi` of the opposite factor, rows 5-6 repeating rows 3-4 on the
///   other channel;
/// - order 3: `X+^2 Y+^2` against the third difference of `phi_x phi_y` and
///   against three split-curvature products, then `X+^3` and `Y+^3` against
///   shifted mixed brackets.
pub fn coupled_interaction_term(
    space: &ProductSpace,
    m: usize,
    row: usize,
    sideband: usize,
    coefficient: f64,
) -> Result<Array2<C64>, ModelError> {
    if space.factors.len() != 2 {
        return Err(ModelError::FactorCount {
            expected: 2,
            got: space.factors.len(),
        });
    }
    if m > 3 || row == 0 || row > INTERACTION_ROWS[m] {
        return Err(ModelError::RowOutOfRange { m, row });
    }
    let _ = sideband;
    let (lx, ly) = (&space.lifted[0], &space.lifted[1]);
    let phi_x = structural_phi(&space.factors[0]);
    let phi_y = structural_phi(&space.factors[1]);
    let one = Poly2::new(vec![vec![1.0]]);

    let pow = |op: &Array2<C64>, n: usize| -> Array2<C64> {
        let mut out = Array2::<C64>::eye(space.dim);
        for _ in 0..n {
            out = out.dot(op);
        }
        out
    };
    // Split curvatures: outer difference of the one-step difference.
    let curved = |phi: &Poly1, outer: i64| discrete_nabla1(&discrete_nabla1(phi, 1), outer);

    let (ladder, weight): (Array2<C64>, Poly2) = match (m, row) {
        (0, 1) | (0, 2) | (0, 3) => (lx.x_plus.dot(&ly.x_minus), one),
        (0, 4) => (lx.x_plus.dot(&ly.x_plus), one),
        (1, 1) => (
            pow(&lx.x_plus, 2),
            Poly2::from_y(&discrete_nabla1(&phi_y, 1)),
        ),
        (1, 2) => (
            pow(&ly.x_plus, 2),
            Poly2::from_x(&discrete_nabla1(&phi_x, 1)),
        ),
        (2, 1) => (
            pow(&lx.x_plus, 3).dot(&ly.x_plus),
            Poly2::from_y(&curved(&phi_y, 1)),
        ),
        (2, 2) => (
            lx.x_plus.dot(&pow(&ly.x_plus, 3)),
            Poly2::from_x(&curved(&phi_x, 1)),
        ),
        (2, 3) | (2, 5) => (
            pow(&lx.x_plus, 3).dot(&ly.x_minus),
            Poly2::from_y(&curved(&phi_y, 1)),
        ),
        (2, 4) | (2, 6) => (
            pow(&ly.x_plus, 3).dot(&lx.x_minus),
            Poly2::from_x(&curved(&phi_x, 1)),
        ),
        (3, 1) => {
            let phi_big = Poly2::from_product(&phi_x, &phi_y);
            let d3 = discrete_nabla(
                &discrete_nabla(&discrete_nabla(&phi_big, (1, 1)), (1, 1)),
                (1, 1),
            );
            (pow(&lx.x_plus, 2).dot(&pow(&ly.x_plus, 2)), d3)
        }
        (3, 2) => (
            pow(&lx.x_plus, 2).dot(&pow(&ly.x_plus, 2)),
            Poly2::from_product(&curved(&phi_x, 2), &curved(&phi_y, -2)),
        ),
        (3, 3) => (
            pow(&lx.x_plus, 2).dot(&pow(&ly.x_plus, 2)),
            Poly2::from_product(&curved(&phi_x, -2), &curved(&phi_y, 2)),
        ),
        (3, 4) => (
            pow(&lx.x_plus, 2).dot(&pow(&ly.x_minus, 2)),
            Poly2::from_product(&curved(&phi_x, 2), &curved(&phi_y, 2)),
        ),
        (3, 5) => {
            let inner = Poly2::from_product(&phi_x, &curved(&phi_y, 1).shift_arg(1.0));
            (pow(&lx.x_plus, 3), discrete_nabla(&inner, (1, -1)))
        }
        (3, 6) => {
            let inner = Poly2::from_product(&curved(&phi_x, 1).shift_arg(1.0), &phi_y);
            (pow(&ly.x_plus, 3), discrete_nabla(&inner, (-1, 1)))
        }
        _ => unreachable!("row bounds checked above"),
    };

    let diag = space.diagonal_from(|v| weight.eval(v[0], v[1]));
    let half = ladder.dot(&diag).mapv(|z| z * coefficient);
    Ok(&half + &adjoint(&half))
}

/// Coefficients multiplying the four diagonal pieces of the coupled
/// intensity shift.
#[derive(Debug, Clone, Copy, Default)]
pub struct ShiftCoefficients {
    pub c1: f64,
    pub c3a: f64,
    pub c3b: f64,
    pub c3c: f64,
}

/// Diagonal intensity-shift operator of a two-factor coupled system.
///
/// With `Phi = phi_x(X0) phi_y(Y0)`, `D` the simultaneous one-step
/// difference, and `Dm` single-variable differences, the operator is
/// `c1 D Phi + c3a D[Phi (D^2 Phi)(X0-1, Y0-1)]
///  + c3b (D1 phi_y)^2 D2[phi_x(X0) phi_x(X0-1)]
///  + c3c (D1 phi_x)^2 D2[phi_y(Y0) phi_y(Y0-1)]`.
pub fn intensity_shift_k(
    space: &ProductSpace,
    c: &ShiftCoefficients,
) -> Result<Array2<C64>, ModelError> {
    if space.factors.len() != 2 {
        return Err(ModelError::FactorCount {
            expected: 2,
            got: space.factors.len(),
        });
    }
    let phi_x = structural_phi(&space.factors[0]);
    let phi_y = structural_phi(&space.factors[1]);
    let phi_big = Poly2::from_product(&phi_x, &phi_y);
    let d1 = discrete_nabla(&phi_big, (1, 1));
    let d2 = discrete_nabla(&d1, (1, 1));
    let cross = discrete_nabla(&phi_big.mul(&d2.shift_args(-1.0, -1.0)), (1, 1));
    let dpx = discrete_nabla1(&phi_x, 1);
    let dpy = discrete_nabla1(&phi_y, 1);
    let paired_x = discrete_nabla1(&phi_x.mul(&phi_x.shift_arg(-1.0)), 2);
    let paired_y = discrete_nabla1(&phi_y.mul(&phi_y.shift_arg(-1.0)), 2);
    let total = d1
        .scale(c.c1)
        .add(&cross.scale(c.c3a))
        .add(&Poly2::from_product(&paired_x, &dpy.mul(&dpy)).scale(c.c3b))
        .add(&Poly2::from_product(&dpx.mul(&dpx), &paired_y).scale(c.c3c));
    Ok(space.diagonal_from(|v| total.eval(v[0], v[1])))
}

/// One row of the harmonic-resonance summary tables.
#[derive(Debug, Clone)]
pub struct HarmonicRow {
    pub k: usize,
    pub harmonic: usize,
    pub g_eff_table: f64,
    pub g_eff_recursion: f64,
    pub delta_omega: f64,
    pub nu_star: f64,
}

/// Odd-harmonic constants of the modulated two-level system: the closed-form
/// third-order values next to the same quantity re-derived from the
/// weak-modulation recursion at the bare resonance.
///
/// The two columns agree for the first two rows; for the third they settle on
/// different fourth-order prefactors, which the table deliberately exposes.
pub fn rabi_table(omega: f64, g: f64) -> Result<Vec<HarmonicRow>, ModelError> {
    positive("omega", omega)?;
    nonnegative("g", g)?;
    let eps = g / omega;
    let mut rows = Vec::with_capacity(3);
    for k in 0..3usize {
        let harmonic = 2 * k + 1;
        let nu = omega / harmonic as f64;
        let table = weak_recursion(Sign::Plus, omega, nu, 0.0, g, (2 * k).max(1))?;
        let g_eff_recursion = g * table.eps(2 * k);
        let (g_eff_table, delta_omega) = match k {
            0 => (g, g * eps),
            1 => (-2.25 * g * eps * eps, 4.5 * g * eps),
            _ => (
                3125.0 / 288.0 * g * eps.powi(4),
                25.0 / 6.0 * g * eps * (1.0 - 19.0 / 144.0 * eps * eps),
            ),
        };
        rows.push(HarmonicRow {
            k,
            harmonic,
            g_eff_table,
            g_eff_recursion,
            delta_omega,
            nu_star: (omega + delta_omega) / harmonic as f64,
        });
    }
    Ok(rows)
}

/// Harmonic constants of the modulated oscillator with relative depth
/// `gamma`, in the convention `g = omega gamma / 2`, `eps = gamma / 2`.
///
/// The recursion column maps the physical oscillator onto the normalized
/// single-system family (frequency `2 omega`, `g0 = omega gamma`,
/// `g1 = omega gamma / 2`) and reads off the pair-creation constant
/// `(g1 / 2) eps_k`; it reproduces the closed-form column on every row.
pub fn parosc_table(omega: f64, gamma: f64) -> Result<Vec<HarmonicRow>, ModelError> {
    positive("omega", omega)?;
    nonnegative("gamma", gamma)?;
    let g = omega * gamma / 2.0;
    let eps = gamma / 2.0;
    let mut rows = Vec::with_capacity(3);
    for k in 0..3usize {
        let harmonic = k + 1;
        let nu = 2.0 * omega / harmonic as f64;
        let table = weak_recursion(
            Sign::Minus,
            2.0 * omega,
            nu,
            omega * gamma,
            omega * gamma / 2.0,
            k.max(1),
        )?;
        let g_eff_recursion = omega * gamma / 4.0 * table.eps(k);
        let (g_eff_table, delta_omega) = match k {
            0 => (g / 2.0, -0.25 * g * eps),
            1 => (-g * eps, -4.0 / 3.0 * g * eps),
            _ => (81.0 / 32.0 * g * eps * eps, -9.0 / 8.0 * g * eps),
        };
        rows.push(HarmonicRow {
            k,
            harmonic,
            g_eff_table,
            g_eff_recursion,
            delta_omega,
            nu_star: 2.0 * (omega + delta_omega) / harmonic as f64,
        });
    }
    Ok(rows)
}
