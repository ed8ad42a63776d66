//! Oracle tests for the model builders: every assembled matrix is compared
//! against an independent in-test construction (raw 2x2 matrices, kron
//! products, or closed-form diagonal evaluations).

use ndarray::linalg::kron;
use ndarray::Array2;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use resmod::coeffs::{weak_recursion, Sign};
use resmod::liealg::{build_generators, tensor_embed, AlgebraKind};
use resmod::models::{
    build_amplifier, build_dicke_modulated, build_nonlinear, build_single_modulated,
    build_two_atom, coupled_interaction_term, effective_amplifier_prediction, effective_single,
    effective_two_atom_prediction, intensity_shift_k, kerr_operator, parosc_table, rabi_table,
    ModelError, ModelSpec, ShiftCoefficients,
};

type C64 = Complex64;

fn max_abs(m: &Array2<C64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn max_abs_diff(a: &Array2<C64>, b: &Array2<C64>) -> f64 {
    assert_eq!(a.dim(), b.dim());
    let mut worst = 0.0f64;
    for (x, y) in a.iter().zip(b.iter()) {
        worst = worst.max((x - y).norm());
    }
    worst
}

fn herm_defect(m: &Array2<C64>) -> f64 {
    let (r, c) = m.dim();
    assert_eq!(r, c);
    let mut worst = 0.0f64;
    for i in 0..r {
        for j in 0..c {
            worst = worst.max((m[[i, j]] - m[[j, i]].conj()).norm());
        }
    }
    worst
}

fn real(v: f64) -> C64 {
    C64::new(v, 0.0)
}

// ------------------------------------------------------------ assemblies

#[test]
fn single_spin_half_matches_raw_two_by_two() {
    let m = build_single_modulated(AlgebraKind::Su2 { spin: 0.5 }, 1.7, 0.6, 0.0, 0.25).unwrap();
    // Raw matrices: S_z = diag(1/2, -1/2), S+ + S- = [[0,1],[1,0]].
    let statics = [
        [real(1.7 * 0.5), real(0.0)],
        [real(0.0), real(-1.7 * 0.5)],
    ];
    let mods = [[real(0.0), real(2.0 * 0.25)], [real(2.0 * 0.25), real(0.0)]];
    for i in 0..2 {
        for j in 0..2 {
            assert_eq!(m.h_static[[i, j]], statics[i][j]);
            assert_eq!(m.h_mod[[i, j]], mods[i][j]);
        }
    }
    assert_eq!(m.nu, 0.6);
    assert_eq!(m.dim(), 2);
}

#[test]
fn single_su11_assembly_matches_generators() {
    let (omega, nu, g0, g1) = (2.3, 0.9, 0.12, 0.31);
    let m =
        build_single_modulated(AlgebraKind::Su11Boson { dim: 6 }, omega, nu, g0, g1).unwrap();
    let g = build_generators(AlgebraKind::Su11Boson { dim: 6 }).unwrap();
    let want_static = g.x_zero.mapv(|z| z * omega);
    let want_mod =
        g.x_zero.mapv(|z| z * 2.0 * g0) + (&g.x_plus + &g.x_minus).mapv(|z| z * 2.0 * g1);
    assert!(max_abs_diff(&m.h_static, &want_static) <= 1e-15);
    assert!(max_abs_diff(&m.h_mod, &want_mod) <= 1e-15);
}

#[test]
fn single_rejects_bad_parameters() {
    assert!(build_single_modulated(AlgebraKind::H1 { dim: 8 }, 0.0, 1.0, 0.0, 0.1).is_err());
    assert!(build_single_modulated(AlgebraKind::H1 { dim: 8 }, 1.0, -1.0, 0.0, 0.1).is_err());
    assert!(build_single_modulated(AlgebraKind::H1 { dim: 8 }, 1.0, 1.0, -0.1, 0.1).is_err());
}

#[test]
fn hamiltonian_combines_static_and_modulation() {
    let m = build_single_modulated(AlgebraKind::H1 { dim: 5 }, 1.1, 0.7, 0.05, 0.2).unwrap();
    let at_zero = m.hamiltonian(0.0);
    let want = &m.h_static + &m.h_mod;
    assert!(max_abs_diff(&at_zero, &want) <= 1e-16);
    // cos vanishes a quarter period in.
    let quarter = std::f64::consts::PI / (2.0 * m.nu);
    let there = m.hamiltonian(quarter);
    assert!(max_abs_diff(&there, &m.h_static) <= 1e-15 * max_abs(&m.h_mod).max(1.0));
}

fn sample_models() -> Vec<ModelSpec> {
    vec![
        build_single_modulated(AlgebraKind::Su2 { spin: 1.0 }, 2.0, 0.7, 0.1, 0.2).unwrap(),
        build_single_modulated(AlgebraKind::Su11Boson { dim: 8 }, 2.0, 0.7, 0.1, 0.2).unwrap(),
        build_single_modulated(AlgebraKind::H1 { dim: 8 }, 2.0, 0.7, 0.1, 0.2).unwrap(),
        build_nonlinear(AlgebraKind::Su2 { spin: 0.5 }, 0.2, 5.0, 1.0, 0.1, |_| 1.0).unwrap(),
        build_nonlinear(AlgebraKind::H1 { dim: 8 }, 1.0, 0.5, 0.9, 0.1, |n| (n + 1.0).sqrt())
            .unwrap(),
        build_amplifier(5.0, 10.0, 20.0, 3.6, 0.1, 4, 6).unwrap(),
        build_two_atom(10.0, 30.0, 40.0, 39.9, 1.0, 1.0, 1.0, 4).unwrap(),
        build_dicke_modulated(0.5, 0.2, 1.0, 1.0, 4.5, 0.1, 8).unwrap(),
    ]
}

#[test]
fn all_models_hermitian_at_random_times() {
    let mut rng = ChaCha8Rng::seed_from_u64(48);
    for model in sample_models() {
        for _ in 0..100 {
            let t = rng.gen_range(0.0..50.0);
            assert!(
                herm_defect(&model.hamiltonian(t)) <= 1e-13,
                "model {} at t={t}",
                model.label
            );
        }
    }
}

// -------------------------------------------------------------- nonlinear

#[test]
fn nonlinear_entries_match_sandwich_product() {
    let (omega, gamma, nu, g) = (1.3, 0.4, 0.8, 0.21);
    let f = |n: f64| (n + 1.0).sqrt();
    let m = build_nonlinear(AlgebraKind::H1 { dim: 8 }, omega, gamma, nu, g, f).unwrap();
    for i in 0..8usize {
        for j in 0..8usize {
            let want = if i == j {
                real(omega * i as f64)
            } else if i == j + 1 {
                // X+ f(X0) entry: sqrt(j+1) f(j).
                real(g * ((j + 1) as f64).sqrt() * f(j as f64))
            } else if j == i + 1 {
                real(g * ((i + 1) as f64).sqrt() * f(i as f64))
            } else {
                real(0.0)
            };
            assert!((m.h_static[[i, j]] - want).norm() <= 1e-13, "({i},{j})");
            let want_mod = if i == j {
                real(omega * gamma * i as f64)
            } else {
                real(0.0)
            };
            assert!((m.h_mod[[i, j]] - want_mod).norm() <= 1e-14);
        }
    }
}

#[test]
fn nonlinear_constant_f_is_static_spin_model() {
    let (omega0, gamma, nu, g) = (0.2, 5.0, 1.0, 0.1);
    let m = build_nonlinear(AlgebraKind::Su2 { spin: 0.5 }, omega0, gamma, nu, g, |_| 1.0)
        .unwrap();
    let gset = build_generators(AlgebraKind::Su2 { spin: 0.5 }).unwrap();
    let want_static =
        gset.x_zero.mapv(|z| z * omega0) + (&gset.x_plus + &gset.x_minus).mapv(|z| z * g);
    let want_mod = gset.x_zero.mapv(|z| z * omega0 * gamma);
    assert!(max_abs_diff(&m.h_static, &want_static) <= 1e-15);
    assert!(max_abs_diff(&m.h_mod, &want_mod) <= 1e-15);
}

#[test]
fn nonlinear_rejects_nonfinite_f() {
    let res = build_nonlinear(AlgebraKind::H1 { dim: 6 }, 1.0, 0.1, 1.0, 0.1, |_| f64::NAN);
    assert!(matches!(res, Err(ModelError::Parameter { .. })));
}

#[test]
fn nonlinear_zero_coupling_is_diagonal() {
    let m = build_nonlinear(AlgebraKind::H1 { dim: 6 }, 1.0, 0.1, 1.0, 0.0, |n| n * n).unwrap();
    for i in 0..6 {
        for j in 0..6 {
            if i != j {
                assert_eq!(m.h_static[[i, j]], real(0.0));
            }
        }
    }
}

// ------------------------------------------------------------------ kerr

#[test]
fn kerr_constant_f_reference_forms() {
    // su(2): +2 X0; second term vanishes.
    let k = kerr_operator(AlgebraKind::Su2 { spin: 0.5 }, |_| 1.0).unwrap();
    assert!((k[[0, 0]] - real(1.0)).norm() <= 1e-14);
    assert!((k[[1, 1]] - real(-1.0)).norm() <= 1e-14);
    // su(1,1): -2 X0 with X0 diag (2n+1)/4.
    let k = kerr_operator(AlgebraKind::Su11Boson { dim: 6 }, |_| 1.0).unwrap();
    for n in 0..6 {
        let want = -(2.0 * n as f64 + 1.0) / 2.0;
        assert!((k[[n, n]] - real(want)).norm() <= 1e-13, "n={n}");
    }
}

#[test]
fn kerr_h1_matches_scalar_evaluation() {
    // h(1): nabla phi = -1, X+X- diag = n; entries -f^2(n) + n(f^2(n-1)-f^2(n)).
    let f = |n: f64| n;
    let k = kerr_operator(AlgebraKind::H1 { dim: 6 }, f).unwrap();
    for n in 0..6usize {
        let x = n as f64;
        let want = -(x * x) + x * ((x - 1.0) * (x - 1.0) - x * x);
        assert!((k[[n, n]] - real(want)).norm() <= 1e-12, "n={n}");
        for j in 0..6 {
            if j != n {
                assert_eq!(k[[n, j]], real(0.0));
            }
        }
    }
}

#[test]
fn kerr_su2_matches_ladder_product_form() {
    let spin = 1.5;
    let f = |m: f64| m * m + 0.5;
    let k = kerr_operator(AlgebraKind::Su2 { spin }, f).unwrap();
    let g = build_generators(AlgebraKind::Su2 { spin }).unwrap();
    let diag = g.x_zero_diag();
    for (i, &m) in diag.iter().enumerate() {
        let plus_minus = spin * (spin + 1.0) - m * (m - 1.0);
        let want = 2.0 * m * f(m) * f(m) + plus_minus * (f(m - 1.0) * f(m - 1.0) - f(m) * f(m));
        assert!((k[[i, i]] - real(want)).norm() <= 1e-12, "m={m}");
    }
}

// -------------------------------------------------------- coupled models

#[test]
fn amplifier_assembly_entries() {
    let (wa, wb, nu, gamma, g, na, nb) = (5.0, 10.0, 20.0, 3.6, 0.1, 4usize, 5usize);
    let m = build_amplifier(wa, wb, nu, gamma, g, na, nb).unwrap();
    assert_eq!(m.dim(), na * nb);
    let idx = |ia: usize, ib: usize| ia * nb + ib;
    for ia in 0..na {
        for ib in 0..nb {
            let i = idx(ia, ib);
            let want = wa * ia as f64 + wb * ib as f64;
            assert!((m.h_static[[i, i]] - real(want)).norm() <= 1e-13);
            let want_mod = wa * gamma * ia as f64;
            assert!((m.h_mod[[i, i]] - real(want_mod)).norm() <= 1e-12);
            // Two-mode coupling: simultaneous raise on both modes.
            if ia + 1 < na && ib + 1 < nb {
                let j = idx(ia + 1, ib + 1);
                let want = g * ((ia + 1) as f64).sqrt() * ((ib + 1) as f64).sqrt();
                assert!((m.h_static[[j, i]] - real(want)).norm() <= 1e-13);
            }
        }
    }
    // Modulation acts on mode a only: h_mod off-diagonal is zero.
    for i in 0..m.dim() {
        for j in 0..m.dim() {
            if i != j {
                assert_eq!(m.h_mod[[i, j]], real(0.0));
            }
        }
    }
    assert!(build_amplifier(wa, wb, nu, gamma, g, 3, nb).is_err());
}

#[test]
fn two_atom_assembly_and_decoupling() {
    let (w1, w2, wc, nu, g0, g1, g2, nc) = (10.0, 30.0, 40.0, 39.9, 0.8, 0.3, 0.7, 5usize);
    let m = build_two_atom(w1, w2, wc, nu, g0, g1, g2, nc).unwrap();
    assert_eq!(m.dim(), 4 * nc);
    // Basis index: ((atom1 * 2) + atom2) * nc + n, atom index 0 = excited.
    let idx = |a1: usize, a2: usize, n: usize| (a1 * 2 + a2) * nc + n;
    let sz = |a: usize| if a == 0 { 0.5 } else { -0.5 };
    for a1 in 0..2 {
        for a2 in 0..2 {
            for n in 0..nc {
                let i = idx(a1, a2, n);
                let want = w1 * sz(a1) + w2 * sz(a2) + wc * n as f64;
                assert!((m.h_static[[i, i]] - real(want)).norm() <= 1e-13);
                let want_mod = g0 * (sz(a1) + sz(a2));
                assert!((m.h_mod[[i, i]] - real(want_mod)).norm() <= 1e-13);
            }
        }
    }
    // Atom 1 flip with photon creation: <e g, n+1| H |g g, n> = g1 sqrt(n+1).
    for n in 0..nc - 1 {
        let from = idx(1, 1, n);
        let to1 = idx(0, 1, n + 1);
        let to2 = idx(1, 0, n + 1);
        assert!(
            (m.h_static[[to1, from]] - real(g1 * ((n + 1) as f64).sqrt())).norm() <= 1e-13
        );
        assert!(
            (m.h_static[[to2, from]] - real(g2 * ((n + 1) as f64).sqrt())).norm() <= 1e-13
        );
    }
    // Counter-rotating part is present too: <e g, n| H |g g, n+1>.
    let from = idx(1, 1, 1);
    let to = idx(0, 1, 0);
    assert!((m.h_static[[to, from]] - real(g1)).norm() <= 1e-13);

    // With g1 = g2 = 0 the field sector decouples: no photon-changing entries.
    let free = build_two_atom(w1, w2, wc, nu, g0, 0.0, 0.0, nc).unwrap();
    for i in 0..free.dim() {
        for j in 0..free.dim() {
            if i % nc != j % nc {
                assert_eq!(free.h_static[[i, j]], real(0.0));
            }
        }
    }
}

#[test]
fn dicke_assembly_matches_kron_oracle() {
    let (spin, w0, w1, nu, gamma, g, n) = (0.5, 0.2, 1.0, 1.0, 4.5, 0.1, 8usize);
    let m = build_dicke_modulated(spin, w0, w1, nu, gamma, g, n).unwrap();
    assert_eq!(m.dim(), 2 * n);
    let s = build_generators(AlgebraKind::Su2 { spin }).unwrap();
    let b = build_generators(AlgebraKind::H1 { dim: n }).unwrap();
    let eye_s = Array2::<C64>::eye(2);
    let eye_b = Array2::<C64>::eye(n);
    let want_static = kron(&s.x_zero.mapv(|z| z * w0), &eye_b)
        + kron(&eye_s, &b.x_zero.mapv(|z| z * w1))
        + kron(
            &(&s.x_plus + &s.x_minus),
            &(&b.x_plus + &b.x_minus).mapv(|z| z * g),
        );
    let want_mod = kron(&s.x_zero.mapv(|z| z * w0 * gamma), &eye_b);
    assert!(max_abs_diff(&m.h_static, &want_static) <= 1e-13);
    assert!(max_abs_diff(&m.h_mod, &want_mod) <= 1e-13);
}

// ------------------------------------------------------ effective models

#[test]
fn effective_single_principal_resonance() {
    let table = weak_recursion(Sign::Plus, 3.0, 3.0, 0.0, 0.03, 4).unwrap();
    let eff = effective_single(&table, 0);
    assert_eq!(eff.g_eff, 0.03);
    assert_eq!(eff.resonance_order, 0);
    let nu_star = eff.shifted_frequencies["nu_star"];
    assert!((nu_star - 3.0).abs() <= 1e-15);
    // t = 0 reproduces the initial observable exactly.
    assert_eq!(eff.predict_x0(0.0, 0.37, -0.11), 0.37);
}

#[test]
fn effective_single_spin_half_flop_matches_analytic_evolution() {
    let g = 0.03;
    let table = weak_recursion(Sign::Plus, 3.0, 3.0, 0.0, g, 2).unwrap();
    let eff = effective_single(&table, 0);
    // Analytic 2x2 evolution under g (S+ + S-) from the upper state:
    // psi(t) = (cos(g t), -i sin(g t)), <S_z> = cos^2 - sin^2 over 2.
    for step in 0..200 {
        let t = step as f64 * 1.7;
        let (c, s) = ((g * t).cos(), (g * t).sin());
        let want = 0.5 * (c * c - s * s);
        let got = eff.predict_x0(t, 0.5, 0.0);
        assert!((got - want).abs() <= 1e-10, "t={t}");
    }
}

#[test]
fn effective_single_su11_growth_matches_matrix_exponential() {
    let g = 0.02;
    let table = weak_recursion(Sign::Minus, 2.0, 2.0, 0.0, g, 2).unwrap();
    let eff = effective_single(&table, 0);
    // Oracle: d/dt (x0, v) = 2 g_eff [[0,1],[1,0]] (x0, v); exponentiate by
    // scaling and squaring a Taylor series, independently of any library.
    let expm2 = |a: [[f64; 2]; 2]| -> [[f64; 2]; 2] {
        let mut scaled = a;
        let mut norm = 0.0f64;
        for row in &a {
            norm = norm.max(row[0].abs() + row[1].abs());
        }
        let squarings = norm.log2().ceil().max(0.0) as u32 + 4;
        let factor = 0.5f64.powi(squarings as i32);
        for row in scaled.iter_mut() {
            row[0] *= factor;
            row[1] *= factor;
        }
        let mul = |p: [[f64; 2]; 2], q: [[f64; 2]; 2]| {
            let mut out = [[0.0; 2]; 2];
            for i in 0..2 {
                for j in 0..2 {
                    out[i][j] = p[i][0] * q[0][j] + p[i][1] * q[1][j];
                }
            }
            out
        };
        let mut result = [[1.0, 0.0], [0.0, 1.0]];
        let mut term = [[1.0, 0.0], [0.0, 1.0]];
        for k in 1..24 {
            term = mul(term, scaled);
            for i in 0..2 {
                for j in 0..2 {
                    term[i][j] /= k as f64;
                    result[i][j] += term[i][j];
                }
            }
        }
        for _ in 0..squarings {
            result = mul(result, result);
        }
        result
    };
    let (x0, v0) = (0.25, 0.1);
    for step in 1..40 {
        let t = step as f64 * 2.5;
        let u = expm2([[0.0, 2.0 * eff.g_eff * t], [2.0 * eff.g_eff * t, 0.0]]);
        let want = u[0][0] * x0 + u[0][1] * v0;
        let got = eff.predict_x0(t, x0, v0);
        assert!((got - want).abs() <= 1e-10 * want.abs().max(1.0), "t={t}");
    }
    // Hyperbolic growth, not oscillation.
    assert!(eff.predict_x0(100.0, 0.25, 0.0) > eff.predict_x0(50.0, 0.25, 0.0));
}

#[test]
fn effective_prediction_scalars() {
    assert_eq!(effective_amplifier_prediction(0.0, 7.0), 0.0);
    assert_eq!(effective_amplifier_prediction(9e-4, 0.0), 0.0);
    let v = effective_amplifier_prediction(9e-4, 500.0);
    assert!((v - 0.9f64.sinh().powi(2)).abs() <= 1e-12);
    assert!((v - 1.0537).abs() <= 1e-3);

    let (cos_var, sin_var) = effective_two_atom_prediction(4.2e-3, 0.0);
    assert_eq!(cos_var, 1.0);
    assert_eq!(sin_var, 0.0);
    let g = 4.2e-3;
    let quarter = std::f64::consts::FRAC_PI_2 / g;
    let (c, s) = effective_two_atom_prediction(g, quarter);
    assert!(c.abs() <= 1e-12 && (s - 1.0).abs() <= 1e-12);
    let period = std::f64::consts::PI / g;
    let (c1, s1) = effective_two_atom_prediction(g, 13.0);
    let (c2, s2) = effective_two_atom_prediction(g, 13.0 + period);
    assert!((c1 - c2).abs() <= 1e-9 && (s1 - s2).abs() <= 1e-9);
}

// --------------------------------------------- coupled interaction terms

fn two_mode_space(nx: usize, ny: usize) -> resmod::liealg::ProductSpace {
    tensor_embed(vec![
        build_generators(AlgebraKind::H1 { dim: nx }).unwrap(),
        build_generators(AlgebraKind::H1 { dim: ny }).unwrap(),
    ])
    .unwrap()
}

#[test]
fn interaction_rows_are_hermitian_and_bounded() {
    let space = tensor_embed(vec![
        build_generators(AlgebraKind::Su2 { spin: 1.0 }).unwrap(),
        build_generators(AlgebraKind::Su11Boson { dim: 6 }).unwrap(),
    ])
    .unwrap();
    let counts = [4usize, 2, 6, 6];
    for (m, &count) in counts.iter().enumerate() {
        for row in 1..=count {
            let term = coupled_interaction_term(&space, m, row, 2, 0.7).unwrap();
            assert!(herm_defect(&term) <= 1e-13, "m={m} row={row}");
        }
        let over = coupled_interaction_term(&space, m, count + 1, 2, 0.7);
        assert!(matches!(over, Err(ModelError::RowOutOfRange { .. })));
    }
    assert!(matches!(
        coupled_interaction_term(&space, 4, 1, 2, 0.7),
        Err(ModelError::RowOutOfRange { .. })
    ));
}

#[test]
fn interaction_requires_two_factors() {
    let single = tensor_embed(vec![build_generators(AlgebraKind::H1 { dim: 4 }).unwrap()])
        .unwrap();
    assert!(matches!(
        coupled_interaction_term(&single, 0, 1, 1, 1.0),
        Err(ModelError::FactorCount { .. })
    ));
}

#[test]
fn interaction_nilpotent_ladder_powers_vanish() {
    let space = tensor_embed(vec![
        build_generators(AlgebraKind::Su2 { spin: 0.5 }).unwrap(),
        build_generators(AlgebraKind::H1 { dim: 6 }).unwrap(),
    ])
    .unwrap();
    // X ladder squared or cubed on spin-1/2 is exactly zero.
    for (m, row) in [(1usize, 1usize), (2, 1), (2, 3), (3, 1), (3, 5)] {
        let term = coupled_interaction_term(&space, m, row, 1, 1.3).unwrap();
        assert_eq!(max_abs(&term), 0.0, "m={m} row={row}");
    }
    // Y-side cubes survive on the bosonic factor.
    let term = coupled_interaction_term(&space, 2, 2, 1, 1.3).unwrap();
    assert!(max_abs(&term) > 0.0);
}

#[test]
fn interaction_m0_matches_kron_assembly() {
    let space = two_mode_space(4, 4);
    let gx = &space.factors[0];
    let gy = &space.factors[1];
    let c = 1.3;
    let build = |a: &Array2<C64>, b: &Array2<C64>| -> Array2<C64> {
        let half = kron(a, b).mapv(|z| z * c);
        let mut out = half.clone();
        for i in 0..out.nrows() {
            for j in 0..out.ncols() {
                out[[i, j]] = half[[i, j]] + half[[j, i]].conj();
            }
        }
        out
    };
    let want_pm = build(&gx.x_plus, &gy.x_minus);
    for row in 1..=3 {
        let term = coupled_interaction_term(&space, 0, row, 1, c).unwrap();
        assert!(max_abs_diff(&term, &want_pm) <= 1e-13, "row={row}");
    }
    let want_pp = build(&gx.x_plus, &gy.x_plus);
    let term = coupled_interaction_term(&space, 0, 4, 1, c).unwrap();
    assert!(max_abs_diff(&term, &want_pp) <= 1e-13);
}

#[test]
fn interaction_m2_constant_curvature_matches_kron() {
    // H1 x SU2(1/2): second difference of the spin structural polynomial is
    // the constant -2, so row 1 reduces to -2c (adag^3 tensor S+) + h.c.
    let space = tensor_embed(vec![
        build_generators(AlgebraKind::H1 { dim: 6 }).unwrap(),
        build_generators(AlgebraKind::Su2 { spin: 0.5 }).unwrap(),
    ])
    .unwrap();
    let c = 0.45;
    let a = &space.factors[0].x_plus;
    let a3 = a.dot(a).dot(a);
    let sp = &space.factors[1].x_plus;
    let half = kron(&a3, sp).mapv(|z| z * (-2.0 * c));
    let mut want = half.clone();
    for i in 0..want.nrows() {
        for j in 0..want.ncols() {
            want[[i, j]] = half[[i, j]] + half[[j, i]].conj();
        }
    }
    let term = coupled_interaction_term(&space, 2, 1, 1, c).unwrap();
    assert!(max_abs_diff(&term, &want) <= 1e-12);
}

#[test]
fn interaction_m3_third_difference_of_quadratic_vanishes() {
    // Both factors h(1): Phi = x y has degree 2, so the third difference is
    // identically zero.
    let space = two_mode_space(5, 5);
    let term = coupled_interaction_term(&space, 3, 1, 1, 2.0).unwrap();
    assert_eq!(max_abs(&term), 0.0);
}

#[test]
fn interaction_m3_shifted_bracket_reduces_to_constant() {
    // H1 x SU2(1/2), row 5: the bracket collapses to the constant 2, giving
    // 2c (adag^3 tensor I) + h.c.
    let space = tensor_embed(vec![
        build_generators(AlgebraKind::H1 { dim: 6 }).unwrap(),
        build_generators(AlgebraKind::Su2 { spin: 0.5 }).unwrap(),
    ])
    .unwrap();
    let c = 0.8;
    let a = &space.factors[0].x_plus;
    let a3 = a.dot(a).dot(a);
    let eye = Array2::<C64>::eye(2);
    let half = kron(&a3, &eye).mapv(|z| z * (2.0 * c));
    let mut want = half.clone();
    for i in 0..want.nrows() {
        for j in 0..want.ncols() {
            want[[i, j]] = half[[i, j]] + half[[j, i]].conj();
        }
    }
    let term = coupled_interaction_term(&space, 3, 5, 1, c).unwrap();
    assert!(max_abs_diff(&term, &want) <= 1e-12);
    // Row 6 flips the roles: spin cube vanishes identically.
    let term = coupled_interaction_term(&space, 3, 6, 1, c).unwrap();
    assert_eq!(max_abs(&term), 0.0);
}

// -------------------------------------------------------- intensity shift

#[test]
fn intensity_shift_h1_pair_is_affine() {
    let space = two_mode_space(6, 6);
    let k = intensity_shift_k(
        &space,
        &ShiftCoefficients {
            c1: 1.0,
            c3a: 0.3,
            c3b: 0.2,
            c3c: 0.4,
        },
    )
    .unwrap();
    // Hand-expanded closed form for phi(x) = x on both factors.
    for na in 0..6usize {
        for nb in 0..6usize {
            let i = na * 6 + nb;
            let (x, y) = (na as f64, nb as f64);
            let t1 = -x - y - 1.0;
            let t2 = -2.0 * x - 2.0 * y - 2.0;
            let t3 = -4.0 * x - 2.0;
            let t4 = -4.0 * y - 2.0;
            let want = t1 + 0.3 * t2 + 0.2 * t3 + 0.4 * t4;
            assert!((k[[i, i]] - real(want)).norm() <= 1e-12, "({na},{nb})");
            for j in 0..36 {
                if j != i {
                    assert_eq!(k[[i, j]], real(0.0));
                }
            }
        }
    }
}

#[test]
fn intensity_shift_spin_boson_first_term_structure() {
    let spin = 1.0;
    let space = tensor_embed(vec![
        build_generators(AlgebraKind::Su2 { spin }).unwrap(),
        build_generators(AlgebraKind::H1 { dim: 5 }).unwrap(),
    ])
    .unwrap();
    let k = intensity_shift_k(
        &space,
        &ShiftCoefficients {
            c1: 1.0,
            c3a: 0.0,
            c3b: 0.0,
            c3c: 0.0,
        },
    )
    .unwrap();
    // nabla_{x,y} Phi for phi_x = S(S+1) + m - m^2, phi_y = n reduces to
    // m^2 + m(2n+1) - S(S+1).
    let mvals = build_generators(AlgebraKind::Su2 { spin })
        .unwrap()
        .x_zero_diag();
    for (im, &m) in mvals.iter().enumerate() {
        for n in 0..5usize {
            let i = im * 5 + n;
            let want = m * m + m * (2.0 * n as f64 + 1.0) - spin * (spin + 1.0);
            assert!((k[[i, i]] - real(want)).norm() <= 1e-12, "m={m} n={n}");
        }
    }
}

#[test]
fn intensity_shift_zero_coefficients_and_arity() {
    let space = two_mode_space(4, 4);
    let k = intensity_shift_k(
        &space,
        &ShiftCoefficients {
            c1: 0.0,
            c3a: 0.0,
            c3b: 0.0,
            c3c: 0.0,
        },
    )
    .unwrap();
    assert_eq!(max_abs(&k), 0.0);
    let single = tensor_embed(vec![build_generators(AlgebraKind::H1 { dim: 4 }).unwrap()])
        .unwrap();
    assert!(matches!(
        intensity_shift_k(&single, &ShiftCoefficients { c1: 1.0, c3a: 0.0, c3b: 0.0, c3c: 0.0 }),
        Err(ModelError::FactorCount { .. })
    ));
}

// ------------------------------------------------------------ table rows

#[test]
fn rabi_table_rows_match_printed_and_recursion_values() {
    let (omega, g) = (1.0, 0.05);
    let eps = g / omega;
    let rows = rabi_table(omega, g).unwrap();
    assert_eq!(rows.len(), 3);

    assert_eq!(rows[0].harmonic, 1);
    assert!((rows[0].g_eff_table - g).abs() <= 1e-15);
    assert!((rows[0].g_eff_recursion - g).abs() <= 1e-15);
    assert!((rows[0].delta_omega - g * eps).abs() <= 1e-15);
    assert!((rows[0].nu_star - (omega + g * eps)).abs() <= 1e-14);

    assert_eq!(rows[1].harmonic, 3);
    let want1 = -2.25 * g * eps * eps;
    assert!((rows[1].g_eff_table - want1).abs() <= 1e-15 * want1.abs());
    let rel = (rows[1].g_eff_recursion - want1).abs() / want1.abs();
    assert!(rel <= 1e-12, "recursion row 1 off by {rel}");
    assert!((rows[1].delta_omega - 4.5 * g * eps).abs() <= 1e-15);
    assert!((rows[1].nu_star - (omega + 4.5 * g * eps) / 3.0).abs() <= 1e-14);

    assert_eq!(rows[2].harmonic, 5);
    let want_table = 3125.0 / 288.0 * g * eps.powi(4);
    let want_recursion = 5625.0 / 576.0 * g * eps.powi(4);
    assert!((rows[2].g_eff_table - want_table).abs() <= 1e-12 * want_table.abs());
    let rel = (rows[2].g_eff_recursion - want_recursion).abs() / want_recursion.abs();
    assert!(rel <= 1e-10, "recursion row 2 off by {rel}");
    // The printed and recursion values disagree by exactly 9/10.
    assert!((rows[2].g_eff_recursion / rows[2].g_eff_table - 0.9).abs() <= 1e-9);
    let want_shift = 25.0 / 6.0 * g * eps * (1.0 - 19.0 / 144.0 * eps * eps);
    assert!((rows[2].delta_omega - want_shift).abs() <= 1e-15);
    assert!((rows[2].nu_star - (omega + want_shift) / 5.0).abs() <= 1e-14);
}

#[test]
fn parosc_table_rows_match_printed_and_recursion_values() {
    let (omega, gamma) = (1.0, 0.1);
    let g = omega * gamma / 2.0;
    let eps = gamma / 2.0;
    let rows = parosc_table(omega, gamma).unwrap();
    assert_eq!(rows.len(), 3);

    assert_eq!(rows[0].harmonic, 1);
    assert!((rows[0].g_eff_table - g / 2.0).abs() <= 1e-15);
    assert!((rows[0].g_eff_recursion - g / 2.0).abs() <= 1e-14);
    assert!((rows[0].delta_omega + 0.25 * g * eps).abs() <= 1e-15);
    assert!((rows[0].nu_star - 2.0 * (omega - 0.25 * g * eps)).abs() <= 1e-13);

    assert_eq!(rows[1].harmonic, 2);
    assert!((rows[1].g_eff_table + g * eps).abs() <= 1e-15);
    let rel = (rows[1].g_eff_recursion + g * eps).abs() / (g * eps);
    assert!(rel <= 1e-12, "recursion row 1 off by {rel}");
    assert!((rows[1].delta_omega + 4.0 / 3.0 * g * eps).abs() <= 1e-15);
    assert!((rows[1].nu_star - (omega - 4.0 / 3.0 * g * eps)).abs() <= 1e-13);

    assert_eq!(rows[2].harmonic, 3);
    let want2 = 81.0 / 32.0 * g * eps * eps;
    assert!((rows[2].g_eff_table - want2).abs() <= 1e-14 * want2);
    let rel = (rows[2].g_eff_recursion - want2).abs() / want2;
    assert!(rel <= 1e-10, "recursion row 2 off by {rel}");
    assert!((rows[2].delta_omega + 9.0 / 8.0 * g * eps).abs() <= 1e-15);
    let want_nu = 2.0 * (omega - 9.0 / 8.0 * g * eps) / 3.0;
    assert!((rows[2].nu_star - want_nu).abs() <= 1e-13);
}

#[test]
fn table_parameter_errors() {
    assert!(rabi_table(0.0, 0.1).is_err());
    assert!(rabi_table(1.0, -0.1).is_err());
    assert!(parosc_table(1.0, -0.2).is_err());
}
