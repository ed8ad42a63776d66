//! Small dense complex-matrix helpers shared across modules.

use ndarray::Array2;

use crate::C64;

/// Conjugate transpose.
pub(crate) fn adjoint(a: &Array2<C64>) -> Array2<C64> {
    let (r, c) = a.dim();
    let mut out = Array2::<C64>::zeros((c, r));
    for i in 0..r {
        for j in 0..c {
            out[[j, i]] = a[[i, j]].conj();
        }
    }
    out
}

/// Maximum column sum of moduli.
pub(crate) fn one_norm(a: &Array2<C64>) -> f64 {
    let mut worst = 0.0f64;
    for j in 0..a.ncols() {
        let sum: f64 = a.column(j).iter().map(|z| z.norm()).sum();
        worst = worst.max(sum);
    }
    worst
}

/// Matrix exponential by scaling and squaring around a degree-12 Taylor
/// polynomial; the scaled one-norm stays at or below 1/4, where the
/// truncation error is far under working precision.
pub(crate) fn expm(a: &Array2<C64>) -> Array2<C64> {
    let dim = a.nrows();
    let norm = one_norm(a);
    let squarings = if norm > 0.25 {
        (norm / 0.25).log2().ceil().max(0.0) as u32
    } else {
        0
    };
    let scale = 0.5f64.powi(squarings as i32);
    let b = a.mapv(|z| z * scale);
    let mut result = Array2::<C64>::eye(dim);
    let mut term = Array2::<C64>::eye(dim);
    for k in 1..=12 {
        term = term.dot(&b).mapv(|z| z / k as f64);
        result += &term;
    }
    for _ in 0..squarings {
        result = result.dot(&result);
    }
    result
}

/// `max |(U^H U - I)_{ij}|`.
pub(crate) fn unitarity_defect(u: &Array2<C64>) -> f64 {
    let prod = adjoint(u).dot(u);
    let dim = prod.nrows();
    let mut worst = 0.0f64;
    for i in 0..dim {
        for j in 0..dim {
            let want = if i == j {
                C64::new(1.0, 0.0)
            } else {
                C64::new(0.0, 0.0)
            };
            worst = worst.max((prod[[i, j]] - want).norm());
        }
    }
    worst
}
