//! Truncated matrix realizations of the su(2), su(1,1) and Heisenberg-Weyl
//! generator triples, tensor products, structural polynomials, and discrete
//! difference operators on diagonal polynomials.
//!
//! Conventions:
//!
//! * su(2) uses the spin-S ladder with `x_zero = diag(S, S-1, ..., -S)`;
//!   `[x_plus, x_minus] = 2 x_zero` holds on the whole space.
//! * su(1,1) is realized on a truncated Fock space through
//!   `x_plus = a_dag^2 / 2`, `x_minus = a^2 / 2`, `x_zero = (2n+1)/4`.
//!   With this normalization both `[x_zero, x_plus] = x_plus` and
//!   `[x_plus, x_minus] = -2 x_zero` hold away from the truncation edge.
//! * h(1) uses `x_plus = a_dag`, `x_minus = a`, `x_zero = a_dag a`, for which
//!   `[x_plus, x_minus] = -I` away from the truncation edge.
//!
//! Truncation is handled by contract: relations involving the ladder are exact
//! on the interior subspace (indices below `dim - 2`) and callers that evolve
//! states are expected to keep edge populations negligible.

use ndarray::linalg::kron;
use ndarray::Array2;
use thiserror::Error;

use crate::C64;

/// Hard cap on tensor-product dimensions.
pub const PRODUCT_DIM_CAP: usize = 4096;

#[derive(Debug, Error)]
pub enum LieError {
    #[error("spin {0} is not a half-integer >= 1/2")]
    InvalidSpin(f64),
    #[error("boson truncation {0} is below the minimum of 4")]
    TruncationTooSmall(usize),
    #[error("tensor product dimension {dim} exceeds the cap of {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("tensor_embed takes 1 to 3 factors, got {0}")]
    FactorCount(usize),
}

/// Which generator triple to build, with its representation parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AlgebraKind {
    /// Spin-S representation of su(2); dimension 2S+1.
    Su2 { spin: f64 },
    /// Single-boson realization of su(1,1) on a Fock space truncated at `dim`.
    Su11Boson { dim: usize },
    /// Truncated Fock ladder for the Heisenberg-Weyl algebra.
    H1 { dim: usize },
}

impl AlgebraKind {
    pub fn validate(&self) -> Result<(), LieError> {
        match *self {
            AlgebraKind::Su2 { spin } => {
                let doubled = 2.0 * spin;
                if !(spin >= 0.5) || (doubled - doubled.round()).abs() > 1e-9 {
                    return Err(LieError::InvalidSpin(spin));
                }
            }
            AlgebraKind::Su11Boson { dim } | AlgebraKind::H1 { dim } => {
                if dim < 4 {
                    return Err(LieError::TruncationTooSmall(dim));
                }
            }
        }
        Ok(())
    }

    /// Matrix dimension of the representation.
    pub fn dim(&self) -> usize {
        match *self {
            AlgebraKind::Su2 { spin } => (2.0 * spin).round() as usize + 1,
            AlgebraKind::Su11Boson { dim } | AlgebraKind::H1 { dim } => dim,
        }
    }

    /// Sign of `[x_plus, x_minus] = sign * 2 x_zero`: +1 for su(2), -1 for
    /// su(1,1), and 0 for h(1) (whose ladder commutator is the constant -1).
    pub fn sign(&self) -> f64 {
        match self {
            AlgebraKind::Su2 { .. } => 1.0,
            AlgebraKind::Su11Boson { .. } => -1.0,
            AlgebraKind::H1 { .. } => 0.0,
        }
    }

    /// True for kinds realized on a truncated Fock space.
    pub fn is_bosonic(&self) -> bool {
        !matches!(self, AlgebraKind::Su2 { .. })
    }
}

/// The three generators of one algebra in a fixed basis.
#[derive(Debug, Clone)]
pub struct GeneratorSet {
    pub kind: AlgebraKind,
    pub x_plus: Array2<C64>,
    pub x_minus: Array2<C64>,
    pub x_zero: Array2<C64>,
    pub dim: usize,
}

impl GeneratorSet {
    /// Real diagonal of `x_zero`.
    pub fn x_zero_diag(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self.x_zero[[i, i]].re).collect()
    }
}

fn adjoint(m: &Array2<C64>) -> Array2<C64> {
    let mut out = Array2::<C64>::zeros((m.ncols(), m.nrows()));
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            out[[j, i]] = m[[i, j]].conj();
        }
    }
    out
}

fn real_diag(values: &[f64]) -> Array2<C64> {
    let n = values.len();
    let mut m = Array2::<C64>::zeros((n, n));
    for (i, v) in values.iter().enumerate() {
        m[[i, i]] = C64::new(*v, 0.0);
    }
    m
}

/// Builds the generator triple for `kind`.
pub fn build_generators(kind: AlgebraKind) -> Result<GeneratorSet, LieError> {
    kind.validate()?;
    let dim = kind.dim();
    let mut x_plus = Array2::<C64>::zeros((dim, dim));
    let x_zero;
    match kind {
        AlgebraKind::Su2 { spin } => {
            let s = spin;
            let diag: Vec<f64> = (0..dim).map(|i| s - i as f64).collect();
            x_zero = real_diag(&diag);
            // Raising m -> m+1 moves one step up the m-descending basis.
            for i in 1..dim {
                let m = s - i as f64;
                x_plus[[i - 1, i]] = C64::new((s * (s + 1.0) - m * (m + 1.0)).sqrt(), 0.0);
            }
        }
        AlgebraKind::H1 { .. } => {
            let diag: Vec<f64> = (0..dim).map(|n| n as f64).collect();
            x_zero = real_diag(&diag);
            for n in 0..dim - 1 {
                x_plus[[n + 1, n]] = C64::new(((n + 1) as f64).sqrt(), 0.0);
            }
        }
        AlgebraKind::Su11Boson { .. } => {
            let diag: Vec<f64> = (0..dim).map(|n| (2 * n + 1) as f64 / 4.0).collect();
            x_zero = real_diag(&diag);
            for n in 0..dim - 2 {
                let amp = (((n + 1) * (n + 2)) as f64).sqrt() / 2.0;
                x_plus[[n + 2, n]] = C64::new(amp, 0.0);
            }
        }
    }
    let x_minus = adjoint(&x_plus);
    Ok(GeneratorSet {
        kind,
        x_plus,
        x_minus,
        x_zero,
        dim,
    })
}

/// One factor's generators lifted to the full tensor-product space.
#[derive(Debug, Clone)]
pub struct LiftedGenerators {
    pub x_plus: Array2<C64>,
    pub x_minus: Array2<C64>,
    pub x_zero: Array2<C64>,
}

/// An ordered tensor product of one to three generator sets.
#[derive(Debug, Clone)]
pub struct ProductSpace {
    pub factors: Vec<GeneratorSet>,
    pub lifted: Vec<LiftedGenerators>,
    pub dim: usize,
}

impl ProductSpace {
    /// Decomposes a product-basis index into per-factor indices.
    pub fn unravel(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0usize; self.factors.len()];
        for (slot, f) in self.factors.iter().enumerate().rev() {
            out[slot] = index % f.dim;
            index /= f.dim;
        }
        out
    }

    /// Composes per-factor indices into a product-basis index.
    pub fn ravel(&self, indices: &[usize]) -> usize {
        assert_eq!(indices.len(), self.factors.len());
        let mut out = 0usize;
        for (f, &i) in self.factors.iter().zip(indices) {
            assert!(i < f.dim);
            out = out * f.dim + i;
        }
        out
    }

    /// Diagonal operator whose entries are `f` evaluated on the tuple of
    /// factor `x_zero` diagonal values at each product index.
    pub fn diagonal_from(&self, f: impl Fn(&[f64]) -> f64) -> Array2<C64> {
        let diags: Vec<Vec<f64>> = self.factors.iter().map(|g| g.x_zero_diag()).collect();
        let mut m = Array2::<C64>::zeros((self.dim, self.dim));
        let mut args = vec![0.0f64; self.factors.len()];
        for idx in 0..self.dim {
            for (slot, &fi) in self.unravel(idx).iter().enumerate() {
                args[slot] = diags[slot][fi];
            }
            m[[idx, idx]] = C64::new(f(&args), 0.0);
        }
        m
    }
}

fn lift_one(factors: &[GeneratorSet], slot: usize, op: &Array2<C64>) -> Array2<C64> {
    let mut acc: Option<Array2<C64>> = None;
    for (i, f) in factors.iter().enumerate() {
        let piece = if i == slot {
            op.clone()
        } else {
            Array2::<C64>::eye(f.dim)
        };
        acc = Some(match acc {
            None => piece,
            Some(a) => kron(&a, &piece),
        });
    }
    acc.expect("at least one factor")
}

/// Embeds each factor's generators into the ordered tensor product.
pub fn tensor_embed(factors: Vec<GeneratorSet>) -> Result<ProductSpace, LieError> {
    if factors.is_empty() || factors.len() > 3 {
        return Err(LieError::FactorCount(factors.len()));
    }
    let dim: usize = factors.iter().map(|f| f.dim).product();
    if dim > PRODUCT_DIM_CAP {
        return Err(LieError::DimensionCap {
            dim,
            cap: PRODUCT_DIM_CAP,
        });
    }
    let lifted = (0..factors.len())
        .map(|slot| LiftedGenerators {
            x_plus: lift_one(&factors, slot, &factors[slot].x_plus),
            x_minus: lift_one(&factors, slot, &factors[slot].x_minus),
            x_zero: lift_one(&factors, slot, &factors[slot].x_zero),
        })
        .collect();
    Ok(ProductSpace {
        factors,
        lifted,
        dim,
    })
}

/// Coefficients of the degree-<=2 polynomial with `phi(x_zero) = x_plus x_minus`
/// as diagonal matrices, valid on the interior subspace.
pub fn structural_phi(g: &GeneratorSet) -> Poly1 {
    match g.kind {
        AlgebraKind::Su2 { spin } => Poly1::new(vec![spin * (spin + 1.0), 1.0, -1.0]),
        AlgebraKind::H1 { .. } => Poly1::new(vec![0.0, 1.0]),
        // With x_zero = (2n+1)/4 the diagonal of x_plus x_minus is n(n-1)/4.
        AlgebraKind::Su11Boson { .. } => Poly1::new(vec![3.0 / 16.0, -1.0, 1.0]),
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    let mut out = 1.0f64;
    for i in 0..k {
        out = out * (n - i) as f64 / (i + 1) as f64;
    }
    out
}

/// Real polynomial in one diagonal variable; `c[k]` multiplies `x^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly1 {
    c: Vec<f64>,
}

impl Poly1 {
    pub fn new(coeffs: Vec<f64>) -> Self {
        let mut p = Poly1 { c: coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Poly1 { c: vec![] }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.c
    }

    fn trim(&mut self) {
        while matches!(self.c.last(), Some(&v) if v == 0.0) {
            self.c.pop();
        }
    }

    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.c.iter().rev().fold(0.0, |acc, &ck| acc * x + ck)
    }

    pub fn scale(&self, a: f64) -> Poly1 {
        Poly1::new(self.c.iter().map(|&ck| a * ck).collect())
    }

    pub fn add(&self, other: &Poly1) -> Poly1 {
        let n = self.c.len().max(other.c.len());
        let mut out = vec![0.0; n];
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = self.c.get(k).copied().unwrap_or(0.0) + other.c.get(k).copied().unwrap_or(0.0);
        }
        Poly1::new(out)
    }

    pub fn mul(&self, other: &Poly1) -> Poly1 {
        if self.c.is_empty() || other.c.is_empty() {
            return Poly1::zero();
        }
        let mut out = vec![0.0; self.c.len() + other.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            for (j, &b) in other.c.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly1::new(out)
    }

    /// The polynomial `x -> f(x + m)`.
    pub fn shift_arg(&self, m: f64) -> Poly1 {
        let mut out = vec![0.0; self.c.len()];
        for (i, &ci) in self.c.iter().enumerate() {
            for k in 0..=i {
                out[k] += ci * binomial(i, k) * m.powi((i - k) as i32);
            }
        }
        Poly1::new(out)
    }
}

/// Real polynomial in two diagonal variables; `c[i][j]` multiplies `x^i y^j`.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly2 {
    c: Vec<Vec<f64>>,
}

impl Poly2 {
    /// Builds from rows indexed by the x-power; ragged rows are padded.
    pub fn new(rows: Vec<Vec<f64>>) -> Self {
        let width = rows.iter().map(|r| r.len()).max().unwrap_or(0);
        let c = rows
            .into_iter()
            .map(|mut r| {
                r.resize(width, 0.0);
                r
            })
            .collect();
        let mut p = Poly2 { c };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Poly2 { c: vec![] }
    }

    fn trim(&mut self) {
        while matches!(self.c.last(), Some(row) if row.iter().all(|&v| v == 0.0)) {
            self.c.pop();
        }
        let width = self
            .c
            .iter()
            .map(|r| {
                let mut w = r.len();
                while w > 0 && r[w - 1] == 0.0 {
                    w -= 1;
                }
                w
            })
            .max()
            .unwrap_or(0);
        for row in &mut self.c {
            row.truncate(width);
            row.resize(width, 0.0);
        }
    }

    pub fn from_product(fx: &Poly1, fy: &Poly1) -> Self {
        let rows = fx
            .coeffs()
            .iter()
            .map(|&a| fy.coeffs().iter().map(|&b| a * b).collect())
            .collect();
        Poly2::new(rows)
    }

    /// Lifts a single-variable polynomial in x (constant in y).
    pub fn from_x(fx: &Poly1) -> Self {
        Poly2::new(fx.coeffs().iter().map(|&a| vec![a]).collect())
    }

    /// Lifts a single-variable polynomial in y (constant in x).
    pub fn from_y(fy: &Poly1) -> Self {
        Poly2::new(vec![fy.coeffs().to_vec()])
    }

    pub fn degree_x(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn degree_y(&self) -> usize {
        self.c.first().map_or(0, |r| r.len().saturating_sub(1))
    }

    pub fn total_degree(&self) -> usize {
        let mut best = 0usize;
        for (i, row) in self.c.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v != 0.0 {
                    best = best.max(i + j);
                }
            }
        }
        best
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.c.iter().rev().fold(0.0, |acc, row| {
            acc * x + row.iter().rev().fold(0.0, |a, &cij| a * y + cij)
        })
    }

    pub fn scale(&self, a: f64) -> Poly2 {
        Poly2::new(
            self.c
                .iter()
                .map(|row| row.iter().map(|&v| a * v).collect())
                .collect(),
        )
    }

    pub fn add(&self, other: &Poly2) -> Poly2 {
        let nx = self.c.len().max(other.c.len());
        let ny = self
            .c
            .first()
            .map_or(0, |r| r.len())
            .max(other.c.first().map_or(0, |r| r.len()));
        let mut rows = vec![vec![0.0; ny]; nx];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                let a = self.c.get(i).and_then(|r| r.get(j)).copied().unwrap_or(0.0);
                let b = other
                    .c
                    .get(i)
                    .and_then(|r| r.get(j))
                    .copied()
                    .unwrap_or(0.0);
                *slot = a + b;
            }
        }
        Poly2::new(rows)
    }

    pub fn mul(&self, other: &Poly2) -> Poly2 {
        if self.c.is_empty() || other.c.is_empty() {
            return Poly2::zero();
        }
        let nx = self.c.len() + other.c.len() - 1;
        let ny = self.c[0].len() + other.c[0].len() - 1;
        let mut rows = vec![vec![0.0; ny]; nx];
        for (i, ra) in self.c.iter().enumerate() {
            for (j, &a) in ra.iter().enumerate() {
                if a == 0.0 {
                    continue;
                }
                for (k, rb) in other.c.iter().enumerate() {
                    for (l, &b) in rb.iter().enumerate() {
                        rows[i + k][j + l] += a * b;
                    }
                }
            }
        }
        Poly2::new(rows)
    }

    /// The polynomial `(x, y) -> f(x + m, y + n)`.
    pub fn shift_args(&self, m: f64, n: f64) -> Poly2 {
        if self.c.is_empty() {
            return Poly2::zero();
        }
        let nx = self.c.len();
        let ny = self.c[0].len();
        let mut rows = vec![vec![0.0; ny]; nx];
        for (i, row) in self.c.iter().enumerate() {
            for (j, &cij) in row.iter().enumerate() {
                if cij == 0.0 {
                    continue;
                }
                for p in 0..=i {
                    let bx = binomial(i, p) * m.powi((i - p) as i32);
                    for q in 0..=j {
                        let by = binomial(j, q) * n.powi((j - q) as i32);
                        rows[p][q] += cij * bx * by;
                    }
                }
            }
        }
        Poly2::new(rows)
    }
}

/// Single-variable discrete difference `f(x) - f(x + m)`.
pub fn discrete_nabla1(f: &Poly1, m: i64) -> Poly1 {
    f.add(&f.shift_arg(m as f64).scale(-1.0))
}

/// Two-variable discrete difference `f(x, y) - f(x + m, y + n)`.
pub fn discrete_nabla(f: &Poly2, shift: (i64, i64)) -> Poly2 {
    f.add(&f.shift_args(shift.0 as f64, shift.1 as f64).scale(-1.0))
}
