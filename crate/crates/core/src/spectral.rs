//! Heat kernels `exp(-tΔ)` of the even and odd Laplacians.
//!
//! The super-Laplacian is the block sum `Δ⁺ ⊕ Δ⁻` acting on states over
//! vertices ⊕ edges. The blocks never couple, so they are exponentiated
//! separately and never assembled into one matrix.
//!
//! Exponentials use a truncated Taylor series. For a truncation order `N`
//! and `B` the largest absolute row sum of `Δ`, the tail is bounded in the
//! max-entry norm by
//!
//! ```text
//! e^{tB} (tB)^{N+1} / (N+1)!
//! ```
//!
//! and `N` is the smallest order that brings this below the requested
//! tolerance. The bound is reported alongside the result.
//!
//! The nonzero spectra of `I Iᵗ` and `Iᵗ I` coincide, so the supertrace
//! `tr exp(-tΔ⁺) - tr exp(-tΔ⁻)` is `|V| - |E|` for every `t`.

use alloc::vec::Vec;
use core::fmt;

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::graph::Graph;
use crate::matrix::IntMatrix;

/// Default cap on the truncation order.
pub const DEFAULT_ORDER_CAP: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum SpectralError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("time must be a finite value >= 0, got {0}")]
    InvalidTime(f64),
    #[error("tolerance must be a finite value > 0, got {0}")]
    InvalidTolerance(f64),
    #[error("tolerance {tolerance:e} needs a truncation order above the cap of {order_cap} (bound at cap: {bound_at_cap:e})")]
    ToleranceUnreachable {
        tolerance: f64,
        order_cap: usize,
        bound_at_cap: f64,
    },
    #[error("series produced a non-finite entry")]
    NonFinite,
    #[error("state has length {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// Dense row-major `f64` matrix.
#[derive(Clone, PartialEq)]
pub struct FloatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<f64>,
}

impl FloatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FloatMatrix {
            rows,
            cols,
            entries: alloc::vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = 1.0;
        }
        m
    }

    pub fn from_rows(rows: &[&[f64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        FloatMatrix {
            rows: rows.len(),
            cols,
            entries: rows.iter().flat_map(|r| r.iter().copied()).collect(),
        }
    }

    /// Nearest-`f64` conversion of an exact matrix.
    pub fn from_int(m: &IntMatrix) -> Self {
        FloatMatrix {
            rows: m.rows(),
            cols: m.cols(),
            entries: m
                .entries()
                .iter()
                .map(|x| x.to_f64().unwrap_or(f64::NAN))
                .collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().all(|x| x.is_finite())
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.entries[i * self.cols + j];
            }
        }
        t
    }

    pub fn scaled(&self, factor: f64) -> Self {
        FloatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * factor).collect(),
        }
    }

    /// `self · rhs`; panics on non-conformable shapes.
    pub fn mul(&self, rhs: &FloatMatrix) -> FloatMatrix {
        assert_eq!(self.cols, rhs.rows, "non-conformable product");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for p in 0..self.cols {
                let a = self.entries[i * self.cols + p];
                if a == 0.0 {
                    continue;
                }
                let out_row = &mut out.entries[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, b) in out_row.iter_mut().zip(rhs.row(p)) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, v.len(), "non-conformable product");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn trace(&self) -> f64 {
        assert_eq!(self.rows, self.cols, "trace of a non-square matrix");
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    /// `max |self - other|` over entries.
    pub fn max_abs_diff(&self, other: &FloatMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| libm::fabs(a - b))
            .fold(0.0, f64::max)
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.entries
            .iter()
            .map(|x| libm::fabs(*x))
            .fold(0.0, f64::max)
    }

    fn add_assign(&mut self, other: &FloatMatrix) {
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            *a += b;
        }
    }

    fn symmetrize(&mut self) {
        let n = self.rows;
        for i in 0..n {
            for j in i + 1..n {
                let avg = 0.5 * (self.entries[i * n + j] + self.entries[j * n + i]);
                self.entries[i * n + j] = avg;
                self.entries[j * n + i] = avg;
            }
        }
    }
}

impl fmt::Debug for FloatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FloatMatrix {}x{} ", self.rows, self.cols)?;
        f.debug_list()
            .entries((0..self.rows).map(|i| self.row(i)))
            .finish()
    }
}

/// `exp(-tΔ)` together with the truncation order used and the certified
/// bound on the discarded tail.
#[derive(Debug, Clone, PartialEq)]
pub struct HeatKernel {
    pub matrix: FloatMatrix,
    pub t: f64,
    pub truncation_order: usize,
    pub remainder_bound: f64,
}

/// Heat kernels of both blocks of the super-Laplacian.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperHeatKernel {
    /// `exp(-tΔ⁺)`, acting on the vertex block.
    pub even: HeatKernel,
    /// `exp(-tΔ⁻)`, acting on the edge block.
    pub odd: HeatKernel,
}

impl SuperHeatKernel {
    pub fn supertrace(&self) -> f64 {
        self.even.matrix.trace() - self.odd.matrix.trace()
    }

    pub fn remainder_bound(&self) -> f64 {
        self.even.remainder_bound.max(self.odd.remainder_bound)
    }

    pub fn truncation_order(&self) -> usize {
        self.even.truncation_order.max(self.odd.truncation_order)
    }

    /// Applies the kernel blockwise to a state over vertices ⊕ edges.
    pub fn apply(&self, psi: &[f64]) -> Result<Vec<f64>, SpectralError> {
        let nv = self.even.matrix.rows();
        let ne = self.odd.matrix.rows();
        if psi.len() != nv + ne {
            return Err(SpectralError::DimensionMismatch {
                expected: nv + ne,
                found: psi.len(),
            });
        }
        let (vertex_part, edge_part) = psi.split_at(nv);
        let mut out = self.even.matrix.mul_vec(vertex_part);
        out.extend(self.odd.matrix.mul_vec(edge_part));
        Ok(out)
    }
}

/// A state evolved for time `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct EvolvedState {
    pub state: Vec<f64>,
    pub t: f64,
    pub truncation_order: usize,
    /// Larger of the two blocks' kernel remainder bounds.
    pub remainder_bound: f64,
}

/// Truncated-Taylor exponentiator with a cap on the series order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HeatEngine {
    pub order_cap: usize,
}

impl Default for HeatEngine {
    fn default() -> Self {
        HeatEngine {
            order_cap: DEFAULT_ORDER_CAP,
        }
    }
}

impl HeatEngine {
    pub fn with_order_cap(order_cap: usize) -> Self {
        HeatEngine { order_cap }
    }

    /// Smallest order `N ≤ cap` whose tail bound for `x = tB` is `≤ tol`.
    pub fn truncation_order(&self, x: f64, tol: f64) -> Result<(usize, f64), SpectralError> {
        if x == 0.0 {
            return Ok((0, 0.0));
        }
        let ln_x = libm::log(x);
        // ln((n+1)!)
        let mut ln_fact = 0.0;
        let mut bound = f64::INFINITY;
        for n in 0..=self.order_cap {
            ln_fact += libm::log((n + 1) as f64);
            bound = libm::exp(x + (n + 1) as f64 * ln_x - ln_fact);
            if bound <= tol {
                return Ok((n, bound));
            }
        }
        Err(SpectralError::ToleranceUnreachable {
            tolerance: tol,
            order_cap: self.order_cap,
            bound_at_cap: bound,
        })
    }

    /// `exp(-t m)` for a symmetric integer matrix.
    pub fn exponential(
        &self,
        m: &IntMatrix,
        t: f64,
        tol: f64,
    ) -> Result<HeatKernel, SpectralError> {
        if !m.is_square() {
            return Err(SpectralError::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        if !m.is_symmetric() {
            return Err(SpectralError::NotSymmetric);
        }
        if !(t.is_finite() && t >= 0.0) {
            return Err(SpectralError::InvalidTime(t));
        }
        if !(tol.is_finite() && tol > 0.0) {
            return Err(SpectralError::InvalidTolerance(tol));
        }
        let norm = m.max_abs_row_sum().to_f64().unwrap_or(f64::INFINITY);
        let (order, remainder_bound) = self.truncation_order(t * norm, tol)?;

        let n = m.rows();
        let step = FloatMatrix::from_int(m).scaled(-t);
        let mut term = FloatMatrix::identity(n);
        let mut sum = FloatMatrix::identity(n);
        for k in 1..=order {
            term = term.mul(&step).scaled(1.0 / k as f64);
            sum.add_assign(&term);
        }
        sum.symmetrize();
        if !sum.is_finite() {
            return Err(SpectralError::NonFinite);
        }
        Ok(HeatKernel {
            matrix: sum,
            t,
            truncation_order: order,
            remainder_bound,
        })
    }

    pub fn kernels(&self, g: &Graph, t: f64, tol: f64) -> Result<SuperHeatKernel, SpectralError> {
        Ok(SuperHeatKernel {
            even: self.exponential(&g.even_laplacian(), t, tol)?,
            odd: self.exponential(&g.odd_laplacian(), t, tol)?,
        })
    }

    pub fn supertrace(&self, g: &Graph, t: f64, tol: f64) -> Result<f64, SpectralError> {
        Ok(self.kernels(g, t, tol)?.supertrace())
    }

    pub fn evolve(
        &self,
        g: &Graph,
        psi: &[f64],
        t: f64,
        tol: f64,
    ) -> Result<EvolvedState, SpectralError> {
        let expected = g.vertex_count() + g.edge_count();
        if psi.len() != expected {
            return Err(SpectralError::DimensionMismatch {
                expected,
                found: psi.len(),
            });
        }
        let kernels = self.kernels(g, t, tol)?;
        Ok(EvolvedState {
            state: kernels.apply(psi)?,
            t,
            truncation_order: kernels.truncation_order(),
            remainder_bound: kernels.remainder_bound(),
        })
    }
}

/// `exp(-t m)` with the default order cap.
pub fn matrix_exponential(m: &IntMatrix, t: f64, tol: f64) -> Result<HeatKernel, SpectralError> {
    HeatEngine::default().exponential(m, t, tol)
}

/// `tr exp(-tΔ⁺) - tr exp(-tΔ⁻)` with the default order cap.
pub fn supertrace(g: &Graph, t: f64, tol: f64) -> Result<f64, SpectralError> {
    HeatEngine::default().supertrace(g, t, tol)
}

/// Evolves `psi` (vertex entries first, then edge entries) by `exp(-tΔ)`
/// with the default order cap.
pub fn evolve_state(
    g: &Graph,
    psi: &[f64],
    t: f64,
    tol: f64,
) -> Result<EvolvedState, SpectralError> {
    HeatEngine::default().evolve(g, psi, t, tol)
}
