//! Dense square complex matrices, row-major.
//!
//! Everything here stays at desk scale (dimension a power of two, at most
//! 2^16 after products), so a flat `Vec<Complex64>` beats pulling in a
//! full linear algebra stack.

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

/// Hard cap on matrix dimension (16 qubits).
pub const DIM_LIMIT: usize = 1 << 16;

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        ComplexMatrix {
            dim,
            entries: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = ComplexMatrix::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                entries.push(f(r, c));
            }
        }
        ComplexMatrix { dim, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in &rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch(row.len(), dim));
            }
            entries.extend_from_slice(row);
        }
        Ok(ComplexMatrix { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.entries[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.entries[r * self.dim + c] = v;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn entries_mut(&mut self) -> &mut [Complex64] {
        &mut self.entries
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn scale(&mut self, f: f64) {
        for e in &mut self.entries {
            *e *= f;
        }
    }

    /// self += f * other.
    pub fn add_scaled(&mut self, other: &ComplexMatrix, f: f64) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            *a += f * b;
        }
        Ok(())
    }

    pub fn sub(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Ok(ComplexMatrix {
            dim: self.dim,
            entries,
        })
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.entries.iter().map(|e| e.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Largest |m[r][c] - conj(m[c][r])| and where it occurs.
    pub fn hermitian_defect(&self) -> (f64, (usize, usize)) {
        let mut worst = 0.0;
        let mut at = (0, 0);
        for r in 0..self.dim {
            for c in r..self.dim {
                let d = (self.get(r, c) - self.get(c, r).conj()).norm();
                if d > worst {
                    worst = d;
                    at = (r, c);
                }
            }
        }
        (worst, at)
    }

    /// Position of the first non-finite entry, if any.
    pub fn first_non_finite(&self) -> Option<(usize, usize)> {
        for r in 0..self.dim {
            for c in 0..self.dim {
                let e = self.get(r, c);
                if !e.re.is_finite() || !e.im.is_finite() {
                    return Some((r, c));
                }
            }
        }
        None
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.entries[r * self.dim + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[r * self.dim + c]
    }
}

/// Kronecker product. Row (r1, r2) and column (c1, c2) of the result are the
/// concatenated indices, matching the bit convention in `BitIndex`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let dim = a
        .dim
        .checked_mul(b.dim)
        .filter(|&d| d <= DIM_LIMIT)
        .ok_or(Error::SizeLimit(a.dim.saturating_mul(b.dim)))?;
    let mut out = ComplexMatrix::zeros(dim);
    for r1 in 0..a.dim {
        for c1 in 0..a.dim {
            let x = a.get(r1, c1);
            for r2 in 0..b.dim {
                for c2 in 0..b.dim {
                    out.set(r1 * b.dim + r2, c1 * b.dim + c2, x * b.get(r2, c2));
                }
            }
        }
    }
    Ok(out)
}

/// Kronecker product of a sequence of factors, left factor most significant.
pub fn kron_all<'a>(factors: impl IntoIterator<Item = &'a ComplexMatrix>) -> Result<ComplexMatrix> {
    let mut iter = factors.into_iter();
    let first = iter
        .next()
        .ok_or_else(|| Error::argument("kron_all needs at least one factor"))?;
    let mut acc = first.clone();
    for f in iter {
        acc = kron(&acc, f)?;
    }
    Ok(acc)
}

/// Hilbert-Schmidt inner product tr(B† C).
pub fn trace_inner(b: &ComplexMatrix, c: &ComplexMatrix) -> Result<Complex64> {
    if b.dim != c.dim {
        return Err(Error::DimensionMismatch(b.dim, c.dim));
    }
    Ok(b.entries
        .iter()
        .zip(&c.entries)
        .map(|(x, y)| x.conj() * y)
        .sum())
}
