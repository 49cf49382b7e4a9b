//! Operator bases for n-qubit matrices and the coefficient transform
//! between them.
//!
//! Two orthogonal bases are used, indexed by pairs of n-bit words (j, k):
//!
//! * adjusted basis: A[j][k] = |j><j^k|, a re-indexing of the matrix units
//!   so that column k collects the entries a fixed XOR offset away from the
//!   diagonal. The coefficient of A[j][k] in rho is simply rho[j][j^k].
//! * spin basis: S[j][k] is the tensor product over qubits r of one of
//!   I, sigma_x, sigma_z, i*sigma_y picked by the bit pair (j_r, k_r).
//!   Using i*sigma_y instead of sigma_y keeps every element real.
//!
//! Columns transform independently: the spin coefficients of a fixed k are
//! the Hadamard transform over j of the adjusted coefficients. That is a
//! fast Walsh-Hadamard butterfly, O(n 4^n) for the whole table instead of
//! the O(8^n) naive matrix product. No bit-reversal pass is needed because
//! the Hadamard kernel is symmetric in the natural binary order.

use std::fmt;

use num_complex::Complex64;

use crate::bitindex::BitIndex;
use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::matrix::{kron, ComplexMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisKind {
    Adjusted,
    Spin,
}

impl fmt::Display for BasisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisKind::Adjusted => write!(f, "adjusted"),
            BasisKind::Spin => write!(f, "spin"),
        }
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn identity2() -> ComplexMatrix {
    ComplexMatrix::identity(2)
}

pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_rows(vec![
        vec![c(0.0, 0.0), c(1.0, 0.0)],
        vec![c(1.0, 0.0), c(0.0, 0.0)],
    ])
    .expect("square")
}

pub fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::from_rows(vec![
        vec![c(0.0, 0.0), c(0.0, -1.0)],
        vec![c(0.0, 1.0), c(0.0, 0.0)],
    ])
    .expect("square")
}

pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_rows(vec![
        vec![c(1.0, 0.0), c(0.0, 0.0)],
        vec![c(0.0, 0.0), c(-1.0, 0.0)],
    ])
    .expect("square")
}

/// i*sigma_y = [[0, 1], [-1, 0]], the real replacement for sigma_y.
fn real_iy() -> ComplexMatrix {
    ComplexMatrix::from_rows(vec![
        vec![c(0.0, 0.0), c(1.0, 0.0)],
        vec![c(-1.0, 0.0), c(0.0, 0.0)],
    ])
    .expect("square")
}

fn single_qubit_element(kind: BasisKind, j: u8, k: u8) -> ComplexMatrix {
    match kind {
        BasisKind::Adjusted => {
            // |j><j^k|
            let mut m = ComplexMatrix::zeros(2);
            m.set(j as usize, (j ^ k) as usize, c(1.0, 0.0));
            m
        }
        BasisKind::Spin => match (j, k) {
            (0, 0) => identity2(),
            (0, 1) => pauli_x(),
            (1, 0) => pauli_z(),
            (1, 1) => real_iy(),
            _ => unreachable!("bits"),
        },
    }
}

/// One basis element together with its label.
#[derive(Debug, Clone)]
pub struct BasisElement {
    pub n: usize,
    pub kind: BasisKind,
    pub j: BitIndex,
    pub k: BitIndex,
    pub matrix: ComplexMatrix,
}

/// Build the (j, k) element of either basis as an explicit matrix.
pub fn basis_element(kind: BasisKind, j: &BitIndex, k: &BitIndex) -> Result<BasisElement> {
    if j.len() != k.len() {
        return Err(Error::DimensionMismatch(j.len(), k.len()));
    }
    let n = j.len();
    let mut m = single_qubit_element(kind, j.bit(1), k.bit(1));
    for r in 2..=n {
        m = kron(&m, &single_qubit_element(kind, j.bit(r), k.bit(r)))?;
    }
    Ok(BasisElement {
        n,
        kind,
        j: *j,
        k: *k,
        matrix: m,
    })
}

/// A full 2^n x 2^n table of expansion coefficients, values[j][k] row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientTable {
    n: usize,
    basis: BasisKind,
    values: Vec<Complex64>,
}

impl CoefficientTable {
    pub fn new(n: usize, basis: BasisKind) -> Self {
        let dim = 1usize << n;
        CoefficientTable {
            n,
            basis,
            values: vec![c(0.0, 0.0); dim * dim],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1usize << self.n
    }

    pub fn basis(&self) -> BasisKind {
        self.basis
    }

    pub fn get(&self, j: usize, k: usize) -> Complex64 {
        self.values[j * self.dim() + k]
    }

    pub fn set(&mut self, j: usize, k: usize, v: Complex64) {
        let dim = self.dim();
        self.values[j * dim + k] = v;
    }

    fn expect_basis(&self, want: BasisKind) -> Result<()> {
        if self.basis != want {
            return Err(Error::WrongBasis {
                expected: want,
                found: self.basis,
            });
        }
        Ok(())
    }
}

/// Read off the adjusted-basis coefficients: a[j][k] = rho[j][j^k].
/// Pure re-indexing, no arithmetic.
pub fn adjusted_from_density(rho: &DensityMatrix) -> CoefficientTable {
    let n = rho.qubits();
    let dim = rho.dim();
    let mut t = CoefficientTable::new(n, BasisKind::Adjusted);
    for j in 0..dim {
        for k in 0..dim {
            t.set(j, k, rho.entry(j, j ^ k));
        }
    }
    t
}

/// In-place Walsh-Hadamard butterflies down the rows of a dim x dim table
/// stored row-major: every column is transformed over the row index at once,
/// which keeps the passes on contiguous memory.
fn hadamard_rows(values: &mut [Complex64], dim: usize) {
    let mut h = 1;
    while h < dim {
        let mut j0 = 0;
        while j0 < dim {
            for j in j0..j0 + h {
                let (top, bottom) = values.split_at_mut((j + h) * dim);
                let row_a = &mut top[j * dim..j * dim + dim];
                let row_b = &mut bottom[..dim];
                for k in 0..dim {
                    let x = row_a[k];
                    let y = row_b[k];
                    row_a[k] = x + y;
                    row_b[k] = x - y;
                }
            }
            j0 += 2 * h;
        }
        h *= 2;
    }
}

/// Hadamard-transform the adjusted coefficients into spin coefficients,
/// column by column: s[j][k] = sum_r (-1)^(j.r) a[r][k].
pub fn spin_from_adjusted(table: CoefficientTable) -> Result<CoefficientTable> {
    table.expect_basis(BasisKind::Adjusted)?;
    let mut t = table;
    let dim = t.dim();
    hadamard_rows(&mut t.values, dim);
    t.basis = BasisKind::Spin;
    Ok(t)
}

/// Inverse transform; the Hadamard kernel is its own inverse up to 1/2^n.
pub fn adjusted_from_spin(table: CoefficientTable) -> Result<CoefficientTable> {
    table.expect_basis(BasisKind::Spin)?;
    let mut t = table;
    let dim = t.dim();
    hadamard_rows(&mut t.values, dim);
    let scale = 1.0 / dim as f64;
    for v in &mut t.values {
        *v *= scale;
    }
    t.basis = BasisKind::Adjusted;
    Ok(t)
}

/// Spin-coefficient table of a density matrix.
pub fn spin_from_density(rho: &DensityMatrix) -> CoefficientTable {
    spin_from_adjusted(adjusted_from_density(rho)).expect("basis tag is adjusted")
}

/// Rebuild a density matrix from spin coefficients. The table must describe
/// a Hermitian operator (i^(j.k) s[j][k] real up to 1e-12, equivalently the
/// implied adjusted columns conjugate-symmetric); trace and positivity are
/// then validated as usual.
pub fn density_from_spin(table: &CoefficientTable) -> Result<DensityMatrix> {
    density_from_spin_with_tolerance(table, crate::density::DEFAULT_PSD_TOLERANCE)
}

pub fn density_from_spin_with_tolerance(
    table: &CoefficientTable,
    psd_tolerance: f64,
) -> Result<DensityMatrix> {
    let adjusted = adjusted_from_spin(table.clone())?;
    let dim = adjusted.dim();

    // rho[r][c] = a[r][r^c], so Hermiticity means a[r][k] = conj(a[r^k][k]).
    let mut defect = 0.0f64;
    for k in 0..dim {
        for r in 0..dim {
            let d = (adjusted.get(r, k) - adjusted.get(r ^ k, k).conj()).norm();
            defect = defect.max(d);
        }
    }
    if defect > 1e-12 {
        return Err(Error::Reconstruction {
            invariant: "hermitian",
            detail: format!("adjusted columns fail conjugate symmetry by {defect:.3e}"),
        });
    }

    // Assemble from the upper triangle so storage is exactly Hermitian.
    let mut m = ComplexMatrix::zeros(dim);
    for r in 0..dim {
        m.set(r, r, c(adjusted.get(r, 0).re, 0.0));
        for col in (r + 1)..dim {
            let z = adjusted.get(r, r ^ col);
            m.set(r, col, z);
            m.set(col, r, z.conj());
        }
    }
    DensityMatrix::with_tolerance(m, psd_tolerance).map_err(|e| {
        let invariant = match e {
            Error::TraceNotOne(_) => "trace",
            Error::NotPositiveSemidefinite { .. } => "positivity",
            _ => "validity",
        };
        Error::Reconstruction {
            invariant,
            detail: e.to_string(),
        }
    })
}

/// Sum of |s[j][k]| over every coefficient except the identity slot (0, 0).
/// At most 1 exactly when the Hadamard-side sufficient condition certifies
/// full separability.
pub fn spin_norm1(rho: &DensityMatrix) -> f64 {
    let t = spin_from_density(rho);
    let dim = t.dim();
    let mut sum = 0.0;
    for j in 0..dim {
        for k in 0..dim {
            if j == 0 && k == 0 {
                continue;
            }
            sum += t.get(j, k).norm();
        }
    }
    sum
}

/// Largest single |s[j][k]| away from the identity slot, with its location.
pub fn max_spin_coefficient(rho: &DensityMatrix) -> (f64, usize, usize) {
    let t = spin_from_density(rho);
    let dim = t.dim();
    let mut best = (0.0, 0, 0);
    for j in 0..dim {
        for k in 0..dim {
            if j == 0 && k == 0 {
                continue;
            }
            let a = t.get(j, k).norm();
            if a > best.0 {
                best = (a, j, k);
            }
        }
    }
    best
}

/// Power of i as a complex unit.
pub fn i_pow(e: u32) -> Complex64 {
    match e % 4 {
        0 => c(1.0, 0.0),
        1 => c(0.0, 1.0),
        2 => c(-1.0, 0.0),
        _ => c(0.0, -1.0),
    }
}
