//! Validated n-qubit density matrices and the partial transpose.

use num_complex::Complex64;

use crate::bitindex::MAX_BITS;
use crate::eigen::hermitian_eigenvalues;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

/// Slack allowed on the smallest eigenvalue when checking positivity.
pub const DEFAULT_PSD_TOLERANCE: f64 = 1e-9;

/// Slack allowed on |trace - 1|.
pub const TRACE_TOLERANCE: f64 = 1e-12;

/// A 2^n x 2^n density matrix: exactly Hermitian in storage, unit trace,
/// positive semidefinite up to `psd_tolerance`.
///
/// Hermiticity is demanded exactly (entry equals the conjugate of its
/// mirror), never repaired by averaging: a certificate tool must not launder
/// malformed input. All constructors in this crate assemble their matrices
/// symmetrically, so they satisfy this for free.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n: usize,
    mat: ComplexMatrix,
    psd_tolerance: f64,
}

impl DensityMatrix {
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        DensityMatrix::with_tolerance(mat, DEFAULT_PSD_TOLERANCE)
    }

    pub fn with_tolerance(mat: ComplexMatrix, psd_tolerance: f64) -> Result<Self> {
        let dim = mat.dim();
        if dim < 2 || !dim.is_power_of_two() {
            return Err(Error::argument(format!(
                "density dimension must be a power of two >= 2, got {dim}"
            )));
        }
        let n = dim.trailing_zeros() as usize;
        if n > MAX_BITS {
            return Err(Error::SizeLimit(dim));
        }
        if let Some((r, c)) = mat.first_non_finite() {
            return Err(Error::NonFinite(r, c));
        }
        for r in 0..dim {
            for c in r..dim {
                if mat.get(r, c) != mat.get(c, r).conj() {
                    let d = (mat.get(r, c) - mat.get(c, r).conj()).norm();
                    return Err(Error::NotHermitian {
                        row: r,
                        col: c,
                        deviation: d,
                    });
                }
            }
        }
        let trace = mat.trace().re;
        if (trace - 1.0).abs() > TRACE_TOLERANCE {
            return Err(Error::TraceNotOne(trace));
        }
        let eigs = hermitian_eigenvalues(&mat)?;
        let min = eigs[0];
        if min < -psd_tolerance {
            return Err(Error::NotPositiveSemidefinite {
                min_eigenvalue: min,
                tolerance: psd_tolerance,
            });
        }
        Ok(DensityMatrix {
            n,
            mat,
            psd_tolerance,
        })
    }

    /// Number of qubits.
    pub fn qubits(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn entry(&self, r: usize, c: usize) -> Complex64 {
        self.mat.get(r, c)
    }

    pub fn psd_tolerance(&self) -> f64 {
        self.psd_tolerance
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.mat).expect("validated density is Hermitian")
    }

    pub fn partial_transpose(&self, subset: &[usize]) -> Result<ComplexMatrix> {
        partial_transpose(self, subset)
    }
}

/// Check a qubit subset: 1-based positions, strictly ascending, proper and
/// nonempty. Returns a bit mask over matrix indices (qubit 1 = top bit).
fn subset_mask(n: usize, subset: &[usize]) -> Result<usize> {
    if subset.is_empty() || subset.len() >= n {
        return Err(Error::argument(format!(
            "qubit subset must be a proper nonempty subset of 1..={n}"
        )));
    }
    let mut mask = 0usize;
    let mut prev = 0usize;
    for &q in subset {
        if q < 1 || q > n {
            return Err(Error::argument(format!(
                "qubit {q} out of range 1..={n}"
            )));
        }
        if q <= prev {
            return Err(Error::argument(
                "qubit subset must be strictly ascending with no repeats",
            ));
        }
        prev = q;
        mask |= 1 << (n - q);
    }
    Ok(mask)
}

/// Transpose the state on the given qubits only: the bits of the row and
/// column indices belonging to the subset are swapped. Self-inverse, trace
/// and Hermiticity preserving; positivity is exactly what it may destroy,
/// which is the point of the Peres test.
pub fn partial_transpose(rho: &DensityMatrix, subset: &[usize]) -> Result<ComplexMatrix> {
    partial_transpose_matrix(&rho.mat, rho.n, subset)
}

/// The same bit swap on a raw matrix over n qubits, usable on outputs that
/// are no longer valid states.
pub fn partial_transpose_matrix(
    m: &ComplexMatrix,
    n: usize,
    subset: &[usize],
) -> Result<ComplexMatrix> {
    if m.dim() != 1 << n {
        return Err(Error::DimensionMismatch(m.dim(), 1 << n));
    }
    let mask = subset_mask(n, subset)?;
    let out = ComplexMatrix::from_fn(m.dim(), |r, c| {
        let rr = (r & !mask) | (c & mask);
        let cc = (c & !mask) | (r & mask);
        m.get(rr, cc)
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::kron;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn bell_pair() -> DensityMatrix {
        // (|00> + |11>)/sqrt(2) projector.
        let mut m = ComplexMatrix::zeros(4);
        for (r, col) in [(0, 0), (0, 3), (3, 0), (3, 3)] {
            m.set(r, col, c(0.5, 0.0));
        }
        DensityMatrix::new(m).unwrap()
    }

    #[test]
    fn validates_maximally_mixed() {
        let mut m = ComplexMatrix::identity(4);
        m.scale(0.25);
        let rho = DensityMatrix::new(m).unwrap();
        assert_eq!(rho.qubits(), 2);
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut m = ComplexMatrix::identity(2);
        m.scale(0.5);
        m.set(0, 1, c(0.0, 0.1));
        // mirror left at zero
        assert!(matches!(
            DensityMatrix::new(m),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn rejects_bad_trace() {
        let m = ComplexMatrix::identity(2);
        assert!(matches!(DensityMatrix::new(m), Err(Error::TraceNotOne(_))));
    }

    #[test]
    fn rejects_negative_matrix() {
        let mut m = ComplexMatrix::zeros(2);
        m.set(0, 0, c(1.5, 0.0));
        m.set(1, 1, c(-0.5, 0.0));
        assert!(matches!(
            DensityMatrix::new(m),
            Err(Error::NotPositiveSemidefinite { .. })
        ));
    }

    #[test]
    fn rejects_odd_dimension() {
        let m = ComplexMatrix::identity(3);
        assert!(DensityMatrix::new(m).is_err());
    }

    #[test]
    fn bell_partial_transpose_spectrum() {
        let rho = bell_pair();
        let pt = rho.partial_transpose(&[2]).unwrap();
        let eigs = hermitian_eigenvalues(&pt).unwrap();
        let want = [-0.5, 0.5, 0.5, 0.5];
        for (g, w) in eigs.iter().zip(want) {
            assert!((g - w).abs() < 1e-13);
        }
    }

    #[test]
    fn bell_partial_transpose_moves_corners() {
        let rho = bell_pair();
        let pt = rho.partial_transpose(&[1]).unwrap();
        assert_eq!(pt.get(0, 3), c(0.0, 0.0));
        assert_eq!(pt.get(1, 2), c(0.5, 0.0));
        assert_eq!(pt.get(2, 1), c(0.5, 0.0));
        assert_eq!(pt.get(0, 0), c(0.5, 0.0));
    }

    #[test]
    fn transpose_on_second_factor_of_a_product() {
        let a = ComplexMatrix::from_rows(vec![
            vec![c(0.7, 0.0), c(0.2, 0.1)],
            vec![c(0.2, -0.1), c(0.3, 0.0)],
        ])
        .unwrap();
        let b = ComplexMatrix::from_rows(vec![
            vec![c(0.6, 0.0), c(0.1, -0.3)],
            vec![c(0.1, 0.3), c(0.4, 0.0)],
        ])
        .unwrap();
        let rho = DensityMatrix::new(kron(&a, &b).unwrap()).unwrap();
        let pt = rho.partial_transpose(&[2]).unwrap();
        let bt = ComplexMatrix::from_fn(2, |r, col| b.get(col, r));
        let want = kron(&a, &bt).unwrap();
        for r in 0..4 {
            for col in 0..4 {
                assert_eq!(pt.get(r, col), want.get(r, col));
            }
        }
    }

    #[test]
    fn partial_transpose_is_self_inverse() {
        let rho = bell_pair();
        let pt = rho.partial_transpose(&[1]).unwrap();
        let back = partial_transpose_matrix(&pt, rho.qubits(), &[1]).unwrap();
        for r in 0..4 {
            for col in 0..4 {
                assert_eq!(back.get(r, col), rho.entry(r, col));
            }
        }
    }

    #[test]
    fn subset_validation() {
        let rho = bell_pair();
        assert!(rho.partial_transpose(&[]).is_err());
        assert!(rho.partial_transpose(&[1, 2]).is_err());
        assert!(rho.partial_transpose(&[3]).is_err());
        assert!(rho.partial_transpose(&[1, 1]).is_err());
    }
}
