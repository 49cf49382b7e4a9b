//! Eigenvalues of dense Hermitian matrices by cyclic Jacobi rotations.
//!
//! The matrices here top out around dimension 2^10, where Jacobi is plenty
//! fast, numerically very accurate, and keeps the crate dependency-free.
//! Each pivot (p, q) is annihilated by a complex plane rotation: the pivot's
//! phase is absorbed first, reducing the 2x2 block to the real symmetric
//! case, then the classic tangent formula picks the smaller rotation angle.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

/// Off-diagonal Frobenius norm at which a sweep is considered converged,
/// relative to the input's Frobenius norm.
pub const CONVERGENCE_THRESHOLD: f64 = 1e-14;

/// Upper bound on full pivot sweeps before giving up.
pub const MAX_SWEEPS: usize = 100;

/// Hermiticity slack accepted on input.
pub const HERMITIAN_TOLERANCE: f64 = 1e-12;

/// All eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    if let Some((r, c)) = m.first_non_finite() {
        return Err(Error::NonFinite(r, c));
    }
    let (defect, (r, c)) = m.hermitian_defect();
    if defect > HERMITIAN_TOLERANCE {
        return Err(Error::NotHermitian {
            row: r,
            col: c,
            deviation: defect,
        });
    }
    let dim = m.dim();
    if dim == 0 {
        return Ok(Vec::new());
    }

    // Work on a copy, trusting the upper triangle.
    let mut a = ComplexMatrix::from_fn(dim, |r, c| {
        if r < c {
            m.get(r, c)
        } else if r > c {
            m.get(c, r).conj()
        } else {
            Complex64::new(m.get(r, r).re, 0.0)
        }
    });

    let scale = a.frobenius_norm();
    if scale == 0.0 {
        return Ok(vec![0.0; dim]);
    }
    let target = CONVERGENCE_THRESHOLD * scale;

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a);
        if off <= target {
            break;
        }
        if sweeps >= MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: off,
            });
        }
        for p in 0..dim {
            for q in (p + 1)..dim {
                rotate(&mut a, p, q);
            }
        }
        sweeps += 1;
    }

    let mut eigs: Vec<f64> = (0..dim).map(|i| a.get(i, i).re).collect();
    eigs.sort_by(|x, y| x.partial_cmp(y).unwrap());
    Ok(eigs)
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let dim = a.dim();
    let mut s = 0.0;
    for p in 0..dim {
        for q in (p + 1)..dim {
            s += a.get(p, q).norm_sqr();
        }
    }
    (2.0 * s).sqrt()
}

/// Annihilate a[p][q] with a unitary plane rotation, updating rows and
/// columns p and q and keeping the matrix exactly Hermitian in storage.
fn rotate(a: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a.get(p, q);
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let alpha = apq / mag;
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;

    let tau = (aqq - app) / (2.0 * mag);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // Rotation U restricted to the (p, q) plane:
    //   U[p][p] = c         U[p][q] = s
    //   U[q][p] = -s*ᾱ      U[q][q] = c*ᾱ
    // and the update is A <- U† A U.
    let sa = s * alpha.conj();
    let ca = c * alpha.conj();
    let dim = a.dim();
    for i in 0..dim {
        if i == p || i == q {
            continue;
        }
        let aip = a.get(i, p);
        let aiq = a.get(i, q);
        let new_ip = c * aip - sa * aiq;
        let new_iq = s * aip + ca * aiq;
        a.set(i, p, new_ip);
        a.set(i, q, new_iq);
        a.set(p, i, new_ip.conj());
        a.set(q, i, new_iq.conj());
    }
    a.set(p, p, Complex64::new(app - t * mag, 0.0));
    a.set(q, q, Complex64::new(aqq + t * mag, 0.0));
    a.set(p, q, Complex64::new(0.0, 0.0));
    a.set(q, p, Complex64::new(0.0, 0.0));
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::kron;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn assert_close(got: &[f64], want: &[f64], tol: f64) {
        assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() <= tol, "got {got:?}, want {want:?}");
        }
    }

    #[test]
    fn identity_spectrum() {
        let eigs = hermitian_eigenvalues(&ComplexMatrix::identity(4)).unwrap();
        assert_close(&eigs, &[1.0; 4], 1e-14);
    }

    #[test]
    fn pauli_spectra() {
        let sx = ComplexMatrix::from_rows(vec![
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        let sy = ComplexMatrix::from_rows(vec![
            vec![c(0.0, 0.0), c(0.0, -1.0)],
            vec![c(0.0, 1.0), c(0.0, 0.0)],
        ])
        .unwrap();
        assert_close(&hermitian_eigenvalues(&sx).unwrap(), &[-1.0, 1.0], 1e-14);
        assert_close(&hermitian_eigenvalues(&sy).unwrap(), &[-1.0, 1.0], 1e-14);
        let sxy = kron(&sx, &sy).unwrap();
        assert_close(
            &hermitian_eigenvalues(&sxy).unwrap(),
            &[-1.0, -1.0, 1.0, 1.0],
            1e-13,
        );
    }

    #[test]
    fn known_two_by_two() {
        // [[2, i],[-i, 2]] has eigenvalues 1 and 3.
        let m = ComplexMatrix::from_rows(vec![
            vec![c(2.0, 0.0), c(0.0, 1.0)],
            vec![c(0.0, -1.0), c(2.0, 0.0)],
        ])
        .unwrap();
        assert_close(&hermitian_eigenvalues(&m).unwrap(), &[1.0, 3.0], 1e-14);
    }

    #[test]
    fn recovers_planted_spectrum_under_random_rotations() {
        // Build A = U D U† from explicit plane rotations applied by plain
        // full-matrix arithmetic, independent of the solver's own kernel.
        let dim = 12;
        let spectrum: Vec<f64> = (0..dim).map(|i| (i as f64) - 4.5).collect();
        let mut a = ComplexMatrix::zeros(dim);
        for (i, lam) in spectrum.iter().enumerate() {
            a.set(i, i, c(*lam, 0.0));
        }
        let mut state = 0x12345678u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) as f64) / ((1u64 << 31) as f64) - 1.0
        };
        for round in 0..40 {
            let p = round % dim;
            let q = (round * 7 + 1) % dim;
            if p == q {
                continue;
            }
            let theta = next() * std::f64::consts::PI;
            let phi = next() * std::f64::consts::PI;
            let (cs, sn) = (theta.cos(), theta.sin());
            let e = Complex64::from_polar(1.0, phi);
            // G is identity except G[p][p]=cs, G[p][q]=sn*e, G[q][p]=-sn*conj(e), G[q][q]=cs.
            let mut g = ComplexMatrix::identity(dim);
            g.set(p, p, c(cs, 0.0));
            g.set(p, q, sn * e);
            g.set(q, p, -sn * e.conj());
            g.set(q, q, c(cs, 0.0));
            // a <- G a G†, written out directly.
            let mut ga = ComplexMatrix::zeros(dim);
            for r in 0..dim {
                for col in 0..dim {
                    let mut acc = c(0.0, 0.0);
                    for k in 0..dim {
                        acc += g.get(r, k) * a.get(k, col);
                    }
                    ga.set(r, col, acc);
                }
            }
            let mut gag = ComplexMatrix::zeros(dim);
            for r in 0..dim {
                for col in 0..dim {
                    let mut acc = c(0.0, 0.0);
                    for k in 0..dim {
                        acc += ga.get(r, k) * g.get(col, k).conj();
                    }
                    gag.set(r, col, acc);
                }
            }
            a = gag;
        }
        // Symmetrize the rounding dust so the input passes the contract.
        let sym = ComplexMatrix::from_fn(dim, |r, col| {
            0.5 * (a.get(r, col) + a.get(col, r).conj())
        });
        let eigs = hermitian_eigenvalues(&sym).unwrap();
        assert_close(&eigs, &spectrum, 1e-10);
    }

    #[test]
    fn rejects_non_hermitian_input() {
        let mut m = ComplexMatrix::identity(3);
        m.set(0, 1, c(0.5, 0.0));
        let err = hermitian_eigenvalues(&m).unwrap_err();
        assert!(matches!(err, Error::NotHermitian { .. }));
    }

    #[test]
    fn zero_matrix_short_circuits() {
        let eigs = hermitian_eigenvalues(&ComplexMatrix::zeros(5)).unwrap();
        assert_eq!(eigs, vec![0.0; 5]);
    }

    #[test]
    fn trace_matches_eigenvalue_sum() {
        let m = ComplexMatrix::from_rows(vec![
            vec![c(0.4, 0.0), c(0.1, 0.2), c(0.0, -0.3)],
            vec![c(0.1, -0.2), c(0.3, 0.0), c(0.05, 0.0)],
            vec![c(0.0, 0.3), c(0.05, 0.0), c(0.3, 0.0)],
        ])
        .unwrap();
        let eigs = hermitian_eigenvalues(&m).unwrap();
        let sum: f64 = eigs.iter().sum();
        assert!((sum - 1.0).abs() < 1e-13);
    }
}
