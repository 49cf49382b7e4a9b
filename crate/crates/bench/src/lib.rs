//! Deterministic input builders shared by the benchmark targets.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qsep_core::{
    basis_element, kron_all, spin_from_density, trace_inner, BasisKind, BitIndex,
    CoefficientTable, Complex64, ComplexMatrix, DensityMatrix,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_unit_axis(rng: &mut ChaCha8Rng) -> [f64; 3] {
    let z: f64 = rng.random_range(-1.0..=1.0);
    let phi: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    let r = (1.0 - z * z).sqrt();
    [r * phi.cos(), r * phi.sin(), z]
}

fn bloch_state(m: &[f64; 3]) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(2);
    out.set(0, 0, Complex64::new(0.5 * (1.0 + m[2]), 0.0));
    out.set(1, 1, Complex64::new(0.5 * (1.0 - m[2]), 0.0));
    out.set(0, 1, Complex64::new(0.5 * m[0], -0.5 * m[1]));
    out.set(1, 0, Complex64::new(0.5 * m[0], 0.5 * m[1]));
    out
}

/// Uniform mixture of `terms` random pure product states. Always a valid
/// density matrix, with generic spectra and dense transforms.
pub fn random_product_mixture(rng: &mut ChaCha8Rng, n: usize, terms: usize) -> DensityMatrix {
    let dim = 1usize << n;
    let mut acc = ComplexMatrix::zeros(dim);
    let w = 1.0 / terms as f64;
    for _ in 0..terms {
        let factors: Vec<ComplexMatrix> =
            (0..n).map(|_| bloch_state(&random_unit_axis(rng))).collect();
        let product = kron_all(&factors).expect("at least one factor");
        acc.add_scaled(&product, w)
            .expect("factors share the accumulator dimension");
    }
    DensityMatrix::new(acc).expect("mixture of states is a state")
}

/// A state whose non-identity spin coefficients sum to `target` in absolute
/// value. Valid for target <= 1.
pub fn random_spin_density(rng: &mut ChaCha8Rng, n: usize, target: f64) -> DensityMatrix {
    let rho = random_product_mixture(rng, n, 4);
    let mut table = spin_from_density(&rho);
    let dim = 1usize << n;
    let mut norm = 0.0;
    for j in 0..dim {
        for k in 0..dim {
            if j == 0 && k == 0 {
                continue;
            }
            norm += table.get(j, k).norm();
        }
    }
    let scale = if norm > 0.0 { target / norm } else { 0.0 };
    for j in 0..dim {
        for k in 0..dim {
            if j == 0 && k == 0 {
                continue;
            }
            table.set(j, k, table.get(j, k) * scale);
        }
    }
    qsep_core::density_from_spin(&table).expect("norm-bounded table is a state")
}

/// The transform done the obvious way: one trace inner product per basis
/// element. Reference point for the fast column transform.
pub fn naive_spin_coefficients(rho: &DensityMatrix) -> CoefficientTable {
    let n = rho.qubits();
    let dim = 1usize << n;
    let mut out = CoefficientTable::new(n, BasisKind::Spin);
    for j in 0..dim {
        for k in 0..dim {
            let jb = BitIndex::new(n, j).expect("index in range");
            let kb = BitIndex::new(n, k).expect("index in range");
            let element = basis_element(BasisKind::Spin, &jb, &kb).expect("valid element");
            let s = trace_inner(&element.matrix, rho.matrix()).expect("dimensions match");
            out.set(j, k, s);
        }
    }
    out
}
