//! Shared generators and oracles for the integration suites.
#![allow(dead_code)]

use num_complex::Complex64;
use qsep_core::{
    bloch_state, density_from_spin, kron_all, BasisKind, BitIndex, CoefficientTable,
    ComplexMatrix, DensityMatrix, ProductSpec, Sign,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform point on the unit sphere.
pub fn random_unit_axis(rng: &mut impl Rng) -> [f64; 3] {
    let z: f64 = rng.random_range(-1.0..=1.0);
    let phi: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    let r = (1.0 - z * z).max(0.0).sqrt();
    [r * phi.cos(), r * phi.sin(), z]
}

/// Uniform direction with radius strictly inside the unit ball.
pub fn random_bloch_in_ball(rng: &mut impl Rng) -> [f64; 3] {
    let m = random_unit_axis(rng);
    let r: f64 = rng.random::<f64>();
    [m[0] * r, m[1] * r, m[2] * r]
}

pub fn random_sign(rng: &mut impl Rng) -> Sign {
    if rng.random_bool(0.5) {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

pub fn random_product_spec(rng: &mut impl Rng, n: usize) -> ProductSpec {
    let axes = (0..n).map(|_| random_unit_axis(rng)).collect();
    ProductSpec::new(axes, random_sign(rng)).unwrap()
}

/// Explicit convex mixture of `k` random product states: fully separable
/// by construction, so every necessary criterion must pass on it.
pub fn random_product_mixture(rng: &mut impl Rng, n: usize, k: usize) -> DensityMatrix {
    let mut weights: Vec<f64> = (0..k).map(|_| rng.random::<f64>() + 0.05).collect();
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }
    let head: f64 = weights[..k - 1].iter().sum();
    weights[k - 1] = 1.0 - head;

    let dim = 1usize << n;
    let mut acc = ComplexMatrix::zeros(dim);
    for w in weights {
        let factors: Vec<ComplexMatrix> =
            (0..n).map(|_| bloch_state(&random_bloch_in_ball(rng))).collect();
        acc.add_scaled(&kron_all(&factors).unwrap(), w).unwrap();
    }
    DensityMatrix::new(acc).unwrap()
}

/// Random state assembled from a spin coefficient table whose 1-norm away
/// from the identity slot is rescaled to `target_norm`. For target_norm
/// at most 1 the result is fully separable, hence always a valid density.
pub fn random_spin_density(rng: &mut impl Rng, n: usize, target_norm: f64) -> DensityMatrix {
    let dim = 1usize << n;
    let mut g = vec![0.0f64; dim * dim];
    let mut total = 0.0;
    for v in g.iter_mut().skip(1) {
        *v = rng.random_range(-1.0..=1.0);
        total += v.abs();
    }
    let scale = if total > 0.0 { target_norm / total } else { 0.0 };

    let mut table = CoefficientTable::new(n, BasisKind::Spin);
    table.set(0, 0, Complex64::new(1.0, 0.0));
    for j in 0..dim {
        for k in 0..dim {
            if j == 0 && k == 0 {
                continue;
            }
            let value = g[j * dim + k] * scale;
            let jb = BitIndex::new(n, j).unwrap();
            let kb = BitIndex::new(n, k).unwrap();
            // store s = i^(-j.k) g so that i^(j.k) s comes out real
            let s = match jb.dot(&kb) % 4 {
                0 => Complex64::new(value, 0.0),
                1 => Complex64::new(0.0, -value),
                2 => Complex64::new(-value, 0.0),
                _ => Complex64::new(0.0, value),
            };
            table.set(j, k, s);
        }
    }
    density_from_spin(&table).unwrap()
}

/// Independent transform oracle: out[j][k] = sum_j' (-1)^popcount(j & j')
/// in[j'][k], the dense Hadamard multiply the butterfly kernel must match.
pub fn naive_hadamard_columns(table: &CoefficientTable) -> Vec<Complex64> {
    let dim = table.dim();
    let mut out = vec![Complex64::new(0.0, 0.0); dim * dim];
    for j in 0..dim {
        for k in 0..dim {
            let mut acc = Complex64::new(0.0, 0.0);
            for jp in 0..dim {
                let sign = if (j & jp).count_ones() % 2 == 0 {
                    1.0
                } else {
                    -1.0
                };
                acc += table.get(jp, k) * sign;
            }
            out[j * dim + k] = acc;
        }
    }
    out
}

pub fn max_density_deviation(a: &DensityMatrix, b: &DensityMatrix) -> f64 {
    let mut worst = 0.0f64;
    for r in 0..a.dim() {
        for c in 0..a.dim() {
            worst = worst.max((a.entry(r, c) - b.entry(r, c)).norm());
        }
    }
    worst
}
