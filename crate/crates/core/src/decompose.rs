//! Explicit convex decompositions into product states. These are the
//! constructive side of the sufficient conditions: when a state qualifies,
//! the functions here emit a weighted list of product terms that
//! reassembles to the input, checkable independently.

use crate::bases::spin_from_density;
use crate::bitindex::BitIndex;
use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::families::{bloch_state, werner_threshold, ProductSpec, WernerSpec};
use crate::matrix::{kron_all, ComplexMatrix};

/// Slack applied when gating on quantities that sit exactly on their bound
/// in exact arithmetic.
const GATE_TOLERANCE: f64 = 1e-12;

/// One product state in a convex mixture: a weight and one Bloch vector
/// per qubit. The zero vector stands for the maximally mixed qubit.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductTerm {
    pub weight: f64,
    pub bloch: Vec<[f64; 3]>,
}

impl ProductTerm {
    pub fn density(&self) -> ComplexMatrix {
        let factors: Vec<ComplexMatrix> = self.bloch.iter().map(bloch_state).collect();
        kron_all(&factors).expect("qubit count already bounded")
    }
}

/// A convex mixture of product states over n qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparableDecomposition {
    pub n: usize,
    pub terms: Vec<ProductTerm>,
}

impl SeparableDecomposition {
    pub fn weight_sum(&self) -> f64 {
        self.terms.iter().map(|t| t.weight).sum()
    }

    /// Weighted sum of the product terms, as a raw matrix.
    pub fn reassemble_matrix(&self) -> ComplexMatrix {
        let dim = 1usize << self.n;
        let mut out = ComplexMatrix::zeros(dim);
        for term in &self.terms {
            out.add_scaled(&term.density(), term.weight)
                .expect("terms share the decomposition dimension");
        }
        out
    }

    /// Weighted sum, validated as a density matrix.
    pub fn reassemble(&self) -> Result<DensityMatrix> {
        DensityMatrix::new(self.reassemble_matrix())
    }
}

/// Outcome of checking a decomposition against a target state.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    /// Largest entrywise deviation between the reassembled mixture and the
    /// target.
    pub max_deviation: f64,
    pub weight_sum: f64,
    pub pass: bool,
    pub violations: Vec<String>,
}

/// Check convexity (weights nonnegative and summing to one), physicality
/// (Bloch norms at most one), and reassembly within `tolerance`.
pub fn verify_decomposition(
    dec: &SeparableDecomposition,
    target: &DensityMatrix,
    tolerance: f64,
) -> Result<VerifyReport> {
    if dec.n != target.qubits() {
        return Err(Error::argument(format!(
            "decomposition is over {} qubits but the target has {}",
            dec.n,
            target.qubits()
        )));
    }
    let mut violations = Vec::new();
    for (i, term) in dec.terms.iter().enumerate() {
        if term.weight < 0.0 {
            violations.push(format!("term {i} has negative weight {:e}", term.weight));
        }
        if term.bloch.len() != dec.n {
            violations.push(format!(
                "term {i} lists {} Bloch vectors for {} qubits",
                term.bloch.len(),
                dec.n
            ));
            continue;
        }
        for (r, m) in term.bloch.iter().enumerate() {
            let norm = (m[0] * m[0] + m[1] * m[1] + m[2] * m[2]).sqrt();
            if norm > 1.0 + GATE_TOLERANCE {
                violations.push(format!(
                    "term {i} qubit {} has Bloch norm {norm}",
                    r + 1
                ));
            }
        }
    }
    let weight_sum = dec.weight_sum();
    if (weight_sum - 1.0).abs() > 1e-10 {
        violations.push(format!("weights sum to {weight_sum}"));
    }

    let rebuilt = dec.reassemble_matrix();
    let mut max_deviation = 0.0f64;
    for r in 0..rebuilt.dim() {
        for c in 0..rebuilt.dim() {
            max_deviation = max_deviation.max((rebuilt.get(r, c) - target.entry(r, c)).norm());
        }
    }
    if max_deviation > tolerance {
        violations.push(format!(
            "reassembled state deviates from the target by {max_deviation:e}"
        ));
    }
    Ok(VerifyReport {
        max_deviation,
        weight_sum,
        pass: violations.is_empty(),
        violations,
    })
}

/// All n-bit indices of even Hamming weight, ascending. These label the
/// in-plane axis patterns appearing in the cat-state corner expansion.
pub fn even_parity_indices(n: usize) -> Vec<BitIndex> {
    BitIndex::all(n).filter(|j| j.weight() % 2 == 0).collect()
}

/// Sign patterns over `len` slots whose product is `sign`, in ascending
/// binary order of the first len-1 slots.
fn sign_patterns(len: usize, sign: f64) -> Vec<Vec<f64>> {
    let mut out = Vec::with_capacity(1 << (len - 1));
    for e in 0usize..1 << (len - 1) {
        let mut eps = Vec::with_capacity(len);
        let mut prod = 1.0f64;
        for i in 0..len - 1 {
            let v = if e >> (len - 2 - i) & 1 == 1 { -1.0 } else { 1.0 };
            prod *= v;
            eps.push(v);
        }
        eps.push(sign * prod);
        out.push(eps);
    }
    out
}

/// Write (I + sign * X1 x ... x Xn)/2^n, with Xr the Pauli component along
/// axis r, as an even mixture of 2^(n-1) pure product states: one term per
/// sign pattern (e1..en) with product `sign`, built from Bloch vectors
/// er * axis_r.
pub fn product_decomposition(spec: &ProductSpec) -> SeparableDecomposition {
    let weight = 1.0 / (1usize << (spec.n - 1)) as f64;
    let terms = sign_patterns(spec.n, spec.sign.value())
        .into_iter()
        .map(|eps| ProductTerm {
            weight,
            bloch: eps
                .iter()
                .zip(&spec.axes)
                .map(|(e, m)| [e * m[0], e * m[1], e * m[2]])
                .collect(),
        })
        .collect();
    SeparableDecomposition { n: spec.n, terms }
}

/// Slot axis for one qubit of a spin-basis element; None marks the
/// identity slot.
fn slot_axis(jb: u8, kb: u8) -> Option<[f64; 3]> {
    match (jb, kb) {
        (0, 0) => None,
        (0, 1) => Some([1.0, 0.0, 0.0]),
        (1, 0) => Some([0.0, 0.0, 1.0]),
        _ => Some([0.0, 1.0, 0.0]),
    }
}

/// Build a product decomposition from the spin coefficients whenever their
/// 1-norm away from the identity slot is at most 1.
///
/// Each nonzero coefficient s[j][k] contributes, after folding the phase
/// i^(j.k) into a real value g, the pure terms of
/// `product_decomposition` over its active slots (sign patterns
/// multiplying to sign(g)), at weight |g| / 2^(active-1), with inactive
/// slots left maximally mixed. What those brackets overshoot is repaid by
/// the leading all-mixed term, whose weight 1 - norm stays nonnegative
/// exactly when the norm bound holds.
pub fn spin_norm_decomposition(rho: &DensityMatrix) -> Result<SeparableDecomposition> {
    let n = rho.qubits();
    let dim = rho.dim();
    let table = spin_from_density(rho);

    let mut norm = 0.0f64;
    for j in 0..dim {
        for k in 0..dim {
            if j == 0 && k == 0 {
                continue;
            }
            norm += table.get(j, k).norm();
        }
    }
    if norm > 1.0 + GATE_TOLERANCE {
        return Err(Error::NotCertifiable {
            quantity: "spin 1-norm",
            value: norm,
            bound: 1.0,
        });
    }

    let mut terms = vec![ProductTerm {
        weight: (1.0 - norm).max(0.0),
        bloch: vec![[0.0; 3]; n],
    }];

    for j in 0..dim {
        for k in 0..dim {
            if j == 0 && k == 0 {
                continue;
            }
            let s = table.get(j, k);
            if s.norm() == 0.0 {
                continue;
            }
            let jb = BitIndex::new(n, j).expect("in range");
            let kb = BitIndex::new(n, k).expect("in range");
            // g = i^(j.k) s is real for a Hermitian input
            let g = match jb.dot(&kb) % 4 {
                0 => s.re,
                1 => -s.im,
                2 => -s.re,
                _ => s.im,
            };
            let axes: Vec<Option<[f64; 3]>> = (1..=n)
                .map(|r| slot_axis(jb.bit(r), kb.bit(r)))
                .collect();
            let active = axes.iter().flatten().count();
            let weight = g.abs() / (1usize << (active - 1)) as f64;
            for eps in sign_patterns(active, g.signum()) {
                let mut sign_iter = eps.into_iter();
                let bloch = axes
                    .iter()
                    .map(|slot| match slot {
                        None => [0.0; 3],
                        Some(m) => {
                            let e = sign_iter.next().expect("one sign per active slot");
                            [e * m[0], e * m[1], e * m[2]]
                        }
                    })
                    .collect();
                terms.push(ProductTerm { weight, bloch });
            }
        }
    }
    Ok(SeparableDecomposition { n, terms })
}

/// Decompose a noisy cat state at or below its separability threshold.
///
/// The corner block of the cat projector expands over the even-weight axis
/// patterns (x on 0 bits, y on 1 bits); each pattern becomes a product
/// bracket at weight s via `product_decomposition`, the diagonal block
/// contributes the two computational projectors at weight s/2, and the
/// leftover white noise keeps weight 1 - s(1 + 2^(n-1)), nonnegative
/// exactly up to the threshold. A cat labeled by j instead of 0 is the
/// bit-flip image, so those qubits get their y and z components flipped.
pub fn werner_decomposition(spec: &WernerSpec) -> Result<SeparableDecomposition> {
    let n = spec.n;
    let threshold = werner_threshold(n)?;
    let remainder = 1.0 - spec.s * (1.0 + (1usize << (n - 1)) as f64);
    if remainder < -GATE_TOLERANCE {
        return Err(Error::NotCertifiable {
            quantity: "cat mixing weight",
            value: spec.s,
            bound: threshold,
        });
    }

    let mut terms = vec![
        ProductTerm {
            weight: remainder.max(0.0),
            bloch: vec![[0.0; 3]; n],
        },
        ProductTerm {
            weight: spec.s / 2.0,
            bloch: vec![[0.0, 0.0, 1.0]; n],
        },
        ProductTerm {
            weight: spec.s / 2.0,
            bloch: vec![[0.0, 0.0, -1.0]; n],
        },
    ];

    for pattern in even_parity_indices(n) {
        let axes: Vec<[f64; 3]> = (1..=n)
            .map(|r| {
                if pattern.bit(r) == 0 {
                    [1.0, 0.0, 0.0]
                } else {
                    [0.0, 1.0, 0.0]
                }
            })
            .collect();
        let bracket_sign = spec.sign.value()
            * if pattern.weight() / 2 % 2 == 0 {
                1.0
            } else {
                -1.0
            };
        let weight = spec.s / (1usize << (n - 1)) as f64;
        for eps in sign_patterns(n, bracket_sign) {
            terms.push(ProductTerm {
                weight,
                bloch: eps
                    .iter()
                    .zip(&axes)
                    .map(|(e, m)| [e * m[0], e * m[1], e * m[2]])
                    .collect(),
            });
        }
    }

    // relabeling the cat from 0 to j conjugates by bit flips, which negate
    // the y and z Bloch components on the flipped qubits
    for r in 1..=n {
        if spec.j.bit(r) == 1 {
            for term in &mut terms {
                term.bloch[r - 1][1] = -term.bloch[r - 1][1];
                term.bloch[r - 1][2] = -term.bloch[r - 1][2];
            }
        }
    }

    Ok(SeparableDecomposition { n, terms })
}
