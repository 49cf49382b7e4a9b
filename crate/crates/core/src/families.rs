//! Named families of n-qubit states used throughout the analysis: cat-state
//! projectors, their white-noise mixtures, anti-diagonal ("diagonal family")
//! mixtures parameterized by weight vectors, and explicit product states.

use num_complex::Complex64;

use crate::bitindex::BitIndex;
use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::matrix::{kron, ComplexMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(&self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Sign::Plus => write!(f, "+"),
            Sign::Minus => write!(f, "-"),
        }
    }
}

impl std::str::FromStr for Sign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" | "plus" => Ok(Sign::Plus),
            "-" | "minus" => Ok(Sign::Minus),
            _ => Err(Error::argument(format!("bad sign {s:?}, expected + or -"))),
        }
    }
}

pub const X_AXIS: [f64; 3] = [1.0, 0.0, 0.0];
pub const Y_AXIS: [f64; 3] = [0.0, 1.0, 0.0];
pub const Z_AXIS: [f64; 3] = [0.0, 0.0, 1.0];

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// m . (sigma_x, sigma_y, sigma_z) as an explicit 2x2 Hermitian matrix.
pub fn sigma_dot(m: &[f64; 3]) -> ComplexMatrix {
    ComplexMatrix::from_rows(vec![
        vec![c(m[2], 0.0), c(m[0], -m[1])],
        vec![c(m[0], m[1]), c(-m[2], 0.0)],
    ])
    .expect("square")
}

/// Single-qubit state (I + m . sigma)/2; pure exactly when |m| = 1.
pub fn bloch_state(m: &[f64; 3]) -> ComplexMatrix {
    ComplexMatrix::from_rows(vec![
        vec![
            c(0.5 * (1.0 + m[2]), 0.0),
            c(0.5 * m[0], -0.5 * m[1]),
        ],
        vec![c(0.5 * m[0], 0.5 * m[1]), c(0.5 * (1.0 - m[2]), 0.0)],
    ])
    .expect("square")
}

fn require_canonical(j: &BitIndex) -> Result<()> {
    if j.bit(1) != 0 {
        return Err(Error::argument(format!(
            "index {j} must have leading bit 0 so the pair (j, complement) is named once"
        )));
    }
    Ok(())
}

/// Projector onto (|j> + sign |complement(j)>)/sqrt(2). The index j must be
/// canonical (leading bit 0).
pub fn ghz_projector(j: &BitIndex, sign: Sign) -> Result<DensityMatrix> {
    require_canonical(j)?;
    let n = j.len();
    let dim = 1usize << n;
    let a = j.index();
    let b = j.complement().index();
    let mut m = ComplexMatrix::zeros(dim);
    m.set(a, a, c(0.5, 0.0));
    m.set(b, b, c(0.5, 0.0));
    m.set(a, b, c(0.5 * sign.value(), 0.0));
    m.set(b, a, c(0.5 * sign.value(), 0.0));
    DensityMatrix::new(m)
}

/// A cat-state projector mixed with white noise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WernerSpec {
    pub n: usize,
    pub s: f64,
    pub j: BitIndex,
    pub sign: Sign,
}

impl WernerSpec {
    pub fn new(n: usize, s: f64, j: BitIndex, sign: Sign) -> Result<Self> {
        if j.len() != n {
            return Err(Error::DimensionMismatch(j.len(), n));
        }
        require_canonical(&j)?;
        if !(0.0..=1.0).contains(&s) || !s.is_finite() {
            return Err(Error::argument(format!(
                "mixing weight s must lie in [0, 1], got {s}"
            )));
        }
        Ok(WernerSpec { n, s, j, sign })
    }
}

/// (1 - s)/2^n I + s * ghz_projector(j, sign).
pub fn werner(spec: &WernerSpec) -> DensityMatrix {
    let dim = 1usize << spec.n;
    let base = (1.0 - spec.s) / dim as f64;
    let a = spec.j.index();
    let b = spec.j.complement().index();
    let mut m = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        m.set(i, i, c(base, 0.0));
    }
    m.set(a, a, c(base + spec.s * 0.5, 0.0));
    m.set(b, b, c(base + spec.s * 0.5, 0.0));
    m.set(a, b, c(spec.sign.value() * spec.s * 0.5, 0.0));
    m.set(b, a, c(spec.sign.value() * spec.s * 0.5, 0.0));
    DensityMatrix::new(m).expect("werner mixture is a valid density")
}

/// The exact mixing weight below which (inclusive) the noisy cat state is
/// fully separable: 1 / (2^(n-1) + 1).
pub fn werner_threshold(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::argument(format!(
            "threshold needs at least 2 qubits, got {n}"
        )));
    }
    if n > crate::bitindex::MAX_BITS {
        return Err(Error::SizeLimit(n));
    }
    Ok(1.0 / ((1u64 << (n - 1)) as f64 + 1.0))
}

/// Mixture of cat-state projectors: weights tplus[j] on the + projector and
/// tminus[j] on the -, indexed by canonical j (leading bit 0).
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalFamilySpec {
    pub n: usize,
    tplus: Vec<f64>,
    tminus: Vec<f64>,
}

impl DiagonalFamilySpec {
    pub fn new(n: usize, tplus: Vec<f64>, tminus: Vec<f64>) -> Result<Self> {
        if n == 0 || n > crate::bitindex::MAX_BITS {
            return Err(Error::argument(format!("bad qubit count {n}")));
        }
        let half = 1usize << (n - 1);
        if tplus.len() != half || tminus.len() != half {
            return Err(Error::argument(format!(
                "weight vectors must have length 2^(n-1) = {half}, got {} and {}",
                tplus.len(),
                tminus.len()
            )));
        }
        let mut sum = 0.0;
        for t in tplus.iter().chain(&tminus) {
            if !t.is_finite() || *t < 0.0 {
                return Err(Error::argument(format!("weights must be >= 0, got {t}")));
            }
            sum += t;
        }
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::argument(format!(
                "weights must sum to 1, got {sum}"
            )));
        }
        Ok(DiagonalFamilySpec { n, tplus, tminus })
    }

    /// Convenience constructor from sparse (canonical index, weight) pairs.
    pub fn from_pairs(
        n: usize,
        plus: &[(usize, f64)],
        minus: &[(usize, f64)],
    ) -> Result<Self> {
        let half = 1usize << (n - 1);
        let mut tp = vec![0.0; half];
        let mut tm = vec![0.0; half];
        for &(j, w) in plus {
            *tp.get_mut(j)
                .ok_or_else(|| Error::argument(format!("index {j} not canonical for n = {n}")))? = w;
        }
        for &(j, w) in minus {
            *tm.get_mut(j)
                .ok_or_else(|| Error::argument(format!("index {j} not canonical for n = {n}")))? = w;
        }
        DiagonalFamilySpec::new(n, tp, tm)
    }

    pub fn tplus(&self) -> &[f64] {
        &self.tplus
    }

    pub fn tminus(&self) -> &[f64] {
        &self.tminus
    }

    /// True when every projector pair away from the all-zeros index carries
    /// equal + and - weight, i.e. the state is unchanged by the local
    /// dephasing that wipes the off-diagonal signs elsewhere.
    pub fn depolarization_invariant(&self) -> bool {
        self.tplus
            .iter()
            .zip(&self.tminus)
            .skip(1)
            .all(|(p, m)| p == m)
    }
}

/// Assemble the mixture. Only the main diagonal and anti-diagonal are ever
/// populated: entry (j, j) = (t+ + t-)/2 and entry (j, complement(j)) =
/// (t+ - t-)/2, reading j canonically.
pub fn diagonal_family(spec: &DiagonalFamilySpec) -> DensityMatrix {
    let dim = 1usize << spec.n;
    let mut m = ComplexMatrix::zeros(dim);
    for jj in 0..dim / 2 {
        let cross = dim - 1 - jj;
        let diag = 0.5 * (spec.tplus[jj] + spec.tminus[jj]);
        let anti = 0.5 * (spec.tplus[jj] - spec.tminus[jj]);
        m.set(jj, jj, c(diag, 0.0));
        m.set(cross, cross, c(diag, 0.0));
        m.set(jj, cross, c(anti, 0.0));
        m.set(cross, jj, c(anti, 0.0));
    }
    DensityMatrix::new(m).expect("projector mixture is a valid density")
}

/// The diagonal-family weights that reproduce a noisy cat state exactly:
/// a uniform (1 - s)/2^n floor on every projector plus s on the target one.
pub fn werner_coefficients(spec: &WernerSpec) -> DiagonalFamilySpec {
    let half = 1usize << (spec.n - 1);
    let floor = (1.0 - spec.s) / (1usize << spec.n) as f64;
    let mut tp = vec![floor; half];
    let mut tm = vec![floor; half];
    match spec.sign {
        Sign::Plus => tp[spec.j.index()] += spec.s,
        Sign::Minus => tm[spec.j.index()] += spec.s,
    }
    DiagonalFamilySpec::new(spec.n, tp, tm).expect("weights sum to 1")
}

/// Constant-diagonal state whose anti-diagonal carries three bands: the
/// outer quarter fixed at 1/2^n, then a band at c, then a band at d. The
/// two inner bands are where separability forces c = d.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SharpnessSpec {
    pub n: usize,
    pub c: f64,
    pub d: f64,
}

impl SharpnessSpec {
    pub fn new(n: usize, c: f64, d: f64) -> Result<Self> {
        if n < 3 {
            return Err(Error::argument(format!(
                "band layout needs at least 3 qubits, got {n}"
            )));
        }
        if n > crate::bitindex::MAX_BITS {
            return Err(Error::SizeLimit(n));
        }
        let cap = 1.0 / (1usize << n) as f64;
        for (name, v) in [("c", c), ("d", d)] {
            if !v.is_finite() || v.abs() > cap {
                return Err(Error::argument(format!(
                    "|{name}| must be at most 1/2^n = {cap}, got {v}"
                )));
            }
        }
        Ok(SharpnessSpec { n, c, d })
    }

    /// Canonical-index ranges of the three anti-diagonal bands:
    /// fixed outer band, c band, d band.
    pub fn bands(&self) -> (std::ops::Range<usize>, std::ops::Range<usize>, std::ops::Range<usize>) {
        let q = 1usize << (self.n - 2);
        let e = 1usize << (self.n - 3);
        (0..q, q..q + e, q + e..2 * q)
    }
}

pub fn sharpness_state(spec: &SharpnessSpec) -> DensityMatrix {
    let dim = 1usize << spec.n;
    let flat = 1.0 / dim as f64;
    let (outer, cband, _dband) = spec.bands();
    let mut m = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        m.set(i, i, c(flat, 0.0));
    }
    for jj in 0..dim / 2 {
        let v = if outer.contains(&jj) {
            flat
        } else if cband.contains(&jj) {
            spec.c
        } else {
            spec.d
        };
        let cross = dim - 1 - jj;
        m.set(jj, cross, c(v, 0.0));
        m.set(cross, jj, c(v, 0.0));
    }
    DensityMatrix::new(m).expect("band state is a valid density")
}

/// White noise mixed into a diagonal-family state:
/// (1 - s)/2^n I + s * diagonal_family(u).
pub fn mu_state(s: f64, u: &DiagonalFamilySpec) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&s) || !s.is_finite() {
        return Err(Error::argument(format!(
            "mixing weight s must lie in [0, 1], got {s}"
        )));
    }
    let base = diagonal_family(u);
    let dim = base.dim();
    let floor = (1.0 - s) / dim as f64;
    let mut m = ComplexMatrix::from_fn(dim, |r, col| s * base.entry(r, col));
    for i in 0..dim {
        let v = m.get(i, i);
        m.set(i, i, c(v.re + floor, 0.0));
    }
    Ok(DensityMatrix::new(m).expect("noise mixture is a valid density"))
}

/// (⊗ I ± ⊗ sigma_{m_r}) / 2^n: the equal mixture of all product states
/// whose per-qubit signs along the given axes multiply to the given sign.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductSpec {
    pub n: usize,
    pub axes: Vec<[f64; 3]>,
    pub sign: Sign,
}

pub const UNIT_AXIS_TOLERANCE: f64 = 1e-12;

impl ProductSpec {
    pub fn new(axes: Vec<[f64; 3]>, sign: Sign) -> Result<Self> {
        let n = axes.len();
        if n == 0 || n > crate::bitindex::MAX_BITS {
            return Err(Error::argument(format!("bad qubit count {n}")));
        }
        for (i, m) in axes.iter().enumerate() {
            let norm = (m[0] * m[0] + m[1] * m[1] + m[2] * m[2]).sqrt();
            if !norm.is_finite() || (norm - 1.0).abs() > UNIT_AXIS_TOLERANCE {
                return Err(Error::argument(format!(
                    "axis {} must be a unit vector, |m| = {norm}",
                    i + 1
                )));
            }
        }
        Ok(ProductSpec { n, axes, sign })
    }
}

pub fn product_density(spec: &ProductSpec) -> DensityMatrix {
    let dim = 1usize << spec.n;
    let mut chain = sigma_dot(&spec.axes[0]);
    for m in &spec.axes[1..] {
        chain = kron(&chain, &sigma_dot(m)).expect("within size limit");
    }
    let mut out = ComplexMatrix::identity(dim);
    out.add_scaled(&chain, spec.sign.value())
        .expect("same dimension");
    out.scale(1.0 / dim as f64);
    DensityMatrix::new(out).expect("spin pair average is a valid density")
}
