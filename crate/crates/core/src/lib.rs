//! Decide and certify full separability of n-qubit density matrices from
//! their computational-basis entries and their spin-basis coefficients.
//!
//! The pipeline: validate a state ([`DensityMatrix`]), move between the
//! adjusted (diagonal-indexed) and spin coefficient tables with a fast
//! Hadamard transform ([`bases`]), run necessary and sufficient
//! separability tests ([`criteria`]), and, when a sufficient test fires,
//! emit an explicit convex decomposition into product states
//! ([`decompose`]). Closed-form state families used as references and
//! regression anchors live in [`families`].

pub mod bases;
pub mod bitindex;
pub mod criteria;
pub mod decompose;
pub mod density;
pub mod eigen;
pub mod error;
pub mod families;
pub mod matrix;

pub use bases::{
    adjusted_from_density, adjusted_from_spin, basis_element, density_from_spin,
    density_from_spin_with_tolerance, max_spin_coefficient, spin_from_adjusted,
    spin_from_density, spin_norm1, BasisElement, BasisKind, CoefficientTable,
};
pub use bitindex::{BitIndex, MAX_BITS};
pub use criteria::{
    analyze, antidiagonal_necessary, assemble_analysis, cauchy_schwarz_bipartite,
    diagonal_family_necessary,
    mu_sufficient, peres_subsets, peres_test, peres_test_with_tolerance,
    random_neighborhood_check, sharpness_decision, sharpness_report, spin_norm_sufficient,
    AnalysisReport, AnalyzeOptions, CriterionResult, FamilyFinding, FamilyRule, Overall,
    PlanarAngleProfile, SharpnessReport, Verdict, Witness,
};
pub use decompose::{
    even_parity_indices, product_decomposition, spin_norm_decomposition, verify_decomposition,
    werner_decomposition, ProductTerm, SeparableDecomposition, VerifyReport,
};
pub use density::{partial_transpose, partial_transpose_matrix, DensityMatrix};
pub use eigen::hermitian_eigenvalues;
pub use error::{Error, Result};
pub use families::{
    bloch_state, diagonal_family, ghz_projector, mu_state, product_density, sharpness_state,
    sigma_dot, werner, werner_coefficients, werner_threshold, DiagonalFamilySpec, ProductSpec,
    SharpnessSpec, Sign, WernerSpec, X_AXIS, Y_AXIS, Z_AXIS,
};
pub use matrix::{kron, kron_all, trace_inner, ComplexMatrix};
pub use num_complex::Complex64;
