//! Exact spectral analysis of subsets of the symmetric group S_n.
//!
//! The library revolves around the subspace U₁ spanned by the indicators of
//! the 1-cosets T_ij = {σ : σ(i) = j}. It computes coset count matrices,
//! orthogonal projections onto U₁ and their moments (all in exact rational
//! arithmetic), eigenvalues of normal Cayley graphs via characters,
//! spectral bounds (Hoffman, Dodziuk/Alon–Milman), edge boundaries in the
//! transposition graph, and a reconstruction procedure that recovers a
//! near-dictatorship from its coset matrix.

pub mod bounds;
pub mod coset;
pub mod cubic;
pub mod families;
pub mod perm;
pub mod rat;
pub mod reconstruct;
pub mod spectra;

pub use bounds::{
    alon_milman_bound, alon_milman_stability, hoffman_bound, hoffman_stability,
    SpectralBoundInput,
};
pub use coset::{
    coset_matrix, distance_to_u1, f_g_h_values, is_dictatorship, moments, pointwise_moments,
    project_u1, CosetMatrix, Dictatorship, PointwiseMoments, SpectralSummary,
};
pub use cubic::{
    averaging_moments, averaging_reduction_check, eg3_lower_bound, ef3, objective_at,
    objective_derivative_at, solve_qprime, AveragingMoments, CubicProblem, QPrimeSolution,
    StepSpec,
};
pub use families::{
    cameron_ku_check, counterexample_family, dictatorship_family, edge_boundary, family_b,
    family_c, is_centred, is_intersecting, isoperimetry_report, lex_initial_segment,
    sharpness_family, BoundaryReport, CameronKuReport, DictAxis, TranspositionGraph,
};
pub use perm::{
    coset_members, derangement_count, factorial, is_derangement_pair, read_family, write_family,
    Coset, PermFamily, Permutation, MAX_N,
};
pub use rat::{parse_rat, rat, rat_int, QuadExt, Rat};
pub use reconstruct::{
    certify, closed_form_f, closed_form_g, reconstruct, CertLine, CertifyReport, Reconstruction,
};
pub use spectra::{
    cayley_spectrum, character, dimension, dominates, isotypic_masses, partitions,
    second_largest_modulus_nontrivial, transposition_eigenvalue, CharacterTable, GraphKind,
    Partition, SpectrumReport, SpectrumRow,
};

/// Errors shared across the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("n = {0} unsupported (need 1 <= n <= {MAX_N})", MAX_N = perm::MAX_N)]
    BadN(usize),
    #[error("n = {n} exceeds cap {cap} for exhaustive work")]
    CapExceeded { n: usize, cap: usize },
    #[error("rank {rank} out of range for n = {n}")]
    RankOutOfRange { n: usize, rank: u64 },
    #[error("images do not form a bijection of 1..=n")]
    NotBijection,
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("{path}:{line}: {msg}")]
    ParseLine { path: String, line: usize, msg: String },
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("operation requires n >= {min}, got {n}")]
    SmallN { n: usize, min: usize },
    #[error("family is empty")]
    EmptyFamily,
    #[error("round(c) = 0: family too small to reconstruct")]
    RoundCZero,
    #[error("c = {c} exceeds n/2; outside the reconstruction regime")]
    CTooLarge { c: String },
    #[error("degenerate spectrum: {0}")]
    DegenerateSpectrum(String),
    #[error("family is not intersecting")]
    NotIntersecting,
    #[error("invalid parameter: {0}")]
    Invalid(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
