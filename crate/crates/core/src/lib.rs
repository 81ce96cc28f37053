//! Exact-arithmetic toolkit for hyperkähler lattice computations.
//!
//! Everything here is computed over the rationals with arbitrary-precision
//! integers; there are no floating-point numbers and no tolerances anywhere.
//! The main pieces:
//!
//! - [`linalg`]: vectors, matrices and symmetric bilinear forms over `Q`,
//!   with deterministic Gaussian elimination (kernel, rank, determinant,
//!   Sylvester positivity test) and extended gcd.
//! - [`lattice`]: BBF-type lattices given by Gram matrices, including the
//!   rank-7 generalized Kummer lattice `U^3 + <-2(n+1)>`.
//! - [`mukai`]: the Mukai extension `Q a + L + Q b` of a lattice, the
//!   Lefschetz raising/lowering operators and the grading operator, plus
//!   membership tests for `so` of the extended pairing and for isometries.
//! - [`sym`]: symmetric powers of the extension with the derivation action,
//!   the contraction Laplacian and its kernel, hard Lefschetz rank checks
//!   and the model Fujiki constant.
//! - [`hodge`]: rational period points, B-field operators, kappa-class
//!   arithmetic, degree-reversal detection, conjugation certificates for
//!   adjoint Lefschetz operators, and twistor 3-spaces.
//! - [`sp`]: coefficient arithmetic of the invariant symplectomorphism
//!   groups of abelian-variety products, with the Hecke congruence subgroup
//!   embedding.
//! - [`sample`]: seeded, reproducible random generation of the rational
//!   objects above, used by the verification suites and property tests.

pub mod error;
pub mod hodge;
pub mod lattice;
pub mod linalg;
pub mod mukai;
pub mod rational;
pub mod sample;
pub mod sp;
pub mod sym;

pub use error::Error;
pub use hodge::{
    bfield, check_degree_reversing, degree_zero_block, diagonal_twistor, is_hodge_isometry,
    is_period_point, kahler_cone_compatible, kappa_of_chern, lsc_certificate, mukai_pairing_ab,
    phi_kappa, twistor_space, ChernData, DiagonalTwistor, HodgeIsometry, IsometryLevel,
    LscCertificate, MukaiVectorAb, PeriodPoint, TwistorSpace,
};
pub use lattice::BBFLattice;
pub use linalg::{ext_gcd, BilinearForm, ExtGcd, QMatrix, QVector};
pub use mukai::{
    adjoint_f, commutator, exp_nilpotent, grading_h, is_isometry, is_isometry_between,
    lefschetz_e, so_membership, GradedOperator, MukaiExtension,
};
pub use rational::{format_rat, parse_rat, rat, rat_int, Int, Rat};
pub use sp::{
    compose, g_candidate_search, gamma0_embed, gamma0_member, is_symplectic, realize, tilde,
    GCandidate, GSearchReport, SpElement, SpParams,
};
pub use sym::{
    bbf_dual_class, derivation_action, fujiki_coefficient, hard_lefschetz_check,
    hard_lefschetz_levels, is_multiple_of_bbf, laplacian, psi_unit, s_n_kernel, sym_dim,
    FujikiValue, HardLefschetzReport, LevelReport, MultiIndex, SymBasis, SymOperator, SymVector,
};

pub type Result<T> = std::result::Result<T, Error>;
