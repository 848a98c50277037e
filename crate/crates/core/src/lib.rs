//! Individualised marks from group-project marks.
//!
//! The crate is organised around the pipeline used both for simulation and
//! for real cohorts:
//!
//! * [`population`]: synthetic students with ideal marks, plus the noise
//!   model shared by every simulated assessment.
//! * [`assignment`]: the project × student participation matrix and the
//!   group marks it induces.
//! * [`schemes`]: the six marking schemes (SOPP, RA, MRA, NPA, PR, PiM).
//! * [`numerics`]: the minimum-norm least-squares solve and dominant
//!   eigenvector kernels behind PiM and PR.
//! * [`metrics`]: error summaries of assigned marks against ideal marks.
//!
//! Everything numeric is generic over [`Scalar`] (`f32` or `f64`); the
//! aliases at the crate root fix the scalar to `f64`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod assignment;
pub mod error;
pub mod metrics;
pub mod numerics;
pub mod population;
pub mod scalar;
pub mod schemes;

pub use assignment::{assign_groups, group_marks, Assignment, GroupMarkVector, ParticipationMatrix};
pub use error::{Error, Result};
pub use metrics::{bias_slope, error_summary, ErrorSummary, RmsConvention};
pub use numerics::{leading_eigenvector, pinv_solve, DenseMatrix, Eigenpair};
pub use population::{
    generate_population, perturb, NoiseKind, NoiseModel, SeedStreams, StreamKind,
    StudentPopulation,
};
pub use scalar::Scalar;
pub use schemes::{
    apply_scheme, mark_adjusted_reflexive, normalised_peer_assessment, peer_ranking,
    pseudoinverse_marking, ranking_adjacency, reflexive_accounts, simulate_assessments, sopp,
    AssessmentBundle, AssessmentKinds, MarkResult, PeerMarks, PeerRankings, ReflexiveMarks,
    Scheme, SchemeParams,
};

/// `f64` student population.
pub type Population = StudentPopulation<f64>;
/// `f64` group marks.
pub type GroupMarks = GroupMarkVector<f64>;
/// `f64` dense matrix.
pub type Matrix = DenseMatrix<f64>;
/// `f64` noise model.
pub type Noise = NoiseModel<f64>;
/// `f64` scheme parameters.
pub type Params = SchemeParams<f64>;
/// `f64` assessment bundle.
pub type Assessments = AssessmentBundle<f64>;
/// `f64` marking result.
pub type Marks = MarkResult<f64>;
/// `f64` error summary.
pub type Errors = ErrorSummary<f64>;
