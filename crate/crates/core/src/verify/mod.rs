//! Mechanized checks: oracle agreement, normalization calibration,
//! presentation relations, bimodule commutation, dimensions, and the double
//! centralizer property.

pub mod agreement;
pub mod calibrate;
pub mod centralizer;
pub mod dimensions;
pub mod operator;
pub mod profile;
pub mod relations;
pub mod transpose;

pub use agreement::{compare_with_counts, verify_oracle_agreement, AgreementReport, Divergence, OracleRun};
pub use operator::{Basis, OperatorMatrix, OperatorSet, SparseVec};
pub use relations::{CORRECTIONS as RELATION_CORRECTIONS, verify_bimodule, verify_presentation, Counterexample, RelationReport};
pub use centralizer::{centralizer_report, default_samples, CentralizerReport, CentralizerSample, SideDimensions};
pub use calibrate::{calibrate_normalization, default_calibration_grid, CalibrationReport, CandidateResult};
pub use dimensions::{flag_count, verify_dimensions, DimensionReport, OrbitCount};
pub use profile::{desk_profile, run_criterion, CheckResult, Criterion, ProfileReport};
pub use transpose::{verify_transpose_duality, TransposeMismatch, TransposeReport};
