//! Numerical toolkit for boundary limits of bounded holomorphic functions
//! on finite-type domains in `C^2`.
//!
//! The crate computes the type of a boundary point, classifies curves
//! approaching it, and checks that limits along restricted admissible
//! curves agree with the non-tangential limit.

pub mod cli;
pub mod curves;
pub mod error;
pub mod geometry;
pub mod holo;
pub mod jet;
pub mod lindelof;
pub mod report;
pub mod scenario;
pub mod schedule;
pub mod type_analysis;

pub use curves::{
    classify, eventually_in_admissible, ClassifyOptions, CurveClassification, ExponentFamily,
    NamedCurve, Verdict, ZetaCurve,
};
pub use error::{Error, Result};
pub use geometry::{BoundaryFrame, ComplexPoint, DomainModel, Membership};
pub use holo::BoundedHolomorphicFunction;
pub use lindelof::{verify_theorem, ScenarioVerdict, TheoremScenario, VerificationReport};
pub use schedule::{Schedule, ScheduleSpec};
pub use type_analysis::{best_contact, point_type, AnalyticDisc, TypeSearch};
