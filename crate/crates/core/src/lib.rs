//! Numerics for realism-based nonlocality of bipartite quantum states.
//!
//! The library is organized around the measurement-without-readout picture:
//! dephasing and monitoring channels ([`channels`]), entropic quantifiers of
//! how far an observable is from having a definite value and of how much a
//! remote unrevealed measurement changes that ([`quantifiers`]), and
//! derivative-free maximization over observable pairs ([`optimizer`]).
//! [`verify`] packages every invariant of those pieces as a runnable,
//! seeded property suite.

pub mod channels;
mod error;
pub mod linalg;
pub mod observables;
pub mod optimizer;
pub mod quantifiers;
pub mod states;
pub mod verify;

pub use channels::{MonitoringStrength, Scope};
pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, Side, Spectrum};
pub use observables::{BlochAngles, ProjectiveObservable};
pub use quantifiers::BoundsReport;
pub use states::{DensityMatrix, PureState, SchmidtForm};
