//! Exact Schubert calculus on the Grassmannian of lines and a classifier for
//! incidence scrolls: ruled surfaces swept by the lines of `P^n` that meet a
//! set of linear subspaces in general position.
//!
//! * [`schubert`] multiplies special Schubert classes of `G(1,n)` by the Pieri
//!   rule; [`oracle`] evaluates the same numbers through the bialternant formula.
//! * [`base`] validates and normalizes bases and computes degree, directrix
//!   degrees and the invariants of the scroll.
//! * [`degeneration`] splits a scroll by joining two base spaces and recovers
//!   the genus from the pieces.
//! * [`ruled`] works on the ruled-surface side: sections, very ampleness and
//!   the incidence criteria for genus 0 and 1.
//! * [`classify`] enumerates bases, builds the tables and audits them.

pub mod base;
pub mod classify;
pub mod degeneration;
pub mod error;
pub mod oracle;
pub mod ruled;
pub mod schubert;

pub use base::{
    degree, directrix_degree, invariants, invariants_reporting_speciality, normalize, validate,
    BundleDescriptor, BundleKind, IncidenceBase, ScrollInvariants, ValidationReport,
};
pub use classify::{audit, build_tables, enumerate_bases, AuditReport, EnumeratedBase, TableRow};
pub use degeneration::{
    genus_by_degeneration, join, separate, DegenerationSplit, Partner, Separation,
};
pub use error::{Error, ErrorKind, Result};
pub use oracle::oracle_intersection_number;
pub use ruled::{DirectrixCount, RuledSurfaceModel};
pub use schubert::{
    expected_dimension, intersection_number, pieri_multiply, CycleSum, GrassmannContext,
    SchubertClass,
};
