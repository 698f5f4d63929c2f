//! Paths, analytic elements, branch tracking along paths and the local
//! monodromy operators built on top of them.

mod element;
mod holonomic;
mod path;

pub use element::{
    continue_along, continue_germ, AnalyticElement, CombinationTracker, Element, LinearCombination, Monomial,
    Pointwise, PointwiseTracker, Product, Tracker, Zero,
};
pub use holonomic::{HolonomicElement, HolonomicTracker, InitialData, LinearSystem};
pub use path::{segment_distance, Path, StepPolicy, MAX_CHORD_DEGREES};

mod branch;

pub use branch::{
    build_branch_table, default_base, loop_tracker, sigma_k, sigma_tracker, sigma_values, tracker_germ, BranchTable,
    DeltaElement, SigmaElement, TABLE_GERM_LEN,
};

mod integrability;
mod recurrence;

pub use integrability::{integrability_check, integrability_check_with, IntegrabilityReport, RaySamples, INTEGRABILITY_TOL};
pub use recurrence::{
    detect_from_values, field_tag, least_squares, recurrence_detect, FieldTag, RecurrenceRelation, RECURRENCE_TOL,
};

mod series;

pub use series::SeriesElement;
