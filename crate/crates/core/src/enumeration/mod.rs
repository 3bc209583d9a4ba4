//! Exhaustive enumeration of regular graphs, their uniform colorings and the
//! resulting algebras.

mod classify;
mod colorings;
mod reference;
mod regular;

pub use classify::{
    classify, known_isomorphism, sign_class_report, Classification, ClassificationRow, ClassifyOptions, GraphRow,
    Identification, Presentation, Separation, SignClass, SignClassReport, MAX_CLASSIFY_ORDER,
};
pub use colorings::{
    dedup_equivalent, factorizations, labeled_colorings, near_one_factorizations, one_factorizations,
    uniform_colorings, ColoringCensus, FactorizationCensus, MAX_COLORING_ORDER,
};
pub use reference::{reference_rows, ReferenceRow};
pub use regular::{canonical_form, canonical_relabel, regular_graphs, regular_graphs_of, MAX_REGULAR_ORDER};
