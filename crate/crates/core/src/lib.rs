//! Weak integer additive set-labelings of graphs.
//!
//! A set-labeling gives every vertex a distinct finite set of non-negative
//! integers and every edge the sumset of its end labels. It is weak when each
//! edge label is no larger than the larger end label, which happens exactly
//! when one end of every edge is a singleton.

pub mod constructors;
pub mod family;
pub mod graph;
pub mod intset;
pub mod labeling;
pub mod solver;

pub use constructors::{
    claimed_value, construct, construct_k_uniform, documented_exception, ClaimedFormula,
    ConstructError, Construction, SizeException,
};
pub use family::{generate, Family, FamilySpec};
pub use graph::{Bipartition, Graph, GraphError, GraphJson, Role};
pub use intset::{subsets_of, IntSet, IntSetError, Universe};
pub use labeling::{
    verify, LabelingClass, LabelingError, LabelingFile, Rule, SetLabeling, VerifyReport, Violation,
    Witness,
};
pub use solver::{
    audit, exists_labeling, min_ground_set, min_singleton_count, AuditRow, Relation, SolveError,
    SolveMode, SolveOptions, SolveResult, SolveStatus, UniverseMode,
};
