//! Recognition of simple-triangle (PI) graphs in `O(nm)` time.
//!
//! [`recognize`] returns an apex ordering, checkable with
//! [`verify_apex_ordering`], or a rejection whose witness can be checked
//! with [`Rejection::verify`].

pub mod alternating;
pub mod apex;
pub mod error;
pub mod format;
pub mod gen;
pub mod graph;
pub mod oracle;
pub mod orientation;
pub mod toposort;
pub mod transitive;

pub use apex::{
    recognize, recognize_with, step3_fixup, verify_apex_ordering, ApexViolation,
    RecognitionOutcome, Rejection,
};
pub use error::{Error, Result};
pub use graph::{ChordlessC4, Graph};
pub use orientation::{Arcs, ComplementOrder, PartialOrientation};
pub use transitive::{
    cocomparability_orient, comparability_orient, verify_transitive_extension, SeedOrder,
};
