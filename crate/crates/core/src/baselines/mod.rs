//! Reference reasoning methods used for comparison.

mod analogical;
mod implicative;
mod relation;

pub use analogical::{aars_fmp, aars_fmt, AarsForm};
pub use implicative::{cri_fmp, cri_fmt, qip_fmp, qip_fmt, tip_fmp, tip_fmt};
pub use relation::{build_relation, RelationKind, RelationMatrix};
