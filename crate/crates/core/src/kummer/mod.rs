//! Kummer graded subfields of crossed products.

mod classes;
mod search;
mod subfield;
mod theorems;

pub use classes::{kummer_exponent, ClassKey, KummerContext};
pub use search::SearchOptions;
pub use subfield::{KummerSubfield, Signature};
pub use theorems::{present_r, Clauses, Extraction};
