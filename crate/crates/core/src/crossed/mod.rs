//! Graded crossed products D = (D₀F, H, (ω, f)) with D₀ a field.

mod algebra;
mod centralizer;
mod decompose;
mod factor_set;

pub use algebra::{grade_assign, grading_defect, Classification, CrossedProduct, Elem, RamificationKind, ThetaReport};
pub use centralizer::Centralizer;
pub use decompose::{carry_value, default_x, Decomposition};
pub use factor_set::{FactorSet, Homog, ValidationReport, Violation};
