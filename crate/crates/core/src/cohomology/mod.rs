//! Second cohomology of finite abelian groups with trivial action.

mod cocycle;
mod h2;
mod maps;

pub use cocycle::{Cocycle2, TableEntry};
pub use h2::{are_cohomologous, h2_trivial, CocycleSystem, Cohomologous, DEFAULT_BUDGET, H2};
pub use maps::{extension_cocycle, pushforward, restrict, Hom};
