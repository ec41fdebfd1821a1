//! Exact-arithmetic computation of Chern-Schwartz-MacPherson (CSM) and
//! Segre-MacPherson (SSM) characteristic classes, with mechanical checks of
//! their positivity properties: sign alternation for Schubert cells,
//! effectivity of signed SSM classes of hyperplane-arrangement complements,
//! and effectivity of characteristic cycles of constructible functions.

pub mod arrangements;
pub mod cells;
pub mod constructible;
pub mod fixtures;
pub mod io;
pub mod lr;
pub mod partition;
pub mod reference;
pub mod ring;
pub mod sym;

pub use lr::lr_coefficient;
pub use partition::{partitions_in_rectangle, Partition, Rectangle};
pub use ring::{BasisElement, GradedClass, ModelKind, RingModel};
