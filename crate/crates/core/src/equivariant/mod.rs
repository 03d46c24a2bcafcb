//! Chain-level models of Pin(2)- and S¹-equivariant Floer complexes: a free
//! tower generator plus a finite part, studied through finite degree windows.
//! Extracts the tower bottoms `A, B, C`, the invariants `α, β, γ, μ`, the S¹
//! invariant `δ`, localization patterns and co-Borel duality.

mod model;
mod pin;
mod window;

pub use crate::graded::{Generator, Window, DEFAULT_MARGIN};
pub use model::{TowerElement, MAX_DEGREE, MAX_WINDOW};
pub use pin::{
    abc, abc_in, abc_of_reverse, borel_homology, coborel_tower_tops, delta_invariant,
    delta_invariant_in, localization_check, materialize, reverse_bottoms_from_tops, rokhlin_check,
    tower_bottoms, AbcReport, BorelHomology, LocalizationReport, PinModel, SOneModel,
};
pub use window::{BasisElement, Materialized};
