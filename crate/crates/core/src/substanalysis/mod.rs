//! Exact frequencies for primitive substitutions.

mod composition;
mod derivative;
mod inclusion;
mod induced;

pub use composition::{composition_matrix, is_primitive, perron, CompositionMatrix, PerronData, PERRON_MAX_ITERATIONS};
pub use derivative::{derivative_substitution, exact_frequencies_via_durand, DerivativeSubstitution};
pub use inclusion::{
    exact_frequencies_via_inclusion_exclusion, exact_frequencies_via_michel, inclusion_exclusion_frequencies,
    subtract_superwords,
};
pub use induced::{frequencies_via_michel, induced_substitution, InducedSubstitution};
