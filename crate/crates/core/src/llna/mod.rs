//! Life-Like network automata.
//!
//! A cell is a network node with a binary state. At each step every node
//! computes the fraction of its alive neighbors, maps it to one of nine
//! density levels and applies the birth or survival set of a [`Rule`].

mod automaton;
pub mod dump;
mod rule;

pub use automaton::{
    column_entropy, density, density_level, discard_transient, entropy_order, evolve, evolve_from,
    init_state, sd_tep, transition, EvolutionRecord, StateVector, DEFAULT_TIMESTEPS,
    DEFAULT_TRANSIENT,
};
pub use rule::{Rule, LEVELS, RULE_SPACE};
