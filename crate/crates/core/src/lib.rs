//! Rational verification and synthesis for multi-player weighted reachability games.
//!
//! Player 0 is the system; players `1..=t` form the environment. Solvers cover
//! Nash-equilibrium rationality (CNS, NCNV, UNCNV, one-player-environment NCNS)
//! and Pareto rationality (CPS, NCPV, UNCPV). Every positive or negative answer
//! comes with a lasso certificate that can be replayed with [`cost_of_lasso`].

pub mod arena;
pub mod cost;
pub mod error;
pub mod mealy;
pub mod nash;
pub mod oracle;
pub mod ncns;
pub mod parikh;
pub mod pareto;
pub mod reductions;
pub mod fixtures;
pub mod io;
pub mod zerosum;

pub use arena::{
    cost_of_history, cost_of_lasso, normalize_lasso, validate_game, visit_set, Lasso, PlayerId,
    ReachabilityGame, VertexId, WeightedArena,
};
pub use cost::{Cost, CostVector, PlayerSet};
pub use error::{Error, Result};
