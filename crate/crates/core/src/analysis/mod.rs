//! Long-run analysis of memory-one pairs, linear payoff relations,
//! exploration sweeps and the learning-curve fit.

mod chain;
mod fit;
mod sweep;

pub use chain::{
    build_chain, long_run_from, long_run_payoffs, simulate_occupancy, stationary,
    stationary_space_dimension, stationary_with, zd_residual, JointChain, LongRunPayoffs,
    SimulationOptions, StationaryMethod, StationaryResult, ZdResidual, RANK_TOLERANCE,
};
pub use fit::{fit_inverse_sqrt, InverseSqrtFit};
pub use sweep::{
    default_grid, exploration_sweep, sweep_row, with_exploration, SweepRow, SWEEP_REFERENCE,
};
