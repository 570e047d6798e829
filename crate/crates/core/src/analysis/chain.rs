use nalgebra::Matrix4;
use rayon::prelude::*;

use crate::game::{JointOutcome, PayoffMatrix};
use crate::rng::{derive_seed, RngStream};
use crate::strategy::MemoryOneStrategy;

/// Singular values below this count as zero when determining the dimension
/// of the stationary space.
pub const RANK_TOLERANCE: f64 = 1e-10;

/// Transition matrix of the joint outcome chain, in player x's orientation.
/// Rows and columns follow [`JointOutcome::ALL`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JointChain {
    pub transition: [[f64; 4]; 4],
}

impl JointChain {
    pub fn row(&self, from: JointOutcome) -> [f64; 4] {
        self.transition[from.index()]
    }

    /// Samples the successor of `from` with a single draw.
    pub fn step(&self, from: usize, rng: &mut RngStream) -> usize {
        let u = rng.uniform();
        let row = &self.transition[from];
        let mut acc = 0.0;
        for (k, p) in row.iter().enumerate() {
            acc += p;
            if u < acc {
                return k;
            }
        }
        // Rounding left the cumulative sum just under 1: take the last
        // state with positive mass.
        row.iter().rposition(|&p| p > 0.0).unwrap_or(3)
    }
}

/// Joint chain of `x` against `y`. Each player reads the previous outcome in
/// its own orientation, so `y` is consulted at the mirrored state.
pub fn build_chain(x: &MemoryOneStrategy, y: &MemoryOneStrategy) -> JointChain {
    let mut transition = [[0.0; 4]; 4];
    for from in JointOutcome::ALL {
        let px = x.coop_prob(from);
        let py = y.coop_prob(from.mirror());
        for to in JointOutcome::ALL {
            let a = if to.own.is_cooperate() { px } else { 1.0 - px };
            let b = if to.opp.is_cooperate() { py } else { 1.0 - py };
            transition[from.index()][to.index()] = a * b;
        }
    }
    JointChain { transition }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StationaryMethod {
    DirectSolve,
    SimulationFallback,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StationaryResult {
    pub distribution: [f64; 4],
    pub method: StationaryMethod,
    /// The chain has a unique stationary distribution.
    pub ergodic: bool,
}

/// Settings of the empirical fallback used when the stationary distribution
/// is not unique.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimulationOptions {
    pub steps: u64,
    pub replicas: u32,
    pub seed: u64,
}

impl Default for SimulationOptions {
    fn default() -> Self {
        SimulationOptions {
            steps: 1_000_000,
            replicas: 100,
            seed: 0x1D_57A7,
        }
    }
}

/// Dimension of the left null space of `M - I`.
pub fn stationary_space_dimension(chain: &JointChain) -> usize {
    let a = system(chain);
    a.singular_values()
        .iter()
        .filter(|&&s| s < RANK_TOLERANCE)
        .count()
}

fn system(chain: &JointChain) -> Matrix4<f64> {
    // Rows of (M^T - I) express v (M - I) = 0 for a column vector v.
    Matrix4::from_fn(|r, c| chain.transition[c][r] - if r == c { 1.0 } else { 0.0 })
}

/// Stationary distribution of `chain`.
///
/// A unique solution comes from the null vector of `M^T - I` (via SVD).
/// Otherwise the result is the empirical state frequency of simulated runs
/// started from uniformly random states, flagged non-ergodic.
pub fn stationary(chain: &JointChain) -> StationaryResult {
    stationary_with(chain, &SimulationOptions::default())
}

pub fn stationary_with(chain: &JointChain, sim: &SimulationOptions) -> StationaryResult {
    let svd = system(chain).svd(false, true);
    let zero = svd
        .singular_values
        .iter()
        .filter(|&&s| s < RANK_TOLERANCE)
        .count();
    if zero == 1 {
        let (k, _) = svd
            .singular_values
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .expect("four singular values");
        let v_t = svd.v_t.expect("requested right singular vectors");
        let v = v_t.row(k);
        let total: f64 = v.iter().sum();
        let mut distribution = [0.0; 4];
        for (d, x) in distribution.iter_mut().zip(v.iter()) {
            // Clamp round-off below zero.
            *d = (x / total).max(0.0);
        }
        let s: f64 = distribution.iter().sum();
        distribution.iter_mut().for_each(|d| *d /= s);
        return StationaryResult {
            distribution,
            method: StationaryMethod::DirectSolve,
            ergodic: true,
        };
    }
    StationaryResult {
        distribution: simulate_occupancy(chain, sim),
        method: StationaryMethod::SimulationFallback,
        ergodic: false,
    }
}

/// Average state frequencies over `replicas` runs of `steps` transitions,
/// each started from a uniformly random state.
pub fn simulate_occupancy(chain: &JointChain, sim: &SimulationOptions) -> [f64; 4] {
    let counts: Vec<[u64; 4]> = (0..sim.replicas)
        .into_par_iter()
        .map(|r| {
            let mut rng = RngStream::new(derive_seed(sim.seed, &[u64::from(r)]));
            let mut state = rng.index(4);
            let mut c = [0u64; 4];
            for _ in 0..sim.steps {
                state = chain.step(state, &mut rng);
                c[state] += 1;
            }
            c
        })
        .collect();
    let mut freq = [0.0; 4];
    for c in &counts {
        for (f, &k) in freq.iter_mut().zip(c.iter()) {
            *f += k as f64 / sim.steps as f64;
        }
    }
    freq.map(|f| f / f64::from(sim.replicas.max(1)))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LongRunPayoffs {
    pub x: f64,
    pub y: f64,
    pub stationary: StationaryResult,
}

/// Long-run mean payoffs of `x` and `y` playing each other.
pub fn long_run_payoffs(
    x: &MemoryOneStrategy,
    y: &MemoryOneStrategy,
    pm: &PayoffMatrix,
) -> LongRunPayoffs {
    long_run_from(stationary(&build_chain(x, y)), pm)
}

pub fn long_run_from(stationary: StationaryResult, pm: &PayoffMatrix) -> LongRunPayoffs {
    let d = stationary.distribution;
    let dot = |w: [f64; 4]| d.iter().zip(w.iter()).map(|(a, b)| a * b).sum::<f64>();
    LongRunPayoffs {
        x: dot(pm.own_vector()),
        y: dot(pm.opponent_vector()),
        stationary,
    }
}

/// Residual of the linear payoff relation `Px = slope * Py + intercept`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZdResidual {
    pub residual: f64,
    pub payoffs: LongRunPayoffs,
    /// Based on the simulation fallback rather than an exact solve.
    pub approximate: bool,
}

impl ZdResidual {
    /// 1e-9 for exact solves, 1e-2 for simulated ones.
    pub fn tolerance(&self) -> f64 {
        if self.approximate {
            1e-2
        } else {
            1e-9
        }
    }

    pub fn holds(&self) -> bool {
        self.residual.abs() < self.tolerance()
    }
}

pub fn zd_residual(
    x: &MemoryOneStrategy,
    y: &MemoryOneStrategy,
    slope: f64,
    intercept: f64,
    pm: &PayoffMatrix,
) -> ZdResidual {
    let payoffs = long_run_payoffs(x, y, pm);
    ZdResidual {
        residual: payoffs.x - (slope * payoffs.y + intercept),
        approximate: payoffs.stationary.method == StationaryMethod::SimulationFallback,
        payoffs,
    }
}
