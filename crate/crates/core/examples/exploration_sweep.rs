// How the length of the predictor's initial random phase affects its
// tournament payoff.

use ipd::analysis::exploration_sweep;
use ipd::engine::{MatchConfig, Player};
use ipd::strategy::builtins;

fn main() {
    let roster: Vec<Player> = std::iter::once(Player::predictor(0.0))
        .chain(builtins().into_iter().map(Player::MemoryOne))
        .collect();
    let grid = [0.0, 0.1, 0.25, 0.5, 0.75, 1.0];
    let rows = exploration_sweep(&roster, &MatchConfig::default(), 3, &grid, 1).expect("valid sweep");
    println!("p_exp  average  vs ZDGTFT-2  place");
    for r in rows {
        println!(
            "{:<5}  {:.3}    {:+.3}      {}",
            r.p_exp,
            r.average,
            r.delta_vs_reference.unwrap_or(f64::NAN),
            r.place
        );
    }
}
