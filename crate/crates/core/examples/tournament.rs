// Round robin of the predictive agent against the built-in memory-one
// strategies, printed as a ranked table.

use ipd::engine::{run_round_robin, MatchConfig, Player};
use ipd::strategy::builtins;

fn main() {
    let roster: Vec<Player> = std::iter::once(Player::predictor(0.1))
        .chain(builtins().into_iter().map(Player::MemoryOne))
        .collect();
    let result = run_round_robin(&roster, &MatchConfig::default(), 5, 1).expect("valid roster");

    println!("{:<4} {:<11} {:>8} {:>8} {:>5}", "rank", "name", "average", "stderr", "wins");
    for (place, &i) in result.ranking.iter().enumerate() {
        println!(
            "{:<4} {:<11} {:>8.3} {:>8.3} {:>5}",
            place + 1,
            result.roster[i],
            result.average[i],
            result.std_error[i],
            result.wins[i]
        );
    }
}
