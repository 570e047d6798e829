// A single match of the predictive agent against tit-for-tat, showing the
// opponent model it learns and how its payoff settles.

use ipd::engine::{play_match, MatchConfig, Player};
use ipd::game::JointOutcome;
use ipd::strategy::builtin;

fn main() {
    let tft = Player::MemoryOne(builtin("TFT").unwrap());
    let record = play_match(&Player::predictor(0.1), &tft, &MatchConfig::default().with_seed(3));

    let moves: String = record.turns.iter().take(40).map(|t| t.a.as_char()).collect();
    println!("first 40 predictor moves: {moves}");
    println!("mean payoffs: {:.3} vs {:.3}", record.means[0], record.means[1]);

    let model = record.models[0].expect("predictor keeps a model");
    for s in JointOutcome::ALL {
        println!(
            "p(C | {s}) = {:.3}  ({} of {} observations)",
            model.probability_f64(s),
            model.cooperations(s),
            model.observations(s)
        );
    }
    for (k, m) in record.window_means(0, 50).iter().enumerate() {
        println!("turns {:>3}-{:>3}: {m:.3}", k * 50 + 1, (k + 1) * 50);
    }
}
