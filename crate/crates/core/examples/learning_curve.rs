// The predictor's cumulative mean payoff over a match, averaged over a
// tournament, with a least-squares fit of `a + b / sqrt(n)`.

use ipd::analysis::fit_inverse_sqrt;
use ipd::engine::{run_round_robin, time_series, MatchConfig, Player};
use ipd::strategy::builtins;

fn main() {
    let roster: Vec<Player> = std::iter::once(Player::predictor(0.1))
        .chain(builtins().into_iter().map(Player::MemoryOne))
        .collect();
    let result = run_round_robin(&roster, &MatchConfig::default(), 5, 2).unwrap();
    let series = time_series(&result, "PREDICTOR", 20).unwrap();
    for (turn, mean) in &series {
        println!("{turn:>4} {mean:.4}");
    }
    let points: Vec<(f64, f64)> = series.iter().map(|&(t, v)| (f64::from(t), v)).collect();
    let fit = fit_inverse_sqrt(&points).unwrap();
    println!("fit: {:.4} + {:.4} / sqrt(n)  (rms {:.4})", fit.a, fit.b, fit.rms);
}
