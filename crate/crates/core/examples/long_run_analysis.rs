// Exact long-run payoffs of memory-one pairs from the stationary
// distribution of their joint Markov chain, and the linear payoff relations
// enforced by the zero-determinant strategies.

use ipd::analysis::{long_run_payoffs, zd_residual};
use ipd::game::PayoffMatrix;
use ipd::strategy::{builtin, builtins};

fn main() {
    let pm = PayoffMatrix::default();
    let wsls = builtin("WSLS").unwrap();
    let gtft = builtin("GTFT").unwrap();
    let lr = long_run_payoffs(&wsls, &gtft, &pm);
    println!(
        "WSLS vs GTFT: {:.4} / {:.4}, stationary {:?} via {:?}",
        lr.x, lr.y, lr.stationary.distribution, lr.stationary.method
    );

    for (name, slope, intercept) in [("ZDGTFT-2", 2.0, -3.0), ("ZDEXTORT-2", 2.0, -1.0)] {
        let zd = builtin(name).unwrap();
        println!("{name}: Px = {slope} Py + ({intercept})");
        for opp in builtins() {
            let r = zd_residual(&zd, &opp, slope, intercept, &pm);
            println!(
                "  vs {:<11} Px {:.4} Py {:.4} residual {:+.1e} {}",
                opp.name(),
                r.payoffs.x,
                r.payoffs.y,
                r.residual,
                if r.holds() { "ok" } else { "VIOLATED" }
            );
        }
    }
}
