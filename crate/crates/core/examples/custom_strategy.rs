// Runs a tournament from a TOML configuration that defines its own
// memory-one strategy and a non-default payoff matrix, writing the CSV
// outputs to a temporary directory.

use ipd::cli::{run, Command};
use ipd::config::RunConfig;

const CONFIG: &str = r#"
roster = ["PREDICTOR", "GRIM", "TFT", "ALLD"]
n_iter = 3
payoffs = "4,0,6,1"

# Cooperates only while both players cooperated last round.
[[strategy]]
name = "GRIM"
coop = [1.0, 0.0, 0.0, 0.0]
initial = "C"
"#;

fn main() {
    let mut cfg = RunConfig::from_toml(CONFIG).expect("valid config");
    let dir = tempfile::tempdir().unwrap();
    cfg.out = dir.path().to_path_buf();
    for path in run(&Command::Tournament, &cfg).expect("tournament runs") {
        println!("== {}", path.file_name().unwrap().to_string_lossy());
        print!("{}", std::fs::read_to_string(&path).unwrap());
    }
}
