//! Running verification suites on a scenario given as TOML text.

use projquant::cli::{run_scenario, RunOptions, Scenario};

const SCENARIO: &str = r#"
m = 2
b = "1/2"
suites = ["projective-invariance", "a-independence", "divergence-free-lift"]
alpha = ["x2", "1"]
density = "x1^2*x2 + 1"

[[christoffel]]
upper = 1
lower = [2, 2]
poly = "x1"

[symbol]
degree = 2
terms = [{ index = [1, 1], poly = "x2" }]
"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let scenario = Scenario::parse(SCENARIO)?;
    let report = run_scenario(&scenario, &RunOptions::default())?;
    print!("{}", report.render());
    println!("exit code: {}", report.exit_code());
    Ok(())
}
