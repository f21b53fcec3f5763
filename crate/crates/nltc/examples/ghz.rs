//! GHZ generation: U G_theta |gg>|alpha> equals the two-component cat-GHZ
//! state up to truncation effects.

use nltc::model::ModelKind;
use nltc::runs::{run_ghz, RunConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    std::fs::create_dir_all("output")?;
    let cfg = RunConfig { model: ModelKind::BuckSukumar, n_mean: Some(85.0), ..Default::default() };
    let out = run_ghz(&cfg)?;
    out.write_csv(std::fs::File::create("output/ghz_bs.csv")?)?;
    for line in out.header.iter().filter(|l| l.contains("fidelity")) {
        println!("{line}");
    }
    for row in &out.rows {
        println!("{} = {}", row[0], row[1]);
    }
    Ok(())
}
