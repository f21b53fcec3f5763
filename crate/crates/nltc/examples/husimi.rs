//! Husimi portraits at the quarter and half revival (Fig. 3), BS model,
//! N = 85, initial |ee>|alpha>.

use nltc::model::ModelKind;
use nltc::runs::{run_husimi, RunConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    std::fs::create_dir_all("output")?;
    for (tag, frac) in [("quarter", 0.25), ("half", 0.5)] {
        let cfg = RunConfig {
            model: ModelKind::BuckSukumar,
            n_mean: Some(85.0),
            t_frac: Some(frac),
            ..Default::default()
        };
        let out = run_husimi(&cfg)?;
        let path = format!("output/husimi_bs_{tag}.csv");
        out.write_csv(std::fs::File::create(&path)?)?;
        let norm = out
            .header
            .iter()
            .find(|l| l.starts_with("riemann_norm"))
            .cloned()
            .unwrap_or_default();
        println!("{path}: {norm}");
    }
    Ok(())
}
