//! W-state generation on the ion trap: scans for a mean phonon number whose
//! gate angle hits pi/4, then runs the full chain.

use nltc::model::ModelKind;
use nltc::runs::{run_wstate, RunConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    std::fs::create_dir_all("output")?;
    let cfg = RunConfig { model: ModelKind::IonTrap, n_scan: (500, 3000), ..Default::default() };
    let out = run_wstate(&cfg)?;
    out.write_csv(std::fs::File::create("output/wstate_ion.csv")?)?;
    for line in out.header.iter().filter(|l| {
        l.contains("admissible") || l.contains("residual") || l.contains("fidelity") || l.contains("psi2")
    }) {
        println!("{line}");
    }
    Ok(())
}
