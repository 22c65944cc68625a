//! Runs a scenario file end to end. Defaults to the shipped `egg2_inner`.

use std::path::PathBuf;

use finite_type_lindelof::report::summary_line;
use finite_type_lindelof::scenario::{Overrides, ScenarioFile};
use finite_type_lindelof::verify_theorem;

fn main() -> finite_type_lindelof::Result<()> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| {
            PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios/egg2_inner.scn")
        });
    let scenario = ScenarioFile::load(&path)?.theorem(&Overrides::default())?;
    match verify_theorem(&scenario) {
        Ok(report) => {
            println!(
                "{}: {:?}, limit {:?}",
                report.scenario_id, report.verdict, report.limit
            );
            for c in &report.curves {
                println!("{}", summary_line(c));
            }
        }
        Err(e) => println!("{}: rejected: {e}", scenario.id),
    }
    Ok(())
}
