//! The command-line sweep driven from code: breaking diagnostics on a
//! β × α grid, printed as CSV.

use geoacoustics::cli::{execute, Command, RunConfig};

fn main() -> geoacoustics::Result<()> {
    let mut cfg = RunConfig::default();
    cfg.set("grid", "beta=0.02,0.04,0.06")?;
    cfg.set("grid", "alpha=0.15,0.25,0.35")?;
    cfg.set("n-eta", "1025")?;
    let report = execute(Command::Sweep, &cfg)?;
    print!("{}", report.text);
    Ok(())
}
