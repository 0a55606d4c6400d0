//! Runs a scenario in small slices, checkpointing between them, and shows the
//! resumed run reaching the same result as an uninterrupted one.
//!
//!     cargo run --release --example resumable_run [scenario]

use dichromatic::pipeline::{self, RunOptions, Status};

fn main() -> dichromatic::Result<()> {
    let id = std::env::args().nth(1).unwrap_or_else(|| "verify_8_completions".into());
    let dir = std::env::temp_dir().join(format!("tourn-example-{}", std::process::id()));
    let whole = pipeline::run(&id, &RunOptions::default())?;

    let mut opts = RunOptions { checkpoint_dir: Some(dir.clone()), node_budget: Some(4000), ..Default::default() };
    let mut slices = 0;
    let sliced = loop {
        let report = pipeline::run(&id, &opts)?;
        slices += 1;
        if report.status() != Status::Partial {
            break report;
        }
        opts.resume = true;
    };
    println!("{}", sliced.render());
    println!("{slices} slices; same report body as one run: {}", sliced.body() == whole.body());
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}
