use fa_core::{FaError, SolveResult};

pub const CSV_HEADER: &str = "solver,space,target,n,error,evaluated,wall_ms,best";

/// One solver outcome, rendered as a fixed-header CSV row plus a human
/// summary. The best-sequence rendering reparses to the same sequence.
#[derive(Debug, Clone)]
pub struct ReportRow {
    pub solver: String,
    pub space: String,
    pub target: String,
    pub n: usize,
    pub error: f64,
    pub evaluated: u64,
    pub wall_ms: u64,
    pub best: String,
}

impl ReportRow {
    pub fn new(
        solver: String,
        space: String,
        target: String,
        n: usize,
        result: &SolveResult,
        best: String,
        stable: bool,
    ) -> Self {
        ReportRow {
            solver,
            space,
            target,
            n,
            error: result.error,
            evaluated: result.evaluated,
            wall_ms: if stable { 0 } else { result.wall_ms },
            best,
        }
    }

    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.solver, self.space, self.target, self.n, self.error, self.evaluated, self.wall_ms, self.best
        )
    }

    pub fn human(&self) -> String {
        format!(
            "{} on {}/{} (n = {}): error {}, best {}, {} sequence(s) scored in {} ms",
            self.solver, self.space, self.target, self.n, self.error, self.best, self.evaluated, self.wall_ms
        )
    }
}

/// Write the CSV document to the chosen sink; the human summary goes to
/// standard error so pipelines stay clean.
pub fn emit(
    lines: &[String],
    summary: &[String],
    output: &Option<std::path::PathBuf>,
) -> Result<(), FaError> {
    let body = lines.join("\n") + "\n";
    match output {
        Some(path) => std::fs::write(path, body).map_err(|e| {
            FaError::config("output", format!("cannot write `{}`: {e}", path.display()))
        })?,
        None => print!("{body}"),
    }
    for line in summary {
        eprintln!("{line}");
    }
    Ok(())
}
