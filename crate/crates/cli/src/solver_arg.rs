use fa_core::{BuilderSpec, BuilderStrategy, FaError, MetricKind};

/// A parsed `--solver` argument.
#[derive(Debug, Clone)]
pub enum SolverChoice {
    Ml { skeleton: String },
    Asp,
    AAsp(BuilderSpec),
    Pac,
}

impl SolverChoice {
    pub fn label(&self) -> String {
        match self {
            SolverChoice::Ml { skeleton } => format!("ml:{skeleton}"),
            SolverChoice::Asp => "asp".to_string(),
            SolverChoice::AAsp(spec) => spec.label(),
            SolverChoice::Pac => "pac".to_string(),
        }
    }
}

/// Grammar: `ml:SKELETON | asp | a-asp:STRAT[:ARG[:ARG]] | pac`, with
/// strategies `exhaustive | greedy | beam:W | random:BUDGET |
/// epsilon-greedy:EPS:BUDGET`.
pub fn parse_solver(text: &str, seed: u64, history_aware: bool) -> Result<SolverChoice, FaError> {
    let bad = |msg: String| FaError::config("solver", msg);
    if text == "asp" {
        return Ok(SolverChoice::Asp);
    }
    if text == "pac" {
        return Ok(SolverChoice::Pac);
    }
    if let Some(skeleton) = text.strip_prefix("ml:") {
        if skeleton.is_empty() {
            return Err(bad("ml needs a skeleton, e.g. ml:inc·inc".into()));
        }
        return Ok(SolverChoice::Ml { skeleton: skeleton.to_string() });
    }
    let Some(rest) = text.strip_prefix("a-asp:") else {
        return Err(bad(format!(
            "unknown solver `{text}`; expected ml:SKELETON, asp, a-asp:STRAT[:ARG], or pac"
        )));
    };
    let parts: Vec<&str> = rest.split(':').collect();
    let strategy = match parts.as_slice() {
        ["exhaustive"] => BuilderStrategy::Exhaustive,
        ["greedy"] => BuilderStrategy::Greedy,
        ["beam", w] => BuilderStrategy::Beam {
            width: w
                .parse()
                .map_err(|_| bad(format!("beam width `{w}` is not an integer")))?,
        },
        ["random", b] => BuilderStrategy::Random {
            budget: b
                .parse()
                .map_err(|_| bad(format!("random budget `{b}` is not an integer")))?,
            seed,
        },
        ["epsilon-greedy", eps, b] => BuilderStrategy::EpsilonGreedy {
            epsilon: eps
                .parse()
                .map_err(|_| bad(format!("epsilon `{eps}` is not a number")))?,
            budget: b
                .parse()
                .map_err(|_| bad(format!("budget `{b}` is not an integer")))?,
            seed,
        },
        _ => {
            return Err(bad(format!(
                "unknown a-asp strategy `{rest}`; expected exhaustive, greedy, beam:W, random:BUDGET, or epsilon-greedy:EPS:BUDGET"
            )))
        }
    };
    let mut spec = BuilderSpec::new(strategy);
    if history_aware {
        spec = spec.history_aware();
    }
    spec.validate()?;
    Ok(SolverChoice::AAsp(spec))
}

pub fn parse_metric(text: &str) -> Result<MetricKind, FaError> {
    match text {
        "abs" => Ok(MetricKind::AbsDiff),
        "sq" => Ok(MetricKind::SquaredDiff),
        "01" => Ok(MetricKind::ZeroOne),
        other => Err(FaError::config(
            "metric",
            format!("unknown metric `{other}`; expected abs, sq, or 01"),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_full_grammar() {
        assert!(matches!(parse_solver("asp", 0, false), Ok(SolverChoice::Asp)));
        assert!(matches!(parse_solver("pac", 0, false), Ok(SolverChoice::Pac)));
        assert!(matches!(
            parse_solver("ml:inc·inc", 0, false),
            Ok(SolverChoice::Ml { .. })
        ));
        let beam = parse_solver("a-asp:beam:4", 0, false).unwrap();
        assert_eq!(beam.label(), "a-asp:beam:4");
        let eps = parse_solver("a-asp:epsilon-greedy:0.25:100", 7, true).unwrap();
        match eps {
            SolverChoice::AAsp(spec) => {
                assert!(spec.history_aware);
                assert_eq!(
                    spec.strategy,
                    BuilderStrategy::EpsilonGreedy { epsilon: 0.25, budget: 100, seed: 7 }
                );
            }
            other => panic!("expected a builder, got {}", other.label()),
        }
    }

    #[test]
    fn rejects_junk() {
        assert!(parse_solver("gradient-descent", 0, false).is_err());
        assert!(parse_solver("a-asp:beam:zero", 0, false).is_err());
        assert!(parse_solver("a-asp:beam:0", 0, false).is_err());
        assert!(parse_metric("l2").is_err());
    }
}
