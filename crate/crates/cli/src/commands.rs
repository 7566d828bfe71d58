use std::collections::HashMap;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use fa_core::catalog::{elementary_catalog, CATALOG_NAMES};
use fa_core::closure::closure_fixpoint;
use fa_core::io;
use fa_core::nfl::average_over_all_targets;
use fa_core::solvers::{a_asp_solve, asp_solve, ml_solve, pac_solve};
use fa_core::vc::vc_dimension;
use fa_core::{
    BoundSequence, FaError, Metric, SampleSet, SearchSpace, SequenceSkeleton, SolveResult,
    UndefinedFallback, DEFAULT_BUDGET_CEILING,
};

use crate::report::{emit, ReportRow, CSV_HEADER};
use crate::solver_arg::{parse_metric, parse_solver, SolverChoice};
use crate::{CapacityArgs, CompareArgs, NflArgs, SolveArgs, Theorem2Args};

pub struct Context {
    pub output: Option<PathBuf>,
    pub stable_output: bool,
}

/// `--space` accepts a built-in catalog name or a file path.
fn load_space_arg(arg: &str) -> Result<(SearchSpace, String), FaError> {
    if CATALOG_NAMES.contains(&arg) {
        return Ok((elementary_catalog(arg)?, arg.to_string()));
    }
    let path = Path::new(arg);
    let space = io::load_space_file(path)?;
    Ok((space, label_of(path)))
}

fn label_of(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn load_target_arg(arg: &str, space: &SearchSpace) -> Result<(SampleSet, String), FaError> {
    let path = Path::new(arg);
    let spec = io::load_target_file(path)?;
    let samples = io::resolve_target(&spec, Some(space))?;
    Ok((samples, label_of(path)))
}

fn budget_of(flag: Option<u128>) -> Result<u128, FaError> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var("FA_BUDGET_CEILING") {
        Ok(text) => text.parse().map_err(|_| {
            FaError::config("FA_BUDGET_CEILING", format!("`{text}` is not an integer"))
        }),
        Err(_) => Ok(DEFAULT_BUDGET_CEILING),
    }
}

fn metric_with_fallback(kind: &str, literal: bool) -> Result<Metric, FaError> {
    let mut metric = Metric::new(parse_metric(kind)?);
    if literal {
        metric = metric.with_fallback(UndefinedFallback::Literal);
    }
    Ok(metric)
}

fn run_solver(
    choice: &SolverChoice,
    space: &SearchSpace,
    samples: &SampleSet,
    n: usize,
    metric: Metric,
    ceiling: u128,
) -> Result<SolveResult, FaError> {
    match choice {
        SolverChoice::Ml { skeleton } => {
            let skeleton = SequenceSkeleton::parse(skeleton, space)?;
            ml_solve(space, &skeleton, samples, metric)
        }
        SolverChoice::Asp => asp_solve(space, n, samples, metric, ceiling),
        SolverChoice::AAsp(spec) => a_asp_solve(space, n, samples, metric, spec),
        SolverChoice::Pac => pac_solve(space, samples),
    }
}

pub fn solve(args: &SolveArgs, ctx: &Context) -> Result<i32, FaError> {
    let (space, space_label) = load_space_arg(&args.space)?;
    let (samples, target_label) = load_target_arg(&args.target, &space)?;
    let metric = metric_with_fallback(&args.metric, args.literal_fallback)?;
    let choice = parse_solver(&args.solver, args.seed, args.history_aware)?;
    let ceiling = budget_of(args.budget)?;

    let result = run_solver(&choice, &space, &samples, args.n, metric, ceiling)?;
    let row = ReportRow::new(
        choice.label(),
        space_label,
        target_label,
        args.n,
        &result,
        result.best.render(&space),
        ctx.stable_output,
    );
    emit(
        &[CSV_HEADER.to_string(), row.csv()],
        &[row.human()],
        &ctx.output,
    )?;
    Ok(0)
}

pub fn compare(args: &CompareArgs, ctx: &Context) -> Result<i32, FaError> {
    if args.solvers.len() < 2 {
        return Err(FaError::config("solver", "compare needs at least two solvers"));
    }
    let (space, space_label) = load_space_arg(&args.space)?;
    let (samples, target_label) = load_target_arg(&args.target, &space)?;
    let metric = metric_with_fallback(&args.metric, args.literal_fallback)?;
    let ceiling = budget_of(args.budget)?;

    let mut rows = Vec::new();
    let mut asp_error: Option<f64> = None;
    for text in &args.solvers {
        let choice = parse_solver(text, args.seed, args.history_aware)?;
        let result = run_solver(&choice, &space, &samples, args.n, metric, ceiling)?;
        if matches!(choice, SolverChoice::Asp) && asp_error.is_none() {
            asp_error = Some(result.error);
        }
        rows.push(ReportRow::new(
            choice.label(),
            space_label.clone(),
            target_label.clone(),
            args.n,
            &result,
            result.best.render(&space),
            ctx.stable_output,
        ));
    }
    rows.sort_by(|a, b| {
        a.error
            .total_cmp(&b.error)
            .then(a.wall_ms.cmp(&b.wall_ms))
            .then(a.solver.cmp(&b.solver))
    });

    let mut lines = Vec::with_capacity(rows.len() + 1);
    let mut summary = Vec::with_capacity(rows.len());
    match asp_error {
        Some(base) => {
            lines.push(format!("{CSV_HEADER},regret"));
            for row in &rows {
                lines.push(format!("{},{}", row.csv(), row.error - base));
                summary.push(format!("{} (regret {})", row.human(), row.error - base));
            }
        }
        None => {
            lines.push(CSV_HEADER.to_string());
            for row in &rows {
                lines.push(row.csv());
                summary.push(row.human());
            }
        }
    }
    emit(&lines, &summary, &ctx.output)?;
    Ok(0)
}

const FIXPOINT_CACHE: &str = ".fa_fixpoint_cache.json";

fn space_digest(space: &SearchSpace) -> String {
    let spec = io::space_to_spec(space);
    let text = serde_json::to_string(&spec).expect("space specs serialize");
    let mut hasher = Sha256::new();
    hasher.update(text.as_bytes());
    hasher
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Fixpoint depth of a space's closure, memoized in a sidecar file keyed by
/// the space digest. Cache trouble is never fatal; the depth just recomputes.
fn cached_fixpoint_depth(space: &SearchSpace) -> Result<usize, FaError> {
    let digest = space_digest(space);
    let mut cache: HashMap<String, usize> = std::fs::read_to_string(FIXPOINT_CACHE)
        .ok()
        .and_then(|text| serde_json::from_str(&text).ok())
        .unwrap_or_default();
    if let Some(depth) = cache.get(&digest) {
        return Ok(*depth);
    }
    let depth = closure_fixpoint(space)?
        .fixpoint_depth
        .expect("finite carriers reach a fixpoint");
    cache.insert(digest, depth);
    if let Ok(text) = serde_json::to_string_pretty(&cache) {
        let _ = std::fs::write(FIXPOINT_CACHE, text);
    }
    Ok(depth)
}

/// All m^m total targets as sample sets, odometer order.
fn all_total_targets(m: u64) -> Vec<SampleSet> {
    let mut targets = Vec::new();
    let mut outputs = vec![0u64; m as usize];
    loop {
        targets.push(SampleSet::from_finite_table(m, &outputs).expect("total tables are valid targets"));
        let mut i = outputs.len();
        loop {
            if i == 0 {
                return targets;
            }
            i -= 1;
            if outputs[i] + 1 < m {
                outputs[i] += 1;
                for o in outputs[i + 1..].iter_mut() {
                    *o = 0;
                }
                break;
            }
        }
    }
}

pub fn theorem2(args: &Theorem2Args, ctx: &Context) -> Result<i32, FaError> {
    if !(args.k == 2 || args.k == 3) {
        return Err(FaError::config("k", "supported carrier sizes are 2 and 3"));
    }
    let name = format!("t{}-generators", args.k);
    let space = elementary_catalog(&name)?;
    let n = match args.n {
        Some(n) => n,
        None => cached_fixpoint_depth(&space)?,
    };
    let ceiling = budget_of(args.budget)?;
    let targets = all_total_targets(args.k);

    let zero_errors = |space: &SearchSpace| -> Result<usize, FaError> {
        let mut zeros = 0;
        for samples in &targets {
            let result = asp_solve(space, n, samples, Metric::zero_one(), ceiling)?;
            if result.error == 0.0 {
                zeros += 1;
            }
        }
        Ok(zeros)
    };

    let mut lines = vec!["space,removed,n,targets,zero_error,nonzero_error".to_string()];
    let mut summary = Vec::new();
    let total = targets.len();

    let full_zeros = zero_errors(&space)?;
    lines.push(format!("{name},-,{n},{total},{full_zeros},{}", total - full_zeros));
    summary.push(format!(
        "{name} at n = {n}: {full_zeros}/{total} targets at zero error"
    ));
    let mut ok = full_zeros == total;

    for i in 0..space.primitive_count() {
        let removed = space.primitive(i).id.clone();
        let ablated = space.without_primitive(i)?;
        let zeros = zero_errors(&ablated)?;
        let nonzero = total - zeros;
        lines.push(format!("{name},{removed},{n},{total},{zeros},{nonzero}"));
        summary.push(format!(
            "{name} without {removed}: {nonzero}/{total} targets stay above zero error"
        ));
        ok &= nonzero >= 1;
    }

    summary.push(if ok {
        "all expectations hold".to_string()
    } else {
        "EXPECTATIONS FAILED".to_string()
    });
    emit(&lines, &summary, &ctx.output)?;
    Ok(if ok { 0 } else { 1 })
}

pub fn nfl(args: &NflArgs, ctx: &Context) -> Result<i32, FaError> {
    if !(args.k == 2 || args.k == 3) {
        return Err(FaError::config("k", "supported carrier sizes are 2 and 3"));
    }
    let (space, _label) = match &args.space {
        Some(arg) => load_space_arg(arg)?,
        None => {
            let name = format!("t{}-generators", args.k);
            (elementary_catalog(&name)?, name)
        }
    };
    if space.carrier() != &fa_core::Carrier::finite(args.k)? {
        return Err(FaError::config("space", format!("space must live on Z_{}", args.k)));
    }
    let first = space.primitive(0).id.clone();
    let seq_a = match &args.seq_a {
        Some(text) => BoundSequence::parse(text, &space)?,
        None => BoundSequence::parse(&first, &space)?,
    };
    let seq_b = match &args.seq_b {
        Some(text) => BoundSequence::parse(text, &space)?,
        None => BoundSequence::parse(&format!("{first}·{first}"), &space)?,
    };

    let a = average_over_all_targets(&space, &seq_a)?;
    let b = average_over_all_targets(&space, &seq_b)?;
    let equal = a.disagreements == b.disagreements;

    let lines = vec![
        "k,sequence,disagreements,targets,points,mean".to_string(),
        format!(
            "{},{},{},{},{},{}",
            args.k,
            seq_a.render(&space),
            a.disagreements,
            a.targets,
            a.points,
            a.mean()
        ),
        format!(
            "{},{},{},{},{},{}",
            args.k,
            seq_b.render(&space),
            b.disagreements,
            b.targets,
            b.points,
            b.mean()
        ),
    ];
    let summary = vec![if equal {
        format!(
            "both sequences average {} over all {} targets",
            a.mean(),
            a.targets
        )
    } else {
        format!(
            "MEANS DIFFER: {} vs {} — the all-targets average is sequence-independent, so this signals a bug",
            a.mean(),
            b.mean()
        )
    }];
    emit(&lines, &summary, &ctx.output)?;
    Ok(if equal { 0 } else { 1 })
}

pub fn capacity(args: &CapacityArgs, ctx: &Context) -> Result<i32, FaError> {
    let (space, space_label) = load_space_arg(&args.space)?;
    let modes = usize::from(args.skeleton.is_some())
        + usize::from(args.potential)
        + usize::from(args.growth)
        + usize::from(args.vc);
    if modes != 1 {
        return Err(FaError::config(
            "capacity",
            "pick exactly one of --skeleton, --potential, --growth, --vc",
        ));
    }
    let ceiling = budget_of(args.budget)?;
    let grid = space.carrier().grid(io::DEFAULT_REAL_GRID);

    if let Some(text) = &args.skeleton {
        let skeleton = SequenceSkeleton::parse(text, &space)?;
        let report = fa_core::capacity::information_capacity(
            &space,
            &skeleton,
            args.collapsed,
            grid.as_deref(),
        )?;
        let factors = report
            .factor_sizes
            .iter()
            .map(|f| f.to_string())
            .collect::<Vec<_>>()
            .join("x");
        let lines = vec![
            "space,skeleton,collapsed,cardinality,factors".to_string(),
            format!(
                "{space_label},{text},{},{},{factors}",
                args.collapsed, report.cardinality
            ),
        ];
        let summary = vec![format!(
            "capacity of {text} on {space_label}: {} = {factors}{}",
            report.cardinality,
            if report.sampled { " (sampled grid)" } else { "" }
        )];
        emit(&lines, &summary, &ctx.output)?;
        return Ok(0);
    }

    if args.potential {
        let report = fa_core::capacity::information_potential(
            &space,
            args.n,
            args.collapsed,
            grid.as_deref(),
            ceiling,
        )?;
        let lines = vec![
            "space,n,collapsed,cardinality,sampled".to_string(),
            format!(
                "{space_label},{},{},{},{}",
                args.n, args.collapsed, report.cardinality, report.sampled
            ),
        ];
        let summary = vec![format!(
            "potential of {space_label} at n = {}: {} distinct traces",
            args.n, report.cardinality
        )];
        emit(&lines, &summary, &ctx.output)?;
        return Ok(0);
    }

    if args.growth {
        let report = fa_core::capacity::potential_growth(&space, args.n, ceiling)?;
        let mut lines = vec!["space,n,tables,saturated_at".to_string()];
        let saturated = report
            .saturated_at
            .map(|d| d.to_string())
            .unwrap_or_else(|| "-".to_string());
        for (i, count) in report.cardinalities.iter().enumerate() {
            lines.push(format!("{space_label},{},{count},{saturated}", i + 1));
        }
        let summary = vec![match report.saturated_at {
            Some(d) => format!(
                "growth of {space_label} saturates at n = {d} with {} tables",
                report.cardinalities.last().unwrap()
            ),
            None => format!(
                "growth of {space_label} still rising at n = {}: {} tables",
                args.n,
                report.cardinalities.last().unwrap()
            ),
        }];
        emit(&lines, &summary, &ctx.output)?;
        return Ok(0);
    }

    // --vc
    let points: Vec<u64> = match &args.points {
        Some(text) => text
            .split(',')
            .map(|t| {
                t.trim().parse().map_err(|_| {
                    FaError::config("points", format!("`{t}` is not a carrier point"))
                })
            })
            .collect::<Result<_, _>>()?,
        None => match space.carrier() {
            fa_core::Carrier::Finite { m } => (0..*m).collect(),
            fa_core::Carrier::Real { .. } => {
                return Err(FaError::UnsupportedOnReal("VC dimension"))
            }
        },
    };
    let max_d = args.max_d.unwrap_or(points.len());
    let report = vc_dimension(&space, args.n, &points, max_d)?;
    let witness_points = report
        .witness
        .as_ref()
        .map(|w| {
            w.points
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .unwrap_or_else(|| "-".to_string());
    let lines = vec![
        "space,n,dimension,dichotomies,witness_points".to_string(),
        format!(
            "{space_label},{},{},{},{witness_points}",
            args.n, report.dimension, report.dichotomy_count
        ),
    ];
    let summary = vec![format!(
        "VC dimension of {space_label} at n = {}: {} ({} dichotomies)",
        args.n, report.dimension, report.dichotomy_count
    )];
    emit(&lines, &summary, &ctx.output)?;
    Ok(0)
}
