use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use ivqrof::critic::DistanceMode;
use ivqrof::io::{parse_problem, ranking_line, report_to_json, sweep_series_csv, ResultFile};
use ivqrof::numeric::fixed;
use ivqrof::pipeline::{parse_axis, solve, sweep, GroupProblem, Params, RankingResult, SensitivityReport, SweepAxes};
use ivqrof::{Error, IvqRofn};

#[derive(Parser)]
#[command(
    name = "ivqrof",
    version,
    about = "Group decision making with interval-valued q-rung orthopair fuzzy numbers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rank the alternatives of a problem file.
    Solve(SolveArgs),
    /// Re-solve over a grid of parameter values.
    Sweep(SweepArgs),
    /// Check a problem file without solving it.
    Validate {
        /// Problem file (TOML).
        input: PathBuf,
    },
}

#[derive(Args)]
struct SolveArgs {
    /// Problem file (TOML).
    input: PathBuf,
    /// Write the full result as JSON.
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long)]
    q: Option<f64>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    /// WASPAS blend: 1 is the weighted sum, 0 the weighted product.
    #[arg(long)]
    lambda: Option<f64>,
    /// Ideal blend used by the cis distance mode.
    #[arg(long)]
    theta: Option<f64>,
    /// nis, pis or cis.
    #[arg(long)]
    mode: Option<DistanceMode>,
    /// Also print the audit log and the CRITIC intermediates.
    #[arg(short, long)]
    verbose: bool,
}

/// Axes take `3`, `2,3,5`, `2..5` or `0.05..0.95:0.05`.
#[derive(Args)]
struct SweepArgs {
    /// Problem file (TOML).
    input: PathBuf,
    /// Write the sensitivity report as JSON.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Write one CSV row per grid point and alternative.
    #[arg(long)]
    series: Option<PathBuf>,
    #[arg(long)]
    q: Option<String>,
    #[arg(long)]
    p: Option<String>,
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    lambda: Option<String>,
    #[arg(long)]
    theta: Option<String>,
    /// Comma-separated distance modes.
    #[arg(long, value_delimiter = ',')]
    mode: Vec<DistanceMode>,
}

enum Failure {
    Input(String),
    Numeric(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_numeric() {
            Failure::Numeric(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let run = match cli.command {
        Command::Solve(a) => run_solve(a),
        Command::Sweep(a) => run_sweep(a),
        Command::Validate { input } => run_validate(&input),
    };
    match run {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Numeric(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}

fn load(path: &Path) -> Result<GroupProblem, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_problem(&text).map_err(|e| Failure::from(e.context(&path.display().to_string())))
}

/// Writes every file or none: contents go to temporaries first, then are
/// renamed into place.
fn write_all(files: &[(&Path, String)]) -> Result<(), Failure> {
    let io = |p: &Path, e: std::io::Error| Failure::Input(format!("{}: {e}", p.display()));
    let mut staged = Vec::new();
    for (path, text) in files {
        let mut tmp = path.as_os_str().to_owned();
        tmp.push(".partial");
        let tmp = PathBuf::from(tmp);
        if let Err(e) = fs::write(&tmp, text) {
            for (t, _) in &staged {
                let _ = fs::remove_file(t);
            }
            return Err(io(path, e));
        }
        staged.push((tmp, *path));
    }
    for (tmp, path) in &staged {
        fs::rename(tmp, path).map_err(|e| io(path, e))?;
    }
    Ok(())
}

fn run_validate(input: &Path) -> Result<String, Failure> {
    let p = load(input)?;
    Ok(format!(
        "{}: ok ({} experts, {} alternatives, {} attributes, smallest valid integer rung {}, using q = {})\n",
        input.display(),
        p.experts().len(),
        p.alternatives().len(),
        p.attributes().len(),
        p.inferred_q(),
        p.effective_q()
    ))
}

fn run_solve(a: SolveArgs) -> Result<String, Failure> {
    let problem = load(&a.input)?;
    let base = *problem.params();
    let params = Params {
        q: a.q.or(base.q),
        p: a.p.unwrap_or(base.p),
        alpha: a.alpha.unwrap_or(base.alpha),
        lambda: a.lambda.unwrap_or(base.lambda),
        theta: a.theta.unwrap_or(base.theta),
        distance_mode: a.mode.unwrap_or(base.distance_mode),
        ..base
    };
    let problem = problem.with_params(params)?;
    let result = solve(&problem)?;
    let text = render_result(&problem, &result, a.verbose);
    if let Some(out) = &a.output {
        let json = ResultFile::new(&problem, result).to_json()?;
        write_all(&[(out, json)])?;
    }
    Ok(text)
}

fn axis(s: &Option<String>) -> Result<Vec<f64>, Failure> {
    Ok(match s {
        Some(s) => parse_axis(s)?,
        None => Vec::new(),
    })
}

fn run_sweep(a: SweepArgs) -> Result<String, Failure> {
    let problem = load(&a.input)?;
    let axes = SweepAxes {
        q: axis(&a.q)?,
        p: axis(&a.p)?,
        alpha: axis(&a.alpha)?,
        lambda: axis(&a.lambda)?,
        theta: axis(&a.theta)?,
        mode: a.mode,
    };
    let report = sweep(&problem, &axes)?;
    let text = render_sweep(&problem, &report);
    let mut files = Vec::new();
    if let Some(out) = &a.output {
        files.push((out.as_path(), report_to_json(&report)?));
    }
    if let Some(series) = &a.series {
        files.push((series.as_path(), sweep_series_csv(&report, problem.alternatives())));
    }
    write_all(&files)?;
    Ok(text)
}

fn num(a: &IvqRofn, d: u32) -> String {
    let [ul, uh, vl, vh] = a.to_array().map(|x| fixed(x, d));
    format!("<[{ul}, {uh}], [{vl}, {vh}]>")
}

fn table(out: &mut String, title: &str, head: &[String], rows: Vec<(String, Vec<String>)>) {
    let label = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
    let mut width: Vec<usize> = head.iter().map(String::len).collect();
    for (_, cells) in &rows {
        for (w, c) in width.iter_mut().zip(cells) {
            *w = (*w).max(c.len());
        }
    }
    let _ = writeln!(out, "\n{title}");
    let _ = write!(out, "  {:label$}", "");
    for (h, w) in head.iter().zip(&width) {
        let _ = write!(out, "  {h:>w$}");
    }
    out.push('\n');
    for (name, cells) in rows {
        let _ = write!(out, "  {name:label$}");
        for (c, w) in cells.iter().zip(&width) {
            let _ = write!(out, "  {c:>w$}");
        }
        out.push('\n');
    }
}

fn render_result(problem: &GroupProblem, r: &RankingResult, verbose: bool) -> String {
    let alts = problem.alternatives();
    let attrs: Vec<String> = problem.attributes().iter().map(|a| a.name.clone()).collect();
    let experts: Vec<String> = problem.experts().iter().map(|e| e.name.clone()).collect();
    let mut out = String::new();
    let pr = &r.params;
    let _ = writeln!(
        out,
        "q = {} (smallest valid integer rung {}), p = {}, alpha = {}, lambda = {}, theta = {}, mode = {}",
        r.q, r.inferred_q, pr.p, pr.alpha, pr.lambda, pr.theta, pr.distance_mode
    );
    table(
        &mut out,
        "Expert weights per alternative",
        &experts,
        alts.iter()
            .zip(r.dm_weights.lambda.rows())
            .map(|(n, row)| (n.clone(), row.iter().map(|x| fixed(*x, 4)).collect()))
            .collect(),
    );
    table(
        &mut out,
        "Aggregated matrix",
        &attrs,
        alts.iter()
            .zip(r.aggregated.cells())
            .map(|(n, row)| (n.clone(), row.iter().map(|a| num(a, 3)).collect()))
            .collect(),
    );
    if verbose {
        let c = &r.critic;
        table(
            &mut out,
            "Standardized matrix",
            &attrs,
            alts.iter()
                .zip(c.standardized.cells())
                .map(|(n, row)| (n.clone(), row.iter().map(|a| num(a, 3)).collect()))
                .collect(),
        );
        table(
            &mut out,
            "Correlations",
            &attrs,
            attrs
                .iter()
                .zip(&c.correlations)
                .map(|(n, row)| (n.clone(), row.iter().map(|a| num(a, 3)).collect()))
                .collect(),
        );
        table(
            &mut out,
            "Column statistics",
            &["mean".into(), "stddev".into(), "index".into()],
            (0..attrs.len())
                .map(|j| (attrs[j].clone(), vec![num(&c.means[j], 3), num(&c.stddevs[j], 3), num(&c.indices[j], 3)]))
                .collect(),
        );
    }
    table(
        &mut out,
        "Attribute weights",
        &["interval weight".into(), "distance".into(), "weight".into()],
        (0..attrs.len())
            .map(|j| {
                (
                    attrs[j].clone(),
                    vec![num(&r.critic.weights[j], 3), fixed(r.distances[j], 3), fixed(r.weights.as_slice()[j], 5)],
                )
            })
            .collect(),
    );
    table(
        &mut out,
        "Alternatives",
        &["weighted sum".into(), "weighted product".into(), "interval value".into(), "score".into()],
        (0..alts.len())
            .map(|i| {
                (
                    alts[i].clone(),
                    vec![num(&r.wsm[i], 3), num(&r.wpm[i], 3), num(&r.interval_scores[i], 3), fixed(r.scores[i], 5)],
                )
            })
            .collect(),
    );
    let _ = writeln!(out, "\nRanking: {}", ranking_line(alts, &r.scores, &r.ranking));
    let events = r.audit.events();
    if verbose {
        let _ = writeln!(out, "\nAudit ({} events)", events.len());
        for e in events {
            let _ = writeln!(out, "  {e}");
        }
    } else if !events.is_empty() {
        let _ = writeln!(out, "{} audit events (use --verbose to list them)", events.len());
    }
    out
}

fn render_sweep(problem: &GroupProblem, rep: &SensitivityReport) -> String {
    let alts = problem.alternatives();
    let rows = rep
        .points
        .iter()
        .map(|pr| {
            let pt = &pr.point;
            let mut cells = vec![
                pt.q.to_string(),
                pt.p.to_string(),
                pt.alpha.to_string(),
                pt.lambda.to_string(),
                pt.theta.to_string(),
                pt.mode.to_string(),
            ];
            cells.extend(pr.scores.iter().map(|s| fixed(*s, 5)));
            cells.push(ranking_line(alts, &pr.scores, &pr.ranking));
            (String::new(), cells)
        })
        .collect();
    let mut head: Vec<String> = ["q", "p", "alpha", "lambda", "theta", "mode"].map(String::from).to_vec();
    head.extend(alts.iter().cloned());
    head.push("ranking".into());
    let mut out = String::new();
    table(&mut out, &format!("{} grid points", rep.points.len()), &head, rows);
    match rep.first_divergence {
        None => {
            let _ = writeln!(out, "\nRanking unchanged across all points");
        }
        Some(k) => {
            let _ = writeln!(out, "\nRanking first changes at point {}", k + 1);
        }
    }
    out
}
