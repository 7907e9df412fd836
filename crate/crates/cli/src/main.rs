use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dealab::io::{load_dataset, CellKind};
use dealab::models::evaluate_point;
use dealab::ppslab::{axiom_closure, corollary_witness, lemma_gap, membership_real_vrs, AxiomOrder};
use dealab::{BoundingBox, Dataset, Point};
use dealab_cli::plot::{self, Overlay, PlotOptions};
use dealab_cli::scenario::{box_from_limits, builtin, builtin_names, parse_model, Scenario};
use dealab_cli::{format, CliError, CliResult, Report};
use serde_json::json;

#[derive(Parser)]
#[command(name = "dealab", version, about = "Exact DEA models and integer production possibility sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Efficiency of one DMU.
    Solve {
        #[arg(long, value_enum)]
        model: Model,
        #[arg(long)]
        dmu: String,
        /// Returns to scale for LVM/KKM (crs or vrs).
        #[arg(long)]
        rts: Option<String>,
        /// Also list integer technology points dominating the DMU.
        #[arg(long)]
        dominators: bool,
        #[arg(long, value_parser = parse_limits)]
        r#box: Option<Limits>,
        file: PathBuf,
    },
    /// Integer production possibility set analysis.
    Pps {
        #[arg(value_enum)]
        query: PpsQuery,
        /// Box limits, inputs then outputs, e.g. `5,9`.
        #[arg(long, value_parser = parse_limits)]
        r#box: Option<Limits>,
        /// Iterate the axioms to a fixpoint (closure and gap).
        #[arg(long)]
        fixpoint: bool,
        /// Candidate for `member`, e.g. `4;6`.
        #[arg(long)]
        point: Option<String>,
        file: PathBuf,
    },
    /// Run a built-in or file-based scenario and check its assertions.
    Paper {
        /// Built-in name, or `all`.
        #[arg(long, required_unless_present_any = ["scenario_file", "list"])]
        scenario: Option<String>,
        #[arg(long, conflicts_with = "scenario")]
        scenario_file: Option<PathBuf>,
        /// Directory for `<name>.json` and `<name>.svg`.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        list: bool,
    },
    /// SVG scatter plot of one input against one output.
    Plot {
        #[arg(long)]
        overlay: Overlay,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_parser = parse_limits)]
        r#box: Option<Limits>,
        #[arg(long)]
        fixpoint: bool,
        /// Columns to plot from wider data, e.g. `x2,y1`.
        #[arg(long, value_parser = parse_projection)]
        project: Option<(usize, usize)>,
        file: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Ccr,
    Vrs,
    Lvm,
    Kkm,
    Additive,
}

#[derive(Clone, Copy, ValueEnum)]
enum PpsQuery {
    Closure,
    Gap,
    Member,
}

/// Box limits, inputs then outputs.
#[derive(Clone)]
struct Limits(Vec<u64>);

fn parse_limits(text: &str) -> Result<Limits, String> {
    text.split(',')
        .map(|v| v.trim().parse::<u64>().map_err(|e| format!("bad box limit `{v}`: {e}")))
        .collect::<Result<_, _>>()
        .map(Limits)
}

fn parse_projection(text: &str) -> Result<(usize, usize), String> {
    let (x, y) = text.split_once(',').ok_or("expected `xI,yJ`")?;
    let index = |s: &str, prefix: char| -> Result<usize, String> {
        s.trim()
            .strip_prefix(prefix)
            .and_then(|n| n.parse::<usize>().ok())
            .filter(|&n| n >= 1)
            .map(|n| n - 1)
            .ok_or_else(|| format!("bad column `{s}`"))
    };
    Ok((index(x, 'x')?, index(y, 'y')?))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}

fn load(file: &Path, integer: bool) -> CliResult<Dataset> {
    let kind = if integer { CellKind::Integer } else { CellKind::Real };
    Ok(load_dataset(file, kind)?)
}

fn working_box(data: &Dataset, limits: Option<&[u64]>) -> CliResult<BoundingBox> {
    match limits {
        Some(l) => box_from_limits(data, l),
        None => Ok(BoundingBox::covering(data)?),
    }
}

fn warn_zero_inputs(data: &Dataset, report: &mut Report) {
    let zero = data.zero_input_dmus();
    if !zero.is_empty() {
        report
            .warnings
            .push(format!("zero inputs (radial contraction is vacuous there): {}", zero.join(", ")));
    }
}

fn run(command: Command) -> CliResult<()> {
    match command {
        Command::Solve { model, dmu, rts, dominators, r#box, file } => {
            let name = match model {
                Model::Ccr => "ccr",
                Model::Vrs => "vrs",
                Model::Lvm => "lvm",
                Model::Kkm => "kkm",
                Model::Additive => "additive",
            };
            let spec = parse_model(name, rts.as_deref())?;
            let data = load(&file, spec.is_integer())?;
            let point = data.get(&dmu)?.point();
            let mut result = evaluate_point(&data, spec, &dmu, &point)?;
            if dominators {
                let bbox = working_box(&data, r#box.as_ref().map(|l| l.0.as_slice()))?;
                result = result.with_dominators(&data, &bbox)?;
            }
            let mut report = Report::new("solve");
            warn_zero_inputs(&data, &mut report);
            report.results.push(format::efficiency(&result));
            print!("{}", report.to_json());
            Ok(())
        }
        Command::Pps { query, r#box, fixpoint, point, file } => {
            let data = load(&file, true)?;
            let bbox = working_box(&data, r#box.as_ref().map(|l| l.0.as_slice()))?;
            let order = if fixpoint { AxiomOrder::fixpoint() } else { AxiomOrder::single_pass() };
            let result = match query {
                PpsQuery::Closure => {
                    let state = axiom_closure(&data, &bbox, &order)?;
                    json!({
                        "query": "closure",
                        "fixpoint": fixpoint,
                        "points": format::point_labels(&state.points),
                        "generations": state.generation,
                        "log": format::closure_log(&state),
                    })
                }
                PpsQuery::Gap => {
                    let gap = if fixpoint {
                        dealab::ppslab::lemma_gap_with(&data, &bbox, &order)?
                    } else {
                        lemma_gap(&data, &bbox)?
                    };
                    json!({"query": "gap", "fixpoint": fixpoint, "points": format::point_labels(&gap)})
                }
                PpsQuery::Member => {
                    let text = point.ok_or_else(|| CliError::Input("member needs --point".into()))?;
                    let candidate: Point = text.parse()?;
                    let real = membership_real_vrs(&data, &candidate)?;
                    let witness = corollary_witness(&data, &candidate, &bbox)?;
                    json!({
                        "query": "member",
                        "point": candidate.to_string(),
                        "real_vrs": real.is_some(),
                        "lambda": real.as_deref().map(format::fractions),
                        "integer_generators": witness.as_ref().map(|w| {
                            w.generators.iter().map(|(n, p)| format!("{n}:{p}")).collect::<Vec<_>>()
                        }),
                        "integer_weights": witness.as_ref().map(|w| format::fractions(&w.weights)),
                    })
                }
            };
            let mut report = Report::new("pps");
            report.results.push(result);
            print!("{}", report.to_json());
            Ok(())
        }
        Command::Paper { scenario, scenario_file, out, list } => {
            if list {
                for name in builtin_names() {
                    println!("{name}");
                }
                return Ok(());
            }
            let scenarios = match (scenario.as_deref(), scenario_file) {
                (_, Some(path)) => vec![Scenario::from_file(&path)?],
                (Some("all"), None) => builtin_names().into_iter().map(builtin).collect::<CliResult<_>>()?,
                (Some(name), None) => vec![builtin(name)?],
                (None, None) => unreachable!("clap requires one of them"),
            };
            let mut failed = 0;
            for scenario in &scenarios {
                let report = scenario.run()?;
                failed += report.failed();
                print!("{}", report.to_json());
                if let Some(dir) = &out {
                    std::fs::create_dir_all(dir)?;
                    std::fs::write(dir.join(format!("{}.json", scenario.name)), report.to_json())?;
                    if let Some(overlay) = scenario.plot {
                        let ws = scenario.workspace()?;
                        let options = PlotOptions {
                            bbox: Some(ws.bbox.clone()),
                            ..PlotOptions::default()
                        };
                        let options = if ws.data.input_count() == 1 && ws.data.output_count() == 1 {
                            options
                        } else {
                            PlotOptions { bbox: None, projection: Some((0, 0)), ..options }
                        };
                        let svg = plot::render(&ws.data, overlay, &options)?;
                        std::fs::write(dir.join(format!("{}.svg", scenario.name)), svg)?;
                    }
                }
            }
            if failed > 0 {
                return Err(CliError::AssertionsFailed { failed });
            }
            Ok(())
        }
        Command::Plot { overlay, out, r#box, fixpoint, project, file } => {
            let data = load(&file, true)?;
            let bbox = match (&r#box, project) {
                (Some(l), None) => Some(box_from_limits(&data, &l.0)?),
                _ => None,
            };
            let svg = plot::render(&data, overlay, &PlotOptions { bbox, fixpoint, projection: project })?;
            std::fs::write(&out, svg)?;
            Ok(())
        }
    }
}
