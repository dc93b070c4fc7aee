//! Command-line front end. Session files are passed by path, so every
//! command except `serve` works without a running service.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::aggregation::{format_survey_csv, parse_survey_csv, AgreementLevel, CellMap, SurveyResponse};
use crate::error::{Error, ErrorKind, Result};
use crate::grid::{catalog_default_constructs, catalog_default_elements, Construct, Element, Rating};
use crate::report::{
    parse_distribution, parse_dollars, parse_levels, recommendation_report, report_csv, ReportOptions,
    DEFAULT_HEATMAP_BINS,
};
use crate::service::{ServiceConfig, DEFAULT_PORT};
use crate::session::{Phase, Session};
use crate::store::{load_file, save_file, update_file};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_IO: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "repgrid", version, about = "Repertory-grid decision support for exploratory testing levels")]
pub struct Cli {
    /// Actor recorded in the audit log
    #[arg(long, global = true, env = "REPGRID_ACTOR", default_value = "cli")]
    actor: String,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Create a session file with the built-in (or a custom) catalog
    New {
        session: PathBuf,
        /// JSON file with optional "elements" and "constructs" arrays
        #[arg(long)]
        catalog: Option<PathBuf>,
        /// Overwrite an existing file
        #[arg(long)]
        force: bool,
    },
    /// Move the session to another phase (SETUP, SURVEY, CONSENSUS,
    /// PRIORITIZATION, RECOMMENDATION, CLOSED)
    Phase { session: PathBuf, phase: String },
    /// Print an empty survey sheet for respondents to fill in
    SurveyTemplate { session: PathBuf },
    /// Import one respondent's survey CSV
    ImportSurvey {
        session: PathBuf,
        csv: PathBuf,
        #[arg(long)]
        respondent: String,
    },
    /// Print the agreement matrix with FULL / GOOD_MEDIUM / LOW markers
    Agreement { session: PathBuf },
    /// Record the consensus rating (1-3) for one cell
    Consensus {
        session: PathBuf,
        construct: String,
        element: String,
        value: i64,
        #[arg(long, default_value = "")]
        rationale: String,
    },
    /// Allocate the 100 dollars, e.g. `C11=20 C12=20 C16=20 ...`
    Priorities {
        session: PathBuf,
        #[arg(required = true)]
        dollars: Vec<String>,
    },
    /// Store the current distribution of testing time, e.g. `FREESTYLE=5 HIGH=15 ...`
    Current {
        session: PathBuf,
        #[arg(required = true)]
        percentages: Vec<String>,
    },
    /// Print the recommended distribution, comparison and top contributions
    Recommend {
        session: PathBuf,
        /// Current distribution to compare against, e.g. `FREESTYLE=5,HIGH=15,...`
        #[arg(long)]
        current: Option<String>,
        /// Elements counted as exploratory, comma separated
        #[arg(long, default_value = "FREESTYLE,HIGH")]
        exploratory_levels: String,
        /// Number of top contributing cells to list
        #[arg(long, default_value_t = 5)]
        top: usize,
    },
    /// Export the heat-map report (csv) or the full recommendation report (json)
    Export {
        session: PathBuf,
        #[arg(long, value_enum)]
        format: ExportFormat,
        /// Write to a file instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Start the HTTP service
    Serve {
        #[arg(long, env = "REPGRID_PORT", default_value_t = DEFAULT_PORT)]
        port: u16,
        #[arg(long, env = "REPGRID_DATA_DIR", default_value = "sessions")]
        data_dir: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ExportFormat {
    Csv,
    Json,
}

pub fn exit_code(err: &Error) -> i32 {
    match err.kind() {
        ErrorKind::Io | ErrorKind::Document => EXIT_IO,
        _ => EXIT_VALIDATION,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_VALIDATION } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            for line in e.messages() {
                let _ = writeln!(err, "error: {line}");
            }
            exit_code(&e)
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CatalogFile {
    elements: Option<Vec<Element>>,
    constructs: Option<Vec<Construct>>,
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<()> {
    let actor = cli.actor.as_str();
    match cli.command {
        Command::New {
            session,
            catalog,
            force,
        } => {
            if session.exists() && !force {
                return Err(Error::invalid(format!(
                    "{} already exists (use --force to overwrite)",
                    session.display()
                )));
            }
            let (elements, constructs) = match catalog {
                Some(path) => {
                    let text = std::fs::read_to_string(path)?;
                    let cat: CatalogFile = serde_json::from_str(&text).map_err(|e| Error::from_json(&e))?;
                    (
                        cat.elements.unwrap_or_else(catalog_default_elements),
                        cat.constructs.unwrap_or_else(catalog_default_constructs),
                    )
                }
                None => (catalog_default_elements(), catalog_default_constructs()),
            };
            let s = Session::create(elements, constructs, actor)?;
            save_file(&session, &s)?;
            writeln!(
                out,
                "created {} ({} elements, {} constructs)",
                session.display(),
                s.elements().len(),
                s.constructs().len()
            )?;
        }
        Command::Phase { session, phase } => {
            let target: Phase = phase.parse()?;
            update_file(&session, |s| s.advance_phase(target, actor))?;
            writeln!(out, "phase {target}")?;
        }
        Command::SurveyTemplate { session } => {
            let s = load_file(&session)?;
            out.write_all(format_survey_csv(&CellMap::new(), s.elements(), s.constructs()).as_bytes())?;
        }
        Command::ImportSurvey {
            session,
            csv,
            respondent,
        } => {
            let text = std::fs::read_to_string(&csv)?;
            let count = update_file(&session, |s| {
                let cells = parse_survey_csv(&text, s.elements(), s.constructs())?;
                s.submit_survey(SurveyResponse::new(respondent.clone(), cells), actor)?;
                Ok(s.responses().len())
            })?;
            writeln!(out, "imported survey from {respondent} ({count} respondents)")?;
        }
        Command::Agreement { session } => {
            let s = load_file(&session)?;
            out.write_all(render_agreement(&s)?.as_bytes())?;
        }
        Command::Consensus {
            session,
            construct,
            element,
            value,
            rationale,
        } => {
            let rating = Rating::new(value)?;
            let level = update_file(&session, |s| {
                s.record_consensus(&construct, &element, rating, &rationale, actor)?;
                Ok(s.consensus_cell(&construct, &element).map(|c| c.resolved_from))
            })?;
            let level = level.unwrap_or(AgreementLevel::NoData);
            writeln!(out, "consensus ({construct}, {element}) = {rating} [was {level}]")?;
        }
        Command::Priorities { session, dollars } => {
            let dollars = parse_dollars(&dollars)?;
            let n = update_file(&session, |s| Ok(s.set_priorities(dollars, actor)?.prioritized().count()))?;
            writeln!(out, "priorities set ({n} prioritized constructs)")?;
        }
        Command::Current {
            session,
            percentages,
        } => {
            let dist = parse_distribution(&percentages)?;
            update_file(&session, |s| s.set_current_distribution(dist, actor))?;
            writeln!(out, "current distribution set")?;
        }
        Command::Recommend {
            session,
            current,
            exploratory_levels,
            top,
        } => {
            let s = load_file(&session)?;
            let options = ReportOptions {
                current: current.map(|c| parse_distribution(&[c])).transpose()?,
                exploratory_levels: parse_levels(&exploratory_levels),
                ..ReportOptions::default()
            };
            out.write_all(render_recommendation(&s, &options, top)?.as_bytes())?;
        }
        Command::Export {
            session,
            format,
            output,
        } => {
            let s = load_file(&session)?;
            let text = match format {
                ExportFormat::Csv => report_csv(&s)?,
                ExportFormat::Json => {
                    let report = recommendation_report(&s, &ReportOptions::default())?;
                    let mut t = serde_json::to_string_pretty(&report).expect("serializable");
                    t.push('\n');
                    t
                }
            };
            write_output(output.as_deref(), &text, out)?;
        }
        Command::Serve { port, data_dir } => {
            let runtime = tokio::runtime::Runtime::new()?;
            writeln!(out, "serving {} on port {port}", data_dir.display())?;
            runtime.block_on(crate::service::serve(ServiceConfig { port, data_dir }))?;
        }
    }
    Ok(())
}

fn write_output(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn render_agreement(s: &Session) -> Result<String> {
    let matrix = s.agreement()?;
    let width = s.elements().iter().map(|e| e.id.len()).max().unwrap_or(0).max(19);
    let cwidth = s.constructs().iter().map(|c| c.id.len()).max().unwrap_or(0).max(9);
    let mut t = String::new();
    let _ = write!(t, "{:<cwidth$}", "construct");
    for e in s.elements() {
        let _ = write!(t, "  {:<width$}", e.id);
    }
    t.push('\n');
    for c in s.constructs() {
        let _ = write!(t, "{:<cwidth$}", c.id);
        for e in s.elements() {
            let cell = matrix.get(&c.id, &e.id).expect("matrix covers every cell");
            let h = cell.histogram;
            let text = format!("{} {}/{}/{}", cell.level, h.negative, h.neutral, h.positive);
            let _ = write!(t, "  {text:<width$}");
        }
        t.push('\n');
    }
    let _ = writeln!(
        t,
        "respondents: {}  FULL: {}  GOOD_MEDIUM: {}  LOW: {}  NO_DATA: {}  (counts shown as 1/2/3)",
        matrix.respondents,
        matrix.count(AgreementLevel::Full),
        matrix.count(AgreementLevel::GoodMedium),
        matrix.count(AgreementLevel::Low),
        matrix.count(AgreementLevel::NoData),
    );
    Ok(t)
}

fn render_recommendation(s: &Session, options: &ReportOptions, top: usize) -> Result<String> {
    let report = recommendation_report(s, options)?;
    let width = s.elements().iter().map(|e| e.id.len()).max().unwrap_or(0) + 2;
    let mut t = String::new();
    for (e, pct) in &report.display_percentages {
        let score = report.recommendation.scores[e.as_str()];
        let _ = writeln!(t, "{e:<width$}{pct:>5.1}%  (score {score})");
    }
    if let Some(cmp) = &report.comparison {
        t.push('\n');
        for (e, d) in &cmp.deltas {
            let _ = writeln!(t, "delta {e:<width$}{d:>+6.1} points");
        }
        let _ = writeln!(
            t,
            "exploratory share ({}): recommended {:.1}%, current {:.1}%, {:+.1} points",
            cmp.exploratory_levels.join(","),
            cmp.recommended_share,
            cmp.current_share,
            cmp.share_delta
        );
    }
    if top > 0 {
        t.push_str("\ntop contributions:\n");
        let top_bin = report.heatmap.n_bins - 1;
        for (key, value) in report.contributions.top_cells(top) {
            let hot = if report.heatmap.bin(&key.construct, &key.element) == Some(top_bin) {
                " *"
            } else {
                ""
            };
            let _ = writeln!(t, "  {key} {value}{hot}");
        }
        let _ = writeln!(t, "(* = top of {DEFAULT_HEATMAP_BINS} heat-map bins)");
    }
    Ok(t)
}
