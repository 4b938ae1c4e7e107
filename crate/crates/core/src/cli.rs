//! The `phase` command-line front end.
//!
//! Exit status: 0 success, 1 findings over a requested threshold, 2 parse or
//! validation errors, 3 usage or I/O errors. When several apply the highest
//! wins. Diagnostics and usage go to stderr; stdout only carries the
//! requested artifact. Output is never styled, so `NO_COLOR` has nothing to
//! turn off.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read, Write};

use clap::{ArgGroup, ColorChoice, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::analysis::{self, Analyses, Cell, CellCounts, CoverageMatrix};
use crate::diagnostic::Diagnostic;
use crate::diff::{diff, impact, ChangeSet, ImpactReport};
use crate::dsl;
use crate::export::{self, RenderOptions};
use crate::model::{Model, ReferenceError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ExitStatus {
    Success = 0,
    Findings = 1,
    Invalid = 2,
    Usage = 3,
}

impl ExitStatus {
    pub fn code(self) -> u8 {
        self as u8
    }
}

#[derive(Debug, Parser)]
#[command(name = "phase", version, about = "Check, analyse and render PHASE hazard analysis models", color = ColorChoice::Never)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse and validate a model; diagnostics go to stderr.
    Check {
        /// Model file, or `-` for stdin.
        file: String,
        /// Exit 1 when there are warnings.
        #[arg(long)]
        strict: bool,
    },
    /// Control action by guide type coverage matrix.
    Coverage {
        file: String,
        #[arg(long)]
        boundary: Option<String>,
        #[arg(long, value_enum, default_value_t = CoverageFormat::Table)]
        format: CoverageFormat,
        /// Exit 1 when the covered-or-waived share of cells is below this.
        #[arg(long, value_name = "RATIO", value_parser = parse_ratio)]
        fail_under: Option<f64>,
    },
    /// Trace a loss down to requirements, or list what a node controls.
    #[command(group(ArgGroup::new("target").required(true).args(["loss", "node"])))]
    Trace {
        file: String,
        #[arg(long)]
        loss: Option<String>,
        #[arg(long)]
        node: Option<String>,
    },
    /// Advisory structural hints. Never fails on findings.
    Hints { file: String },
    /// Control diagram in the dot language.
    Render {
        file: String,
        /// Output path, or `-` for stdout.
        #[arg(short, long)]
        output: String,
        #[arg(long)]
        boundary: Option<String>,
        /// Leave io-link edges out of the diagram.
        #[arg(long)]
        no_iolinks: bool,
    },
    /// Full report. Written even when validation fails.
    Report {
        file: String,
        #[arg(long, value_enum)]
        format: ReportFormat,
        /// Output path; stdout when omitted or `-`.
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Compare two versions of a model by element id.
    Diff {
        old: String,
        new: String,
        /// Also list what the changes affect in the new version.
        #[arg(long)]
        impact: bool,
        #[arg(long, value_enum, default_value_t = DiffFormat::Text)]
        format: DiffFormat,
        /// Exit 1 when the versions differ.
        #[arg(long)]
        fail_on_change: bool,
    },
    /// Print the canonical form of a model. Comments are not preserved.
    Fmt {
        file: String,
        /// Rewrite the file in place.
        #[arg(long, conflicts_with = "check")]
        write: bool,
        /// Exit 1 when the file is not already canonical.
        #[arg(long)]
        check: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CoverageFormat {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Md,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DiffFormat {
    Text,
    Json,
}

fn parse_ratio(text: &str) -> Result<f64, String> {
    let value: f64 = text.parse().map_err(|_| format!("`{text}` is not a number"))?;
    if (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(format!("{value} is outside 0..=1"))
    }
}

#[derive(Debug, Error)]
enum CliError {
    #[error("cannot read `{path}`: {source}")]
    Read { path: String, source: io::Error },
    #[error("cannot write `{path}`: {source}")]
    Write { path: String, source: io::Error },
    #[error(transparent)]
    Unknown(#[from] ReferenceError),
}

const STDIN_NAME: &str = "<stdin>";

struct Io<'a, R, W, E> {
    stdin: &'a mut R,
    stdout: &'a mut W,
    stderr: &'a mut E,
}

impl<R: Read, W: Write, E: Write> Io<'_, R, W, E> {
    fn read(&mut self, path: &str) -> Result<String, CliError> {
        let read_error = |source| CliError::Read {
            path: path.to_string(),
            source,
        };
        if path == "-" {
            let mut text = String::new();
            self.stdin.read_to_string(&mut text).map_err(read_error)?;
            Ok(text)
        } else {
            fs::read_to_string(path).map_err(read_error)
        }
    }

    /// Writes to `path`, or to stdout for `-`.
    fn emit(&mut self, path: &str, text: &str) -> Result<(), CliError> {
        let result = if path == "-" {
            self.stdout.write_all(text.as_bytes())
        } else {
            fs::write(path, text)
        };
        result.map_err(|source| CliError::Write {
            path: path.to_string(),
            source,
        })
    }

    fn out(&mut self, text: &str) -> Result<(), CliError> {
        self.emit("-", text)
    }

    fn report(&mut self, diagnostics: &[Diagnostic], file: &str) {
        for d in diagnostics {
            // stderr failures have nowhere left to be reported
            let _ = writeln!(self.stderr, "{}", d.render(file));
        }
    }

    /// Parses `path`. Parse errors are reported and yield `None`.
    fn load(&mut self, path: &str) -> Result<Option<(Model, String)>, CliError> {
        let text = self.read(path)?;
        let name = if path == "-" { STDIN_NAME } else { path };
        let parsed = dsl::parse(&text, name);
        self.report(&parsed.diagnostics, name);
        Ok(parsed.model.map(|m| (m, text)))
    }

    /// Parses and analyses `path`, reporting every diagnostic.
    fn analyse(&mut self, path: &str) -> Result<Option<(Model, Analyses)>, CliError> {
        let Some((model, _)) = self.load(path)? else {
            return Ok(None);
        };
        let analyses = Analyses::run(&model);
        self.report(&analyses.diagnostics, path);
        Ok(Some((model, analyses)))
    }
}

/// Runs one invocation. `args[0]` is the program name.
pub fn run<R: Read, W: Write, E: Write>(args: &[String], stdin: &mut R, stdout: &mut W, stderr: &mut E) -> ExitStatus {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                ExitStatus::Usage
            } else {
                let _ = stdout.write_all(text.as_bytes());
                ExitStatus::Success
            };
        }
    };
    let mut io = Io { stdin, stdout, stderr };
    let status = match dispatch(cli.command, &mut io) {
        Ok(status) => status,
        Err(e) => {
            let _ = writeln!(io.stderr, "phase: {e}");
            ExitStatus::Usage
        }
    };
    let _ = io.stdout.flush();
    status
}

fn dispatch<R: Read, W: Write, E: Write>(command: Command, io: &mut Io<'_, R, W, E>) -> Result<ExitStatus, CliError> {
    use ExitStatus::*;
    match command {
        Command::Check { file, strict } => {
            let Some((_, analyses)) = io.analyse(&file)? else {
                return Ok(Invalid);
            };
            Ok(if analyses.has_errors() {
                Invalid
            } else if strict && !analyses.diagnostics.is_empty() {
                Findings
            } else {
                Success
            })
        }

        Command::Coverage {
            file,
            boundary,
            format,
            fail_under,
        } => {
            let Some((model, analyses)) = io.analyse(&file)? else {
                return Ok(Invalid);
            };
            if analyses.has_errors() {
                return Ok(Invalid);
            }
            let matrix = analysis::coverage(&model, boundary.as_deref())?;
            let text = match format {
                CoverageFormat::Table => coverage_table(&matrix),
                CoverageFormat::Csv => export::coverage_csv(&matrix),
                CoverageFormat::Json => json(&CoverageDocument {
                    counts: matrix.counts(),
                    ratio: matrix.ratio(),
                    matrix: &matrix,
                }),
            };
            io.out(&text)?;
            Ok(match fail_under {
                Some(threshold) if matrix.ratio() < threshold => Findings,
                _ => Success,
            })
        }

        Command::Trace { file, loss, node } => {
            let Some((model, analyses)) = io.analyse(&file)? else {
                return Ok(Invalid);
            };
            if analyses.has_errors() {
                return Ok(Invalid);
            }
            let text = match (loss, node) {
                (Some(loss), _) => analysis::trace_loss(&model, &loss)?.render(),
                (None, Some(node)) => analysis::trace_node(&model, &node)?.render(),
                (None, None) => unreachable!("clap requires one of --loss and --node"),
            };
            io.out(&text)?;
            Ok(Success)
        }

        Command::Hints { file } => {
            let Some((_, analyses)) = io.analyse(&file)? else {
                return Ok(Invalid);
            };
            if analyses.has_errors() {
                return Ok(Invalid);
            }
            let mut text = String::new();
            for h in &analyses.hints {
                let subjects: Vec<String> = h.subjects.iter().map(|s| s.to_string()).collect();
                writeln!(text, "{} [{}]: {}", h.code, subjects.join(", "), h.message).unwrap();
            }
            io.out(&text)?;
            Ok(Success)
        }

        Command::Render {
            file,
            output,
            boundary,
            no_iolinks,
        } => {
            let Some((model, analyses)) = io.analyse(&file)? else {
                return Ok(Invalid);
            };
            if analyses.has_errors() {
                return Ok(Invalid);
            }
            let opts = RenderOptions {
                boundary,
                include_iolinks: !no_iolinks,
            };
            let dot = export::to_dot(&model, &opts)?;
            io.emit(&output, &dot)?;
            Ok(Success)
        }

        Command::Report { file, format, output } => {
            let Some((model, analyses)) = io.analyse(&file)? else {
                return Ok(Invalid);
            };
            let text = match format {
                ReportFormat::Md => export::report_markdown(&model, &analyses),
                ReportFormat::Json => export::report_json(&model, &analyses),
            };
            io.emit(output.as_deref().unwrap_or("-"), &text)?;
            Ok(if analyses.has_errors() { Invalid } else { Success })
        }

        Command::Diff {
            old,
            new,
            impact: with_impact,
            format,
            fail_on_change,
        } => {
            let before = io.load(&old)?;
            let after = io.load(&new)?;
            let (Some((before, _)), Some((after, _))) = (before, after) else {
                return Ok(Invalid);
            };
            let changes = diff(&before, &after);
            let report = with_impact.then(|| impact(&changes, &after));
            let text = match format {
                DiffFormat::Text => {
                    let mut text = changes.render();
                    if let Some(report) = &report {
                        text.push_str(&report.render());
                    }
                    text
                }
                DiffFormat::Json => json(&DiffDocument {
                    changes: &changes,
                    impact: report.as_ref(),
                }),
            };
            io.out(&text)?;
            Ok(if fail_on_change && !changes.is_empty() { Findings } else { Success })
        }

        Command::Fmt { file, write, check } => {
            let Some((model, original)) = io.load(&file)? else {
                return Ok(Invalid);
            };
            let canonical = dsl::serialize(&model);
            if check {
                if canonical == original {
                    return Ok(Success);
                }
                let shown = if file == "-" { STDIN_NAME } else { &file };
                let _ = writeln!(io.stderr, "{shown}: not in canonical form");
                return Ok(Findings);
            }
            let target = if write { file.as_str() } else { "-" };
            io.emit(target, &canonical)?;
            Ok(Success)
        }
    }
}

#[derive(Serialize)]
struct CoverageDocument<'a> {
    #[serde(flatten)]
    matrix: &'a CoverageMatrix,
    counts: CellCounts,
    ratio: f64,
}

#[derive(Serialize)]
struct DiffDocument<'a> {
    changes: &'a ChangeSet,
    #[serde(skip_serializing_if = "Option::is_none")]
    impact: Option<&'a ImpactReport>,
}

fn json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("cli documents serialize infallibly");
    text.push('\n');
    text
}

/// Column-aligned plain-text matrix followed by a one-line summary.
fn coverage_table(matrix: &CoverageMatrix) -> String {
    let mut rows: Vec<Vec<String>> = Vec::with_capacity(matrix.rows.len() + 1);
    let mut header = vec!["controller".to_string(), "action".to_string()];
    header.extend(matrix.columns.iter().map(|g| g.to_string()));
    rows.push(header);
    for row in &matrix.rows {
        let mut line = vec![row.controller.to_string(), row.action.to_string()];
        line.extend(row.cells.iter().map(|c| match c {
            Cell::Covered { ucas } => ucas.iter().map(|u| u.as_str()).collect::<Vec<_>>().join(","),
            Cell::Waived { .. } => "waived".to_string(),
            Cell::Gap => "GAP".to_string(),
        }));
        rows.push(line);
    }
    let widths: Vec<usize> = (0..rows[0].len())
        .map(|i| rows.iter().map(|r| r[i].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in &rows {
        let cells: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        writeln!(out, "{}", cells.join("  ").trim_end()).unwrap();
    }
    let c = matrix.counts();
    writeln!(
        out,
        "\n{} of {} cells covered, {} waived, {} gaps; ratio {:.3}",
        c.covered,
        c.cells,
        c.waived,
        c.gaps,
        c.ratio()
    )
    .unwrap();
    out
}
