//! `obinv` — invariants of knots on pages of contact open books.
//!
//! Reads a JSON document describing a page, a monodromy (ordered Dehn
//! twists) and a knot word, and prints exact invariants: nullhomologous
//! status, tb, rot, self-linking numbers, the Euler class of the supported
//! contact structure and its d3 invariant.

mod input;
mod report;

use clap::{Args, Parser, Subcommand, ValueEnum};
use input::{parse_input, InputDocument, LevelDoc};
use obinv_core::exact_linalg::smith_normal_form;
use obinv_core::page_model::{CurveWord, KnotOnPage, Level, OpenBookSpec};
use obinv_core::rotation_count::rotation_word_count;
use obinv_core::surgery_invariants::{
    build_presentation, euler_class, expand_multiplicities, full_report,
};
use report::{ContactDoc, HomologyDoc, InvariantsDoc, PresentationDoc, WordRotDoc};
use serde::Serialize;
use std::io::Read;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "obinv",
    about = "Exact invariants of knots on pages of contact open books",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LevelArg {
    High,
    Low,
}

#[derive(Args)]
struct CommonArgs {
    /// Input file, or "-" for standard input
    #[arg(default_value = "-")]
    file: String,
    /// Output format
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Override the knot level from the document
    #[arg(long, value_enum)]
    level: Option<LevelArg>,
    /// Replace every power-n twist by n single twists before computing
    #[arg(long)]
    expanded: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Full invariant report: verdict, tb, rot, sl, Euler class, d3
    Invariants {
        #[command(flatten)]
        common: CommonArgs,
        /// Report rational invariants even when no integral Seifert solution exists
        #[arg(long)]
        rational: bool,
        /// Report the rotation number for both knot levels
        #[arg(long)]
        both_levels: bool,
    },
    /// Euler class and d3 invariant of the supported contact structure
    Contact {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Dump the surgery presentation: vector l, matrix Q, vector r, coefficients
    Presentation {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Smith normal form of Q and the first homology of the manifold
    Homology {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Tangency counts (lambda+, rho+) and r for a bare curve word
    WordRot {
        /// Letter tokens, e.g. a1 b2 a2 B4 A3 b2
        #[arg(required = true)]
        word: Vec<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::FAILURE
        }
    }
}

fn read_document(file: &str) -> Result<InputDocument, String> {
    let text = if file == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| format!("reading standard input: {e}"))?;
        buf
    } else {
        std::fs::read_to_string(file).map_err(|e| format!("reading {file}: {e}"))?
    };
    parse_input(&text).map_err(|e| e.to_string())
}

/// Applies the --level and --expanded overrides and returns the effective
/// instance together with the echoed document.
fn prepare(common: &CommonArgs) -> Result<(InputDocument, OpenBookSpec, KnotOnPage), String> {
    let mut doc = read_document(&common.file)?;
    if let Some(level) = common.level {
        doc.knot.level = match level {
            LevelArg::High => LevelDoc::High,
            LevelArg::Low => LevelDoc::Low,
        };
    }
    let (mut ob, knot) = doc.to_core().map_err(|e| e.to_string())?;
    if common.expanded {
        ob = expand_multiplicities(&ob);
    }
    Ok((doc, ob, knot))
}

fn emit<T: Serialize>(format: Format, doc: &T, text: String) -> Result<(), String> {
    match format {
        Format::Json => {
            let json = serde_json::to_string_pretty(doc).map_err(|e| e.to_string())?;
            println!("{json}");
        }
        Format::Text => print!("{text}"),
    }
    Ok(())
}

fn run(command: Command) -> Result<(), String> {
    match command {
        Command::Invariants {
            common,
            rational,
            both_levels,
        } => {
            let (doc, ob, knot) = prepare(&common)?;
            let report = full_report(&ob, &knot).map_err(|e| e.to_string())?;
            let levels = if both_levels {
                let at = |level: Level| {
                    full_report(&ob, &KnotOnPage::new(knot.word.clone(), level))
                        .map(|r| r.rot)
                        .map_err(|e| e.to_string())
                };
                Some((at(Level::High)?, at(Level::Low)?))
            } else {
                None
            };
            let out = InvariantsDoc::new(&doc, &ob, &knot, &report, rational, levels);
            emit(common.format, &out, out.to_text())
        }
        Command::Contact { common } => {
            let (doc, ob, knot) = prepare(&common)?;
            let report = full_report(&ob, &knot).map_err(|e| e.to_string())?;
            let out = ContactDoc::new(&doc, &ob, &knot, &report);
            emit(common.format, &out, out.to_text())
        }
        Command::Presentation { common } => {
            let (doc, ob, knot) = prepare(&common)?;
            let p = build_presentation(&ob, &knot).map_err(|e| e.to_string())?;
            let out = PresentationDoc::new(&doc, &ob, &knot, &p)?;
            emit(common.format, &out, out.to_text())
        }
        Command::Homology { common } => {
            let (doc, ob, knot) = prepare(&common)?;
            let p = build_presentation(&ob, &knot).map_err(|e| e.to_string())?;
            let snf = smith_normal_form(&p.q_matrix);
            let euler = euler_class(&p);
            let out = HomologyDoc::new(&doc, &p, &snf.diagonal(), &euler);
            emit(common.format, &out, out.to_text())
        }
        Command::WordRot { word, format } => {
            let parsed = CurveWord::parse_tokens(&word).map_err(|e| e.to_string())?;
            let (count, r) = rotation_word_count(&parsed);
            let out = WordRotDoc::new(&word, count, r);
            emit(format, &out, out.to_text())
        }
    }
}
