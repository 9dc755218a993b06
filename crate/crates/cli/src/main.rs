//! `sck`: batch front end over `sck-core`.
//!
//! Every subcommand prints one report. Exit status is 0 when the property holds or the
//! computation succeeds, 1 when it fails with a counterexample, 2 on input or usage errors.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};

use crate::report::{error_json, to_json, to_text, Status};

#[derive(Parser, Debug)]
#[command(name = "sck", version, about = "Exact computations on frames, idealoids and sheaves")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Args, Debug, Clone)]
pub struct Out {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// Instance file (JSON).
    #[arg(long)]
    pub input: PathBuf,
}

#[derive(Args, Debug, Clone)]
pub struct Limit {
    /// Size guard for downset enumeration; SCK_LIMIT overrides the default.
    #[arg(long)]
    pub limit: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct Closure {
    /// Validate the listed pairs as given instead of closing them under absorption.
    #[arg(long)]
    pub no_closure: bool,
}

#[derive(Args, Debug, Clone)]
pub struct Pair {
    #[arg(long)]
    pub x: Option<String>,
    #[arg(long)]
    pub y: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate a poset document and summarize it.
    CheckPoset {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Out,
    },
    /// Enumerate downsets and the downset lattice.
    Downsets {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        limit: Limit,
        #[command(flatten)]
        out: Out,
    },
    /// Read a poset as a lattice and test distributivity.
    IsDistributive {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Out,
    },
    /// Test absorption of the listed pairs.
    IdealoidCheck {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        limit: Limit,
        #[command(flatten)]
        out: Out,
    },
    /// Test the interpolation property.
    Subdivisible {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        closure: Closure,
        #[command(flatten)]
        limit: Limit,
        #[command(flatten)]
        out: Out,
    },
    /// Largest subdivisible subidealoid.
    SdCore {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        closure: Closure,
        #[command(flatten)]
        limit: Limit,
        #[command(flatten)]
        out: Out,
    },
    /// Depth-k subdivision chain from --x to --y.
    Chain {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value_t = 2)]
        depth: u32,
        #[command(flatten)]
        closure: Closure,
        #[command(flatten)]
        limit: Limit,
        #[command(flatten)]
        out: Out,
    },
    /// Minkowski question-mark function on a rational.
    Minkowski {
        #[arg(long)]
        value: String,
        #[arg(long)]
        inverse: bool,
        #[command(flatten)]
        out: Out,
    },
    /// Whether an ideal (--x, members separated by `;`) is restricted along the idealoid.
    Restricted {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        x: Option<String>,
        #[command(flatten)]
        closure: Closure,
        #[command(flatten)]
        limit: Limit,
        #[command(flatten)]
        out: Out,
    },
    /// Successor sequence from the seed --x.
    Sequentialize {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        x: String,
        #[arg(long, default_value_t = 3)]
        steps: usize,
        #[command(flatten)]
        closure: Closure,
        #[command(flatten)]
        limit: Limit,
        #[command(flatten)]
        out: Out,
    },
    /// The arrow idealoid, or membership of the arrow pair --x, --y.
    ArrowIdealoid {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        pair: Pair,
        #[command(flatten)]
        closure: Closure,
        #[command(flatten)]
        limit: Limit,
        #[command(flatten)]
        out: Out,
    },
    /// Partial isomorphism between dense orders, e.g. --x 'dyadic:[0,1]' --y 'rational:[0,1]'.
    BackAndForth {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long, default_value_t = 4)]
        steps: usize,
        #[command(flatten)]
        out: Out,
    },
    /// Way-below on a frame.
    WayBelow {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        pair: Pair,
        #[command(flatten)]
        limit: Limit,
        #[command(flatten)]
        out: Out,
    },
    /// Stable continuity report.
    ContinuousCheck {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        limit: Limit,
        #[command(flatten)]
        out: Out,
    },
    /// The section y ↦ {x : x ≪ y} into the frame of ideals.
    Section {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        limit: Limit,
        #[command(flatten)]
        out: Out,
    },
    /// The frame of ideals.
    Flachsmeyer {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        limit: Limit,
        #[command(flatten)]
        out: Out,
    },
    /// Rather-below on a frame, with separating witnesses.
    RatherBelow {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        pair: Pair,
        #[command(flatten)]
        limit: Limit,
        #[command(flatten)]
        out: Out,
    },
    /// Regularity test.
    RegularCheck {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        limit: Limit,
        #[command(flatten)]
        out: Out,
    },
    /// Compactification along rather-below or way-below.
    Compactify {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "rather-below")]
        relation: String,
        #[command(flatten)]
        limit: Limit,
        #[command(flatten)]
        out: Out,
    },
    /// Very Schwartz subframe.
    Vsc {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        limit: Limit,
        #[command(flatten)]
        out: Out,
    },
    /// De Groot dual of a space.
    Dual {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Out,
    },
    /// Patch topology description.
    Patch {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Out,
    },
    /// Ordered-space round trip.
    Nachbin {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Out,
    },
    /// Perfectness of a map by both criteria.
    PerfectCheck {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        limit: Limit,
        #[command(flatten)]
        out: Out,
    },
    /// Compact saturated sets of a space.
    Ksat {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        limit: Limit,
        #[command(flatten)]
        out: Out,
    },
    /// Excision test for a presheaf of sets.
    ExcisiveCheck {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        limit: Limit,
        #[command(flatten)]
        out: Out,
    },
    /// Sheafification comparison at --at (every open when omitted on a finite space).
    Sheafify {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        at: Option<String>,
        #[command(flatten)]
        limit: Limit,
        #[command(flatten)]
        out: Out,
    },
    /// Whether a presheaf on the frame of ideals of dint comes from dint.
    FlachsmeyerImage {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Out,
    },
    /// Value on [r,1] and the compact-saturated sheaf condition there.
    Ksheaf {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        at: String,
        /// Check the assignment as given instead of its extension.
        #[arg(long)]
        raw: bool,
        #[command(flatten)]
        out: Out,
    },
    /// Verdier dual of a sheaf of complexes.
    Verdier {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        limit: Limit,
        #[command(flatten)]
        out: Out,
    },
    /// Double-dual comparison on an input sheaf or on seeded random sheaves.
    VerdierRoundtrip {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[command(flatten)]
        limit: Limit,
        #[command(flatten)]
        out: Out,
    },
    /// Homology dimensions of a rational complex.
    ComplexHomology {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Out,
    },
}

impl Command {
    fn format(&self) -> Format {
        use Command::*;
        match self {
            CheckPoset { out, .. }
            | Downsets { out, .. }
            | IsDistributive { out, .. }
            | IdealoidCheck { out, .. }
            | Subdivisible { out, .. }
            | SdCore { out, .. }
            | Chain { out, .. }
            | Minkowski { out, .. }
            | Restricted { out, .. }
            | Sequentialize { out, .. }
            | ArrowIdealoid { out, .. }
            | BackAndForth { out, .. }
            | WayBelow { out, .. }
            | ContinuousCheck { out, .. }
            | Section { out, .. }
            | Flachsmeyer { out, .. }
            | RatherBelow { out, .. }
            | RegularCheck { out, .. }
            | Compactify { out, .. }
            | Vsc { out, .. }
            | Dual { out, .. }
            | Patch { out, .. }
            | Nachbin { out, .. }
            | PerfectCheck { out, .. }
            | Ksat { out, .. }
            | ExcisiveCheck { out, .. }
            | Sheafify { out, .. }
            | FlachsmeyerImage { out, .. }
            | Ksheaf { out, .. }
            | Verdier { out, .. }
            | VerdierRoundtrip { out, .. }
            | ComplexHomology { out, .. } => out.format,
        }
    }
}

pub struct Rendered {
    pub text: String,
    pub code: u8,
    /// Usage errors from argument parsing go to stderr; reports go to stdout.
    pub usage: bool,
}

/// Parses `argv`, runs the subcommand and renders its report.
pub fn run<I, T>(argv: I) -> Rendered
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let parsed = Cli::command()
        .try_get_matches_from(argv)
        .and_then(|m| Ok((m.subcommand_name().unwrap_or_default().to_string(), Cli::from_arg_matches(&m)?)));
    let (name, cli) = match parsed {
        Ok(p) => p,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return Rendered { text: e.render().to_string(), code, usage: code == 2 };
        }
    };
    let format = cli.command.format();
    let (text, status) = match commands::dispatch(&cli.command) {
        Ok(outcome) => match format {
            Format::Json => (pretty(&to_json(&name, &outcome)), outcome.status),
            Format::Text => (to_text(&name, &outcome), outcome.status),
            Format::Dot => match &outcome.dot {
                Some(d) => (d.clone(), outcome.status),
                None => {
                    let msg = format!("--format dot is not available for {name}");
                    (render_error(&name, &msg, Format::Text), Status::Error)
                }
            },
        },
        Err(msg) => (render_error(&name, &msg, format), Status::Error),
    };
    Rendered { text, code: status.exit_code(), usage: false }
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn render_error(name: &str, msg: &str, format: Format) -> String {
    match format {
        Format::Json => pretty(&error_json(name, msg)),
        _ => format!("command: {name}\nstatus: error\nerror: {msg}\n"),
    }
}

fn main() -> ExitCode {
    let r = run(std::env::args_os());
    if r.usage {
        eprint!("{}", r.text);
    } else {
        print!("{}", r.text);
    }
    ExitCode::from(r.code)
}
