mod frame;
mod order;
mod sheaf;

use std::fmt;
use std::path::Path;

use serde_json::Value;

use sck_core::order::DEFAULT_DOWNSET_LIMIT;

use crate::report::Outcome;
use crate::{Command, Limit};

/// Sample denominator for built-in frames where a report lists elements.
pub const SAMPLE_DEN: i64 = 4;

#[derive(Debug)]
pub struct CliError(pub String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<sck_core::Error> for CliError {
    fn from(e: sck_core::Error) -> Self {
        CliError(e.to_string())
    }
}

pub type CmdResult = Result<Outcome, CliError>;

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError(msg.into())
}

pub fn load(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("{} is not valid JSON: {e}", path.display())))
}

/// `--limit`, then `SCK_LIMIT`, then the library default.
pub fn limit(l: &Limit) -> Result<usize, CliError> {
    if let Some(n) = l.limit {
        return Ok(n);
    }
    match std::env::var("SCK_LIMIT") {
        Ok(s) => s.trim().parse().map_err(|_| usage(format!("SCK_LIMIT must be a positive integer, found `{s}`"))),
        Err(_) => Ok(DEFAULT_DOWNSET_LIMIT),
    }
}

/// Open and downset ids are written bare or in braces.
pub fn strip_braces(s: &str) -> &str {
    let s = s.trim();
    s.strip_prefix('{').and_then(|t| t.strip_suffix('}')).unwrap_or(s)
}

pub fn require<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str, CliError> {
    v.as_deref().ok_or_else(|| usage(format!("{flag} is required here")))
}

pub fn dispatch(cmd: &Command) -> Result<Outcome, String> {
    run(cmd).map_err(|e| e.0)
}

fn run(cmd: &Command) -> CmdResult {
    use Command::*;
    match cmd {
        CheckPoset { input, .. } => order::check_poset(&load(&input.input)?),
        Downsets { input, limit: l, .. } => order::downsets(&load(&input.input)?, limit(l)?),
        IsDistributive { input, .. } => order::is_distributive(&load(&input.input)?),
        IdealoidCheck { input, limit: l, .. } => order::idealoid_check(&load(&input.input)?, limit(l)?),
        Subdivisible { input, closure, limit: l, .. } => {
            order::subdivisible(&load(&input.input)?, !closure.no_closure, limit(l)?)
        }
        SdCore { input, closure, limit: l, .. } => order::sd_core(&load(&input.input)?, !closure.no_closure, limit(l)?),
        Chain { input, pair, depth, closure, limit: l, .. } => {
            order::chain(&load(&input.input)?, pair, *depth, !closure.no_closure, limit(l)?)
        }
        Minkowski { value, inverse, .. } => order::minkowski(value, *inverse),
        Restricted { input, x, closure, limit: l, .. } => {
            order::restricted(&load(&input.input)?, x.as_deref(), !closure.no_closure, limit(l)?)
        }
        Sequentialize { input, x, steps, closure, limit: l, .. } => {
            order::sequentialize(&load(&input.input)?, x, *steps, !closure.no_closure, limit(l)?)
        }
        ArrowIdealoid { input, pair, closure, limit: l, .. } => {
            order::arrow_idealoid(&load(&input.input)?, pair, !closure.no_closure, limit(l)?)
        }
        BackAndForth { x, y, steps, .. } => order::back_and_forth(x, y, *steps),
        WayBelow { input, pair, limit: l, .. } => frame::way_below(&load(&input.input)?, pair, limit(l)?),
        ContinuousCheck { input, limit: l, .. } => frame::continuous_check(&load(&input.input)?, limit(l)?),
        Section { input, limit: l, .. } => frame::section(&load(&input.input)?, limit(l)?),
        Flachsmeyer { input, limit: l, .. } => frame::flachsmeyer(&load(&input.input)?, limit(l)?),
        RatherBelow { input, pair, limit: l, .. } => frame::rather_below(&load(&input.input)?, pair, limit(l)?),
        RegularCheck { input, limit: l, .. } => frame::regular_check(&load(&input.input)?, limit(l)?),
        Compactify { input, relation, limit: l, .. } => frame::compactify(&load(&input.input)?, relation, limit(l)?),
        Vsc { input, limit: l, .. } => frame::vsc(&load(&input.input)?, limit(l)?),
        Dual { input, .. } => frame::dual(&load(&input.input)?),
        Patch { input, .. } => frame::patch(&load(&input.input)?),
        Nachbin { input, .. } => frame::nachbin(&load(&input.input)?),
        PerfectCheck { input, limit: l, .. } => frame::perfect_check(&load(&input.input)?, limit(l)?),
        Ksat { input, limit: l, .. } => frame::ksat(&load(&input.input)?, limit(l)?),
        ExcisiveCheck { input, limit: l, .. } => sheaf::excisive_check(&load(&input.input)?, limit(l)?),
        Sheafify { input, at, limit: l, .. } => sheaf::sheafify(&load(&input.input)?, at.as_deref(), limit(l)?),
        FlachsmeyerImage { input, .. } => sheaf::flachsmeyer_image(&load(&input.input)?),
        Ksheaf { input, at, raw, .. } => sheaf::ksheaf(&load(&input.input)?, at, *raw),
        Verdier { input, limit: l, .. } => sheaf::verdier(&load(&input.input)?, limit(l)?),
        VerdierRoundtrip { input, seed, trials, limit: l, .. } => {
            let doc = input.as_deref().map(load).transpose()?;
            sheaf::verdier_roundtrip(doc.as_ref(), *seed, *trials, limit(l)?)
        }
        ComplexHomology { input, .. } => sheaf::complex_homology(&load(&input.input)?),
    }
}
