//! Argument grammar for the `tanlab` binary.
//!
//! Complex literals are written `a+bi` with both parts and the trailing `i`
//! mandatory (`0.1+0i`, `4-4i`, `-1e-3+2.5i`), grids as
//! `cx,cy,w,h,cols,rows`, and itinerary words as comma-separated symbols
//! with an optional `inf` terminator (`0,2,-1,inf`).

use std::path::PathBuf;
use std::sync::OnceLock;

use clap::{Args, Parser, Subcommand, ValueEnum};
use regex::Regex;
use tanlab_core::planes::GridSpec;
use tanlab_core::symbolic::ItineraryWord;
use tanlab_core::Complex64;

#[derive(Parser, Debug, Clone, PartialEq)]
#[command(
    name = "tanlab",
    version,
    about = "Iteration, symbolic dynamics and plane rendering for the family lambda + tan z^2"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone, PartialEq)]
pub enum Command {
    /// Iterate a seed and report its fate (cycle, pole hit, or unresolved).
    Orbit(OrbitArgs),
    /// Locate the cycle attracting a seed and classify its multiplier.
    Cycle(OrbitArgs),
    /// Count real fixed points over the principal interval (real lambda).
    FixedPoints(FixedPointsArgs),
    /// Locate the real parameter where the graph is tangent to the diagonal.
    Tangency(FormatArgs),
    /// Symbolic itinerary of a seed at an escaping-Julia parameter.
    Itinerary(ItineraryArgs),
    /// Pre-pole representative and diameter estimate of a cylinder set.
    Cylinder(CylinderArgs),
    /// Render a dynamical-plane classification raster.
    RenderDyn(RenderDynArgs),
    /// Render a parameter-plane classification raster.
    RenderParam(RenderParamArgs),
    /// Estimate the hyperbola level bounding a quadrant's escaping region.
    Threshold(ThresholdArgs),
    /// Run a built-in randomized property suite.
    Verify(VerifyArgs),
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
    Json,
    Ppm,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Text => "text",
            Format::Csv => "csv",
            Format::Json => "json",
            Format::Ppm => "ppm",
        }
    }
}

#[derive(Args, Debug, Clone, PartialEq)]
pub struct OrbitArgs {
    /// Map parameter, e.g. 0.1+0i.
    #[arg(long, value_parser = parse_complex)]
    pub lambda: Complex64,
    /// Starting point, e.g. 0+0i.
    #[arg(long, value_parser = parse_complex)]
    pub z0: Complex64,
    /// Iteration budget.
    #[arg(long, default_value_t = 200)]
    pub max_iter: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write to this path instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, PartialEq)]
pub struct FixedPointsArgs {
    /// Map parameter; must be real (zero imaginary part).
    #[arg(long, value_parser = parse_complex)]
    pub lambda: Complex64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, PartialEq)]
pub struct FormatArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, PartialEq)]
pub struct ItineraryArgs {
    #[arg(long, value_parser = parse_complex)]
    pub lambda: Complex64,
    #[arg(long, value_parser = parse_complex)]
    pub z0: Complex64,
    /// Window length (number of symbols to read).
    #[arg(long, default_value_t = 16)]
    pub max_iter: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, PartialEq)]
pub struct CylinderArgs {
    #[arg(long, value_parser = parse_complex)]
    pub lambda: Complex64,
    /// Itinerary word, e.g. 0,2,-1 or 3,0,inf for a terminated word.
    #[arg(long, value_parser = parse_word)]
    pub word: ItineraryWord,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, PartialEq)]
pub struct RenderDynArgs {
    #[arg(long, value_parser = parse_complex)]
    pub lambda: Complex64,
    /// Window as cx,cy,w,h,cols,rows.
    #[arg(long, value_parser = parse_grid)]
    pub grid: GridSpec,
    #[arg(long, default_value_t = 200)]
    pub max_iter: usize,
    #[arg(long, value_enum, default_value_t = Format::Ppm)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, PartialEq)]
pub struct RenderParamArgs {
    /// Window as cx,cy,w,h,cols,rows.
    #[arg(long, value_parser = parse_grid)]
    pub grid: GridSpec,
    #[arg(long, default_value_t = 100)]
    pub max_iter: usize,
    #[arg(long, value_enum, default_value_t = Format::Ppm)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, PartialEq)]
pub struct ThresholdArgs {
    /// Open quadrant of the parameter plane, counted counterclockwise.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=4))]
    pub quadrant: u8,
    /// Hyperbola levels are sampled at t-step, 2 t-step, ...
    #[arg(long, default_value_t = 0.5)]
    pub t_step: f64,
    /// Largest level sampled (also returned when no level passes).
    #[arg(long, default_value_t = 64.0)]
    pub t_max: f64,
    /// Arc points are confined to |lambda| <= this bound.
    #[arg(long, default_value_t = 10.0)]
    pub lambda_bound: f64,
    /// Sample count along each arc.
    #[arg(long, default_value_t = 33)]
    pub arc_samples: usize,
    /// Iteration budget per singular orbit.
    #[arg(long, default_value_t = 100)]
    pub max_iter: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    /// Evenness and conjugation identities of the map.
    Symmetry,
    /// Forward/inverse branch round trips.
    Inverse,
    /// Ultrametric and Lipschitz properties of the word metric.
    Shift,
    /// Everything above.
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Symmetry => "symmetry",
            Suite::Inverse => "inverse",
            Suite::Shift => "shift",
            Suite::All => "all",
        }
    }
}

#[derive(Args, Debug, Clone, PartialEq)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    /// Seed for the randomized samples.
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn complex_regex() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| {
        let float = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?";
        Regex::new(&format!(r"^([+-]?{float})([+-]{float})i$")).unwrap()
    })
}

/// Parse a complex literal `a+bi`; both parts and the `i` suffix are
/// required, so `4`, `4i` and `4+i` are all rejected.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let caps = complex_regex()
        .captures(s)
        .ok_or_else(|| format!("`{s}` is not a complex literal of the form a+bi"))?;
    let re: f64 = caps[1].parse().map_err(|e| format!("real part: {e}"))?;
    let im: f64 = caps[2].parse().map_err(|e| format!("imaginary part: {e}"))?;
    Ok(Complex64::new(re, im))
}

/// Canonical complex literal that `parse_complex` maps back to the same
/// value (f64 `Display` is shortest-round-trip).
pub fn format_complex(z: Complex64) -> String {
    format!("{}{:+}i", z.re, z.im)
}

/// Parse a grid window `cx,cy,w,h,cols,rows`.
pub fn parse_grid(s: &str) -> Result<GridSpec, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 6 {
        return Err(format!(
            "expected cx,cy,w,h,cols,rows (6 fields), got {} in `{s}`",
            parts.len()
        ));
    }
    let num = |i: usize, name: &str| -> Result<f64, String> {
        let v: f64 = parts[i]
            .trim()
            .parse()
            .map_err(|e| format!("{name}: {e}"))?;
        if !v.is_finite() {
            return Err(format!("{name} must be finite"));
        }
        Ok(v)
    };
    let cx = num(0, "cx")?;
    let cy = num(1, "cy")?;
    let width = num(2, "w")?;
    let height = num(3, "h")?;
    if width <= 0.0 || height <= 0.0 {
        return Err("grid width and height must be positive".into());
    }
    let cols: usize = parts[4]
        .trim()
        .parse()
        .map_err(|e| format!("cols: {e}"))?;
    let rows: usize = parts[5]
        .trim()
        .parse()
        .map_err(|e| format!("rows: {e}"))?;
    if cols == 0 || rows == 0 {
        return Err("grid cols and rows must be at least 1".into());
    }
    Ok(GridSpec {
        center: Complex64::new(cx, cy),
        width,
        height,
        cols,
        rows,
    })
}

/// Canonical grid literal that `parse_grid` maps back to the same spec.
pub fn format_grid(g: &GridSpec) -> String {
    format!(
        "{},{},{},{},{},{}",
        g.center.re, g.center.im, g.width, g.height, g.cols, g.rows
    )
}

pub fn parse_word(s: &str) -> Result<ItineraryWord, String> {
    s.parse::<ItineraryWord>().map_err(|e| e.to_string())
}
