//! Command-line front end. Every subcommand renders into a `String`, so output
//! is byte-identical for identical arguments and easy to test.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::density::{self, DensityKind, DensityModel};
use crate::error::Error;
use crate::fibonacci::{self, TilePattern, DEFAULT_HORIZON, TERRACE_STRING};
use crate::golden::GoldenScalar;
use crate::icosa::{fmt_fixed, Triacontahedron, B5_ANGSTROM};
use crate::patterson::{self, ShiftMode};
use crate::terraces::{self, TERRACE_COUNT, TERRACE_FIRST_N};

/// Rows of the default plane table (`N = 0..=24`).
pub const DEFAULT_TABLE_HORIZON: usize = 24;
pub const DEFAULT_ETA0: &str = "-1/(tau*(tau+2))";

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Svg,
    Pretty,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Circle,
}

impl From<ModeArg> for ShiftMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Exact => ShiftMode::Exact,
            ModeArg::Circle => ShiftMode::Circle,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "quasiterrace",
    version,
    about = "5fold plane sequences, densities and Patterson functions of the T*(2F) tiling"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Icosahedral lattice constant b5 in Å.
    #[arg(long, global = true, default_value_t = B5_ANGSTROM)]
    pub b5: f64,
    /// Height of plane N = 0, as an exact expression in tau (e.g. "-1/(tau*(tau+2))").
    #[arg(long, global = true, default_value = DEFAULT_ETA0, allow_hyphen_values = true)]
    pub eta0: String,
    /// Number of steps (table rows after N = 0, or search length).
    #[arg(long, global = true)]
    pub horizon: Option<usize>,
    /// Decimal places in numeric output.
    #[arg(long, global = true, default_value_t = 4, value_parser = clap::value_parser!(u8).range(1..=12))]
    pub precision: u8,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Plane heights η1, η2, η3 and section areas per vertex N.
    Table,
    /// Section area and density as a function of η.
    Density {
        #[arg(long, default_value = "-1", allow_hyphen_values = true)]
        lo: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        hi: String,
        #[arg(long, default_value_t = 200)]
        steps: usize,
        /// vertex, bergman_face_center, bergman_face_vertex, cut_pentagon_center or
        /// cut_pentagon_vertex (hyphens also accepted)
        #[arg(long, default_value = "vertex")]
        kind: String,
    },
    /// First occurrence of a tile string along the line.
    Search {
        #[arg(long, default_value = TERRACE_STRING)]
        pattern: String,
    },
    /// Plane spacings in Å between consecutive vertices.
    Spacing {
        #[arg(long, default_value_t = TERRACE_FIRST_N)]
        from: usize,
        #[arg(long, default_value_t = TERRACE_FIRST_N + TERRACE_COUNT - 1)]
        to: usize,
    },
    /// Planar section of the triacontahedron.
    Section {
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        eta: String,
    },
    /// Patterson values for labelled shifts at the three heights of one vertex.
    Patterson {
        /// Shift file: one "label n1 n2 n3 n4 n5 n6" per line.
        #[arg(long)]
        shifts: Option<PathBuf>,
        /// Vertex N whose η1, η2, η3 are evaluated.
        #[arg(long, default_value_t = 16)]
        row: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
        mode: ModeArg,
        /// Divide each column by its zero-shift value.
        #[arg(long)]
        normalize: bool,
    },
    /// Circle-approximation surface P(η, d).
    Surface {
        #[arg(long, default_value_t = 40)]
        eta_steps: usize,
        #[arg(long, default_value_t = 40)]
        d_steps: usize,
        /// Largest shift in units of τ·b5 (default: diameter of the η = 0 disc).
        #[arg(long)]
        d_max: Option<f64>,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => EXIT_USAGE,
            CliError::Domain(_) => EXIT_DOMAIN,
        }
    }
}

/// Validated global settings.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub b5_angstrom: f64,
    pub eta0: GoldenScalar,
    pub horizon: Option<usize>,
    pub format: Format,
    pub precision: usize,
}

impl RunConfig {
    pub fn from_args(g: &GlobalArgs) -> Result<Self, CliError> {
        if !(g.b5 > 0.0 && g.b5.is_finite()) {
            return Err(CliError::Usage(format!(
                "--b5 must be positive, got {}",
                g.b5
            )));
        }
        Ok(RunConfig {
            b5_angstrom: g.b5,
            eta0: parse_expr("--eta0", &g.eta0)?,
            horizon: g.horizon,
            format: g.format,
            precision: g.precision as usize,
        })
    }
}

fn parse_expr(flag: &str, s: &str) -> Result<GoldenScalar, CliError> {
    s.parse()
        .map_err(|e| CliError::Usage(format!("{flag}: {e}")))
}

fn unsupported(cmd: &str, format: Format) -> CliError {
    CliError::Usage(format!("{cmd} does not support --format {format:?}").to_lowercase())
}

/// Runs a parsed command and returns its rendered output.
pub fn render(cli: &Cli) -> Result<String, CliError> {
    let cfg = RunConfig::from_args(&cli.global)?;
    match &cli.command {
        Command::Table => cmd_table(&cfg),
        Command::Density {
            lo,
            hi,
            steps,
            kind,
        } => {
            let kind: DensityKind = kind
                .replace('-', "_")
                .parse()
                .map_err(|e: Error| CliError::Usage(e.to_string()))?;
            cmd_density(
                &cfg,
                &parse_expr("--lo", lo)?,
                &parse_expr("--hi", hi)?,
                *steps,
                kind,
            )
        }
        Command::Search { pattern } => {
            let pattern: TilePattern = pattern
                .parse()
                .map_err(|e: Error| CliError::Usage(format!("--pattern: {e}")))?;
            cmd_search(&cfg, &pattern)
        }
        Command::Spacing { from, to } => cmd_spacing(&cfg, *from, *to),
        Command::Section { eta } => cmd_section(&cfg, &parse_expr("--eta", eta)?),
        Command::Patterson {
            shifts,
            row,
            mode,
            normalize,
        } => {
            let text = match shifts {
                Some(path) => std::fs::read_to_string(path)?,
                None => String::new(),
            };
            let shifts =
                patterson::parse_shift_file(&text).map_err(|e| CliError::Usage(e.to_string()))?;
            cmd_patterson(&cfg, &shifts, *row, (*mode).into(), *normalize)
        }
        Command::Surface {
            eta_steps,
            d_steps,
            d_max,
        } => cmd_surface(&cfg, *eta_steps, *d_steps, *d_max),
    }
}

/// Renders and writes to `--out` or stdout.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    let text = render(cli)?;
    match &cli.global.out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            use std::io::Write;
            std::io::stdout().write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

pub fn cmd_table(cfg: &RunConfig) -> Result<String, CliError> {
    let rows = terraces::plane_sequence(&cfg.eta0, cfg.horizon.unwrap_or(DEFAULT_TABLE_HORIZON))?;
    match cfg.format {
        Format::Csv => Ok(terraces::table_csv(&rows, cfg.precision)),
        Format::Pretty => Ok(terraces::table_pretty(&rows, cfg.precision)),
        f => Err(unsupported("table", f)),
    }
}

pub fn cmd_density(
    cfg: &RunConfig,
    lo: &GoldenScalar,
    hi: &GoldenScalar,
    steps: usize,
    kind: DensityKind,
) -> Result<String, CliError> {
    if lo > hi {
        return Err(CliError::Usage("--lo must not exceed --hi".into()));
    }
    if cfg.format == Format::Svg {
        return Err(unsupported("density", cfg.format));
    }
    let model = DensityModel::new(cfg.b5_angstrom)?;
    let grid = density::profile_grid(lo, hi, steps);
    let rows = density::density_profile(&grid, &model)?;
    let scale = kind.multiplicity().to_f64();
    let p = cfg.precision;
    let eta_max = terraces::eta_window().hi;
    let f_min = density::section_area(&eta_max)?.to_f64();

    let mut out = String::new();
    let _ = writeln!(out, "# marker F={}", fmt_fixed(f_min, p));
    let _ = writeln!(out, "# marker abs_eta={}", fmt_fixed(eta_max.to_f64(), p));
    let _ = writeln!(out, "# kind={kind}");
    let sep = if cfg.format == Format::Csv { "," } else { "  " };
    let _ = writeln!(out, "{}", ["eta", "F", "D_rel", "D_abs"].join(sep));
    for r in rows {
        let d_abs = r.absolute * scale;
        let cells = [
            fmt_fixed(r.eta.to_f64(), p),
            fmt_fixed(r.area.to_f64(), p),
            fmt_fixed(r.relative.to_f64() * scale, p),
            format!("{d_abs:.prec$e}", prec = p),
        ];
        let _ = writeln!(out, "{}", cells.join(sep));
    }
    Ok(out)
}

pub fn cmd_search(cfg: &RunConfig, pattern: &TilePattern) -> Result<String, CliError> {
    let horizon = cfg.horizon.unwrap_or(DEFAULT_HORIZON);
    let y0 = terraces::y_of_eta(&cfg.eta0)?;
    let matches = fibonacci::find_string(y0.clone(), pattern, horizon)?;
    let first = *matches
        .first()
        .ok_or_else(|| Error::PatternNotFound(pattern.to_string()))?;
    let interior = fibonacci::find_interior_string(y0.clone(), pattern, horizon)?;
    let p = cfg.precision;

    let mut out = String::new();
    let _ = writeln!(out, "first match N={first}");
    let Some(&start) = interior.first() else {
        let _ = writeln!(out, "no interior match within {horizon}");
        return Ok(out);
    };
    let bounds = fibonacci::occurrence_shift_bounds(y0.clone(), pattern, start)?;
    let seq = fibonacci::sequence(y0, start + pattern.len())?;
    let _ = writeln!(out, "first interior match N={start}");
    let _ = writeln!(
        out,
        "tiles N={start}..{}: {}",
        start + pattern.len(),
        fibonacci::tiles_to_string(&seq.tiles[start..])
    );
    let _ = writeln!(
        out,
        "matches within {horizon}: {} ({} interior)",
        matches.len(),
        interior.len()
    );
    let _ = writeln!(
        out,
        "admissible eta shift: ({}, {}] (limited by N={} below, N={} above)",
        fmt_fixed(bounds.down.to_f64(), p),
        fmt_fixed(bounds.up.to_f64(), p),
        bounds.bottom_n,
        bounds.top_n
    );
    Ok(out)
}

pub fn cmd_spacing(cfg: &RunConfig, from: usize, to: usize) -> Result<String, CliError> {
    if from >= to {
        return Err(CliError::Usage("--from must be smaller than --to".into()));
    }
    let rows = terraces::plane_sequence(&cfg.eta0, to)?;
    let span = &rows[from..=to];
    let seq = terraces::spacing_in_angstrom(span, cfg.b5_angstrom);
    let p = cfg.precision;
    let mut out = String::new();
    match cfg.format {
        Format::Csv => {
            out.push_str("from_N,to_N,tile,spacing_angstrom\n");
            for (w, d) in span.windows(2).zip(&seq.spacings) {
                let _ = writeln!(
                    out,
                    "{},{},{},{}",
                    w[0].n,
                    w[1].n,
                    w[0].tile,
                    fmt_fixed(*d, p)
                );
            }
        }
        Format::Pretty => {
            let tiles: String = span[..span.len() - 1]
                .iter()
                .map(|r| r.tile.symbol())
                .collect();
            let ds: Vec<String> = seq.spacings.iter().map(|d| fmt_fixed(*d, p)).collect();
            let _ = writeln!(out, "N={from}..{to}  {tiles}");
            let _ = writeln!(out, "{}", ds.join(" "));
            let _ = writeln!(out, "total {} Å", fmt_fixed(seq.total(), p));
        }
        f => return Err(unsupported("spacing", f)),
    }
    Ok(out)
}

pub fn cmd_section(cfg: &RunConfig, eta: &GoldenScalar) -> Result<String, CliError> {
    let section = Triacontahedron::new().section(eta)?;
    let p = cfg.precision;
    Ok(match cfg.format {
        Format::Csv => section.to_csv(cfg.b5_angstrom, p),
        Format::Svg => section.to_svg(cfg.b5_angstrom, p),
        Format::Pretty => {
            let mut out = format!(
                "eta={}  vertices={}  area={} (τ·b5)²\n",
                fmt_fixed(eta.to_f64(), p),
                section.len(),
                fmt_fixed(section.area(), p)
            );
            for [x, y] in section.vertices_angstrom(cfg.b5_angstrom) {
                let _ = writeln!(
                    out,
                    "{:>w$} {:>w$}",
                    fmt_fixed(x, p),
                    fmt_fixed(y, p),
                    w = p + 5
                );
            }
            out
        }
    })
}

pub fn cmd_patterson(
    cfg: &RunConfig,
    shifts: &[patterson::LabeledShift],
    row: usize,
    mode: ShiftMode,
    normalize: bool,
) -> Result<String, CliError> {
    let rows = terraces::plane_sequence(&cfg.eta0, row)?;
    let etas = rows[row].eta.clone();
    let mut report = patterson::patterson_report(&etas, shifts, mode, cfg.b5_angstrom)?;
    if normalize {
        report = report.normalized();
    }
    Ok(match cfg.format {
        Format::Svg => report.to_svg(cfg.precision),
        _ => report.to_csv(cfg.precision),
    })
}

pub fn cmd_surface(
    cfg: &RunConfig,
    eta_steps: usize,
    d_steps: usize,
    d_max: Option<f64>,
) -> Result<String, CliError> {
    if cfg.format == Format::Svg {
        return Err(unsupported("surface", cfg.format));
    }
    let d_max =
        d_max.unwrap_or_else(|| 2.0 * patterson::circle_radius(density::max_area().to_f64()));
    if !(d_max >= 0.0 && d_max.is_finite()) {
        return Err(CliError::Usage(
            "--d-max must be a non-negative number".into(),
        ));
    }
    let eta_steps = eta_steps.max(1) as i64;
    let d_steps = d_steps.max(1);
    let etas: Vec<GoldenScalar> = (0..=eta_steps)
        .map(|k| GoldenScalar::from_ratios(2 * k - eta_steps, eta_steps, 0, 1))
        .collect();
    let ds: Vec<f64> = (0..=d_steps)
        .map(|k| d_max * k as f64 / d_steps as f64)
        .collect();
    let m = patterson::patterson_surface(&etas, &ds);
    Ok(patterson::surface_csv(&etas, &ds, &m, cfg.precision))
}
