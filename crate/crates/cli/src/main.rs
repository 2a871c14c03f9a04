//! `hypfloquet` command-line front end.
//!
//! Exit status is 0 on success, 1 when a computation fails, and 2 when the
//! command line cannot be parsed. Results go to stdout as JSON or CSV;
//! diagnostics go to stderr prefixed with the module that raised them.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgAction, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hypfloquet::catalog;
use hypfloquet::coloring::three_color;
use hypfloquet::derive::{self, Derivation};
use hypfloquet::floquet::{self, DMode, DistanceOptions, SupportMode};
use hypfloquet::geodist;
use hypfloquet::hypgeo::{self, RegularSig, SemiRegularSig};
use hypfloquet::surface::{self, SurfaceComplex};

#[derive(Parser)]
#[command(name = "hypfloquet", version, about = "Floquet codes on hyperbolic semi-regular tessellations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Metric profile of a tiling as JSON.
    Geom {
        /// `{p,q}` for a regular tiling or `[m1,m2,m3]` for a trivalent one.
        #[arg(long)]
        sig: String,
    },
    /// Build explicit surface complexes.
    Complex {
        #[command(subcommand)]
        action: ComplexAction,
    },
    /// Face 3-coloring and colored checks of a trivalent complex.
    Color {
        /// Complex JSON file.
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Rank trajectory of the instantaneous stabilizer group and `k`.
    Isg {
        /// Complex JSON file.
        #[arg(long = "in")]
        input: PathBuf,
        /// Number of measurement rounds, at least 6.
        #[arg(long, default_value_t = 9)]
        rounds: usize,
    },
    /// Code distance of a complex with its provenance.
    Distance {
        /// Complex JSON file.
        #[arg(long = "in")]
        input: PathBuf,
        /// `exact` searches logical operators, `geo` uses the geometric estimate.
        #[arg(long, value_enum)]
        mode: DistanceMode,
        /// Largest qubit count accepted by the exact search.
        #[arg(long, default_value_t = DistanceOptions::default().max_n)]
        max_n: usize,
        /// Largest logical weight tried by the exact search.
        #[arg(long, default_value_t = DistanceOptions::default().max_weight)]
        max_weight: usize,
        /// Enumerate every qubit subset instead of connected supports only.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Table of codes over a genus range.
    Table {
        /// `A..B`, `A..=B` or a single genus; both ends inclusive.
        #[arg(long)]
        genus: String,
        /// Orientable (`true`) or non-orientable (`false`) surfaces.
        #[arg(long, action = ArgAction::Set)]
        orientable: bool,
        /// Distance source: `exact`, `geo`, or `auto` (exact when n <= 40).
        #[arg(long, value_enum, default_value_t = TableMode::Auto)]
        mode: TableMode,
        /// Output format.
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Compare codes on orientable genus H with non-orientable genus 2H.
    Equiv {
        /// Orientable genus H, at least 2.
        #[arg(long)]
        genus: u32,
    },
}

#[derive(Subcommand)]
enum ComplexAction {
    /// Fundamental polygon of a surface, optionally derived.
    Build {
        /// Surface genus.
        #[arg(long)]
        genus: u32,
        /// Orientable (`true`) or non-orientable (`false`).
        #[arg(long, action = ArgAction::Set)]
        orientable: bool,
        /// Derivation applied to the fundamental polygon.
        #[arg(long, value_enum)]
        derive: Option<DeriveArg>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DeriveArg {
    Clip,
    Incenter,
}

#[derive(Clone, Copy, ValueEnum)]
enum DistanceMode {
    Exact,
    Geo,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableMode {
    Exact,
    Geo,
    Auto,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

/// Failure of a command, already carrying its module prefix.
struct Failure(String);

impl From<hypfloquet::Error> for Failure {
    fn from(e: hypfloquet::Error) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

fn lift<E: Into<hypfloquet::Error>>(e: E) -> Failure {
    e.into().into()
}

fn parse_sizes(text: &str, open: char, close: char) -> Option<Vec<u32>> {
    let inner = text.trim().strip_prefix(open)?.strip_suffix(close)?;
    inner.split(',').map(|p| p.trim().parse().ok()).collect()
}

fn geom(sig: &str) -> Outcome {
    let bad = || Failure(format!("hypgeo: cannot parse signature {sig:?}; expected {{p,q}} or [m1,m2,m3]"));
    if let Some(v) = parse_sizes(sig, '{', '}') {
        let [p, q]: [u32; 2] = v.try_into().map_err(|_| bad())?;
        let s = RegularSig::new(p, q).map_err(lift)?;
        let (apothem, circumradius) = hypgeo::regular_apothem_circumradius(s);
        return Ok(pretty(&json!({
            "signature": s.to_string(),
            "edge": hypgeo::regular_edge_length(s),
            "apothem": apothem,
            "circumradius": circumradius,
            "face_area": hypgeo::polygon_area(s),
        })));
    }
    let v = parse_sizes(sig, '[', ']').ok_or_else(bad)?;
    let m: [u32; 3] = v.try_into().map_err(|_| bad())?;
    let s = SemiRegularSig::new(m).map_err(lift)?;
    let prof = hypgeo::semiregular_profile(s).map_err(lift)?;
    let chords: Vec<f64> = (0..3)
        .map(|r| geodist::red_chord(s, r))
        .collect::<Result<_, _>>()
        .map_err(lift)?;
    Ok(pretty(&json!({
        "signature": s.to_string(),
        "edge": prof.edge,
        "apothems": prof.apothems,
        "circumradii": prof.circumradii,
        "incenter_gaps": prof.incenter_gaps,
        "red_chords": chords,
    })))
}

fn build(genus: u32, orientable: bool, derivation: Option<DeriveArg>) -> Outcome {
    let c = match derivation {
        None => surface::fundamental_polygon(genus, orientable).map_err(lift)?,
        Some(d) => {
            let d = match d {
                DeriveArg::Clip => Derivation::Clip,
                DeriveArg::Incenter => Derivation::Incenter,
            };
            derive::derive_fundamental(genus, orientable, d).map_err(lift)?
        }
    };
    Ok(c.to_json())
}

fn load(path: &Path) -> Result<SurfaceComplex, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure(format!("io: {}: {e}", path.display())))?;
    SurfaceComplex::from_json(&text).map_err(lift)
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize")
}

fn color(input: &Path) -> Outcome {
    let c = load(input)?;
    let assign = three_color(&c).map_err(lift)?;
    Ok(assign.checks_json())
}

fn isg(input: &Path, rounds: usize) -> Outcome {
    let c = load(input)?;
    let sim = floquet::simulate(&c, rounds)?;
    let t = &sim.trajectory;
    Ok(pretty(&json!({
        "n": sim.assign.qubit_count(),
        "rounds": t.groups.len(),
        "ranks": t.ranks(),
        "steady_from": t.steady_from,
        "k": t.logical_count(),
        "k_rule": floquet::k_rule(c.genus(), c.orientable()),
    })))
}

/// Signature of a complex whose vertices all see the same face sizes.
fn vertex_signature(c: &SurfaceComplex) -> Result<SemiRegularSig, Failure> {
    let sizes = c.face_sizes();
    let links = c.vertex_links().map_err(lift)?;
    let mut types: Vec<Vec<usize>> = links
        .iter()
        .map(|l| {
            let mut t: Vec<usize> = l.steps.iter().map(|s| sizes[s.corner.face]).collect();
            t.sort_unstable();
            t
        })
        .collect();
    types.sort();
    types.dedup();
    match types.as_slice() {
        [t] if t.len() == 3 => SemiRegularSig::new([t[0] as u32, t[1] as u32, t[2] as u32]).map_err(lift),
        _ => Err(Failure(format!(
            "geodist: complex is not a trivalent tiling of a single vertex type (types {types:?})"
        ))),
    }
}

fn distance(input: &Path, mode: DistanceMode, max_n: usize, max_weight: usize, exhaustive: bool) -> Outcome {
    let c = load(input)?;
    match mode {
        DistanceMode::Geo => {
            let sig = vertex_signature(&c)?;
            let est = geodist::estimate_distance(sig, c.genus(), c.orientable()).map_err(lift)?;
            Ok(pretty(&json!({
                "signature": sig.to_string(),
                "n": c.vertex_count(),
                "d": est.d,
                "d_source": floquet::DSource::GeometricEstimate,
                "convention_tag": est.convention_tag,
                "d_x": est.d_x,
                "d_z": est.d_z,
                "systole": est.systole_used,
            })))
        }
        DistanceMode::Exact => {
            let sim = floquet::simulate(&c, 9)?;
            let opts = DistanceOptions {
                max_n,
                max_weight,
                supports: if exhaustive { SupportMode::Exhaustive } else { SupportMode::Connected },
                ..DistanceOptions::default()
            };
            let rep = floquet::exact_distance(&sim.assign, &sim.adjacency, &sim.trajectory, &opts).map_err(lift)?;
            let phases: Vec<Value> = rep
                .phases
                .iter()
                .map(|p| json!({"round": p.round, "weight": p.weight, "witness": p.witness.to_string()}))
                .collect();
            Ok(pretty(&json!({
                "n": sim.assign.qubit_count(),
                "k": sim.trajectory.logical_count(),
                "d": rep.d,
                "d_source": floquet::DSource::Exact,
                "phases": phases,
            })))
        }
    }
}

fn table(genus: &str, orientable: bool, mode: TableMode, format: Format) -> Outcome {
    let range = catalog::parse_genus_range(genus).map_err(lift)?;
    let d_mode = match mode {
        TableMode::Exact => DMode::Exact,
        TableMode::Geo => DMode::Geometric,
        TableMode::Auto => DMode::Auto,
    };
    let rows = catalog::build_table(range, orientable, d_mode)?;
    Ok(match format {
        Format::Csv => catalog::to_csv(&rows),
        Format::Json => catalog::to_json(&rows),
    })
}

fn equiv(h: u32) -> Outcome {
    let rep = catalog::equivalence_check(h)?;
    let text = serde_json::to_string_pretty(&rep).expect("report serializes");
    if rep.all_match() {
        Ok(text)
    } else {
        println!("{text}");
        Err(Failure(format!("catalog: {} mismatch(es): {}", rep.mismatches.len(), rep.mismatches.join("; "))))
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Geom { sig } => geom(&sig),
        Command::Complex { action: ComplexAction::Build { genus, orientable, derive } } => build(genus, orientable, derive),
        Command::Color { input } => color(&input),
        Command::Isg { input, rounds } => isg(&input, rounds),
        Command::Distance { input, mode, max_n, max_weight, exhaustive } => {
            distance(&input, mode, max_n, max_weight, exhaustive)
        }
        Command::Table { genus, orientable, mode, format } => table(&genus, orientable, mode, format),
        Command::Equiv { genus } => equiv(genus),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            if out.ends_with('\n') {
                print!("{out}");
            } else {
                println!("{out}");
            }
            ExitCode::SUCCESS
        }
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
