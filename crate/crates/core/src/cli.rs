//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cone::{build_fundamental_cone, extreme_rays, DEFAULT_RAY_DIM};
use crate::constructions::RecipeFile;
use crate::error::{Error, Result};
use crate::formats::{self, MatrixFormat};
use crate::gf2::{BinaryMatrix, BinaryVector};
use crate::lpdecoder::{llr_bsc, report_csv, run_experiment, ExperimentConfig, LpDecoder, MlDecoder};
use crate::pcw::{generating_function, DEFAULT_BOX_BUDGET};
use crate::polytope::{
    build_relaxed_polytope, classify_vertices, enumerate_vertices, DEFAULT_ROW_WEIGHT_CAP,
    DEFAULT_VERTEX_DIM,
};
use crate::qcimprove::{improve_representation, ImproveOptions, Target};

const SCHEMA: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "lpcone", version, about = "Fundamental cones, relaxed polytopes and LP decoding of binary codes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MatrixFormatArg {
    Dense,
    Alist,
}

impl From<MatrixFormatArg> for MatrixFormat {
    fn from(f: MatrixFormatArg) -> Self {
        match f {
            MatrixFormatArg::Dense => MatrixFormat::Dense,
            MatrixFormatArg::Alist => MatrixFormat::Alist,
        }
    }
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Common {
    /// Output format for reports.
    #[arg(long, value_enum, default_value = "json")]
    pub format: OutputFormat,
    /// Matrix file format; by default `.alist` files are alist and all
    /// others dense.
    #[arg(long, value_enum)]
    pub matrix_format: Option<MatrixFormatArg>,
    /// Write the full output here; stdout then carries only the summary.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_ROW_WEIGHT_CAP)]
    pub row_weight_cap: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Fundamental cone inequalities and extreme rays.
    Cone {
        matrix: PathBuf,
        #[arg(long, default_value_t = DEFAULT_RAY_DIM)]
        bound_rays: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Vertices of the relaxed polytope.
    Vertices {
        matrix: PathBuf,
        #[arg(long, default_value_t = DEFAULT_VERTEX_DIM)]
        bound_vertices: usize,
        #[command(flatten)]
        common: Common,
    },
    /// LP decoding of one received word, or a Monte Carlo run.
    Decode {
        matrix: PathBuf,
        /// Received word as a 0/1 string.
        #[arg(long, conflicts_with = "random")]
        word: Option<String>,
        /// Simulate the BSC with the all-zero word sent.
        #[arg(long)]
        random: bool,
        #[arg(long, default_value_t = 0.1)]
        crossover: f64,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        /// Compare against brute-force ML decoding.
        #[arg(long)]
        ml: bool,
        /// Also check shift invariance with this shifting constraint.
        #[arg(long)]
        n0: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Build a matrix from a JSON recipe.
    Build {
        recipe: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Add low-weight dual words and their shifts until a target is met.
    Improve {
        matrix: PathBuf,
        #[arg(long)]
        n0: usize,
        /// Target: at most this many non-codeword vertices.
        #[arg(long, conflicts_with = "target_fer")]
        target_noncw: Option<usize>,
        /// Target: frame error rate at most this value at --crossover.
        #[arg(long)]
        target_fer: Option<f64>,
        #[arg(long, default_value_t = 0.05)]
        crossover: f64,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 10)]
        budget: usize,
        #[arg(long, default_value_t = DEFAULT_VERTEX_DIM)]
        bound_vertices: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Truncated generating function of the pseudocodewords.
    Genfun {
        matrix: PathBuf,
        #[arg(long = "box-B", default_value_t = 1)]
        box_b: u64,
        /// Largest number of lattice points to visit.
        #[arg(long, default_value_t = DEFAULT_BOX_BUDGET)]
        budget: u64,
        #[command(flatten)]
        common: Common,
    },
}

fn read_matrix(path: &Path, common: &Common) -> Result<BinaryMatrix> {
    formats::read_matrix(path, common.matrix_format.map(Into::into))
}

fn envelope(command: &str, config: Value, body: Value) -> Value {
    let mut out = json!({ "schema": SCHEMA, "command": command, "config": config });
    if let (Some(map), Value::Object(extra)) = (out.as_object_mut(), body) {
        map.extend(extra);
    }
    out
}

fn pretty(v: &Value) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

/// One `key: value` line per leaf, with dotted paths for nested objects.
/// Arrays are printed as compact JSON.
fn text_lines(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                text_lines(&key, child, out);
            }
        }
        Value::String(s) => out.push_str(&format!("{prefix}: {s}\n")),
        other => out.push_str(&format!("{prefix}: {other}\n")),
    }
}

fn render(common: &Common, v: &Value) -> Result<String> {
    match common.format {
        OutputFormat::Text => {
            let mut out = String::new();
            text_lines("", v, &mut out);
            Ok(out)
        }
        _ => pretty(v),
    }
}

/// Writes `full` to `--out` if given and returns what goes to stdout.
fn emit(common: &Common, summary: String, full: String) -> Result<String> {
    match &common.out {
        Some(path) => {
            std::fs::write(path, full)?;
            Ok(summary)
        }
        None => Ok(full),
    }
}

fn cmd_cone(matrix: &Path, bound_rays: usize, common: &Common) -> Result<String> {
    let h = read_matrix(matrix, common)?;
    let k = build_fundamental_cone(&h);
    let rays = extreme_rays(&k, bound_rays)?;
    let config = json!({ "matrix": matrix, "bound_rays": bound_rays, "seed": common.seed });
    let census = json!({
        "dim": k.dim,
        "inequality_count": k.inequalities.len(),
        "parity_inequality_count": k.parity_row_count(),
        "ray_count": rays.len(),
    });
    let summary = envelope("cone", config.clone(), census.clone());
    let mut full = envelope("cone", config, census);
    full["rays"] = serde_json::to_value(&rays)?["rays"].take();
    full["inequalities"] = serde_json::to_value(&k)?["inequalities"].take();
    emit(common, render(common, &summary)?, render(common, &full)?)
}

fn cmd_vertices(matrix: &Path, bound: usize, common: &Common) -> Result<String> {
    let h = read_matrix(matrix, common)?;
    let p = build_relaxed_polytope(&h, common.row_weight_cap)?;
    let vertices = enumerate_vertices(&p, bound)?;
    let census = classify_vertices(&h, &vertices);
    let config = json!({
        "matrix": matrix,
        "bound_vertices": bound,
        "row_weight_cap": common.row_weight_cap,
        "seed": common.seed,
    });
    let counts = json!({
        "dim": vertices.dim,
        "inequality_count": p.inequalities.len(),
        "total": vertices.len(),
        "integral": vertices.integral_count(),
        "fractional": vertices.len() - vertices.integral_count(),
        "codewords": census.codewords.len(),
        "non_codewords": census.non_codewords.len(),
    });
    let summary = render(common, &envelope("vertices", config.clone(), counts.clone()))?;
    let full = match common.format {
        OutputFormat::Csv => vertices.to_csv(),
        _ => {
            let mut full = envelope("vertices", config, counts);
            full["vertices"] = serde_json::to_value(&vertices)?["vertices"].take();
            render(common, &full)?
        }
    };
    emit(common, summary, full)
}

#[allow(clippy::too_many_arguments)]
fn cmd_decode(
    matrix: &Path,
    word: Option<&str>,
    random: bool,
    crossover: f64,
    trials: u64,
    ml: bool,
    n0: Option<usize>,
    common: &Common,
) -> Result<String> {
    let h = read_matrix(matrix, common)?;
    if random {
        let config = ExperimentConfig {
            p: crossover,
            trials,
            seed: common.seed,
            ml_check: ml,
            n0,
            weight_cap: common.row_weight_cap,
        };
        let report = run_experiment(&h, &config)?;
        let mut body = serde_json::to_value(&report)?;
        let per_orbit = body["per_orbit"].take();
        if let Some(map) = body.as_object_mut() {
            map.remove("per_orbit");
        }
        let cfg = json!({ "matrix": matrix, "experiment": config });
        let summary = envelope("decode", cfg.clone(), body.clone());
        let full = match common.format {
            OutputFormat::Csv => report_csv(&report),
            _ => {
                let mut full = envelope("decode", cfg, body);
                full["per_orbit"] = per_orbit;
                render(common, &full)?
            }
        };
        return emit(common, render(common, &summary)?, full);
    }
    let word = match word {
        Some(w) => BinaryVector::parse(w)?,
        None => BinaryVector::zeros(h.num_cols()),
    };
    let gamma = llr_bsc(&word, crossover)?;
    let result = LpDecoder::new(&h, common.row_weight_cap)?.decode(&gamma)?;
    let mut body = json!({ "word": word.to_string(), "result": result });
    if ml {
        let (c, cost) = MlDecoder::new(&h)?.decode(&gamma)?;
        body["ml"] = json!({ "codeword": c.to_string(), "objective": cost.to_string() });
    }
    let cfg = json!({ "matrix": matrix, "crossover": crossover, "seed": common.seed });
    let out = render(common, &envelope("decode", cfg, body))?;
    emit(common, out.clone(), out)
}

fn cmd_build(recipe: &Path, common: &Common) -> Result<String> {
    let text = std::fs::read_to_string(recipe)?;
    let file = RecipeFile::parse(&text)?;
    let h = file.recipe.build()?;
    let format = common
        .matrix_format
        .map(Into::into)
        .or_else(|| common.out.as_deref().map(MatrixFormat::from_path))
        .unwrap_or(MatrixFormat::Dense);
    let matrix_text = formats::write(&h, format);
    let summary = envelope(
        "build",
        json!({ "recipe": file }),
        json!({ "rows": h.num_rows(), "cols": h.num_cols(), "weight": h.weight() }),
    );
    emit(common, render(common, &summary)?, matrix_text)
}

#[allow(clippy::too_many_arguments)]
fn cmd_improve(
    matrix: &Path,
    n0: usize,
    target_noncw: Option<usize>,
    target_fer: Option<f64>,
    crossover: f64,
    trials: u64,
    budget: usize,
    bound_vertices: usize,
    common: &Common,
) -> Result<String> {
    let h = read_matrix(matrix, common)?;
    let target = match (target_noncw, target_fer) {
        (Some(count), None) => Target::MaxNonCodewordVertices { count },
        (None, Some(fer)) => Target::MaxFer {
            fer,
            p: crossover,
            trials,
            seed: common.seed,
        },
        _ => {
            return Err(Error::InvalidInput(
                "give exactly one of --target-noncw and --target-fer".into(),
            ))
        }
    };
    let options = ImproveOptions {
        weight_cap: common.row_weight_cap,
        vertex_bound: bound_vertices,
        max_weight: None,
    };
    let report = improve_representation(&h, n0, &target, budget, &options)?;
    let cfg = json!({ "matrix": matrix, "seed": common.seed, "bound_vertices": bound_vertices });
    let full = envelope("improve", cfg.clone(), serde_json::to_value(&report)?);
    let summary = envelope(
        "improve",
        cfg,
        json!({
            "met_target": report.met_target,
            "iterations": report.iterations.len(),
            "final_rows": report.final_matrix.num_rows(),
        }),
    );
    emit(common, render(common, &summary)?, render(common, &full)?)
}

fn cmd_genfun(matrix: &Path, box_b: u64, budget: u64, common: &Common) -> Result<String> {
    let h = read_matrix(matrix, common)?;
    let f = generating_function(&h, box_b, budget)?;
    let cfg = json!({ "matrix": matrix, "box_B": box_b, "budget": budget, "seed": common.seed });
    let summary = envelope("genfun", cfg.clone(), json!({ "vars": f.num_vars, "terms": f.len() }));
    let full = envelope("genfun", cfg, json!({ "genfun": f }));
    let full = match common.format {
        OutputFormat::Text => render(common, &full)?,
        _ => serde_json::to_string(&full)? + "\n",
    };
    emit(common, render(common, &summary)?, full)
}

pub fn execute(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Cone {
            matrix,
            bound_rays,
            common,
        } => cmd_cone(matrix, *bound_rays, common),
        Command::Vertices {
            matrix,
            bound_vertices,
            common,
        } => cmd_vertices(matrix, *bound_vertices, common),
        Command::Decode {
            matrix,
            word,
            random,
            crossover,
            trials,
            ml,
            n0,
            common,
        } => cmd_decode(matrix, word.as_deref(), *random, *crossover, *trials, *ml, *n0, common),
        Command::Build { recipe, common } => cmd_build(recipe, common),
        Command::Improve {
            matrix,
            n0,
            target_noncw,
            target_fer,
            crossover,
            trials,
            budget,
            bound_vertices,
            common,
        } => cmd_improve(
            matrix,
            *n0,
            *target_noncw,
            *target_fer,
            *crossover,
            *trials,
            *budget,
            *bound_vertices,
            common,
        ),
        Command::Genfun {
            matrix,
            box_b,
            budget,
            common,
        } => cmd_genfun(matrix, *box_b, *budget, common),
    }
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(stderr, "{e}")
            } else {
                write!(stdout, "{e}")
            };
            return code;
        }
    };
    match execute(&cli) {
        Ok(text) => {
            let _ = stdout.write_all(text.as_bytes());
            0
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
