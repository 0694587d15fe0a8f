//! Representation improvement for quasi-cyclic matrices: repeatedly add a
//! low-weight dual word together with its quasi-cyclic shifts, then
//! re-evaluate the LP decoder.

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{check_dim, Error, Result};
use crate::gf2::{enumerate_dual_words, BinaryMatrix, BinaryVector, DEFAULT_ENUMERATION_LIMIT};
use crate::lpdecoder::{run_experiment, ExperimentConfig};
use crate::polytope::{lp_pseudocodewords, DEFAULT_ROW_WEIGHT_CAP, DEFAULT_VERTEX_DIM};

/// The shifts of `c` by multiples of `n0`, without repeats, in shift order.
pub fn qc_orbit(c: &BinaryVector, n0: usize) -> Vec<BinaryVector> {
    let n = c.len();
    let size = n / n.gcd(&n0);
    let mut orbit: Vec<BinaryVector> = Vec::with_capacity(size);
    for k in 0..size {
        let s = c.cyclic_shift((k * n0) as i64);
        if !orbit.contains(&s) {
            orbit.push(s);
        }
    }
    orbit
}

/// Appends every shift of `c` by a multiple of `n0` that is not already a
/// row. Each appended word must lie in the row space of `H`.
pub fn add_qc_shifts(h: &BinaryMatrix, c: &BinaryVector, n0: usize) -> Result<BinaryMatrix> {
    check_dim(h.num_cols(), c.len())?;
    if n0 == 0 {
        return Err(Error::InvalidInput("n0 must be positive".into()));
    }
    let mut out = h.clone();
    for s in qc_orbit(c, n0) {
        if out.contains_row(&s) {
            continue;
        }
        if !h.row_space_contains(&s) {
            return Err(Error::NotInDual);
        }
        out.push_row(s)?;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LpPerformance {
    pub fer: f64,
    pub fractional_rate: f64,
}

/// Monte Carlo frame error rate with the all-zero word transmitted.
pub fn evaluate_lp_performance(
    h: &BinaryMatrix,
    p: f64,
    trials: u64,
    seed: u64,
    weight_cap: usize,
) -> Result<LpPerformance> {
    let report = run_experiment(
        h,
        &ExperimentConfig {
            p,
            trials,
            seed,
            ml_check: false,
            n0: None,
            weight_cap,
        },
    )?;
    let rate = |k: u64| if trials == 0 { 0.0 } else { k as f64 / trials as f64 };
    Ok(LpPerformance {
        fer: report.fer,
        fractional_rate: rate(report.fractional_count),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Target {
    /// At most this many vertices of `R(H)` that are not codewords.
    MaxNonCodewordVertices { count: usize },
    /// Frame error rate at most `fer` at crossover `p`.
    MaxFer { fer: f64, p: f64, trials: u64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImproveOptions {
    pub weight_cap: usize,
    pub vertex_bound: usize,
    /// Heaviest dual word considered; defaults to the code length.
    pub max_weight: Option<usize>,
}

impl Default for ImproveOptions {
    fn default() -> Self {
        Self {
            weight_cap: DEFAULT_ROW_WEIGHT_CAP,
            vertex_bound: DEFAULT_VERTEX_DIM,
            max_weight: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub rows: usize,
    pub vertex_count: Option<usize>,
    pub non_codeword_vertex_count: Option<usize>,
    pub fer_estimate: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Iteration {
    pub added_word: String,
    pub added_word_hex: String,
    pub orbit_size: usize,
    pub rows_added: usize,
    #[serde(flatten)]
    pub evaluation: Evaluation,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ImprovementReport {
    pub n0: usize,
    pub budget: usize,
    pub target: Target,
    pub initial: Evaluation,
    pub iterations: Vec<Iteration>,
    #[serde(with = "matrix_rows")]
    pub final_matrix: BinaryMatrix,
    pub met_target: bool,
}

mod matrix_rows {
    use super::*;

    pub fn serialize<S: Serializer>(h: &BinaryMatrix, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<String> = h.rows().iter().map(|r| r.to_string()).collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BinaryMatrix, D::Error> {
        use serde::de::Error as _;
        let rows = Vec::<String>::deserialize(d)?;
        let rows = rows
            .iter()
            .map(|r| BinaryVector::parse(r))
            .collect::<crate::Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        BinaryMatrix::from_rows(rows).map_err(D::Error::custom)
    }
}

fn evaluate(h: &BinaryMatrix, target: &Target, options: &ImproveOptions) -> Result<Evaluation> {
    let mut eval = Evaluation {
        rows: h.num_rows(),
        vertex_count: None,
        non_codeword_vertex_count: None,
        fer_estimate: None,
    };
    let census_required = matches!(target, Target::MaxNonCodewordVertices { .. });
    if census_required || h.num_cols() <= options.vertex_bound {
        let census = lp_pseudocodewords(h, options.weight_cap, options.vertex_bound)?;
        eval.vertex_count = Some(census.total());
        eval.non_codeword_vertex_count = Some(census.non_codewords.len());
    }
    if let Target::MaxFer { p, trials, seed, .. } = target {
        eval.fer_estimate =
            Some(evaluate_lp_performance(h, *p, *trials, *seed, options.weight_cap)?.fer);
    }
    Ok(eval)
}

fn met(target: &Target, eval: &Evaluation) -> bool {
    match target {
        Target::MaxNonCodewordVertices { count } => {
            eval.non_codeword_vertex_count.is_some_and(|k| k <= *count)
        }
        Target::MaxFer { fer, .. } => eval.fer_estimate.is_some_and(|f| f <= *fer),
    }
}

/// The lightest dual word, lexicographically first among equals, that is
/// not a row and whose orbit is not already fully present.
pub fn next_candidate(h: &BinaryMatrix, n0: usize, max_weight: usize) -> Result<BinaryVector> {
    let words = enumerate_dual_words(h, max_weight, DEFAULT_ENUMERATION_LIMIT)?;
    words
        .into_iter()
        .filter(|w| !w.is_row)
        .map(|w| w.word)
        .find(|w| qc_orbit(w, n0).iter().any(|s| !h.contains_row(s)))
        .ok_or(Error::NoCandidate { max_weight })
}

pub fn improve_representation(
    h: &BinaryMatrix,
    n0: usize,
    target: &Target,
    budget: usize,
    options: &ImproveOptions,
) -> Result<ImprovementReport> {
    if n0 == 0 {
        return Err(Error::InvalidInput("n0 must be positive".into()));
    }
    let max_weight = options.max_weight.unwrap_or(h.num_cols());
    let initial = evaluate(h, target, options)?;
    let mut met_target = met(target, &initial);
    let mut current = h.clone();
    let mut iterations = Vec::new();
    while !met_target && iterations.len() < budget {
        let word = next_candidate(&current, n0, max_weight)?;
        let next = add_qc_shifts(&current, &word, n0)?;
        let evaluation = evaluate(&next, target, options)?;
        met_target = met(target, &evaluation);
        iterations.push(Iteration {
            added_word: word.to_string(),
            added_word_hex: word.to_hex(),
            orbit_size: qc_orbit(&word, n0).len(),
            rows_added: next.num_rows() - current.num_rows(),
            evaluation,
        });
        current = next;
    }
    Ok(ImprovementReport {
        n0,
        budget,
        target: target.clone(),
        initial,
        iterations,
        final_matrix: current,
        met_target,
    })
}
