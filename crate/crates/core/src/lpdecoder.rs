//! LP decoding over `R(H)` with an exact simplex, brute-force ML decoding,
//! BSC simulation, and the shift-equivariance experiment for quasi-cyclic
//! matrices.

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::gf2::{
    cyclic_shift, enumerate_codewords, is_quasi_cyclic, mat_vec_mod2, BinaryMatrix, BinaryVector,
    DEFAULT_ENUMERATION_LIMIT,
};
use crate::polytope::{build_relaxed_polytope, enumerate_vertices, VertexSet, DEFAULT_VERTEX_DIM};
use crate::rational::{self, dot, Rational};
use crate::simplex;

/// Denominator cap used when rationalizing LLRs.
pub const LLR_DENOMINATOR_CAP: u64 = 1_000_000;

/// Real LLRs together with the exact rationals the decoder optimizes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LlrVector {
    pub values: Vec<f64>,
    #[serde(with = "rational::serde_vec")]
    pub exact: Vec<Rational>,
}

impl LlrVector {
    pub fn from_exact(exact: Vec<Rational>) -> Self {
        let values = exact.iter().map(rational::to_f64).collect();
        Self { values, exact }
    }

    pub fn len(&self) -> usize {
        self.exact.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exact.is_empty()
    }

    pub fn negated(&self) -> Self {
        Self {
            values: self.values.iter().map(|v| -v).collect(),
            exact: self.exact.iter().map(|v| -v).collect(),
        }
    }
}

fn check_probability(p: f64) -> Result<()> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidInput(format!("crossover probability {p} is outside (0, 1)")));
    }
    Ok(())
}

/// `gamma_i = log((1-p)/p)` for a received 0 and its negative for a received 1.
/// The magnitude is rationalized once, so the exact values are symmetric.
pub fn llr_bsc(w: &BinaryVector, p: f64) -> Result<LlrVector> {
    check_probability(p)?;
    let magnitude = ((1.0 - p) / p).ln();
    let exact_magnitude = rational::rationalize(magnitude, LLR_DENOMINATOR_CAP)?;
    let mut values = Vec::with_capacity(w.len());
    let mut exact = Vec::with_capacity(w.len());
    for bit in w.bits() {
        if bit == 1 {
            values.push(-magnitude);
            exact.push(-exact_magnitude.clone());
        } else {
            values.push(magnitude);
            exact.push(exact_magnitude.clone());
        }
    }
    Ok(LlrVector { values, exact })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DecodeStatus {
    Codeword,
    Fractional,
    Tie,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecodeResult {
    #[serde(with = "rational::serde_vec")]
    pub optimum: Vec<Rational>,
    #[serde(with = "rational::serde_scalar")]
    pub objective: Rational,
    pub integral: bool,
    pub status: DecodeStatus,
}

impl DecodeResult {
    /// The output as a binary word, when it is integral.
    pub fn word(&self) -> Option<BinaryVector> {
        if !self.integral {
            return None;
        }
        let bits: Option<Vec<u8>> = self
            .optimum
            .iter()
            .map(|v| v.to_integer().to_u8().filter(|&b| b <= 1))
            .collect();
        bits.map(|b| BinaryVector::from_bits(&b))
    }

    pub fn is_zero(&self) -> bool {
        self.optimum.iter().all(Zero::is_zero)
    }
}

/// LP decoder for a fixed matrix; the constraint system is built once.
#[derive(Clone, Debug)]
pub struct LpDecoder {
    h: BinaryMatrix,
    a: Vec<Vec<Rational>>,
    b: Vec<Rational>,
}

impl LpDecoder {
    pub fn new(h: &BinaryMatrix, weight_cap: usize) -> Result<Self> {
        let polytope = build_relaxed_polytope(h, weight_cap)?;
        let (a, b) = polytope
            .inequalities
            .into_iter()
            // x >= 0 is implicit in the simplex
            .filter(|hs| !(hs.bound.is_zero() && hs.coeffs.iter().all(|c| !c.is_positive())))
            .map(|hs| (hs.coeffs, hs.bound))
            .unzip();
        Ok(Self { h: h.clone(), a, b })
    }

    pub fn matrix(&self) -> &BinaryMatrix {
        &self.h
    }

    pub fn decode(&self, gamma: &LlrVector) -> Result<DecodeResult> {
        check_dim(self.h.num_cols(), gamma.len())?;
        let solution = simplex::solve(&self.a, &self.b, &gamma.exact)?;
        let integral = rational::is_integral(&solution.x);
        let status = if solution.tie {
            DecodeStatus::Tie
        } else if integral && is_codeword_point(&self.h, &solution.x) {
            DecodeStatus::Codeword
        } else {
            DecodeStatus::Fractional
        };
        Ok(DecodeResult {
            optimum: solution.x,
            objective: solution.objective,
            integral,
            status,
        })
    }
}

fn is_codeword_point(h: &BinaryMatrix, x: &[Rational]) -> bool {
    let ints: Option<Vec<u64>> = x.iter().map(|v| v.to_integer().to_u64()).collect();
    ints.is_some_and(|v| mat_vec_mod2(h, &v).is_ok_and(|s| s.is_zero()))
}

pub fn lp_decode(h: &BinaryMatrix, gamma: &LlrVector, weight_cap: usize) -> Result<DecodeResult> {
    LpDecoder::new(h, weight_cap)?.decode(gamma)
}

/// Brute-force ML decoder over an explicit codeword list.
#[derive(Clone, Debug)]
pub struct MlDecoder {
    codewords: Vec<BinaryVector>,
}

impl MlDecoder {
    pub fn new(h: &BinaryMatrix) -> Result<Self> {
        Ok(Self {
            codewords: enumerate_codewords(h, DEFAULT_ENUMERATION_LIMIT)?,
        })
    }

    /// Minimum-cost codeword; ties go to the lexicographically smallest.
    pub fn decode(&self, gamma: &LlrVector) -> Result<(BinaryVector, Rational)> {
        let mut best: Option<(&BinaryVector, Rational)> = None;
        for c in &self.codewords {
            check_dim(c.len(), gamma.len())?;
            let cost: Rational = c.support().iter().map(|&i| &gamma.exact[i]).sum();
            let better = match &best {
                None => true,
                Some((b, bc)) => cost < *bc || (cost == *bc && c < *b),
            };
            if better {
                best = Some((c, cost));
            }
        }
        let (c, cost) = best.expect("a code always contains the zero word");
        Ok((c.clone(), cost))
    }
}

pub fn ml_decode(h: &BinaryMatrix, gamma: &LlrVector) -> Result<BinaryVector> {
    Ok(MlDecoder::new(h)?.decode(gamma)?.0)
}

/// Flips each bit of `c` independently with probability `p`.
pub fn bsc_sample(c: &BinaryVector, p: f64, seed: u64) -> Result<BinaryVector> {
    check_probability(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = c.clone();
    for i in 0..c.len() {
        if rng.gen_bool(p) {
            out.flip(i);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitRecord {
    /// The base error pattern as a 0/1 string.
    pub error: String,
    pub orbit_size: usize,
    pub tie: bool,
    pub objectives_equal: bool,
    pub statuses_constant: bool,
    pub success_constant: bool,
    pub outputs_shift_consistent: bool,
    /// For tie orbits: whether the optimal vertex sets are shifts of each
    /// other. Absent when the vertex set was not enumerated.
    pub optimal_sets_consistent: Option<bool>,
}

impl OrbitRecord {
    pub fn is_violation(&self) -> bool {
        if !self.objectives_equal || self.optimal_sets_consistent == Some(false) {
            return true;
        }
        !self.tie && !(self.statuses_constant && self.success_constant && self.outputs_shift_consistent)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftReport {
    pub n0: usize,
    pub orbits: Vec<OrbitRecord>,
    pub tie_orbits: usize,
    pub violations: usize,
}

fn optimal_vertices(vertices: &VertexSet, gamma: &[Rational]) -> Vec<Vec<Rational>> {
    let costs: Vec<Rational> = vertices.vertices.iter().map(|v| dot(gamma, &v.coords)).collect();
    let Some(best) = costs.iter().min() else {
        return Vec::new();
    };
    let mut out: Vec<Vec<Rational>> = vertices
        .vertices
        .iter()
        .zip(&costs)
        .filter(|(_, c)| *c == best)
        .map(|(v, _)| v.coords.clone())
        .collect();
    out.sort();
    out
}

/// Shared state for orbit checks on a quasi-cyclic matrix.
pub struct ShiftChecker {
    n0: usize,
    decoder: LpDecoder,
    vertices: Option<VertexSet>,
}

impl ShiftChecker {
    pub fn new(h: &BinaryMatrix, n0: usize, weight_cap: usize) -> Result<Self> {
        if n0 == 0 || !is_quasi_cyclic(h, n0) {
            return Err(Error::NotQuasiCyclic { n0 });
        }
        let decoder = LpDecoder::new(h, weight_cap)?;
        let vertices = if h.num_cols() <= DEFAULT_VERTEX_DIM {
            Some(enumerate_vertices(&build_relaxed_polytope(h, weight_cap)?, DEFAULT_VERTEX_DIM)?)
        } else {
            None
        };
        Ok(Self { n0, decoder, vertices })
    }

    pub fn orbit_size(&self) -> usize {
        let n = self.decoder.h.num_cols();
        n / n.gcd(&self.n0)
    }

    /// Decodes every shift of `e` by multiples of `n0` (all-zero codeword
    /// sent) and compares the results.
    pub fn check(&self, e: &BinaryVector, p: f64) -> Result<OrbitRecord> {
        let size = self.orbit_size();
        let mut results = Vec::with_capacity(size);
        let mut gammas = Vec::with_capacity(size);
        for k in 0..size {
            let shift = (k * self.n0) as i64;
            let gamma = llr_bsc(&e.cyclic_shift(shift), p)?;
            results.push(self.decoder.decode(&gamma)?);
            gammas.push(gamma);
        }
        let base = &results[0];
        let tie = results.iter().any(|r| r.status == DecodeStatus::Tie);
        let objectives_equal = results.iter().all(|r| r.objective == base.objective);
        let statuses_constant = results.iter().all(|r| r.status == base.status);
        let success = |r: &DecodeResult| r.status == DecodeStatus::Codeword && r.is_zero();
        let success_constant = results.iter().all(|r| success(r) == success(base));
        let outputs_shift_consistent = results.iter().enumerate().all(|(k, r)| {
            r.optimum == cyclic_shift(&base.optimum, (k * self.n0) as i64)
        });
        let optimal_sets_consistent = match (&self.vertices, tie) {
            (Some(vertices), true) => {
                let base_set = optimal_vertices(vertices, &gammas[0].exact);
                Some(gammas.iter().enumerate().all(|(k, g)| {
                    let mut shifted: Vec<Vec<Rational>> = base_set
                        .iter()
                        .map(|v| cyclic_shift(v, (k * self.n0) as i64))
                        .collect();
                    shifted.sort();
                    shifted == optimal_vertices(vertices, &g.exact)
                }))
            }
            _ => None,
        };
        Ok(OrbitRecord {
            error: e.to_string(),
            orbit_size: size,
            tie,
            objectives_equal,
            statuses_constant,
            success_constant,
            outputs_shift_consistent,
            optimal_sets_consistent,
        })
    }
}

pub fn shift_equivariance_experiment(
    h: &BinaryMatrix,
    n0: usize,
    errors: &[BinaryVector],
    p: f64,
    weight_cap: usize,
) -> Result<ShiftReport> {
    let checker = ShiftChecker::new(h, n0, weight_cap)?;
    let orbits = errors
        .par_iter()
        .map(|e| {
            check_dim(h.num_cols(), e.len())?;
            checker.check(e, p)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(summarize_orbits(n0, orbits))
}

fn summarize_orbits(n0: usize, orbits: Vec<OrbitRecord>) -> ShiftReport {
    ShiftReport {
        n0,
        tie_orbits: orbits.iter().filter(|o| o.tie).count(),
        violations: orbits.iter().filter(|o| o.is_violation()).count(),
        orbits,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub p: f64,
    pub trials: u64,
    pub seed: u64,
    /// Cross-check every trial against brute-force ML decoding.
    pub ml_check: bool,
    /// Also run the shift-orbit check with this shifting constraint.
    pub n0: Option<usize>,
    pub weight_cap: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MlCheck {
    pub integral_outputs: u64,
    pub integral_mismatches: u64,
    pub objective_violations: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub seed: u64,
    pub p: f64,
    pub trials: u64,
    /// Trials whose output was not the transmitted all-zero word; ties and
    /// fractional outputs count as failures.
    pub failures: u64,
    pub fractional_count: u64,
    pub tie_count: u64,
    pub fer: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ml: Option<MlCheck>,
    pub per_orbit: Vec<OrbitRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shift_violations: Option<usize>,
}

struct TrialOutcome {
    status: DecodeStatus,
    success: bool,
    ml: Option<(bool, bool, bool)>,
    orbit: Option<OrbitRecord>,
}

/// Error pattern for one Monte Carlo trial; the all-zero word is sent.
pub fn trial_error(n: usize, p: f64, seed: u64, trial: u64) -> Result<BinaryVector> {
    bsc_sample(&BinaryVector::zeros(n), p, seed ^ trial)
}

/// Monte Carlo over the BSC with all-zero transmission. Trials run in
/// parallel with per-trial seeds `seed ^ trial`; results are reduced in
/// trial order.
pub fn run_experiment(h: &BinaryMatrix, config: &ExperimentConfig) -> Result<ExperimentReport> {
    check_probability(config.p)?;
    let decoder = LpDecoder::new(h, config.weight_cap)?;
    let ml = config.ml_check.then(|| MlDecoder::new(h)).transpose()?;
    let checker = config
        .n0
        .map(|n0| ShiftChecker::new(h, n0, config.weight_cap))
        .transpose()?;
    let n = h.num_cols();
    let outcomes = (0..config.trials)
        .into_par_iter()
        .map(|trial| {
            let e = trial_error(n, config.p, config.seed, trial)?;
            let gamma = llr_bsc(&e, config.p)?;
            let result = decoder.decode(&gamma)?;
            let success = result.status == DecodeStatus::Codeword && result.is_zero();
            let ml = match &ml {
                Some(ml) => {
                    let (word, cost) = ml.decode(&gamma)?;
                    let integral = result.status == DecodeStatus::Codeword;
                    let mismatch = integral && result.word().as_ref() != Some(&word);
                    Some((integral, mismatch, result.objective > cost))
                }
                None => None,
            };
            let orbit = match &checker {
                Some(c) => Some(c.check(&e, config.p)?),
                None => None,
            };
            Ok(TrialOutcome {
                status: result.status,
                success,
                ml,
                orbit,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let count = |f: &dyn Fn(&TrialOutcome) -> bool| outcomes.iter().filter(|o| f(o)).count() as u64;
    let failures = count(&|o| !o.success);
    let ml_summary = ml.as_ref().map(|_| MlCheck {
        integral_outputs: count(&|o| o.ml.is_some_and(|m| m.0)),
        integral_mismatches: count(&|o| o.ml.is_some_and(|m| m.1)),
        objective_violations: count(&|o| o.ml.is_some_and(|m| m.2)),
    });
    let orbits: Vec<OrbitRecord> = outcomes.iter().filter_map(|o| o.orbit.clone()).collect();
    let shift_violations = config.n0.map(|_| orbits.iter().filter(|o| o.is_violation()).count());
    Ok(ExperimentReport {
        seed: config.seed,
        p: config.p,
        trials: config.trials,
        failures,
        fractional_count: count(&|o| o.status == DecodeStatus::Fractional),
        tie_count: count(&|o| o.status == DecodeStatus::Tie),
        fer: if config.trials == 0 {
            0.0
        } else {
            failures as f64 / config.trials as f64
        },
        ml: ml_summary,
        per_orbit: orbits,
        shift_violations,
    })
}

/// One CSV line per report field, for plotting.
pub fn report_csv(report: &ExperimentReport) -> String {
    format!(
        "seed,p,trials,failures,fractional_count,tie_count,fer\n{},{},{},{},{},{},{}\n",
        report.seed,
        report.p,
        report.trials,
        report.failures,
        report.fractional_count,
        report.tie_count,
        report.fer
    )
}
