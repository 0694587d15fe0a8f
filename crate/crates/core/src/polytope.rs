//! The relaxed polytope `R(H)`, its vertices, and the codeword polytope.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::dd;
use crate::error::{check_dim, Error, Result};
use crate::gf2::{enumerate_codewords, BinaryMatrix, DEFAULT_ENUMERATION_LIMIT};
use crate::rational::{self, dot, int, Rational};

pub const DEFAULT_VERTEX_DIM: usize = 16;
pub const DEFAULT_ROW_WEIGHT_CAP: usize = 20;

/// `coeffs . x <= bound`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfSpace {
    #[serde(with = "rational::serde_vec")]
    pub coeffs: Vec<Rational>,
    #[serde(with = "rational::serde_scalar")]
    pub bound: Rational,
}

impl HalfSpace {
    pub fn holds(&self, x: &[Rational]) -> bool {
        dot(&self.coeffs, x) <= self.bound
    }

    pub fn is_active(&self, x: &[Rational]) -> bool {
        dot(&self.coeffs, x) == self.bound
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeSystem {
    pub dim: usize,
    pub inequalities: Vec<HalfSpace>,
}

impl PolytopeSystem {
    /// Adds `0 <= x_i <= 1` for every coordinate after the given rows.
    pub fn with_box(dim: usize, mut rows: Vec<HalfSpace>) -> Result<Self> {
        for row in &rows {
            check_dim(dim, row.coeffs.len())?;
        }
        for i in 0..dim {
            let mut upper = vec![Rational::zero(); dim];
            upper[i] = int(1);
            let mut lower = vec![Rational::zero(); dim];
            lower[i] = int(-1);
            rows.push(HalfSpace { coeffs: upper, bound: int(1) });
            rows.push(HalfSpace { coeffs: lower, bound: int(0) });
        }
        Ok(Self { dim, inequalities: rows })
    }

    pub fn contains(&self, x: &[Rational]) -> Result<bool> {
        check_dim(self.dim, x.len())?;
        Ok(self.inequalities.iter().all(|h| h.holds(x)))
    }

    /// Rank of the constraints tight at `x`.
    pub fn active_rank(&self, x: &[Rational]) -> usize {
        let active: Vec<Vec<Rational>> = self
            .inequalities
            .iter()
            .filter(|h| h.is_active(x))
            .map(|h| h.coeffs.clone())
            .collect();
        rational::rank(&active)
    }

    /// Number of inequalities that are not box constraints.
    pub fn parity_row_count(&self) -> usize {
        self.inequalities.len() - 2 * self.dim
    }
}

/// Odd-subset inequalities of every row, then the unit box.
pub fn build_relaxed_polytope(h: &BinaryMatrix, weight_cap: usize) -> Result<PolytopeSystem> {
    let n = h.num_cols();
    let mut rows = Vec::new();
    for row in h.rows() {
        let support = row.support();
        let w = support.len();
        if w > weight_cap {
            return Err(Error::BoundExceeded {
                what: "row weight",
                limit: weight_cap,
                actual: w,
            });
        }
        if w == 0 {
            continue;
        }
        for mask in 0u64..(1u64 << w) {
            let size = mask.count_ones() as i64;
            if size % 2 == 0 {
                continue;
            }
            let mut coeffs = vec![Rational::zero(); n];
            for (k, &i) in support.iter().enumerate() {
                coeffs[i] = if mask >> k & 1 == 1 { int(1) } else { int(-1) };
            }
            rows.push(HalfSpace { coeffs, bound: int(size - 1) });
        }
    }
    PolytopeSystem::with_box(n, rows)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vertex {
    #[serde(with = "rational::serde_vec")]
    pub coords: Vec<Rational>,
    pub integral: bool,
}

impl Vertex {
    pub fn new(coords: Vec<Rational>) -> Self {
        let integral = rational::is_integral(&coords);
        Self { coords, integral }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexSet {
    pub dim: usize,
    pub vertices: Vec<Vertex>,
}

impl VertexSet {
    fn from_points(dim: usize, mut points: Vec<Vec<Rational>>) -> Self {
        points.sort();
        points.dedup();
        Self {
            dim,
            vertices: points.into_iter().map(Vertex::new).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn integral_count(&self) -> usize {
        self.vertices.iter().filter(|v| v.integral).count()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.vertices
            .binary_search_by(|v| v.coords.as_slice().cmp(x))
            .is_ok()
    }

    /// Decimal CSV (lossy); one row per vertex plus an `integral` column.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("# lossy decimal export, 12 significant digits\n");
        let header: Vec<String> = (0..self.dim).map(|i| format!("x{i}")).collect();
        let _ = writeln!(s, "{},integral", header.join(","));
        for v in &self.vertices {
            let cells: Vec<String> = v.coords.iter().map(rational::to_decimal).collect();
            let _ = writeln!(s, "{},{}", cells.join(","), v.integral);
        }
        s
    }
}

/// Vertices via double description on the homogenization
/// `{(x, t) >= 0 : b t - a . x >= 0}`; rays with `t > 0` are the vertices.
pub fn enumerate_vertices(p: &PolytopeSystem, bound: usize) -> Result<VertexSet> {
    if p.dim > bound {
        return Err(Error::BoundExceeded {
            what: "polytope dimension",
            limit: bound,
            actual: p.dim,
        });
    }
    let dim = p.dim + 1;
    let mut rows: Vec<Vec<i128>> = Vec::new();
    for h in &p.inequalities {
        let mut row: Vec<Rational> = h.coeffs.iter().map(|c| -c).collect();
        row.push(h.bound.clone());
        let prim = rational::primitive(&row);
        let nonzero: Vec<&BigInt> = prim.iter().filter(|v| !v.is_zero()).collect();
        // x_i >= 0 is already part of the orthant; 0 <= b is vacuous
        if nonzero.is_empty() || (nonzero.len() == 1 && nonzero[0].is_positive()) {
            continue;
        }
        let converted = prim
            .iter()
            .map(|v| {
                v.to_i128()
                    .ok_or_else(|| Error::Numerical("inequality coefficient exceeds 128 bits".into()))
            })
            .collect::<Result<Vec<i128>>>()?;
        rows.push(converted);
    }
    let mut unique = rows.clone();
    unique.sort();
    unique.dedup();
    unique.sort_by_key(|r| r.iter().filter(|&&v| v != 0).count());
    let rays = dd::extreme_rays(dim, &unique)?;
    let mut points = Vec::new();
    for r in rays {
        let t = r[p.dim];
        if t == 0 {
            return Err(Error::InvalidInput("polytope is unbounded".into()));
        }
        points.push(
            r[..p.dim]
                .iter()
                .map(|&x| Rational::new(BigInt::from(x), BigInt::from(t)))
                .collect(),
        );
    }
    Ok(VertexSet::from_points(p.dim, points))
}

/// Vertices of `conv(C(H))`: the codewords as 0/1 vectors.
pub fn codeword_polytope(h: &BinaryMatrix) -> Result<VertexSet> {
    let points = enumerate_codewords(h, DEFAULT_ENUMERATION_LIMIT)?
        .iter()
        .map(|c| c.to_rationals())
        .collect();
    Ok(VertexSet::from_points(h.num_cols(), points))
}

/// Vertices of `R(H)` split into codewords and the rest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PseudocodewordCensus {
    pub dim: usize,
    pub codewords: Vec<Vertex>,
    pub non_codewords: Vec<Vertex>,
}

impl PseudocodewordCensus {
    pub fn total(&self) -> usize {
        self.codewords.len() + self.non_codewords.len()
    }
}

fn is_codeword_vertex(h: &BinaryMatrix, v: &Vertex) -> bool {
    if !v.integral {
        return false;
    }
    let Some(ints) = v
        .coords
        .iter()
        .map(|c| c.to_integer().to_u64())
        .collect::<Option<Vec<u64>>>()
    else {
        return false;
    };
    ints.iter().all(|&x| x <= 1)
        && crate::gf2::mat_vec_mod2(h, &ints).is_ok_and(|s| s.is_zero())
}

pub fn classify_vertices(h: &BinaryMatrix, vertices: &VertexSet) -> PseudocodewordCensus {
    let (codewords, non_codewords) = vertices
        .vertices
        .iter()
        .cloned()
        .partition(|v| is_codeword_vertex(h, v));
    PseudocodewordCensus {
        dim: vertices.dim,
        codewords,
        non_codewords,
    }
}

pub fn lp_pseudocodewords(
    h: &BinaryMatrix,
    weight_cap: usize,
    vertex_bound: usize,
) -> Result<PseudocodewordCensus> {
    let p = build_relaxed_polytope(h, weight_cap)?;
    let vertices = enumerate_vertices(&p, vertex_bound)?;
    Ok(classify_vertices(h, &vertices))
}
