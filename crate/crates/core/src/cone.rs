//! The fundamental cone `K(H)` as an exact homogeneous inequality system, its
//! extreme rays, and the composition rules for stacked, block-diagonal and
//! block-row parity-check matrices.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::dd;
use crate::error::{check_dim, Error, Result};
use crate::gf2::{BinaryMatrix, BinaryVector};
use crate::rational::{self, dot, int, is_nonnegative, Rational};

/// Default dimension bound for extreme-ray enumeration.
pub const DEFAULT_RAY_DIM: usize = 20;

/// A homogeneous system `a . v >= 0`. The `dim` nonnegativity rows are always
/// present; every stored row is a primitive integer vector and rows are unique.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeSystem {
    pub dim: usize,
    #[serde(with = "rational::serde_matrix")]
    pub inequalities: Vec<Vec<Rational>>,
}

fn unit_row(dim: usize, i: usize) -> Vec<Rational> {
    let mut r = vec![Rational::zero(); dim];
    r[i] = int(1);
    r
}

fn is_unit_row(row: &[Rational]) -> bool {
    let mut ones = 0;
    for v in row {
        if v.is_zero() {
            continue;
        }
        if *v == int(1) {
            ones += 1;
        } else {
            return false;
        }
    }
    ones == 1
}

impl ConeSystem {
    /// Normalizes the rows, drops zero rows and syntactic duplicates, and
    /// prepends the nonnegativity rows.
    pub fn new(dim: usize, rows: Vec<Vec<Rational>>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut inequalities = Vec::with_capacity(dim + rows.len());
        for i in 0..dim {
            let r = unit_row(dim, i);
            seen.insert(r.clone());
            inequalities.push(r);
        }
        for row in rows {
            check_dim(dim, row.len())?;
            if row.iter().all(Zero::is_zero) {
                continue;
            }
            let normalized = rational::primitive_rational(&row);
            if seen.insert(normalized.clone()) {
                inequalities.push(normalized);
            }
        }
        Ok(Self { dim, inequalities })
    }

    /// The nonnegative orthant of the given dimension.
    pub fn orthant(dim: usize) -> Self {
        Self::new(dim, Vec::new()).expect("orthant rows have the right length")
    }

    /// Number of rows beyond the nonnegativity constraints.
    pub fn parity_row_count(&self) -> usize {
        self.inequalities.len() - self.dim
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool> {
        check_dim(self.dim, v.len())?;
        Ok(self
            .inequalities
            .iter()
            .all(|a| !dot(a, v).is_negative()))
    }
}

/// `K(H)`: for every row `j` and every `i` in its support,
/// `Row_j(H) . v - 2 v_i >= 0`, together with `v >= 0`.
///
/// Positions with `h_ji = 0` are skipped: their inequality `Row_j(H) . v >= 0`
/// already follows from nonnegativity.
pub fn build_fundamental_cone(h: &BinaryMatrix) -> ConeSystem {
    let n = h.num_cols();
    let mut rows = Vec::new();
    for row in h.rows() {
        let support = row.support();
        for &i in &support {
            let mut a = vec![Rational::zero(); n];
            for &k in &support {
                a[k] = int(1);
            }
            a[i] = int(-1);
            rows.push(a);
        }
    }
    ConeSystem::new(n, rows).expect("rows built with matching length")
}

pub fn cone_contains(k: &ConeSystem, v: &[Rational]) -> Result<bool> {
    k.contains(v)
}

/// Extreme rays of a cone, each scaled to its primitive integer vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RayList {
    pub dim: usize,
    #[serde(with = "rational::serde_matrix")]
    pub rays: Vec<Vec<Rational>>,
}

impl RayList {
    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }
}

fn integer_row(row: &[Rational]) -> Result<Vec<i128>> {
    rational::primitive(row)
        .iter()
        .map(|v| {
            v.to_i128()
                .ok_or_else(|| Error::Numerical("inequality coefficient exceeds 128 bits".into()))
        })
        .collect()
}

/// Extreme rays via double description, inserting constraints by increasing
/// support size.
pub fn extreme_rays(k: &ConeSystem, bound: usize) -> Result<RayList> {
    let mut order: Vec<usize> = (0..k.inequalities.len()).collect();
    order.sort_by_key(|&r| k.inequalities[r].iter().filter(|v| !v.is_zero()).count());
    extreme_rays_ordered(k, bound, &order)
}

/// Extreme rays with an explicit constraint insertion order (indices into
/// `k.inequalities`; nonnegativity rows are always handled first). The final
/// set does not depend on the order.
pub fn extreme_rays_ordered(k: &ConeSystem, bound: usize, order: &[usize]) -> Result<RayList> {
    if k.dim > bound {
        return Err(Error::BoundExceeded {
            what: "cone dimension",
            limit: bound,
            actual: k.dim,
        });
    }
    let mut rows = Vec::with_capacity(order.len());
    for &r in order {
        let row = k
            .inequalities
            .get(r)
            .ok_or_else(|| Error::InvalidInput(format!("constraint index {r} out of range")))?;
        if !is_unit_row(row) {
            rows.push(integer_row(row)?);
        }
    }
    let rays = dd::extreme_rays(k.dim, &rows)?
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| Rational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect();
    Ok(RayList { dim: k.dim, rays })
}

/// Intersection of cones of equal dimension (row stacking of the matrices).
pub fn intersect_cones(cones: &[ConeSystem]) -> Result<ConeSystem> {
    let first = cones
        .first()
        .ok_or_else(|| Error::InvalidInput("no cones to intersect".into()))?;
    let mut rows = Vec::new();
    for c in cones {
        check_dim(first.dim, c.dim)?;
        rows.extend(c.inequalities.iter().cloned());
    }
    ConeSystem::new(first.dim, rows)
}

/// Cartesian product of cones on consecutive coordinate blocks.
pub fn product_cone(cones: &[ConeSystem]) -> ConeSystem {
    let dim: usize = cones.iter().map(|c| c.dim).sum();
    let mut rows = Vec::new();
    let mut offset = 0;
    for c in cones {
        for a in &c.inequalities {
            let mut row = vec![Rational::zero(); dim];
            row[offset..offset + c.dim].clone_from_slice(a);
            rows.push(row);
        }
        offset += c.dim;
    }
    ConeSystem::new(dim, rows).expect("rows built with matching length")
}

/// Concatenates members `v_k` of `K(H_k)` and certifies the result lies in
/// the cone of the block row `[H_1 ... H_t]`.
pub fn blockrow_embed(vs: &[Vec<Rational>], hs: &[BinaryMatrix]) -> Result<Vec<Rational>> {
    check_dim(hs.len(), vs.len())?;
    if hs.is_empty() {
        return Err(Error::InvalidInput("no blocks given".into()));
    }
    for (k, (v, h)) in vs.iter().zip(hs).enumerate() {
        check_dim(h.num_rows(), hs[0].num_rows())?;
        if !build_fundamental_cone(h).contains(v)? {
            return Err(Error::NotInCone { block: k });
        }
    }
    let w: Vec<Rational> = vs.iter().flatten().cloned().collect();
    let refs: Vec<&BinaryMatrix> = hs.iter().collect();
    let joined = BinaryMatrix::hstack(&refs)?;
    if !build_fundamental_cone(&joined).contains(&w)? {
        return Err(Error::CertificateFailed(
            "concatenation of cone members left the block-row cone".into(),
        ));
    }
    Ok(w)
}

/// Sufficient condition for `w` to lie in the cone of `[H H ... H]` (t copies):
/// `w_ki <= v_i <= sum_j w_ji` for all `i, k`, given `v` in `K(H)`.
///
/// Returns whether the condition holds. When it does, membership is checked
/// directly as well and a disagreement is reported as an error.
pub fn repeated_block_membership(
    h: &BinaryMatrix,
    v: &[Rational],
    w: &[Rational],
    t: usize,
) -> Result<bool> {
    let n = h.num_cols();
    if t == 0 {
        return Err(Error::InvalidInput("t must be positive".into()));
    }
    check_dim(t * n, w.len())?;
    if !build_fundamental_cone(h).contains(v)? {
        return Err(Error::NotInCone { block: 0 });
    }
    if !is_nonnegative(w) {
        return Ok(false);
    }
    let holds = (0..n).all(|i| {
        let column_sum: Rational = (0..t).map(|k| &w[k * n + i]).sum();
        (0..t).all(|k| w[k * n + i] <= v[i]) && v[i] <= column_sum
    });
    if holds {
        let copies: Vec<&BinaryMatrix> = (0..t).map(|_| h).collect();
        let repeated = BinaryMatrix::hstack(&copies)?;
        if !build_fundamental_cone(&repeated).contains(w)? {
            return Err(Error::CertificateFailed(
                "repeated-block condition held but w is outside the cone".into(),
            ));
        }
    }
    Ok(holds)
}

/// The extra columns appended to `H1`.
#[derive(Clone, Debug)]
pub enum ColumnLift {
    /// One column `s^T` with value `w` on the new coordinate.
    Single { column: BinaryVector, value: Rational },
    /// A permutation block `J` with `J[j][sigma[j]] = 1`, and values `w`
    /// on the `r` new coordinates.
    Permutation { sigma: Vec<usize>, values: Vec<Rational> },
}

/// Sufficient condition for `(v, w)` to lie in the cone of `H1` augmented by
/// extra columns: `w <= Row_j(H1) . v` for every row `j` touched by the new
/// column (respectively `w_sigma(j) <= Row_j(H1) . v` for a permutation block).
///
/// As with [`repeated_block_membership`], a true result is cross-checked by
/// direct membership.
pub fn augment_column_lift(h1: &BinaryMatrix, lift: &ColumnLift, v: &[Rational]) -> Result<bool> {
    let (r, n) = (h1.num_rows(), h1.num_cols());
    check_dim(n, v.len())?;
    if !build_fundamental_cone(h1).contains(v)? {
        return Err(Error::NotInCone { block: 0 });
    }
    let row_dots: Vec<Rational> = h1
        .rows()
        .iter()
        .map(|row| row.support().iter().map(|&i| &v[i]).sum())
        .collect();
    let (holds, augmented, extra) = match lift {
        ColumnLift::Single { column, value } => {
            check_dim(r, column.len())?;
            let holds = !value.is_negative()
                && column.support().iter().all(|&j| *value <= row_dots[j]);
            let col = BinaryMatrix::from_rows(
                (0..r)
                    .map(|j| BinaryVector::from_bits(&[column.get(j) as u8]))
                    .collect(),
            )?;
            (holds, BinaryMatrix::hstack(&[h1, &col])?, vec![value.clone()])
        }
        ColumnLift::Permutation { sigma, values } => {
            check_dim(r, sigma.len())?;
            check_dim(r, values.len())?;
            let mut seen = vec![false; r];
            for &s in sigma {
                if s >= r || std::mem::replace(&mut seen[s], true) {
                    return Err(Error::InvalidInput("sigma is not a permutation".into()));
                }
            }
            let holds = is_nonnegative(values)
                && (0..r).all(|j| values[sigma[j]] <= row_dots[j]);
            let mut block = BinaryMatrix::zeros(r, r);
            for (j, &s) in sigma.iter().enumerate() {
                block.set(j, s, true);
            }
            (holds, BinaryMatrix::hstack(&[h1, &block])?, values.clone())
        }
    };
    if holds {
        let point: Vec<Rational> = v.iter().cloned().chain(extra).collect();
        if !build_fundamental_cone(&augmented).contains(&point)? {
            return Err(Error::CertificateFailed(
                "column-lift condition held but the point is outside the cone".into(),
            ));
        }
    }
    Ok(holds)
}

/// For a matrix partitioned into blocks (row block sizes, column block sizes),
/// the cone of each block column: the intersection over block rows of the
/// cones of the individual blocks. Their product lies inside `K(H)`.
pub fn block_column_cones(
    h: &BinaryMatrix,
    row_blocks: &[usize],
    col_blocks: &[usize],
) -> Result<Vec<ConeSystem>> {
    check_dim(h.num_rows(), row_blocks.iter().sum())?;
    check_dim(h.num_cols(), col_blocks.iter().sum())?;
    let mut out = Vec::with_capacity(col_blocks.len());
    let mut col_start = 0;
    for &width in col_blocks {
        let column = h.column_block(col_start, width);
        let mut row_start = 0;
        let mut cones = Vec::with_capacity(row_blocks.len());
        for &height in row_blocks {
            cones.push(build_fundamental_cone(&column.row_block(row_start, height)));
            row_start += height;
        }
        out.push(intersect_cones(&cones)?);
        col_start += width;
    }
    Ok(out)
}
