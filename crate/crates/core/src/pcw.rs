//! Graph-cover pseudocodewords: certification, bounded enumeration, and
//! truncated generating functions.

use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cone::build_fundamental_cone;
use crate::error::{check_dim, Error, Result};
use crate::gf2::{mat_vec_mod2, BinaryMatrix};
use crate::rational::Rational;

/// Default limit on the number of lattice points in the box `{0..B}^n`.
pub const DEFAULT_BOX_BUDGET: u64 = 1 << 24;

/// A nonnegative integer vector certified as a pseudocodeword of some `H`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Pseudocodeword {
    coords: Vec<u64>,
}

impl Pseudocodeword {
    pub fn certify(h: &BinaryMatrix, coords: Vec<u64>) -> Result<Self> {
        if !is_gc_pseudocodeword(h, &coords)? {
            return Err(Error::CertificateFailed(
                "vector is not a graph-cover pseudocodeword".into(),
            ));
        }
        Ok(Self { coords })
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<u64> {
        self.coords
    }
}

/// `p` is in `K(H)` and `H p = 0 mod 2`.
pub fn is_gc_pseudocodeword(h: &BinaryMatrix, p: &[u64]) -> Result<bool> {
    check_dim(h.num_cols(), p.len())?;
    let v: Vec<Rational> = p
        .iter()
        .map(|&x| Rational::from_integer(x.into()))
        .collect();
    Ok(build_fundamental_cone(h).contains(&v)? && mat_vec_mod2(h, p)?.is_zero())
}

struct RowState {
    sum: u64,
    max: u64,
    remaining: usize,
}

struct BoxWalk<'a> {
    bound: u64,
    /// rows touching each column
    rows_of: Vec<Vec<usize>>,
    rows: Vec<RowState>,
    current: Vec<u64>,
    out: &'a mut Vec<Vec<u64>>,
}

impl BoxWalk<'_> {
    fn feasible(&self, row: &RowState) -> bool {
        if row.remaining == 0 {
            row.sum % 2 == 0 && row.sum >= 2 * row.max
        } else {
            row.sum + self.bound * row.remaining as u64 >= 2 * row.max
        }
    }

    fn walk(&mut self, i: usize) {
        if i == self.current.len() {
            self.out.push(self.current.clone());
            return;
        }
        for value in 0..=self.bound {
            let mut ok = true;
            let mut saved = Vec::with_capacity(self.rows_of[i].len());
            for k in 0..self.rows_of[i].len() {
                let j = self.rows_of[i][k];
                let row = &mut self.rows[j];
                saved.push(row.max);
                row.sum += value;
                row.max = row.max.max(value);
                row.remaining -= 1;
                ok &= self.feasible(&self.rows[j]);
            }
            if ok {
                self.current[i] = value;
                self.walk(i + 1);
            }
            for (k, max) in saved.into_iter().enumerate() {
                let row = &mut self.rows[self.rows_of[i][k]];
                row.sum -= value;
                row.max = max;
                row.remaining += 1;
            }
        }
        self.current[i] = 0;
    }
}

/// All pseudocodewords in `{0..B}^n`, in lexicographic order.
pub fn enumerate_pseudocodewords(
    h: &BinaryMatrix,
    bound: u64,
    budget: u64,
) -> Result<Vec<Pseudocodeword>> {
    let n = h.num_cols();
    let points = (bound + 1).checked_pow(n as u32).unwrap_or(u64::MAX);
    if points > budget {
        return Err(Error::BoundExceeded {
            what: "pseudocodeword box size",
            limit: budget.min(usize::MAX as u64) as usize,
            actual: points.min(usize::MAX as u64) as usize,
        });
    }
    let mut rows_of = vec![Vec::new(); n];
    let rows = h
        .rows()
        .iter()
        .enumerate()
        .map(|(j, r)| {
            let support = r.support();
            for &i in &support {
                rows_of[i].push(j);
            }
            RowState {
                sum: 0,
                max: 0,
                remaining: support.len(),
            }
        })
        .collect();
    let mut out = Vec::new();
    BoxWalk {
        bound,
        rows_of,
        rows,
        current: vec![0; n],
        out: &mut out,
    }
    .walk(0);
    Ok(out
        .into_iter()
        .map(|coords| Pseudocodeword { coords })
        .collect())
}

/// Truncated generating function `sum x^p` over pseudocodewords with all
/// coordinates at most `bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenFun {
    pub num_vars: usize,
    pub bound: u64,
    pub terms: BTreeMap<Vec<u64>, u64>,
    /// Sizes of consecutive variable blocks, when the matrix was a block row.
    pub blocks: Option<Vec<usize>>,
}

impl GenFun {
    /// The constant 1 in no variables, the unit of [`genfun_product`].
    pub fn one(bound: u64) -> Self {
        Self::constant(0, bound)
    }

    /// The constant 1 in `num_vars` variables.
    pub fn constant(num_vars: usize, bound: u64) -> Self {
        Self {
            num_vars,
            bound,
            terms: BTreeMap::from([(vec![0; num_vars], 1)]),
            blocks: None,
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn with_blocks(mut self, sizes: Vec<usize>) -> Result<Self> {
        check_dim(self.num_vars, sizes.iter().sum())?;
        self.blocks = Some(sizes);
        Ok(self)
    }
}

#[derive(Serialize, Deserialize)]
struct Term {
    exp: Vec<u64>,
    coef: u64,
}

#[derive(Serialize, Deserialize)]
struct GenFunRepr {
    vars: usize,
    bound: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    blocks: Option<Vec<usize>>,
    terms: Vec<Term>,
}

impl Serialize for GenFun {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GenFunRepr {
            vars: self.num_vars,
            bound: self.bound,
            blocks: self.blocks.clone(),
            terms: self
                .terms
                .iter()
                .map(|(exp, &coef)| Term { exp: exp.clone(), coef })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GenFun {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = GenFunRepr::deserialize(d)?;
        let mut terms = BTreeMap::new();
        for t in repr.terms {
            if t.exp.len() != repr.vars {
                return Err(D::Error::custom("exponent length differs from vars"));
            }
            if t.exp.iter().any(|&e| e > repr.bound) {
                return Err(D::Error::custom("exponent exceeds the truncation bound"));
            }
            if t.coef == 0 {
                return Err(D::Error::custom("zero coefficient"));
            }
            *terms.entry(t.exp).or_insert(0) += t.coef;
        }
        Ok(GenFun {
            num_vars: repr.vars,
            bound: repr.bound,
            terms,
            blocks: repr.blocks,
        })
    }
}

pub fn generating_function(h: &BinaryMatrix, bound: u64, budget: u64) -> Result<GenFun> {
    let terms = enumerate_pseudocodewords(h, bound, budget)?
        .into_iter()
        .map(|p| (p.into_coords(), 1))
        .collect();
    Ok(GenFun {
        num_vars: h.num_cols(),
        bound,
        terms,
        blocks: None,
    })
}

/// Product over disjoint variable blocks, in the given order.
pub fn genfun_product(fs: &[GenFun]) -> Result<GenFun> {
    let Some(first) = fs.first() else {
        return Err(Error::InvalidInput("no generating functions to multiply".into()));
    };
    let bound = first.bound;
    if let Some(f) = fs.iter().find(|f| f.bound != bound) {
        return Err(Error::InvalidInput(format!(
            "truncation bounds differ: {bound} and {}",
            f.bound
        )));
    }
    let factors: Vec<&GenFun> = fs.iter().filter(|f| f.num_vars > 0).collect();
    let constant: u64 = fs
        .iter()
        .filter(|f| f.num_vars == 0)
        .map(|f| f.terms.values().sum::<u64>())
        .product();
    if let [single] = factors[..] {
        if constant == 1 {
            return Ok(single.clone());
        }
    }
    let mut terms = BTreeMap::from([(Vec::new(), constant)]);
    let mut blocks = Vec::new();
    for f in &factors {
        let mut next = BTreeMap::new();
        for (left, &a) in &terms {
            for (right, &b) in &f.terms {
                let exp: Vec<u64> = left.iter().chain(right).copied().collect();
                *next.entry(exp).or_insert(0) += a * b;
            }
        }
        terms = next;
        blocks.push(f.num_vars);
    }
    terms.retain(|_, c| *c > 0);
    Ok(GenFun {
        num_vars: blocks.iter().sum(),
        bound,
        terms,
        blocks: Some(blocks),
    })
}

/// Sets every variable outside `block` to zero: keeps the terms supported on
/// the block and re-indexes them to the block's variables.
pub fn genfun_restrict(f: &GenFun, block: usize) -> Result<GenFun> {
    let blocks = f
        .blocks
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("generating function has no block structure".into()))?;
    let size = *blocks
        .get(block)
        .ok_or_else(|| Error::InvalidInput(format!("block {block} out of range")))?;
    let start: usize = blocks[..block].iter().sum();
    let mut terms = BTreeMap::new();
    for (exp, &coef) in &f.terms {
        let outside = exp[..start].iter().chain(&exp[start + size..]);
        if outside.into_iter().all(|&e| e == 0) {
            *terms.entry(exp[start..start + size].to_vec()).or_insert(0) += coef;
        }
    }
    Ok(GenFun {
        num_vars: size,
        bound: f.bound,
        terms,
        blocks: None,
    })
}
