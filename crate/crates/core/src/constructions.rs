//! Builders for the code families: Hamming and Steane, CSS and stabilizer
//! label codes, circulant and quasi-cyclic matrices, and spatially-coupled
//! LDPC matrices.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cone::{intersect_cones, ConeSystem};
use crate::error::{check_dim, Error, Result};
use crate::gf2::{BinaryMatrix, BinaryVector};

/// The 3 x 7 Hamming matrix whose rows are consecutive cyclic shifts.
pub const HAMMING_CYCLIC_3: [&str; 3] = ["1011100", "0101110", "0010111"];

/// Exponent matrices of a quasi-cyclic CSS pair with 7 x 7 circulants.
pub const HAGIWARA_C: [[i64; 6]; 3] = [[1, 2, 4, 3, 6, 5], [4, 1, 2, 5, 3, 6], [2, 4, 1, 6, 5, 3]];
pub const HAGIWARA_D: [[i64; 6]; 3] = [[4, 2, 1, 6, 3, 5], [1, 4, 2, 5, 6, 3], [2, 1, 4, 3, 5, 6]];
pub const HAGIWARA_BLOCK: usize = 7;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HammingForm {
    /// Columns are the nonzero r-bit vectors in increasing order, most
    /// significant bit in the first row.
    #[default]
    Lexicographic,
    /// Rows are cyclic shifts of one another (only r = 3).
    Cyclic,
}

pub fn hamming_matrix(r: usize, form: HammingForm) -> Result<BinaryMatrix> {
    if r < 2 {
        return Err(Error::InvalidInput("Hamming order must be at least 2".into()));
    }
    if r > 16 {
        return Err(Error::BoundExceeded {
            what: "Hamming order",
            limit: 16,
            actual: r,
        });
    }
    match form {
        HammingForm::Lexicographic => {
            let n = (1usize << r) - 1;
            let mut h = BinaryMatrix::zeros(r, n);
            for c in 0..n {
                let value = c + 1;
                for k in 0..r {
                    h.set(k, c, value >> (r - 1 - k) & 1 == 1);
                }
            }
            Ok(h)
        }
        HammingForm::Cyclic if r == 3 => Ok(hamming_cyclic_3()),
        HammingForm::Cyclic => Err(Error::InvalidInput(
            "the cyclic Hamming form is only provided for r = 3".into(),
        )),
    }
}

pub fn hamming_cyclic_3() -> BinaryMatrix {
    BinaryMatrix::from_rows(
        HAMMING_CYCLIC_3
            .iter()
            .map(|r| BinaryVector::parse(r).expect("constant is a bit string"))
            .collect(),
    )
    .expect("constant rows are consistent")
}

/// `[[H1, 0], [0, H2]]`, provided every row of `H1` is orthogonal to every
/// row of `H2`.
pub fn css_matrix(h1: &BinaryMatrix, h2: &BinaryMatrix) -> Result<BinaryMatrix> {
    check_dim(h1.num_cols(), h2.num_cols())?;
    if let Some((first, second)) = h1.first_non_orthogonal_pair(h2) {
        return Err(Error::NotOrthogonal { first, second });
    }
    BinaryMatrix::block_diag(&[h1, h2])
}

pub fn steane_matrix(r: usize, form: HammingForm) -> Result<BinaryMatrix> {
    if r < 3 {
        return Err(Error::InvalidInput("Steane order must be at least 3".into()));
    }
    let h = hamming_matrix(r, form)?;
    css_matrix(&h, &h)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    /// The binary label `(x, z)`.
    pub fn label(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }
}

/// A tensor product of single-qubit Paulis; phases are not represented.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliString(Vec<Pauli>);

impl PauliString {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn ops(&self) -> &[Pauli] {
        &self.0
    }

    pub fn x_part(&self) -> BinaryVector {
        let bits: Vec<u8> = self.0.iter().map(|p| p.label().0 as u8).collect();
        BinaryVector::from_bits(&bits)
    }

    pub fn z_part(&self) -> BinaryVector {
        let bits: Vec<u8> = self.0.iter().map(|p| p.label().1 as u8).collect();
        BinaryVector::from_bits(&bits)
    }

    /// `(x-part | z-part)`.
    pub fn label(&self) -> BinaryVector {
        BinaryVector::concat(&[&self.x_part(), &self.z_part()])
    }

    /// Symplectic product; zero exactly when the two strings commute.
    pub fn symplectic_product(&self, other: &Self) -> Result<bool> {
        check_dim(self.len(), other.len())?;
        Ok(self.x_part().dot(&other.z_part()) ^ self.z_part().dot(&other.x_part()))
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let ops = text
            .trim()
            .chars()
            .map(|c| match c {
                'I' => Ok(Pauli::I),
                'X' => Ok(Pauli::X),
                'Y' => Ok(Pauli::Y),
                'Z' => Ok(Pauli::Z),
                other => Err(Error::Parse(format!("invalid Pauli letter {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        if ops.is_empty() {
            return Err(Error::Parse("empty Pauli string".into()));
        }
        Ok(Self(ops))
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.0 {
            let c = match p {
                Pauli::I => 'I',
                Pauli::X => 'X',
                Pauli::Y => 'Y',
                Pauli::Z => 'Z',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// One row `(x-part | z-part)` per generator.
pub fn label_matrix(generators: &[PauliString]) -> Result<BinaryMatrix> {
    let first = generators
        .first()
        .ok_or_else(|| Error::InvalidInput("no generators".into()))?;
    let mut rows = Vec::with_capacity(generators.len());
    for g in generators {
        check_dim(first.len(), g.len())?;
        rows.push(g.label());
    }
    BinaryMatrix::from_rows(rows)
}

/// Intersection of the cones of the single-row label matrices.
pub fn normalizer_cone(generators: &[PauliString]) -> Result<ConeSystem> {
    let m = label_matrix(generators)?;
    let cones: Vec<ConeSystem> = m
        .rows()
        .iter()
        .map(|r| {
            let single = BinaryMatrix::from_rows(vec![r.clone()]).expect("row is nonempty");
            crate::cone::build_fundamental_cone(&single)
        })
        .collect();
    intersect_cones(&cones)
}

/// The `t x t` identity with every row rotated right by `shift`: row `k`
/// has its one in column `(k + shift) mod t`.
pub fn circulant_permutation(t: usize, shift: i64) -> Result<BinaryMatrix> {
    if t == 0 {
        return Err(Error::InvalidInput("circulant size must be positive".into()));
    }
    let rows = (0..t)
        .map(|k| BinaryVector::unit(t, k).cyclic_shift(shift))
        .collect();
    BinaryMatrix::from_rows(rows)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentMatrix {
    pub entries: Vec<Vec<i64>>,
    pub block_size: usize,
}

impl ExponentMatrix {
    /// Reduces every entry modulo `block_size`.
    pub fn new(entries: Vec<Vec<i64>>, block_size: usize) -> Result<Self> {
        if block_size == 0 {
            return Err(Error::InvalidInput("block size must be positive".into()));
        }
        let width = entries.first().map_or(0, Vec::len);
        if width == 0 {
            return Err(Error::InvalidInput("exponent matrix is empty".into()));
        }
        let t = block_size as i64;
        let mut reduced = Vec::with_capacity(entries.len());
        for row in entries {
            check_dim(width, row.len())?;
            reduced.push(row.into_iter().map(|e| e.rem_euclid(t)).collect());
        }
        Ok(Self {
            entries: reduced,
            block_size,
        })
    }

    pub fn from_array<const N: usize>(rows: &[[i64; N]], block_size: usize) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.to_vec()).collect(), block_size)
    }

    /// Entries `-e mod t`; this turns every block into its transpose.
    pub fn negated(&self) -> Self {
        let t = self.block_size as i64;
        Self {
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(|&e| (-e).rem_euclid(t)).collect())
                .collect(),
            block_size: self.block_size,
        }
    }

    pub fn block_rows(&self) -> usize {
        self.entries.len()
    }

    pub fn block_cols(&self) -> usize {
        self.entries[0].len()
    }
}

/// Block matrix with `P_e` in block `(i, j)` for exponent `e = E[i][j]`.
pub fn qc_from_exponents(e: &ExponentMatrix) -> Result<BinaryMatrix> {
    let t = e.block_size;
    let mut h = BinaryMatrix::zeros(e.block_rows() * t, e.block_cols() * t);
    for (bi, row) in e.entries.iter().enumerate() {
        for (bj, &shift) in row.iter().enumerate() {
            for k in 0..t {
                let col = (k as i64 + shift).rem_euclid(t as i64) as usize;
                h.set(bi * t + k, bj * t + col, true);
            }
        }
    }
    Ok(h)
}

/// A matrix in block-circulant form together with the permutation that
/// produced it from a block matrix of circulants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockCirculantForm {
    pub matrix: BinaryMatrix,
    /// Shifting constraint: the number of circulant block columns.
    pub n0: usize,
    pub block_size: usize,
    /// `row_perm[old] = new`.
    pub row_perm: Vec<usize>,
    /// `col_perm[old] = new`.
    pub col_perm: Vec<usize>,
}

impl BlockCirculantForm {
    /// Maps a row vector in the original coordinates to the new ones.
    pub fn forward(&self, v: &BinaryVector) -> BinaryVector {
        let mut out = BinaryVector::zeros(v.len());
        for i in v.support() {
            out.set(self.col_perm[i], true);
        }
        out
    }

    /// Maps a row vector in the new coordinates back to the original ones.
    pub fn backward(&self, v: &BinaryVector) -> BinaryVector {
        let mut out = BinaryVector::zeros(v.len());
        for (old, &new) in self.col_perm.iter().enumerate() {
            if v.get(new) {
                out.set(old, true);
            }
        }
        out
    }
}

fn is_circulant_block(h: &BinaryMatrix, r0: usize, c0: usize, t: usize) -> bool {
    (0..t).all(|a| (0..t).all(|b| h.get(r0 + a, c0 + b) == h.get(r0 + (a + 1) % t, c0 + (b + 1) % t)))
}

/// Reorders a matrix of `t x t` circulant blocks into block-circulant form:
/// column `(block i, offset k)` moves to `k * n0 + i` and row
/// `(block j, offset k)` to `k * c + j`. A right shift inside every block
/// becomes a global right shift by `n0`.
pub fn to_block_circulant(h: &BinaryMatrix, t: usize) -> Result<BlockCirculantForm> {
    if t == 0 || h.num_rows() % t != 0 || h.num_cols() % t != 0 {
        return Err(Error::InvalidInput(format!(
            "a {}x{} matrix is not made of {t}x{t} blocks",
            h.num_rows(),
            h.num_cols()
        )));
    }
    let (c, n0) = (h.num_rows() / t, h.num_cols() / t);
    for bj in 0..c {
        for bi in 0..n0 {
            if !is_circulant_block(h, bj * t, bi * t, t) {
                return Err(Error::NotQuasiCyclic { n0 });
            }
        }
    }
    let row_perm: Vec<usize> = (0..h.num_rows()).map(|r| (r % t) * c + r / t).collect();
    let col_perm: Vec<usize> = (0..h.num_cols()).map(|x| (x % t) * n0 + x / t).collect();
    let matrix = h.permute(&row_perm, &col_perm)?;
    Ok(BlockCirculantForm {
        matrix,
        n0,
        block_size: t,
        row_perm,
        col_perm,
    })
}

/// Block row `i` is `(H_1 ... H_t)` rotated right by `i` block positions.
pub fn block_circulant(blocks: &[BinaryMatrix]) -> Result<BinaryMatrix> {
    let first = blocks
        .first()
        .ok_or_else(|| Error::InvalidInput("no blocks".into()))?;
    for b in blocks {
        check_dim(first.num_rows(), b.num_rows())?;
        check_dim(first.num_cols(), b.num_cols())?;
    }
    let t = blocks.len();
    let mut rows = Vec::with_capacity(t);
    for i in 0..t {
        let row: Vec<&BinaryMatrix> = (0..t).map(|k| &blocks[(k + t - i) % t]).collect();
        rows.push(BinaryMatrix::hstack(&row)?);
    }
    let refs: Vec<&BinaryMatrix> = rows.iter().collect();
    BinaryMatrix::vstack(&refs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScMode {
    Terminated,
    Tailbiting,
}

/// Spatially-coupled matrix with `L` block columns built from `H_0..H_m`.
/// Terminated: block `(a, b)` is `H_{a-b}` for `0 <= a - b <= m`, giving
/// `L + m` block rows. Tailbiting: block `(a, b)` is `H_{(a-b) mod L}` when
/// that index is at most `m`, giving `L` block rows.
pub fn sc_ldpc(blocks: &[BinaryMatrix], l: usize, mode: ScMode) -> Result<BinaryMatrix> {
    let first = blocks
        .first()
        .ok_or_else(|| Error::InvalidInput("no component matrices".into()))?;
    for b in blocks {
        check_dim(first.num_rows(), b.num_rows())?;
        check_dim(first.num_cols(), b.num_cols())?;
    }
    let m = blocks.len() - 1;
    if l == 0 {
        return Err(Error::InvalidInput("coupling length must be positive".into()));
    }
    if mode == ScMode::Tailbiting && l < m + 1 {
        return Err(Error::InvalidInput(format!(
            "tailbiting needs L >= m + 1 = {}, got {l}",
            m + 1
        )));
    }
    let (nc, nr) = (first.num_rows(), first.num_cols());
    let block_rows = match mode {
        ScMode::Terminated => l + m,
        ScMode::Tailbiting => l,
    };
    let mut h = BinaryMatrix::zeros(block_rows * nc, l * nr);
    for a in 0..block_rows {
        for b in 0..l {
            let index = match mode {
                ScMode::Terminated => a.checked_sub(b).filter(|&d| d <= m),
                ScMode::Tailbiting => Some((a + l - b) % l).filter(|&d| d <= m),
            };
            let Some(j) = index else { continue };
            for r in 0..nc {
                for c in blocks[j].row(r).support() {
                    h.set(a * nc + r, b * nr + c, true);
                }
            }
        }
    }
    Ok(h)
}

fn dense(rows: &[Vec<u8>]) -> Result<BinaryMatrix> {
    BinaryMatrix::from_dense(rows)
}

/// Declarative description of a matrix, read from JSON by the `build`
/// command.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Recipe {
    Dense {
        rows: Vec<Vec<u8>>,
    },
    Identity {
        n: usize,
    },
    Hamming {
        r: usize,
        #[serde(default)]
        form: HammingForm,
    },
    Steane {
        r: usize,
        #[serde(default)]
        form: HammingForm,
    },
    Css {
        h1: Box<Recipe>,
        h2: Box<Recipe>,
    },
    Label {
        generators: Vec<String>,
    },
    Circulant {
        t: usize,
        shift: i64,
    },
    QcExponent {
        exponents: Vec<Vec<i64>>,
        block_size: usize,
        /// Exponents of a second matrix; the result is their CSS matrix.
        #[serde(default)]
        css_partner: Option<Vec<Vec<i64>>>,
        /// Reorder into block-circulant form.
        #[serde(default)]
        block_circulant_form: bool,
    },
    /// The 7 x 7 circulant CSS pair from the constants in this module.
    Hagiwara {
        #[serde(default)]
        block_circulant_form: bool,
    },
    BlockCirculant {
        blocks: Vec<Vec<Vec<u8>>>,
    },
    Sc {
        blocks: Vec<Vec<Vec<u8>>>,
        #[serde(rename = "L")]
        l: usize,
        mode: ScMode,
    },
}

/// A recipe file: `{"schema": 1, "kind": ..., ...}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecipeFile {
    pub schema: u32,
    #[serde(flatten)]
    pub recipe: Recipe,
}

impl RecipeFile {
    pub fn parse(text: &str) -> Result<Self> {
        let file: RecipeFile = serde_json::from_str(text)?;
        if file.schema != 1 {
            return Err(Error::Parse(format!("unsupported recipe schema {}", file.schema)));
        }
        Ok(file)
    }
}

fn exponent_css(
    exponents: &ExponentMatrix,
    partner: Option<&ExponentMatrix>,
    block_circulant_form: bool,
) -> Result<BinaryMatrix> {
    let h = qc_from_exponents(exponents)?;
    let h = match partner {
        Some(p) => css_matrix(&h, &qc_from_exponents(p)?)?,
        None => h,
    };
    if block_circulant_form {
        Ok(to_block_circulant(&h, exponents.block_size)?.matrix)
    } else {
        Ok(h)
    }
}

impl Recipe {
    pub fn build(&self) -> Result<BinaryMatrix> {
        match self {
            Recipe::Dense { rows } => dense(rows),
            Recipe::Identity { n } => {
                if *n == 0 {
                    return Err(Error::InvalidInput("identity size must be positive".into()));
                }
                Ok(BinaryMatrix::identity(*n))
            }
            Recipe::Hamming { r, form } => hamming_matrix(*r, *form),
            Recipe::Steane { r, form } => steane_matrix(*r, *form),
            Recipe::Css { h1, h2 } => css_matrix(&h1.build()?, &h2.build()?),
            Recipe::Label { generators } => {
                let gens = generators
                    .iter()
                    .map(|g| g.parse())
                    .collect::<Result<Vec<PauliString>>>()?;
                label_matrix(&gens)
            }
            Recipe::Circulant { t, shift } => circulant_permutation(*t, *shift),
            Recipe::QcExponent {
                exponents,
                block_size,
                css_partner,
                block_circulant_form,
            } => {
                let e = ExponentMatrix::new(exponents.clone(), *block_size)?;
                let partner = css_partner
                    .as_ref()
                    .map(|p| ExponentMatrix::new(p.clone(), *block_size))
                    .transpose()?;
                exponent_css(&e, partner.as_ref(), *block_circulant_form)
            }
            Recipe::Hagiwara {
                block_circulant_form,
            } => {
                let c = ExponentMatrix::from_array(&HAGIWARA_C, HAGIWARA_BLOCK)?;
                let d = ExponentMatrix::from_array(&HAGIWARA_D, HAGIWARA_BLOCK)?;
                exponent_css(&c, Some(&d), *block_circulant_form)
            }
            Recipe::BlockCirculant { blocks } => {
                let b = blocks.iter().map(|r| dense(r)).collect::<Result<Vec<_>>>()?;
                block_circulant(&b)
            }
            Recipe::Sc { blocks, l, mode } => {
                let b = blocks.iter().map(|r| dense(r)).collect::<Result<Vec<_>>>()?;
                sc_ldpc(&b, *l, *mode)
            }
        }
    }
}
