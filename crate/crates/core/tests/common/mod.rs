//! Shared fixtures and independent oracles for the integration tests.
#![allow(dead_code)]

use lpcone::gf2::{BinaryMatrix, BinaryVector};
use lpcone::rational::{int, Rational};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

pub fn matrix(rows: &[&str]) -> BinaryMatrix {
    BinaryMatrix::from_rows(rows.iter().map(|r| BinaryVector::parse(r).unwrap()).collect()).unwrap()
}

pub fn hamming() -> BinaryMatrix {
    matrix(&["1011100", "0101110", "0010111"])
}

pub fn hamming7() -> BinaryMatrix {
    let row = BinaryVector::parse("1011100").unwrap();
    BinaryMatrix::from_rows((0..7).map(|s| row.cyclic_shift(s)).collect()).unwrap()
}

pub fn spc3() -> BinaryMatrix {
    matrix(&["111"])
}

pub fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

/// Cone membership straight from the definition: for every row `j` and
/// every position `i` (including those outside the row support),
/// `sum_k h_jk v_k >= 2 h_ji v_i`, and `v >= 0`.
pub fn naive_cone_member(h: &BinaryMatrix, v: &[Rational]) -> bool {
    if v.iter().any(Signed::is_negative) {
        return false;
    }
    for j in 0..h.num_rows() {
        let row_sum: Rational = (0..h.num_cols()).filter(|&k| h.get(j, k)).map(|k| &v[k]).sum();
        for i in 0..h.num_cols() {
            let rhs = if h.get(j, i) { &v[i] * int(2) } else { Rational::zero() };
            if row_sum < rhs {
                return false;
            }
        }
    }
    true
}

/// Pseudocodeword test straight from the characterization, on integers.
pub fn naive_pseudocodeword(h: &BinaryMatrix, p: &[u64]) -> bool {
    (0..h.num_rows()).all(|j| {
        let row: Vec<u64> = (0..h.num_cols()).filter(|&k| h.get(j, k)).map(|k| p[k]).collect();
        let sum: u64 = row.iter().sum();
        sum % 2 == 0 && row.iter().all(|&x| sum >= 2 * x)
    })
}

/// Every point of `{0..b}^n` in lexicographic order.
pub fn lattice_box(n: usize, b: u64) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=b).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

pub fn arb_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = BinaryMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(0u8..2, c), r)
            .prop_map(|rows| BinaryMatrix::from_dense(&rows).unwrap())
    })
}

/// Nonnegative rationals with small numerators and denominators, with a
/// bias towards zero so that boundary cases appear.
pub fn arb_rational() -> impl Strategy<Value = Rational> {
    prop_oneof![
        1 => Just(Rational::zero()),
        4 => (0i64..7, 1i64..4).prop_map(|(n, d)| lpcone::rational::ratio(n, d)),
    ]
}

pub fn arb_vector(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec(arb_rational(), n)
}

/// A random nonnegative integer combination of the extreme rays of `k`,
/// which is a member of `k` by convexity. The empty ray list gives zero.
pub fn random_cone_member<R: rand::Rng>(k: &lpcone::cone::ConeSystem, rng: &mut R) -> Vec<Rational> {
    let rays = lpcone::cone::extreme_rays(k, 32).unwrap();
    let mut v = vec![Rational::zero(); k.dim];
    for ray in &rays.rays {
        let c = int(rng.gen_range(0..4));
        for (x, r) in v.iter_mut().zip(ray) {
            *x += &c * r;
        }
    }
    v
}
