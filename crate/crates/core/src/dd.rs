//! Double description method for pointed cones inside the nonnegative orthant.
//!
//! The cone is `{x >= 0 : a.x >= 0 for every row a}`. Starting from the orthant
//! (whose extreme rays are the unit vectors) the remaining rows are inserted one
//! at a time. New rays are formed only from adjacent pairs, using the
//! combinatorial adjacency test on zero sets, so the ray list stays minimal
//! after every step. Arithmetic is exact over `i128`; any overflow is reported.

use num_integer::Integer;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
struct Bitset(Vec<u64>);

impl Bitset {
    fn new(bits: usize) -> Self {
        Bitset(vec![0; bits.div_ceil(64).max(1)])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn intersection(&self, other: &Self) -> Self {
        Bitset(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn is_subset_of(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

struct Ray {
    coords: Vec<i128>,
    zeros: Bitset,
}

fn overflow() -> Error {
    Error::Numerical("integer overflow during ray enumeration".into())
}

fn dot(a: &[i128], x: &[i128]) -> Result<i128> {
    a.iter().zip(x).try_fold(0i128, |acc, (&c, &v)| {
        if c == 0 || v == 0 {
            return Ok(acc);
        }
        c.checked_mul(v)
            .and_then(|p| acc.checked_add(p))
            .ok_or_else(overflow)
    })
}

fn normalize(v: &mut [i128]) {
    let g = v.iter().fold(0i128, |acc, x| acc.gcd(x));
    if g > 1 {
        for x in v.iter_mut() {
            *x /= g;
        }
    }
}

/// Extreme rays of `{x in R^dim : x >= 0, a.x >= 0 for a in rows}`, inserting
/// `rows` in the given order. Rays are returned as primitive integer vectors,
/// sorted lexicographically.
pub(crate) fn extreme_rays(dim: usize, rows: &[Vec<i128>]) -> Result<Vec<Vec<i128>>> {
    let total = dim + rows.len();
    let mut rays: Vec<Ray> = (0..dim)
        .map(|i| {
            let mut coords = vec![0; dim];
            coords[i] = 1;
            let mut zeros = Bitset::new(total);
            for k in (0..dim).filter(|&k| k != i) {
                zeros.insert(k);
            }
            Ray { coords, zeros }
        })
        .collect();

    for (k, row) in rows.iter().enumerate() {
        debug_assert_eq!(row.len(), dim);
        let index = dim + k;
        let values = rays
            .iter()
            .map(|r| dot(row, &r.coords))
            .collect::<Result<Vec<_>>>()?;
        let positive: Vec<usize> = (0..rays.len()).filter(|&r| values[r] > 0).collect();
        let negative: Vec<usize> = (0..rays.len()).filter(|&r| values[r] < 0).collect();

        let mut created = Vec::new();
        for &p in &positive {
            for &q in &negative {
                let common = rays[p].zeros.intersection(&rays[q].zeros);
                if common.count() + 2 < dim {
                    continue;
                }
                let blocked = rays.iter().enumerate().any(|(r, ray)| {
                    r != p && r != q && common.is_subset_of(&ray.zeros)
                });
                if blocked {
                    continue;
                }
                let (vp, vq) = (values[p], -values[q]);
                let mut coords = rays[p]
                    .coords
                    .iter()
                    .zip(&rays[q].coords)
                    .map(|(&x, &y)| {
                        let a = vq.checked_mul(x)?;
                        let b = vp.checked_mul(y)?;
                        a.checked_add(b)
                    })
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(overflow)?;
                normalize(&mut coords);
                let mut zeros = common;
                zeros.insert(index);
                created.push(Ray { coords, zeros });
            }
        }

        let mut next = Vec::with_capacity(rays.len() + created.len());
        for (r, mut ray) in rays.into_iter().enumerate() {
            match values[r] {
                v if v > 0 => next.push(ray),
                0 => {
                    ray.zeros.insert(index);
                    next.push(ray);
                }
                _ => {}
            }
        }
        next.extend(created);
        rays = next;
    }

    let mut out: Vec<Vec<i128>> = rays.into_iter().map(|r| r.coords).collect();
    out.sort();
    out.dedup();
    Ok(out)
}
