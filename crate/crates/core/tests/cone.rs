mod common;

use common::*;
use lpcone::cone::*;
use lpcone::gf2::{enumerate_codewords, BinaryMatrix, BinaryVector};
use lpcone::rational::{int, primitive_rational, ratio, Rational};
use num_traits::Zero;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Null direction of a `(d-1) x d` system of full rank, by Gauss-Jordan.
fn null_direction(rows: &[Vec<Rational>], d: usize) -> Option<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..d {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pv = m[r][c].clone();
        for x in m[r].iter_mut() {
            *x /= &pv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in 0..d {
                    let delta = &f * &m[r][k];
                    m[i][k] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if pivots.len() != d - 1 {
        return None;
    }
    let free = (0..d).find(|c| !pivots.contains(c))?;
    let mut v = vec![Rational::zero(); d];
    v[free] = int(1);
    for (row, &pc) in pivots.iter().enumerate() {
        v[pc] = -m[row][free].clone();
    }
    Some(v)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

/// Extreme rays as feasible one-dimensional intersections of `d-1` tight
/// inequalities, found by trying every subset.
fn brute_force_rays(k: &ConeSystem) -> Vec<Vec<Rational>> {
    let d = k.dim;
    let mut rays = Vec::new();
    for subset in combinations(k.inequalities.len(), d - 1) {
        let rows: Vec<Vec<Rational>> = subset.iter().map(|&i| k.inequalities[i].clone()).collect();
        let Some(v) = null_direction(&rows, d) else {
            continue;
        };
        for candidate in [v.clone(), v.iter().map(|x| -x).collect::<Vec<_>>()] {
            if k.contains(&candidate).unwrap() {
                rays.push(primitive_rational(&candidate));
            }
        }
    }
    rays.sort();
    rays.dedup();
    rays
}

#[test]
fn hamming_rays_match_brute_force() {
    let k = build_fundamental_cone(&hamming());
    let oracle = brute_force_rays(&k);
    assert_eq!(oracle.len(), 42);
    let mut dd = extreme_rays(&k, DEFAULT_RAY_DIM).unwrap().rays;
    dd.sort();
    assert_eq!(dd, oracle);
}

#[test]
fn small_cones_match_brute_force() {
    for h in [
        matrix(&["11"]),
        matrix(&["111"]),
        matrix(&["1100", "0111"]),
        matrix(&["11010", "01101", "10111"]),
        matrix(&["1001", "0110"]),
    ] {
        let k = build_fundamental_cone(&h);
        let mut dd = extreme_rays(&k, DEFAULT_RAY_DIM).unwrap().rays;
        dd.sort();
        assert_eq!(dd, brute_force_rays(&k), "{h:?}");
    }
}

#[test]
fn insertion_order_does_not_matter() {
    let k = build_fundamental_cone(&hamming());
    let reference = extreme_rays(&k, DEFAULT_RAY_DIM).unwrap();
    let mut order: Vec<usize> = (0..k.inequalities.len()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        order.shuffle(&mut rng);
        assert_eq!(extreme_rays_ordered(&k, DEFAULT_RAY_DIM, &order).unwrap(), reference);
    }
    order.reverse();
    assert_eq!(extreme_rays_ordered(&k, DEFAULT_RAY_DIM, &order).unwrap(), reference);
}

#[test]
fn rays_are_homogeneous_members() {
    let k = build_fundamental_cone(&hamming());
    for r in extreme_rays(&k, DEFAULT_RAY_DIM).unwrap().rays {
        for scale in [int(2), ratio(1, 2)] {
            let scaled: Vec<Rational> = r.iter().map(|x| x * &scale).collect();
            assert!(k.contains(&scaled).unwrap());
        }
    }
}

#[test]
fn steane_scale_rays() {
    let h = hamming();
    let s = BinaryMatrix::block_diag(&[&h, &h]).unwrap();
    let rays = extreme_rays(&build_fundamental_cone(&s), DEFAULT_RAY_DIM).unwrap();
    // the extreme rays of a product are the rays of each factor padded by zeros
    assert_eq!(rays.len(), 84);
}

#[test]
fn example_prefix_reading() {
    // The 8-coordinate witness lies in the augmented cone; the claim about
    // non-membership refers to its first 7 coordinates.
    let h = hamming();
    let s = matrix(&["0", "1", "0"]);
    let aug = BinaryMatrix::hstack(&[&h, &s]).unwrap();
    assert!(build_fundamental_cone(&aug).contains(&ints(&[2, 0, 0, 2, 1, 0, 1, 2])).unwrap());
    assert!(!build_fundamental_cone(&h).contains(&ints(&[2, 0, 0, 2, 1, 0, 1])).unwrap());
}

fn row_split(h: &BinaryMatrix) -> Vec<ConeSystem> {
    h.rows()
        .iter()
        .map(|r| build_fundamental_cone(&BinaryMatrix::from_rows(vec![r.clone()]).unwrap()))
        .collect()
}

#[test]
fn hamming_row_split_on_many_vectors() {
    let h = hamming();
    let whole = build_fundamental_cone(&h);
    let split = intersect_cones(&row_split(&h)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    use rand::Rng;
    for _ in 0..1000 {
        let v: Vec<Rational> = (0..7).map(|_| ratio(rng.gen_range(0..5), rng.gen_range(1..4))).collect();
        assert_eq!(whole.contains(&v).unwrap(), split.contains(&v).unwrap());
    }
}

#[test]
fn steane_product_on_many_vectors() {
    let h = hamming();
    let s = BinaryMatrix::block_diag(&[&h, &h]).unwrap();
    let direct = build_fundamental_cone(&s);
    let k = build_fundamental_cone(&h);
    let product = product_cone(&[k.clone(), k]);
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    use rand::Rng;
    let mut members = 0;
    for _ in 0..1000 {
        let v: Vec<Rational> = (0..14).map(|_| ratio(rng.gen_range(0..3), rng.gen_range(1..3))).collect();
        let a = direct.contains(&v).unwrap();
        assert_eq!(a, product.contains(&v).unwrap());
        members += a as usize;
    }
    assert!(members > 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn membership_matches_definition(
        (h, v) in arb_matrix(5, 10).prop_flat_map(|h| {
            let n = h.num_cols();
            (Just(h), arb_vector(n))
        })
    ) {
        let k = build_fundamental_cone(&h);
        prop_assert_eq!(k.contains(&v).unwrap(), naive_cone_member(&h, &v));
    }

    #[test]
    fn row_split_intersection_is_exact(
        (h, v) in arb_matrix(4, 6).prop_flat_map(|h| {
            let n = h.num_cols();
            (Just(h), arb_vector(n))
        })
    ) {
        let whole = build_fundamental_cone(&h);
        let split = intersect_cones(&row_split(&h)).unwrap();
        prop_assert_eq!(whole.contains(&v).unwrap(), split.contains(&v).unwrap());
    }

    #[test]
    fn product_membership_is_componentwise(
        (h1, h2, v1, v2) in (arb_matrix(3, 4), arb_matrix(3, 4)).prop_flat_map(|(a, b)| {
            let (n1, n2) = (a.num_cols(), b.num_cols());
            (Just(a), Just(b), arb_vector(n1), arb_vector(n2))
        })
    ) {
        let k1 = build_fundamental_cone(&h1);
        let k2 = build_fundamental_cone(&h2);
        let p = product_cone(&[k1.clone(), k2.clone()]);
        let joined: Vec<Rational> = v1.iter().chain(&v2).cloned().collect();
        let expected = k1.contains(&v1).unwrap() && k2.contains(&v2).unwrap();
        prop_assert_eq!(p.contains(&joined).unwrap(), expected);
        let diag = BinaryMatrix::block_diag(&[&h1, &h2]).unwrap();
        prop_assert_eq!(build_fundamental_cone(&diag).contains(&joined).unwrap(), expected);
    }

    #[test]
    fn block_row_concatenation_stays_inside(
        blocks in (1usize..4).prop_flat_map(|r| {
            proptest::collection::vec(
                (1usize..5).prop_flat_map(move |c| {
                    proptest::collection::vec(proptest::collection::vec(0u8..2, c), r)
                        .prop_map(|rows| BinaryMatrix::from_dense(&rows).unwrap())
                }),
                1..4,
            )
        }),
        seed in any::<u64>(),
    ) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut vs = Vec::new();
        for h in &blocks {
            let k = build_fundamental_cone(h);
            let rays = extreme_rays(&k, DEFAULT_RAY_DIM).unwrap().rays;
            let mut v = vec![Rational::zero(); h.num_cols()];
            for r in &rays {
                let c = ratio(rng.gen_range(0..4), rng.gen_range(1..3));
                for i in 0..v.len() {
                    v[i] += &r[i] * &c;
                }
            }
            vs.push(v);
        }
        // the embedding certifies membership in the block-row cone itself
        let w = blockrow_embed(&vs, &blocks).unwrap();
        let refs: Vec<&BinaryMatrix> = blocks.iter().collect();
        let joined = BinaryMatrix::hstack(&refs).unwrap();
        prop_assert!(naive_cone_member(&joined, &w));
    }

    #[test]
    fn repeated_block_certificates_hold(
        seed in any::<u64>(),
        t in 1usize..4,
    ) {
        // Build v as a sum of random rays of the Hamming cone and w by
        // splitting v across the t copies.
        use rand::Rng;
        let h = hamming();
        let k = build_fundamental_cone(&h);
        let rays = extreme_rays(&k, DEFAULT_RAY_DIM).unwrap().rays;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut v = vec![Rational::zero(); 7];
        for _ in 0..3 {
            let r = &rays[rng.gen_range(0..rays.len())];
            let c = int(rng.gen_range(0..3));
            for i in 0..7 {
                v[i] += &r[i] * &c;
            }
        }
        let mut w = vec![Rational::zero(); 7 * t];
        for i in 0..7 {
            let mut left = v[i].clone();
            for copy in 0..t {
                let share = if copy + 1 == t { left.clone() } else { &left * ratio(rng.gen_range(0..3), 2).min(int(1)) };
                left -= &share;
                w[copy * 7 + i] = share;
            }
        }
        // the certificate is cross-checked inside; an error would mean it lied
        let holds = repeated_block_membership(&h, &v, &w, t).unwrap();
        prop_assert!(holds);
        let copies: Vec<&BinaryMatrix> = (0..t).map(|_| &h).collect();
        prop_assert!(naive_cone_member(&BinaryMatrix::hstack(&copies).unwrap(), &w));
    }

    #[test]
    fn column_lift_certificates_hold(
        support in 1u8..8,
        num in 0i64..8,
        den in 1i64..3,
        which in 0usize..42,
    ) {
        let h = hamming();
        let k = build_fundamental_cone(&h);
        let rays = extreme_rays(&k, DEFAULT_RAY_DIM).unwrap().rays;
        let v = rays[which].clone();
        let bits: Vec<u8> = (0..3).map(|j| support >> j & 1).collect();
        let column = BinaryVector::from_bits(&bits);
        let value = ratio(num, den);
        let lift = ColumnLift::Single { column: column.clone(), value: value.clone() };
        if augment_column_lift(&h, &lift, &v).unwrap() {
            let extra = BinaryMatrix::from_rows(column.bits().map(|b| BinaryVector::from_bits(&[b])).collect()).unwrap();
            let augmented = BinaryMatrix::hstack(&[&h, &extra]).unwrap();
            let mut point = v.clone();
            point.push(value);
            prop_assert!(naive_cone_member(&augmented, &point));
        }
    }
}

#[test]
fn codewords_lie_in_the_cone() {
    for h in [hamming(), hamming7(), spc3(), matrix(&["110011", "011110"])] {
        let k = build_fundamental_cone(&h);
        for c in enumerate_codewords(&h, 24).unwrap() {
            assert!(k.contains(&c.to_rationals()).unwrap());
        }
    }
}

#[test]
fn non_members_can_still_satisfy_relaxed_conditions() {
    // a vector violating the lift condition but inside the augmented cone
    let h = hamming();
    let v = ints(&[2, 0, 0, 1, 1, 0, 1]);
    let lift = ColumnLift::Single {
        column: BinaryVector::parse("010").unwrap(),
        value: int(3),
    };
    assert!(!augment_column_lift(&h, &lift, &v).unwrap());
}
