mod common;

use common::*;
use lpcone::cone::{block_column_cones, build_fundamental_cone, intersect_cones, ConeSystem};
use lpcone::constructions::*;
use lpcone::gf2::{is_quasi_cyclic, BinaryMatrix, BinaryVector};
use lpcone::qcimprove::add_qc_shifts;
use lpcone::rational::Rational;
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The seven redundant rows displayed with the Hagiwara example, one
/// 7-bit block per group.
const DISPLAYED: [&str; 7] = [
    "1001000 0000000 0000110 0010010 0010100 0101000",
    "0100100 0000000 0000011 0001001 0001010 0010100",
    "0010010 0000000 1000001 1000100 0000101 0001010",
    "0001001 0000000 1100000 0100010 1000010 0000101",
    "1000100 0000000 0110000 0010001 0100001 1000010",
    "0100010 0000000 0011000 1001000 1010000 0100001",
    "0010001 0000000 0001100 0100100 0101000 1010000",
];

fn bits(s: &str) -> BinaryVector {
    BinaryVector::parse(&s.replace(' ', "")).unwrap()
}

fn hagiwara(e: &[[i64; 6]; 3]) -> ExponentMatrix {
    ExponentMatrix::from_array(e, HAGIWARA_BLOCK).unwrap()
}

fn concat(parts: &[Vec<Rational>]) -> Vec<Rational> {
    parts.iter().flatten().cloned().collect()
}

#[test]
fn hagiwara_dimensions_and_weights() {
    for e in [&HAGIWARA_C, &HAGIWARA_D] {
        let h = qc_from_exponents(&hagiwara(e)).unwrap();
        assert_eq!((h.num_rows(), h.num_cols()), (21, 42));
        assert!(h.row_weights().iter().all(|&w| w == 6));
        assert!(h.col_weights().iter().all(|&w| w == 3));
    }
    let hc = qc_from_exponents(&hagiwara(&HAGIWARA_C)).unwrap();
    let hd = qc_from_exponents(&hagiwara(&HAGIWARA_D)).unwrap();
    let css = css_matrix(&hc, &hd).unwrap();
    assert_eq!((css.num_rows(), css.num_cols()), (42, 84));
    assert!(!is_quasi_cyclic(&css, 12));
    let form = to_block_circulant(&css, HAGIWARA_BLOCK).unwrap();
    assert_eq!(form.n0, 12);
    assert!(is_quasi_cyclic(&form.matrix, 12));
    let recipe = RecipeFile::parse(r#"{"schema":1,"kind":"hagiwara","block_circulant_form":true}"#)
        .unwrap()
        .recipe
        .build()
        .unwrap();
    assert_eq!(recipe, form.matrix);
}

#[test]
fn displayed_rows_are_the_orbit_of_the_low_weight_dual_word() {
    let hc = qc_from_exponents(&hagiwara(&HAGIWARA_C).negated()).unwrap();
    let c = bits(DISPLAYED[0]);
    assert!(hc.row_space_contains(&c));
    assert!(!hc.contains_row(&c));

    let form = to_block_circulant(&hc, HAGIWARA_BLOCK).unwrap();
    assert_eq!(form.n0, 6);
    let grown = add_qc_shifts(&form.matrix, &form.forward(&c), 6).unwrap();
    assert_eq!(grown.num_rows(), 28);
    assert!(is_quasi_cyclic(&grown, 6));
    let mut added: Vec<BinaryVector> = grown.rows()[21..].iter().map(|r| form.backward(r)).collect();
    added.sort();
    let mut expected: Vec<BinaryVector> = DISPLAYED.iter().map(|s| bits(s)).collect();
    expected.sort();
    assert_eq!(added, expected);
}

#[test]
fn circulant_blocks_have_trivial_cones() {
    for s in 0..7 {
        let p = circulant_permutation(7, s).unwrap();
        let rays = lpcone::cone::extreme_rays(&build_fundamental_cone(&p), 8).unwrap();
        assert!(rays.rays.is_empty());
    }
}

/// Per-column cone members of a QC-CSS matrix concatenate into `K(H)`.
fn check_block_column_containment(css: &BinaryMatrix, t: usize, trials: u64) {
    let (rows, cols) = (css.num_rows() / t, css.num_cols() / t);
    let cones = block_column_cones(css, &vec![t; rows], &vec![t; cols]).unwrap();
    let k = build_fundamental_cone(css);
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..trials {
        let parts: Vec<Vec<Rational>> = cones.iter().map(|c| random_cone_member(c, &mut rng)).collect();
        let v = concat(&parts);
        assert!(k.contains(&v).unwrap());
        assert!(naive_cone_member(css, &v));
    }
}

#[test]
fn hagiwara_block_column_containment() {
    let hc = qc_from_exponents(&hagiwara(&HAGIWARA_C)).unwrap();
    let hd = qc_from_exponents(&hagiwara(&HAGIWARA_D)).unwrap();
    check_block_column_containment(&css_matrix(&hc, &hd).unwrap(), HAGIWARA_BLOCK, 20);
}

#[test]
fn weight_two_circulant_containment_is_not_vacuous() {
    let h = weight_two_blocks();
    assert_eq!(h.num_cols(), 28);
    let cones = block_column_cones(&h, &[7; 4], &[7; 4]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    assert!(cones.iter().any(|c| random_cone_member(c, &mut rng).iter().any(|x| !x.is_zero())));
    check_block_column_containment(&h, 7, 50);
}

/// Block-diagonal pair of 14 x 14 matrices built from `I + P_s` blocks.
fn weight_two_blocks() -> BinaryMatrix {
    let block = |s: i64| {
        let mut m = circulant_permutation(7, 0).unwrap();
        let p = circulant_permutation(7, s).unwrap();
        for r in 0..7 {
            for c in 0..7 {
                m.set(r, c, m.get(r, c) ^ p.get(r, c));
            }
        }
        m
    };
    let grid = |shifts: [[i64; 2]; 2]| {
        let rows: Vec<BinaryMatrix> = shifts
            .iter()
            .map(|r| BinaryMatrix::hstack(&[&block(r[0]), &block(r[1])]).unwrap())
            .collect();
        BinaryMatrix::vstack(&[&rows[0], &rows[1]]).unwrap()
    };
    BinaryMatrix::block_diag(&[&grid([[1, 2], [3, 1]]), &grid([[2, 5], [4, 3]])]).unwrap()
}

#[test]
fn sc_ldpc_shapes() {
    let h = |s: &str| matrix(&[s]);
    let t = sc_ldpc(&[h("11"), h("11")], 2, ScMode::Terminated).unwrap();
    assert_eq!(t, matrix(&["1100", "1111", "0011"]));
    let blocks = [matrix(&["110", "011"]), matrix(&["101", "010"])];
    let tb = sc_ldpc(&blocks, 3, ScMode::Tailbiting).unwrap();
    assert_eq!((tb.num_rows(), tb.num_cols()), (6, 9));
    let tm = sc_ldpc(&blocks, 3, ScMode::Terminated).unwrap();
    assert_eq!((tm.num_rows(), tm.num_cols()), (8, 9));
    assert!(sc_ldpc(&blocks, 1, ScMode::Tailbiting).is_err());
    let solo = sc_ldpc(&blocks[..1], 2, ScMode::Tailbiting).unwrap();
    assert_eq!(solo, BinaryMatrix::block_diag(&[&blocks[0], &blocks[0]]).unwrap());
}

#[test]
fn sc_ldpc_corollary_containment() {
    let blocks = [matrix(&["1101", "0111"]), matrix(&["1110", "1011"])];
    let shared: ConeSystem = intersect_cones(
        &blocks.iter().map(build_fundamental_cone).collect::<Vec<_>>(),
    )
    .unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for mode in [ScMode::Terminated, ScMode::Tailbiting] {
        let h = sc_ldpc(&blocks, 3, mode).unwrap();
        let k = build_fundamental_cone(&h);
        for _ in 0..60 {
            let parts: Vec<Vec<Rational>> = (0..3).map(|_| random_cone_member(&shared, &mut rng)).collect();
            let v = concat(&parts);
            assert!(k.contains(&v).unwrap());
            assert!(naive_cone_member(&h, &v));
        }
    }
}

#[test]
fn label_maps_and_normalizer_cone() {
    let g: PauliString = "XZZXI".parse().unwrap();
    assert_eq!(label_matrix(&[g]).unwrap(), matrix(&["1001001100"]));
    assert_eq!(label_matrix(&["YY".parse().unwrap()]).unwrap(), matrix(&["1111"]));
    assert!("XQ".parse::<PauliString>().is_err());
    assert!("-XZ".parse::<PauliString>().is_err());

    let gens: Vec<PauliString> = [
        "IIIXXXX", "IXXIIXX", "XIXIXIX", "IIIZZZZ", "IZZIIZZ", "ZIZIZIZ",
    ]
    .iter()
    .map(|s| s.parse().unwrap())
    .collect();
    for a in &gens {
        for b in &gens {
            assert!(!a.symplectic_product(b).unwrap());
        }
    }
    let label = label_matrix(&gens).unwrap();
    assert_eq!(label, steane_matrix(3, HammingForm::Lexicographic).unwrap());
    let cone = normalizer_cone(&gens).unwrap();
    let direct = build_fundamental_cone(&label);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..200 {
        let v: Vec<Rational> = (0..14)
            .map(|_| lpcone::rational::ratio(rand::Rng::gen_range(&mut rng, 0..4), 1))
            .collect();
        assert_eq!(cone.contains(&v).unwrap(), direct.contains(&v).unwrap());
    }
    let x: PauliString = "XI".parse().unwrap();
    let z: PauliString = "ZI".parse().unwrap();
    assert!(x.symplectic_product(&z).unwrap());
}

#[test]
fn hamming_forms() {
    let lex = hamming_matrix(3, HammingForm::Lexicographic).unwrap();
    assert_eq!(lex, matrix(&["0001111", "0110011", "1010101"]));
    assert_eq!(hamming_matrix(3, HammingForm::Cyclic).unwrap(), hamming());
    assert_eq!(hamming_matrix(2, HammingForm::Lexicographic).unwrap().num_cols(), 3);
    assert!(hamming_matrix(1, HammingForm::Lexicographic).is_err());
    assert!(css_matrix(&matrix(&["110"]), &matrix(&["101"])).is_err());
    assert_eq!(circulant_permutation(3, 1).unwrap(), matrix(&["010", "001", "100"]));
    assert_eq!(circulant_permutation(3, 3).unwrap(), BinaryMatrix::identity(3));
    assert_eq!(
        block_circulant(&[matrix(&["10"]), matrix(&["01"])]).unwrap(),
        matrix(&["1001", "0110"])
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn exponent_matrices_become_quasi_cyclic(
        e in proptest::collection::vec(proptest::collection::vec(0i64..5, 3), 2),
    ) {
        let em = ExponentMatrix::new(e, 5).unwrap();
        let h = qc_from_exponents(&em).unwrap();
        let form = to_block_circulant(&h, 5).unwrap();
        prop_assert!(is_quasi_cyclic(&form.matrix, 3));
        for c in lpcone::gf2::enumerate_codewords(&h, 24).unwrap() {
            prop_assert!(form.matrix.is_codeword(&form.forward(&c)));
            prop_assert_eq!(form.backward(&form.forward(&c)), c);
        }
    }

    #[test]
    fn block_circulant_nullspace_is_shift_closed(
        blocks in proptest::collection::vec(proptest::collection::vec(proptest::collection::vec(0u8..2, 2), 1), 1..4),
    ) {
        let mats: Vec<BinaryMatrix> = blocks.iter().map(|b| BinaryMatrix::from_dense(b).unwrap()).collect();
        let h = block_circulant(&mats).unwrap();
        for c in lpcone::gf2::enumerate_codewords(&h, 24).unwrap() {
            prop_assert!(h.is_codeword(&c.cyclic_shift(2)));
        }
    }
}
