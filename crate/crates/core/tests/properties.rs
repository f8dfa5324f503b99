use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use movcone::atlas::{self, ClassificationResult, DEFAULT_MAX_STEPS};
use movcone::group::{self, GroupElementNF, PsiWord, TWord};
use movcone::scalar::QuadExt;
use movcone::symmetric::{SymLetter, SymWord};
use movcone::CoxeterSystem;

fn system(n: u32, m: usize) -> CoxeterSystem {
    CoxeterSystem::new(n, m, true).unwrap()
}

fn systems() -> impl Strategy<Value = CoxeterSystem> {
    prop_oneof![Just((2u32, 3usize)), Just((3, 3)), Just((2, 4)), Just((4, 3)), Just((3, 4))]
        .prop_map(|(n, m)| system(n, m))
}

fn t_word(m: usize, max_len: usize) -> impl Strategy<Value = TWord> {
    prop::collection::vec(1..=m, 0..=max_len).prop_map(|v| TWord(v).reduced())
}

fn psi_word(m: usize, max_len: usize) -> impl Strategy<Value = PsiWord> {
    let pairs: Vec<(usize, usize)> = (1..=m).flat_map(|i| (i + 1..=m).map(move |j| (i, j))).collect();
    prop::collection::vec((prop::sample::select(pairs), prop_oneof![Just(1i64), Just(-1)]), 0..=max_len).prop_map(
        |letters| {
            let mut w = PsiWord::empty();
            for ((i, j), e) in letters {
                w.push(i, j, e).unwrap();
            }
            w
        },
    )
}

fn positive_rationals(m: usize) -> impl Strategy<Value = Vec<BigRational>> {
    prop::collection::vec((1i64..=40, 1i64..=9), m)
        .prop_map(|v| v.into_iter().map(|(p, q)| BigRational::new(p.into(), q.into())).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn classify_recovers_word_and_class(
        (sys, w, c) in systems().prop_flat_map(|s| {
            let m = s.rank();
            (Just(s), t_word(m, 5), positive_rationals(m))
        })
    ) {
        let d = w.matrix(&sys).unwrap().mul_vec(&c).unwrap();
        let r = atlas::classify(&sys, &d, DEFAULT_MAX_STEPS).unwrap();
        prop_assert_eq!(&r.t_word, &w);
        prop_assert_eq!(&r.chamber_coords, &c);
        prop_assert_eq!(r.reconstruct(&sys).unwrap(), d.clone());
        prop_assert_eq!(r.reconstruct_via_t(&sys).unwrap(), d);
    }

    #[test]
    fn psi_is_a_homomorphism(
        (sys, u, v) in systems().prop_flat_map(|s| {
            let m = s.rank();
            (Just(s), psi_word(m, 4), psi_word(m, 4))
        })
    ) {
        let uv = u.concat(&v);
        let lhs = uv.matrix(&sys).unwrap();
        let rhs = u.matrix(&sys).unwrap().mul(&v.matrix(&sys).unwrap()).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        let nf = group::t_normal_form(&sys, &uv).unwrap();
        let nf_product = group::t_normal_form(&sys, &u).unwrap().mul(&group::t_normal_form(&sys, &v).unwrap());
        prop_assert_eq!(&nf, &nf_product);
        prop_assert_eq!(nf.matrix(&sys).unwrap(), lhs);
    }

    #[test]
    fn inverse_words_cancel((sys, w) in systems().prop_flat_map(|s| { let m = s.rank(); (Just(s), psi_word(m, 6)) })) {
        let nf = group::t_normal_form(&sys, &w.concat(&w.inverse())).unwrap();
        prop_assert!(nf.is_identity());
        prop_assert_eq!(nf, GroupElementNF::identity(sys.rank()));
    }

    #[test]
    fn classification_serializes_losslessly(
        (sys, w, c) in systems().prop_flat_map(|s| {
            let m = s.rank();
            (Just(s), t_word(m, 4), positive_rationals(m))
        })
    ) {
        let d = w.matrix(&sys).unwrap().mul_vec(&c).unwrap();
        let r = atlas::classify(&sys, &d, DEFAULT_MAX_STEPS).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        let back: ClassificationResult = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, r);
    }

    #[test]
    fn psi_words_serialize_losslessly(w in psi_word(4, 6)) {
        let back: PsiWord = serde_json::from_str(&serde_json::to_string(&w).unwrap()).unwrap();
        prop_assert_eq!(back, w);
    }

    #[test]
    fn symmetric_words_serialize_losslessly(letters in prop::collection::vec(prop_oneof![Just(0i64), -3i64..=3], 0..8)) {
        let mut w = SymWord::default();
        for k in letters {
            w.push(if k == 0 { SymLetter::A } else { SymLetter::B(k) });
        }
        let back: SymWord = serde_json::from_str(&serde_json::to_string(&w).unwrap()).unwrap();
        prop_assert_eq!(back, w);
    }

    #[test]
    fn quadric_values_are_preserved(
        (sys, w, v) in systems().prop_flat_map(|s| {
            let m = s.rank();
            (Just(s), psi_word(m, 4), prop::collection::vec(-20i64..=20, m))
        })
    ) {
        let v: Vec<BigRational> = v.into_iter().map(|x| BigRational::from_integer(x.into())).collect();
        let g = w.matrix(&sys).unwrap();
        let gv = g.mul_vec(&v).unwrap();
        prop_assert_eq!(atlas::isotropy_value(&sys, &gv).unwrap(), atlas::isotropy_value(&sys, &v).unwrap());
    }
}

fn q(n: i64) -> QuadExt {
    QuadExt::rational(BigRational::from_integer(BigInt::from(n)))
}

fn chart_distance_sq(a: &[QuadExt], b: &[QuadExt]) -> QuadExt {
    let pa = atlas::project_affine(a).unwrap();
    let pb = atlas::project_affine(b).unwrap();
    pa.iter().zip(&pb).fold(QuadExt::zero(), |acc, (x, y)| {
        let d = x.try_sub(y).unwrap();
        acc.try_add(&d.try_mul(&d).unwrap()).unwrap()
    })
}

#[test]
fn flop_iterates_approach_the_attracting_direction() {
    let sys = system(3, 3);
    let psi = group::psi_matrix(&sys, 1, 2).unwrap();
    // the upper-left block [[-3,-8],[8,21]] has trace 18 and determinant 1
    let lambda = QuadExt::new(BigRational::from_integer(9.into()), BigRational::from_integer(4.into()), 5.into()).unwrap();
    let x = q(8);
    let y = q(-3).try_sub(&lambda).unwrap();
    let z = q(12)
        .try_mul(&x)
        .unwrap()
        .try_add(&q(36).try_mul(&y).unwrap())
        .unwrap()
        .try_div(&lambda.try_sub(&QuadExt::one()).unwrap())
        .unwrap();
    let eigen = vec![x, y, z];

    let lifted: movcone::Matrix<QuadExt> = movcone::Matrix::from_fn(3, |r, c| QuadExt::rational(psi.get(r, c).clone()));
    let image = lifted.mul_vec(&eigen).unwrap();
    let scaled: Vec<QuadExt> = eigen.iter().map(|e| lambda.try_mul(e).unwrap()).collect();
    assert_eq!(image, scaled);

    let mut v: Vec<BigRational> = vec![BigRational::one(); 3];
    let mut previous: Option<QuadExt> = None;
    for k in 1..=5 {
        v = psi.mul_vec(&v).unwrap();
        let lifted_v: Vec<QuadExt> = v.iter().cloned().map(QuadExt::rational).collect();
        let dist = chart_distance_sq(&lifted_v, &eigen);
        if let Some(prev) = &previous {
            assert!(prev.try_sub(&dist).unwrap().signum().is_gt(), "distance did not shrink at k = {k}");
        }
        previous = Some(dist);
    }
}
