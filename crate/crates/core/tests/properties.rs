//! Property tests for the algebra, the group models and the path layer.

use proptest::prelude::*;

use deadend_core::gf2::{gf2_solve, Gf2Solution, Gf2System};
use deadend_core::group::{
    retract_k_to_g, Base, GGroup, GenLetter, GenSet, GenWord, Group, HElem, HGroup, KGroup, Letter,
    Word,
};
use deadend_core::lamp::{LaurentPolyZ2, LocalizedLamp};
use deadend_core::oracle::dpath_search;
use deadend_core::paths::{
    dpath_min_length, normalize_decorated, path_from_word, witness_h, word_from_path,
};

fn poly_strategy() -> impl Strategy<Value = LaurentPolyZ2> {
    prop::collection::vec(-70i64..70, 0..12).prop_map(LaurentPolyZ2::from_exponents)
}

fn loc_strategy() -> impl Strategy<Value = LocalizedLamp> {
    (poly_strategy(), -4i64..6).prop_map(|(f, k)| LocalizedLamp::canonicalize(f, k))
}

fn word_strategy(alphabet: &'static [Base], max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..alphabet.len(), any::<bool>()), 0..=max_len)
        .prop_map(move |v| Word(v.into_iter().map(|(i, inv)| Letter::new(alphabet[i], inv)).collect()))
}

fn gen_word_strategy(size: usize, max_len: usize) -> impl Strategy<Value = GenWord> {
    prop::collection::vec((0..size, any::<bool>()), 0..=max_len)
        .prop_map(|v| GenWord(v.into_iter().map(|(i, inv)| GenLetter::new(i, inv)).collect()))
}

const HK: &[Base] = &[Base::A, Base::T, Base::U];
const KK: &[Base] = &[Base::A, Base::S, Base::T, Base::U];

proptest! {
    #[test]
    fn poly_addition_is_a_group(f in poly_strategy(), g in poly_strategy(), h in poly_strategy()) {
        prop_assert_eq!(f.add(&g), g.add(&f));
        prop_assert_eq!(f.add(&g).add(&h), f.add(&g.add(&h)));
        prop_assert!(f.add(&f).is_zero());
    }

    #[test]
    fn shifts_compose(f in poly_strategy(), a in -40i64..40, b in -40i64..40) {
        prop_assert_eq!(f.shift(a).shift(b), f.shift(a + b));
        prop_assert_eq!(f.shift(a).len(), f.len());
    }

    #[test]
    fn one_plus_x_division_inverts_multiplication(f in poly_strategy(), n in 0u32..9) {
        let g = f.mul_onepx_pow(n);
        let mut back = g.clone();
        for _ in 0..n {
            back = back.div_onepx().unwrap();
        }
        prop_assert_eq!(&back, &f);
        let (v, cofactor) = g.split_onepx();
        prop_assert!(f.is_zero() || v >= n);
        prop_assert_eq!(cofactor.mul_onepx_pow(v), g);
    }

    #[test]
    fn localized_forms_are_canonical(f in poly_strategy(), k in -4i64..6, j in 0u32..5) {
        let a = LocalizedLamp::canonicalize(f.clone(), k);
        let b = LocalizedLamp::canonicalize(f.mul_onepx_pow(j), k + j as i64);
        prop_assert_eq!(a.to_string(), b.to_string());
        prop_assert_eq!(a, b);
    }

    #[test]
    fn localized_arithmetic(a in loc_strategy(), b in loc_strategy(), m in -9i64..9, p in -4i64..4) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert!(a.add(&a).is_zero());
        prop_assert_eq!(a.scale(m, p).scale(-m, -p), a.clone());
        prop_assert_eq!(a.add(&b).scale(m, p), a.scale(m, p).add(&b.scale(m, p)));
    }

    #[test]
    fn h_and_k_are_groups(x in word_strategy(HK, 10), y in word_strategy(KK, 10), z in word_strategy(KK, 10)) {
        let h = HGroup.eval(&x).unwrap();
        prop_assert_eq!(HGroup.eval(&x.inverse()).unwrap(), HGroup.inv(&h));
        let (gy, gz) = (KGroup.eval(&y).unwrap(), KGroup.eval(&z).unwrap());
        prop_assert_eq!(KGroup.eval(&y.concat(&z)).unwrap(), KGroup.mul(&gy, &gz));
        prop_assert_eq!(KGroup.mul(&gy, &KGroup.inv(&gy)), KGroup.identity());
    }

    #[test]
    fn identifying_t_and_u_is_a_homomorphism(y in word_strategy(KK, 10), z in word_strategy(KK, 10)) {
        let (gy, gz) = (KGroup.eval(&y).unwrap(), KGroup.eval(&z).unwrap());
        prop_assert_eq!(
            retract_k_to_g(&KGroup.mul(&gy, &gz)),
            GGroup.mul(&retract_k_to_g(&gy), &retract_k_to_g(&gz))
        );
    }

    #[test]
    fn gf2_solutions_are_correct(cols in prop::collection::vec(poly_strategy(), 0..7), target in poly_strategy()) {
        let system = Gf2System::new(cols.clone(), target.clone());
        match gf2_solve(&system) {
            Gf2Solution::Solved(idx) => {
                let sum = idx.iter().fold(LaurentPolyZ2::zero(), |acc, &i| acc.add(&cols[i]));
                prop_assert_eq!(sum, target);
            }
            Gf2Solution::Unsolvable => {
                for mask in 0u32..1 << cols.len() {
                    let sum = (0..cols.len())
                        .filter(|i| mask >> i & 1 == 1)
                        .fold(LaurentPolyZ2::zero(), |acc, i| acc.add(&cols[i]));
                    prop_assert_ne!(&sum, &target);
                }
            }
        }
    }

    #[test]
    fn dpath_formula(q in -12i64..12, r in -12i64..12) {
        prop_assert_eq!(dpath_min_length(q, r), dpath_search(q, r));
    }

    #[test]
    fn d_codec_preserves_elements(w in gen_word_strategy(GenSet::d().gens.len(), 8)) {
        let d = GenSet::d();
        let g = w.eval(&HGroup, &d).unwrap();
        let path = path_from_word(&HGroup, &d, &w).unwrap();
        prop_assert_eq!(path.to_h_elem().unwrap(), g.clone());
        let table = deadend_core::group::GenTable::new(&HGroup, &d).unwrap();
        let back = word_from_path(&HGroup, &table, &path).unwrap();
        prop_assert_eq!(back.eval(&HGroup, &d).unwrap(), g);
        prop_assert!(back.len() <= w.len());
    }

    #[test]
    fn normalization_keeps_elements(w in gen_word_strategy(GenSet::b().gens.len(), 6)) {
        let b = GenSet::b();
        let path = path_from_word(&KGroup, &b, &w).unwrap();
        if let Ok(norm) = normalize_decorated(&path) {
            prop_assert_eq!(norm.to_k_elem().unwrap(), path.to_k_elem().unwrap());
            prop_assert!(norm.vertical_count() <= path.vertical_count());
            prop_assert!(
                norm.vertical_count() + norm.diagonal_count()
                    <= path.vertical_count() + path.diagonal_count()
            );
        }
    }

    #[test]
    fn h_witnesses_meet_the_bound(
        n in 1i64..9,
        lamps in prop::collection::vec(-8i64..=8, 0..8),
        q in -8i32..=8,
        r in -8i32..=8,
    ) {
        let lamps: Vec<i64> = lamps.into_iter().filter(|x| x.abs() <= n).collect();
        prop_assume!((q.abs() + r.abs()) as i64 <= n);
        let g = HElem::new(LaurentPolyZ2::from_exponents(lamps), (q, r));
        let w = witness_h(&g, n).unwrap();
        prop_assert!(w.len() as i64 <= 4 * n);
        prop_assert_eq!(w.eval(&HGroup, &GenSet::c()).unwrap(), g);
    }
}
