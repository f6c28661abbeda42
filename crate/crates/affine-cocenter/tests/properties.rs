use std::sync::OnceLock;

use affine_cocenter::affine_weyl::parse_element;
use affine_cocenter::hecke::Cocenter;
use affine_cocenter::{AffineElt, AffineWeyl, Conjugacy};
use num_bigint::BigInt;
use proptest::prelude::*;

fn cocenter(name: &'static str) -> &'static Cocenter {
    static SL3: OnceLock<Cocenter> = OnceLock::new();
    static SP4: OnceLock<Cocenter> = OnceLock::new();
    static GL3: OnceLock<Cocenter> = OnceLock::new();
    let cell = match name {
        "SL3" => &SL3,
        "Sp4" => &SP4,
        _ => &GL3,
    };
    cell.get_or_init(|| Cocenter::untwisted(name).unwrap())
}

fn group() -> impl Strategy<Value = &'static str> {
    prop_oneof![Just("SL3"), Just("Sp4"), Just("GL3")]
}

fn elt(aw: &AffineWeyl, word: &[usize], tau: i64) -> AffineElt {
    let w = aw.word_elt(&word.iter().map(|i| i % aw.num_generators()).collect::<Vec<_>>());
    aw.mul(&w, &aw.pow(&aw.tau(), tau))
}

fn words(max: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..4, 0..=max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn printed_form_reparses(g in group(), word in words(12), tau in -2i64..=2) {
        let aw = cocenter(g).group();
        let w = elt(aw, &word, tau);
        prop_assert_eq!(parse_element(aw, &aw.format(&w)).unwrap(), w);
    }

    #[test]
    fn length_is_inverse_invariant(g in group(), word in words(12), tau in -2i64..=2) {
        let aw = cocenter(g).group();
        let w = elt(aw, &word, tau);
        prop_assert_eq!(aw.length(&w), aw.length(&aw.inverse(&w)));
        prop_assert!(aw.length(&w) <= word.len());
        let (reduced, _) = aw.reduced_word(&w);
        prop_assert_eq!(reduced.len(), aw.length(&w));
    }

    #[test]
    fn conjugation_keeps_the_class(g in group(), word in words(8), other in words(6)) {
        let conj: &Conjugacy = cocenter(g).conjugacy();
        let aw = conj.group();
        let w = elt(aw, &word, 0);
        let x = elt(aw, &other, 1);
        let y = conj.conjugate(&x, &w);
        prop_assert_eq!(conj.newton_kottwitz(&w), conj.newton_kottwitz(&y));
        prop_assert!(conj.are_conjugate(&w, &y));
        let m = conj.reduce_to_minimal(&w).unwrap().terminal;
        prop_assert!(aw.length(&m) <= aw.length(&w));
        prop_assert!(conj.is_minimal(&m).unwrap());
        prop_assert_eq!(conj.class_key(&w).unwrap(), conj.class_key(&y).unwrap());
    }

    #[test]
    fn class_polynomials_specialize_to_one_class(g in group(), word in words(9)) {
        let coc = cocenter(g);
        let w = elt(coc.group(), &word, 0);
        let d = coc.class_poly(&w).unwrap();
        prop_assert_eq!(d.sum_at_one(), BigInt::from(1));
        prop_assert!(d.entries.values().all(|f| f.is_q_minus_one_positive()));
        let top = d.entries.keys().map(|k| k.min_length).max().unwrap();
        prop_assert!(top <= coc.group().length(&w));
    }
}
