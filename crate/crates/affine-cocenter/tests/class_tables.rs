use affine_cocenter::conjugacy::QuadLabel;
use affine_cocenter::linalg::{rat, rat_frac};
use affine_cocenter::{AffineWeyl, Conjugacy, Decision};
use num_rational::BigRational;

fn newton(c: &Conjugacy, amb: &[BigRational]) -> Vec<BigRational> {
    c.group().root_datum().from_ambient_q(amb).unwrap()
}

#[test]
fn gl3_counts_at_n_zero() {
    let c = Conjugacy::untwisted("GL3").unwrap();
    let keys = c.classes_up_to(8, 2, |_| true).unwrap();
    let h = rat_frac(1, 2);
    let t = rat_frac(1, 3);
    let tt = rat_frac(2, 3);
    let rows: Vec<(Vec<BigRational>, usize)> = vec![
        (vec![rat(1), rat(0), rat(-1)], 1),
        (vec![rat(0), rat(0), rat(-1)], 2),
        (vec![h.clone(), h.clone(), rat(-1)], 1),
        (vec![rat(1), rat(0), rat(0)], 2),
        (vec![rat(1), h.clone(), h.clone()], 1),
        (vec![rat(0), rat(0), rat(0)], 3),
        (vec![t.clone(), t.clone(), t], 1),
        (vec![tt.clone(), tt.clone(), tt], 1),
    ];
    for (amb, n) in rows {
        let nu = newton(&c, &amb);
        let found: Vec<_> = keys.iter().filter(|k| k.invariant.newton == nu).collect();
        assert_eq!(found.len(), n, "{amb:?}: {found:?}");
    }
}

fn elt(aw: &AffineWeyl, text: &str) -> affine_cocenter::AffineElt {
    affine_cocenter::affine_weyl::parse_element(aw, text).unwrap()
}

#[test]
fn sl3_pairs_of_reflections_stay_apart() {
    let c = Conjugacy::untwisted("SL3").unwrap();
    let aw = c.group();
    let one = aw.identity();
    let labels = [
        [QuadLabel::Finite(1), QuadLabel::Finite(2)],
        [QuadLabel::Finite(1), QuadLabel::Affine(0)],
        [QuadLabel::Finite(2), QuadLabel::Affine(0)],
    ];
    let words = ["s1 s2", "s1 s0", "s2 s0"];
    let quads: Vec<_> = labels
        .iter()
        .zip(words)
        .map(|(k, w)| c.quadruple_from_parts(&[1, 2], &one, k, &elt(aw, w)).unwrap())
        .collect();
    for (i, qi) in quads.iter().enumerate() {
        let from_class = c.standard_quadruple(&elt(aw, words[i])).unwrap();
        assert_eq!(c.quadruples_equivalent(qi, &from_class), Decision::Yes);
        for qj in &quads[i + 1..] {
            assert_eq!(c.quadruples_equivalent(qi, qj), Decision::No);
        }
    }
}

#[test]
fn gl3_levi_reflections_are_equivalent() {
    let c = Conjugacy::untwisted("GL3").unwrap();
    let aw = c.group();
    let t = elt(aw, "t[0,0,-1]");
    let s1 = aw.generator(1);
    let finite = c.quadruple_from_parts(&[1], &t, &[QuadLabel::Finite(1)], &s1).unwrap();
    let w = c.reduce_to_minimal(&aw.mul(&s1, &t)).unwrap().terminal;
    let q = c.standard_quadruple(&w).unwrap();
    assert_eq!(q.k, vec![QuadLabel::Finite(1)]);
    assert_eq!(c.quadruples_equivalent(&finite, &q), Decision::Yes);
    let plain = c.quadruple_from_parts(&[1], &t, &[], &aw.identity()).unwrap();
    assert_eq!(c.quadruples_equivalent(&finite, &plain), Decision::No);
}
