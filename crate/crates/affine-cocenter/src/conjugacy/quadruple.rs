//! Standard quadruples (J, x, K, C) labelling δ-conjugacy classes.

use std::fmt;

use serde_json::{json, Value};

use super::Conjugacy;
use crate::affine_weyl::{AffineElt, AffineWeyl, GenKind};
use crate::error::{Decision, Error, Result};
use crate::linalg::rat;

/// A simple reflection of W̃_J.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QuadLabel {
    /// s_i for the simple root α_i of the whole group (1-based).
    Finite(usize),
    /// The affine reflection of the given irreducible component of R_J.
    Affine(usize),
}

impl fmt::Display for QuadLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuadLabel::Finite(i) => write!(f, "s{i}"),
            QuadLabel::Affine(0) => write!(f, "s0"),
            QuadLabel::Affine(c) => write!(f, "s0.{c}"),
        }
    }
}

/// The extended affine Weyl group W̃_J of a standard Levi, with the labels
/// of its simple reflections.
struct Levi {
    aw: AffineWeyl,
    labels: Vec<QuadLabel>,
}

impl Levi {
    fn new(big: &AffineWeyl, j0: &[usize]) -> Result<Self> {
        let aw = AffineWeyl::new(big.root_datum().levi(j0)?)?;
        let labels = (0..aw.num_generators())
            .map(|i| match aw.generator_kind(i) {
                GenKind::Finite(a) => QuadLabel::Finite(j0[a] + 1),
                GenKind::Affine(c) => QuadLabel::Affine(c),
            })
            .collect();
        Ok(Levi { aw, labels })
    }

    fn index_of(&self, l: QuadLabel) -> Option<usize> {
        self.labels.iter().position(|&m| m == l)
    }

    fn down(&self, big: &AffineWeyl, w: &AffineElt) -> Result<AffineElt> {
        self.aw.transfer(w, big).ok_or_else(|| Error::domain("element does not lie in W̃_J"))
    }

    fn up(&self, big: &AffineWeyl, w: &AffineElt) -> AffineElt {
        big.transfer(w, &self.aw).expect("W₀ of a Levi embeds in W₀")
    }

    fn generator_index(&self, big: &AffineWeyl, e: &AffineElt) -> Option<usize> {
        let e = self.aw.transfer(e, big)?;
        (0..self.aw.num_generators()).find(|&i| self.aw.generator(i) == e)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct StandardQuadruple {
    /// J as 1-based simple root indices.
    pub j: Vec<usize>,
    pub x: AffineElt,
    pub k: Vec<QuadLabel>,
    /// The class C, sorted by length in W̃_J.
    pub c: Vec<AffineElt>,
    pub c_words: Vec<Vec<QuadLabel>>,
}

impl fmt::Debug for StandardQuadruple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(J={:?}, x={:?}, K={:?}, |C|={})", self.j, self.x, self.k, self.c.len())
    }
}

fn set_string<T: fmt::Display>(xs: &[T]) -> String {
    if xs.is_empty() {
        return "∅".into();
    }
    format!("{{{}}}", xs.iter().map(T::to_string).collect::<Vec<_>>().join(", "))
}

fn word_string(w: &[QuadLabel]) -> String {
    if w.is_empty() {
        "1".into()
    } else {
        w.iter().map(QuadLabel::to_string).collect()
    }
}

/// t^λ followed by a reduced word for the finite part, e.g. `t[1,0,0]*s1*s2`.
pub fn translation_form(aw: &AffineWeyl, w: &AffineElt) -> String {
    let lam = aw.lambda(w);
    let mut parts = Vec::new();
    if lam.iter().any(|&x| x != 0) {
        let amb = aw.root_datum().to_ambient(&lam);
        parts.push(format!(
            "t[{}]",
            amb.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
        ));
    }
    for &j in aw.finite_weyl().word(w.finite_index()) {
        let g = aw.generator_of_kind(GenKind::Finite(j - 1)).expect("finite generator");
        parts.push(format!("s{g}"));
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

impl StandardQuadruple {
    /// The first element of C.
    pub fn u(&self) -> AffineElt {
        self.c[0]
    }

    pub fn is_straight_shape(&self) -> bool {
        self.k.is_empty()
    }

    /// Printed as `({1, 2}, t[1,0,0]*s1*s2, ∅, {1})`.
    pub fn display(&self, aw: &AffineWeyl) -> String {
        let c: Vec<String> = self.c_words.iter().map(|w| word_string(w)).collect();
        format!(
            "({}, {}, {}, {})",
            set_string(&self.j),
            translation_form(aw, &self.x),
            set_string(&self.k),
            set_string(&c)
        )
    }

    pub fn to_json(&self, aw: &AffineWeyl) -> Value {
        json!({
            "J": self.j,
            "x": translation_form(aw, &self.x),
            "K": self.k.iter().map(QuadLabel::to_string).collect::<Vec<_>>(),
            "C": self.c_words.iter().map(|w| word_string(w)).collect::<Vec<_>>(),
        })
    }
}

impl Conjugacy {
    /// Ad(x)∘δ on simple reflections: s ↦ x·δ(s)·x⁻¹ when that is simple.
    fn twisted_image(&self, x: &AffineElt, s: usize) -> Option<usize> {
        let aw = self.group();
        let e = aw.mul(&aw.mul(x, &aw.generator(self.twist().perm(s))), &aw.inverse(x));
        (0..aw.num_generators()).find(|&j| aw.generator(j) == e)
    }

    pub(crate) fn stable_closure(&self, x: &AffineElt, start: &[usize]) -> Result<Vec<usize>> {
        let mut k: Vec<usize> = start.to_vec();
        let mut i = 0;
        while i < k.len() {
            let t = self
                .twisted_image(x, k[i])
                .ok_or_else(|| Error::internal("Ad(x)δ does not permute K"))?;
            if !k.contains(&t) {
                k.push(t);
            }
            i += 1;
        }
        k.sort_unstable();
        Ok(k)
    }

    /// A triple (u, x, K) with u·x ≈ w: x straight and minimal in W_K·x,
    /// Ad(x)δ(K) = K, u ∈ W_K, and K the smallest such set containing supp(u).
    pub fn find_triple(&self, w_min: &AffineElt) -> Result<(AffineElt, AffineElt, Vec<usize>)> {
        let aw = self.group();
        let n = aw.num_generators();
        let mut subsets: Vec<Vec<usize>> = (0u32..(1 << n))
            .map(|m| (0..n).filter(|&i| m & (1 << i) != 0).collect::<Vec<_>>())
            .filter(|k| aw.is_finite_subset(k))
            .collect();
        subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let class = self.approx_class(w_min)?;
        for k in &subsets {
            for y in &class {
                let (u, x) = aw.coset_decompose(y, k)?;
                if !self.is_straight(&x)? || self.i_set(k, &x)? != *k {
                    continue;
                }
                let k2 = self.stable_closure(&x, &aw.support(&u))?;
                return Ok((u, x, k2));
            }
        }
        Err(Error::internal("no reduction triple in the ≈-class"))
    }

    /// The standard quadruple of the class of a minimal-length element.
    pub fn standard_quadruple(&self, w_min: &AffineElt) -> Result<StandardQuadruple> {
        if !self.is_minimal(w_min)? {
            return Err(Error::domain("element is not of minimal length in its class"));
        }
        let (u, x, k) = self.find_triple(w_min)?;
        let aw = self.group();
        let (nu, _) = self.newton_vector(&x);
        let (bar, _) = aw.root_datum().dominant_representative(&nu);
        let rd = aw.root_datum();
        let j0: Vec<usize> = (0..rd.semisimple_rank())
            .filter(|&i| rd.pairing_q(&rd.simple_roots()[i], &bar) == rat(0))
            .collect();
        let fin = aw.finite_weyl();
        let z = (0..fin.order() as u16)
            .filter(|&v| {
                let m = crate::linalg::to_rational(fin.matrix(v));
                let img: Vec<_> = m
                    .iter()
                    .map(|row| row.iter().zip(&nu).map(|(a, b)| a * b).fold(rat(0), |s, t| s + t))
                    .collect();
                img == bar
            })
            .find(|&v| j0.iter().all(|&i| fin.length(fin.mul(fin.simple(i), v)) > fin.length(v)))
            .ok_or_else(|| Error::internal("Newton point has no dominant conjugate"))?;
        let z = aw.finite(z);
        let zi = aw.inverse(&z);
        let x2 = self.conjugate(&z, &x);
        let u2 = aw.mul(&aw.mul(&z, &u), &zi);
        let levi = Levi::new(aw, &j0)?;
        let mut k2 = Vec::new();
        for &s in &k {
            let e = aw.mul(&aw.mul(&z, &aw.generator(s)), &zi);
            let i = levi
                .generator_index(aw, &e)
                .ok_or_else(|| Error::internal("z(K) is not a set of simple reflections of W̃_J"))?;
            k2.push(levi.labels[i]);
        }
        k2.sort();
        let (k2, u2) = self.normalize_k(&levi, &x2, k2, u2)?;
        self.build_quadruple(&levi, j0.iter().map(|i| i + 1).collect(), x2, k2, u2, false)
    }

    /// Moves K by the length-zero elements τ of W̃_J with τ·x·δ(τ)⁻¹ = x and
    /// keeps the smallest label set, so finite reflections are preferred.
    fn normalize_k(
        &self,
        levi: &Levi,
        x: &AffineElt,
        k: Vec<QuadLabel>,
        u: AffineElt,
    ) -> Result<(Vec<QuadLabel>, AffineElt)> {
        let aw = self.group();
        let mut best = (k.clone(), u);
        for t in levi.aw.omega_elements(1) {
            let tau = levi.up(aw, &t);
            let ti = aw.inverse(&tau);
            let moved = aw.mul(&aw.mul(&tau, x), &aw.inverse(&self.twist().apply(aw, &tau)));
            if moved != *x {
                continue;
            }
            let mut k2 = Vec::with_capacity(k.len());
            for &l in &k {
                let i = levi.index_of(l).ok_or_else(|| Error::internal("label outside W̃_J"))?;
                let g = levi.up(aw, &levi.aw.generator(i));
                let e = aw.mul(&aw.mul(&tau, &g), &ti);
                let j = levi
                    .generator_index(aw, &e)
                    .ok_or_else(|| Error::internal("Ad(τ) does not permute the simple reflections of W̃_J"))?;
                k2.push(levi.labels[j]);
            }
            k2.sort();
            if k2 < best.0 {
                best = (k2, aw.mul(&aw.mul(&tau, &u), &ti));
            }
        }
        Ok(best)
    }

    /// Builds and validates a quadruple from its parts; `u` is any element of C.
    pub fn quadruple_from_parts(
        &self,
        j: &[usize],
        x: &AffineElt,
        k: &[QuadLabel],
        u: &AffineElt,
    ) -> Result<StandardQuadruple> {
        let aw = self.group();
        let rd = aw.root_datum();
        if j.iter().any(|&i| i == 0 || i > rd.semisimple_rank()) {
            return Err(Error::domain("J refers to a nonexistent simple root"));
        }
        let mut j = j.to_vec();
        j.sort_unstable();
        j.dedup();
        let j0: Vec<usize> = j.iter().map(|i| i - 1).collect();
        for &i in &j0 {
            let g = aw.generator_of_kind(GenKind::Finite(i)).expect("finite generator");
            match aw.generator_kind(self.twist().perm(g)) {
                GenKind::Finite(t) if j0.contains(&t) => {}
                _ => return Err(Error::domain("J is not stable under δ")),
            }
        }
        let levi = Levi::new(aw, &j0)?;
        let mut k = k.to_vec();
        k.sort();
        k.dedup();
        self.build_quadruple(&levi, j, *x, k, *u, true)
    }

    fn build_quadruple(
        &self,
        levi: &Levi,
        j: Vec<usize>,
        x: AffineElt,
        k: Vec<QuadLabel>,
        u: AffineElt,
        validate: bool,
    ) -> Result<StandardQuadruple> {
        let aw = self.group();
        let la = &levi.aw;
        let xl = levi.down(aw, &x)?;
        if la.length(&xl) != 0 {
            return Err(Error::domain("x is not of length zero in W̃_J"));
        }
        let kidx: Vec<usize> = k
            .iter()
            .map(|&l| levi.index_of(l).ok_or_else(|| Error::domain(format!("{l} is not a simple reflection of W̃_J"))))
            .collect::<Result<_>>()?;
        la.check_finite_subset(&kidx)?;
        let sigma = |v: &AffineElt| -> Result<AffineElt> {
            let vb = levi.up(aw, v);
            let img = aw.mul(&aw.mul(&x, &self.twist().apply(aw, &vb)), &aw.inverse(&x));
            levi.down(aw, &img)
        };
        let sigma_gen = |i: usize| -> Result<Option<usize>> {
            let img = sigma(&la.generator(i))?;
            Ok((0..la.num_generators()).find(|&t| la.generator(t) == img))
        };
        if validate {
            let rd = aw.root_datum();
            let (nu, _) = self.newton_vector(&x);
            for i in 0..rd.semisimple_rank() {
                if !j.contains(&(i + 1)) && rd.pairing_q(&rd.simple_roots()[i], &nu) <= rat(0) {
                    return Err(Error::domain("⟨α, ν_x⟩ must be positive for α outside J"));
                }
            }
            for i in 0..la.num_generators() {
                if sigma_gen(i)?.is_none() {
                    return Err(Error::domain("Ad(x)δ does not permute the simple reflections of W̃_J"));
                }
            }
            for &i in &kidx {
                if !sigma_gen(i)?.is_some_and(|t| kidx.contains(&t)) {
                    return Err(Error::domain("K is not Ad(x)δ-stable"));
                }
            }
        }
        let ul = levi.down(aw, &u)?;
        let wk = la.parabolic_elements(&kidx)?;
        if !wk.contains(&ul) {
            return Err(Error::domain("u does not lie in W_K"));
        }
        let mut c: Vec<AffineElt> = Vec::new();
        for v in &wk {
            let e = la.mul(&la.mul(v, &ul), &la.inverse(&sigma(v)?));
            if !c.contains(&e) {
                c.push(e);
            }
        }
        c.sort_by(|a, b| {
            let (wa, _) = la.reduced_word(a);
            let (wb, _) = la.reduced_word(b);
            let ka: Vec<QuadLabel> = wa.iter().map(|&i| levi.labels[i]).collect();
            let kb: Vec<QuadLabel> = wb.iter().map(|&i| levi.labels[i]).collect();
            ka.len().cmp(&kb.len()).then(ka.cmp(&kb))
        });
        if validate {
            for e in &c {
                let mut supp = la.support(e);
                let mut i = 0;
                while i < supp.len() {
                    let t = sigma_gen(supp[i])?.expect("checked above");
                    if !supp.contains(&t) {
                        supp.push(t);
                    }
                    i += 1;
                }
                if supp.len() != kidx.len() {
                    return Err(Error::domain("C is not elliptic in W_K"));
                }
            }
        }
        let c_words =
            c.iter().map(|e| la.reduced_word(e).0.iter().map(|&i| levi.labels[i]).collect()).collect();
        let c = c.iter().map(|e| levi.up(aw, e)).collect();
        Ok(StandardQuadruple { j, x, k, c, c_words })
    }

    /// The class C·x of W̃ labelled by a quadruple.
    pub fn quadruple_class_rep(&self, q: &StandardQuadruple) -> AffineElt {
        self.group().mul(&q.u(), &q.x)
    }

    /// Equivalence of quadruples, decided through the classes they label.
    pub fn quadruples_equivalent(&self, q1: &StandardQuadruple, q2: &StandardQuadruple) -> Decision {
        if q1.j != q2.j {
            return Decision::No;
        }
        Decision::from_bool(
            self.are_conjugate(&self.quadruple_class_rep(q1), &self.quadruple_class_rep(q2)),
        )
    }
}
