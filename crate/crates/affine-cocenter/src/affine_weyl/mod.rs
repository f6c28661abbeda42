//! The extended affine Weyl group W̃ = X₊ ⋊ W₀ = W_a ⋊ Ω.
//!
//! Conventions: t^λ acts on V by v ↦ v − λ, the base alcove lies in the
//! antidominant chamber, the finite simple affine roots are (−α_i, 0) and the
//! affine ones are (θ, 1) for the highest root θ of each component.

mod bruhat;
mod finite;
mod parse;
mod twist;

pub use finite::FiniteWeyl;
pub use parse::{compact_label, parse_compact, parse_element};
pub use twist::Twist;

use std::collections::HashSet;
use std::fmt;
use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::RwLock;

use crate::error::{Budget, Error, Result};
use crate::linalg::{self, LatticeQuotient};
use crate::root_datum::{RootDatum, MAX_RANK};

static NEXT_GID: AtomicU32 = AtomicU32::new(1);

/// An element t^λ·u of W̃. Only meaningful together with the group it came from.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineElt {
    gid: u32,
    lam: [i32; MAX_RANK],
    u: u16,
}

impl fmt::Debug for AffineElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.lam.iter().rposition(|&x| x != 0).map_or(0, |p| p + 1);
        write!(f, "t{:?}·u{}", &self.lam[..n], self.u)
    }
}

impl AffineElt {
    pub fn finite_index(&self) -> u16 {
        self.u
    }
}

/// A simple affine root (β, k): the affine function ⟨β, ·⟩ + k.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AffineRoot {
    pub root: usize,
    pub offset: i64,
}

/// What a simple reflection of S̃ corresponds to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenKind {
    /// The finite simple reflection for simple root `i` (0-based).
    Finite(usize),
    /// The affine reflection of the given irreducible component.
    Affine(usize),
}

pub struct AffineWeyl {
    gid: u32,
    rd: RootDatum,
    fin: FiniteWeyl,
    gens: Vec<AffineElt>,
    kinds: Vec<GenKind>,
    simple_affine_roots: Vec<AffineRoot>,
    neg_inv: Vec<Vec<bool>>,
    omega_raw: LatticeQuotient,
    tau: AffineElt,
    levels: RwLock<Vec<Vec<AffineElt>>>,
}

impl fmt::Debug for AffineWeyl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AffineWeyl")
            .field("name", &self.rd.name())
            .field("generators", &self.gens.len())
            .finish()
    }
}

impl AffineWeyl {
    pub fn new(rd: RootDatum) -> Result<Self> {
        let fin = FiniteWeyl::new(&rd)?;
        let gid = NEXT_GID.fetch_add(1, Ordering::Relaxed);
        let m = rd.semisimple_rank();
        let pos = rd.positive_roots().to_vec();
        let neg_inv = (0..fin.order() as u16)
            .map(|u| {
                let ui = fin.inv(u);
                pos.iter().map(|&p| !rd.roots()[fin.act_root(ui, p)].is_positive()).collect()
            })
            .collect();
        let coroots: Vec<Vec<i64>> = rd.simple_coroots().to_vec();
        let omega_raw = LatticeQuotient::new(rd.rank(), &coroots);
        let mut aw = AffineWeyl {
            gid,
            fin,
            gens: Vec::new(),
            kinds: Vec::new(),
            simple_affine_roots: Vec::new(),
            neg_inv,
            omega_raw,
            tau: AffineElt { gid, lam: [0; MAX_RANK], u: 0 },
            levels: RwLock::new(vec![Vec::new()]),
            rd,
        };
        let neg_of = |rd: &RootDatum, i: usize| -> usize {
            let v: Vec<i64> = rd.roots()[i].vec.iter().map(|x| -x).collect();
            rd.root_index(&v).expect("roots are closed under negation")
        };
        let mut order: Vec<GenKind> = Vec::new();
        if !aw.rd.components().is_empty() {
            order.push(GenKind::Affine(0));
        }
        order.extend((0..m).map(GenKind::Finite));
        order.extend((1..aw.rd.components().len()).map(GenKind::Affine));
        for kind in order {
            let (elt, root) = match kind {
                GenKind::Finite(i) => (
                    aw.from_parts(&vec![0; aw.rd.rank()], aw.fin.simple(i)),
                    AffineRoot { root: neg_of(&aw.rd, i), offset: 0 },
                ),
                GenKind::Affine(c) => {
                    let th = aw.rd.components()[c].highest_root;
                    let theta = aw.rd.roots()[th].clone();
                    let u = aw.reflection_index(th)?;
                    (aw.from_parts(&theta.coroot, u), AffineRoot { root: th, offset: 1 })
                }
            };
            aw.gens.push(elt);
            aw.kinds.push(kind);
            aw.simple_affine_roots.push(root);
        }
        let mut e1 = vec![0i64; aw.rd.rank()];
        e1[0] = 1;
        let c = aw.omega_raw.class(&e1);
        aw.tau = aw.length_zero_lift(&c);
        aw.levels = RwLock::new(vec![vec![aw.identity()]]);
        Ok(aw)
    }

    pub fn preset(name: &str) -> Result<Self> {
        Self::new(RootDatum::preset(name)?)
    }

    fn reflection_index(&self, root: usize) -> Result<u16> {
        let r = self.rd.rank();
        let a = &self.rd.roots()[root];
        let m: linalg::IMat = (0..r)
            .map(|k| (0..r).map(|l| i64::from(k == l) - a.coroot[k] * a.vec[l]).collect())
            .collect();
        self.fin.lookup(&m).ok_or_else(|| Error::internal("root reflection not in W₀"))
    }

    pub fn root_datum(&self) -> &RootDatum {
        &self.rd
    }

    pub fn finite_weyl(&self) -> &FiniteWeyl {
        &self.fin
    }

    pub fn rank(&self) -> usize {
        self.rd.rank()
    }

    /// Number of simple reflections in S̃.
    pub fn num_generators(&self) -> usize {
        self.gens.len()
    }

    pub fn generator(&self, i: usize) -> AffineElt {
        self.gens[i]
    }

    pub fn generator_kind(&self, i: usize) -> GenKind {
        self.kinds[i]
    }

    pub fn generator_of_kind(&self, kind: GenKind) -> Option<usize> {
        self.kinds.iter().position(|&k| k == kind)
    }

    pub fn simple_affine_root(&self, i: usize) -> AffineRoot {
        self.simple_affine_roots[i]
    }

    pub fn check(&self, w: &AffineElt) -> Result<()> {
        if w.gid == self.gid {
            Ok(())
        } else {
            Err(Error::domain("element belongs to a different root datum"))
        }
    }

    pub fn identity(&self) -> AffineElt {
        AffineElt { gid: self.gid, lam: [0; MAX_RANK], u: 0 }
    }

    pub fn from_parts(&self, lam: &[i64], u: u16) -> AffineElt {
        let mut a = [0i32; MAX_RANK];
        for (x, y) in a.iter_mut().zip(lam) {
            *x = i32::try_from(*y).expect("translation coordinate fits in 32 bits");
        }
        AffineElt { gid: self.gid, lam: a, u }
    }

    pub fn translation(&self, lam: &[i64]) -> AffineElt {
        self.from_parts(lam, 0)
    }

    pub fn finite(&self, u: u16) -> AffineElt {
        self.from_parts(&[], u)
    }

    pub fn finite_from_matrix(&self, m: &linalg::IMat) -> Option<AffineElt> {
        self.fin.lookup(m).map(|u| self.finite(u))
    }

    /// The same affine transformation viewed in another group on the same lattice.
    pub fn transfer(&self, w: &AffineElt, from: &AffineWeyl) -> Option<AffineElt> {
        let u = self.fin.lookup(from.fin.matrix(w.u))?;
        Some(self.from_parts(&from.lambda(w), u))
    }

    pub fn lambda(&self, w: &AffineElt) -> Vec<i64> {
        w.lam[..self.rank()].iter().map(|&x| i64::from(x)).collect()
    }

    pub fn is_translation(&self, w: &AffineElt) -> bool {
        w.u == 0
    }

    pub fn mul(&self, a: &AffineElt, b: &AffineElt) -> AffineElt {
        debug_assert!(a.gid == self.gid && b.gid == self.gid);
        let r = self.rank();
        let m = self.fin.matrix(a.u);
        let mut lam = a.lam;
        for k in 0..r {
            let mut s: i64 = 0;
            for l in 0..r {
                s += m[k][l] * i64::from(b.lam[l]);
            }
            lam[k] += i32::try_from(s).expect("translation overflow");
        }
        AffineElt { gid: self.gid, lam, u: self.fin.mul(a.u, b.u) }
    }

    /// Checked composition.
    pub fn compose(&self, a: &AffineElt, b: &AffineElt) -> Result<AffineElt> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    pub fn inverse(&self, a: &AffineElt) -> AffineElt {
        let ui = self.fin.inv(a.u);
        let lam = self.fin.act(ui, &self.lambda(a));
        let neg: Vec<i64> = lam.iter().map(|x| -x).collect();
        self.from_parts(&neg, ui)
    }

    pub fn mul_all(&self, xs: &[AffineElt]) -> AffineElt {
        xs.iter().fold(self.identity(), |acc, x| self.mul(&acc, x))
    }

    pub fn pow(&self, a: &AffineElt, k: i64) -> AffineElt {
        let base = if k < 0 { self.inverse(a) } else { *a };
        (0..k.unsigned_abs()).fold(self.identity(), |acc, _| self.mul(&acc, &base))
    }

    /// Product of the simple reflections named by a word.
    pub fn word_elt(&self, word: &[usize]) -> AffineElt {
        word.iter().fold(self.identity(), |acc, &i| self.mul(&acc, &self.gens[i]))
    }

    /// Iwahori–Matsumoto length.
    pub fn length(&self, w: &AffineElt) -> usize {
        let flags = &self.neg_inv[w.u as usize];
        let mut total: i64 = 0;
        for (k, &p) in self.rd.positive_roots().iter().enumerate() {
            let a = &self.rd.roots()[p].vec;
            let mut s: i64 = 0;
            for j in 0..self.rank() {
                s += a[j] * i64::from(w.lam[j]);
            }
            total += if flags[k] { (s - 1).abs() } else { s.abs() };
        }
        total as usize
    }

    /// w⁻¹ applied to the affine function (β, k).
    pub fn inverse_act_affine_root(&self, w: &AffineElt, beta: usize, k: i64) -> (usize, i64) {
        let ui = self.fin.inv(w.u);
        let img = self.fin.act_root(ui, beta);
        let pair: i64 = self.rd.roots()[beta]
            .vec
            .iter()
            .zip(&w.lam)
            .map(|(a, l)| a * i64::from(*l))
            .sum();
        (img, k - pair)
    }

    pub fn affine_root_positive(&self, beta: usize, k: i64) -> bool {
        if self.rd.roots()[beta].is_positive() {
            k >= 1
        } else {
            k >= 0
        }
    }

    /// Whether ℓ(s_i w) < ℓ(w).
    pub fn is_left_descent(&self, i: usize, w: &AffineElt) -> bool {
        let a = self.simple_affine_roots[i];
        let (b, k) = self.inverse_act_affine_root(w, a.root, a.offset);
        !self.affine_root_positive(b, k)
    }

    /// Whether ℓ(w s_i) < ℓ(w).
    pub fn is_right_descent(&self, i: usize, w: &AffineElt) -> bool {
        self.is_left_descent(i, &self.inverse(w))
    }

    pub fn left_mul_gen(&self, i: usize, w: &AffineElt) -> AffineElt {
        self.mul(&self.gens[i], w)
    }

    pub fn right_mul_gen(&self, w: &AffineElt, i: usize) -> AffineElt {
        self.mul(w, &self.gens[i])
    }

    /// w = s_{i₁}⋯s_{i_ℓ}·τ with the smallest left descent taken first.
    pub fn reduced_word(&self, w: &AffineElt) -> (Vec<usize>, AffineElt) {
        let mut cur = *w;
        let mut word = Vec::new();
        while let Some(i) = (0..self.gens.len()).find(|&i| self.is_left_descent(i, &cur)) {
            word.push(i);
            cur = self.left_mul_gen(i, &cur);
        }
        (word, cur)
    }

    /// The set of simple reflections occurring in any reduced word.
    pub fn support(&self, w: &AffineElt) -> Vec<usize> {
        let mut s: Vec<usize> = self.reduced_word(w).0;
        s.sort_unstable();
        s.dedup();
        s
    }

    /// Class of w in Ω ≅ X₊/ℤR∨.
    pub fn omega_class(&self, w: &AffineElt) -> Vec<i64> {
        self.omega_raw.class(&self.lambda(w))
    }

    pub fn omega_group(&self) -> &LatticeQuotient {
        &self.omega_raw
    }

    pub fn in_affine_weyl_group(&self, w: &AffineElt) -> bool {
        self.omega_raw.contains(&self.lambda(w))
    }

    /// The unique length-zero element with the given Ω-class.
    pub fn length_zero_lift(&self, class: &[i64]) -> AffineElt {
        let lam = self.omega_raw.lift(class);
        self.reduced_word(&self.translation(&lam)).1
    }

    /// The element written `tau` in the element grammar: the length-zero
    /// element in the W_a-coset of t^{e₁}.
    pub fn tau(&self) -> AffineElt {
        self.tau
    }

    /// Length-zero generators of Ω (and their inverses for free summands).
    pub fn omega_generators(&self) -> Vec<AffineElt> {
        let orders = self.omega_raw.orders();
        let mut out = Vec::new();
        for (j, &d) in orders.iter().enumerate() {
            let mut c = vec![0i64; orders.len()];
            c[j] = 1;
            let g = self.length_zero_lift(&c);
            out.push(g);
            if d == 0 {
                out.push(self.inverse(&g));
            }
        }
        out
    }

    /// All of Ω when finite; otherwise the classes with free coordinates in
    /// [−window, window].
    pub fn omega_elements(&self, window: i64) -> Vec<AffineElt> {
        let orders = self.omega_raw.orders();
        let mut classes: Vec<Vec<i64>> = vec![Vec::new()];
        for &d in &orders {
            let range: Vec<i64> = if d == 0 { (-window..=window).collect() } else { (0..d).collect() };
            classes = classes
                .into_iter()
                .flat_map(|c| {
                    range.iter().map(move |&x| {
                        let mut c2 = c.clone();
                        c2.push(x);
                        c2
                    })
                })
                .collect();
        }
        classes.iter().map(|c| self.length_zero_lift(c)).collect()
    }

    /// Elements of W_a of length exactly `l`, from a shared cache.
    pub fn affine_level(&self, l: usize, budget: &Budget) -> Result<Vec<AffineElt>> {
        {
            let levels = self.levels.read().expect("level cache poisoned");
            if l < levels.len() {
                return Ok(levels[l].clone());
            }
        }
        let mut levels = self.levels.write().expect("level cache poisoned");
        while levels.len() <= l {
            let last = levels.last().expect("level 0 present");
            let mut seen: HashSet<AffineElt> = HashSet::new();
            let mut next = Vec::new();
            for w in last {
                for i in 0..self.gens.len() {
                    if !self.is_left_descent(i, w) {
                        let x = self.left_mul_gen(i, w);
                        if seen.insert(x) {
                            next.push(x);
                        }
                    }
                }
            }
            let total: usize = levels.iter().map(Vec::len).sum::<usize>() + next.len();
            if total > budget.frontier {
                return Err(Error::resource(format!(
                    "enumeration of W_a up to length {} exceeds {} elements",
                    levels.len(),
                    budget.frontier
                )));
            }
            next.sort();
            levels.push(next);
        }
        Ok(levels[l].clone())
    }

    /// All w with ℓ(w) ≤ max_len and Ω-component in the κ-window.
    pub fn enumerate_by_length(
        &self,
        max_len: usize,
        kappa_window: i64,
        budget: &Budget,
    ) -> Result<Vec<AffineElt>> {
        if max_len > budget.length_bound as usize {
            return Err(Error::resource(format!(
                "length {max_len} exceeds the length bound {}",
                budget.length_bound
            )));
        }
        let omega = self.omega_elements(kappa_window);
        let mut out = Vec::new();
        for l in 0..=max_len {
            let level = self.affine_level(l, budget)?;
            if out.len() + level.len() * omega.len() > budget.frontier {
                return Err(Error::resource("enumeration exceeds the frontier budget"));
            }
            for x in &level {
                for t in &omega {
                    out.push(self.mul(x, t));
                }
            }
        }
        Ok(out)
    }

    /// Whether W_K is finite, i.e. no affine component is entirely in K.
    pub fn is_finite_subset(&self, k: &[usize]) -> bool {
        let ncomp = self.rd.components().len();
        (0..ncomp).all(|c| {
            let comp = &self.rd.components()[c];
            let affine = self.generator_of_kind(GenKind::Affine(c)).expect("affine generator");
            let finite_in = comp.simple.iter().all(|&j| {
                k.contains(&self.generator_of_kind(GenKind::Finite(j)).expect("finite generator"))
            });
            !(finite_in && k.contains(&affine))
        })
    }

    pub fn check_finite_subset(&self, k: &[usize]) -> Result<()> {
        if k.iter().any(|&i| i >= self.gens.len()) {
            return Err(Error::domain("subset refers to a nonexistent simple reflection"));
        }
        if !self.is_finite_subset(k) {
            return Err(Error::domain("subset generates an infinite parabolic subgroup"));
        }
        Ok(())
    }

    /// Indices of the finite simple reflections s_1,…,s_m.
    pub fn finite_generators(&self) -> Vec<usize> {
        (0..self.gens.len()).filter(|&i| matches!(self.kinds[i], GenKind::Finite(_))).collect()
    }
}
