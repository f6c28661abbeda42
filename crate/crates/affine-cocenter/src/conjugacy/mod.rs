//! δ-twisted conjugacy in W̃: Newton and Kottwitz invariants, reduction to
//! minimal length, straight classes, standard quadruples and defects.

mod classes;
pub use classes::{canonical_cmp, ClassKey};
mod quadruple;
pub use quadruple::{translation_form, QuadLabel, StandardQuadruple};
mod reduce;



pub use reduce::{Descent, Move, ReductionTrace, TraceStep};

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::affine_weyl::{AffineElt, AffineWeyl, Twist};
use crate::error::{Budget, Error, Result};
use crate::linalg::{self, rat, IMat, LatticeQuotient};
use crate::root_datum::RationalCoweight;

/// The pair (ν̄, κ) attached to a δ-twisted conjugacy class.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConjInvariant {
    /// Dominant Newton point in X₊ ⊗ ℚ basis coordinates.
    pub newton: RationalCoweight,
    /// Class in Ω_δ, in Smith coordinates.
    pub kottwitz: Vec<i64>,
}

impl fmt::Debug for ConjInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nu: Vec<String> = self.newton.iter().map(|x| x.to_string()).collect();
        write!(f, "(ν=[{}], κ={:?})", nu.join(","), self.kottwitz)
    }
}

impl ConjInvariant {
    pub fn is_basic(&self, rd: &crate::RootDatum) -> bool {
        rd.two_rho_pairing(&self.newton).is_zero()
    }

    /// JSON form with the Newton point in ambient coordinates.
    pub fn to_json(&self, rd: &crate::RootDatum) -> Value {
        json!({
            "newton": rd.to_ambient(&self.newton).iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "kottwitz": self.kottwitz,
        })
    }
}

/// A group together with a twist: the setting for δ-conjugation.
pub struct Conjugacy {
    aw: Arc<AffineWeyl>,
    twist: Twist,
    budget: Budget,
    omega_moves: Vec<AffineElt>,
    image_cache: RwLock<HashMap<u16, LatticeQuotient>>,
    registry: RwLock<BTreeMap<(ConjInvariant, usize), Vec<ClassKey>>>,
}

impl fmt::Debug for Conjugacy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Conjugacy").field("group", &self.aw).field("twist", &self.twist.label()).finish()
    }
}

impl Conjugacy {
    pub fn new(aw: Arc<AffineWeyl>, twist: Twist) -> Self {
        Self::with_budget(aw, twist, Budget::default())
    }

    pub fn with_budget(aw: Arc<AffineWeyl>, twist: Twist, budget: Budget) -> Self {
        let omega_moves = aw.omega_generators();
        Conjugacy {
            aw,
            twist,
            budget,
            omega_moves,
            image_cache: RwLock::new(HashMap::new()),
            registry: RwLock::new(BTreeMap::new()),
        }
    }

    /// Untwisted conjugation on a preset.
    pub fn untwisted(name: &str) -> Result<Self> {
        let aw = Arc::new(AffineWeyl::preset(name)?);
        let tw = Twist::identity(&aw);
        Ok(Self::new(aw, tw))
    }

    pub fn group(&self) -> &AffineWeyl {
        &self.aw
    }

    pub fn group_arc(&self) -> Arc<AffineWeyl> {
        Arc::clone(&self.aw)
    }

    pub fn twist(&self) -> &Twist {
        &self.twist
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    /// g·w·δ(g)⁻¹.
    pub fn conjugate(&self, g: &AffineElt, w: &AffineElt) -> AffineElt {
        let aw = &self.aw;
        let dg = self.twist.apply(aw, g);
        aw.mul(&aw.mul(g, w), &aw.inverse(&dg))
    }

    /// s·w·δ(s) for a simple reflection s.
    pub fn conjugate_simple(&self, s: usize, w: &AffineElt) -> AffineElt {
        let aw = &self.aw;
        aw.mul(&aw.left_mul_gen(s, w), &aw.generator(self.twist.perm(s)))
    }

    /// ν_{w,δ} before taking the dominant representative, and the period n.
    pub fn newton_vector(&self, w: &AffineElt) -> (RationalCoweight, usize) {
        let aw = &self.aw;
        let r = aw.rank();
        let wt = self.twist.times_tau(aw, w);
        let a = aw.lambda(&wt);
        let m = self.twist.linear_part(aw, w);
        let ident = linalg::identity(r);
        let mut p = ident.clone();
        let mut xi = vec![0i64; r];
        let mut n = 0usize;
        loop {
            let pa = linalg::mat_vec(&p, &a);
            for (x, y) in xi.iter_mut().zip(&pa) {
                *x += y;
            }
            p = linalg::mat_mul(&m, &p);
            n += 1;
            if p == ident {
                break;
            }
            assert!(n <= 100_000, "linear part of finite order");
        }
        let nq = rat(n as i64);
        (xi.iter().map(|&x| rat(x) / &nq).collect(), n)
    }

    pub fn kottwitz(&self, w: &AffineElt) -> Vec<i64> {
        self.twist.kottwitz(&self.aw, w)
    }

    pub fn newton_kottwitz(&self, w: &AffineElt) -> ConjInvariant {
        let (nu, _) = self.newton_vector(w);
        let (bar, _) = self.aw.root_datum().dominant_representative(&nu);
        ConjInvariant { newton: bar, kottwitz: self.kottwitz(w) }
    }

    /// ⟨2ρ, ν̄⟩ as an integer.
    pub fn two_rho_newton(&self, inv: &ConjInvariant) -> Result<i64> {
        let p = self.aw.root_datum().two_rho_pairing(&inv.newton);
        if !p.is_integer() {
            return Err(Error::internal("⟨2ρ, ν⟩ is not integral"));
        }
        linalg::to_i64(&p.to_integer()).ok_or_else(|| Error::internal("overflow"))
    }

    pub fn is_straight(&self, w: &AffineElt) -> Result<bool> {
        let inv = self.newton_kottwitz(w);
        Ok(self.aw.length(w) as i64 == self.two_rho_newton(&inv)?)
    }

    fn image_of_one_minus(&self, b_index: u16) -> LatticeQuotient {
        if let Some(q) = self.image_cache.read().expect("cache poisoned").get(&b_index) {
            return q.clone();
        }
        let r = self.aw.rank();
        let bs = linalg::mat_mul(self.aw.finite_weyl().matrix(b_index), self.twist.sigma());
        let cols: Vec<Vec<i64>> = (0..r)
            .map(|k| (0..r).map(|i| i64::from(i == k) - bs[i][k]).collect())
            .collect();
        let q = LatticeQuotient::new(r, &cols);
        self.image_cache.write().expect("cache poisoned").insert(b_index, q.clone());
        q
    }

    /// Exact test for w' ∈ W̃·_δ w.
    ///
    /// Writing wτ = t^a·A and w'τ = t^b·B, a conjugator t^χ·z exists iff
    /// z·A·ς(z)⁻¹ = B and b − z·a ∈ (1 − B·ς)X₊.
    pub fn are_conjugate(&self, w: &AffineElt, w2: &AffineElt) -> bool {
        if self.newton_kottwitz(w) != self.newton_kottwitz(w2) {
            return false;
        }
        let aw = &self.aw;
        let fin = aw.finite_weyl();
        let wt = self.twist.times_tau(aw, w);
        let wt2 = self.twist.times_tau(aw, w2);
        let (a, au) = (aw.lambda(&wt), wt.finite_index());
        let (b, bu) = (aw.lambda(&wt2), wt2.finite_index());
        let img = self.image_of_one_minus(bu);
        for z in 0..fin.order() as u16 {
            let sz_inv = fin.inv(self.twist.sigma_finite(z));
            if fin.mul(fin.mul(z, au), sz_inv) != bu {
                continue;
            }
            let za = fin.act(z, &a);
            let d: Vec<i64> = b.iter().zip(&za).map(|(x, y)| x - y).collect();
            if img.contains(&d) {
                return true;
            }
        }
        false
    }

    /// Conjugacy search that allows the length to rise by at most `extra`
    /// above the larger input length. Used as an independent oracle.
    pub fn bounded_conjugacy_search(
        &self,
        w: &AffineElt,
        w2: &AffineElt,
        extra: usize,
    ) -> Result<crate::Decision> {
        let aw = &self.aw;
        let cap = aw.length(w).max(aw.length(w2)) + extra;
        let mut seen = std::collections::HashSet::new();
        let mut queue = vec![*w];
        seen.insert(*w);
        let mut i = 0;
        while i < queue.len() {
            let y = queue[i];
            i += 1;
            if y == *w2 {
                return Ok(crate::Decision::Yes);
            }
            let mut next: Vec<AffineElt> =
                (0..aw.num_generators()).map(|s| self.conjugate_simple(s, &y)).collect();
            next.extend(self.omega_moves.iter().map(|g| self.conjugate(g, &y)));
            for z in next {
                if aw.length(&z) <= cap && self.omega_window_ok(w, &z) && seen.insert(z) {
                    queue.push(z);
                    if queue.len() > self.budget.frontier {
                        return Err(Error::resource("bounded conjugacy search frontier"));
                    }
                }
            }
        }
        Ok(crate::Decision::Undecided)
    }

    /// Keeps Ω-moves inside a finite window when Ω is infinite and δ moves it.
    pub(crate) fn omega_window_ok(&self, start: &AffineElt, y: &AffineElt) -> bool {
        const WINDOW: i64 = 4;
        let aw = &self.aw;
        let orders = aw.omega_group().orders();
        let c0 = aw.omega_class(start);
        let c1 = aw.omega_class(y);
        orders
            .iter()
            .enumerate()
            .all(|(j, &d)| d != 0 || (c1[j] - c0[j]).abs() <= WINDOW)
    }

    /// def(b) = dim V − dim V_w for the affine map v ↦ wδ(v).
    pub fn defect(&self, inv: &ConjInvariant, rep: &AffineElt) -> Result<usize> {
        if self.newton_kottwitz(rep) != *inv {
            return Err(Error::domain("representative does not lie in the given class"));
        }
        let aw = &self.aw;
        let r = aw.rank();
        let m = self.twist.linear_part(aw, rep);
        let m_minus: IMat =
            (0..r).map(|i| (0..r).map(|j| m[i][j] - i64::from(i == j)).collect()).collect();
        let q = linalg::to_rational(&m_minus);
        let (nu, _) = self.newton_vector(rep);
        let a = aw.lambda(&self.twist.times_tau(aw, rep));
        // v ↦ M v − a must move every point of V_w by −ν.
        let rhs: Vec<BigRational> = a.iter().zip(&nu).map(|(x, n)| rat(*x) - n).collect();
        if linalg::solve(&q, &rhs, r).is_none() {
            return Err(Error::internal("fixed-point system for the defect is inconsistent"));
        }
        Ok(linalg::rank(&q))
    }

    /// Largest K′ ⊆ K with Ad(x)δ(K′) = K′.
    pub fn i_set(&self, k: &[usize], x: &AffineElt) -> Result<Vec<usize>> {
        let aw = &self.aw;
        aw.check_finite_subset(k)?;
        if !aw.is_min_left_coset(x, k) {
            return Err(Error::domain("x is not minimal in its left W_K-coset"));
        }
        let xi = aw.inverse(x);
        let image = |s: usize| -> Option<usize> {
            let e = aw.mul(&aw.mul(x, &aw.generator(self.twist.perm(s))), &xi);
            (0..aw.num_generators()).find(|&j| aw.generator(j) == e)
        };
        let mut cur: Vec<usize> = k.to_vec();
        cur.sort_unstable();
        cur.dedup();
        loop {
            let keep: Vec<usize> =
                cur.iter().copied().filter(|&s| image(s).is_some_and(|t| cur.contains(&t))).collect();
            if keep.len() == cur.len() {
                return Ok(cur);
            }
            cur = keep;
        }
    }

    /// Straight classes with ⟨2ρ, ν̄⟩ ≤ bound and Ω-component in the window,
    /// one representative each, keyed by their invariant.
    pub fn straight_classes(
        &self,
        bound: usize,
        kappa_window: i64,
    ) -> Result<Vec<(ConjInvariant, AffineElt)>> {
        let mut out: BTreeMap<ConjInvariant, AffineElt> = BTreeMap::new();
        for w in self.aw.enumerate_by_length(bound, kappa_window, &self.budget)? {
            if self.is_straight(&w)? {
                let inv = self.newton_kottwitz(&w);
                out.entry(inv).or_insert(w);
            }
        }
        Ok(out.into_iter().collect())
    }

    /// A straight element with the given invariant, searching up to the
    /// length ⟨2ρ, ν̄⟩ (where all straight elements of the class live).
    pub fn straight_representative(&self, inv: &ConjInvariant) -> Result<Option<AffineElt>> {
        let l = self.two_rho_newton(inv)?;
        if l < 0 {
            return Ok(None);
        }
        let lift = self.kottwitz_lift(&inv.kottwitz);
        for x in self.aw.affine_level(l as usize, &self.budget)? {
            let w = self.aw.mul(&x, &lift);
            if self.newton_kottwitz(&w) == *inv {
                return Ok(Some(w));
            }
        }
        Ok(None)
    }

    /// A fixed length-zero element with the given Kottwitz class.
    pub fn kottwitz_lift(&self, kappa: &[i64]) -> AffineElt {
        let lam = self.twist.coinvariants().lift(kappa);
        let aw = &self.aw;
        aw.length_zero_lift(&aw.omega_class(&aw.translation(&lam)))
    }
}
