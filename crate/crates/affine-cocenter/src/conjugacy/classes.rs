//! Canonical keys for δ-conjugacy classes.

use std::cmp::Ordering;
use std::fmt;

use serde_json::{json, Value};

use super::{ConjInvariant, Conjugacy};
use crate::affine_weyl::{AffineElt, AffineWeyl, GenKind};
use crate::error::{Decision, Error, Result};

/// Identifies a δ-conjugacy class: its invariant, its minimal length and a
/// canonical minimal-length representative.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassKey {
    pub invariant: ConjInvariant,
    pub min_length: usize,
    pub rep: AffineElt,
}

impl fmt::Debug for ClassKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?} ℓ={} {:?}]", self.invariant, self.min_length, self.rep)
    }
}

impl ClassKey {
    pub fn label(&self, aw: &AffineWeyl) -> String {
        aw.format(&self.rep)
    }

    pub fn to_json(&self, aw: &AffineWeyl) -> Value {
        json!({
            "rep": aw.format(&self.rep),
            "min_length": self.min_length,
            "invariant": self.invariant.to_json(aw.root_datum()),
        })
    }
}

/// Shorter first, then the multiset of reflections used (finite ones
/// ranked before affine ones), then the reduced words lexicographically.
fn word_rank(aw: &AffineWeyl, s: usize) -> usize {
    match aw.generator_kind(s) {
        GenKind::Finite(j) => j,
        GenKind::Affine(c) => aw.num_generators() + c,
    }
}

pub fn canonical_cmp(aw: &AffineWeyl, a: &AffineElt, b: &AffineElt) -> Ordering {
    let (wa, ta) = aw.reduced_word(a);
    let (wb, tb) = aw.reduced_word(b);
    let sorted = |w: &[usize]| {
        let mut k: Vec<usize> = w.iter().map(|&s| word_rank(aw, s)).collect();
        k.sort_unstable();
        k
    };
    wa.len()
        .cmp(&wb.len())
        .then_with(|| sorted(&wa).cmp(&sorted(&wb)))
        .then_with(|| wa.cmp(&wb))
        .then(ta.cmp(&tb))
}

impl Conjugacy {
    /// The key of the class of w.
    pub fn class_key(&self, w: &AffineElt) -> Result<ClassKey> {
        let tr = self.reduce_to_minimal(w)?;
        self.class_key_of_minimal(&tr.terminal)
    }

    /// The key of the class of a minimal-length element.
    pub fn class_key_of_minimal(&self, w_min: &AffineElt) -> Result<ClassKey> {
        let aw = self.group();
        let inv = self.newton_kottwitz(w_min);
        let l = aw.length(w_min);
        let slot = (inv.clone(), l);
        if let Some(keys) = self.registry.read().expect("registry poisoned").get(&slot) {
            if let Some(k) = keys.iter().find(|k| self.are_conjugate(w_min, &k.rep)) {
                return Ok(k.clone());
            }
        }
        let lift = self.kottwitz_lift(&inv.kottwitz);
        let mut best: Option<AffineElt> = None;
        for x in aw.affine_level(l, self.budget())? {
            let y = aw.mul(&x, &lift);
            if self.newton_kottwitz(&y) == inv
                && self.are_conjugate(&y, w_min)
                && best.is_none_or(|b| canonical_cmp(aw, &y, &b) == Ordering::Less)
            {
                best = Some(y);
            }
        }
        let rep = best.ok_or_else(|| {
            Error::internal("no minimal-length element over the fixed Kottwitz lift")
        })?;
        let key = ClassKey { invariant: inv, min_length: l, rep };
        let mut reg = self.registry.write().expect("registry poisoned");
        let keys = reg.entry(slot).or_default();
        if let Some(k) = keys.iter().find(|k| k.rep == key.rep) {
            return Ok(k.clone());
        }
        keys.push(key.clone());
        Ok(key)
    }

    /// Whether w and w′ are δ-conjugate. Exact; never Undecided.
    pub fn same_class(&self, w: &AffineElt, w2: &AffineElt) -> Decision {
        Decision::from_bool(self.are_conjugate(w, w2))
    }

    /// All class keys among elements with ℓ ≤ max_len and Ω-component in the
    /// κ-window, filtered by a predicate on the invariant.
    pub fn classes_up_to(
        &self,
        max_len: usize,
        kappa_window: i64,
        keep: impl Fn(&ConjInvariant) -> bool,
    ) -> Result<Vec<ClassKey>> {
        let aw = self.group();
        let mut out: Vec<ClassKey> = Vec::new();
        for w in aw.enumerate_by_length(max_len, kappa_window, self.budget())? {
            if !keep(&self.newton_kottwitz(&w)) {
                continue;
            }
            if !self.is_minimal(&w)? {
                continue;
            }
            let k = self.class_key_of_minimal(&w)?;
            if !out.contains(&k) {
                out.push(k);
            }
        }
        out.sort();
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine_weyl::parse_element;

    #[test]
    fn sl3_rigid_classes() {
        let c = Conjugacy::untwisted("SL3").unwrap();
        let aw = c.group();
        let keys = c.classes_up_to(6, 0, |inv| inv.newton.iter().all(|x| *x == crate::linalg::rat(0))).unwrap();
        assert_eq!(keys.len(), 5);
        let mut labels: Vec<String> = keys.iter().map(|k| k.label(aw)).collect();
        labels.sort();
        assert_eq!(labels, vec!["1", "s0*s1", "s0*s2", "s1", "s1*s2"]);
        let k0 = c.class_key(&aw.generator(0)).unwrap();
        assert_eq!(k0.label(aw), "s1");
        let w = parse_element(aw, "s2 s0 s2").unwrap();
        assert_eq!(c.class_key(&w).unwrap(), k0);
    }
}
