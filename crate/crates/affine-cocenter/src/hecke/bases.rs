//! Bases of cocenters: ≈-classes for the 0-Hecke algebra and the rigid part.

use std::collections::{BTreeSet, HashSet, VecDeque};

use serde_json::{json, Value};

use crate::affine_weyl::{AffineElt, AffineWeyl};
use crate::conjugacy::{ClassKey, Conjugacy};
use crate::error::Result;
use crate::linalg::rat;

/// One basis element of the 0-Hecke cocenter: an ≈-class of minimal-length
/// elements, with its support J.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroHeckeClass {
    pub rep: AffineElt,
    pub support: Vec<usize>,
    pub members: Vec<AffineElt>,
}

impl ZeroHeckeClass {
    pub fn to_json(&self, aw: &AffineWeyl) -> Value {
        json!({
            "rep": aw.format(&self.rep),
            "J": self.support,
            "class": self.members.iter().map(|m| aw.format(m)).collect::<Vec<_>>(),
        })
    }
}

/// ≈-classes inside the finite parabolic W_K, with conjugation by K only.
pub fn zero_hecke_basis_finite(aw: &AffineWeyl, k: &[usize]) -> Result<Vec<ZeroHeckeClass>> {
    let elems = aw.parabolic_elements(k)?;
    let conj = |s: usize, w: &AffineElt| aw.right_mul_gen(&aw.left_mul_gen(s, w), s);
    let mut done: HashSet<AffineElt> = HashSet::new();
    let mut out = Vec::new();
    for w in &elems {
        if done.contains(w) {
            continue;
        }
        let l = aw.length(w);
        let mut class = vec![*w];
        let mut seen: HashSet<AffineElt> = HashSet::from([*w]);
        let mut queue = VecDeque::from([*w]);
        let mut minimal = true;
        while let Some(y) = queue.pop_front() {
            for &s in k {
                let z = conj(s, &y);
                let lz = aw.length(&z);
                if lz < l {
                    minimal = false;
                } else if lz == l && seen.insert(z) {
                    class.push(z);
                    queue.push_back(z);
                }
            }
        }
        done.extend(class.iter().copied());
        if minimal {
            class.sort_by(|a, b| crate::conjugacy::canonical_cmp(aw, a, b));
            let support: BTreeSet<usize> = class.iter().flat_map(|m| aw.support(m)).collect();
            out.push(ZeroHeckeClass { rep: class[0], support: support.into_iter().collect(), members: class });
        }
    }
    out.sort_by(|a, b| crate::conjugacy::canonical_cmp(aw, &a.rep, &b.rep));
    Ok(out)
}

/// ≈-classes of minimal-length elements of W̃ with ℓ ≤ max_len.
pub fn zero_hecke_basis_affine(
    conj: &Conjugacy,
    max_len: usize,
    kappa_window: i64,
) -> Result<Vec<ZeroHeckeClass>> {
    let aw = conj.group();
    let mut done: HashSet<AffineElt> = HashSet::new();
    let mut out = Vec::new();
    for w in aw.enumerate_by_length(max_len, kappa_window, conj.budget())? {
        if done.contains(&w) {
            continue;
        }
        let mut class = conj.approx_class(&w)?;
        done.extend(class.iter().copied());
        if conj.find_descent(&w)?.is_some() {
            continue;
        }
        class.sort_by(|a, b| crate::conjugacy::canonical_cmp(aw, a, b));
        let support: BTreeSet<usize> = class.iter().flat_map(|m| aw.support(m)).collect();
        out.push(ZeroHeckeClass { rep: class[0], support: support.into_iter().collect(), members: class });
    }
    out.sort_by(|a, b| crate::conjugacy::canonical_cmp(aw, &a.rep, &b.rep));
    Ok(out)
}

/// Keys of the classes with ν̄ = 0.
///
/// Their minimal-length elements lie in some W_K·τ with W_K finite, so the
/// search runs up to the number of positive roots.
pub fn rigid_basis(conj: &Conjugacy, kappa_window: i64) -> Result<Vec<ClassKey>> {
    let bound = conj.group().root_datum().positive_roots().len();
    conj.classes_up_to(bound, kappa_window, |inv| inv.newton.iter().all(|x| *x == rat(0)))
}
