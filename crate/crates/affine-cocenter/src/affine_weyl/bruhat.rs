//! Bruhat order and parabolic coset machinery.

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};

use super::{AffineElt, AffineWeyl};

impl AffineWeyl {
    /// Bruhat order; elements of different Ω-components are incomparable.
    pub fn bruhat_leq(&self, x: &AffineElt, y: &AffineElt) -> bool {
        if self.omega_class(x) != self.omega_class(y) {
            return false;
        }
        let (mut x, mut y) = (*x, *y);
        loop {
            let ly = self.length(&y);
            if self.length(&x) > ly {
                return false;
            }
            if ly == 0 {
                return x == y;
            }
            let s = (0..self.num_generators())
                .find(|&i| self.is_left_descent(i, &y))
                .expect("positive length has a descent");
            if self.is_left_descent(s, &x) {
                x = self.left_mul_gen(s, &x);
            }
            y = self.left_mul_gen(s, &y);
        }
    }

    /// All x ≤ y, by taking subwords of the canonical reduced word of y.
    pub fn lower_interval(&self, y: &AffineElt) -> Vec<AffineElt> {
        let (word, tau) = self.reduced_word(y);
        let mut set: HashSet<AffineElt> = HashSet::new();
        set.insert(tau);
        for &i in word.iter().rev() {
            let g = self.generator(i);
            let new: Vec<AffineElt> = set.iter().map(|x| self.mul(&g, x)).collect();
            set.extend(new);
        }
        let mut out: Vec<AffineElt> = set.into_iter().collect();
        out.sort_by_key(|w| (self.length(w), *w));
        out
    }

    /// w = u·x with u ∈ W_K and x minimal in W_K·w.
    pub fn coset_decompose(&self, w: &AffineElt, k: &[usize]) -> Result<(AffineElt, AffineElt)> {
        self.check(w)?;
        self.check_finite_subset(k)?;
        let mut u = self.identity();
        let mut x = *w;
        while let Some(&s) = k.iter().find(|&&s| self.is_left_descent(s, &x)) {
            x = self.left_mul_gen(s, &x);
            u = self.right_mul_gen(&u, s);
        }
        Ok((u, x))
    }

    /// w = x·u with u ∈ W_K and x minimal in w·W_K.
    pub fn right_coset_decompose(
        &self,
        w: &AffineElt,
        k: &[usize],
    ) -> Result<(AffineElt, AffineElt)> {
        let (u, x) = self.coset_decompose(&self.inverse(w), k)?;
        Ok((self.inverse(&x), self.inverse(&u)))
    }

    /// Whether w is minimal in W_K·w.
    pub fn is_min_left_coset(&self, w: &AffineElt, k: &[usize]) -> bool {
        k.iter().all(|&s| !self.is_left_descent(s, w))
    }

    pub fn is_min_right_coset(&self, w: &AffineElt, k: &[usize]) -> bool {
        k.iter().all(|&s| !self.is_right_descent(s, w))
    }

    /// The elements of W_K, sorted by length.
    pub fn parabolic_elements(&self, k: &[usize]) -> Result<Vec<AffineElt>> {
        self.check_finite_subset(k)?;
        let mut seen: BTreeSet<AffineElt> = BTreeSet::new();
        let mut queue = vec![self.identity()];
        seen.insert(self.identity());
        let mut i = 0;
        while i < queue.len() {
            let w = queue[i];
            i += 1;
            for &s in k {
                let x = self.right_mul_gen(&w, s);
                if seen.insert(x) {
                    queue.push(x);
                }
            }
        }
        queue.sort_by_key(|w| (self.length(w), *w));
        Ok(queue)
    }

    /// The longest element of a finite W_K.
    pub fn longest_element(&self, k: &[usize]) -> Result<AffineElt> {
        self.check_finite_subset(k)?;
        let mut w = self.identity();
        while let Some(&s) = k.iter().find(|&&s| !self.is_right_descent(s, &w)) {
            w = self.right_mul_gen(&w, s);
        }
        Ok(w)
    }

    /// The double coset W_K·w·W_K.
    pub fn double_coset(&self, w: &AffineElt, k: &[usize]) -> Result<Vec<AffineElt>> {
        let wk = self.parabolic_elements(k)?;
        let mut set: BTreeSet<AffineElt> = BTreeSet::new();
        for a in &wk {
            let aw = self.mul(a, w);
            for b in &wk {
                set.insert(self.mul(&aw, b));
            }
        }
        Ok(set.into_iter().collect())
    }

    /// Minimal element of W_K·w·W_K.
    pub fn double_coset_min(&self, w: &AffineElt, k: &[usize]) -> Result<AffineElt> {
        self.check_finite_subset(k)?;
        let mut x = *w;
        loop {
            if let Some(&s) = k.iter().find(|&&s| self.is_left_descent(s, &x)) {
                x = self.left_mul_gen(s, &x);
            } else if let Some(&s) = k.iter().find(|&&s| self.is_right_descent(s, &x)) {
                x = self.right_mul_gen(&x, s);
            } else {
                return Ok(x);
            }
        }
    }

    /// Checks that every element of `k` names a generator.
    pub fn check_subset(&self, k: &[usize]) -> Result<()> {
        if k.iter().any(|&i| i >= self.num_generators()) {
            Err(Error::domain("subset refers to a nonexistent simple reflection"))
        } else {
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse_element;
    use super::*;

    #[test]
    fn gl2_local_model_relation() {
        let aw = AffineWeyl::preset("GL2").unwrap();
        let t = aw.translation(&[1, 0]);
        let ts = aw.mul(&t, &aw.generator(1));
        assert!(aw.bruhat_leq(&ts, &t));
        assert!(aw.bruhat_leq(&t, &t));
        assert!(!aw.bruhat_leq(&t, &ts));
    }

    #[test]
    fn gl3_translations_incomparable() {
        let aw = AffineWeyl::preset("GL3").unwrap();
        let a = aw.translation(&[1, 0, 0]);
        let b = aw.translation(&[0, 1, 0]);
        assert!(!aw.bruhat_leq(&a, &b));
        assert!(!aw.bruhat_leq(&b, &a));
    }

    #[test]
    fn coset_examples_from_symmetric_groups() {
        let aw = AffineWeyl::preset("GL4").unwrap();
        let w = parse_element(&aw, "s2 s3 s2 s1 s2").unwrap();
        let (u, x) = aw.coset_decompose(&w, &[2, 3]).unwrap();
        assert_eq!(aw.mul(&u, &x), w);
        assert_eq!(x, parse_element(&aw, "s1 s2").unwrap());
        assert_eq!(aw.length(&u) + aw.length(&x), aw.length(&w));
        // conjugating by s2, s3, s2, s3 walks w down to s1 s2 s3
        let mut y = w;
        for s in [2, 3, 2, 3] {
            let g = aw.generator(s);
            y = aw.mul(&aw.mul(&g, &y), &g);
        }
        assert_eq!(y, parse_element(&aw, "s1 s2 s3").unwrap());
        assert!(aw.is_min_left_coset(&y, &[2, 3]));

        let aw = AffineWeyl::preset("GL5").unwrap();
        let x = parse_element(&aw, "s2 s1 s3 s2").unwrap();
        let w = aw.mul(&aw.generator(1), &x);
        let (u, x2) = aw.coset_decompose(&w, &[1, 3, 4]).unwrap();
        assert_eq!(x2, x);
        assert_eq!(u, aw.generator(1));
        assert!(aw.coset_decompose(&w, &[0, 1, 2, 3, 4]).is_err());
    }

    #[test]
    fn longest_elements() {
        let aw = AffineWeyl::preset("SL4").unwrap();
        assert_eq!(aw.length(&aw.longest_element(&[1, 2, 3]).unwrap()), 6);
        assert_eq!(aw.parabolic_elements(&[1, 3]).unwrap().len(), 4);
    }
}
