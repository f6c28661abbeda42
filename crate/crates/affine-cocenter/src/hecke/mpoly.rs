//! Sparse multivariate integer polynomials in named parameters.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// A monomial as sorted (variable, exponent) pairs with positive exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<(String, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(name: &str) -> Self {
        Monomial(vec![(name.to_string(), 1)])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn powers(&self) -> &[(String, u32)] {
        &self.0
    }

    fn mul(&self, o: &Monomial) -> Monomial {
        let mut m: BTreeMap<String, u32> = self.0.iter().cloned().collect();
        for (v, e) in &o.0 {
            *m.entry(v.clone()).or_insert(0) += e;
        }
        Monomial(m.into_iter().collect())
    }

    fn div(&self, o: &Monomial) -> Option<Monomial> {
        let mut m: BTreeMap<String, u32> = self.0.iter().cloned().collect();
        for (v, e) in &o.0 {
            let x = m.get_mut(v)?;
            if *x < *e {
                return None;
            }
            *x -= e;
        }
        Some(Monomial(m.into_iter().filter(|(_, e)| *e > 0).collect()))
    }

    /// Graded lexicographic: higher total degree first, then lex on
    /// exponents in variable order.
    fn grlex(&self, o: &Monomial) -> Ordering {
        o.degree().cmp(&self.degree()).then_with(|| {
            let vars: std::collections::BTreeSet<&String> =
                self.0.iter().chain(&o.0).map(|(v, _)| v).collect();
            for v in vars {
                let a = self.0.iter().find(|(w, _)| w == v).map_or(0, |p| p.1);
                let b = o.0.iter().find(|(w, _)| w == v).map_or(0, |p| p.1);
                if a != b {
                    return b.cmp(&a);
                }
            }
            Ordering::Equal
        })
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn constant(c: i64) -> Self {
        Self::term(BigInt::from(c), Monomial::one())
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn var(name: &str) -> Self {
        Self::term(BigInt::one(), Monomial::var(name))
    }

    pub fn term(c: BigInt, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn pow(&self, k: u32) -> MPoly {
        (0..k).fold(MPoly::one(), |acc, _| &acc * self)
    }

    /// Terms in graded lex order, leading term first.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &BigInt)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|a, b| a.0.grlex(b.0));
        t
    }

    fn leading(&self) -> Option<(Monomial, BigInt)> {
        self.sorted_terms().first().map(|(m, c)| ((*m).clone(), (*c).clone()))
    }

    /// Substitutes integer values for every variable.
    pub fn eval(&self, at: &dyn Fn(&str) -> BigInt) -> BigInt {
        self.terms
            .iter()
            .map(|(m, c)| {
                m.0.iter().fold(c.clone(), |acc, (v, e)| acc * num_traits::pow(at(v), *e as usize))
            })
            .sum()
    }

    /// Substitutes a polynomial for every variable.
    pub fn substitute(&self, at: &dyn Fn(&str) -> MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let mut t = MPoly::term(c.clone(), Monomial::one());
            for (v, e) in &m.0 {
                t = &t * &at(v).pow(*e);
            }
            out = &out + &t;
        }
        out
    }

    /// Exact quotient self / d, if d divides self.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        let (lm, lc) = d.leading()?;
        let mut rem = self.clone();
        let mut quot = MPoly::zero();
        while let Some((m, c)) = rem.leading() {
            let qm = m.div(&lm)?;
            if !(&c % &lc).is_zero() {
                return None;
            }
            let t = MPoly::term(&c / &lc, qm);
            rem = &rem - &(&t * d);
            quot = &quot + &t;
        }
        Some(quot)
    }

    /// Splits off factors from `candidates` by trial division.
    /// Returns (sign·content, [(factor, multiplicity)], cofactor).
    pub fn factor_by_trial(&self, candidates: &[MPoly]) -> Factored {
        let mut rest = self.clone();
        let mut factors = Vec::new();
        for f in candidates {
            let mut k = 0;
            while !rest.is_zero() {
                match rest.div_exact(f) {
                    Some(q) => {
                        rest = q;
                        k += 1;
                    }
                    None => break,
                }
            }
            if k > 0 {
                factors.push((f.clone(), k));
            }
        }
        let unit = match rest.terms.len() {
            1 if rest.terms.keys().next() == Some(&Monomial::one()) => {
                let c = rest.terms.values().next().cloned().expect("one term");
                rest = MPoly::one();
                c
            }
            _ => BigInt::one(),
        };
        Factored { unit, factors, cofactor: rest }
    }
}

/// unit · Π factorᵏ · cofactor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factored {
    pub unit: BigInt,
    pub factors: Vec<(MPoly, u32)>,
    pub cofactor: MPoly,
}

impl Factored {
    pub fn expand(&self) -> MPoly {
        let mut p = &MPoly::term(self.unit.clone(), Monomial::one()) * &self.cofactor;
        for (f, k) in &self.factors {
            p = &p * &f.pow(*k);
        }
        p
    }
}

impl fmt::Display for Factored {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.unit == -BigInt::one() {
            parts.push("-".into());
        } else if !self.unit.is_one() {
            parts.push(self.unit.to_string());
        }
        for (p, k) in &self.factors {
            if *k == 1 {
                parts.push(format!("({p})"));
            } else {
                parts.push(format!("({p})^{k}"));
            }
        }
        if self.cofactor != MPoly::one() || self.factors.is_empty() {
            parts.push(format!("({})", self.cofactor));
        }
        write!(f, "{}", parts.join(""))
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, o: &MPoly) -> MPoly {
        let mut terms = self.terms.clone();
        for (m, c) in &o.terms {
            let e = terms.entry(m.clone()).or_insert_with(BigInt::zero);
            *e += c;
            if e.is_zero() {
                terms.remove(m);
            }
        }
        MPoly { terms }
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, o: &MPoly) -> MPoly {
        self + &(-o)
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, o: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out = &out + &MPoly::term(c1 * c2, m1.mul(m2));
            }
        }
        out
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mono: Vec<String> = m
                .0
                .iter()
                .map(|(v, e)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
                .collect();
            match (mono.is_empty(), a.is_one()) {
                (true, _) => write!(f, "{a}")?,
                (false, true) => write!(f, "{}", mono.join("*"))?,
                (false, false) => write!(f, "{a}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Square matrices over MPoly.
pub type MMat = Vec<Vec<MPoly>>;

pub fn mat_mul(a: &MMat, b: &MMat) -> MMat {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..b.len()).fold(MPoly::zero(), |acc, k| &acc + &(&a[i][k] * &b[k][j])))
                .collect()
        })
        .collect()
}

pub fn mat_identity(n: usize) -> MMat {
    (0..n).map(|i| (0..n).map(|j| MPoly::constant(i64::from(i == j))).collect()).collect()
}

pub fn trace(a: &MMat) -> MPoly {
    (0..a.len()).fold(MPoly::zero(), |acc, i| &acc + &a[i][i])
}

/// Determinant by cofactor expansion along the first row.
pub fn determinant(a: &MMat) -> MPoly {
    let n = a.len();
    match n {
        0 => MPoly::one(),
        1 => a[0][0].clone(),
        _ => {
            let mut out = MPoly::zero();
            for j in 0..n {
                if a[0][j].is_zero() {
                    continue;
                }
                let minor: MMat = a[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect())
                    .collect();
                let t = &a[0][j] * &determinant(&minor);
                out = if j % 2 == 0 { &out + &t } else { &out - &t };
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> MPoly {
        MPoly::var(s)
    }

    #[test]
    fn display_and_division() {
        let one = MPoly::one();
        let p = &(&one + &q("q")) * &(&(&q("q") * &q("q")) + &(&q("q") + &one));
        assert_eq!(p.to_string(), "q^3 + 2*q^2 + 2*q + 1");
        let d = p.div_exact(&(&one + &q("q"))).unwrap();
        assert_eq!(d.to_string(), "q^2 + q + 1");
        assert!(p.div_exact(&(&q("q") - &one)).is_none());
    }

    #[test]
    fn two_variable_factoring() {
        let one = MPoly::one();
        let (a, b) = (q("q0"), q("q1"));
        let f = &(&(&a + &b) * &(&one + &(&a * &b))) * &(&one + &a).pow(2);
        let fac = (-&f).factor_by_trial(&[&one + &a, &a + &b, &one + &(&a * &b)]);
        assert_eq!(fac.unit, BigInt::from(-1));
        assert_eq!(fac.cofactor, MPoly::one());
        assert_eq!(fac.factors[0].1, 2);
        assert_eq!(fac.expand(), -&f);
    }

    #[test]
    fn small_determinant() {
        let m = vec![
            vec![MPoly::constant(2), MPoly::constant(1)],
            vec![MPoly::constant(1), MPoly::constant(1)],
        ];
        assert_eq!(determinant(&m), MPoly::one());
    }
}
