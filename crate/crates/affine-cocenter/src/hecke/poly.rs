//! Integer polynomials in one variable q.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

/// Degree of a polynomial; the zero polynomial has degree −∞.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

impl Serialize for Degree {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Degree::NegInfinity => s.serialize_str("-inf"),
            Degree::Finite(d) => s.serialize_u64(*d as u64),
        }
    }
}

/// Dense coefficients in ascending degree, without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyZq {
    coeffs: Vec<BigInt>,
}

impl PolyZq {
    pub fn zero() -> Self {
        PolyZq { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::from_coeffs(vec![BigInt::from(c)])
    }

    pub fn q() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// q − 1.
    pub fn q_minus_one() -> Self {
        Self::from_i64(&[-1, 1])
    }

    pub fn q_pow(k: usize) -> Self {
        let mut c = vec![BigInt::zero(); k + 1];
        c[k] = BigInt::one();
        PolyZq { coeffs: c }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        PolyZq { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::from_coeffs(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    /// The leading coefficient; 1 for the zero polynomial.
    pub fn leading_coefficient(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::one)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Coefficients c_k with self = Σ c_k (q−1)^k.
    pub fn q_minus_one_coeffs(&self) -> Vec<BigInt> {
        // Taylor expansion at q = 1 by repeated synthetic division.
        let mut rem = self.coeffs.clone();
        let mut out = Vec::with_capacity(rem.len());
        while !rem.is_empty() {
            let n = rem.len();
            let mut quot = vec![BigInt::zero(); n - 1];
            let mut carry = BigInt::zero();
            for i in (0..n).rev() {
                carry = &carry + &rem[i];
                if i > 0 {
                    quot[i - 1] = carry.clone();
                }
            }
            out.push(carry);
            rem = quot;
        }
        while out.last().is_some_and(Zero::is_zero) {
            out.pop();
        }
        out
    }

    pub fn is_q_minus_one_positive(&self) -> bool {
        self.q_minus_one_coeffs().iter().all(|c| !c.is_negative())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c * k).collect())
    }
}

impl Add for &PolyZq {
    type Output = PolyZq;
    fn add(self, o: &PolyZq) -> PolyZq {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = BigInt::zero();
        PolyZq::from_coeffs(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }
}

impl Neg for &PolyZq {
    type Output = PolyZq;
    fn neg(self) -> PolyZq {
        PolyZq { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Sub for &PolyZq {
    type Output = PolyZq;
    fn sub(self, o: &PolyZq) -> PolyZq {
        self + &(-o)
    }
}

impl Mul for &PolyZq {
    type Output = PolyZq;
    fn mul(self, o: &PolyZq) -> PolyZq {
        if self.is_zero() || o.is_zero() {
            return PolyZq::zero();
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        PolyZq::from_coeffs(c)
    }
}

impl PartialOrd for PolyZq {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for PolyZq {
    fn cmp(&self, o: &Self) -> Ordering {
        self.coeffs.len().cmp(&o.coeffs.len()).then_with(|| self.coeffs.iter().rev().cmp(o.coeffs.iter().rev()))
    }
}

impl fmt::Display for PolyZq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mono = match k {
                0 => String::new(),
                1 => "q".into(),
                _ => format!("q^{k}"),
            };
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{a}{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolyZq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
