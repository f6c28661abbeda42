//! Class polynomials F_{w,𝒪}: the coefficients of T_w in the basis {T_𝒪}
//! of the cocenter.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::poly::PolyZq;
use crate::affine_weyl::{AffineElt, AffineWeyl};
use crate::conjugacy::{ClassKey, ConjInvariant, Conjugacy};
use crate::error::{Error, Result};

/// T_w ≡ Σ F_{w,𝒪} T_𝒪 in the cocenter.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ClassPolyDecomp {
    pub entries: BTreeMap<ClassKey, PolyZq>,
}

impl ClassPolyDecomp {
    fn single(key: ClassKey) -> Self {
        let mut entries = BTreeMap::new();
        entries.insert(key, PolyZq::one());
        ClassPolyDecomp { entries }
    }

    fn combine(a: &Self, pa: &PolyZq, b: &Self, pb: &PolyZq) -> Self {
        let mut entries: BTreeMap<ClassKey, PolyZq> = BTreeMap::new();
        for (src, f) in [(a, pa), (b, pb)] {
            for (k, v) in &src.entries {
                let e = entries.entry(k.clone()).or_default();
                *e = &*e + &(v * f);
            }
        }
        entries.retain(|_, v| !v.is_zero());
        ClassPolyDecomp { entries }
    }

    /// Σ_𝒪 F_{w,𝒪}(1), which is 1 for every w.
    pub fn sum_at_one(&self) -> BigInt {
        self.entries.values().map(PolyZq::at_one).sum()
    }

    /// F_{w,[b]} = Σ_{inv(𝒪) = b} q^{ℓ(𝒪)} F_{w,𝒪}.
    pub fn by_invariant(&self, inv: &ConjInvariant) -> PolyZq {
        self.entries
            .iter()
            .filter(|(k, _)| k.invariant == *inv)
            .fold(PolyZq::zero(), |acc, (k, v)| &acc + &(&PolyZq::q_pow(k.min_length) * v))
    }

    /// The invariants appearing, each with its aggregated polynomial.
    pub fn aggregated(&self) -> BTreeMap<ConjInvariant, PolyZq> {
        let mut out: BTreeMap<ConjInvariant, PolyZq> = BTreeMap::new();
        for k in self.entries.keys() {
            out.entry(k.invariant.clone()).or_insert_with(|| self.by_invariant(&k.invariant));
        }
        out
    }

    pub fn to_json(&self, aw: &AffineWeyl) -> Value {
        Value::Array(
            self.entries
                .iter()
                .map(|(k, v)| {
                    let inv = k.invariant.to_json(aw.root_datum());
                    json!({
                        "rep": aw.format(&k.rep),
                        "newton": inv["newton"],
                        "kottwitz": inv["kottwitz"],
                        "min_length": k.min_length,
                        "poly": v.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                        "display": v.to_string(),
                    })
                })
                .collect(),
        )
    }
}

/// Memoised class-polynomial computations for one (group, twist).
pub struct Cocenter {
    conj: Arc<Conjugacy>,
    memo: RwLock<HashMap<AffineElt, ClassPolyDecomp>>,
}

impl std::fmt::Debug for Cocenter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Cocenter").field("conjugacy", &self.conj).finish()
    }
}

impl Cocenter {
    pub fn new(conj: Arc<Conjugacy>) -> Self {
        Cocenter { conj, memo: RwLock::new(HashMap::new()) }
    }

    pub fn untwisted(name: &str) -> Result<Self> {
        Ok(Self::new(Arc::new(Conjugacy::untwisted(name)?)))
    }

    pub fn conjugacy(&self) -> &Conjugacy {
        &self.conj
    }

    pub fn group(&self) -> &AffineWeyl {
        self.conj.group()
    }

    /// F_{w,𝒪} for all 𝒪, with the first descent found at each step.
    pub fn class_poly(&self, w: &AffineElt) -> Result<ClassPolyDecomp> {
        self.group().check(w)?;
        if let Some(d) = self.memo.read().expect("memo poisoned").get(w) {
            return Ok(d.clone());
        }
        let d = match self.conj.find_descent(w)? {
            None => ClassPolyDecomp::single(self.conj.class_key_of_minimal(w)?),
            Some(desc) => {
                let sw = self.group().left_mul_gen(desc.simple, &desc.at);
                let a = self.class_poly(&sw)?;
                let b = self.class_poly(&desc.result)?;
                ClassPolyDecomp::combine(&a, &PolyZq::q_minus_one(), &b, &PolyZq::q())
            }
        };
        let mut memo = self.memo.write().expect("memo poisoned");
        if memo.len() >= self.conj.budget().memo_entries {
            return Err(Error::resource(format!(
                "class-polynomial memo exceeds {} entries",
                self.conj.budget().memo_entries
            )));
        }
        memo.insert(*w, d.clone());
        Ok(d)
    }

    /// The same recursion with descents chosen at random and no memo.
    pub fn class_poly_seeded(&self, w: &AffineElt, rng: &mut ChaCha8Rng) -> Result<ClassPolyDecomp> {
        match self.conj.find_descent_random(w, rng)? {
            None => Ok(ClassPolyDecomp::single(self.conj.class_key_of_minimal(w)?)),
            Some(desc) => {
                let sw = self.group().left_mul_gen(desc.simple, &desc.at);
                let a = self.class_poly_seeded(&sw, rng)?;
                let b = self.class_poly_seeded(&desc.result, rng)?;
                Ok(ClassPolyDecomp::combine(&a, &PolyZq::q_minus_one(), &b, &PolyZq::q()))
            }
        }
    }

    pub fn class_poly_by_invariant(&self, w: &AffineElt, inv: &ConjInvariant) -> Result<PolyZq> {
        Ok(self.class_poly(w)?.by_invariant(inv))
    }

    pub fn memo_len(&self) -> usize {
        self.memo.read().expect("memo poisoned").len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine_weyl::parse_element;
    use crate::hecke::Degree;
    use rand::SeedableRng;

    #[test]
    fn sl2_example() {
        let cc = Cocenter::untwisted("SL2").unwrap();
        let aw = cc.group();
        let w = parse_element(aw, "s1 s0 s1").unwrap();
        let d = cc.class_poly(&w).unwrap();
        assert_eq!(d.entries.len(), 2);
        let mut got: Vec<(usize, String)> =
            d.entries.iter().map(|(k, v)| (k.min_length, v.to_string())).collect();
        got.sort();
        assert_eq!(got, vec![(1, "q".to_string()), (2, "q - 1".to_string())]);
        let s0 = d.entries.keys().find(|k| k.min_length == 1).unwrap();
        assert_eq!(s0.rep, aw.generator(0));
        let zero = cc.conjugacy().newton_kottwitz(&aw.identity());
        assert_eq!(d.by_invariant(&zero).to_string(), "q^2");
        let tr = d.entries.keys().find(|k| k.min_length == 2).unwrap();
        assert_eq!(d.by_invariant(&tr.invariant).degree(), Degree::Finite(3));
        assert_eq!(d.sum_at_one(), BigInt::from(1));
    }

    #[test]
    fn minimal_is_base_case() {
        let cc = Cocenter::untwisted("SL3").unwrap();
        let w = parse_element(cc.group(), "s0 s1").unwrap();
        let d = cc.class_poly(&w).unwrap();
        assert_eq!(d.entries.len(), 1);
        assert_eq!(d.entries.values().next().unwrap(), &PolyZq::one());
    }

    #[test]
    fn random_tie_breaking_agrees() {
        let cc = Cocenter::untwisted("SL3").unwrap();
        let w = parse_element(cc.group(), "s1 s2 s0 s1 s2 s1").unwrap();
        let d = cc.class_poly(&w).unwrap();
        for seed in 0..4 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            assert_eq!(cc.class_poly_seeded(&w, &mut rng).unwrap(), d);
        }
    }
}
