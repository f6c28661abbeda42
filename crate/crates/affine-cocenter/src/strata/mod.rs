//! Dimensions and non-emptiness of Ĭ ẇ Ĭ ∩ [b] and its parahoric variants,
//! together with the combinatorial predicates and posets built around them.

mod adm;
mod eta;
mod posets;
mod tree;

pub use adm::AdmissibleSets;
pub use eta::{EtaReport, Verdict};
pub use posets::{Poset, PosetEdge};
pub use tree::{ReductionTree, TreeNode, TreeStrategy};

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde_json::{json, Value};

use crate::affine_weyl::{AffineElt, AffineWeyl};
use crate::conjugacy::{ConjInvariant, Conjugacy};
use crate::error::{Error, Result};
use crate::hecke::{Cocenter, Degree, PolyZq};
use crate::linalg::rat;

/// A validated (w, K, b) triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumQuery {
    pub w: AffineElt,
    /// Generator indices of K; empty for the Iwahori subgroup.
    pub k: Vec<usize>,
    pub b: ConjInvariant,
}

/// Dimension data of one intersection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimReport {
    /// deg F minus `shift`; −∞ when empty.
    pub dimension: Degree,
    pub irr_max_count: BigInt,
    /// Dimension of the affine Deligne–Lusztig variety.
    pub adlv_dimension: Degree,
    /// The governing class polynomial F.
    pub polynomial: PolyZq,
    /// ℓ(w_K) for parahoric queries, 0 otherwise.
    pub shift: usize,
    /// Dimensions of the open and closed pieces of the first reduction step.
    pub pieces: Vec<Degree>,
}

impl DimReport {
    fn from_poly(polynomial: PolyZq, shift: usize, two_rho_nu: i64) -> Result<Self> {
        let dimension = match polynomial.degree() {
            Degree::NegInfinity => Degree::NegInfinity,
            Degree::Finite(d) => Degree::Finite(d.checked_sub(shift).ok_or_else(|| {
                Error::internal("class polynomial degree below the parahoric offset")
            })?),
        };
        let adlv_dimension = match dimension {
            Degree::NegInfinity => Degree::NegInfinity,
            Degree::Finite(d) => {
                let a = d as i64 - two_rho_nu;
                if a < 0 {
                    return Err(Error::internal("negative affine Deligne–Lusztig dimension"));
                }
                Degree::Finite(a as usize)
            }
        };
        Ok(DimReport {
            dimension,
            irr_max_count: polynomial.leading_coefficient(),
            adlv_dimension,
            polynomial,
            shift,
            pieces: Vec::new(),
        })
    }

    pub fn is_empty(&self) -> bool {
        self.dimension == Degree::NegInfinity
    }

    pub fn to_json(&self) -> Value {
        json!({
            "dim": self.dimension,
            "irr_max": self.irr_max_count.to_string(),
            "adlv_dim": self.adlv_dimension,
            "poly": self.polynomial.to_string(),
            "poly_coeffs": self.polynomial.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "shift": self.shift,
            "pieces": self.pieces,
        })
    }
}

/// Closed-form answers for a special maximal parahoric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialDims {
    pub nonempty: bool,
    /// ⟨ρ, μ + ν_b⟩ − ½def(b), when nonempty.
    pub dim_kmuk: Option<i64>,
    /// ⟨ρ, μ − ν_b⟩ − ½def(b), when nonempty.
    pub dim_adlv: Option<i64>,
}

/// Stratum computations for one group and twist.
pub struct Strata {
    coc: Arc<Cocenter>,
}

impl std::fmt::Debug for Strata {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Strata").field("cocenter", &self.coc).finish()
    }
}

impl Strata {
    pub fn new(coc: Arc<Cocenter>) -> Self {
        Strata { coc }
    }

    pub fn untwisted(name: &str) -> Result<Self> {
        Ok(Self::new(Arc::new(Cocenter::untwisted(name)?)))
    }

    pub fn cocenter(&self) -> &Cocenter {
        &self.coc
    }

    pub fn conjugacy(&self) -> &Conjugacy {
        self.coc.conjugacy()
    }

    pub fn group(&self) -> &AffineWeyl {
        self.coc.group()
    }

    /// The class of the identity element.
    pub fn identity_class(&self) -> ConjInvariant {
        self.conjugacy().newton_kottwitz(&self.group().identity())
    }

    /// A straight representative of b, or a domain error if b is not the
    /// invariant of any straight class.
    pub fn straight_rep(&self, b: &ConjInvariant) -> Result<AffineElt> {
        self.conjugacy()
            .straight_representative(b)?
            .ok_or_else(|| Error::domain("the given invariant is not attained by a straight class"))
    }

    pub fn query(&self, w: &AffineElt, k: &[usize], b: &ConjInvariant) -> Result<StratumQuery> {
        let aw = self.group();
        aw.check(w)?;
        aw.check_finite_subset(k)?;
        self.straight_rep(b)?;
        let mut k = k.to_vec();
        k.sort_unstable();
        k.dedup();
        Ok(StratumQuery { w: *w, k, b: b.clone() })
    }

    pub fn defect(&self, b: &ConjInvariant) -> Result<usize> {
        let rep = self.straight_rep(b)?;
        self.conjugacy().defect(b, &rep)
    }

    fn stable_k(&self, k: &[usize]) -> Result<()> {
        self.group().check_finite_subset(k)?;
        let tw = self.conjugacy().twist();
        if k.iter().any(|&s| !k.contains(&tw.perm(s))) {
            return Err(Error::domain("K is not stable under the twist"));
        }
        Ok(())
    }

    /// F_{w,[b]}, with the length shortcut for empty intersections.
    pub fn f_wb(&self, w: &AffineElt, b: &ConjInvariant) -> Result<PolyZq> {
        let two_rho = self.conjugacy().two_rho_newton(b)?;
        if (self.group().length(w) as i64) < two_rho {
            return Ok(PolyZq::zero());
        }
        self.coc.class_poly_by_invariant(w, b)
    }

    /// dim_Ĭ(Ĭ ẇ Ĭ ∩ [b]) = deg F_{w,[b]}.
    pub fn iwahori_stratum_dim(&self, w: &AffineElt, b: &ConjInvariant) -> Result<DimReport> {
        let q = self.query(w, &[], b)?;
        let two_rho = self.conjugacy().two_rho_newton(&q.b)?;
        let mut rep = DimReport::from_poly(self.f_wb(w, &q.b)?, 0, two_rho)?;
        if let Some(d) = self.conjugacy().find_descent(w)? {
            let sw = self.group().left_mul_gen(d.simple, &d.at);
            rep.pieces = [sw, d.result]
                .iter()
                .map(|x| {
                    self.f_wb(x, &q.b).map(|f| match f.degree() {
                        Degree::NegInfinity => Degree::NegInfinity,
                        Degree::Finite(e) => Degree::Finite(e + 1),
                    })
                })
                .collect::<Result<_>>()?;
        }
        Ok(rep)
    }

    /// dim_K̆(K̆ ẇ K̆ ∩ [b]) via the sum of F_{w′,[b]} over W_K·w·W_K.
    pub fn parahoric_stratum_dim(
        &self,
        w: &AffineElt,
        k: &[usize],
        b: &ConjInvariant,
    ) -> Result<DimReport> {
        self.stable_k(k)?;
        let q = self.query(w, k, b)?;
        let aw = self.group();
        let mut total = PolyZq::zero();
        for x in aw.double_coset(&q.w, &q.k)? {
            total = &total + &self.f_wb(&x, &q.b)?;
        }
        let shift = aw.length(&aw.longest_element(&q.k)?);
        let two_rho = self.conjugacy().two_rho_newton(&q.b)?;
        DimReport::from_poly(total, shift, two_rho)
    }

    /// dim_K̆(K̆ ·_σ Ĭ ẋ Ĭ ∩ [b]) = deg F_{x,[b]} for x ∈ ᴷW̃.
    pub fn ekor_piece_dim(&self, x: &AffineElt, k: &[usize], b: &ConjInvariant) -> Result<DimReport> {
        self.stable_k(k)?;
        let q = self.query(x, k, b)?;
        if !self.group().is_min_left_coset(&q.w, &q.k) {
            return Err(Error::domain("x is not minimal in its left W_K-coset"));
        }
        let two_rho = self.conjugacy().two_rho_newton(&q.b)?;
        DimReport::from_poly(self.f_wb(&q.w, &q.b)?, 0, two_rho)
    }

    /// The ς-average μ^◆ of a coweight, in basis coordinates.
    pub fn sigma_average(&self, mu: &[i64]) -> Vec<BigRational> {
        let tw = self.conjugacy().twist();
        let mut orbit = vec![mu.to_vec()];
        loop {
            let next = tw.sigma_coweight(orbit.last().expect("nonempty"));
            if next == orbit[0] {
                break;
            }
            orbit.push(next);
        }
        let n = rat(orbit.len() as i64);
        (0..mu.len())
            .map(|i| orbit.iter().map(|v| rat(v[i])).sum::<BigRational>() / &n)
            .collect()
    }

    /// Whether b satisfies κ(b) = κ(t^μ) and ν_b ≤ μ^◆, with μ in ambient
    /// coordinates.
    pub fn mazur_nonempty(&self, mu_ambient: &[i64], b: &ConjInvariant) -> Result<bool> {
        let mu = self.check_dominant(mu_ambient)?;
        self.mazur_basis(&mu, b)
    }

    pub(crate) fn mazur_basis(&self, mu: &[i64], b: &ConjInvariant) -> Result<bool> {
        let aw = self.group();
        let rd = aw.root_datum();
        let t = aw.translation(mu);
        if self.conjugacy().kottwitz(&t) != b.kottwitz {
            return Ok(false);
        }
        let (avg, _) = rd.dominant_representative(&self.sigma_average(mu));
        rd.dominance_leq(&b.newton, &avg)
    }

    /// Closed forms for K̆ ε^μ K̆ ∩ [b] with K̆ special maximal.
    pub fn special_parahoric_dim(&self, mu_ambient: &[i64], b: &ConjInvariant) -> Result<SpecialDims> {
        let rd = self.group().root_datum();
        let mu = self.check_dominant(mu_ambient)?;
        if !self.mazur_basis(&mu, b)? {
            return Ok(SpecialDims { nonempty: false, dim_kmuk: None, dim_adlv: None });
        }
        let (avg, _) = rd.dominant_representative(&self.sigma_average(&mu));
        let def = rat(self.defect(b)? as i64);
        let half = half();
        let rho = |v: &[BigRational]| rd.two_rho_pairing(v) * &half;
        let plus: Vec<BigRational> = avg.iter().zip(&b.newton).map(|(a, n)| a + n).collect();
        let minus: Vec<BigRational> = avg.iter().zip(&b.newton).map(|(a, n)| a - n).collect();
        let to_int = |x: BigRational| -> Result<i64> {
            if !x.is_integer() {
                return Err(Error::internal("closed-form dimension is not integral"));
            }
            crate::linalg::to_i64(&x.to_integer()).ok_or_else(|| Error::internal("overflow"))
        };
        let kmuk = to_int(rho(&plus) - &def * &half)?;
        let adlv = to_int(rho(&minus) - &def * &half)?;
        Ok(SpecialDims { nonempty: true, dim_kmuk: Some(kmuk), dim_adlv: Some(adlv) })
    }

    /// The finite simple reflections, i.e. the special maximal parahoric
    /// attached to the origin.
    pub fn special_k(&self) -> Vec<usize> {
        self.group().finite_generators()
    }

    /// JSON report for one Iwahori query.
    pub fn report_json(&self, w: &AffineElt, b: &ConjInvariant) -> Result<Value> {
        let aw = self.group();
        let dim = self.iwahori_stratum_dim(w, b)?;
        let eta = self.eta_virtual(w, b)?;
        let mut v = dim.to_json();
        let obj = v.as_object_mut().expect("object");
        obj.insert("w".into(), json!(aw.format(w)));
        obj.insert("K".into(), json!([]));
        obj.insert("b".into(), b.to_json(aw.root_datum()));
        obj.insert("virtual_dim".into(), json!(eta.virtual_dim.to_string()));
        obj.insert("eta".into(), json!(aw.format(&aw.finite(eta.eta))));
        obj.insert("shrunken".into(), json!(eta.shrunken));
        Ok(v)
    }
}

pub(crate) fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine_weyl::parse_element;

    #[test]
    fn sl2_three_letter_word() {
        let st = Strata::untwisted("SL2").unwrap();
        let w = parse_element(st.group(), "s1 s0 s1").unwrap();
        let r = st.iwahori_stratum_dim(&w, &st.identity_class()).unwrap();
        assert_eq!(r.dimension, Degree::Finite(2));
        assert_eq!(r.adlv_dimension, Degree::Finite(2));
        assert_eq!(r.irr_max_count, BigInt::from(1));
    }

    #[test]
    fn straight_minimal_has_its_length() {
        let st = Strata::untwisted("GL3").unwrap();
        let w = parse_element(st.group(), "t[1,0,0]*s1*s2").unwrap();
        let b = st.conjugacy().newton_kottwitz(&w);
        let r = st.iwahori_stratum_dim(&w, &b).unwrap();
        assert_eq!(r.dimension, Degree::Finite(st.group().length(&w)));
        assert_eq!(r.irr_max_count, BigInt::from(1));
        let other = st.conjugacy().newton_kottwitz(&st.group().translation(&[1, 0, 0]));
        assert!(st.iwahori_stratum_dim(&w, &other).unwrap().is_empty());
    }

    #[test]
    fn superbasic_special_parahoric() {
        let st = Strata::untwisted("GL3").unwrap();
        let tau = parse_element(st.group(), "tau").unwrap();
        let b = st.conjugacy().newton_kottwitz(&tau);
        let sp = st.special_parahoric_dim(&[1, 0, 0], &b).unwrap();
        assert_eq!(sp, SpecialDims { nonempty: true, dim_kmuk: Some(0), dim_adlv: Some(0) });
        let t = st.group().translation(&[1, 0, 0]);
        let r = st.parahoric_stratum_dim(&t, &st.special_k(), &b).unwrap();
        assert_eq!(r.polynomial.degree(), Degree::Finite(3));
        assert_eq!(r.dimension, Degree::Finite(0));
        let big = st.conjugacy().newton_kottwitz(&parse_element(st.group(), "t[1,1,-1]").unwrap());
        assert!(!st.special_parahoric_dim(&[1, 0, 0], &big).unwrap().nonempty);
    }

    #[test]
    fn sl2_double_coset_has_four_elements() {
        let st = Strata::untwisted("SL2").unwrap();
        let aw = st.group();
        let t = aw.translation(&[1]);
        let k = st.special_k();
        assert_eq!(aw.double_coset(&t, &k).unwrap().len(), 4);
        let b = st.identity_class();
        let r = st.parahoric_stratum_dim(&t, &k, &b).unwrap();
        let direct = aw
            .double_coset(&t, &k)
            .unwrap()
            .iter()
            .fold(PolyZq::zero(), |acc, x| &acc + &st.f_wb(x, &b).unwrap());
        assert_eq!(r.polynomial, direct);
    }

    #[test]
    fn infinite_k_is_rejected() {
        let st = Strata::untwisted("SL2").unwrap();
        let b = st.identity_class();
        let e = st.group().identity();
        assert!(matches!(st.parahoric_stratum_dim(&e, &[0, 1], &b), Err(Error::Domain(_))));
    }
}
