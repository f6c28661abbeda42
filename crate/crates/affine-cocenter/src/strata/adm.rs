//! Admissible sets Adm(μ), their parahoric versions and B(G, μ).

use std::collections::BTreeSet;

use serde_json::{json, Value};

use super::Strata;
use crate::affine_weyl::AffineElt;
use crate::conjugacy::ConjInvariant;
use crate::error::{Error, Result};
use crate::linalg::rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleSets {
    pub mu: Vec<i64>,
    pub k: Vec<usize>,
    /// Adm(μ), sorted by length.
    pub adm: Vec<AffineElt>,
    /// W_K·Adm(μ)·W_K.
    pub adm_k: Vec<AffineElt>,
    /// Minimal representatives of the double cosets in Adm(μ)^K.
    pub double_cosets: Vec<AffineElt>,
    /// Adm(μ) ∩ ᴷW̃, the index set of the EKOR strata.
    pub ekor: Vec<AffineElt>,
}

impl AdmissibleSets {
    /// Adm(μ)^K ∩ ᴷW̃ = Adm(μ) ∩ ᴷW̃, given the membership test for ᴷW̃.
    pub fn ekor_identity_holds(&self, in_kw: impl Fn(&AffineElt) -> bool) -> bool {
        let lhs: BTreeSet<AffineElt> = self.adm_k.iter().filter(|w| in_kw(w)).copied().collect();
        let rhs: BTreeSet<AffineElt> = self.ekor.iter().copied().collect();
        lhs == rhs
    }

    pub fn to_json(&self, aw: &crate::AffineWeyl) -> Value {
        let f = |v: &[AffineElt]| v.iter().map(|w| aw.format(w)).collect::<Vec<_>>();
        json!({
            "mu": self.mu,
            "K": self.k,
            "adm": f(&self.adm),
            "adm_K_double_cosets": f(&self.double_cosets),
            "ekor": f(&self.ekor),
        })
    }
}

impl Strata {
    pub(crate) fn check_dominant(&self, mu: &[i64]) -> Result<Vec<i64>> {
        let rd = self.group().root_datum();
        let basis = rd.from_ambient(mu)?;
        if !rd.is_dominant(&basis.iter().map(|&x| rat(x)).collect::<Vec<_>>()) {
            return Err(Error::domain("μ is not dominant"));
        }
        Ok(basis)
    }

    /// The distinct W₀-conjugates x(μ) of a coweight in basis coordinates.
    pub fn weyl_orbit(&self, mu: &[i64]) -> Vec<Vec<i64>> {
        let fin = self.group().finite_weyl();
        let set: BTreeSet<Vec<i64>> = (0..fin.order() as u16).map(|u| fin.act(u, mu)).collect();
        set.into_iter().collect()
    }

    /// Adm(μ) = {w ≤ t^{x(μ)}}, with μ in ambient coordinates.
    pub fn admissible_sets(&self, mu_ambient: &[i64], k: &[usize]) -> Result<AdmissibleSets> {
        let aw = self.group();
        aw.check_finite_subset(k)?;
        let mu = self.check_dominant(mu_ambient)?;
        let mut adm: BTreeSet<AffineElt> = BTreeSet::new();
        for lam in self.weyl_orbit(&mu) {
            adm.extend(aw.lower_interval(&aw.translation(&lam)));
        }
        let mut adm_k: BTreeSet<AffineElt> = BTreeSet::new();
        let mut cosets: BTreeSet<AffineElt> = BTreeSet::new();
        for w in &adm {
            cosets.insert(aw.double_coset_min(w, k)?);
        }
        for c in &cosets {
            adm_k.extend(aw.double_coset(c, k)?);
        }
        let by_len = |s: BTreeSet<AffineElt>| {
            let mut v: Vec<AffineElt> = s.into_iter().collect();
            v.sort_by_key(|w| (aw.length(w), *w));
            v
        };
        let ekor: BTreeSet<AffineElt> =
            adm.iter().filter(|w| aw.is_min_left_coset(w, k)).copied().collect();
        Ok(AdmissibleSets {
            mu: mu_ambient.to_vec(),
            k: k.to_vec(),
            adm: by_len(adm),
            adm_k: by_len(adm_k),
            double_cosets: by_len(cosets),
            ekor: by_len(ekor),
        })
    }

    /// B(G, μ): straight-class invariants with κ(b) = κ(t^μ) and ν_b ≤ μ^◆,
    /// with μ in ambient coordinates.
    pub fn bg_mu(&self, mu_ambient: &[i64]) -> Result<Vec<ConjInvariant>> {
        let mu = self.check_dominant(mu_ambient)?;
        let aw = self.group();
        let conj = self.conjugacy();
        let t = aw.translation(&mu);
        let kappa = conj.kottwitz(&t);
        let bound = conj.two_rho_newton(&conj.newton_kottwitz(&t))?.max(0) as usize;
        let lift = conj.kottwitz_lift(&kappa);
        let mut out: BTreeSet<ConjInvariant> = BTreeSet::new();
        for l in 0..=bound {
            for x in aw.affine_level(l, conj.budget())? {
                let w = aw.mul(&x, &lift);
                if !conj.is_straight(&w)? {
                    continue;
                }
                let inv = conj.newton_kottwitz(&w);
                if !out.contains(&inv) && self.mazur_basis(&mu, &inv)? {
                    out.insert(inv);
                }
            }
        }
        Ok(out.into_iter().collect())
    }
}
