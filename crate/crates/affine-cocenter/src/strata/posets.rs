//! Closure posets: ⪯_{K,δ} on ᴷW̃, ⪯ on straight classes and the Newton
//! stratification order on B(G, μ), with DOT and JSON export.

use serde_json::{json, Value};

use super::Strata;
use crate::affine_weyl::AffineElt;
use crate::conjugacy::ConjInvariant;
use crate::error::{Error, Result};

/// A cover relation lower ⋖ upper, by node index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct PosetEdge {
    pub lower: usize,
    pub upper: usize,
}

/// A finite poset given by its full relation matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    pub name: String,
    pub labels: Vec<String>,
    /// leq[i][j] iff node i ⪯ node j.
    pub leq: Vec<Vec<bool>>,
}

impl Poset {
    pub fn new(name: &str, labels: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self> {
        let n = labels.len();
        for i in 0..n {
            if !leq[i][i] {
                return Err(Error::internal(format!("{name}: relation is not reflexive")));
            }
            for j in 0..n {
                if i != j && leq[i][j] && leq[j][i] {
                    return Err(Error::internal(format!(
                        "{name}: {} and {} are mutually related",
                        labels[i], labels[j]
                    )));
                }
            }
        }
        Ok(Poset { name: name.to_string(), labels, leq })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// The relation closed under transitivity.
    pub fn transitive_closure(&self) -> Vec<Vec<bool>> {
        let n = self.len();
        let mut r = self.leq.clone();
        for k in 0..n {
            for i in 0..n {
                if r[i][k] {
                    for j in 0..n {
                        if r[k][j] {
                            r[i][j] = true;
                        }
                    }
                }
            }
        }
        r
    }

    pub fn is_transitive(&self) -> bool {
        self.transitive_closure() == self.leq
    }

    /// Covering relations of the transitive closure.
    pub fn hasse(&self) -> Vec<PosetEdge> {
        let r = self.transitive_closure();
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j || !r[i][j] {
                    continue;
                }
                let covered = (0..n).any(|k| k != i && k != j && r[i][k] && r[k][j]);
                if !covered {
                    out.push(PosetEdge { lower: i, upper: j });
                }
            }
        }
        out
    }

    pub fn hasse_labels(&self) -> Vec<(String, String)> {
        self.hasse()
            .iter()
            .map(|e| (self.labels[e.lower].clone(), self.labels[e.upper].clone()))
            .collect()
    }

    pub fn to_dot(&self) -> String {
        let mut out = format!("digraph \"{}\" {{\n  rankdir=BT;\n", self.name);
        for (i, l) in self.labels.iter().enumerate() {
            out.push_str(&format!("  n{i} [label=\"{l}\"];\n"));
        }
        for e in self.hasse() {
            out.push_str(&format!("  n{} -> n{};\n", e.lower, e.upper));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "nodes": self.labels,
            "hasse": self.hasse().iter().map(|e| [e.lower, e.upper]).collect::<Vec<_>>(),
        })
    }
}

impl Strata {
    /// ᴷW̃ ∩ W₀: elements of the finite Weyl group minimal in W_K·w.
    pub fn finite_min_coset_reps(&self, k: &[usize]) -> Result<Vec<AffineElt>> {
        let aw = self.group();
        aw.check_finite_subset(k)?;
        let fin = aw.finite_weyl();
        let mut out: Vec<AffineElt> = (0..fin.order() as u16)
            .map(|u| aw.finite(u))
            .filter(|w| aw.is_min_left_coset(w, k))
            .collect();
        out.sort_by(|a, b| crate::conjugacy::canonical_cmp(aw, a, b));
        Ok(out)
    }

    /// Bruhat order restricted to `scope`.
    pub fn bruhat_poset(&self, scope: &[AffineElt]) -> Result<Poset> {
        let aw = self.group();
        let leq = scope
            .iter()
            .map(|a| scope.iter().map(|b| aw.bruhat_leq(a, b)).collect())
            .collect();
        Poset::new("bruhat", scope.iter().map(|w| aw.format(w)).collect(), leq)
    }

    /// w ⪯_{K,δ} w′ iff u·w·δ(u)⁻¹ ≤ w′ for some u ∈ W_K.
    pub fn k_sigma_leq(&self, wk: &[AffineElt], w: &AffineElt, w2: &AffineElt) -> bool {
        let aw = self.group();
        wk.iter().any(|u| aw.bruhat_leq(&self.conjugacy().conjugate(u, w), w2))
    }

    /// ⪯_{K,δ} on a scope inside ᴷW̃.
    pub fn k_sigma_poset(&self, scope: &[AffineElt], k: &[usize]) -> Result<Poset> {
        let aw = self.group();
        let wk = aw.parabolic_elements(k)?;
        if let Some(w) = scope.iter().find(|w| !aw.is_min_left_coset(w, k)) {
            return Err(Error::domain(format!("{} is not in ᴷW̃", aw.format(w))));
        }
        let leq = scope
            .iter()
            .map(|a| scope.iter().map(|b| self.k_sigma_leq(&wk, a, b)).collect())
            .collect();
        let name = format!("K={:?},delta={}", k, self.conjugacy().twist().label());
        Poset::new(&name, scope.iter().map(|w| aw.format(w)).collect(), leq)
    }

    /// (κ equal, ν ≤ ν′) on straight-class invariants.
    pub fn invariant_leq(&self, a: &ConjInvariant, b: &ConjInvariant) -> Result<bool> {
        if a.kottwitz != b.kottwitz {
            return Ok(false);
        }
        self.group().root_datum().dominance_leq(&a.newton, &b.newton)
    }

    /// 𝒪_a ⪯ 𝒪_b decided on minimal elements: some straight w in 𝒪_a lies
    /// below a fixed straight representative of 𝒪_b.
    pub fn straight_leq_bruhat(&self, a: &ConjInvariant, b: &ConjInvariant) -> Result<bool> {
        let aw = self.group();
        let conj = self.conjugacy();
        let top = self.straight_rep(b)?;
        let la = conj.two_rho_newton(a)?;
        for w in aw.lower_interval(&top) {
            if aw.length(&w) as i64 == la && conj.newton_kottwitz(&w) == *a {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn invariant_label(&self, inv: &ConjInvariant) -> String {
        let rd = self.group().root_datum();
        let nu: Vec<String> = rd.to_ambient(&inv.newton).iter().map(|x| x.to_string()).collect();
        format!("ν=({}) κ={:?}", nu.join(","), inv.kottwitz)
    }

    /// ⪯ on straight classes, via (κ, dominance).
    pub fn straight_class_poset(&self, invs: &[ConjInvariant]) -> Result<Poset> {
        let leq = invs
            .iter()
            .map(|a| invs.iter().map(|b| self.invariant_leq(a, b)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Poset::new("straight", invs.iter().map(|i| self.invariant_label(i)).collect(), leq)
    }

    /// Closure order of the Newton strata on B(G, μ): [b′] lies in the
    /// closure of [b] iff ν_{b′} ≤ ν_b.
    pub fn newton_closure_poset(&self, mu_ambient: &[i64]) -> Result<Poset> {
        let invs = self.bg_mu(mu_ambient)?;
        let mut p = self.straight_class_poset(&invs)?;
        p.name = "newton".into();
        Ok(p)
    }
}
