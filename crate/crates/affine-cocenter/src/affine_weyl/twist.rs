//! Length-preserving automorphisms δ = Ad(τ)∘ς of W̃.

use crate::error::{Error, Result};
use crate::linalg::{self, IMat, LatticeQuotient};
use crate::root_datum::Ambient;

use super::{AffineElt, AffineWeyl};

#[derive(Debug, Clone)]
pub struct Twist {
    label: String,
    sigma: IMat,
    sigma_w0: Vec<u16>,
    tau: AffineElt,
    tau_inv: AffineElt,
    perm: Vec<usize>,
    coinvariants: LatticeQuotient,
}

impl Twist {
    pub fn identity(aw: &AffineWeyl) -> Self {
        Self::new(aw, linalg::identity(aw.rank()), aw.identity(), "id").expect("identity twist")
    }

    /// δ = Ad(τ)∘ς where ς acts on X₊ by the matrix `sigma`.
    pub fn new(aw: &AffineWeyl, sigma: IMat, tau: AffineElt, label: &str) -> Result<Self> {
        aw.check(&tau)?;
        if aw.length(&tau) != 0 {
            return Err(Error::domain("the Ω-part of a twist must have length zero"));
        }
        let r = aw.rank();
        if sigma.len() != r || sigma.iter().any(|row| row.len() != r) {
            return Err(Error::domain("twist matrix has the wrong size"));
        }
        let sigma_inv = linalg::integer_inverse(&sigma)
            .ok_or_else(|| Error::domain("twist matrix is not invertible over ℤ"))?;
        let fin = aw.finite_weyl();
        let mut sigma_w0 = Vec::with_capacity(fin.order());
        for u in 0..fin.order() as u16 {
            let m = linalg::mat_mul(&linalg::mat_mul(&sigma, fin.matrix(u)), &sigma_inv);
            let img = fin
                .lookup(&m)
                .ok_or_else(|| Error::domain("twist does not normalise the finite Weyl group"))?;
            sigma_w0.push(img);
        }
        let mut one_minus: Vec<Vec<i64>> = aw.root_datum().simple_coroots().to_vec();
        for k in 0..r {
            let col: Vec<i64> = (0..r).map(|i| i64::from(i == k) - sigma[i][k]).collect();
            one_minus.push(col);
        }
        let coinvariants = LatticeQuotient::new(r, &one_minus);
        let mut tw = Twist {
            label: label.to_string(),
            sigma,
            sigma_w0,
            tau,
            tau_inv: aw.inverse(&tau),
            perm: Vec::new(),
            coinvariants,
        };
        let mut perm = Vec::with_capacity(aw.num_generators());
        for i in 0..aw.num_generators() {
            let img = tw.apply(aw, &aw.generator(i));
            let j = (0..aw.num_generators())
                .find(|&j| aw.generator(j) == img)
                .ok_or_else(|| Error::domain("twist does not permute the simple affine reflections"))?;
            perm.push(j);
        }
        tw.perm = perm;
        Ok(tw)
    }

    /// Parses `id`, or a comma-separated list of `flip` and `tau[^k]`.
    pub fn parse(aw: &AffineWeyl, text: &str) -> Result<Self> {
        let t = text.trim();
        if t.is_empty() || t == "id" {
            return Ok(Self::identity(aw));
        }
        let mut sigma = linalg::identity(aw.rank());
        let mut tau = aw.identity();
        let mut offset = 0;
        for part in t.split(',') {
            let p = part.trim();
            if p == "flip" {
                sigma = linalg::mat_mul(&diagram_flip(aw)?, &sigma);
            } else if let Some(rest) = p.strip_prefix("tau") {
                let k: i64 = match rest.trim().strip_prefix('^') {
                    None if rest.trim().is_empty() => 1,
                    None => return Err(Error::parse(offset, format!("bad twist component `{p}`"))),
                    Some(e) => e
                        .trim()
                        .parse()
                        .map_err(|_| Error::parse(offset, format!("bad exponent in `{p}`")))?,
                };
                tau = aw.mul(&tau, &aw.pow(&aw.tau(), k));
            } else {
                return Err(Error::parse(offset, format!("unknown twist component `{p}`")));
            }
            offset += part.len() + 1;
        }
        Self::new(aw, sigma, tau, t)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn sigma(&self) -> &IMat {
        &self.sigma
    }

    pub fn tau(&self) -> AffineElt {
        self.tau
    }

    pub fn is_identity(&self) -> bool {
        self.sigma == linalg::identity(self.sigma.len())
            && self.tau.u == 0
            && self.tau.lam.iter().all(|&x| x == 0)
    }

    /// δ(s_i) = s_{perm(i)}.
    pub fn perm(&self, i: usize) -> usize {
        self.perm[i]
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    /// ς applied to a finite Weyl group index.
    pub fn sigma_finite(&self, u: u16) -> u16 {
        self.sigma_w0[u as usize]
    }

    pub fn sigma_coweight(&self, lam: &[i64]) -> Vec<i64> {
        linalg::mat_vec(&self.sigma, lam)
    }

    /// ς(w) without the Ω-part.
    pub fn apply_sigma(&self, aw: &AffineWeyl, w: &AffineElt) -> AffineElt {
        aw.from_parts(&self.sigma_coweight(&aw.lambda(w)), self.sigma_finite(w.u))
    }

    /// δ(w) = τ·ς(w)·τ⁻¹.
    pub fn apply(&self, aw: &AffineWeyl, w: &AffineElt) -> AffineElt {
        let s = self.apply_sigma(aw, w);
        aw.mul(&aw.mul(&self.tau, &s), &self.tau_inv)
    }

    pub fn apply_inverse(&self, aw: &AffineWeyl, w: &AffineElt) -> AffineElt {
        let mut prev = *w;
        let mut cur = self.apply(aw, w);
        while cur != *w {
            prev = cur;
            cur = self.apply(aw, &cur);
        }
        prev
    }

    /// Ω_δ = X₊ / (ℤR∨ + (1−ς)X₊), in Smith coordinates.
    pub fn coinvariants(&self) -> &LatticeQuotient {
        &self.coinvariants
    }

    /// κ(w) ∈ Ω_δ.
    pub fn kottwitz(&self, aw: &AffineWeyl, w: &AffineElt) -> Vec<i64> {
        self.coinvariants.class(&aw.lambda(w))
    }

    /// w·δ(·) with the τ absorbed: returns wτ, the element whose action
    /// realises v ↦ w(ς(v)) up to the lattice automorphism.
    pub fn times_tau(&self, aw: &AffineWeyl, w: &AffineElt) -> AffineElt {
        aw.mul(w, &self.tau)
    }

    /// Linear part A·S of wτ·ς, as an integer matrix.
    pub fn linear_part(&self, aw: &AffineWeyl, w: &AffineElt) -> IMat {
        let wt = self.times_tau(aw, w);
        linalg::mat_mul(aw.finite_weyl().matrix(wt.u), &self.sigma)
    }
}

/// The diagram automorphism −w₀ for type-A presets, or the unique
/// nontrivial Dynkin automorphism otherwise.
fn diagram_flip(aw: &AffineWeyl) -> Result<IMat> {
    let rd = aw.root_datum();
    let r = rd.rank();
    let type_a_ambient = matches!(rd.ambient(), Ambient::SumZero(_) | Ambient::ModOnes(_))
        || rd.name().is_some_and(|n| n.starts_with("GL"));
    if type_a_ambient {
        let mut m = vec![vec![0i64; r]; r];
        for k in 0..r {
            let mut e = vec![0i64; r];
            e[k] = 1;
            let mut a = rd.to_ambient(&e);
            a.reverse();
            let a: Vec<i64> = a.iter().map(|x| -x).collect();
            let img = rd.from_ambient(&a)?;
            for i in 0..r {
                m[i][k] = img[i];
            }
        }
        return Ok(m);
    }
    let cart = rd.cartan();
    let n = cart.len();
    let perms = permutations(n);
    let auto = perms
        .into_iter()
        .filter(|p| p.iter().enumerate().any(|(i, &j)| i != j))
        .filter(|p| (0..n).all(|i| (0..n).all(|j| cart[p[i]][p[j]] == cart[i][j])))
        .collect::<Vec<_>>();
    if auto.len() != 1 {
        return Err(Error::domain(format!(
            "`flip` needs a unique nontrivial diagram automorphism, found {}",
            auto.len()
        )));
    }
    if !rd.is_semisimple() {
        return Err(Error::domain("`flip` on a non-semisimple custom datum is not supported"));
    }
    let p = &auto[0];
    let c: IMat = (0..r).map(|k| (0..n).map(|i| rd.simple_coroots()[i][k]).collect()).collect();
    let cp: IMat = (0..r).map(|k| (0..n).map(|i| rd.simple_coroots()[p[i]][k]).collect()).collect();
    let cinv = linalg::rational_inverse(&linalg::to_rational(&c))
        .ok_or_else(|| Error::internal("coroots do not form a basis"))?;
    let cpq = linalg::to_rational(&cp);
    let mut m = vec![vec![0i64; r]; r];
    for i in 0..r {
        for j in 0..r {
            let mut s = num_rational::BigRational::from_integer(0.into());
            for k in 0..r {
                s += &cpq[i][k] * &cinv[k][j];
            }
            if !s.is_integer() {
                return Err(Error::domain("diagram automorphism does not preserve the lattice"));
            }
            m[i][j] = linalg::to_i64(&s.to_integer()).ok_or_else(|| Error::domain("overflow"))?;
        }
    }
    Ok(m)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}
