//! Based reduced root data of finite type.
//!
//! The cocharacter lattice X₊ is always stored in coordinates with respect to
//! a ℤ-basis, so X₊ = ℤʳ and X* = ℤʳ with the dot product as pairing. Presets
//! remember how these coordinates sit inside the usual ambient ℤⁿ so that
//! input and output can use the familiar notation.

use std::collections::HashMap;
use std::ops::Sub;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, rat, IMat};

/// Largest supported rank of X₊.
pub const MAX_RANK: usize = 8;

const ROOT_CAP: usize = 4096;

pub type RationalCoweight = Vec<BigRational>;

/// How basis coordinates of X₊ relate to the ambient notation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Ambient {
    /// Coordinates are the ambient coordinates.
    Identity,
    /// The sum-zero sublattice of ℤⁿ, basis e_k − e_{k+1}.
    SumZero(usize),
    /// ℤⁿ/ℤ(1,…,1), represented by vectors with last coordinate 0.
    ModOnes(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root {
    /// Coordinates in X*.
    pub vec: Vec<i64>,
    /// The coroot, in X₊ coordinates.
    pub coroot: Vec<i64>,
    /// Expansion in the simple roots.
    pub coeffs: Vec<i64>,
}

impl Root {
    pub fn is_positive(&self) -> bool {
        self.coeffs.iter().any(|&c| c > 0)
    }

    pub fn height(&self) -> i64 {
        self.coeffs.iter().sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Component {
    /// Indices (0-based) of the simple roots in this component.
    pub simple: Vec<usize>,
    /// Index into `RootDatum::roots` of the highest root.
    pub highest_root: usize,
}

/// Which lattice to build from a bare Cartan matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeSpec {
    SimplyConnected,
    Adjoint,
    /// Rows are a ℤ-basis of X₊ in fundamental-coweight coordinates.
    Basis(IMat),
}

#[derive(Debug, Clone)]
pub struct RootDatum {
    name: Option<String>,
    rank: usize,
    ambient: Ambient,
    cartan: IMat,
    simple_roots: Vec<Vec<i64>>,
    simple_coroots: Vec<Vec<i64>>,
    roots: Vec<Root>,
    root_index: HashMap<Vec<i64>, usize>,
    positive: Vec<usize>,
    components: Vec<Component>,
    two_rho: Vec<i64>,
}

impl PartialEq for RootDatum {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank
            && self.simple_roots == other.simple_roots
            && self.simple_coroots == other.simple_coroots
    }
}

impl RootDatum {
    /// Builds a root datum from simple roots and coroots given in basis coordinates.
    pub fn from_simple(
        name: Option<String>,
        ambient: Ambient,
        simple_roots: Vec<Vec<i64>>,
        simple_coroots: Vec<Vec<i64>>,
    ) -> Result<Self> {
        let rank = simple_roots
            .first()
            .map(|r| r.len())
            .or_else(|| simple_coroots.first().map(|c| c.len()))
            .unwrap_or_else(|| ambient_rank(ambient, 0));
        Self::build(name, ambient, rank, simple_roots, simple_coroots)
    }

    /// The Levi datum (X*, X₊, R_J, R∨_J, J) for `j` a set of 0-based simple indices.
    pub fn levi(&self, j: &[usize]) -> Result<Self> {
        if j.iter().any(|&i| i >= self.semisimple_rank()) {
            return Err(Error::domain("Levi subset refers to a nonexistent simple root"));
        }
        let mut j = j.to_vec();
        j.sort_unstable();
        j.dedup();
        Self::build(
            None,
            self.ambient,
            self.rank,
            j.iter().map(|&i| self.simple_roots[i].clone()).collect(),
            j.iter().map(|&i| self.simple_coroots[i].clone()).collect(),
        )
    }

    fn build(
        name: Option<String>,
        ambient: Ambient,
        rank: usize,
        simple_roots: Vec<Vec<i64>>,
        simple_coroots: Vec<Vec<i64>>,
    ) -> Result<Self> {
        let m = simple_roots.len();
        if m != simple_coroots.len() {
            return Err(Error::domain("number of simple roots and coroots differ"));
        }
        if rank == 0 || rank > MAX_RANK {
            return Err(Error::domain(format!("lattice rank must be between 1 and {MAX_RANK}")));
        }
        if simple_roots.iter().chain(&simple_coroots).any(|v| v.len() != rank) {
            return Err(Error::domain("simple root or coroot of wrong length"));
        }
        let cartan: IMat = (0..m)
            .map(|i| (0..m).map(|j| linalg::dot(&simple_roots[j], &simple_coroots[i])).collect())
            .collect();
        validate_cartan(&cartan)?;
        if linalg::rank(&linalg::to_rational(&simple_roots)) != m
            || linalg::rank(&linalg::to_rational(&simple_coroots)) != m
        {
            return Err(Error::domain("simple roots or coroots are linearly dependent"));
        }

        let mut roots: Vec<Root> = (0..m)
            .map(|i| Root {
                vec: simple_roots[i].clone(),
                coroot: simple_coroots[i].clone(),
                coeffs: (0..m).map(|j| i64::from(i == j)).collect(),
            })
            .collect();
        let mut root_index: HashMap<Vec<i64>, usize> =
            roots.iter().enumerate().map(|(i, r)| (r.vec.clone(), i)).collect();
        let mut next = 0;
        while next < roots.len() {
            let beta = roots[next].clone();
            next += 1;
            for i in 0..m {
                let p = linalg::dot(&beta.vec, &simple_coroots[i]);
                let q = linalg::dot(&simple_roots[i], &beta.coroot);
                let vec: Vec<i64> =
                    beta.vec.iter().zip(&simple_roots[i]).map(|(b, a)| b - p * a).collect();
                if root_index.contains_key(&vec) {
                    continue;
                }
                let coroot: Vec<i64> =
                    beta.coroot.iter().zip(&simple_coroots[i]).map(|(b, a)| b - q * a).collect();
                let mut coeffs = beta.coeffs.clone();
                coeffs[i] -= p;
                if !(coeffs.iter().all(|&c| c >= 0) || coeffs.iter().all(|&c| c <= 0)) {
                    return Err(Error::domain("reflection closure produced a root of mixed sign"));
                }
                root_index.insert(vec.clone(), roots.len());
                roots.push(Root { vec, coroot, coeffs });
                if roots.len() > ROOT_CAP {
                    return Err(Error::domain("Cartan matrix is not of finite type"));
                }
            }
        }
        let positive: Vec<usize> = (0..roots.len()).filter(|&i| roots[i].is_positive()).collect();

        let components = dynkin_components(&cartan)
            .into_iter()
            .map(|simple| {
                let highest_root = positive
                    .iter()
                    .copied()
                    .filter(|&r| {
                        (0..m).all(|j| roots[r].coeffs[j] == 0 || simple.contains(&j))
                    })
                    .max_by_key(|&r| (roots[r].height(), std::cmp::Reverse(r)))
                    .expect("component has a simple root");
                Component { simple, highest_root }
            })
            .collect();

        let mut two_rho = vec![0i64; rank];
        for &p in &positive {
            for (t, v) in two_rho.iter_mut().zip(&roots[p].vec) {
                *t += v;
            }
        }
        for c in &simple_coroots {
            if linalg::dot(&two_rho, c) != 2 {
                return Err(Error::internal("2ρ does not pair to 2 with a simple coroot"));
            }
        }
        Ok(RootDatum {
            name,
            rank,
            ambient,
            cartan,
            simple_roots,
            simple_coroots,
            roots,
            root_index,
            positive,
            components,
            two_rho,
        })
    }

    /// Builds from a Cartan matrix `a[i][j] = ⟨α_j, α_i∨⟩` and a lattice choice.
    pub fn from_cartan(cartan: &IMat, lattice: &LatticeSpec) -> Result<Self> {
        let m = cartan.len();
        if m == 0 || cartan.iter().any(|r| r.len() != m) {
            return Err(Error::domain("Cartan matrix must be square and nonempty"));
        }
        validate_cartan(cartan)?;
        let basis = match lattice {
            LatticeSpec::SimplyConnected => cartan.clone(),
            LatticeSpec::Adjoint => linalg::identity(m),
            LatticeSpec::Basis(b) => b.clone(),
        };
        if basis.len() != m || basis.iter().any(|r| r.len() != m) {
            return Err(Error::domain("lattice basis must be a square matrix of the Cartan size"));
        }
        let q = linalg::to_rational(&basis);
        let inv = linalg::rational_inverse(&q)
            .ok_or_else(|| Error::domain("lattice basis is singular"))?;
        // α_j pairs with the k-th basis vector through its j-th ω∨ coordinate.
        let simple_roots: Vec<Vec<i64>> =
            (0..m).map(|j| (0..m).map(|k| basis[k][j]).collect()).collect();
        let mut simple_coroots = Vec::with_capacity(m);
        for row in cartan {
            let mut c = Vec::with_capacity(m);
            for k in 0..m {
                let mut s = BigRational::zero();
                for j in 0..m {
                    s += rat(row[j]) * &inv[j][k];
                }
                if !s.is_integer() {
                    return Err(Error::domain("lattice does not contain the coroot lattice"));
                }
                c.push(linalg::to_i64(&s.to_integer()).ok_or_else(|| Error::domain("overflow"))?);
            }
            simple_coroots.push(c);
        }
        RootDatum::from_simple(None, Ambient::Identity, simple_roots, simple_coroots)
    }

    /// Parses preset names such as `GL3`, `SL(4)`, `PGL3`, `Sp4`, `C2`, `SO5`, `B2`, `A1`.
    pub fn preset(name: &str) -> Result<Self> {
        let key: String = name
            .chars()
            .filter(|c| !c.is_whitespace() && *c != '(' && *c != ')' && *c != '_')
            .collect::<String>()
            .to_ascii_uppercase();
        let num = |prefix: &str| -> Option<usize> {
            key.strip_prefix(prefix).and_then(|s| s.parse::<usize>().ok())
        };
        let bad = || Error::domain(format!("unknown preset `{name}`"));
        if key == "SP4" || key == "C2" {
            return Self::sp4();
        }
        if key == "SO5" || key == "B2" {
            return Self::so5();
        }
        if let Some(n) = num("PGL") {
            return Self::pgl(n);
        }
        if let Some(n) = num("GL") {
            return Self::gl(n);
        }
        if let Some(n) = num("SL") {
            return Self::sl(n);
        }
        if let Some(n) = num("A") {
            return Self::sl(n + 1);
        }
        if let Some(n) = num("S") {
            return Self::gl(n);
        }
        Err(bad())
    }

    pub fn gl(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_RANK {
            return Err(Error::domain(format!("GL{n} is outside the supported range")));
        }
        let e = |i: usize| -> Vec<i64> {
            (0..n).map(|k| i64::from(k == i) - i64::from(k == i + 1)).collect()
        };
        let simple: Vec<Vec<i64>> = (0..n - 1).map(e).collect();
        Self::build(Some(format!("GL{n}")), Ambient::Identity, n, simple.clone(), simple)
    }

    pub fn sl(n: usize) -> Result<Self> {
        if !(2..=MAX_RANK + 1).contains(&n) {
            return Err(Error::domain(format!("SL{n} is outside the supported range")));
        }
        let r = n - 1;
        let coroots: Vec<Vec<i64>> =
            (0..r).map(|i| (0..r).map(|k| i64::from(i == k)).collect()).collect();
        let cartan = type_a_cartan(r);
        let roots: Vec<Vec<i64>> = (0..r).map(|j| (0..r).map(|k| cartan[k][j]).collect()).collect();
        Self::from_simple(Some(format!("SL{n}")), Ambient::SumZero(n), roots, coroots)
    }

    pub fn pgl(n: usize) -> Result<Self> {
        if !(2..=MAX_RANK + 1).contains(&n) {
            return Err(Error::domain(format!("PGL{n} is outside the supported range")));
        }
        let r = n - 1;
        let mut roots = Vec::new();
        let mut coroots = Vec::new();
        for i in 0..r {
            let root: Vec<i64> = (0..r).map(|k| i64::from(k == i) - i64::from(k == i + 1)).collect();
            roots.push(root);
            let coroot: Vec<i64> = if i + 1 < r {
                (0..r).map(|k| i64::from(k == i) - i64::from(k == i + 1)).collect()
            } else {
                (0..r).map(|k| if k == i { 2 } else { 1 }).collect()
            };
            coroots.push(coroot);
        }
        Self::from_simple(Some(format!("PGL{n}")), Ambient::ModOnes(n), roots, coroots)
    }

    pub fn sp4() -> Result<Self> {
        Self::from_simple(
            Some("Sp4".into()),
            Ambient::Identity,
            vec![vec![1, -1], vec![0, 2]],
            vec![vec![1, -1], vec![0, 1]],
        )
    }

    pub fn so5() -> Result<Self> {
        Self::from_simple(
            Some("SO5".into()),
            Ambient::Identity,
            vec![vec![1, -1], vec![0, 1]],
            vec![vec![1, -1], vec![0, 2]],
        )
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of simple roots.
    pub fn semisimple_rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn cartan(&self) -> &IMat {
        &self.cartan
    }

    pub fn simple_roots(&self) -> &[Vec<i64>] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[Vec<i64>] {
        &self.simple_coroots
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn root_index(&self, vec: &[i64]) -> Option<usize> {
        self.root_index.get(vec).copied()
    }

    /// Indices of the positive roots.
    pub fn positive_roots(&self) -> &[usize] {
        &self.positive
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn two_rho(&self) -> &[i64] {
        &self.two_rho
    }

    pub fn pairing(&self, root: &[i64], coweight: &[i64]) -> i64 {
        linalg::dot(root, coweight)
    }

    pub fn pairing_q(&self, root: &[i64], v: &[BigRational]) -> BigRational {
        root.iter().zip(v).fold(BigRational::zero(), |acc, (a, x)| acc + rat(*a) * x)
    }

    /// ⟨2ρ, v⟩.
    pub fn two_rho_pairing(&self, v: &[BigRational]) -> BigRational {
        self.pairing_q(&self.two_rho, v)
    }

    /// s_i(v) for a rational coweight, `i` 0-based.
    pub fn reflect(&self, i: usize, v: &[BigRational]) -> RationalCoweight {
        let p = self.pairing_q(&self.simple_roots[i], v);
        v.iter()
            .zip(&self.simple_coroots[i])
            .map(|(x, c)| x - &p * rat(*c))
            .collect()
    }

    pub fn is_dominant(&self, v: &[BigRational]) -> bool {
        self.simple_roots.iter().all(|a| !self.pairing_q(a, v).is_negative())
    }

    /// Dominant element of the W₀-orbit of `v` together with a word
    /// `[i_k, …, i_1]` (1-based) such that `s_{i_k}⋯s_{i_1}(v)` is dominant.
    pub fn dominant_representative(&self, v: &[BigRational]) -> (RationalCoweight, Vec<usize>) {
        let mut cur = v.to_vec();
        let mut applied = Vec::new();
        while let Some(i) = (0..self.semisimple_rank())
            .find(|&i| self.pairing_q(&self.simple_roots[i], &cur).is_negative())
        {
            cur = self.reflect(i, &cur);
            applied.push(i + 1);
        }
        applied.reverse();
        (cur, applied)
    }

    /// Dominance order on dominant rational coweights.
    pub fn dominance_leq(&self, v: &[BigRational], w: &[BigRational]) -> Result<bool> {
        if !self.is_dominant(v) || !self.is_dominant(w) {
            return Err(Error::domain("dominance order is only defined on dominant coweights"));
        }
        let diff: Vec<BigRational> = w.iter().zip(v).map(|(a, b)| a - b).collect();
        let m = self.semisimple_rank();
        if m == 0 {
            return Ok(diff.iter().all(Zero::is_zero));
        }
        let coroot_cols: Vec<Vec<BigRational>> = (0..self.rank)
            .map(|k| (0..m).map(|i| rat(self.simple_coroots[i][k])).collect())
            .collect();
        match linalg::solve(&coroot_cols, &diff, m) {
            None => Ok(false),
            Some(c) => Ok(c.iter().all(linalg::is_nonnegative)),
        }
    }

    /// Basis coordinates to ambient coordinates.
    pub fn to_ambient<T>(&self, c: &[T]) -> Vec<T>
    where
        T: Clone + Zero + Sub<Output = T>,
    {
        match self.ambient {
            Ambient::Identity => c.to_vec(),
            Ambient::SumZero(n) => (0..n)
                .map(|k| {
                    let cur = if k < n - 1 { c[k].clone() } else { T::zero() };
                    let prev = if k > 0 { c[k - 1].clone() } else { T::zero() };
                    cur - prev
                })
                .collect(),
            Ambient::ModOnes(_) => {
                let mut v = c.to_vec();
                v.push(T::zero());
                v
            }
        }
    }

    pub fn ambient_dim(&self) -> usize {
        match self.ambient {
            Ambient::Identity => self.rank,
            Ambient::SumZero(n) | Ambient::ModOnes(n) => n,
        }
    }

    /// Ambient coordinates to basis coordinates, validating membership.
    pub fn from_ambient(&self, a: &[i64]) -> Result<Vec<i64>> {
        let q: Vec<BigRational> = a.iter().map(|&x| rat(x)).collect();
        let r = self.from_ambient_q(&q)?;
        r.iter()
            .map(|x| {
                if x.is_integer() {
                    linalg::to_i64(&x.to_integer()).ok_or_else(|| Error::domain("overflow"))
                } else {
                    Err(Error::domain("coweight is not integral"))
                }
            })
            .collect()
    }

    pub fn from_ambient_q(&self, a: &[BigRational]) -> Result<RationalCoweight> {
        if a.len() != self.ambient_dim() {
            return Err(Error::domain(format!(
                "expected {} coordinates, got {}",
                self.ambient_dim(),
                a.len()
            )));
        }
        match self.ambient {
            Ambient::Identity => Ok(a.to_vec()),
            Ambient::SumZero(n) => {
                let total: BigRational = a.iter().cloned().sum();
                if !total.is_zero() {
                    return Err(Error::domain("coordinates of an SL coweight must sum to zero"));
                }
                let mut acc = BigRational::zero();
                Ok((0..n - 1)
                    .map(|k| {
                        acc += &a[k];
                        acc.clone()
                    })
                    .collect())
            }
            Ambient::ModOnes(n) => Ok((0..n - 1).map(|k| &a[k] - &a[n - 1]).collect()),
        }
    }

    /// Ambient form of an X* vector (a functional), normalised to sum zero
    /// where the ambient functional is only defined up to (1,…,1).
    pub fn dual_to_ambient(&self, f: &[i64]) -> Vec<BigRational> {
        match self.ambient {
            Ambient::Identity => f.iter().map(|&x| rat(x)).collect(),
            Ambient::SumZero(n) => {
                let mut a = vec![BigRational::zero(); n];
                for k in (0..n - 1).rev() {
                    a[k] = rat(f[k]) + &a[k + 1];
                }
                let mean: BigRational =
                    a.iter().cloned().sum::<BigRational>() / BigRational::from_integer(BigInt::from(n));
                a.into_iter().map(|x| x - &mean).collect()
            }
            Ambient::ModOnes(_) => {
                let mut a: Vec<BigRational> = f.iter().map(|&x| rat(x)).collect();
                a.push(rat(-f.iter().sum::<i64>()));
                a
            }
        }
    }

    /// True when `K` (0-based simple-root indices) generates a finite group
    /// inside the finite Weyl group; always the case, kept for symmetry.
    pub fn is_semisimple(&self) -> bool {
        self.semisimple_rank() == self.rank
    }
}

fn ambient_rank(a: Ambient, fallback: usize) -> usize {
    match a {
        Ambient::Identity => fallback,
        Ambient::SumZero(n) | Ambient::ModOnes(n) => n - 1,
    }
}

pub fn type_a_cartan(r: usize) -> IMat {
    (0..r)
        .map(|i| {
            (0..r)
                .map(|j| {
                    if i == j {
                        2
                    } else if i.abs_diff(j) == 1 {
                        -1
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect()
}

fn validate_cartan(a: &IMat) -> Result<()> {
    let m = a.len();
    for i in 0..m {
        if a[i].len() != m {
            return Err(Error::domain("Cartan matrix is not square"));
        }
        if a[i][i] != 2 {
            return Err(Error::domain("Cartan matrix must have 2 on the diagonal"));
        }
        for j in 0..m {
            if i != j && (a[i][j] > 0 || ((a[i][j] == 0) != (a[j][i] == 0))) {
                return Err(Error::domain("not a generalized Cartan matrix"));
            }
        }
    }
    Ok(())
}

fn dynkin_components(a: &IMat) -> Vec<Vec<usize>> {
    let m = a.len();
    let mut seen = vec![false; m];
    let mut out = Vec::new();
    for s in 0..m {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut k = 0;
        while k < comp.len() {
            let i = comp[k];
            k += 1;
            for j in 0..m {
                if !seen[j] && a[i][j] != 0 {
                    seen[j] = true;
                    comp.push(j);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat_frac;

    fn q(v: &[i64]) -> RationalCoweight {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn gl3_basic_data() {
        let rd = RootDatum::preset("GL(3)").unwrap();
        assert_eq!(rd.rank(), 3);
        assert_eq!(rd.roots().len(), 6);
        assert_eq!(rd.two_rho(), &[2, 0, -2]);
    }

    #[test]
    fn sl_and_pgl_ambient_round_trip() {
        let sl = RootDatum::sl(3).unwrap();
        let c = sl.from_ambient(&[1, 0, -1]).unwrap();
        assert_eq!(sl.to_ambient(&c), vec![1, 0, -1]);
        assert!(sl.from_ambient(&[1, 0, 0]).is_err());
        let pgl = RootDatum::pgl(3).unwrap();
        let c = pgl.from_ambient(&[2, 1, 1]).unwrap();
        assert_eq!(pgl.to_ambient(&c), vec![1, 0, 0]);
        assert_eq!(sl.dual_to_ambient(sl.two_rho()), q(&[2, 0, -2]));
        assert_eq!(pgl.dual_to_ambient(pgl.two_rho()), q(&[2, 0, -2]));
    }

    #[test]
    fn rank_two_root_counts() {
        assert_eq!(RootDatum::sp4().unwrap().roots().len(), 8);
        assert_eq!(RootDatum::so5().unwrap().roots().len(), 8);
        assert_eq!(RootDatum::sl(4).unwrap().roots().len(), 12);
        let g2 = RootDatum::from_cartan(&vec![vec![2, -1], vec![-3, 2]], &LatticeSpec::SimplyConnected)
            .unwrap();
        assert_eq!(g2.roots().len(), 12);
    }

    #[test]
    fn rejects_affine_cartan() {
        let a = vec![vec![2, -2], vec![-2, 2]];
        assert!(matches!(
            RootDatum::from_cartan(&a, &LatticeSpec::Adjoint),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn rejects_lattice_missing_coroots() {
        // α∨ = 2ω∨ is not a multiple of 4ω∨
        let a = vec![vec![2]];
        assert!(RootDatum::from_cartan(&a, &LatticeSpec::Basis(vec![vec![4]])).is_err());
        assert!(RootDatum::from_cartan(&a, &LatticeSpec::Basis(vec![vec![2]])).is_ok());
    }

    #[test]
    fn dominant_representative_examples() {
        let rd = RootDatum::gl(3).unwrap();
        let (v, w) = rd.dominant_representative(&q(&[0, 1, 0]));
        assert_eq!(v, q(&[1, 0, 0]));
        assert_eq!(w, vec![1]);
        let third = rat_frac(1, 3);
        let c = vec![third.clone(), third.clone(), third];
        assert_eq!(rd.dominant_representative(&c), (c.clone(), vec![]));
    }

    #[test]
    fn dominance_examples() {
        let rd = RootDatum::gl(3).unwrap();
        let third = rat_frac(1, 3);
        let c = vec![third.clone(), third.clone(), third];
        assert!(rd.dominance_leq(&c, &q(&[1, 0, 0])).unwrap());
        let half = rat_frac(1, 2);
        let h = vec![half.clone(), half, rat(0)];
        assert!(!rd.dominance_leq(&q(&[1, 0, 0]), &h).unwrap());
        assert!(rd.dominance_leq(&h, &q(&[1, 0, 0])).unwrap());
        assert!(rd.dominance_leq(&q(&[0, 1, 0]), &q(&[1, 0, 0])).is_err());
    }
}
