//! Exact linear algebra: integer Smith normal form, lattice quotients and
//! Gaussian elimination over an arbitrary exact field.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type IMat = Vec<Vec<i64>>;

pub fn identity(n: usize) -> IMat {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

pub fn mat_mul(a: &IMat, b: &IMat) -> IMat {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &IMat, v: &[i64]) -> Vec<i64> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

pub fn transpose(a: &IMat) -> IMat {
    if a.is_empty() {
        return Vec::new();
    }
    (0..a[0].len()).map(|j| a.iter().map(|row| row[j]).collect()).collect()
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `u * a * v == diag` with `u`, `v` unimodular.
#[derive(Debug, Clone)]
pub struct Smith {
    pub u: IMat,
    pub v: IMat,
    pub diag: Vec<i64>,
}

pub fn smith(a: &IMat, rows: usize, cols: usize) -> Smith {
    let mut d: IMat = if rows == 0 { Vec::new() } else { a.clone() };
    let mut u = identity(rows);
    let mut v = identity(cols);
    let n = rows.min(cols);
    for t in 0..n {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if d[i][j] != 0
                        && best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            d.swap(t, pi);
            u.swap(t, pi);
            for row in d.iter_mut() {
                row.swap(t, pj);
            }
            for row in v.iter_mut() {
                row.swap(t, pj);
            }
            let p = d[t][t];
            let mut dirty = false;
            for i in t + 1..rows {
                let q = d[i][t] / p;
                if q != 0 {
                    for j in 0..cols {
                        d[i][j] -= q * d[t][j];
                    }
                    for j in 0..rows {
                        u[i][j] -= q * u[t][j];
                    }
                }
                dirty |= d[i][t] != 0;
            }
            for j in t + 1..cols {
                let q = d[t][j] / p;
                if q != 0 {
                    for i in 0..rows {
                        d[i][j] -= q * d[i][t];
                    }
                    for i in 0..cols {
                        v[i][j] -= q * v[i][t];
                    }
                }
                dirty |= d[t][j] != 0;
            }
            if dirty {
                continue;
            }
            let bad = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| d[i][j] % p != 0));
            match bad {
                Some(i) => {
                    for j in 0..cols {
                        d[t][j] += d[i][j];
                    }
                    for j in 0..rows {
                        u[t][j] += u[i][j];
                    }
                }
                None => break,
            }
        }
        if t < rows && t < cols && d[t][t] < 0 {
            for j in 0..cols {
                d[t][j] = -d[t][j];
            }
            for j in 0..rows {
                u[t][j] = -u[t][j];
            }
        }
    }
    let diag = (0..n).map(|i| d[i][i]).collect();
    Smith { u, v, diag }
}

/// The abelian group ℤⁿ / L for a sublattice L given by generators.
///
/// Classes are reported in Smith coordinates: one entry per nontrivial
/// invariant factor, reduced modulo the factor, free entries unreduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeQuotient {
    dim: usize,
    u: IMat,
    u_inv: IMat,
    /// Invariant factor per Smith row: 0 free, 1 trivial, d > 1 cyclic.
    factors: Vec<i64>,
    comps: Vec<usize>,
}

impl LatticeQuotient {
    pub fn new(dim: usize, generators: &[Vec<i64>]) -> Self {
        let k = generators.len();
        let m: IMat = (0..dim).map(|i| generators.iter().map(|g| g[i]).collect()).collect();
        let s = smith(&m, dim, k);
        let mut factors = vec![0i64; dim];
        for (i, &d) in s.diag.iter().enumerate() {
            factors[i] = d;
        }
        let mut u = s.u;
        let comps: Vec<usize> = (0..dim).filter(|&i| factors[i] != 1).collect();
        for &i in &comps {
            if factors[i] == 0 {
                if let Some(j) = (0..dim).find(|&j| u[i][j] != 0) {
                    if u[i][j] < 0 {
                        for x in u[i].iter_mut() {
                            *x = -*x;
                        }
                    }
                }
            }
        }
        let u_inv = integer_inverse(&u).expect("Smith transform is unimodular");
        LatticeQuotient { dim, u, u_inv, factors, comps }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Orders of the nontrivial components; 0 marks a free ℤ summand.
    pub fn orders(&self) -> Vec<i64> {
        self.comps.iter().map(|&i| self.factors[i]).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn class(&self, v: &[i64]) -> Vec<i64> {
        let y = mat_vec(&self.u, v);
        self.comps
            .iter()
            .map(|&i| {
                let d = self.factors[i];
                if d == 0 {
                    y[i]
                } else {
                    y[i].rem_euclid(d)
                }
            })
            .collect()
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.class(v).iter().all(|&c| c == 0)
    }

    pub fn lift(&self, class: &[i64]) -> Vec<i64> {
        let mut y = vec![0i64; self.dim];
        for (c, &i) in class.iter().zip(&self.comps) {
            y[i] = *c;
        }
        mat_vec(&self.u_inv, &y)
    }
}

/// Inverse of an integer matrix when it exists over ℤ.
pub fn integer_inverse(a: &IMat) -> Option<IMat> {
    let n = a.len();
    let q = to_rational(a);
    let inv = rational_inverse(&q)?;
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            if !inv[i][j].is_integer() {
                return None;
            }
            out[i][j] = to_i64(&inv[i][j].to_integer())?;
        }
    }
    Some(out)
}

pub fn to_i64(b: &BigInt) -> Option<i64> {
    i64::try_from(b).ok()
}

pub fn to_rational(a: &IMat) -> Vec<Vec<BigRational>> {
    a.iter()
        .map(|row| row.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect()
}

pub fn rational_inverse(a: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = a.len();
    let mut aug: Vec<Vec<BigRational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { rat(1) } else { rat(0) }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Minimal field interface used by the elimination routines.
pub trait Field: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn inv(&self) -> Self;
}

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn inv(&self) -> Self {
        self.recip()
    }
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref<F: Field>(m: &mut [Vec<F>]) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv();
        for j in 0..cols {
            m[r][j] = m[r][j].mul(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = m[r][j].mul(&f);
                    m[i][j] = m[i][j].sub(&t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &[Vec<F>]) -> usize {
    let mut c = m.to_vec();
    rref(&mut c).len()
}

/// Basis of the right kernel {x : m x = 0}, one vector per free column.
pub fn kernel<F: Field>(m: &[Vec<F>], cols: usize) -> Vec<Vec<F>> {
    let mut r = m.to_vec();
    let pivots = rref(&mut r);
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut x = vec![F::zero(); cols];
        x[free] = F::one();
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = F::zero().sub(&r[row][free]);
        }
        out.push(x);
    }
    out
}

/// One solution of m x = b, if the system is consistent.
pub fn solve<F: Field>(m: &[Vec<F>], b: &[F], cols: usize) -> Option<Vec<F>> {
    let mut aug: Vec<Vec<F>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![F::zero(); cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[row][cols].clone();
    }
    Some(x)
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_nonnegative(x: &BigRational) -> bool {
    !x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smith_reconstructs_diagonal() {
        let a = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let s = smith(&a, 3, 3);
        let d = mat_mul(&mat_mul(&s.u, &a), &s.v);
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert_eq!(d[i][j], 0);
                }
            }
        }
        assert_eq!(s.diag, vec![2, 6, 12]);
    }

    #[test]
    fn quotient_by_coroots_of_pgl3() {
        // coroot lattice of PGL3 in normal-form coordinates
        let q = LatticeQuotient::new(2, &[vec![1, -1], vec![1, 2]]);
        assert_eq!(q.orders(), vec![3]);
        assert!(q.contains(&[2, 1]));
        assert!(!q.contains(&[1, 0]));
        let c = q.class(&[1, 0]);
        assert!(q.contains(&{
            let l = q.lift(&c);
            vec![l[0] - 1, l[1]]
        }));
    }

    #[test]
    fn free_quotient_sign_normalised() {
        let q = LatticeQuotient::new(2, &[vec![1, -1]]);
        assert_eq!(q.orders(), vec![0]);
        assert_eq!(q.class(&[1, 0]), vec![1]);
        assert_eq!(q.class(&[0, 1]), vec![1]);
    }

    #[test]
    fn kernel_and_solve() {
        let m = to_rational(&vec![vec![1, 1, 0], vec![0, 0, 1]]);
        let k = kernel(&m, 3);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], vec![rat(-1), rat(1), rat(0)]);
        let x = solve(&m, &[rat(2), rat(3)], 3).unwrap();
        assert_eq!(x, vec![rat(2), rat(0), rat(3)]);
        assert!(solve(&to_rational(&vec![vec![0, 0]]), &[rat(1)], 2).is_none());
    }
}
