//! Character tables of the finite Hecke algebras of type A₂ and C₂, with
//! determinants and trace kernels at roots of unity.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::mpoly::{self, determinant, MMat, MPoly};
use crate::error::{Error, Result};
use crate::linalg;

/// One irreducible module, given by the images of the generators T_s.
#[derive(Debug, Clone)]
pub struct Module {
    pub name: String,
    pub generators: Vec<MMat>,
}

#[derive(Debug, Clone)]
pub struct CharTable {
    pub label: String,
    /// Parameter name c(s) for each generator.
    pub params: Vec<String>,
    /// Braid orders m(s_i, s_j).
    pub braid: Vec<Vec<u32>>,
    pub rows: Vec<String>,
    pub row_words: Vec<Vec<usize>>,
    pub modules: Vec<Module>,
    pub entries: Vec<Vec<MPoly>>,
}

fn c(n: i64) -> MPoly {
    MPoly::constant(n)
}

fn v(s: &str) -> MPoly {
    MPoly::var(s)
}

fn scalar(p: MPoly) -> MMat {
    vec![vec![p]]
}

fn word_label(w: &[usize]) -> String {
    if w.is_empty() {
        "1".into()
    } else {
        format!("T_s{}", w.iter().map(|i| (i + 1).to_string()).collect::<String>())
    }
}

impl CharTable {
    fn build(
        label: &str,
        params: Vec<String>,
        braid: Vec<Vec<u32>>,
        row_words: Vec<Vec<usize>>,
        modules: Vec<Module>,
    ) -> Result<Self> {
        let mut t = CharTable {
            label: label.to_string(),
            params,
            braid,
            rows: row_words.iter().map(|w| word_label(w)).collect(),
            row_words,
            modules,
            entries: Vec::new(),
        };
        t.check_relations()?;
        t.entries = t
            .row_words
            .iter()
            .map(|w| t.modules.iter().map(|m| mpoly::trace(&t.image(m, w))).collect())
            .collect();
        Ok(t)
    }

    fn image(&self, m: &Module, word: &[usize]) -> MMat {
        let n = m.generators[0].len();
        word.iter().fold(mpoly::mat_identity(n), |acc, &s| mpoly::mat_mul(&acc, &m.generators[s]))
    }

    /// (T_s − c(s))(T_s + 1) = 0 and the braid relations, symbolically.
    pub fn check_relations(&self) -> Result<()> {
        for m in &self.modules {
            let n = m.generators[0].len();
            let id = mpoly::mat_identity(n);
            for (s, t) in m.generators.iter().enumerate() {
                let cs = v(&self.params[s]);
                let a: MMat = (0..n).map(|i| (0..n).map(|j| &t[i][j] - &(&cs * &id[i][j])).collect()).collect();
                let b: MMat = (0..n).map(|i| (0..n).map(|j| &t[i][j] + &id[i][j]).collect()).collect();
                if mpoly::mat_mul(&a, &b).iter().flatten().any(|x| !x.is_zero()) {
                    return Err(Error::internal(format!("{}: quadratic relation fails for s{}", m.name, s + 1)));
                }
            }
            for i in 0..m.generators.len() {
                for j in i + 1..m.generators.len() {
                    let k = self.braid[i][j] as usize;
                    let alt = |a: usize, b: usize| -> Vec<usize> { (0..k).map(|t| if t % 2 == 0 { a } else { b }).collect() };
                    if self.image(m, &alt(i, j)) != self.image(m, &alt(j, i)) {
                        return Err(Error::internal(format!("{}: braid relation fails", m.name)));
                    }
                }
            }
        }
        Ok(())
    }

    /// Type A₂ with one parameter `q`.
    pub fn a2() -> Result<Self> {
        let q = v("q");
        let one_dim = |name: &str, x: MPoly| Module { name: name.into(), generators: vec![scalar(x.clone()), scalar(x)] };
        let pi = Module {
            name: "pi".into(),
            generators: vec![
                vec![vec![c(-1), c(1)], vec![c(0), q.clone()]],
                vec![vec![q.clone(), c(0)], vec![q.clone(), c(-1)]],
            ],
        };
        Self::build(
            "A2",
            vec!["q".into(), "q".into()],
            vec![vec![1, 3], vec![3, 1]],
            vec![vec![0, 1], vec![0], vec![]],
            vec![one_dim("triv", q.clone()), one_dim("St", c(-1)), pi],
        )
    }

    /// Type C₂ with parameters (p1, p2) attached to s1, s2.
    pub fn c2(p1: &str, p2: &str) -> Result<Self> {
        let (a, b) = (v(p1), v(p2));
        let lin = |name: &str, x: MPoly, y: MPoly| Module { name: name.into(), generators: vec![scalar(x), scalar(y)] };
        let refl = Module {
            name: "1x1".into(),
            generators: vec![
                vec![vec![c(-1), c(0)], vec![c(1), a.clone()]],
                vec![vec![b.clone(), &a + &b], vec![c(0), c(-1)]],
            ],
        };
        Self::build(
            "C2",
            vec![p1.into(), p2.into()],
            vec![vec![1, 4], vec![4, 1]],
            vec![vec![0, 1, 0, 1], vec![0, 1], vec![0], vec![1], vec![]],
            vec![
                lin("2x0", a.clone(), b.clone()),
                lin("11x0", c(-1), b.clone()),
                lin("0x2", a.clone(), c(-1)),
                lin("0x11", c(-1), c(-1)),
                refl,
            ],
        )
    }

    pub fn preset(label: &str) -> Result<Self> {
        match label {
            "A2" => Self::a2(),
            "C2" => Self::c2("q1", "q2"),
            _ => Err(Error::domain(format!("no character table for {label}; supported: A2, C2"))),
        }
    }

    pub fn columns(&self) -> Vec<String> {
        self.modules.iter().map(|m| m.name.clone()).collect()
    }

    /// Entries with every parameter set to the same integer.
    pub fn specialize_all(&self, x: i64) -> Vec<Vec<BigInt>> {
        let at = |_: &str| BigInt::from(x);
        self.entries.iter().map(|r| r.iter().map(|e| e.eval(&at)).collect()).collect()
    }

    pub fn determinant(&self) -> MPoly {
        determinant(&self.entries)
    }

    /// The determinant with the factors (1+p), (p+p′), (1+p·p′), (1+p+p²)
    /// split off where they divide.
    pub fn determinant_factored(&self) -> mpoly::Factored {
        let mut vars: Vec<String> = self.params.clone();
        vars.sort();
        vars.dedup();
        let one = MPoly::one();
        let mut cands = Vec::new();
        for x in &vars {
            cands.push(&one + &v(x));
            cands.push(&(&one + &v(x)) + &v(x).pow(2));
        }
        for (i, x) in vars.iter().enumerate() {
            for y in &vars[i + 1..] {
                cands.push(&v(x) + &v(y));
                cands.push(&one + &(&v(x) * &v(y)));
            }
        }
        for x in &vars {
            cands.push(v(x));
        }
        self.determinant().factor_by_trial(&cands)
    }

    pub fn to_csv(&self) -> String {
        let mut out = format!("{},{}\n", self.label, self.columns().join(","));
        for (r, row) in self.rows.iter().zip(&self.entries) {
            let cells: Vec<String> = row.iter().map(|e| format!("\"{e}\"")).collect();
            out.push_str(&format!("{r},{}\n", cells.join(",")));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "label": self.label,
            "params": self.params,
            "columns": self.columns(),
            "rows": self.rows,
            "entries": self.entries.iter().map(|r| r.iter().map(|e| e.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }

    /// Basis of {v : Σ_r v_r·row_r = 0} over ℚ[t]/(m(t)), where each
    /// parameter is sent to a polynomial in t. Entries are reduced mod m.
    pub fn trace_kernel_at(&self, spec: &Specialization) -> Result<Vec<Vec<Residue>>> {
        let modulus = Arc::new(spec.modulus.clone());
        for p in &self.params {
            let img = spec.image(p, &modulus)?;
            if img.coeffs.is_empty() {
                return Err(Error::domain(format!("parameter {p} specializes to 0")));
            }
        }
        let ncols = self.entries.len();
        let mt: Vec<Vec<Residue>> = (0..self.modules.len())
            .map(|j| {
                (0..ncols)
                    .map(|r| spec.evaluate(&self.entries[r][j], &modulus))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        Ok(linalg::kernel(&mt, ncols))
    }
}

/// Parameters sent to polynomials in t, computed modulo an irreducible m(t).
#[derive(Debug, Clone)]
pub struct Specialization {
    /// m(t), ascending coefficients; must be irreducible over ℚ.
    pub modulus: Vec<BigRational>,
    pub images: Vec<(String, Vec<BigRational>)>,
}

impl Specialization {
    /// Every parameter ↦ t, with t a root of m.
    pub fn all_equal(params: &[String], modulus: &[i64]) -> Self {
        Specialization {
            modulus: modulus.iter().map(|&x| linalg::rat(x)).collect(),
            images: params.iter().map(|p| (p.clone(), vec![linalg::rat(0), linalg::rat(1)])).collect(),
        }
    }

    fn image(&self, p: &str, m: &Arc<Vec<BigRational>>) -> Result<Residue> {
        let c = self
            .images
            .iter()
            .find(|(n, _)| n == p)
            .map(|(_, c)| c.clone())
            .ok_or_else(|| Error::domain(format!("parameter {p} has no specialization")))?;
        Ok(Residue::new(c, Some(Arc::clone(m))))
    }

    fn evaluate(&self, f: &MPoly, m: &Arc<Vec<BigRational>>) -> Result<Residue> {
        let mut acc = Residue::new(Vec::new(), Some(Arc::clone(m)));
        for (mono, coeff) in f.terms() {
            let mut t = Residue::new(vec![BigRational::from_integer(coeff.clone())], Some(Arc::clone(m)));
            for (var, e) in mono.powers() {
                let x = self.image(var, m)?;
                for _ in 0..*e {
                    t = linalg::Field::mul(&t, &x);
                }
            }
            acc = linalg::Field::add(&acc, &t);
        }
        Ok(acc)
    }
}

/// An element of ℚ[t]/(m(t)). Constants may omit the modulus.
#[derive(Clone)]
pub struct Residue {
    coeffs: Vec<BigRational>,
    modulus: Option<Arc<Vec<BigRational>>>,
}

impl PartialEq for Residue {
    fn eq(&self, o: &Self) -> bool {
        self.coeffs == o.coeffs
    }
}

impl std::fmt::Debug for Residue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.display("q"))
    }
}

fn trim(mut c: Vec<BigRational>) -> Vec<BigRational> {
    while c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    c
}

fn poly_rem(a: &[BigRational], m: &[BigRational]) -> Vec<BigRational> {
    let mut r = trim(a.to_vec());
    let m = trim(m.to_vec());
    let dm = m.len() - 1;
    while r.len() > dm {
        let k = r.len() - 1 - dm;
        let f = r.last().expect("nonempty") / m.last().expect("nonempty");
        for (i, mi) in m.iter().enumerate() {
            r[k + i] = &r[k + i] - &(&f * mi);
        }
        r = trim(r);
    }
    r
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] = &c[i + j] + &(x * y);
        }
    }
    trim(c)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let mut q = vec![BigRational::zero(); r.len().saturating_sub(db).max(1)];
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let f = r.last().expect("nonempty") / b.last().expect("nonempty");
        for (i, bi) in b.iter().enumerate() {
            r[k + i] = &r[k + i] - &(&f * bi);
        }
        q[k] = f;
        r = trim(r);
    }
    (trim(q), r)
}

impl Residue {
    fn new(c: Vec<BigRational>, modulus: Option<Arc<Vec<BigRational>>>) -> Self {
        let coeffs = match &modulus {
            Some(m) => poly_rem(&c, m),
            None => trim(c),
        };
        Residue { coeffs, modulus }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn display(&self, var: &str) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (k, a) in self.coeffs.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            let sign = if a.is_negative() { "-" } else { "+" };
            let abs = a.abs();
            let body = if mono.is_empty() {
                abs.to_string()
            } else if abs.is_one() {
                mono
            } else {
                format!("{abs}*{mono}")
            };
            parts.push((sign, body));
        }
        let mut s = String::new();
        for (i, (sign, body)) in parts.into_iter().enumerate() {
            if i == 0 {
                if sign == "-" {
                    s.push('-');
                }
            } else {
                s.push_str(&format!(" {sign} "));
            }
            s.push_str(&body);
        }
        s
    }

    fn modulus_of(&self, o: &Self) -> Option<Arc<Vec<BigRational>>> {
        self.modulus.clone().or_else(|| o.modulus.clone())
    }
}

impl linalg::Field for Residue {
    fn zero() -> Self {
        Residue { coeffs: Vec::new(), modulus: None }
    }
    fn one() -> Self {
        Residue { coeffs: vec![linalg::rat(1)], modulus: None }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        let neg: Vec<BigRational> = o.coeffs.iter().map(|x| -x).collect();
        Residue::new(poly_sub(&self.coeffs, &neg), self.modulus_of(o))
    }
    fn sub(&self, o: &Self) -> Self {
        Residue::new(poly_sub(&self.coeffs, &o.coeffs), self.modulus_of(o))
    }
    fn mul(&self, o: &Self) -> Self {
        Residue::new(poly_mul(&self.coeffs, &o.coeffs), self.modulus_of(o))
    }
    fn inv(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Residue { coeffs: vec![self.coeffs[0].recip()], modulus: self.modulus.clone() };
        }
        let m = self.modulus.clone().expect("non-constant residues carry their modulus");
        // Extended Euclid: s·a + t·m = gcd, a unit since m is irreducible.
        let (mut r0, mut r1) = (m.to_vec(), self.coeffs.clone());
        let (mut s0, mut s1): (Vec<BigRational>, Vec<BigRational>) = (Vec::new(), vec![linalg::rat(1)]);
        while !r1.is_empty() {
            let (q, r) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        assert!(r0.len() == 1, "modulus must be irreducible");
        let g = r0[0].recip();
        Residue::new(s0.iter().map(|x| x * &g).collect(), Some(m))
    }
}


#[cfg(test)]
mod determinant_tests {
    use super::*;

    #[test]
    fn c2_rows_and_determinant() {
        let t = CharTable::c2("q1", "q2").unwrap();
        let row = |w: &str| -> Vec<String> {
            let i = t.rows.iter().position(|r| r == w).unwrap();
            t.entries[i].iter().map(|e| e.to_string()).collect()
        };
        assert_eq!(row("T_s12"), vec!["q1*q2", "-q2", "-q1", "1", "0"]);
        assert_eq!(row("T_s1212"), vec!["q1^2*q2^2", "q2^2", "q1^2", "1", "-2*q1*q2"]);
        assert_eq!(row("T_s1"), vec!["q1", "-1", "q1", "-1", "q1 - 1"]);
        assert_eq!(row("T_s2"), vec!["q2", "q2", "-1", "-1", "q2 - 1"]);
        let f = CharTable::c2("q0", "q1").unwrap().determinant_factored();
        assert_eq!(f.cofactor, MPoly::one());
        assert_eq!(f.unit.abs(), BigInt::one());
        let shown: Vec<String> = f.factors.iter().map(|(p, k)| format!("{p}^{k}")).collect();
        assert_eq!(shown, vec!["q0 + 1^2", "q1 + 1^2", "q0 + q1^1", "q0*q1 + 1^1"]);
    }

    #[test]
    fn a2_determinant() {
        let f = CharTable::a2().unwrap().determinant_factored();
        assert_eq!(f.to_string(), "-(q + 1)(q^2 + q + 1)");
    }
}
