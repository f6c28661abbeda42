//! The finite Weyl group W₀ as a table of integral matrices on X₊.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::{self, IMat};
use crate::root_datum::RootDatum;

const W0_CAP: usize = 50_000;
const TABLE_CAP: usize = 1_500;

#[derive(Debug, Clone)]
pub struct FiniteWeyl {
    mats: Vec<IMat>,
    index: HashMap<IMat, u16>,
    mult: Option<Vec<u16>>,
    inv: Vec<u16>,
    simple: Vec<u16>,
    root_perm: Vec<Vec<u16>>,
    words: Vec<Vec<usize>>,
}

impl FiniteWeyl {
    pub fn new(rd: &RootDatum) -> Result<Self> {
        let r = rd.rank();
        let m = rd.semisimple_rank();
        let gens: Vec<IMat> = (0..m)
            .map(|i| {
                let a = &rd.simple_roots()[i];
                let c = &rd.simple_coroots()[i];
                (0..r)
                    .map(|k| (0..r).map(|l| i64::from(k == l) - c[k] * a[l]).collect())
                    .collect()
            })
            .collect();
        let mut mats = vec![linalg::identity(r)];
        let mut words: Vec<Vec<usize>> = vec![Vec::new()];
        let mut index: HashMap<IMat, u16> = HashMap::new();
        index.insert(mats[0].clone(), 0);
        let mut k = 0;
        while k < mats.len() {
            for (i, g) in gens.iter().enumerate() {
                let p = linalg::mat_mul(&mats[k], g);
                if !index.contains_key(&p) {
                    if mats.len() >= W0_CAP {
                        return Err(Error::resource("finite Weyl group too large"));
                    }
                    index.insert(p.clone(), mats.len() as u16);
                    let mut w = words[k].clone();
                    w.push(i + 1);
                    words.push(w);
                    mats.push(p);
                }
            }
            k += 1;
        }
        let n = mats.len();
        let simple: Vec<u16> = gens.iter().map(|g| index[g]).collect();
        let ident = linalg::identity(r);
        let mut inv = vec![0u16; n];
        for a in 0..n {
            if let Some(b) = linalg::integer_inverse(&mats[a]) {
                inv[a] = index[&b];
            }
            debug_assert_eq!(linalg::mat_mul(&mats[a], &mats[inv[a] as usize]), ident);
        }
        let mult = if n <= TABLE_CAP {
            let mut t = vec![0u16; n * n];
            for a in 0..n {
                for b in 0..n {
                    t[a * n + b] = index[&linalg::mat_mul(&mats[a], &mats[b])];
                }
            }
            Some(t)
        } else {
            None
        };
        let roots = rd.roots();
        let root_perm = (0..n)
            .map(|u| {
                let mt = linalg::transpose(&mats[inv[u] as usize]);
                roots
                    .iter()
                    .map(|b| {
                        let img = linalg::mat_vec(&mt, &b.vec);
                        rd.root_index(&img).expect("W₀ permutes the roots") as u16
                    })
                    .collect()
            })
            .collect();
        Ok(FiniteWeyl { mats, index, mult, inv, simple, root_perm, words })
    }

    pub fn order(&self) -> usize {
        self.mats.len()
    }

    pub fn matrix(&self, u: u16) -> &IMat {
        &self.mats[u as usize]
    }

    pub fn lookup(&self, m: &IMat) -> Option<u16> {
        self.index.get(m).copied()
    }

    pub fn mul(&self, a: u16, b: u16) -> u16 {
        match &self.mult {
            Some(t) => t[a as usize * self.mats.len() + b as usize],
            None => self.index[&linalg::mat_mul(&self.mats[a as usize], &self.mats[b as usize])],
        }
    }

    pub fn inv(&self, a: u16) -> u16 {
        self.inv[a as usize]
    }

    /// The simple reflection s_i, `i` 0-based.
    pub fn simple(&self, i: usize) -> u16 {
        self.simple[i]
    }

    /// Index of u·β for root index β.
    pub fn act_root(&self, u: u16, beta: usize) -> usize {
        self.root_perm[u as usize][beta] as usize
    }

    /// A reduced word (1-based simple indices) for u.
    pub fn word(&self, u: u16) -> &[usize] {
        &self.words[u as usize]
    }

    pub fn length(&self, u: u16) -> usize {
        self.words[u as usize].len()
    }

    pub fn act(&self, u: u16, v: &[i64]) -> Vec<i64> {
        linalg::mat_vec(&self.mats[u as usize], v)
    }
}
