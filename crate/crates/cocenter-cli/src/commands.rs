use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::sync::Arc;

use affine_cocenter::affine_weyl::parse_element;
use affine_cocenter::hecke::{CharTable, Cocenter, Specialization};
use affine_cocenter::strata::{Strata, TreeNode, TreeStrategy};
use affine_cocenter::{AffineElt, AffineWeyl, Budget, ConjInvariant, Conjugacy, Error, GenKind, Result, Twist};
use serde_json::{json, Value};

use crate::spec::GroupSpec;

/// What a verb produces; `main` picks the channels the flags ask for.
#[derive(Debug, Default)]
pub struct Rendered {
    pub text: String,
    pub json: Value,
    pub dot: Option<String>,
    pub csv: Option<String>,
}

pub struct Session {
    pub strata: Strata,
}

impl Session {
    pub fn open(group: &str, twist: Option<&str>, budget: Budget) -> Result<Self> {
        let spec = GroupSpec::from_arg(group)?;
        let aw = Arc::new(spec.build()?);
        let tw = Twist::parse(&aw, twist.or(spec.twist.as_deref()).unwrap_or("id"))?;
        let conj = Conjugacy::with_budget(aw, tw, budget);
        Ok(Session { strata: Strata::new(Arc::new(Cocenter::new(Arc::new(conj)))) })
    }

    fn aw(&self) -> &AffineWeyl {
        self.strata.group()
    }

    fn conj(&self) -> &Conjugacy {
        self.strata.conjugacy()
    }

    pub fn element(&self, text: &str) -> Result<AffineElt> {
        parse_element(self.aw(), text)
    }

    /// `identity` or an element expression whose class is taken.
    pub fn class(&self, text: &str) -> Result<ConjInvariant> {
        if text.trim() == "identity" {
            return Ok(self.strata.identity_class());
        }
        let w = self.element(text)?;
        Ok(self.conj().newton_kottwitz(&w))
    }

    fn newton_string(&self, inv: &ConjInvariant) -> String {
        let nu = self.aw().root_datum().to_ambient(&inv.newton);
        format!("({})", nu.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
    }

    pub fn describe(&self) -> Result<Rendered> {
        let aw = self.aw();
        let rd = aw.root_datum();
        let gens: Vec<Value> = (0..aw.num_generators())
            .map(|i| {
                let kind = match aw.generator_kind(i) {
                    GenKind::Affine(c) => format!("affine({c})"),
                    GenKind::Finite(j) => format!("finite({})", j + 1),
                };
                json!({ "index": i, "kind": kind })
            })
            .collect();
        let omega: Vec<String> = aw
            .omega_group()
            .orders()
            .iter()
            .map(|&d| if d == 0 { "Z".to_string() } else { format!("Z/{d}") })
            .collect();
        let tw = self.conj().twist();
        let json = json!({
            "name": rd.name(),
            "rank": rd.rank(),
            "semisimple_rank": rd.semisimple_rank(),
            "cartan": rd.cartan(),
            "simple_roots": rd.simple_roots(),
            "simple_coroots": rd.simple_coroots(),
            "two_rho": rd.two_rho(),
            "roots": rd.roots().len(),
            "generators": gens,
            "omega": omega,
            "twist": { "label": tw.label(), "permutation": tw.permutation() },
        });
        let mut text = String::new();
        let _ = writeln!(text, "group      {}", rd.name().unwrap_or("(from Cartan matrix)"));
        let _ = writeln!(text, "rank       {} (semisimple {})", rd.rank(), rd.semisimple_rank());
        let _ = writeln!(text, "roots      {}", rd.roots().len());
        let _ = writeln!(text, "2rho       {:?}", rd.two_rho());
        let _ = writeln!(text, "generators s0..s{}", aw.num_generators() - 1);
        let _ = writeln!(
            text,
            "Omega      {}",
            if omega.is_empty() { "trivial".to_string() } else { omega.join(" x ") }
        );
        let _ = writeln!(text, "twist      {} {:?}", tw.label(), tw.permutation());
        Ok(Rendered { text, json, ..Default::default() })
    }

    pub fn length(&self, w: &str) -> Result<Rendered> {
        let aw = self.aw();
        let conj = self.conj();
        let w = self.element(w)?;
        let (word, tau) = aw.reduced_word(&w);
        let inv = conj.newton_kottwitz(&w);
        let straight = conj.is_straight(&w)?;
        let json = json!({
            "w": aw.format(&w),
            "length": aw.length(&w),
            "reduced_word": word,
            "omega": aw.format(&tau),
            "invariant": inv.to_json(aw.root_datum()),
            "straight": straight,
        });
        let text = format!(
            "{}\nlength {}\nnewton {} kottwitz {:?}\nstraight {}\n",
            aw.format(&w),
            aw.length(&w),
            self.newton_string(&inv),
            inv.kottwitz,
            straight
        );
        Ok(Rendered { text, json, ..Default::default() })
    }

    pub fn reduce(&self, w: &str, b: &str, strategy: TreeStrategy, trace: bool) -> Result<Rendered> {
        let aw = self.aw();
        let w = self.element(w)?;
        if trace {
            let t = self.conj().reduce_to_minimal(&w)?;
            let mut text = String::new();
            let _ = writeln!(text, "{}  l={}", aw.format(&t.start), aw.length(&t.start));
            for st in &t.steps {
                let _ = writeln!(text, "{}  l={}", aw.format(&st.element), st.length);
            }
            return Ok(Rendered { text, json: t.to_json(aw), dot: Some(t.to_dot(aw)), csv: None });
        }
        let b = self.class(b)?;
        let tree = self.strata.reduction_tree(&w, &b, strategy)?;
        let mut text = String::new();
        fn walk(s: &Session, n: &TreeNode, depth: usize, out: &mut String) {
            let _ = writeln!(out, "{}{}  {}, {}", "  ".repeat(depth), s.aw().format(&n.element), n.length, n.dim);
            for c in &n.children {
                walk(s, c, depth + 1, out);
            }
        }
        walk(self, &tree.root, 0, &mut text);
        Ok(Rendered { text, json: tree.to_json(aw), dot: Some(tree.to_dot(aw)), csv: None })
    }

    pub fn classpoly(&self, w: &str) -> Result<Rendered> {
        let aw = self.aw();
        let w = self.element(w)?;
        let d = self.strata.cocenter().class_poly(&w)?;
        let mut text = String::new();
        let mut csv = String::from("rep,min_length,newton,kottwitz,poly\n");
        for (k, p) in &d.entries {
            let nu = self.newton_string(&k.invariant);
            let _ = writeln!(
                text,
                "{:<24} l={:<3} nu={} kappa={:?}  {}",
                aw.format(&k.rep),
                k.min_length,
                nu,
                k.invariant.kottwitz,
                p
            );
            let _ = writeln!(
                csv,
                "{},{},\"{}\",\"{:?}\",\"{}\"",
                aw.format(&k.rep),
                k.min_length,
                nu,
                k.invariant.kottwitz,
                p
            );
        }
        let json = json!({ "w": aw.format(&w), "length": aw.length(&w), "classes": d.to_json(aw) });
        Ok(Rendered { text, json, dot: None, csv: Some(csv) })
    }

    pub fn dim(&self, w: &str, b: &str, k: &[usize]) -> Result<Rendered> {
        let aw = self.aw();
        let w = self.element(w)?;
        let b = self.class(b)?;
        let (json, rep) = if k.is_empty() {
            (self.strata.report_json(&w, &b)?, self.strata.iwahori_stratum_dim(&w, &b)?)
        } else {
            let r = self.strata.parahoric_stratum_dim(&w, k, &b)?;
            let mut v = r.to_json();
            let obj = v.as_object_mut().expect("object");
            obj.insert("w".into(), json!(aw.format(&w)));
            obj.insert("K".into(), json!(k));
            obj.insert("b".into(), b.to_json(aw.root_datum()));
            (v, r)
        };
        let mut text = format!("w      {}\nb      nu={} kappa={:?}\n", aw.format(&w), self.newton_string(&b), b.kottwitz);
        if rep.is_empty() {
            text.push_str("empty\n");
        } else {
            let _ = writeln!(text, "dim    {}", rep.dimension);
            let _ = writeln!(text, "irreducible components of max dim {}", rep.irr_max_count);
            let _ = writeln!(text, "adlv dim {}", rep.adlv_dimension);
            if !rep.pieces.is_empty() {
                let p: Vec<String> = rep.pieces.iter().map(|d| d.to_string()).collect();
                let _ = writeln!(text, "pieces of the first reduction step: dims {}", p.join(", "));
            }
        }
        let _ = writeln!(text, "class polynomial {}", rep.polynomial);
        Ok(Rendered { text, json, ..Default::default() })
    }

    pub fn adm(&self, mu: &[i64], k: &[usize]) -> Result<Rendered> {
        let aw = self.aw();
        let a = self.strata.admissible_sets(mu, k)?;
        let ekor: BTreeSet<AffineElt> = a.ekor.iter().copied().collect();
        let mut text = format!("|Adm(mu)| = {}\n", a.adm.len());
        let mut csv = String::from("element,length,ekor\n");
        for w in &a.adm {
            let _ = writeln!(text, "  {:<28} l={}{}", aw.format(w), aw.length(w), if ekor.contains(w) { "  *" } else { "" });
            let _ = writeln!(csv, "{},{},{}", aw.format(w), aw.length(w), ekor.contains(w));
        }
        if !k.is_empty() {
            let _ = writeln!(text, "double cosets in Adm(mu)^K: {}", a.double_cosets.len());
            let _ = writeln!(text, "EKOR index set (marked *): {}", a.ekor.len());
        }
        Ok(Rendered { text, json: a.to_json(aw), dot: None, csv: Some(csv) })
    }

    pub fn bgmu(&self, mu: &[i64]) -> Result<Rendered> {
        let rd = self.aw().root_datum();
        let invs = self.strata.bg_mu(mu)?;
        let mut text = format!("{} classes\n", invs.len());
        let mut csv = String::from("newton,kottwitz,defect,basic\n");
        let mut rows = Vec::new();
        for inv in &invs {
            let def = self.strata.defect(inv)?;
            let basic = inv.is_basic(rd);
            let nu = self.newton_string(inv);
            let _ = writeln!(text, "  nu={nu} kappa={:?} def={def}{}", inv.kottwitz, if basic { " basic" } else { "" });
            let _ = writeln!(csv, "\"{nu}\",\"{:?}\",{def},{basic}", inv.kottwitz);
            let mut v = inv.to_json(rd);
            v["defect"] = json!(def);
            v["basic"] = json!(basic);
            rows.push(v);
        }
        Ok(Rendered { text, json: json!({ "mu": mu, "classes": rows }), dot: None, csv: Some(csv) })
    }

    pub fn quadruple(&self, w: &str, other: Option<&str>) -> Result<Rendered> {
        let aw = self.aw();
        let conj = self.conj();
        let quad = |t: &str| -> Result<_> {
            let w = self.element(t)?;
            let min = conj.reduce_to_minimal(&w)?.terminal;
            Ok((min, conj.standard_quadruple(&min)?))
        };
        let (min, q) = quad(w)?;
        let mut text = format!("minimal {}\nquadruple {}\n", aw.format(&min), q.display(aw));
        let mut json = json!({ "minimal": aw.format(&min), "quadruple": q.to_json(aw) });
        if let Some(o) = other {
            let (min2, q2) = quad(o)?;
            let d = conj.quadruples_equivalent(&q, &q2);
            let _ = writeln!(text, "other minimal {}\nother quadruple {}\nequivalent {:?}", aw.format(&min2), q2.display(aw), d);
            json["other"] = json!({ "minimal": aw.format(&min2), "quadruple": q2.to_json(aw) });
            json["equivalent"] = json!(d);
        }
        Ok(Rendered { text, json, ..Default::default() })
    }

    pub fn poset(&self, kind: &str, k: &[usize], max_len: Option<usize>, mu: Option<&[i64]>) -> Result<Rendered> {
        let aw = self.aw();
        let p = match kind {
            "bruhat" | "ksigma" => {
                let scope: Vec<AffineElt> = match max_len {
                    None => self.strata.finite_min_coset_reps(k)?,
                    Some(l) => {
                        aw.check_finite_subset(k)?;
                        aw.enumerate_by_length(l, 0, self.conj().budget())?
                            .into_iter()
                            .filter(|w| aw.is_min_left_coset(w, k))
                            .collect()
                    }
                };
                if kind == "bruhat" {
                    self.strata.bruhat_poset(&scope)?
                } else {
                    self.strata.k_sigma_poset(&scope, k)?
                }
            }
            "straight" => {
                let classes = self.conj().straight_classes(max_len.unwrap_or(4), 0)?;
                let invs: Vec<ConjInvariant> = classes.into_iter().map(|(i, _)| i).collect();
                self.strata.straight_class_poset(&invs)?
            }
            "newton" => {
                let mu = mu.ok_or_else(|| Error::parse(0, "`--kind newton` needs `--mu`"))?;
                self.strata.newton_closure_poset(mu)?
            }
            other => return Err(Error::parse(0, format!("unknown poset kind `{other}`"))),
        };
        let mut text = format!("{} nodes\n", p.len());
        let mut csv = String::from("lower,upper\n");
        for (a, b) in p.hasse_labels() {
            let _ = writeln!(text, "  {a} < {b}");
            let _ = writeln!(csv, "\"{a}\",\"{b}\"");
        }
        Ok(Rendered { text, json: p.to_json(), dot: Some(p.to_dot()), csv: Some(csv) })
    }
}

/// Table labels, with a few root-datum names accepted as aliases.
pub fn chartable(label: &str, params: Option<&[String]>, kernel: Option<&str>) -> Result<Rendered> {
    let key = label.trim().to_ascii_uppercase();
    let t = match key.as_str() {
        "A2" | "SL3" | "GL3" | "PGL3" => CharTable::a2()?,
        "C2" | "B2" | "SP4" | "SO5" => match params {
            Some([a, b]) => CharTable::c2(a, b)?,
            Some(_) => return Err(Error::parse(0, "C2 takes exactly two parameter names")),
            None => CharTable::preset("C2")?,
        },
        _ => return Err(Error::domain(format!("no character table for {label}; supported: A2, C2"))),
    };
    let det = t.determinant();
    let factored = t.determinant_factored();
    let mut text = String::new();
    let cols = t.columns();
    let _ = writeln!(text, "{:<10}{}", t.label, cols.iter().map(|c| format!("{c:<22}")).collect::<String>());
    for (r, row) in t.rows.iter().zip(&t.entries) {
        let _ = writeln!(text, "{:<10}{}", r, row.iter().map(|e| format!("{:<22}", e.to_string())).collect::<String>());
    }
    let _ = writeln!(text, "det = {det}");
    let _ = writeln!(text, "    = {factored}");
    let mut json = t.to_json();
    json["determinant"] = json!(det.to_string());
    json["determinant_factored"] = json!(factored.to_string());
    if let Some(kspec) = kernel {
        let modulus: Vec<i64> = match kspec.trim() {
            "-1" | "q=-1" => vec![1, 1],
            "phi3" | "Phi3" => vec![1, 1, 1],
            other => return Err(Error::parse(0, format!("unknown kernel specialization `{other}`; use -1 or phi3"))),
        };
        let spec = Specialization::all_equal(&t.params, &modulus);
        let ker = t.trace_kernel_at(&spec)?;
        let vecs: Vec<Vec<String>> = ker.iter().map(|v| v.iter().map(|x| x.display("q")).collect()).collect();
        let _ = writeln!(text, "trace kernel at {kspec} (coordinates {}):", t.rows.join(", "));
        for v in &vecs {
            let _ = writeln!(text, "  [{}]", v.join(", "));
        }
        json["kernel"] = json!({ "at": kspec, "vectors": vecs });
    }
    Ok(Rendered { text, json, dot: None, csv: Some(t.to_csv()) })
}

/// Comma-separated integers, as used by `--mu` and `--k`.
pub fn int_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut pos = 0;
    for part in text.split(',') {
        let v = part
            .trim()
            .parse::<T>()
            .map_err(|_| Error::parse(pos, format!("bad {what} entry `{}`", part.trim())))?;
        out.push(v);
        pos += part.len() + 1;
    }
    Ok(out)
}
