use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use affine_cocenter::affine_weyl::parse_element;
use affine_cocenter::conjugacy::QuadLabel;
use affine_cocenter::hecke::{rigid_basis, CharTable, Cocenter, Degree, Specialization};
use affine_cocenter::linalg::{rat, rat_frac};
use affine_cocenter::strata::{Strata, TreeStrategy, Verdict};
use affine_cocenter::{AffineElt, AffineWeyl, Budget, Conjugacy, Twist};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = std::result::Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn timed(limit: Duration, start: Instant) -> Check {
    let spent = start.elapsed();
    ensure!(spent <= limit, "took {spent:.2?}, limit {limit:?}");
    Ok(format!("{spent:.2?}"))
}

fn gl3_table() -> Check {
    let start = Instant::now();
    let c = ok(Conjugacy::untwisted("GL3"))?;
    let aw = c.group();
    let keys = ok(c.classes_up_to(10, 2, |_| true))?;
    let h = rat_frac(1, 2);
    let third = rat_frac(1, 3);
    let two_thirds = rat_frac(2, 3);
    let rows: Vec<(Vec<BigRational>, Vec<&str>)> = vec![
        (vec![rat(1), rat(0), rat(-1)], vec!["(∅, t[1,0,-1], ∅, {1})"]),
        (
            vec![rat(0), rat(0), rat(-1)],
            vec!["({1}, t[0,0,-1], ∅, {1})", "({1}, t[0,0,-1], {s1}, {s1})"],
        ),
        (vec![h.clone(), h.clone(), rat(-1)], vec!["({1}, t[1,0,-1]*s1, ∅, {1})"]),
        (
            vec![rat(1), rat(0), rat(0)],
            vec!["({2}, t[1,0,0], ∅, {1})", "({2}, t[1,0,0], {s2}, {s2})"],
        ),
        (vec![rat(1), h.clone(), h], vec!["({2}, t[1,1,0]*s2, ∅, {1})"]),
        (
            vec![rat(0), rat(0), rat(0)],
            vec!["({1, 2}, 1, ∅, {1})", "({1, 2}, 1, {s1}, {s1})", "({1, 2}, 1, {s1, s2}, {s1s2, s2s1})"],
        ),
        (vec![third.clone(), third.clone(), third], vec!["({1, 2}, t[1,0,0]*s1*s2, ∅, {1})"]),
        (
            vec![two_thirds.clone(), two_thirds.clone(), two_thirds],
            vec!["({1, 2}, t[1,1,0]*s2*s1, ∅, {1})"],
        ),
    ];
    let mut counts = Vec::new();
    for (amb, expected) in rows {
        let nu = ok(aw.root_datum().from_ambient_q(&amb))?;
        let mut shown = Vec::new();
        for k in keys.iter().filter(|k| k.invariant.newton == nu) {
            shown.push(ok(c.standard_quadruple(&k.rep))?.display(aw));
        }
        shown.sort();
        let mut want: Vec<String> = expected.iter().map(|s| s.to_string()).collect();
        want.sort();
        ensure!(shown == want, "ν = {amb:?}: got {shown:?}, expected {want:?}");
        counts.push(shown.len().to_string());
    }
    timed(Duration::from_secs(60), start).map(|t| format!("counts {} in {t}", counts.join("/")))
}

fn sl3_basic_classes() -> Check {
    let c = ok(Conjugacy::untwisted("SL3"))?;
    let aw = c.group();
    let keys = ok(c.classes_up_to(6, 0, |inv| inv.newton.iter().all(|x| *x == rat(0))))?;
    ensure!(keys.len() == 5, "{} classes with ν = 0", keys.len());
    let mut ks = BTreeSet::new();
    for k in &keys {
        ks.insert(ok(c.standard_quadruple(&k.rep))?.k);
    }
    use QuadLabel::{Affine, Finite};
    let pairs: BTreeSet<Vec<QuadLabel>> = [
        vec![Finite(1), Finite(2)],
        vec![Finite(1), Affine(0)],
        vec![Finite(2), Affine(0)],
    ]
    .into_iter()
    .collect();
    ensure!(ks.contains(&vec![]), "no class with K = ∅");
    ensure!(ks.iter().filter(|k| k.len() == 1).count() == 1, "K sets {ks:?}");
    ensure!(pairs.iter().all(|p| ks.contains(p)), "K sets {ks:?}");
    let reps: Vec<_> = (0..3).map(|i| ok(c.class_key(&aw.generator(i)))).collect::<Result<_, _>>()?;
    ensure!(reps.iter().all(|r| *r == reps[0]), "s0, s1, s2 are not all conjugate");
    Ok("5 classes; s0, s1, s2 conjugate".into())
}

fn sl4_dimension() -> Check {
    let start = Instant::now();
    let st = ok(Strata::untwisted("SL4"))?;
    let aw = st.group();
    let w = ok(parse_element(aw, "s1 s2 s0 s1 s2 s3 s2 s1 s0 s1"))?;
    let b = st.identity_class();
    let r = ok(st.iwahori_stratum_dim(&w, &b))?;
    ensure!(r.dimension == Degree::Finite(8), "dim {}", r.dimension);
    ensure!(r.irr_max_count == BigInt::from(1), "leading coefficient {}", r.irr_max_count);
    ensure!(r.pieces == vec![Degree::Finite(8), Degree::Finite(7)], "pieces {:?}", r.pieces);
    let tree = ok(st.reduction_tree(&w, &b, TreeStrategy::Compact))?;
    let nodes = tree.nodes();
    ensure!(nodes[0].dim == Degree::Finite(8), "root dim {}", nodes[0].dim);
    let mut finite: Vec<usize> = nodes[1..].iter().filter_map(|n| n.dim.finite()).collect();
    finite.sort_unstable();
    ensure!(finite == vec![3, 4, 5, 6, 6, 7], "node dims {finite:?}");
    let empty = nodes.iter().filter(|n| n.dim == Degree::NegInfinity).count();
    ensure!(empty == 4, "{empty} empty nodes");
    ensure!(nodes.iter().filter(|n| n.dim == Degree::NegInfinity).all(|n| n.is_leaf()), "empty inner node");
    timed(Duration::from_secs(10), start).map(|t| format!("dim 8, pieces [8, 7], tree ok in {t}"))
}

fn random_word(aw: &AffineWeyl, rng: &mut ChaCha8Rng, max_len: usize) -> AffineElt {
    let n = rng.gen_range(0..=max_len);
    let word: Vec<usize> = (0..n).map(|_| rng.gen_range(0..aw.num_generators())).collect();
    aw.word_elt(&word)
}

fn class_polynomials() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut done = 0;
    for (name, count) in [("SL2", 67), ("SL3", 67), ("Sp4", 66)] {
        let base = ok(Cocenter::untwisted(name))?;
        let aw = base.group();
        let fresh = || -> Result<Cocenter, String> {
            let conj = base.conjugacy();
            Ok(Cocenter::new(Arc::new(Conjugacy::new(conj.group_arc(), conj.twist().clone()))))
        };
        for _ in 0..count {
            let w = random_word(aw, &mut rng, 12);
            let label = aw.format(&w);
            let mut r1 = ChaCha8Rng::seed_from_u64(rng.gen());
            let mut r2 = ChaCha8Rng::seed_from_u64(rng.gen());
            let a = ok(fresh()?.class_poly_seeded(&w, &mut r1))?;
            let b = ok(fresh()?.class_poly_seeded(&w, &mut r2))?;
            ensure!(a == b, "{name} {label}: tie-breaking changes the class polynomials");
            ensure!(a.sum_at_one() == BigInt::from(1), "{name} {label}: Σ F(1) = {}", a.sum_at_one());
            let at_one: Vec<_> = a.entries.iter().filter(|(_, f)| f.at_one() != BigInt::from(0)).collect();
            ensure!(at_one.len() == 1, "{name} {label}: {} classes survive at q = 1", at_one.len());
            let inv = base.conjugacy().newton_kottwitz(&w);
            ensure!(at_one[0].0.invariant == inv, "{name} {label}: q = 1 class has the wrong invariant");
            for f in a.entries.values() {
                ensure!(f.is_q_minus_one_positive(), "{name} {label}: {f} has a negative (q-1)-coefficient");
            }
            done += 1;
        }
    }
    Ok(format!("{done} elements"))
}

fn gl_weights(n: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![0i64]];
    for _ in 1..n {
        out = out
            .into_iter()
            .flat_map(|v| (v[0]..=bound).map(move |x| [vec![x], v.clone()].concat()))
            .collect();
    }
    out
}

fn special_parahoric() -> Check {
    let mut groups: Vec<(&str, Vec<Vec<i64>>)> = vec![("GL2", gl_weights(2, 6)), ("GL3", gl_weights(3, 3))];
    let mut sl3 = Vec::new();
    for a in -3i64..=3 {
        for c in -3i64..=3 {
            let b = -a - c;
            if a >= b && b >= c {
                sl3.push(vec![a, b, c]);
            }
        }
    }
    groups.push(("SL3", sl3));
    let mut pairs = 0;
    let mut outside = 0;
    for (name, weights) in groups {
        let st = ok(Strata::untwisted(name))?;
        let aw = st.group();
        let conj = st.conjugacy();
        let k = st.special_k();
        for mu in weights {
            let t = aw.translation(&ok(aw.root_datum().from_ambient(&mu))?);
            let two_rho = ok(conj.two_rho_newton(&conj.newton_kottwitz(&t)))?;
            if two_rho > 6 {
                continue;
            }
            let bg = ok(st.bg_mu(&mu))?;
            for b in &bg {
                let closed = ok(st.special_parahoric_dim(&mu, b))?;
                let r = ok(st.parahoric_stratum_dim(&t, &k, b))?;
                ensure!(closed.nonempty, "{name} μ={mu:?}: b in B(G, μ) reported empty");
                ensure!(
                    closed.dim_kmuk.map(|d| d as usize) == r.dimension.finite(),
                    "{name} μ={mu:?} b={b:?}: closed form {:?} vs class polynomials {}",
                    closed.dim_kmuk,
                    r.dimension
                );
                ensure!(
                    closed.dim_adlv.map(|d| d as usize) == r.adlv_dimension.finite(),
                    "{name} μ={mu:?} b={b:?}: ADLV {:?} vs {}",
                    closed.dim_adlv,
                    r.adlv_dimension
                );
                pairs += 1;
            }
            let window = conj.kottwitz(&t).iter().map(|x| x.abs()).max().unwrap_or(0) + 1;
            for (inv, _) in ok(conj.straight_classes(two_rho as usize + 2, window))? {
                let r = ok(st.parahoric_stratum_dim(&t, &k, &inv))?;
                let mazur = ok(st.mazur_nonempty(&mu, &inv))?;
                ensure!(mazur == bg.contains(&inv), "{name} μ={mu:?}: B(G, μ) misses {inv:?}");
                ensure!(!r.is_empty() == mazur, "{name} μ={mu:?} b={inv:?}: emptiness disagrees with Mazur");
                if !mazur {
                    outside += 1;
                }
            }
        }
    }
    Ok(format!("{pairs} (μ, b) pairs, {outside} straight classes outside B(G, μ)"))
}

fn basic_virtual_dimension() -> Check {
    let mut checked = 0;
    let mut equal = 0;
    for name in ["SL2", "SL3"] {
        let st = ok(Strata::untwisted(name))?;
        let aw = st.group();
        let b = st.identity_class();
        for w in ok(aw.enumerate_by_length(10, 0, &Budget::default()))? {
            let r = ok(st.iwahori_stratum_dim(&w, &b))?;
            let eta = ok(st.eta_virtual(&w, &b))?;
            let Some(d) = r.adlv_dimension.finite() else { continue };
            let d = rat(d as i64);
            ensure!(d <= eta.virtual_dim, "{name} {}: dim {d} > d_w(b) = {}", aw.format(&w), eta.virtual_dim);
            checked += 1;
            if eta.shrunken {
                let (nonempty, verdict) = ok(st.basic_nonempty(&w, &b))?;
                if nonempty && verdict == Verdict::Criterion {
                    ensure!(d == eta.virtual_dim, "{name} {}: dim {d} ≠ d_w(b) = {}", aw.format(&w), eta.virtual_dim);
                    equal += 1;
                }
            }
        }
    }
    ensure!(equal > 0, "no shrunken element passed the criterion");
    Ok(format!("{checked} nonempty strata, {equal} with equality"))
}

fn character_tables() -> Check {
    let a2 = ok(CharTable::a2())?;
    let row = |t: &CharTable, w: &str| -> Result<Vec<String>, String> {
        let i = t.rows.iter().position(|r| r == w).ok_or(format!("no row {w}"))?;
        Ok(t.entries[i].iter().map(|e| e.to_string()).collect())
    };
    ensure!(row(&a2, "T_s12")? == ["q^2", "1", "-q"], "A2 T_s12 {:?}", row(&a2, "T_s12")?);
    ensure!(row(&a2, "T_s1")? == ["q", "-1", "q - 1"], "A2 T_s1 {:?}", row(&a2, "T_s1")?);
    ensure!(row(&a2, "1")? == ["1", "1", "2"], "A2 1 {:?}", row(&a2, "1")?);
    let c2 = ok(CharTable::c2("q1", "q2"))?;
    let want: [(&str, [&str; 5]); 4] = [
        ("T_s12", ["q1*q2", "-q2", "-q1", "1", "0"]),
        ("T_s1212", ["q1^2*q2^2", "q2^2", "q1^2", "1", "-2*q1*q2"]),
        ("T_s1", ["q1", "-1", "q1", "-1", "q1 - 1"]),
        ("T_s2", ["q2", "q2", "-1", "-1", "q2 - 1"]),
    ];
    for (w, entries) in want {
        ensure!(row(&c2, w)? == entries, "C2 {w} {:?}", row(&c2, w)?);
    }
    let f = ok(CharTable::c2("q0", "q1"))?.determinant_factored();
    let shown: Vec<String> = f.factors.iter().map(|(p, k)| format!("{p}^{k}")).collect();
    ensure!(
        shown == ["q0 + 1^2", "q1 + 1^2", "q0 + q1^1", "q0*q1 + 1^1"] && f.cofactor.to_string() == "1",
        "C2 determinant {shown:?} · {}",
        f.cofactor
    );
    ensure!(f.unit == BigInt::from(1) || f.unit == BigInt::from(-1), "unit {}", f.unit);
    let det = a2.determinant_factored().to_string();
    ensure!(det == "-(q + 1)(q^2 + q + 1)", "A2 determinant {det}");
    let kernel = |modulus: &[i64]| -> Result<Vec<Vec<String>>, String> {
        let k = ok(a2.trace_kernel_at(&Specialization::all_equal(&a2.params, modulus)))?;
        Ok(k.iter().map(|v| v.iter().map(|r| r.display("q")).collect()).collect())
    };
    ensure!(kernel(&[1, 1])? == [["0", "1", "1"]], "kernel at q = -1: {:?}", kernel(&[1, 1])?);
    ensure!(kernel(&[1, 1, 1])? == [["q + 1", "q + 2", "1"]], "kernel at Φ3: {:?}", kernel(&[1, 1, 1])?);
    Ok("A2 and C2 tables, determinants and kernels".into())
}

fn rigid_bases() -> Check {
    let labels = |name: &str| -> Result<Vec<String>, String> {
        let c = ok(Conjugacy::untwisted(name))?;
        let mut l: Vec<String> = ok(rigid_basis(&c, 0))?.iter().map(|k| k.label(c.group())).collect();
        l.sort();
        Ok(l)
    };
    let sl3 = labels("SL3")?;
    ensure!(sl3 == ["1", "s0*s1", "s0*s2", "s1", "s1*s2"], "SL3 {sl3:?}");
    let pgl3 = labels("PGL3")?;
    ensure!(pgl3 == ["1", "s1", "s1*s2", "tau", "tau^2"], "PGL3 {pgl3:?}");
    Ok(format!("SL3 {sl3:?}, PGL3 {pgl3:?}"))
}

fn gl4(twist: &str) -> Result<Strata, String> {
    let aw = Arc::new(ok(AffineWeyl::preset("GL4"))?);
    let tw = ok(Twist::parse(&aw, twist))?;
    Ok(Strata::new(Arc::new(Cocenter::new(Arc::new(Conjugacy::new(aw, tw))))))
}

fn edges_from_words(aw: &AffineWeyl, list: &[(&str, &str)]) -> BTreeSet<(String, String)> {
    let lab = |x: &str| {
        let word: Vec<usize> = x.chars().filter_map(|c| c.to_digit(10)).map(|d| d as usize).collect();
        aw.format(&aw.word_elt(&word))
    };
    list.iter().map(|(a, b)| (lab(a), lab(b))).collect()
}

fn closure_posets() -> Check {
    let mut compared = 0;
    for name in ["SL2", "SL3", "GL3"] {
        let st = ok(Strata::untwisted(name))?;
        let invs: Vec<_> = ok(st.conjugacy().straight_classes(4, 1))?.into_iter().map(|(i, _)| i).collect();
        for a in &invs {
            for b in &invs {
                let geometric = ok(st.straight_leq_bruhat(a, b))?;
                ensure!(geometric == ok(st.invariant_leq(a, b))?, "{name}: {a:?} vs {b:?}");
                compared += 1;
            }
        }
    }
    let solid: Vec<(&str, &str)> = vec![
        ("e", "1"), ("e", "2"), ("23", "123"),
        ("1", "12"), ("1", "21"), ("2", "12"), ("2", "21"), ("2", "23"),
        ("12", "123"), ("12", "121"), ("21", "121"), ("21", "213"), ("23", "213"),
        ("121", "1213"), ("213", "1213"), ("123", "1213"),
        ("121", "2132"), ("213", "2132"),
        ("2132", "12132"), ("1213", "12132"),
    ];
    for (twist, extra) in [("", None), ("id", Some(("123", "2132"))), ("flip", Some(("1", "23")))] {
        let st = gl4(if twist.is_empty() { "id" } else { twist })?;
        let scope = ok(st.finite_min_coset_reps(&[3]))?;
        let p = if twist.is_empty() { ok(st.bruhat_poset(&scope))? } else { ok(st.k_sigma_poset(&scope, &[3]))? };
        let mut want = solid.clone();
        want.extend(extra);
        let got: BTreeSet<_> = p.hasse_labels().into_iter().collect();
        ensure!(got == edges_from_words(st.group(), &want), "S4 poset ({twist:?}) has edges {got:?}");
    }
    Ok(format!("{compared} straight pairs; S4 Bruhat, id and flip diagrams"))
}

fn admissible_sets() -> Check {
    let mut ks = 0;
    for (name, mu) in [("GL2", vec![1, 0]), ("GL3", vec![1, 0, 0])] {
        let st = ok(Strata::untwisted(name))?;
        let aw = st.group();
        let n = aw.num_generators();
        if name == "GL2" {
            let adm = ok(st.admissible_sets(&mu, &[]))?.adm;
            ensure!(adm.len() == 3, "|Adm(1,0)| = {}", adm.len());
        }
        for m in 0u32..(1 << n) {
            let k: Vec<usize> = (0..n).filter(|&i| m & (1 << i) != 0).collect();
            if !aw.is_finite_subset(&k) {
                continue;
            }
            let sets = ok(st.admissible_sets(&mu, &k))?;
            ensure!(sets.ekor_identity_holds(|w| aw.is_min_left_coset(w, &k)), "{name} K={k:?}");
            ks += 1;
        }
    }
    Ok(format!("|Adm| = 3 for GL2; identity on {ks} parahorics"))
}

#[test]
fn acceptance() {
    type Criterion = (&'static str, fn() -> Check);
    let criteria: [Criterion; 10] = [
        ("GL3 conjugacy classes and standard quadruples", gl3_table),
        ("SL3 classes with zero Newton point", sl3_basic_classes),
        ("SL4 stratum dimension and reduction tree", sl4_dimension),
        ("class polynomials: tie-breaking, q = 1, (q-1)-positivity", class_polynomials),
        ("special parahoric dimensions and Mazur nonemptiness", special_parahoric),
        ("basic loci bounded by the virtual dimension", basic_virtual_dimension),
        ("finite Hecke character tables", character_tables),
        ("rigid cocenter bases", rigid_bases),
        ("closure posets", closure_posets),
        ("admissible sets and the EKOR identity", admissible_sets),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {}. {name}: {detail}", i + 1),
            Err(reason) => {
                println!("FAIL {}. {name}: {reason}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
