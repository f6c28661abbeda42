//! Reduction to minimal length through the ≈-class and strict descents.

use std::collections::{HashMap, VecDeque};

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::Conjugacy;
use crate::affine_weyl::{AffineElt, AffineWeyl};
use crate::error::{Error, Result};

/// One conjugation applied to an element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    /// y ↦ s·y·δ(s).
    Simple(usize),
    /// y ↦ g·y·δ(g)⁻¹ with ℓ(g) = 0.
    Omega(AffineElt),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub conjugator: Move,
    pub element: AffineElt,
    pub length: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace {
    pub start: AffineElt,
    pub steps: Vec<TraceStep>,
    pub terminal: AffineElt,
}

impl ReductionTrace {
    /// Number of steps that lowered the length.
    pub fn descents(&self) -> usize {
        let mut prev = None;
        let mut n = 0;
        for st in &self.steps {
            if prev.is_some_and(|p| st.length < p) {
                n += 1;
            }
            prev = Some(st.length);
        }
        n
    }

    pub fn to_json(&self, aw: &AffineWeyl) -> Value {
        let mv = |m: &Move| match m {
            Move::Simple(s) => json!({ "simple": s }),
            Move::Omega(g) => json!({ "omega": aw.format(g) }),
        };
        json!({
            "start": { "element": aw.format(&self.start), "length": aw.length(&self.start) },
            "steps": self.steps.iter().map(|s| json!({
                "conjugator": mv(&s.conjugator),
                "element": aw.format(&s.element),
                "length": s.length,
            })).collect::<Vec<_>>(),
            "terminal": { "element": aw.format(&self.terminal), "length": aw.length(&self.terminal) },
        })
    }

    /// A chain graph, one node per element labelled by its length.
    pub fn to_dot(&self, aw: &AffineWeyl) -> String {
        let mut out = String::from("digraph reduction {\n  node [shape=box];\n");
        let node = |i: usize, w: &AffineElt| {
            format!("  n{i} [label=\"{}\\nℓ={}\"];\n", aw.format(w), aw.length(w))
        };
        out.push_str(&node(0, &self.start));
        for (i, st) in self.steps.iter().enumerate() {
            out.push_str(&node(i + 1, &st.element));
            let lbl = match st.conjugator {
                Move::Simple(s) => format!("s{s}"),
                Move::Omega(g) => aw.format(&g),
            };
            out.push_str(&format!("  n{i} -> n{} [label=\"{lbl}\"];\n", i + 1));
        }
        out.push_str("}\n");
        out
    }
}

/// A strict descent reachable inside the ≈-class.
#[derive(Debug, Clone)]
pub struct Descent {
    /// Moves from the start to `at`, each with its result.
    pub path: Vec<(Move, AffineElt)>,
    pub at: AffineElt,
    pub simple: usize,
    /// s·at·δ(s), of length ℓ(at) − 2.
    pub result: AffineElt,
}

type Parents = HashMap<AffineElt, (Move, AffineElt)>;

enum Tie<'a> {
    First,
    Random(&'a mut ChaCha8Rng),
}

impl Conjugacy {
    fn approx_neighbours(&self, start: &AffineElt, y: &AffineElt) -> Vec<(Move, AffineElt)> {
        let aw = self.group();
        let l = aw.length(y);
        let mut out = Vec::new();
        for s in 0..aw.num_generators() {
            let z = self.conjugate_simple(s, y);
            if aw.length(&z) == l {
                out.push((Move::Simple(s), z));
            }
        }
        for g in &self.omega_moves {
            let z = self.conjugate(g, y);
            if self.omega_window_ok(start, &z) {
                out.push((Move::Omega(*g), z));
            }
        }
        out
    }

    fn strict_descents(&self, y: &AffineElt) -> Vec<(usize, AffineElt)> {
        let aw = self.group();
        let l = aw.length(y);
        (0..aw.num_generators())
            .filter_map(|s| {
                let z = self.conjugate_simple(s, y);
                (aw.length(&z) < l).then_some((s, z))
            })
            .collect()
    }

    /// Breadth-first search of the ≈-class of w. Returns the class in
    /// discovery order together with the parent links.
    fn bfs(
        &self,
        w: &AffineElt,
        stop_at_descent: bool,
    ) -> Result<(Vec<AffineElt>, Parents, bool)> {
        let mut order = vec![*w];
        let mut parent: Parents = HashMap::new();
        let mut queue = VecDeque::from([*w]);
        let mut seen = std::collections::HashSet::from([*w]);
        while let Some(y) = queue.pop_front() {
            if stop_at_descent && !self.strict_descents(&y).is_empty() {
                return Ok((order, parent, true));
            }
            for (m, z) in self.approx_neighbours(w, &y) {
                if seen.insert(z) {
                    parent.insert(z, (m, y));
                    order.push(z);
                    queue.push_back(z);
                    if seen.len() > self.budget().frontier {
                        return Err(Error::resource(format!(
                            "≈-class exceeds the frontier cap of {}",
                            self.budget().frontier
                        )));
                    }
                }
            }
        }
        Ok((order, parent, false))
    }

    fn path_to(
        parent: &Parents,
        start: &AffineElt,
        y: &AffineElt,
    ) -> Vec<(Move, AffineElt)> {
        let mut path = Vec::new();
        let mut cur = *y;
        while cur != *start {
            let (m, p) = parent[&cur];
            path.push((m, cur));
            cur = p;
        }
        path.reverse();
        path
    }

    fn find_descent_with(&self, w: &AffineElt, tie: Tie<'_>) -> Result<Option<Descent>> {
        match tie {
            Tie::First => {
                let (order, parent, found) = self.bfs(w, true)?;
                if !found {
                    return Ok(None);
                }
                let at = *order
                    .iter()
                    .find(|y| !self.strict_descents(y).is_empty())
                    .expect("descent located by the search");
                let (simple, result) = self.strict_descents(&at)[0];
                Ok(Some(Descent { path: Self::path_to(&parent, w, &at), at, simple, result }))
            }
            Tie::Random(rng) => {
                let (order, parent, _) = self.bfs(w, false)?;
                let all: Vec<(AffineElt, usize, AffineElt)> = order
                    .iter()
                    .flat_map(|y| self.strict_descents(y).into_iter().map(move |(s, z)| (*y, s, z)))
                    .collect();
                if all.is_empty() {
                    return Ok(None);
                }
                let (at, simple, result) = all[rng.gen_range(0..all.len())];
                Ok(Some(Descent { path: Self::path_to(&parent, w, &at), at, simple, result }))
            }
        }
    }

    /// The first strict descent reachable from w through ≈-moves, if any.
    pub fn find_descent(&self, w: &AffineElt) -> Result<Option<Descent>> {
        self.find_descent_with(w, Tie::First)
    }

    /// A uniformly chosen strict descent over the whole ≈-class.
    pub fn find_descent_random(&self, w: &AffineElt, rng: &mut ChaCha8Rng) -> Result<Option<Descent>> {
        self.find_descent_with(w, Tie::Random(rng))
    }

    /// Every strict descent available anywhere in the ≈-class of w, in
    /// discovery order.
    pub fn all_descents(&self, w: &AffineElt) -> Result<Vec<Descent>> {
        let (order, parent, _) = self.bfs(w, false)?;
        Ok(order
            .iter()
            .flat_map(|y| {
                let path = Self::path_to(&parent, w, y);
                self.strict_descents(y)
                    .into_iter()
                    .map(move |(simple, result)| Descent { path: path.clone(), at: *y, simple, result })
            })
            .collect())
    }

    /// The full ≈-class of w (Ω-moves restricted to a window when Ω is infinite).
    pub fn approx_class(&self, w: &AffineElt) -> Result<Vec<AffineElt>> {
        Ok(self.bfs(w, false)?.0)
    }

    /// Whether w has minimal length in its δ-conjugacy class.
    pub fn is_minimal(&self, w: &AffineElt) -> Result<bool> {
        Ok(self.find_descent(w)?.is_none())
    }

    fn reduce_with(&self, w: &AffineElt, mut rng: Option<&mut ChaCha8Rng>) -> Result<ReductionTrace> {
        let aw = self.group();
        aw.check(w)?;
        let mut steps = Vec::new();
        let mut cur = *w;
        loop {
            let d = match rng.as_deref_mut() {
                Some(r) => self.find_descent_random(&cur, r)?,
                None => self.find_descent(&cur)?,
            };
            let Some(d) = d else { break };
            for (m, e) in d.path {
                steps.push(TraceStep { conjugator: m, element: e, length: aw.length(&e) });
            }
            steps.push(TraceStep {
                conjugator: super::Move::Simple(d.simple),
                element: d.result,
                length: aw.length(&d.result),
            });
            cur = d.result;
        }
        Ok(ReductionTrace { start: *w, steps, terminal: cur })
    }

    /// Conjugates w down to a minimal-length element of its class.
    pub fn reduce_to_minimal(&self, w: &AffineElt) -> Result<ReductionTrace> {
        self.reduce_with(w, None)
    }

    /// As `reduce_to_minimal`, breaking ties at random.
    pub fn reduce_to_minimal_seeded(&self, w: &AffineElt, rng: &mut ChaCha8Rng) -> Result<ReductionTrace> {
        self.reduce_with(w, Some(rng))
    }
}
