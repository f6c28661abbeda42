//! The binary reduction tree for Ĭ ẇ Ĭ ∩ [b]: each step replaces w by
//! s·w′ (open part, left) and s·w′·δ(s) (closed part, right) for some w′ ≈ w.

use std::collections::HashMap;

use serde_json::{json, Value};

use super::Strata;
use crate::affine_weyl::{compact_label, AffineElt, AffineWeyl};
use crate::conjugacy::ConjInvariant;
use crate::error::Result;
use crate::hecke::Degree;

/// How the descent at each node is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TreeStrategy {
    /// The descent giving the fewest nodes overall; ties go to the first
    /// descent in ≈-search order.
    #[default]
    Compact,
    /// The first descent found by the ≈-search.
    FirstDescent,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeNode {
    pub element: AffineElt,
    pub length: usize,
    pub dim: Degree,
    /// The element w′ ≈ w at which the descent happens.
    pub at: AffineElt,
    pub simple: Option<usize>,
    pub children: Vec<TreeNode>,
}

impl TreeNode {
    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// Nodes in pre-order, left before right.
    pub fn preorder(&self) -> Vec<&TreeNode> {
        let mut out = vec![self];
        for c in &self.children {
            out.extend(c.preorder());
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTree {
    pub b: ConjInvariant,
    pub root: TreeNode,
}

fn label(aw: &AffineWeyl, w: &AffineElt) -> String {
    compact_label(aw, w).unwrap_or_else(|| aw.format(w))
}

impl ReductionTree {
    pub fn nodes(&self) -> Vec<&TreeNode> {
        self.root.preorder()
    }

    pub fn to_json(&self, aw: &AffineWeyl) -> Value {
        fn node(aw: &AffineWeyl, n: &TreeNode) -> Value {
            json!({
                "w": aw.format(&n.element),
                "label": label(aw, &n.element),
                "length": n.length,
                "dim": n.dim,
                "at": aw.format(&n.at),
                "s": n.simple,
                "children": n.children.iter().map(|c| node(aw, c)).collect::<Vec<_>>(),
            })
        }
        json!({ "b": self.b.to_json(aw.root_datum()), "root": node(aw, &self.root) })
    }

    /// DOT with one box per node labelled "word \n ℓ, dim".
    pub fn to_dot(&self, aw: &AffineWeyl) -> String {
        let mut out = String::from("digraph reduction {\n  node [shape=box];\n");
        let mut next = 0usize;
        fn walk(aw: &AffineWeyl, n: &TreeNode, next: &mut usize, out: &mut String) -> usize {
            let id = *next;
            *next += 1;
            out.push_str(&format!(
                "  n{id} [label=\"{}\\n{}, {}\"];\n",
                label(aw, &n.element),
                n.length,
                n.dim
            ));
            for (k, c) in n.children.iter().enumerate() {
                let cid = walk(aw, c, next, out);
                let style = if k == 0 { "open" } else { "closed" };
                out.push_str(&format!("  n{id} -> n{cid} [label=\"{style}\"];\n"));
            }
            id
        }
        walk(aw, &self.root, &mut next, &mut out);
        out.push_str("}\n");
        out
    }
}

type Choice = Option<(AffineElt, usize, AffineElt)>;

impl Strata {
    /// Expands the reduction until nodes are empty or of minimal length.
    pub fn reduction_tree(
        &self,
        w: &AffineElt,
        b: &ConjInvariant,
        strategy: TreeStrategy,
    ) -> Result<ReductionTree> {
        self.query(w, &[], b)?;
        let mut memo: HashMap<AffineElt, (usize, Choice)> = HashMap::new();
        Ok(ReductionTree { b: b.clone(), root: self.tree_node(w, b, strategy, &mut memo)? })
    }

    /// Whether Ĭ ẇ Ĭ lies in a δ-stable parahoric, i.e. the δ-support of w
    /// generates a finite group.
    pub fn is_spherical(&self, w: &AffineElt) -> Result<bool> {
        let aw = self.group();
        let (word, tau) = aw.reduced_word(w);
        let closure = self.conjugacy().stable_closure(&tau, &word)?;
        Ok(aw.is_finite_subset(&closure))
    }

    fn is_tree_leaf(&self, w: &AffineElt, b: &ConjInvariant) -> Result<bool> {
        Ok(self.f_wb(w, b)?.is_zero() || self.is_spherical(w)?)
    }

    /// Size of the smallest tree below w and the descent achieving it.
    fn compact_choice(
        &self,
        w: &AffineElt,
        b: &ConjInvariant,
        memo: &mut HashMap<AffineElt, (usize, Choice)>,
    ) -> Result<(usize, Choice)> {
        if let Some(v) = memo.get(w) {
            return Ok(*v);
        }
        let mut best: (usize, Choice) = (1, None);
        if !self.is_tree_leaf(w, b)? {
            let aw = self.group();
            for d in self.conjugacy().all_descents(w)? {
                let sw = aw.left_mul_gen(d.simple, &d.at);
                let size = 1
                    + self.compact_choice(&sw, b, memo)?.0
                    + self.compact_choice(&d.result, b, memo)?.0;
                if best.1.is_none() || size < best.0 {
                    best = (size, Some((d.at, d.simple, d.result)));
                }
            }
        }
        memo.insert(*w, best);
        Ok(best)
    }

    fn tree_node(
        &self,
        w: &AffineElt,
        b: &ConjInvariant,
        strategy: TreeStrategy,
        memo: &mut HashMap<AffineElt, (usize, Choice)>,
    ) -> Result<TreeNode> {
        let aw = self.group();
        let dim = self.f_wb(w, b)?.degree();
        let mut node = TreeNode {
            element: *w,
            length: aw.length(w),
            dim,
            at: *w,
            simple: None,
            children: Vec::new(),
        };
        if self.is_tree_leaf(w, b)? {
            return Ok(node);
        }
        let choice = match strategy {
            TreeStrategy::Compact => self.compact_choice(w, b, memo)?.1,
            TreeStrategy::FirstDescent => {
                self.conjugacy().find_descent(w)?.map(|d| (d.at, d.simple, d.result))
            }
        };
        if let Some((at, s, result)) = choice {
            let sw = aw.left_mul_gen(s, &at);
            node.at = at;
            node.simple = Some(s);
            node.children = vec![
                self.tree_node(&sw, b, strategy, memo)?,
                self.tree_node(&result, b, strategy, memo)?,
            ];
        }
        Ok(node)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine_weyl::parse_compact;

    #[test]
    fn sl4_tree_shape() {
        let st = Strata::untwisted("SL4").unwrap();
        let aw = st.group();
        let w = parse_compact(aw, "s1201232101").unwrap();
        let t = st.reduction_tree(&w, &st.identity_class(), TreeStrategy::Compact).unwrap();
        let expected = [
            ("1201232101", Degree::Finite(8)),
            ("201232101", Degree::Finite(6)),
            ("21232101", Degree::NegInfinity),
            ("2123201", Degree::Finite(5)),
            ("212320", Degree::NegInfinity),
            ("21320", Degree::Finite(4)),
            ("1320", Degree::NegInfinity),
            ("130", Degree::Finite(3)),
            ("20123210", Degree::Finite(7)),
            ("2123210", Degree::NegInfinity),
            ("212321", Degree::Finite(6)),
        ];
        let nodes = t.nodes();
        assert_eq!(nodes.len(), expected.len());
        for (n, (lab, dim)) in nodes.iter().zip(expected) {
            let e = parse_compact(aw, lab).unwrap();
            if lab == "212320" {
                // The printed label is not s·w′ for any w′ ≈ s2123201; the
                // computed node is conjugate to it and of the same length.
                let right = parse_compact(aw, "21320").unwrap();
                assert!((0..4).all(|s| aw.right_mul_gen(&e, s) != right));
                assert!(st.conjugacy().are_conjugate(&n.element, &e));
                assert_eq!(n.length, aw.length(&e));
            } else {
                assert_eq!(n.element, e, "{lab}");
            }
            assert_eq!(n.dim, dim, "{lab}");
        }
        let leaves: Vec<Degree> = nodes.iter().filter(|n| n.is_leaf()).map(|n| n.dim).collect();
        assert_eq!(leaves.iter().filter(|d| **d == Degree::NegInfinity).count(), 4);
        assert!(t.to_dot(aw).contains("\\n10, 8\""));
    }

    #[test]
    fn first_descent_tree_has_the_same_root() {
        let st = Strata::untwisted("SL4").unwrap();
        let w = parse_compact(st.group(), "s1201232101").unwrap();
        let t = st.reduction_tree(&w, &st.identity_class(), TreeStrategy::FirstDescent).unwrap();
        assert_eq!(t.root.dim, Degree::Finite(8));
        let mut kids: Vec<Degree> = t.root.children.iter().map(|c| c.dim).collect();
        kids.sort();
        assert_eq!(kids, vec![Degree::Finite(6), Degree::Finite(7)]);
    }
}
