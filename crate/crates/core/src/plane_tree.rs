//! Rooted plane trees: weights, balancing, re-rooting, canonical codes and
//! exhaustive enumeration.
//!
//! A non-root vertex orders its children linearly; the parent sits between the
//! last and the first child in the cyclic order of its neighbours. The root's
//! children are ordered cyclically, so two trees differing by a rotation of
//! the root's children are the same rooted plane tree class. Mirror images are
//! distinct.

use std::collections::BTreeMap;

use serde_json::Value;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedPlaneTree {
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    root: usize,
}

/// Canonical string of an unrooted plane tree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlaneTreeClass(pub String);

impl std::fmt::Display for PlaneTreeClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl RootedPlaneTree {
    pub fn leaf() -> Self {
        RootedPlaneTree {
            parent: vec![None],
            children: vec![vec![]],
            root: 0,
        }
    }

    /// Builds a tree from child lists. Every vertex except `root` must appear
    /// exactly once as a child, and the result must be connected.
    pub fn from_children(children: Vec<Vec<usize>>, root: usize) -> Result<Self> {
        let n = children.len();
        if root >= n {
            return Err(Error::InvalidTree(format!("root {root} out of range")));
        }
        let mut parent = vec![None; n];
        for (v, cs) in children.iter().enumerate() {
            for &c in cs {
                if c >= n || c == root || parent[c].is_some() {
                    return Err(Error::InvalidTree(format!("bad child {c} of {v}")));
                }
                parent[c] = Some(v);
            }
        }
        let t = RootedPlaneTree { parent, children, root };
        if t.preorder().len() != n {
            return Err(Error::InvalidTree("not connected".into()));
        }
        Ok(t)
    }

    /// Parses nested arrays: `[]` is a single vertex, `[[],[[]]]` a root with a
    /// leaf and a one-edge subtree.
    pub fn from_nested(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::InvalidTree(e.to_string()))?;
        Self::from_json(&v)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        fn walk(v: &Value, children: &mut Vec<Vec<usize>>) -> Result<usize> {
            let arr = v
                .as_array()
                .ok_or_else(|| Error::InvalidTree("expected nested arrays".into()))?;
            let me = children.len();
            children.push(vec![]);
            for c in arr {
                let id = walk(c, children)?;
                children[me].push(id);
            }
            Ok(me)
        }
        let mut children = vec![];
        walk(v, &mut children)?;
        Self::from_children(children, 0)
    }

    pub fn to_json(&self) -> Value {
        fn walk(t: &RootedPlaneTree, v: usize) -> Value {
            Value::Array(t.children[v].iter().map(|&c| walk(t, c)).collect())
        }
        walk(self, self.root)
    }

    pub fn to_nested(&self) -> String {
        self.to_json().to_string()
    }

    /// A path with `edges` edges rooted at one end.
    pub fn path(edges: usize) -> Self {
        let children = (0..=edges)
            .map(|v| if v < edges { vec![v + 1] } else { vec![] })
            .collect();
        Self::from_children(children, 0).expect("path")
    }

    /// A star with `edges` leaves rooted at the centre.
    pub fn star(edges: usize) -> Self {
        let mut children = vec![(1..=edges).collect()];
        children.extend((0..edges).map(|_| vec![]));
        Self::from_children(children, 0).expect("star")
    }

    pub fn vertex_count(&self) -> usize {
        self.children.len()
    }

    pub fn edge_count(&self) -> usize {
        self.children.len() - 1
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn preorder(&self) -> Vec<usize> {
        let mut out = vec![];
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            out.push(v);
            stack.extend(self.children[v].iter().rev());
        }
        out
    }

    pub fn depths(&self) -> Vec<usize> {
        let mut depth = vec![0; self.vertex_count()];
        for v in self.preorder() {
            for &c in &self.children[v] {
                depth[c] = depth[v] + 1;
            }
        }
        depth
    }

    /// `W(v) = 1 + sum of W over the children`, i.e. subtree vertex count.
    pub fn weights(&self) -> Vec<usize> {
        let mut w = vec![1; self.vertex_count()];
        for v in self.preorder().into_iter().rev() {
            if let Some(p) = self.parent[v] {
                w[p] += w[v];
            }
        }
        w
    }

    fn half(&self) -> usize {
        self.edge_count().div_ceil(2)
    }

    /// Every child of the root weighs at most `floor((n+1)/2)`.
    pub fn is_balanced(&self) -> bool {
        let w = self.weights();
        self.children[self.root].iter().all(|&c| w[c] <= self.half())
    }

    /// Vertices at which the tree is balanced, found by repeatedly moving the
    /// root toward its overweight child. One vertex, or two adjacent vertices
    /// joined by an edge of weight `(n+1)/2` when `n` is odd.
    pub fn balancing_roots(&self) -> Vec<usize> {
        let mut t = self.clone();
        loop {
            let w = t.weights();
            let heavy = t.children[t.root].iter().copied().find(|&c| w[c] > t.half());
            match heavy {
                Some(c) => t = t.reroot(c),
                None => {
                    let r = t.root;
                    let edges = t.edge_count();
                    let mut out = vec![r];
                    if edges % 2 == 1 {
                        if let Some(&c) = t.children[r].iter().find(|&&c| 2 * w[c] == edges + 1) {
                            out.push(c);
                        }
                    }
                    out.sort_unstable();
                    return out;
                }
            }
        }
    }

    /// Cyclic neighbour order of `v`: children, then the parent.
    fn neighbours(&self, v: usize) -> Vec<usize> {
        let mut out = self.children[v].clone();
        if let Some(p) = self.parent[v] {
            out.push(p);
        }
        out
    }

    /// The same plane tree rooted at `v`. Vertex ids are kept; every other
    /// vertex lists its children starting after its new parent.
    pub fn reroot(&self, v: usize) -> Self {
        let n = self.vertex_count();
        let mut parent = vec![None; n];
        let mut children = vec![vec![]; n];
        children[v] = self.neighbours(v);
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            for &c in &children[u].clone() {
                parent[c] = Some(u);
                let around = self.neighbours(c);
                let t = around.iter().position(|&x| x == u).expect("adjacent");
                children[c] = around[t + 1..].iter().chain(&around[..t]).copied().collect();
                stack.push(c);
            }
        }
        RootedPlaneTree {
            parent,
            children,
            root: v,
        }
    }

    /// Move the root to the child `v` of the root.
    pub fn rebalance_root(&self, v: usize) -> Result<Self> {
        if self.parent.get(v).copied().flatten() != Some(self.root) {
            return Err(Error::NotRootChild(v));
        }
        Ok(self.reroot(v))
    }

    /// Rotate the root's children left by `k`.
    pub fn rotate_root(&self, k: usize) -> Self {
        let mut t = self.clone();
        let cs = &mut t.children[t.root];
        if !cs.is_empty() {
            let k = k % cs.len();
            cs.rotate_left(k);
        }
        t
    }

    /// Balanced-parenthesis code of the subtree at `v` with children read in
    /// stored order.
    pub fn code_at(&self, v: usize) -> String {
        let mut s = String::from("(");
        for &c in &self.children[v] {
            s.push_str(&self.code_at(c));
        }
        s.push(')');
        s
    }

    /// Code of the ordered tree, root children read in stored order.
    pub fn linear_code(&self) -> String {
        self.code_at(self.root)
    }

    /// Code of the rooted plane tree class: the root's children are rotated
    /// to the lexicographically smallest concatenation.
    pub fn rooted_code(&self) -> String {
        let parts: Vec<String> = self.children[self.root].iter().map(|&c| self.code_at(c)).collect();
        let k = parts.len();
        let best = (0..k.max(1))
            .map(|r| (0..k).map(|j| parts[(r + j) % k].as_str()).collect::<String>())
            .min()
            .unwrap_or_default();
        format!("({best})")
    }

    /// Canonical class of the unrooted plane tree: the smallest rooted code
    /// over the balancing roots.
    pub fn class(&self) -> PlaneTreeClass {
        let best = self
            .balancing_roots()
            .into_iter()
            .map(|r| self.reroot(r).rooted_code())
            .min()
            .expect("at least one balancing root");
        PlaneTreeClass(best)
    }

    /// Number of rotations of the unrooted plane tree onto itself, counted as
    /// darts (root vertex, rotation of its neighbours) carrying the same code.
    pub fn automorphism_count(&self) -> usize {
        if self.edge_count() == 0 {
            return 1;
        }
        let r = self.balancing_roots()[0];
        let target = self.reroot(r).rooted_code();
        let mut count = 0;
        for v in 0..self.vertex_count() {
            let t = self.reroot(v);
            for k in 0..t.children[v].len() {
                if t.rotate_root(k).linear_code() == target {
                    count += 1;
                }
            }
        }
        count
    }
}

/// Ordered rooted tree from a Dyck word over `(`/`)` of the edges.
fn from_dyck(word: &[bool]) -> RootedPlaneTree {
    let mut children = vec![vec![]];
    let mut stack = vec![0];
    for &up in word {
        if up {
            let v = children.len();
            children.push(vec![]);
            children[*stack.last().unwrap()].push(v);
            stack.push(v);
        } else {
            stack.pop();
        }
    }
    RootedPlaneTree::from_children(children, 0).expect("dyck word")
}

/// Every ordered rooted tree with `edges` edges (Catalan many).
pub fn ordered_trees(edges: usize) -> Vec<RootedPlaneTree> {
    fn rec(open: usize, close: usize, cur: &mut Vec<bool>, out: &mut Vec<RootedPlaneTree>) {
        if open == 0 && close == 0 {
            out.push(from_dyck(cur));
            return;
        }
        if open > 0 {
            cur.push(true);
            rec(open - 1, close + 1, cur, out);
            cur.pop();
        }
        if close > 0 {
            cur.push(false);
            rec(open, close - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![];
    rec(edges, 0, &mut vec![], &mut out);
    out
}

/// One representative per rooted plane tree class, sorted by code.
pub fn rooted_plane_trees(edges: usize) -> Vec<RootedPlaneTree> {
    let mut seen = BTreeMap::new();
    for t in ordered_trees(edges) {
        seen.entry(t.rooted_code()).or_insert(t);
    }
    seen.into_values().collect()
}

/// One representative per unrooted plane tree class, rooted at its first
/// balancing root, sorted by class.
pub fn plane_trees(edges: usize) -> Vec<(PlaneTreeClass, RootedPlaneTree)> {
    let mut seen = BTreeMap::new();
    for t in ordered_trees(edges) {
        let class = t.class();
        seen.entry(class).or_insert_with(|| t.reroot(t.balancing_roots()[0]));
    }
    seen.into_iter().collect()
}
