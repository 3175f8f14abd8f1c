//! Labelled infinite k-ary trees and their leaf-cell counting functions.
//!
//! The skeleton has an infinite left spine of supernodes. Supernode 1 is the
//! parent of leaves `1..=k`; supernode `i > 1` has supernode `i - 1` as its
//! first child and `k - 1` complete k-ary subtrees of height `i - 1` as its
//! remaining children. Labels are inserted in the order produced by
//! [`enumerate_nodes`]:
//!
//! ```text
//! leaf 1, S1, leaf 2, ..., leaf k,
//! S2, <k-1 subtrees of height 1, root first>,
//! S3, <k-1 subtrees of height 2, root first>, ...
//! ```
//!
//! so supernode `i` is visited right after leaf `k^(i-1)`. Each leaf is split
//! into `j` cells; the counting function `C_T(n)` is the number of cells that
//! hold at least one of the first `n` labels.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::valuation::nu;

/// Labelling scheme of a k-ary supernode skeleton.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawTreeSpec", into = "RawTreeSpec")]
pub struct TreeSpec {
    k: u64,
    s: u64,
    j: u64,
    per_cell: u64,
    last_cell: u64,
    regular: u64,
}

#[derive(Serialize, Deserialize)]
struct RawTreeSpec {
    k: u64,
    s: u64,
    j: u64,
    per_cell: u64,
    last_cell: u64,
    regular: u64,
}

impl TryFrom<RawTreeSpec> for TreeSpec {
    type Error = Error;

    fn try_from(r: RawTreeSpec) -> Result<Self> {
        TreeSpec::new(r.k, r.s, r.j, r.per_cell, r.last_cell, r.regular)
    }
}

impl From<TreeSpec> for RawTreeSpec {
    fn from(t: TreeSpec) -> Self {
        RawTreeSpec {
            k: t.k,
            s: t.s,
            j: t.j,
            per_cell: t.per_cell,
            last_cell: t.last_cell,
            regular: t.regular,
        }
    }
}

impl TreeSpec {
    /// `k`-ary skeleton with `s` labels per supernode, `j` cells per leaf
    /// (`per_cell` labels in each of the first `j - 1`, `last_cell` in the
    /// last) and `regular` labels in every other node.
    pub fn new(k: u64, s: u64, j: u64, per_cell: u64, last_cell: u64, regular: u64) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidArgument(format!("arity must be at least 2, got {k}")));
        }
        if j < 1 || per_cell < 1 || last_cell < 1 {
            return Err(Error::InvalidArgument(format!(
                "leaf cells need j >= 1 and at least one label each (j={j}, per_cell={per_cell}, last_cell={last_cell})"
            )));
        }
        Ok(TreeSpec {
            k,
            s,
            j,
            per_cell,
            last_cell,
            regular,
        })
    }

    pub fn arity(&self) -> u64 {
        self.k
    }
    pub fn supernode_labels(&self) -> u64 {
        self.s
    }
    pub fn leaf_cells(&self) -> u64 {
        self.j
    }
    pub fn per_cell(&self) -> u64 {
        self.per_cell
    }
    pub fn last_cell(&self) -> u64 {
        self.last_cell
    }
    pub fn regular_labels(&self) -> u64 {
        self.regular
    }

    /// Labels held by a full leaf.
    pub fn leaf_capacity(&self) -> u64 {
        self.per_cell * (self.j - 1) + self.last_cell
    }

    /// Capacity of cell `cell` (0-based) of a leaf.
    pub fn cell_capacity(&self, cell: u64) -> u64 {
        if cell + 1 == self.j {
            self.last_cell
        } else {
            self.per_cell
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeKind {
    /// The i-th node of the left spine, `i >= 1`.
    Supernode(u32),
    /// A non-leaf node at the given height above the leaves, `>= 1`.
    Regular(u32),
    /// The i-th leaf in insertion order, `i >= 1`.
    Leaf(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NodeDescriptor {
    /// 1-based position in label-insertion order.
    pub ordinal: u64,
    pub kind: NodeKind,
    /// `None` only if the parent's ordinal does not fit in 64 bits.
    pub parent_ordinal: Option<u64>,
    /// 1-based position among the parent's children.
    pub position: u32,
}

impl NodeDescriptor {
    pub fn is_leaf(&self) -> bool {
        matches!(self.kind, NodeKind::Leaf(_))
    }

    /// Height above the leaf level.
    pub fn height(&self) -> u32 {
        match self.kind {
            NodeKind::Leaf(_) => 0,
            NodeKind::Regular(h) | NodeKind::Supernode(h) => h,
        }
    }
}

/// Insertion ordinal of supernode `i`: it follows the complete subtree of
/// supernode `i - 1`, which has `(k^i - 1)/(k - 1)` nodes.
fn supernode_ordinal(k: u64, i: u32) -> Option<u64> {
    let pow = k.checked_pow(i)?;
    Some((pow - 1) / (k - 1) + 1)
}

/// Lazy walk over the infinite skeleton in label-insertion order.
#[derive(Clone, Debug)]
pub struct Nodes {
    k: u64,
    next_ordinal: u64,
    leaves: u64,
    supernodes: u32,
    // Each frame emits the children `next..=k` of `parent` at `height`.
    stack: Vec<Frame>,
}

#[derive(Clone, Copy, Debug)]
struct Frame {
    height: u32,
    parent: u64,
    next: u32,
}

impl Nodes {
    pub fn new(k: u64) -> Self {
        assert!(k >= 2, "arity must be at least 2");
        Nodes {
            k,
            next_ordinal: 1,
            leaves: 0,
            supernodes: 0,
            stack: Vec::new(),
        }
    }

    fn emit(&mut self, kind: NodeKind, parent_ordinal: Option<u64>, position: u32) -> NodeDescriptor {
        let d = NodeDescriptor {
            ordinal: self.next_ordinal,
            kind,
            parent_ordinal,
            position,
        };
        self.next_ordinal += 1;
        d
    }
}

impl Iterator for Nodes {
    type Item = NodeDescriptor;

    fn next(&mut self) -> Option<NodeDescriptor> {
        let k = self.k;
        if self.next_ordinal == 1 {
            self.leaves = 1;
            return Some(self.emit(NodeKind::Leaf(1), supernode_ordinal(k, 1), 1));
        }
        while let Some(top) = self.stack.last_mut() {
            if top.next as u64 > k {
                self.stack.pop();
                continue;
            }
            let Frame { height, parent, next } = *top;
            top.next += 1;
            let node = if height == 0 {
                self.leaves += 1;
                self.emit(NodeKind::Leaf(self.leaves), Some(parent), next)
            } else {
                let node = self.emit(NodeKind::Regular(height), Some(parent), next);
                self.stack.push(Frame {
                    height: height - 1,
                    parent: node.ordinal,
                    next: 1,
                });
                node
            };
            return Some(node);
        }
        self.supernodes += 1;
        let i = self.supernodes;
        let node = self.emit(NodeKind::Supernode(i), supernode_ordinal(k, i + 1), 1);
        self.stack.push(Frame {
            height: i - 1,
            parent: node.ordinal,
            next: 2,
        });
        Some(node)
    }
}

/// The first `count` nodes of the k-ary skeleton in insertion order.
pub fn enumerate_nodes(k: u64, count: usize) -> Vec<NodeDescriptor> {
    Nodes::new(k).take(count).collect()
}

/// Number of labels the scheme places in `node`.
pub fn labels_in(spec: &TreeSpec, node: &NodeDescriptor) -> u64 {
    match node.kind {
        NodeKind::Supernode(_) => spec.s,
        NodeKind::Regular(_) => spec.regular,
        NodeKind::Leaf(_) => spec.leaf_capacity(),
    }
}

/// Where a single label lands.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LabelSite {
    pub node: NodeDescriptor,
    /// 0-based cell index for labels placed in a leaf.
    pub cell: Option<u64>,
    /// True for the first label of a leaf cell, i.e. the label that makes
    /// the cell nonempty.
    pub opens_cell: bool,
}

/// Lazy walk over label sites `1, 2, 3, ...`.
#[derive(Clone, Debug)]
pub struct Labels {
    spec: TreeSpec,
    nodes: Nodes,
    current: Option<NodeDescriptor>,
    cell: u64,
    used_in_cell: u64,
    used_in_node: u64,
}

impl Labels {
    pub fn new(spec: TreeSpec) -> Self {
        Labels {
            spec,
            nodes: Nodes::new(spec.k),
            current: None,
            cell: 0,
            used_in_cell: 0,
            used_in_node: 0,
        }
    }
}

impl Iterator for Labels {
    type Item = LabelSite;

    fn next(&mut self) -> Option<LabelSite> {
        loop {
            let Some(node) = self.current else {
                self.current = self.nodes.next();
                self.cell = 0;
                self.used_in_cell = 0;
                self.used_in_node = 0;
                continue;
            };
            if node.is_leaf() {
                if self.used_in_cell == self.spec.cell_capacity(self.cell) {
                    self.cell += 1;
                    self.used_in_cell = 0;
                }
                if self.cell == self.spec.j {
                    self.current = None;
                    continue;
                }
                let site = LabelSite {
                    node,
                    cell: Some(self.cell),
                    opens_cell: self.used_in_cell == 0,
                };
                self.used_in_cell += 1;
                return Some(site);
            }
            if self.used_in_node == labels_in(&self.spec, &node) {
                self.current = None;
                continue;
            }
            self.used_in_node += 1;
            return Some(LabelSite {
                node,
                cell: None,
                opens_cell: false,
            });
        }
    }
}

/// `C_T(n)`: number of nonempty leaf cells among the first `n` labels.
pub fn cell_count(spec: &TreeSpec, n: u64) -> u64 {
    Labels::new(*spec).take(n as usize).filter(|site| site.opens_cell).count() as u64
}

/// Nonempty cells among the first `n` labels, split by the position of their
/// leaf among its siblings: entry `i` counts cells on `(i+1)`-th children.
/// For binary trees this is `[left, right]`.
pub fn cell_count_split(spec: &TreeSpec, n: u64) -> Vec<u64> {
    let mut counts = vec![0u64; spec.k as usize];
    for site in Labels::new(*spec).take(n as usize) {
        if site.opens_cell {
            counts[site.node.position as usize - 1] += 1;
        }
    }
    counts
}

/// `C_T(1), ..., C_T(t)` from a single walk.
pub fn initial_conditions(spec: &TreeSpec, t: u64) -> Vec<u64> {
    let mut count = 0;
    Labels::new(*spec)
        .take(t as usize)
        .map(|site| {
            count += site.opens_cell as u64;
            count
        })
        .collect()
}

/// Number of labels placed up to and including leaf `2k`: the first two
/// sibling groups of leaves, both supernodes between them and the first
/// regular subtree. Initial conditions of this length fix every offset
/// that reaches back into the first two penultimate nodes.
pub fn follow_length(spec: &TreeSpec) -> u64 {
    let mut total = 0;
    for d in Nodes::new(spec.k) {
        total += labels_in(spec, &d);
        if d.kind == NodeKind::Leaf(2 * spec.k) {
            break;
        }
    }
    total
}

/// Number of regular nodes between leaf `h` and leaf `h + 1` in insertion
/// order, which is the k-adic valuation of `h`.
pub fn regular_nodes_between_leaves(k: u64, h: u64) -> u64 {
    nu(k, h) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn running() -> TreeSpec {
        TreeSpec::new(2, 1, 3, 1, 2, 2).unwrap()
    }

    #[test]
    fn binary_prefix_order() {
        let kinds: Vec<NodeKind> = enumerate_nodes(2, 6).iter().map(|d| d.kind).collect();
        assert_eq!(
            kinds,
            vec![
                NodeKind::Leaf(1),
                NodeKind::Supernode(1),
                NodeKind::Leaf(2),
                NodeKind::Supernode(2),
                NodeKind::Regular(1),
                NodeKind::Leaf(3),
            ]
        );
    }

    #[test]
    fn third_supernode_then_two_regulars() {
        let nodes = enumerate_nodes(2, 40);
        let at = nodes.iter().position(|d| d.kind == NodeKind::Supernode(3)).unwrap();
        assert_eq!(nodes[at - 1].kind, NodeKind::Leaf(4));
        assert_eq!(nodes[at + 1].kind, NodeKind::Regular(2));
        assert_eq!(nodes[at + 2].kind, NodeKind::Regular(1));
        assert_eq!(nodes[at + 3].kind, NodeKind::Leaf(5));
    }

    #[test]
    fn ternary_second_supernode_after_leaf_three() {
        let nodes = enumerate_nodes(3, 10);
        let at = nodes.iter().position(|d| d.kind == NodeKind::Supernode(2)).unwrap();
        assert_eq!(nodes[at - 1].kind, NodeKind::Leaf(3));
    }

    #[test]
    fn parents_and_positions() {
        let nodes = enumerate_nodes(2, 16);
        // leaf 1 and leaf 2 hang off the first supernode (ordinal 2)
        assert_eq!(nodes[0].parent_ordinal, Some(2));
        assert_eq!(nodes[2].parent_ordinal, Some(2));
        assert_eq!((nodes[0].position, nodes[2].position), (1, 2));
        // S1 is the first child of S2 (ordinal 4), S2 of S3 (ordinal 8)
        assert_eq!(nodes[1].parent_ordinal, Some(4));
        assert_eq!(nodes[3].parent_ordinal, Some(8));
        for d in &nodes {
            if let Some(p) = d.parent_ordinal {
                if p <= nodes.len() as u64 {
                    let parent = nodes[p as usize - 1];
                    assert_eq!(parent.height(), d.height() + 1, "{d:?}");
                }
            }
        }
    }

    #[test]
    fn label_counts() {
        let d = enumerate_nodes(2, 4);
        assert_eq!(labels_in(&running(), &d[0]), 4);
        assert_eq!(labels_in(&running(), &d[1]), 1);
        assert_eq!(labels_in(&running(), &d[4 - 1]), 1);
        let sup = TreeSpec::new(2, 0, 3, 2, 5, 3).unwrap();
        assert_eq!(labels_in(&sup, &d[0]), 9);
    }

    #[test]
    fn running_example_counts() {
        assert_eq!(cell_count(&running(), 16), 9);
        assert_eq!(cell_count(&running(), 31), 17);
        assert_eq!(initial_conditions(&running(), 9), vec![1, 2, 3, 3, 3, 4, 5, 6, 6]);
    }

    #[test]
    fn conolly_tree_prefix() {
        let t = TreeSpec::new(2, 0, 1, 1, 1, 1).unwrap();
        assert_eq!(initial_conditions(&t, 2), vec![1, 2]);
    }

    #[test]
    fn split_counts() {
        assert_eq!(cell_count_split(&running(), 9), vec![3, 3]);
        for n in 1..200 {
            let split = cell_count_split(&running(), n);
            assert_eq!(split.iter().sum::<u64>(), cell_count(&running(), n));
        }
    }

    #[test]
    fn follow_length_order_one() {
        for s in 0..3 {
            for j in 1..5 {
                for m in 0..=j {
                    let t = TreeSpec::new(2, s, j, 1, 1 + m, j - m).unwrap();
                    assert_eq!(follow_length(&t), 5 * j + 3 * m + 2 * s);
                }
            }
        }
    }

    #[test]
    fn valuation_gaps() {
        assert_eq!(regular_nodes_between_leaves(2, 4), 2);
        assert_eq!(regular_nodes_between_leaves(2, 7), 0);
        assert_eq!(regular_nodes_between_leaves(3, 9), 2);
    }

    #[test]
    fn spec_bounds() {
        assert!(TreeSpec::new(1, 0, 1, 1, 1, 1).is_err());
        assert!(TreeSpec::new(2, 0, 0, 1, 1, 1).is_err());
        assert!(TreeSpec::new(2, 0, 1, 1, 0, 1).is_err());
        let t: TreeSpec =
            serde_json::from_str(r#"{"k":2,"s":1,"j":3,"per_cell":1,"last_cell":2,"regular":2}"#).unwrap();
        assert_eq!(t, running());
        assert!(serde_json::from_str::<TreeSpec>(r#"{"k":1,"s":1,"j":3,"per_cell":1,"last_cell":2,"regular":2}"#).is_err());
    }
}
