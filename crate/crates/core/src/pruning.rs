//! Finite labelled trees `T(n)` and the pruning operations that map `T(n)`
//! onto a smaller prefix `T(n')` of the same infinite tree.
//!
//! Every operation runs the same five phases: initial correction at the
//! first supernode, deletion from leaf cells, lifting of the surviving leaf
//! labels into their parents, end correction, and relabelling (the leaves
//! are dropped, penultimate nodes become leaves and labels are renumbered
//! in insertion order). The result is compared node by node and cell by
//! cell with a freshly built prefix.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
pub use crate::families::PruneRule;
use crate::families::FamilyParams;
use crate::tree::{initial_conditions, labels_in, NodeDescriptor, NodeKind, Nodes, TreeSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Label {
    Numbered(u64),
    /// Anonymous label inserted by an initial correction.
    Placeholder,
}

impl Label {
    fn number(self) -> Option<u64> {
        match self {
            Label::Numbered(v) => Some(v),
            Label::Placeholder => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Content {
    /// Leaf cells, always `j` of them, possibly empty.
    Cells(Vec<Vec<Label>>),
    Labels(Vec<Label>),
}

impl Content {
    fn len(&self) -> usize {
        match self {
            Content::Cells(cells) => cells.iter().map(Vec::len).sum(),
            Content::Labels(labels) => labels.len(),
        }
    }

    fn nonempty_cells(&self) -> usize {
        match self {
            Content::Cells(cells) => cells.iter().filter(|c| !c.is_empty()).count(),
            Content::Labels(_) => 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeNode {
    pub descriptor: NodeDescriptor,
    pub content: Content,
}

/// Materialized prefix: every node up to the one holding the last label,
/// in insertion order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelledTree {
    pub spec: TreeSpec,
    pub n: u64,
    pub nodes: Vec<TreeNode>,
}

impl LabelledTree {
    /// Nonempty leaf cells.
    pub fn nonempty_cells(&self) -> u64 {
        self.nodes.iter().map(|node| node.content.nonempty_cells() as u64).sum()
    }

    /// Labels per node, in node order.
    pub fn occupancy(&self) -> Vec<usize> {
        self.nodes.iter().map(|node| node.content.len()).collect()
    }
}

fn fill_cells(spec: &TreeSpec, labels: impl IntoIterator<Item = Label>) -> Vec<Vec<Label>> {
    // The last cell takes everything that is left, even past its capacity,
    // so that overfull leaves stay visible to the comparison.
    let j = spec.leaf_cells() as usize;
    let mut cells = vec![Vec::new(); j];
    let mut cell = 0;
    for label in labels {
        while cell + 1 < j && cells[cell].len() as u64 == spec.per_cell() {
            cell += 1;
        }
        cells[cell].push(label);
    }
    cells
}

/// `T(n)`.
pub fn build_prefix(spec: &TreeSpec, n: u64) -> LabelledTree {
    let mut nodes = Vec::new();
    let mut next = 1u64;
    for descriptor in Nodes::new(spec.arity()) {
        if next > n {
            break;
        }
        let take = labels_in(spec, &descriptor).min(n + 1 - next);
        let labels = (next..next + take).map(Label::Numbered);
        next += take;
        let content = if descriptor.is_leaf() {
            Content::Cells(fill_cells(spec, labels))
        } else {
            Content::Labels(labels.collect())
        };
        nodes.push(TreeNode { descriptor, content });
    }
    LabelledTree { spec: *spec, n, nodes }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Step {
    InitialCorrection,
    Deletion,
    Lifting,
    EndCorrection,
    Relabelling,
}

/// One label movement. `from == None` marks an inserted placeholder and
/// `to == None` a removal; nodes are named by their ordinal in the tree
/// being pruned, except for `to` in the relabelling step, which refers to
/// the result tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Movement {
    pub step: Step,
    /// `None` for a placeholder.
    pub label: Option<u64>,
    pub from: Option<u64>,
    pub to: Option<u64>,
    /// New number assigned in the relabelling step.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub new_label: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PruneReport {
    pub rule: PruneRule,
    pub n: u64,
    pub removed: u64,
    /// Number of removals predicted from cell counts of `T(n)`.
    pub expected_removed: u64,
    /// Deletions that found no label to remove.
    pub infeasible: u64,
    pub precondition_met: bool,
    /// Whether `result` equals `build_prefix(spec, n - removed)`.
    pub identity: bool,
    pub steps: Vec<Movement>,
    pub result: LabelledTree,
}

impl PruneRule {
    pub fn tree(&self) -> Result<TreeSpec> {
        match *self {
            PruneRule::Order2 { s, j, m } => FamilyParams::OrderOne { s, j, m: m as i64 }.tree_of(),
            PruneRule::OrderP { s, j, m, p } => FamilyParams::HigherOrder { s, j, m: m as i64, p }.tree_of(),
            PruneRule::Superposed { s, j, m, p } => FamilyParams::Superposed {
                s,
                j,
                m,
                p,
                exploratory: m < 0,
            }
            .tree_of(),
            PruneRule::Kary { k, m, p } => FamilyParams::Kary { k, m: m as i64, p }.tree_of(),
        }
    }

    /// Smallest `n` the operation is stated for.
    pub fn min_n(&self) -> u64 {
        match *self {
            PruneRule::Order2 { s, j, m } => 4 * j + 2 * m + 2 * s,
            PruneRule::OrderP { s, j, m, p } => 3 * (j + m) + ((2 * p - 1) * j - m) + 2 * s + 1,
            PruneRule::Superposed { s, j, m, p } => ((5 * p * j + 2 * s) as i64 + 3 * m + 1).max(1) as u64,
            PruneRule::Kary { k, m, p } => k * (p + m) + p - (k - 1) * m + 1,
        }
    }

    /// Whether the precondition is enforced: it is waived for exploratory
    /// parameters, whose outcome is reported rather than asserted.
    fn enforces_precondition(&self) -> bool {
        !matches!(*self, PruneRule::Superposed { m, .. } if m < 0)
    }

    /// Offsets `t` such that each cell nonempty in `T(n - t)` loses one label.
    fn deletion_offsets(&self) -> Vec<u64> {
        match *self {
            PruneRule::Order2 { j, .. } => vec![j],
            PruneRule::OrderP { j, p, .. } => (1..=p).map(|i| (2 * i - 1) * j).collect(),
            PruneRule::Superposed { j, p, .. } => (1..=p).map(|i| 2 * i - 1 + p * (j - 1)).collect(),
            PruneRule::Kary { p, .. } => (1..=p).collect(),
        }
    }

    fn supernode_labels(&self) -> u64 {
        match *self {
            PruneRule::Order2 { s, .. } | PruneRule::OrderP { s, .. } | PruneRule::Superposed { s, .. } => s,
            PruneRule::Kary { .. } => 0,
        }
    }

    /// `s + Σ_t C_T(n - t)` over the deletion offsets.
    pub fn expected_removed(&self, spec: &TreeSpec, n: u64) -> u64 {
        let counts = initial_conditions(spec, n);
        self.supernode_labels()
            + self
                .deletion_offsets()
                .iter()
                .map(|&t| if t < n { counts[(n - t - 1) as usize] } else { 0 })
                .sum::<u64>()
    }
}

// Working copy of a tree while it is being pruned.
struct Work {
    nodes: Vec<TreeNode>,
    log: Vec<Movement>,
    // Removals minus inserted placeholders.
    removed: i64,
    infeasible: u64,
}

impl Work {
    fn ordinal(&self, idx: usize) -> u64 {
        self.nodes[idx].descriptor.ordinal
    }

    fn parent_index(&self, idx: usize) -> usize {
        self.nodes[idx].descriptor.parent_ordinal.expect("parent ordinal fits") as usize - 1
    }

    fn record_removal(&mut self, step: Step, label: Label, idx: usize) {
        let from = Some(self.ordinal(idx));
        self.log.push(Movement {
            step,
            label: label.number(),
            from,
            to: None,
            new_label: None,
        });
        self.removed += 1;
    }

    fn labels_mut(&mut self, idx: usize) -> &mut Vec<Label> {
        match &mut self.nodes[idx].content {
            Content::Labels(labels) => labels,
            Content::Cells(_) => unreachable!("leaf has cells"),
        }
    }

    fn cell_mut(&mut self, idx: usize, cell: usize) -> &mut Vec<Label> {
        match &mut self.nodes[idx].content {
            Content::Cells(cells) => &mut cells[cell],
            Content::Labels(_) => unreachable!("not a leaf"),
        }
    }

    /// Removes the `count` largest numbered labels anywhere in the tree,
    /// returning how many were found.
    fn remove_largest(&mut self, step: Step, count: u64, into: Option<usize>) -> u64 {
        let mut found: Vec<(u64, usize, Option<usize>)> = Vec::new();
        for (idx, node) in self.nodes.iter().enumerate() {
            match &node.content {
                Content::Labels(labels) => {
                    found.extend(labels.iter().filter_map(|l| l.number()).map(|v| (v, idx, None)));
                }
                Content::Cells(cells) => {
                    for (c, cell) in cells.iter().enumerate() {
                        found.extend(cell.iter().filter_map(|l| l.number()).map(|v| (v, idx, Some(c))));
                    }
                }
            }
        }
        let take = (count as usize).min(found.len());
        if take == 0 {
            return 0;
        }
        let cut = found.len() - take;
        found.select_nth_unstable(cut);
        let mut chosen = found.split_off(cut);
        chosen.sort_unstable();
        for &(v, idx, cell) in &chosen {
            let label = Label::Numbered(v);
            let list = match cell {
                Some(c) => self.cell_mut(idx, c),
                None => self.labels_mut(idx),
            };
            let pos = list.iter().position(|&l| l == label).expect("label present");
            list.remove(pos);
            match into {
                Some(target) => {
                    self.labels_mut(target).push(label);
                    let (from, to) = (self.ordinal(idx), self.ordinal(target));
                    self.log.push(Movement {
                        step,
                        label: Some(v),
                        from: Some(from),
                        to: Some(to),
                        new_label: None,
                    });
                }
                None => self.record_removal(step, label, idx),
            }
        }
        take as u64
    }
}

/// Runs the pruning operation `rule` on `tree`.
pub fn prune(tree: &LabelledTree, rule: PruneRule) -> Result<PruneReport> {
    let spec = rule.tree()?;
    if spec != tree.spec {
        return Err(Error::InvalidArgument(format!(
            "tree {:?} does not carry the labelling of {rule:?}",
            tree.spec
        )));
    }
    let n = tree.n;
    let precondition_met = n >= rule.min_n();
    if !precondition_met && rule.enforces_precondition() {
        return Err(Error::Precondition(format!(
            "{rule:?} needs n >= {}, got n = {n}",
            rule.min_n()
        )));
    }

    let mut nodes = tree.nodes.clone();
    // The first supernode must exist even for very small trees.
    for descriptor in Nodes::new(spec.arity()).skip(nodes.len()).take(2usize.saturating_sub(nodes.len())) {
        let content = if descriptor.is_leaf() {
            Content::Cells(fill_cells(&spec, []))
        } else {
            Content::Labels(Vec::new())
        };
        nodes.push(TreeNode { descriptor, content });
    }
    // First label of every cell in T(n); deletion targets depend on it only.
    let first_labels: Vec<(usize, usize, u64)> = nodes
        .iter()
        .enumerate()
        .flat_map(|(idx, node)| match &node.content {
            Content::Cells(cells) => cells
                .iter()
                .enumerate()
                .filter_map(|(c, cell)| cell.first().and_then(|l| l.number()).map(|v| (idx, c, v)))
                .collect::<Vec<_>>(),
            Content::Labels(_) => Vec::new(),
        })
        .collect();

    let mut work = Work {
        nodes,
        log: Vec::new(),
        removed: 0,
        infeasible: 0,
    };
    let s1 = 1usize;
    debug_assert_eq!(work.nodes[s1].descriptor.kind, NodeKind::Supernode(1));

    // Initial correction.
    let supernode = std::mem::take(work.labels_mut(s1));
    for label in supernode {
        work.record_removal(Step::InitialCorrection, label, s1);
    }
    let end_correction = match rule {
        PruneRule::Order2 { j, m, .. } => {
            work.remove_largest(Step::InitialCorrection, j - m, Some(s1));
            0
        }
        _ => {
            let x = spec.regular_labels();
            for _ in 0..x {
                work.labels_mut(s1).push(Label::Placeholder);
                work.removed -= 1;
                work.log.push(Movement {
                    step: Step::InitialCorrection,
                    label: None,
                    from: None,
                    to: Some(2),
                    new_label: None,
                });
            }
            x
        }
    };

    // Deletion.
    let last_cell = spec.leaf_cells() as usize - 1;
    for t in rule.deletion_offsets() {
        let Some(threshold) = n.checked_sub(t) else { continue };
        for &(idx, c, _) in first_labels.iter().filter(|&&(_, _, first)| first <= threshold) {
            let target = match rule {
                PruneRule::Order2 { .. } => {
                    let cell = work.cell_mut(idx, c);
                    (!cell.is_empty()).then(|| cell.remove(0))
                }
                PruneRule::OrderP { .. } => {
                    if !work.cell_mut(idx, c).is_empty() {
                        Some(work.cell_mut(idx, c).remove(0))
                    } else if !work.cell_mut(idx, last_cell).is_empty() {
                        Some(work.cell_mut(idx, last_cell).remove(0))
                    } else {
                        let parent = work.parent_index(idx);
                        let labels = work.labels_mut(parent);
                        let pos = labels
                            .iter()
                            .position(|&l| l == Label::Placeholder)
                            .or_else(|| labels.iter().enumerate().min_by_key(|(_, l)| **l).map(|(i, _)| i));
                        if let Some(pos) = pos {
                            let label = labels.remove(pos);
                            work.record_removal(Step::Deletion, label, parent);
                        } else {
                            work.infeasible += 1;
                        }
                        continue;
                    }
                }
                PruneRule::Superposed { .. } | PruneRule::Kary { .. } => work.cell_mut(idx, c).pop(),
            };
            match target {
                Some(label) => work.record_removal(Step::Deletion, label, idx),
                None => work.infeasible += 1,
            }
        }
    }

    // Lifting.
    for idx in 0..work.nodes.len() {
        if !work.nodes[idx].descriptor.is_leaf() {
            continue;
        }
        let parent = work.parent_index(idx);
        let lifted: Vec<Label> = match &mut work.nodes[idx].content {
            Content::Cells(cells) => cells.iter_mut().flat_map(std::mem::take).collect(),
            Content::Labels(_) => unreachable!("leaf has cells"),
        };
        let (from, to) = (work.ordinal(idx), work.ordinal(parent));
        for label in lifted {
            work.log.push(Movement {
                step: Step::Lifting,
                label: label.number(),
                from: Some(from),
                to: Some(to),
                new_label: None,
            });
            work.labels_mut(parent).push(label);
        }
    }

    // End correction.
    work.remove_largest(Step::EndCorrection, end_correction, None);

    // Relabelling: drop the leaves, demote every other node by one level.
    let survivors: Vec<TreeNode> = work.nodes.iter().filter(|node| !node.descriptor.is_leaf()).cloned().collect();
    let mut result_nodes = Vec::with_capacity(survivors.len());
    let mut next = 1u64;
    for (old, descriptor) in survivors.iter().zip(Nodes::new(spec.arity())) {
        let expected = match old.descriptor.kind {
            NodeKind::Supernode(1) | NodeKind::Regular(1) => matches!(descriptor.kind, NodeKind::Leaf(_)),
            NodeKind::Supernode(i) => descriptor.kind == NodeKind::Supernode(i - 1),
            NodeKind::Regular(h) => descriptor.kind == NodeKind::Regular(h - 1),
            NodeKind::Leaf(_) => false,
        };
        if !expected {
            return Err(Error::Skeleton(format!(
                "node {:?} cannot become {:?}",
                old.descriptor.kind, descriptor.kind
            )));
        }
        let mut old_labels = match &old.content {
            Content::Labels(labels) => labels.clone(),
            Content::Cells(_) => unreachable!("leaves were dropped"),
        };
        old_labels.sort_unstable();
        let mut fresh = Vec::with_capacity(old_labels.len());
        for label in old_labels {
            work.log.push(Movement {
                step: Step::Relabelling,
                label: label.number(),
                from: Some(old.descriptor.ordinal),
                to: Some(descriptor.ordinal),
                new_label: Some(next),
            });
            fresh.push(Label::Numbered(next));
            next += 1;
        }
        let content = if descriptor.is_leaf() {
            Content::Cells(fill_cells(&spec, fresh))
        } else {
            Content::Labels(fresh)
        };
        result_nodes.push(TreeNode { descriptor, content });
    }
    while result_nodes.last().is_some_and(|node| node.content.len() == 0) {
        result_nodes.pop();
    }
    let result = LabelledTree {
        spec,
        n: next - 1,
        nodes: result_nodes,
    };
    let removed = n - result.n;
    debug_assert_eq!(removed as i64, work.removed);

    let identity = result == build_prefix(&spec, result.n);
    Ok(PruneReport {
        rule,
        n,
        removed,
        expected_removed: rule.expected_removed(&spec, n),
        infeasible: work.infeasible,
        precondition_met,
        identity,
        steps: work.log,
        result,
    })
}

pub fn prune_order2(tree: &LabelledTree, s: u64, j: u64, m: u64) -> Result<PruneReport> {
    prune(tree, PruneRule::Order2 { s, j, m })
}

pub fn prune_orderp(tree: &LabelledTree, s: u64, j: u64, m: u64, p: u64) -> Result<PruneReport> {
    prune(tree, PruneRule::OrderP { s, j, m, p })
}

pub fn prune_superposed(tree: &LabelledTree, s: u64, j: u64, m: i64, p: u64) -> Result<PruneReport> {
    prune(tree, PruneRule::Superposed { s, j, m, p })
}

pub fn prune_kary(tree: &LabelledTree, m: u64, p: u64, k: u64) -> Result<PruneReport> {
    prune(tree, PruneRule::Kary { k, m, p })
}

/// Checks, for every penultimate node `P` of `tree`, that `P` as a leaf of
/// the pruned tree has as many nonempty cells as `P`'s first child has in
/// `tree`.
pub fn correspondence_holds(tree: &LabelledTree, report: &PruneReport) -> bool {
    let mut survivors = tree.nodes.iter().filter(|node| !node.descriptor.is_leaf());
    let mut result = report.result.nodes.iter();
    // Penultimate nodes past the end of the result are empty there.
    for old in tree.nodes.iter().filter(|node| node.descriptor.height() == 1) {
        let new_cells = loop {
            let Some(s) = survivors.next() else { break 0 };
            let r = result.next();
            if s.descriptor.ordinal == old.descriptor.ordinal {
                break r.map_or(0, |node| node.content.nonempty_cells());
            }
        };
        // Leaf 1 hangs off the first supernode; a regular penultimate node
        // is followed directly by its first leaf.
        let child = match old.descriptor.kind {
            NodeKind::Supernode(_) => 1,
            _ => old.descriptor.ordinal + 1,
        };
        let first_child = tree.nodes.get(child as usize - 1);
        let old_cells = first_child.map_or(0, |node| node.content.nonempty_cells());
        if new_cells != old_cells {
            return false;
        }
    }
    true
}

/// Prunes `T(n)` for `family` and checks [`correspondence_holds`] together
/// with the counting form: nonempty cells on first children of `T(n)`
/// equal `C_T(n - removed)`.
pub fn left_leaf_correspondence(spec: &TreeSpec, n: u64, family: &FamilyParams) -> Result<bool> {
    let rule = family.prune_rule()?;
    if rule.tree()? != *spec {
        return Err(Error::InvalidArgument(format!("{spec:?} is not the tree of {family}")));
    }
    let tree = build_prefix(spec, n);
    let report = prune(&tree, rule)?;
    let first_children = crate::tree::cell_count_split(spec, n)[0];
    let after = if report.removed < n {
        crate::tree::cell_count(spec, n - report.removed)
    } else {
        0
    };
    Ok(correspondence_holds(&tree, &report) && first_children == after)
}

/// `count` tree sizes drawn uniformly from `rule.min_n()..=n_max` with a
/// seeded generator.
pub fn sample_sizes(rule: &PruneRule, n_max: u64, count: usize, seed: u64) -> Result<Vec<u64>> {
    let lo = rule.min_n().max(1);
    if n_max < lo {
        return Err(Error::InvalidArgument(format!("n_max {n_max} is below the precondition {lo}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count).map(|_| rng.random_range(lo..=n_max)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::cell_count;

    fn running() -> TreeSpec {
        TreeSpec::new(2, 1, 3, 1, 2, 2).unwrap()
    }

    #[test]
    fn prefix_matches_counts() {
        let t = build_prefix(&running(), 31);
        assert_eq!(t.nonempty_cells(), 17);
        assert_eq!(t.occupancy()[..6], [4, 1, 4, 1, 2, 4]);
        assert_eq!(
            t.nodes[0].content,
            Content::Cells(vec![
                vec![Label::Numbered(1)],
                vec![Label::Numbered(2)],
                vec![Label::Numbered(3), Label::Numbered(4)]
            ])
        );
        for n in 1..300 {
            assert_eq!(build_prefix(&running(), n).nonempty_cells(), cell_count(&running(), n));
        }
    }

    #[test]
    fn running_example_prunes_to_fifteen() {
        let t = build_prefix(&running(), 31);
        let r = prune_order2(&t, 1, 3, 1).unwrap();
        assert_eq!(r.removed, 16);
        assert_eq!(r.expected_removed, 16);
        assert!(r.identity);
        assert_eq!(r.result, build_prefix(&running(), 15));
        let moved: Vec<_> = r
            .steps
            .iter()
            .filter(|mv| mv.step == Step::InitialCorrection && mv.to == Some(2))
            .map(|mv| mv.label.unwrap())
            .collect();
        assert_eq!(moved, vec![30, 31]);
        let dropped: Vec<_> = r
            .steps
            .iter()
            .filter(|mv| mv.step == Step::InitialCorrection && mv.to.is_none())
            .map(|mv| mv.label.unwrap())
            .collect();
        assert_eq!(dropped, vec![5]);
        assert!(correspondence_holds(&t, &r));
    }

    #[test]
    fn precondition_refused() {
        let t = build_prefix(&running(), 10);
        assert!(matches!(prune_order2(&t, 1, 3, 1), Err(Error::Precondition(_))));
        let f = FamilyParams::OrderOne { s: 1, j: 3, m: 1 };
        assert!(left_leaf_correspondence(&running(), 10, &f).is_err());
        assert!(left_leaf_correspondence(&running(), 31, &f).unwrap());
    }

    #[test]
    fn wrong_tree_refused() {
        let t = build_prefix(&running(), 40);
        assert!(matches!(prune_order2(&t, 0, 3, 1), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn order_p_running_example() {
        let spec = TreeSpec::new(2, 0, 3, 1, 3, 7).unwrap();
        let t = build_prefix(&spec, 63);
        let r = prune_orderp(&t, 0, 3, 2, 2).unwrap();
        assert_eq!(r.removed, cell_count(&spec, 60) + cell_count(&spec, 54));
        assert_eq!(r.infeasible, 0);
        assert!(r.identity);
    }

    #[test]
    fn order_p_with_p_one_matches_order_two_counts() {
        let spec = running();
        for n in 20..200 {
            let t = build_prefix(&spec, n);
            let a = prune_order2(&t, 1, 3, 1).unwrap();
            let b = prune_orderp(&t, 1, 3, 1, 1).unwrap();
            assert_eq!(a.removed, b.removed);
            assert_eq!(a.result, b.result);
        }
    }

    #[test]
    fn superposed_running_example() {
        let spec = TreeSpec::new(2, 0, 3, 2, 5, 3).unwrap();
        let t = build_prefix(&spec, 82);
        let r = prune_superposed(&t, 0, 3, 3, 2).unwrap();
        assert_eq!(r.removed, cell_count(&spec, 77) + cell_count(&spec, 75));
        assert!(r.identity);
        assert!(correspondence_holds(&t, &r));
    }

    #[test]
    fn kary_conolly() {
        let spec = TreeSpec::new(3, 0, 1, 1, 1, 1).unwrap();
        for n in 10..400 {
            let r = prune_kary(&build_prefix(&spec, n), 0, 1, 3).unwrap();
            assert!(r.identity, "n={n}");
            assert_eq!(r.removed, r.expected_removed);
        }
    }

    #[test]
    fn conservation() {
        let t = build_prefix(&running(), 100);
        let r = prune_order2(&t, 1, 3, 1).unwrap();
        let removals = r.steps.iter().filter(|mv| mv.to.is_none() && mv.label.is_some()).count() as u64;
        assert_eq!(removals, r.removed);
        assert_eq!(r.result.n, t.n - r.removed);
        for step in [Step::InitialCorrection, Step::Deletion, Step::Lifting] {
            let mut seen: Vec<_> = r.steps.iter().filter(|mv| mv.step == step).filter_map(|mv| mv.label).collect();
            let len = seen.len();
            seen.sort_unstable();
            seen.dedup();
            assert_eq!(seen.len(), len, "{step:?}");
        }
        let fresh: Vec<_> = r.steps.iter().filter_map(|mv| mv.new_label).collect();
        assert_eq!(fresh, (1..=r.result.n).collect::<Vec<_>>());
    }

    #[test]
    fn seeded_sampling() {
        let rule = PruneRule::Order2 { s: 1, j: 3, m: 1 };
        let a = sample_sizes(&rule, 500, 20, 7).unwrap();
        assert_eq!(a, sample_sizes(&rule, 500, 20, 7).unwrap());
        assert!(a.iter().all(|&n| (rule.min_n()..=500).contains(&n)));
        assert!(sample_sizes(&rule, 3, 1, 0).is_err());
    }
}
