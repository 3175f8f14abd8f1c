use nestrec::families::FamilyParams;
use nestrec::frequency::{closed_form, superpose};
use nestrec::pruning::{build_prefix, prune, sample_sizes};
use nestrec::recursion::{evaluate, frequency_of, is_slow, Slowness};
use nestrec::tree::{
    cell_count, cell_count_split, enumerate_nodes, initial_conditions, regular_nodes_between_leaves, NodeKind, TreeSpec,
};
use proptest::prelude::*;

fn tree_spec() -> impl Strategy<Value = TreeSpec> {
    (2u64..=5, 0u64..=3, 1u64..=4, 1u64..=3, 1u64..=4, 0u64..=4)
        .prop_map(|(k, s, j, c, l, x)| TreeSpec::new(k, s, j, c, l, x).unwrap())
}

fn order_one() -> impl Strategy<Value = FamilyParams> {
    (0u64..=3, 1u64..=5)
        .prop_flat_map(|(s, j)| (Just(s), Just(j), 0..=j as i64))
        .prop_map(|(s, j, m)| FamilyParams::OrderOne { s, j, m })
}

fn higher_order() -> impl Strategy<Value = FamilyParams> {
    (0u64..=2, 1u64..=3, 1u64..=3)
        .prop_flat_map(|(s, j, p)| (Just(s), Just(j), 0..=((2 * p - 1) * j) as i64, Just(p)))
        .prop_map(|(s, j, m, p)| FamilyParams::HigherOrder { s, j, m, p })
}

fn superposed() -> impl Strategy<Value = FamilyParams> {
    (0u64..=2, 1u64..=3, 1u64..=3)
        .prop_flat_map(|(s, j, p)| (Just(s), Just(j), 0..=(p * j) as i64, Just(p)))
        .prop_map(|(s, j, m, p)| FamilyParams::Superposed {
            s,
            j,
            m,
            p,
            exploratory: false,
        })
}

fn solved_family() -> impl Strategy<Value = FamilyParams> {
    prop_oneof![order_one(), higher_order(), superposed()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn evaluation_is_prefix_stable(family in solved_family(), a in 1u64..400, b in 1u64..400) {
        let spec = family.recursion_of().unwrap();
        let len = family.ic_length().unwrap();
        let ic = initial_conditions(&family.tree_of().unwrap(), len);
        let (short, long) = (a.min(b).max(len), a.max(b).max(len));
        let x = evaluate(&spec, &ic, short).unwrap();
        let y = evaluate(&spec, &ic, long).unwrap();
        prop_assert_eq!(&y.values[..x.values.len()], &x.values[..]);
    }

    #[test]
    fn cell_counts_are_slow(spec in tree_spec(), n in 1u64..3000) {
        let counts = initial_conditions(&spec, n);
        prop_assert_eq!(is_slow(&counts), Slowness::Slow);
        prop_assert_eq!(counts[0], 1);
        prop_assert!(counts.iter().enumerate().all(|(i, &c)| c <= i as u64 + 1));
        prop_assert_eq!(*counts.last().unwrap(), cell_count(&spec, n));
    }

    #[test]
    fn split_sums_to_total(spec in tree_spec(), n in 1u64..3000) {
        let split = cell_count_split(&spec, n);
        prop_assert_eq!(split.len() as u64, spec.arity());
        prop_assert_eq!(split.iter().sum::<u64>(), cell_count(&spec, n));
    }

    // The position of the last occurrence of v is the running sum of the
    // frequencies, computed here by a direct scan.
    #[test]
    fn last_occurrence_is_frequency_sum(spec in tree_spec(), n in 50u64..3000) {
        let counts = initial_conditions(&spec, n);
        let freq = frequency_of(&counts).unwrap();
        let h = freq.last_occurrences().unwrap();
        for (i, &hv) in h.iter().enumerate() {
            let v = i as u64 + 1;
            let last = counts.iter().rposition(|&c| c == v).unwrap() as i64 + 1;
            prop_assert_eq!(hv, last);
        }
    }

    #[test]
    fn closed_form_is_additive(a in tree_spec(), b in tree_spec(), ma in 1u64..4, mb in 1u64..4, v in 1u64..5000) {
        let b = TreeSpec::new(
            a.arity(),
            b.supernode_labels(),
            a.leaf_cells(),
            b.per_cell(),
            b.last_cell(),
            b.regular_labels(),
        )
        .unwrap();
        let sum = superpose(&[(ma, a), (mb, b)]).unwrap();
        prop_assert_eq!(closed_form(&sum, v), ma * closed_form(&a, v) + mb * closed_form(&b, v));
    }

    #[test]
    fn prune_identity_on_random_sizes(family in solved_family(), seed in any::<u64>()) {
        let rule = family.prune_rule().unwrap();
        let spec = family.tree_of().unwrap();
        for n in sample_sizes(&rule, rule.min_n() + 300, 3, seed).unwrap() {
            let report = prune(&build_prefix(&spec, n), rule).unwrap();
            prop_assert!(report.identity, "{} at n={}", family, n);
            prop_assert_eq!(report.removed, report.expected_removed);
        }
    }
}

#[test]
fn supernodes_follow_leaf_powers() {
    for k in 2..=4u64 {
        let top: u32 = if k == 2 { 12 } else { 7 };
        let count = ((k.pow(top + 1) - 1) / (k - 1) + 2) as usize;
        let nodes = enumerate_nodes(k, count);
        for i in 1..=top {
            let ordinal = (k.pow(i) - 1) / (k - 1) + 1;
            let at = nodes.iter().position(|d| d.kind == NodeKind::Supernode(i)).unwrap();
            assert_eq!(nodes[at].ordinal, ordinal, "k={k} S{i}");
            assert_eq!(nodes[at - 1].kind, NodeKind::Leaf(k.pow(i - 1)), "k={k} S{i}");
            if i > 1 {
                let parent = nodes.iter().position(|d| d.kind == NodeKind::Supernode(i - 1)).unwrap();
                assert_eq!(nodes[parent].parent_ordinal, Some(ordinal));
            }
        }
    }
}

#[test]
fn regular_nodes_between_leaves_count_the_valuation() {
    for k in 2..=5u64 {
        let nodes = enumerate_nodes(k, 4000);
        let leaves: Vec<usize> = nodes
            .iter()
            .enumerate()
            .filter(|(_, d)| d.is_leaf())
            .map(|(i, _)| i)
            .collect();
        for h in 1..leaves.len().min(2000) {
            let between = nodes[leaves[h - 1] + 1..leaves[h]]
                .iter()
                .filter(|d| matches!(d.kind, NodeKind::Regular(_)))
                .count() as u64;
            let mut e = 0;
            let mut w = h as u64;
            while w.is_multiple_of(k) {
                w /= k;
                e += 1;
            }
            assert_eq!(between, e, "k={k} h={h}");
            assert_eq!(regular_nodes_between_leaves(k, h as u64), e);
        }
    }
}
