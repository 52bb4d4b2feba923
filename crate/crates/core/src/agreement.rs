//! Agreement between an EFA factor partition and an IB cluster partition.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ib::Partition;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgreementReport {
    pub concordant_items: BTreeSet<String>,
    pub discordant_items: BTreeSet<String>,
    /// (factor group, cluster group) pairs chosen by greedy maximum overlap.
    pub matched_group_pairs: Vec<(usize, usize)>,
    /// Rand index over all unordered item pairs.
    pub pairwise_agreement: f64,
    pub exact_match: bool,
}

/// Fraction of unordered item pairs grouped consistently by both partitions.
pub fn rand_index(a: &Partition, b: &Partition) -> f64 {
    let items: Vec<&String> = a.groups.keys().collect();
    let n = items.len();
    if n < 2 {
        return 1.0;
    }
    let mut agree = 0usize;
    let mut total = 0usize;
    for i in 0..n {
        for j in (i + 1)..n {
            let same_a = a.groups[items[i]] == a.groups[items[j]];
            let same_b = b.groups[items[i]] == b.groups[items[j]];
            agree += usize::from(same_a == same_b);
            total += 1;
        }
    }
    agree as f64 / total as f64
}

/// Matches groups greedily by largest intersection and marks items whose
/// factor and cluster were not matched to each other as discordant.
///
/// Ties between equal-size intersections go to the one holding the
/// smallest item identifier, which keeps the result independent of group
/// labels and of argument order.
pub fn compare(factors: &Partition, clusters: &Partition) -> Result<AgreementReport> {
    let a_items: BTreeSet<&String> = factors.groups.keys().collect();
    let b_items: BTreeSet<&String> = clusters.groups.keys().collect();
    if a_items != b_items {
        let diff = a_items
            .symmetric_difference(&b_items)
            .map(|s| s.to_string())
            .collect();
        return Err(Error::ItemSetMismatch { items: diff });
    }

    // (overlap size, smallest item, factor group, cluster group)
    let mut cells: Vec<(usize, &String, usize, usize)> = Vec::new();
    for item in &a_items {
        let fa = factors.groups[*item];
        let cb = clusters.groups[*item];
        match cells.iter_mut().find(|c| c.2 == fa && c.3 == cb) {
            Some(c) => c.0 += 1,
            None => cells.push((1, item, fa, cb)),
        }
    }
    cells.sort_by(|x, y| y.0.cmp(&x.0).then_with(|| x.1.cmp(y.1)));

    let mut used_a = BTreeSet::new();
    let mut used_b = BTreeSet::new();
    let mut matched = Vec::new();
    for &(_, _, fa, cb) in &cells {
        if !used_a.contains(&fa) && !used_b.contains(&cb) {
            used_a.insert(fa);
            used_b.insert(cb);
            matched.push((fa, cb));
        }
    }

    let mut concordant = BTreeSet::new();
    let mut discordant = BTreeSet::new();
    for item in a_items {
        let pair = (factors.groups[item], clusters.groups[item]);
        if matched.contains(&pair) {
            concordant.insert(item.clone());
        } else {
            discordant.insert(item.clone());
        }
    }
    matched.sort_unstable();
    Ok(AgreementReport {
        exact_match: discordant.is_empty(),
        concordant_items: concordant,
        discordant_items: discordant,
        matched_group_pairs: matched,
        pairwise_agreement: rand_index(factors, clusters),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(assign: &[usize]) -> Partition {
        let items: Vec<String> = (1..=assign.len()).map(|i| format!("i{i:02}")).collect();
        let k = assign.iter().max().map_or(0, |m| m + 1);
        Partition::from_assignment(&items, assign, k).unwrap()
    }

    #[test]
    fn identical_partitions_match() {
        let a = part(&[0, 0, 1, 1, 2]);
        let r = compare(&a, &a).unwrap();
        assert!(r.exact_match);
        assert_eq!(r.pairwise_agreement, 1.0);
        assert_eq!(r.matched_group_pairs, vec![(0, 0), (1, 1), (2, 2)]);
    }

    #[test]
    fn crossed_pairs_rand_index() {
        // {1,2}{3,4} vs {1,3}{2,4}: pairs 14 and 23 are separated in both
        let r = compare(&part(&[0, 0, 1, 1]), &part(&[0, 1, 0, 1])).unwrap();
        assert!((r.pairwise_agreement - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn single_item_disagreement() {
        let mut fa = vec![0; 11];
        fa.extend([1, 1, 1, 1, 2, 2, 2]);
        let mut cb = fa.clone();
        cb[11] = 0; // the fourth-factor-2 item joins the big cluster
        let r = compare(&part(&fa), &part(&cb)).unwrap();
        assert_eq!(r.discordant_items, BTreeSet::from(["i12".to_string()]));
        assert!(!r.exact_match);
    }

    #[test]
    fn mismatched_items_error() {
        let a = part(&[0, 1]);
        let b = Partition::from_assignment(&["i01".into(), "zz".into()], &[0, 1], 2).unwrap();
        match compare(&a, &b) {
            Err(Error::ItemSetMismatch { items }) => assert_eq!(items, vec!["i02", "zz"]),
            other => panic!("unexpected {other:?}"),
        }
    }
}
