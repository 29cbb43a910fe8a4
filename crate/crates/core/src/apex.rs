//! Exact apex numbers: the fewest vertices whose removal lands in a class.

use crate::class::{in_class_within, ClassId};
use crate::graph::{full_mask, Graph};

/// All `s`-element subsets of `{0..n}` as bitmasks, in increasing order.
pub fn subsets_of_size(n: usize, s: usize) -> impl Iterator<Item = u32> {
    let limit: u64 = 1u64 << n;
    let mut cur: Option<u64> = if s > n { None } else { Some((1u64 << s) - 1) };
    std::iter::from_fn(move || {
        let x = cur?;
        if x >= limit {
            cur = None;
            return None;
        }
        cur = if x == 0 {
            None
        } else {
            // Gosper's hack
            let c = x & x.wrapping_neg();
            let r = x + c;
            Some((((r ^ x) >> 2) / c) | r)
        };
        Some(x as u32)
    })
}

/// A smallest-first search for a deletion set of size at most `k`.
pub fn apex_set_at_most(g: &Graph, c: ClassId, k: usize) -> Option<u32> {
    let all = full_mask(g.n());
    (0..=k.min(g.n()))
        .find_map(|s| subsets_of_size(g.n(), s).find(|&del| in_class_within(g, all & !del, c)))
}

/// Does deleting at most `k` vertices put `g` in `c`?
pub fn apex_at_most(g: &Graph, c: ClassId, k: usize) -> bool {
    apex_set_at_most(g, c, k).is_some()
}

/// Size of a smallest `S` with `g - S` in `c`.
pub fn min_apex_size(g: &Graph, c: ClassId) -> usize {
    apex_set_at_most(g, c, g.n())
        .map(|s| s.count_ones() as usize)
        .expect("the empty graph is in every class")
}

/// Every `s`-subset whose removal lands in `c`.
pub fn apex_sets_of_size(g: &Graph, c: ClassId, s: usize) -> Vec<u32> {
    let all = full_mask(g.n());
    subsets_of_size(g.n(), s)
        .filter(|&del| in_class_within(g, all & !del, c))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::make_named;

    #[test]
    fn subset_counts() {
        assert_eq!(subsets_of_size(5, 2).count(), 10);
        assert_eq!(subsets_of_size(5, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(subsets_of_size(3, 3).collect::<Vec<_>>(), vec![7]);
        assert_eq!(subsets_of_size(3, 4).count(), 0);
        assert_eq!(subsets_of_size(32, 1).count(), 32);
        assert_eq!(subsets_of_size(32, 32).count(), 1);
    }

    #[test]
    fn apex_examples() {
        assert_eq!(
            min_apex_size(&make_named("Z").unwrap(), ClassId::SubUnicyclic),
            1
        );
        assert_eq!(
            min_apex_size(&make_named("3K3").unwrap(), ClassId::SubUnicyclic),
            2
        );
        assert_eq!(
            min_apex_size(&make_named("K3").unwrap(), ClassId::SubUnicyclic),
            0
        );
        assert_eq!(
            min_apex_size(&make_named("3K3").unwrap(), ClassId::Forest),
            3
        );
        assert_eq!(
            min_apex_size(&make_named("K5").unwrap(), ClassId::Forest),
            3
        );
        assert_eq!(
            apex_sets_of_size(&make_named("Z").unwrap(), ClassId::Forest, 1),
            vec![1]
        );
    }
}
