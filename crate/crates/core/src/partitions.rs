//! Partitions of a finite universe and granular sets built from them.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::error::{Error, Result};

/// Disjoint nonempty blocks covering a finite universe of object ids.
///
/// The universe keeps a fixed order (for tables, row order). Blocks are
/// stored canonically: each block sorted by that order, blocks sorted by
/// their first element. Equality compares blocks as sets.
#[derive(Debug, Clone)]
pub struct Partition {
    universe: Vec<String>,
    blocks: Vec<Vec<String>>,
}

impl Partition {
    /// Builds a partition over an ordered `universe`, rejecting empty,
    /// overlapping, foreign or missing elements.
    pub fn new(universe: Vec<String>, blocks: Vec<Vec<String>>) -> Result<Self> {
        let mut rank = HashMap::with_capacity(universe.len());
        for (i, id) in universe.iter().enumerate() {
            if rank.insert(id.as_str(), i).is_some() {
                return Err(Error::InvalidPartition(format!("object {id:?} repeated in universe")));
            }
        }
        let mut seen = HashSet::with_capacity(universe.len());
        let mut ranked: Vec<Vec<usize>> = Vec::with_capacity(blocks.len());
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            let mut idx = Vec::with_capacity(block.len());
            for id in block {
                let &r = rank
                    .get(id.as_str())
                    .ok_or_else(|| Error::InvalidPartition(format!("object {id:?} not in universe")))?;
                if !seen.insert(r) {
                    return Err(Error::InvalidPartition(format!("object {id:?} in two blocks")));
                }
                idx.push(r);
            }
            idx.sort_unstable();
            ranked.push(idx);
        }
        if seen.len() != universe.len() {
            return Err(Error::InvalidPartition("blocks do not cover the universe".into()));
        }
        ranked.sort_unstable_by_key(|b| b[0]);
        let blocks = ranked
            .into_iter()
            .map(|b| b.into_iter().map(|r| universe[r].clone()).collect())
            .collect();
        Ok(Partition { universe, blocks })
    }

    /// Builds a partition whose universe is the blocks' elements in
    /// order of appearance.
    pub fn from_blocks(blocks: Vec<Vec<String>>) -> Result<Self> {
        let universe = blocks.iter().flatten().cloned().collect();
        Self::new(universe, blocks)
    }

    pub fn universe(&self) -> &[String] {
        &self.universe
    }

    pub fn blocks(&self) -> &[Vec<String>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// The block `[x]` containing `x`.
    pub fn block_of(&self, x: &str) -> Option<&[String]> {
        self.blocks.iter().find(|b| b.iter().any(|y| y == x)).map(Vec::as_slice)
    }

    fn same_universe(&self, other: &Partition) -> bool {
        self.universe.len() == other.universe.len() && {
            let mine: HashSet<&String> = self.universe.iter().collect();
            other.universe.iter().all(|x| mine.contains(x))
        }
    }

    fn block_sets(&self) -> BTreeSet<BTreeSet<&str>> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(String::as_str).collect())
            .collect()
    }
}

impl PartialEq for Partition {
    fn eq(&self, other: &Self) -> bool {
        self.same_universe(other) && self.block_sets() == other.block_sets()
    }
}

/// True when every block of `finer` lies inside a block of `coarser`.
pub fn refines(finer: &Partition, coarser: &Partition) -> Result<bool> {
    if !finer.same_universe(coarser) {
        return Err(Error::UniverseMismatch);
    }
    let owner: HashMap<&str, usize> = coarser
        .blocks
        .iter()
        .enumerate()
        .flat_map(|(i, b)| b.iter().map(move |x| (x.as_str(), i)))
        .collect();
    Ok(finer.blocks.iter().all(|block| {
        let home = owner[block[0].as_str()];
        block[1..].iter().all(|x| owner[x.as_str()] == home)
    }))
}

/// Direction in which a list of partitions is supplied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LevelOrder {
    FinestFirst,
    CoarsestFirst,
}

/// Partitions of one universe, finest first, each refining the next.
#[derive(Debug, Clone, PartialEq)]
pub struct GranularSet {
    levels: Vec<Partition>,
}

impl GranularSet {
    /// Normalizes `partitions` to finest-first and checks adjacent
    /// refinement. Error indices refer to positions in the input list.
    pub fn new(partitions: Vec<Partition>, order: LevelOrder) -> Result<Self> {
        if partitions.is_empty() {
            return Err(Error::EmptyChain);
        }
        let n = partitions.len();
        let mut levels = partitions;
        if order == LevelOrder::CoarsestFirst {
            levels.reverse();
        }
        for (i, pair) in levels.windows(2).enumerate() {
            if !refines(&pair[0], &pair[1])? {
                let index = match order {
                    LevelOrder::FinestFirst => i,
                    LevelOrder::CoarsestFirst => n - 2 - i,
                };
                return Err(Error::NotGranular { index });
            }
        }
        Ok(GranularSet { levels })
    }

    /// Finest first.
    pub fn levels(&self) -> &[Partition] {
        &self.levels
    }

    pub fn finest(&self) -> &Partition {
        &self.levels[0]
    }

    pub fn coarsest(&self) -> &Partition {
        &self.levels[self.levels.len() - 1]
    }
}

/// Validates a finest-first list of partitions as a granular set.
pub fn validate_granular(partitions: Vec<Partition>) -> Result<GranularSet> {
    GranularSet::new(partitions, LevelOrder::FinestFirst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn part(blocks: &[&[u32]]) -> Partition {
        Partition::from_blocks(
            blocks
                .iter()
                .map(|b| b.iter().map(|x| x.to_string()).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn construction_errors() {
        let u = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        assert!(Partition::new(u(&["a", "b"]), vec![u(&["a"]), vec![], u(&["b"])]).is_err());
        assert!(Partition::new(u(&["a", "b"]), vec![u(&["a", "b"]), u(&["b"])]).is_err());
        assert!(Partition::new(u(&["a", "b"]), vec![u(&["a"])]).is_err());
        assert!(Partition::new(u(&["a"]), vec![u(&["a", "c"])]).is_err());
        assert!(Partition::new(u(&["a", "a"]), vec![u(&["a"])]).is_err());
    }

    #[test]
    fn canonical_order_follows_universe() {
        let universe: Vec<String> = ["O1", "O2", "O10", "O3"].iter().map(|s| s.to_string()).collect();
        let p = Partition::new(
            universe,
            vec![vec!["O3".into(), "O2".into()], vec!["O10".into(), "O1".into()]],
        )
        .unwrap();
        assert_eq!(
            p.blocks(),
            &[
                vec!["O1".to_string(), "O10".to_string()],
                vec!["O2".to_string(), "O3".to_string()]
            ]
        );
        assert_eq!(p.block_of("O3").unwrap().len(), 2);
    }

    #[test]
    fn refines_examples() {
        let singletons = part(&[&[1], &[2], &[3]]);
        let pair = part(&[&[1, 2], &[3]]);
        let other = part(&[&[1, 3], &[2]]);
        assert!(refines(&singletons, &pair).unwrap());
        assert!(!refines(&pair, &other).unwrap());
        assert!(refines(&pair, &pair).unwrap());
        assert_eq!(refines(&pair, &part(&[&[1, 2]])), Err(Error::UniverseMismatch));
    }

    #[test]
    fn granular_validation() {
        assert!(validate_granular(vec![part(&[&[1, 2], &[3]])]).is_ok());
        assert_eq!(
            validate_granular(vec![part(&[&[1, 2], &[3]]), part(&[&[1, 3], &[2]])]).unwrap_err(),
            Error::NotGranular { index: 0 }
        );
        assert_eq!(validate_granular(vec![]).unwrap_err(), Error::EmptyChain);

        let fine = part(&[&[1], &[2], &[3]]);
        let mid = part(&[&[1, 2], &[3]]);
        let coarse = part(&[&[1, 2, 3]]);
        let g = GranularSet::new(
            vec![coarse.clone(), mid.clone(), fine.clone()],
            LevelOrder::CoarsestFirst,
        )
        .unwrap();
        assert_eq!(g.finest(), &fine);
        assert_eq!(g.coarsest(), &coarse);

        let err = GranularSet::new(
            vec![coarse, part(&[&[1, 3], &[2]]), mid, fine],
            LevelOrder::CoarsestFirst,
        )
        .unwrap_err();
        assert_eq!(err, Error::NotGranular { index: 1 });
    }

    fn labels_to_partition(labels: &[u8]) -> Partition {
        let universe: Vec<String> = (0..labels.len()).map(|i| format!("x{i}")).collect();
        let mut groups: Vec<(u8, Vec<String>)> = Vec::new();
        for (i, &l) in labels.iter().enumerate() {
            match groups.iter_mut().find(|(g, _)| *g == l) {
                Some((_, members)) => members.push(universe[i].clone()),
                None => groups.push((l, vec![universe[i].clone()])),
            }
        }
        Partition::new(universe, groups.into_iter().map(|(_, b)| b).collect()).unwrap()
    }

    // Brute force: every finer block is a subset of some coarser block.
    fn refines_oracle(finer: &Partition, coarser: &Partition) -> bool {
        finer
            .blocks()
            .iter()
            .all(|fb| coarser.blocks().iter().any(|cb| fb.iter().all(|x| cb.contains(x))))
    }

    fn labels(n: usize) -> impl Strategy<Value = Vec<u8>> {
        prop::collection::vec(0u8..4, n)
    }

    proptest! {
        #[test]
        fn refinement_order_laws(
            (a, b, c) in (1usize..=8).prop_flat_map(|n| (labels(n), labels(n), labels(n)))
        ) {
            let (p, q, r) = (labels_to_partition(&a), labels_to_partition(&b), labels_to_partition(&c));
            prop_assert!(refines(&p, &p).unwrap());
            prop_assert_eq!(refines(&p, &q).unwrap(), refines_oracle(&p, &q));
            if refines(&p, &q).unwrap() && refines(&q, &r).unwrap() {
                prop_assert!(refines(&p, &r).unwrap());
            }
            if refines(&p, &q).unwrap() && refines(&q, &p).unwrap() {
                prop_assert_eq!(&p, &q);
            }
        }

        #[test]
        fn granular_iff_adjacent_refinement(
            ls in (1usize..=6).prop_flat_map(|n| prop::collection::vec(labels(n), 1..5))
        ) {
            let ps: Vec<Partition> = ls.iter().map(|l| labels_to_partition(l)).collect();
            let adjacent = ps.windows(2).all(|w| refines(&w[0], &w[1]).unwrap());
            prop_assert_eq!(validate_granular(ps).is_ok(), adjacent);
        }
    }
}
