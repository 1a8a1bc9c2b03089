//! Nested chains of finite sets.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// A chain `A_1 ⊆ A_2 ⊆ ... ⊆ A_L` of finite sets.
///
/// Each level keeps its elements in the order they were supplied (without
/// duplicates) so serialization can follow a caller-chosen canonical order.
/// Equality is set equality, level by level.
#[derive(Debug, Clone)]
pub struct GradedFamily<T> {
    levels: Vec<Vec<T>>,
}

impl<T: Ord + Clone> GradedFamily<T> {
    pub fn levels(&self) -> &[Vec<T>] {
        &self.levels
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn level_set(&self, index: usize) -> BTreeSet<T> {
        self.levels[index].iter().cloned().collect()
    }

    pub fn top(&self) -> &[T] {
        &self.levels[self.levels.len() - 1]
    }
}

impl<T: Ord + Clone> PartialEq for GradedFamily<T> {
    fn eq(&self, other: &Self) -> bool {
        self.levels.len() == other.levels.len()
            && (0..self.levels.len()).all(|i| self.level_set(i) == other.level_set(i))
    }
}

fn dedup_in_order<T: Ord + Clone>(level: Vec<T>) -> Vec<T> {
    let mut seen = BTreeSet::new();
    level.into_iter().filter(|x| seen.insert(x.clone())).collect()
}

/// Accepts `levels` when every level is contained in the next one
/// (equality allowed); otherwise names the first offending pair.
pub fn validate_graded<T: Ord + Clone>(levels: Vec<Vec<T>>) -> Result<GradedFamily<T>> {
    if levels.is_empty() {
        return Err(Error::EmptyChain);
    }
    let levels: Vec<Vec<T>> = levels.into_iter().map(dedup_in_order).collect();
    for (index, pair) in levels.windows(2).enumerate() {
        let next: BTreeSet<&T> = pair[1].iter().collect();
        if !pair[0].iter().all(|x| next.contains(x)) {
            return Err(Error::NotNested { index });
        }
    }
    Ok(GradedFamily { levels })
}

/// A two-level chain reads as a (lower, upper) rough pair.
pub fn is_rough_family<T>(family: &GradedFamily<T>) -> bool {
    family.levels.len() == 2
}
