//! Information tables and rough-set approximations.
//!
//! Objects are described by categorical attribute values. A set of
//! attributes induces an indiscernibility partition of the objects, and
//! a target set of objects is approximated from below and above by the
//! blocks of that partition.

use std::collections::{HashMap, HashSet};

use crate::chains::{validate_graded, GradedFamily};
use crate::error::{Error, Result};
use crate::partitions::{GranularSet, LevelOrder, Partition};

/// Objects by attributes, every cell an opaque token.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InformationTable {
    objects: Vec<String>,
    attributes: Vec<String>,
    values: Vec<Vec<String>>,
}

impl InformationTable {
    /// `values[i][j]` is the value of attribute `j` for object `i`.
    pub fn new(objects: Vec<String>, attributes: Vec<String>, values: Vec<Vec<String>>) -> Result<Self> {
        if let Some(dup) = first_duplicate(&objects) {
            return Err(Error::InvalidTable(format!("duplicate object {dup:?}")));
        }
        if let Some(dup) = first_duplicate(&attributes) {
            return Err(Error::InvalidTable(format!("duplicate attribute {dup:?}")));
        }
        if values.len() != objects.len() || values.iter().any(|row| row.len() != attributes.len()) {
            return Err(Error::InvalidTable("table is not rectangular".into()));
        }
        Ok(InformationTable {
            objects,
            attributes,
            values,
        })
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    pub fn value(&self, object: usize, attribute: usize) -> &str {
        &self.values[object][attribute]
    }

    pub fn rows(&self) -> &[Vec<String>] {
        &self.values
    }

    fn attribute_columns<S: AsRef<str>>(&self, attrs: &[S]) -> Result<Vec<usize>> {
        let mut cols: Vec<usize> = attrs
            .iter()
            .map(|a| {
                let a = a.as_ref();
                self.attributes
                    .iter()
                    .position(|x| x == a)
                    .ok_or_else(|| Error::UnknownAttribute(a.to_string()))
            })
            .collect::<Result<_>>()?;
        cols.sort_unstable();
        cols.dedup();
        Ok(cols)
    }

    fn object_mask<S: AsRef<str>>(&self, target: &[S]) -> Result<Vec<bool>> {
        let index: HashMap<&str, usize> = self.objects.iter().enumerate().map(|(i, o)| (o.as_str(), i)).collect();
        let mut mask = vec![false; self.objects.len()];
        for id in target {
            let id = id.as_ref();
            let &i = index.get(id).ok_or_else(|| Error::UnknownObject(id.to_string()))?;
            mask[i] = true;
        }
        Ok(mask)
    }

    /// Block membership of each row under `attrs`, blocks numbered by
    /// first appearance.
    fn block_labels<S: AsRef<str>>(&self, attrs: &[S]) -> Result<(Vec<usize>, usize)> {
        let cols = self.attribute_columns(attrs)?;
        let mut seen: HashMap<Vec<&str>, usize> = HashMap::new();
        let labels = self
            .values
            .iter()
            .map(|row| {
                let key: Vec<&str> = cols.iter().map(|&c| row[c].as_str()).collect();
                let next = seen.len();
                *seen.entry(key).or_insert(next)
            })
            .collect();
        Ok((labels, seen.len()))
    }
}

fn first_duplicate(items: &[String]) -> Option<&String> {
    let mut seen = HashSet::new();
    items.iter().find(|x| !seen.insert(x.as_str()))
}

/// Lower and upper approximation of a target set, objects in table order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproximationPair {
    pub lower: Vec<String>,
    pub upper: Vec<String>,
}

impl ApproximationPair {
    pub fn boundary(&self) -> Vec<String> {
        let lower: HashSet<&String> = self.lower.iter().collect();
        self.upper.iter().filter(|x| !lower.contains(x)).cloned().collect()
    }
}

/// Approximation sizes for one level of an attribute chain.
#[derive(Debug, Clone, PartialEq)]
pub struct SensitivityRecord {
    pub level_index: usize,
    pub attribute_count: usize,
    pub lower_size: usize,
    pub upper_size: usize,
    pub boundary_size: usize,
    pub accuracy: f64,
}

impl SensitivityRecord {
    fn from_sizes(level_index: usize, attribute_count: usize, lower_size: usize, upper_size: usize) -> Self {
        // 0/0 counts as perfectly accurate.
        let accuracy = if upper_size == 0 {
            1.0
        } else {
            lower_size as f64 / upper_size as f64
        };
        SensitivityRecord {
            level_index,
            attribute_count,
            lower_size,
            upper_size,
            boundary_size: upper_size - lower_size,
            accuracy,
        }
    }
}

/// Groups objects that agree on every attribute in `attrs`. With no
/// attributes every object is indiscernible from every other.
pub fn indiscernibility_partition<S: AsRef<str>>(table: &InformationTable, attrs: &[S]) -> Result<Partition> {
    let (labels, count) = table.block_labels(attrs)?;
    let mut blocks: Vec<Vec<String>> = vec![Vec::new(); count];
    for (object, &label) in table.objects.iter().zip(&labels) {
        blocks[label].push(object.clone());
    }
    Partition::new(table.objects.clone(), blocks)
}

/// Indiscernibility partitions along a nested attribute chain, returned as
/// a granular set. The largest attribute set gives the finest partition.
pub fn granular_from_chain(table: &InformationTable, chain: &GradedFamily<String>) -> Result<GranularSet> {
    let partitions = chain
        .levels()
        .iter()
        .map(|attrs| indiscernibility_partition(table, attrs))
        .collect::<Result<Vec<_>>>()?;
    GranularSet::new(partitions, LevelOrder::CoarsestFirst).map_err(|e| match e {
        Error::NotGranular { index } => Error::Internal(format!(
            "partitions for chain levels {index} and {} are not refinement-related",
            index + 1
        )),
        other => other,
    })
}

fn approximate_masks<A: AsRef<str>, T: AsRef<str>>(
    table: &InformationTable,
    attrs: &[A],
    target: &[T],
) -> Result<(Vec<bool>, Vec<bool>)> {
    let (labels, count) = table.block_labels(attrs)?;
    let mask = table.object_mask(target)?;
    let mut inside = vec![true; count];
    let mut touches = vec![false; count];
    for (&label, &hit) in labels.iter().zip(&mask) {
        inside[label] &= hit;
        touches[label] |= hit;
    }
    let lower = labels.iter().map(|&l| inside[l]).collect();
    let upper = labels.iter().map(|&l| touches[l]).collect();
    Ok((lower, upper))
}

fn select(table: &InformationTable, mask: &[bool]) -> Vec<String> {
    table
        .objects
        .iter()
        .zip(mask)
        .filter(|(_, &keep)| keep)
        .map(|(o, _)| o.clone())
        .collect()
}

/// Both approximations of `target` under `attrs`.
pub fn approximate<A: AsRef<str>, T: AsRef<str>>(
    table: &InformationTable,
    attrs: &[A],
    target: &[T],
) -> Result<ApproximationPair> {
    let (lower, upper) = approximate_masks(table, attrs, target)?;
    Ok(ApproximationPair {
        lower: select(table, &lower),
        upper: select(table, &upper),
    })
}

/// Union of the blocks lying entirely inside `target`.
pub fn lower_approx<A: AsRef<str>, T: AsRef<str>>(
    table: &InformationTable,
    attrs: &[A],
    target: &[T],
) -> Result<Vec<String>> {
    approximate(table, attrs, target).map(|pair| pair.lower)
}

/// Union of the blocks meeting `target`.
pub fn upper_approx<A: AsRef<str>, T: AsRef<str>>(
    table: &InformationTable,
    attrs: &[A],
    target: &[T],
) -> Result<Vec<String>> {
    approximate(table, attrs, target).map(|pair| pair.upper)
}

/// Approximates each level of a nested target chain. The resulting lower
/// and upper chains are validated, not assumed, to be nested.
pub fn graded_approximations<S: AsRef<str>>(
    table: &InformationTable,
    attrs: &[S],
    targets: &GradedFamily<String>,
) -> Result<(GradedFamily<String>, GradedFamily<String>)> {
    let attrs: Vec<&str> = attrs.iter().map(AsRef::as_ref).collect();
    let mut lowers = Vec::with_capacity(targets.len());
    let mut uppers = Vec::with_capacity(targets.len());
    for target in targets.levels() {
        let target: Vec<&str> = target.iter().map(String::as_str).collect();
        let pair = approximate(table, &attrs, &target)?;
        lowers.push(pair.lower);
        uppers.push(pair.upper);
    }
    let nested = |levels, which: &str| {
        validate_graded(levels).map_err(|e| match e {
            Error::NotNested { index } => Error::Internal(format!(
                "{which} approximations of targets {index} and {} are not nested",
                index + 1
            )),
            other => other,
        })
    };
    Ok((nested(lowers, "lower")?, nested(uppers, "upper")?))
}

/// One record per chain level, in chain order (fewest attributes first).
pub fn sensitivity_profile<S: AsRef<str>>(
    table: &InformationTable,
    chain: &GradedFamily<String>,
    target: &[S],
) -> Result<Vec<SensitivityRecord>> {
    let target: Vec<&str> = target.iter().map(AsRef::as_ref).collect();
    chain
        .levels()
        .iter()
        .enumerate()
        .map(|(i, attrs)| {
            let attrs: Vec<&str> = attrs.iter().map(String::as_str).collect();
            let (lower, upper) = approximate_masks(table, &attrs, &target)?;
            let count = |m: &[bool]| m.iter().filter(|&&b| b).count();
            Ok(SensitivityRecord::from_sizes(
                i,
                attrs.len(),
                count(&lower),
                count(&upper),
            ))
        })
        .collect()
}
