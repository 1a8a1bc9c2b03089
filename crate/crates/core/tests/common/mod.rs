//! Seeded generators and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::path::PathBuf;

use granset::{validate_graded, GradedFamily, InformationTable, Interval, Partition};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn sample_table() -> InformationTable {
    granset::io::parse_table(&std::fs::read_to_string(fixture("sample_table.csv")).unwrap()).unwrap()
}

/// Blocks given as object numbers, e.g. `&[&[1, 2], &[3]]` for `{O_1, O_2}, {O_3}`.
pub fn sample_blocks(blocks: &[&[u32]]) -> Partition {
    Partition::from_blocks(
        blocks
            .iter()
            .map(|b| b.iter().map(|i| format!("O_{i}")).collect())
            .collect(),
    )
    .unwrap()
}

/// The classes C_1..C_5 as listed for the sample table.
pub fn sample_classes() -> Vec<Partition> {
    let c1 = sample_blocks(&[&[1, 2], &[3, 5, 7, 9, 10], &[4, 6, 8]]);
    let c2 = sample_blocks(&[&[1, 2], &[3, 7, 10], &[4, 6], &[5, 9], &[8]]);
    let c3 = c2.clone();
    let c4 = c2.clone();
    let c5 = sample_blocks(&[&[1, 2], &[3, 7, 10], &[4], &[5], &[6], &[8], &[9]]);
    vec![c1, c2, c3, c4, c5]
}

pub fn sample_attrs(n: usize) -> Vec<String> {
    (1..=n).map(|j| format!("P_{j}")).collect()
}

/// Endpoints on a quarter-unit grid in [-10, 15].
pub fn random_intervals<R: Rng>(rng: &mut R, max_len: usize) -> Vec<Interval> {
    let len = rng.gen_range(1..=max_len);
    (0..len)
        .map(|_| {
            let lo = rng.gen_range(-40..=40);
            let width = rng.gen_range(0..=20);
            Interval::new(lo as f64 * 0.25, (lo + width) as f64 * 0.25).unwrap()
        })
        .collect()
}

/// Intervals of which exactly `excluded` miss `truth`, in random order.
pub fn intervals_around<R: Rng>(rng: &mut R, truth: f64, len: usize, excluded: usize) -> Vec<Interval> {
    let mut out: Vec<Interval> = (0..len)
        .map(|i| {
            let a = rng.gen_range(0..=12) as f64 * 0.25;
            let b = rng.gen_range(0..=12) as f64 * 0.25;
            if i < excluded {
                let gap = rng.gen_range(1..=8) as f64 * 0.25;
                if rng.gen() {
                    Interval::new(truth + gap, truth + gap + a).unwrap()
                } else {
                    Interval::new(truth - gap - a, truth - gap).unwrap()
                }
            } else {
                Interval::new(truth - a, truth + b).unwrap()
            }
        })
        .collect();
    out.shuffle(rng);
    out
}

/// Up to 12 objects, 6 attributes, values from an alphabet of up to 4.
pub fn random_table<R: Rng>(rng: &mut R) -> InformationTable {
    let n = rng.gen_range(1..=12);
    let m = rng.gen_range(1..=6);
    let k = rng.gen_range(1..=4);
    InformationTable::new(
        (0..n).map(|i| format!("o{i}")).collect(),
        (0..m).map(|j| format!("a{j}")).collect(),
        (0..n)
            .map(|_| (0..m).map(|_| rng.gen_range(0..k).to_string()).collect())
            .collect(),
    )
    .unwrap()
}

/// Nested prefixes of a random permutation of `items`.
pub fn random_chain<R: Rng>(rng: &mut R, items: &[String], max_levels: usize) -> GradedFamily<String> {
    let mut order = items.to_vec();
    order.shuffle(rng);
    let levels = rng.gen_range(1..=max_levels);
    let mut cuts: Vec<usize> = (0..levels).map(|_| rng.gen_range(0..=order.len())).collect();
    cuts.sort_unstable();
    validate_graded(cuts.into_iter().map(|c| order[..c].to_vec()).collect()).unwrap()
}

pub fn random_subset<R: Rng>(rng: &mut R, items: &[String]) -> Vec<String> {
    items.iter().filter(|_| rng.gen()).cloned().collect()
}

/// Indiscernibility by pairwise comparison of rows: each object's class is
/// the set of all objects agreeing with it on every listed attribute.
pub fn indiscernibility_oracle(table: &InformationTable, attrs: &[String]) -> Vec<Vec<String>> {
    let cols: Vec<usize> = attrs
        .iter()
        .map(|a| table.attributes().iter().position(|x| x == a).unwrap())
        .collect();
    let n = table.objects().len();
    let agree = |i: usize, j: usize| cols.iter().all(|&c| table.value(i, c) == table.value(j, c));
    let mut classes: Vec<Vec<String>> = Vec::new();
    for i in 0..n {
        let class: Vec<String> = (0..n)
            .filter(|&j| agree(i, j))
            .map(|j| table.objects()[j].clone())
            .collect();
        if !classes.contains(&class) {
            classes.push(class);
        }
    }
    classes
}

/// Brute-force rough approximations from the oracle classes.
pub fn approximation_oracle(
    table: &InformationTable,
    attrs: &[String],
    target: &[String],
) -> (Vec<String>, Vec<String>) {
    let classes = indiscernibility_oracle(table, attrs);
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    for x in table.objects() {
        let class = classes.iter().find(|c| c.contains(x)).unwrap();
        if class.iter().all(|y| target.contains(y)) {
            lower.push(x.clone());
        }
        if class.iter().any(|y| target.contains(y)) {
            upper.push(x.clone());
        }
    }
    (lower, upper)
}

pub fn is_subset(a: &[String], b: &[String]) -> bool {
    a.iter().all(|x| b.contains(x))
}
