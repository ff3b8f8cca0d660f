//! Decision-tree classifier over discrete attributes: greedy top-down
//! induction by gain ratio, no pruning. It stands in for a C4.5-family
//! classifier so discretizers can be compared with everything else held
//! constant; its absolute accuracies are not comparable to other tree
//! implementations.

use std::collections::BTreeMap;

use crate::dataset::{AttrKind, Cell, Dataset};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Node {
    Leaf {
        class: u32,
    },
    Split {
        attr: usize,
        /// Majority class at this node, used for unseen branch values.
        fallback: u32,
        /// Children keyed by attribute code (0 = missing), ascending.
        children: Vec<(u32, Node)>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct TreeModel {
    root: Node,
    arity: usize,
    class_index: usize,
}

fn entropy(counts: &[u64]) -> f64 {
    let total: u64 = counts.iter().sum();
    if total == 0 {
        return 0.0;
    }
    let total = total as f64;
    counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / total;
            -p * p.log2()
        })
        .sum()
}

/// Cell key for branching: nominal code, or 0 for a missing cell.
fn branch_key(cell: &Cell) -> Result<u32> {
    match cell {
        Cell::Code(c) => Ok(*c),
        Cell::Missing => Ok(0),
        Cell::Number(_) => Err(Error::Unusable(
            "continuous attribute present; discretize first".into(),
        )),
    }
}

/// Majority class code; ties go to the smaller code.
fn majority(class_counts: &[u64]) -> u32 {
    let mut best = 0usize;
    for (i, &c) in class_counts.iter().enumerate() {
        if c > class_counts[best] {
            best = i;
        }
    }
    best as u32 + 1
}

struct Builder<'a> {
    ds: &'a Dataset,
    classes: Vec<u32>,
    class_slots: usize,
}

impl Builder<'_> {
    fn class_counts(&self, rows: &[usize]) -> Vec<u64> {
        let mut counts = vec![0u64; self.class_slots];
        for &r in rows {
            counts[(self.classes[r] - 1) as usize] += 1;
        }
        counts
    }

    fn build(&self, rows: &[usize], attrs: &[usize]) -> Result<Node> {
        let counts = self.class_counts(rows);
        let node_majority = majority(&counts);
        let pure = counts.iter().filter(|&&c| c > 0).count() <= 1;
        if pure || rows.len() < 2 || attrs.is_empty() {
            return Ok(Node::Leaf {
                class: node_majority,
            });
        }

        let ent_s = entropy(&counts);
        let n = rows.len() as f64;

        // Gain ratio per candidate attribute; an attribute qualifies only
        // if it takes at least two distinct values here, which keeps the
        // split information strictly positive.
        let mut best: Option<(f64, usize)> = None;
        for &attr in attrs {
            let mut groups: BTreeMap<u32, Vec<u64>> = BTreeMap::new();
            for &r in rows {
                let key = branch_key(&self.ds.rows[r][attr])?;
                groups
                    .entry(key)
                    .or_insert_with(|| vec![0u64; self.class_slots])
                    [(self.classes[r] - 1) as usize] += 1;
            }
            if groups.len() < 2 {
                continue;
            }
            let mut info = 0.0;
            let mut split_info = 0.0;
            for counts in groups.values() {
                let size: u64 = counts.iter().sum();
                let w = size as f64 / n;
                info += w * entropy(counts);
                split_info -= w * w.log2();
            }
            let ratio = (ent_s - info) / split_info;
            if best.map(|(b, _)| ratio > b).unwrap_or(true) {
                best = Some((ratio, attr));
            }
        }

        let (_, attr) = match best {
            Some(b) => b,
            None => {
                return Ok(Node::Leaf {
                    class: node_majority,
                })
            }
        };

        let mut partitions: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for &r in rows {
            partitions
                .entry(branch_key(&self.ds.rows[r][attr])?)
                .or_default()
                .push(r);
        }
        let remaining: Vec<usize> = attrs.iter().copied().filter(|&a| a != attr).collect();
        let mut children = Vec::with_capacity(partitions.len());
        for (key, group) in partitions {
            children.push((key, self.build(&group, &remaining)?));
        }
        Ok(Node::Split {
            attr,
            fallback: node_majority,
            children,
        })
    }
}

pub fn train_tree(train: &Dataset) -> Result<TreeModel> {
    train.validate()?;
    if train.rows.is_empty() {
        return Err(Error::EmptyDataset);
    }
    for attr in &train.attributes {
        if attr.kind == AttrKind::Continuous {
            return Err(Error::Unusable(format!(
                "attribute `{}` is continuous; discretize first",
                attr.name
            )));
        }
    }
    let attrs: Vec<usize> = (0..train.attributes.len())
        .filter(|&i| i != train.class_index)
        .collect();
    let builder = Builder {
        ds: train,
        classes: train.class_codes(),
        class_slots: train.class_count(),
    };
    let rows: Vec<usize> = (0..train.rows.len()).collect();
    Ok(TreeModel {
        root: builder.build(&rows, &attrs)?,
        arity: train.attributes.len(),
        class_index: train.class_index,
    })
}

/// Classifies one row (same layout as the training data). Unseen values at
/// a split fall back to that node's majority class.
pub fn predict(model: &TreeModel, row: &[Cell]) -> Result<u32> {
    if row.len() != model.arity {
        return Err(Error::Internal(format!(
            "instance has {} cells, model expects {}",
            row.len(),
            model.arity
        )));
    }
    let mut node = &model.root;
    loop {
        match node {
            Node::Leaf { class } => return Ok(*class),
            Node::Split {
                attr,
                fallback,
                children,
            } => {
                let key = branch_key(&row[*attr])?;
                match children.iter().find(|(k, _)| *k == key) {
                    Some((_, child)) => node = child,
                    None => return Ok(*fallback),
                }
            }
        }
    }
}

/// Percentage of test rows classified correctly: 100 * correct / total.
pub fn accuracy(model: &TreeModel, test: &Dataset) -> Result<f64> {
    if test.rows.is_empty() {
        return Err(Error::Param("test set is empty".into()));
    }
    let mut correct = 0usize;
    for row in &test.rows {
        let predicted = predict(model, row)?;
        if Cell::Code(predicted) == row[model.class_index] {
            correct += 1;
        }
    }
    Ok(100.0 * correct as f64 / test.rows.len() as f64)
}
