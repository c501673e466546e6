use std::fmt;

use super::{singleton, Algebra, Cell, MatrixError};

pub const MAX_CONGRUENCE_ELEMENTS: usize = 8;

/// A partition of the elements; blocks are sorted, and ordered by their
/// least member.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    pub blocks: Vec<Vec<usize>>,
}

impl Congruence {
    fn from_labels(labels: &[usize]) -> Congruence {
        let k = labels.iter().copied().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); k];
        for (x, &l) in labels.iter().enumerate() {
            blocks[l].push(x);
        }
        Congruence { blocks }
    }

    pub fn identity(n: usize) -> Congruence {
        Congruence {
            blocks: (0..n).map(|x| vec![x]).collect(),
        }
    }

    pub fn total(n: usize) -> Congruence {
        Congruence {
            blocks: vec![(0..n).collect()],
        }
    }

    pub fn is_identity(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }

    pub fn is_total(&self) -> bool {
        self.blocks.len() == 1
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.blocks.iter().position(|b| b.contains(&x)).expect("partitions cover")
    }

    /// Each block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Congruence) -> bool {
        self.blocks
            .iter()
            .all(|b| b.iter().all(|&x| other.block_of(x) == other.block_of(b[0])))
    }

    /// No block straddles `set`.
    pub fn compatible_with(&self, set: Cell) -> bool {
        self.blocks.iter().all(|b| {
            let inside = b.iter().filter(|&&x| set & singleton(x) != 0).count();
            inside == 0 || inside == b.len()
        })
    }

    /// `Delta`, `Nabla`, or the blocks spelled with element names.
    pub fn describe(&self, a: &Algebra) -> String {
        if self.is_identity() {
            return "Delta".into();
        }
        if self.is_total() {
            return "Nabla".into();
        }
        self.blocks
            .iter()
            .map(|b| {
                let names: Vec<&str> = b.iter().map(|&x| a.elements[x].as_str()).collect();
                format!("{{{}}}", names.join(","))
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .blocks
            .iter()
            .map(|b| format!("{b:?}"))
            .collect();
        write!(f, "{}", blocks.join(" "))
    }
}

fn compatible(a: &Algebra, labels: &[usize]) -> bool {
    let n = a.len();
    for (c, table) in &a.ops {
        match c.arity() {
            1 => {
                for x in 0..n {
                    for y in x + 1..n {
                        if labels[x] == labels[y] && labels[out(table[x])] != labels[out(table[y])] {
                            return false;
                        }
                    }
                }
            }
            _ => {
                for x1 in 0..n {
                    for x2 in 0..n {
                        if labels[x1] != labels[x2] {
                            continue;
                        }
                        for y1 in 0..n {
                            for y2 in 0..n {
                                if labels[y1] == labels[y2]
                                    && labels[out(table[x1 * n + y1])] != labels[out(table[x2 * n + y2])]
                                {
                                    return false;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    true
}

fn out(c: Cell) -> usize {
    c.trailing_zeros() as usize
}

/// Every congruence, by brute force over set partitions (restricted growth
/// strings), in generation order.
pub fn congruences(a: &Algebra) -> Result<Vec<Congruence>, MatrixError> {
    let n = a.len();
    if n > MAX_CONGRUENCE_ELEMENTS {
        return Err(MatrixError::TooLarge {
            what: "congruence search",
            limit: MAX_CONGRUENCE_ELEMENTS,
            got: n,
        });
    }
    if !a.is_deterministic() {
        return Err(MatrixError::NotDeterministic("congruence search"));
    }
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    partitions(a, 1, 0, &mut labels, &mut out);
    Ok(out)
}

fn partitions(a: &Algebra, i: usize, max: usize, labels: &mut Vec<usize>, out: &mut Vec<Congruence>) {
    if i >= labels.len() {
        if compatible(a, labels) {
            out.push(Congruence::from_labels(labels));
        }
        return;
    }
    for l in 0..=max + 1 {
        labels[i] = l;
        partitions(a, i + 1, max.max(l), labels, out);
    }
}

/// The largest congruence compatible with `filter`.
pub fn leibniz(a: &Algebra, filter: Cell) -> Result<Congruence, MatrixError> {
    let candidates: Vec<Congruence> = congruences(a)?
        .into_iter()
        .filter(|c| c.compatible_with(filter))
        .collect();
    candidates
        .iter()
        .find(|c| candidates.iter().all(|d| d.refines(c)))
        .cloned()
        .ok_or(MatrixError::NoLargestCongruence)
}
