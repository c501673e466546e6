//! Consequence in a finite Nmatrix by exhaustive branching search.
//!
//! A legal valuation picks, for every non-atomic subformula, one member
//! of its cell. The search runs over atom assignments in lexicographic
//! order and then over the non-deterministic choices, so the reported
//! witness is the lexicographically first counter-valuation over the
//! subformula list. With factorization, premises and conclusion are split
//! into groups sharing no non-atomic subformula; once atoms are fixed the
//! groups' choices are independent and are searched one group at a time.

use std::collections::HashMap;

use crate::formula::{subformulas_of_all, Connective, Formula};

use super::{members, Matrix, MatrixError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NmatrixOptions {
    pub factorized: bool,
    /// Maximum number of value choices tried.
    pub step_cap: u64,
}

impl Default for NmatrixOptions {
    fn default() -> Self {
        NmatrixOptions {
            factorized: true,
            step_cap: 1 << 28,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NmatrixVerdict {
    pub valid: bool,
    /// A counter-valuation over the subformula list, when invalid.
    pub witness: Option<Vec<(Formula, usize)>>,
    pub steps: u64,
}

enum Shape {
    Atom,
    Op(Connective, Vec<usize>),
}

struct Problem<'m> {
    m: &'m Matrix,
    shapes: Vec<Shape>,
    /// Wanted designation per column.
    want: Vec<Option<bool>>,
    steps: u64,
    cap: u64,
}

impl Problem<'_> {
    fn tick(&mut self) -> Result<(), MatrixError> {
        self.steps += 1;
        if self.steps > self.cap {
            return Err(MatrixError::SearchCap(self.cap));
        }
        Ok(())
    }

    /// First extension of `vals` over `cols[k..]` meeting the wants.
    fn solve(&mut self, cols: &[usize], k: usize, vals: &mut Vec<usize>) -> Result<bool, MatrixError> {
        let Some(&c) = cols.get(k) else {
            return Ok(true);
        };
        let Shape::Op(op, args) = &self.shapes[c] else {
            unreachable!("only compound columns are searched")
        };
        let argv: Vec<usize> = args.iter().map(|&a| vals[a]).collect();
        let cell = self.m.algebra.cell(*op, &argv)?;
        for x in members(cell) {
            self.tick()?;
            if self.want[c].is_some_and(|w| w != self.m.is_designated(x)) {
                continue;
            }
            vals[c] = x;
            if self.solve(cols, k + 1, vals)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    parent[x] = r;
    r
}

pub fn nmatrix_decide(m: &Matrix, premises: &[Formula], conclusion: &Formula) -> Result<NmatrixVerdict, MatrixError> {
    nmatrix_decide_with(m, premises, conclusion, NmatrixOptions::default())
}

pub fn nmatrix_decide_with(
    m: &Matrix,
    premises: &[Formula],
    conclusion: &Formula,
    options: NmatrixOptions,
) -> Result<NmatrixVerdict, MatrixError> {
    let roots: Vec<Formula> = premises.iter().chain([conclusion]).cloned().collect();
    for f in &roots {
        m.algebra.supports(f)?;
    }
    let columns = subformulas_of_all(&roots);
    let index: HashMap<&Formula, usize> = columns.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let shapes: Vec<Shape> = columns
        .iter()
        .map(|f| match f {
            Formula::Var(_) => Shape::Atom,
            Formula::Binary(op, l, r) => Shape::Op(Connective::Bin(*op), vec![index[&**l], index[&**r]]),
            Formula::Unary(op, c) => Shape::Op(Connective::Un(*op), vec![index[&**c]]),
        })
        .collect();

    let mut want: Vec<Option<bool>> = vec![None; columns.len()];
    let mut clash = false;
    for (k, f) in roots.iter().enumerate() {
        let w = k < premises.len();
        let slot = &mut want[index[f]];
        if slot.is_some_and(|old| old != w) {
            clash = true;
        }
        *slot = Some(w);
    }
    if clash {
        // a conclusion among the premises
        return Ok(NmatrixVerdict {
            valid: true,
            witness: None,
            steps: 0,
        });
    }

    // group the roots; each compound column goes with the group of any
    // root containing it
    let compound_of = |f: &Formula| -> Vec<usize> {
        subformulas_of_all(std::slice::from_ref(f))
            .iter()
            .map(|g| index[g])
            .filter(|&i| matches!(shapes[i], Shape::Op(..)))
            .collect()
    };
    let owned: Vec<Vec<usize>> = roots.iter().map(compound_of).collect();
    let mut parent: Vec<usize> = (0..roots.len()).collect();
    let mut owner: Vec<Option<usize>> = vec![None; columns.len()];
    for (r, cols) in owned.iter().enumerate() {
        for &c in cols {
            match owner[c] {
                None => owner[c] = Some(r),
                Some(o) => {
                    let (a, b) = (find(&mut parent, o), find(&mut parent, r));
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut group_of_root: HashMap<usize, usize> = HashMap::new();
    for c in 0..columns.len() {
        let Some(o) = owner[c] else { continue };
        let root = if options.factorized { find(&mut parent, o) } else { 0 };
        let g = *group_of_root.entry(root).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[g].push(c);
    }

    let atoms: Vec<usize> = (0..columns.len()).filter(|&i| matches!(shapes[i], Shape::Atom)).collect();
    let mut p = Problem {
        m,
        shapes,
        want,
        steps: 0,
        cap: options.step_cap,
    };
    let n = m.algebra.len();
    let mut vals = vec![0usize; columns.len()];
    let total = (n as u128).pow(atoms.len() as u32);
    let mut code: u128 = 0;
    while code < total {
        let mut c = code;
        for &a in atoms.iter().rev() {
            vals[a] = (c % n as u128) as usize;
            c /= n as u128;
        }
        code += 1;
        p.tick()?;
        if atoms
            .iter()
            .any(|&a| p.want[a].is_some_and(|w| w != m.is_designated(vals[a])))
        {
            continue;
        }
        let mut ok = true;
        for g in &groups {
            if !p.solve(g, 0, &mut vals)? {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(NmatrixVerdict {
                valid: false,
                witness: Some(columns.into_iter().zip(vals).collect()),
                steps: p.steps,
            });
        }
    }
    Ok(NmatrixVerdict {
        valid: true,
        witness: None,
        steps: p.steps,
    })
}
