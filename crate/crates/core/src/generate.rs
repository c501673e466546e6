//! Seeded random formulas for differential testing.
//!
//! Shapes the extension clauses react to (`a # !a`, `!(a # !a)`,
//! `!(a & !a)`, `@a`, `!@a`) are drawn more often than a uniform grammar
//! would produce them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::formula::{BinOp, Formula, Signature, UnOp};

#[derive(Clone, Debug)]
pub struct Generator {
    rng: ChaCha8Rng,
    sig: Signature,
    atoms: Vec<String>,
    max_complexity: usize,
}

impl Generator {
    pub fn new(seed: u64, sig: Signature, atoms: usize, max_complexity: usize) -> Generator {
        let names = ["p", "q", "r", "s", "t", "u", "v", "w"];
        assert!((1..=names.len()).contains(&atoms));
        Generator {
            rng: ChaCha8Rng::seed_from_u64(seed),
            sig,
            atoms: names[..atoms].iter().map(|s| s.to_string()).collect(),
            max_complexity,
        }
    }

    pub fn formula(&mut self) -> Formula {
        let budget = self.rng.gen_range(0..=self.max_complexity);
        let f = self.sized(budget);
        debug_assert!(f.complexity() <= self.max_complexity && f.fits(self.sig));
        f
    }

    /// A premise list of length `0..=max_premises` and a conclusion.
    pub fn sequent(&mut self, max_premises: usize) -> (Vec<Formula>, Formula) {
        let n = self.rng.gen_range(0..=max_premises);
        let premises = (0..n).map(|_| self.formula()).collect();
        (premises, self.formula())
    }

    fn atom(&mut self) -> Formula {
        let i = self.rng.gen_range(0..self.atoms.len());
        Formula::var(self.atoms[i].clone())
    }

    fn has(&self, op: UnOp) -> bool {
        self.sig.contains(crate::formula::Connective::Un(op))
    }

    /// A formula of complexity at most `budget`.
    fn sized(&mut self, budget: usize) -> Formula {
        if budget == 0 {
            return self.atom();
        }
        let neg = self.has(UnOp::Neg);
        let inc = self.sig != Signature::Lfi;
        let circ = self.has(UnOp::Circ);
        let roll = self.rng.gen_range(0..100);
        // a shape with its own negation costs 2 + 2 * |a|, or 3 + 2 * |a|
        if neg && roll < 20 && budget >= 2 {
            let a = self.sized((budget - 2) / 2);
            let na = Formula::neg(a.clone());
            let kind = self.rng.gen_range(0..4);
            let core = match (inc, kind) {
                (true, 0) => Formula::inc(a, na),
                (true, 1) => Formula::inc(na, a),
                (false, 0 | 1) if circ => Formula::circ(a),
                _ => Formula::and(a, na),
            };
            if core.complexity() < budget && self.rng.gen_bool(0.5) {
                return Formula::neg(core);
            }
            return core;
        }
        let unary = (neg || circ) && roll < 40;
        if unary {
            let child = self.sized(budget - 1);
            let op = match (neg, circ) {
                (true, true) if self.rng.gen_bool(0.4) => UnOp::Circ,
                (true, _) => UnOp::Neg,
                _ => UnOp::Circ,
            };
            return Formula::Unary(op, Box::new(child));
        }
        let ops: &[BinOp] = if inc {
            &[BinOp::And, BinOp::Or, BinOp::Imp, BinOp::Imp, BinOp::Inc, BinOp::Inc]
        } else {
            &[BinOp::And, BinOp::Or, BinOp::Imp, BinOp::Imp]
        };
        let op = ops[self.rng.gen_range(0..ops.len())];
        let rest = budget - 1;
        let left = self.rng.gen_range(0..=rest);
        let l = self.sized(left);
        let r = self.sized(rest - left);
        Formula::binary(op, l, r)
    }
}
