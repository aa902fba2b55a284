//! Bit-parallel truth tables: the semantic fingerprint behind every
//! equivalence oracle in this workspace.
//!
//! Entry `x` of a table is `f(x)` with `x` read as a little-endian index
//! (bit `i` of `x` is the value of variable `i`). Tables are packed 64
//! points to a word and evaluated gate-by-gate over whole words.

use crate::circuit::{Circuit, Wire};
use crate::error::CircuitError;

/// Default cap on the number of variables an oracle will enumerate.
pub const DEFAULT_ORACLE_BITS: usize = 24;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    n: usize,
    words: Vec<u64>,
}

/// Bit patterns of the first six variables inside a single 64-point word.
const VAR_WORD: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

fn word_count(n: usize) -> usize {
    if n >= 6 {
        1 << (n - 6)
    } else {
        1
    }
}

fn tail_mask(n: usize) -> u64 {
    if n >= 6 {
        u64::MAX
    } else {
        (1u64 << (1 << n)) - 1
    }
}

/// Pattern of variable `i` within word `w` of an `n`-variable table.
pub fn var_pattern(i: usize, w: usize) -> u64 {
    if i < 6 {
        VAR_WORD[i]
    } else if w >> (i - 6) & 1 == 1 {
        u64::MAX
    } else {
        0
    }
}

impl TruthTable {
    pub fn check_budget(n: usize, budget: usize) -> Result<(), CircuitError> {
        if n > budget {
            Err(CircuitError::BudgetExceeded { n, budget })
        } else {
            Ok(())
        }
    }

    pub fn zeros(n: usize) -> TruthTable {
        TruthTable {
            n,
            words: vec![0; word_count(n)],
        }
    }

    pub fn constant(n: usize, v: bool) -> TruthTable {
        let mut t = TruthTable::zeros(n);
        if v {
            for w in &mut t.words {
                *w = u64::MAX;
            }
            t.mask_tail();
        }
        t
    }

    /// Build from packed words; excess tail bits are cleared.
    pub fn from_words(n: usize, words: Vec<u64>) -> TruthTable {
        assert_eq!(words.len(), word_count(n), "word count mismatch");
        let mut t = TruthTable { n, words };
        t.mask_tail();
        t
    }

    /// Table of the variable `i`.
    pub fn of_var(n: usize, i: usize) -> TruthTable {
        assert!(i < n, "variable index out of range");
        let mut t = TruthTable::zeros(n);
        for w in 0..t.words.len() {
            t.words[w] = var_pattern(i, w);
        }
        t.mask_tail();
        t
    }

    pub fn from_fn(n: usize, f: impl Fn(usize) -> bool) -> TruthTable {
        let mut t = TruthTable::zeros(n);
        for x in 0..1usize << n {
            if f(x) {
                t.words[x >> 6] |= 1 << (x & 63);
            }
        }
        t
    }

    /// Tables of all outputs of a circuit, within the given variable budget.
    pub fn from_circuit_with_budget(
        c: &Circuit,
        budget: usize,
    ) -> Result<Vec<TruthTable>, CircuitError> {
        Self::check_budget(c.n_inputs(), budget)?;
        let n = c.n_inputs();
        let words = word_count(n);
        let mut tables: Vec<TruthTable> = c.outputs().iter().map(|_| TruthTable::zeros(n)).collect();
        let mut vals = vec![0u64; c.node_count()];
        for w in 0..words {
            for (i, val) in vals.iter_mut().enumerate().take(n) {
                *val = var_pattern(i, w);
            }
            for (k, g) in c.gates().iter().enumerate() {
                vals[n + k] = g.op.eval_words(vals[g.a], vals[g.b]);
            }
            for (o, wire) in c.outputs().iter().enumerate() {
                tables[o].words[w] = match *wire {
                    Wire::Const(v) => {
                        if v {
                            u64::MAX
                        } else {
                            0
                        }
                    }
                    Wire::Node { id, invert } => {
                        if invert {
                            !vals[id]
                        } else {
                            vals[id]
                        }
                    }
                };
            }
        }
        for t in &mut tables {
            t.mask_tail();
        }
        Ok(tables)
    }

    pub fn from_circuit(c: &Circuit) -> Result<Vec<TruthTable>, CircuitError> {
        Self::from_circuit_with_budget(c, DEFAULT_ORACLE_BITS)
    }

    /// Table of a single-output circuit.
    pub fn of_circuit(c: &Circuit) -> Result<TruthTable, CircuitError> {
        c.single_output()?;
        Ok(Self::from_circuit(c)?.pop().unwrap())
    }

    fn mask_tail(&mut self) {
        let m = tail_mask(self.n);
        if let Some(last) = self.words.last_mut() {
            *last &= m;
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        1 << self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn get(&self, x: usize) -> bool {
        self.words[x >> 6] >> (x & 63) & 1 == 1
    }

    pub fn set(&mut self, x: usize, v: bool) {
        if v {
            self.words[x >> 6] |= 1 << (x & 63);
        } else {
            self.words[x >> 6] &= !(1 << (x & 63));
        }
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// `Some(v)` when the function is constantly `v`.
    pub fn as_constant(&self) -> Option<bool> {
        match self.count_ones() {
            0 => Some(false),
            c if c == self.len() as u64 => Some(true),
            _ => None,
        }
    }

    pub fn not(&self) -> TruthTable {
        let mut t = TruthTable {
            n: self.n,
            words: self.words.iter().map(|w| !w).collect(),
        };
        t.mask_tail();
        t
    }

    pub fn and(&self, other: &TruthTable) -> TruthTable {
        self.zip(other, |a, b| a & b)
    }

    pub fn or(&self, other: &TruthTable) -> TruthTable {
        self.zip(other, |a, b| a | b)
    }

    pub fn xor(&self, other: &TruthTable) -> TruthTable {
        self.zip(other, |a, b| a ^ b)
    }

    fn zip(&self, other: &TruthTable, f: impl Fn(u64, u64) -> u64) -> TruthTable {
        assert_eq!(self.n, other.n, "truth table dimension mismatch");
        TruthTable {
            n: self.n,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    /// Number of points where the two functions agree.
    pub fn agreements(&self, other: &TruthTable) -> u64 {
        assert_eq!(self.n, other.n, "truth table dimension mismatch");
        self.len() as u64 - self.xor(other).count_ones()
    }

    /// The table reindexed by `x ↦ x ⊕ e_i`.
    pub fn flip_var(&self, i: usize) -> TruthTable {
        assert!(i < self.n, "variable index out of range");
        let mut t = TruthTable::zeros(self.n);
        if i < 6 {
            let k = 1 << i;
            let lo = !VAR_WORD[i];
            for (dst, &w) in t.words.iter_mut().zip(&self.words) {
                *dst = (w & lo) << k | (w & VAR_WORD[i]) >> k;
            }
        } else {
            let stride = 1 << (i - 6);
            for w in 0..t.words.len() {
                t.words[w] = self.words[w ^ stride];
            }
        }
        t.mask_tail();
        t
    }

    /// Variables the function actually depends on.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.flip_var(i) != *self).collect()
    }

    pub fn first_difference(&self, other: &TruthTable) -> Option<usize> {
        assert_eq!(self.n, other.n, "truth table dimension mismatch");
        for (w, (&a, &b)) in self.words.iter().zip(&other.words).enumerate() {
            if a != b {
                return Some(w * 64 + (a ^ b).trailing_zeros() as usize);
            }
        }
        None
    }

    /// Bit string `f(0) f(1) … f(2ⁿ−1)`.
    pub fn to_bit_string(&self) -> String {
        (0..self.len())
            .map(|x| if self.get(x) { '1' } else { '0' })
            .collect()
    }
}

impl std::fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.n <= 6 {
            write!(f, "TruthTable({} vars, {})", self.n, self.to_bit_string())
        } else {
            write!(f, "TruthTable({} vars)", self.n)
        }
    }
}
