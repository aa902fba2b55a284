//! The 16 two-input Boolean operations.
//!
//! An operation is stored as its 4-bit truth table. Bit `i` holds the value
//! at the point `(a, b)` with `i = a + 2b`. Besides the two constants and the
//! four operations that depend on one input only, every operation is either a
//! parity `a ⊕ b ⊕ c` or a product `(a ⊕ p)·(b ⊕ q) ⊕ c`; [`OpKind`] exposes
//! that dichotomy.

use crate::error::CircuitError;
use std::fmt;

/// A two-input Boolean operation as a 4-bit truth table.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GateOp(u8);

/// A one-input Boolean operation, produced when a [`GateOp`] collapses.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum UnaryOp {
    Const(bool),
    Pass,
    Invert,
}

/// Structural classification of a [`GateOp`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OpKind {
    Constant(bool),
    /// Depends on the left input only: `a ⊕ invert`.
    PassLeft { invert: bool },
    /// Depends on the right input only: `b ⊕ invert`.
    PassRight { invert: bool },
    /// `a ⊕ b ⊕ invert`.
    Parity { invert: bool },
    /// `(a ⊕ flip_left)·(b ⊕ flip_right) ⊕ invert`.
    Product {
        flip_left: bool,
        flip_right: bool,
        invert: bool,
    },
}

const MNEMONICS: [(&str, u8); 16] = [
    ("FALSE", 0b0000),
    ("NOR", 0b0001),
    ("ANDNOT", 0b0010),
    ("NOTRIGHT", 0b0011),
    ("NOTAND", 0b0100),
    ("NOTLEFT", 0b0101),
    ("XOR", 0b0110),
    ("NAND", 0b0111),
    ("AND", 0b1000),
    ("XNOR", 0b1001),
    ("LEFT", 0b1010),
    ("ORNOT", 0b1011),
    ("RIGHT", 0b1100),
    ("NOTOR", 0b1101),
    ("OR", 0b1110),
    ("TRUE", 0b1111),
];

const ALIASES: [(&str, u8); 6] = [
    ("NIMPL", 0b0010),
    ("IMPL", 0b1101),
    ("EQ", 0b1001),
    ("NEQ", 0b0110),
    ("CONST0", 0b0000),
    ("CONST1", 0b1111),
];

impl GateOp {
    pub const FALSE: GateOp = GateOp(0b0000);
    pub const TRUE: GateOp = GateOp(0b1111);
    pub const AND: GateOp = GateOp(0b1000);
    pub const OR: GateOp = GateOp(0b1110);
    pub const XOR: GateOp = GateOp(0b0110);
    pub const XNOR: GateOp = GateOp(0b1001);
    pub const NAND: GateOp = GateOp(0b0111);
    pub const NOR: GateOp = GateOp(0b0001);
    /// `a ∧ ¬b`
    pub const ANDNOT: GateOp = GateOp(0b0010);
    /// `¬a ∧ b`
    pub const NOTAND: GateOp = GateOp(0b0100);
    pub const LEFT: GateOp = GateOp(0b1010);
    pub const RIGHT: GateOp = GateOp(0b1100);
    pub const NOTLEFT: GateOp = GateOp(0b0101);

    pub fn from_table(table: u8) -> GateOp {
        GateOp(table & 0xF)
    }

    pub fn from_fn(f: impl Fn(bool, bool) -> bool) -> GateOp {
        let mut t = 0u8;
        for i in 0..4 {
            if f(i & 1 == 1, i & 2 == 2) {
                t |= 1 << i;
            }
        }
        GateOp(t)
    }

    pub fn table(self) -> u8 {
        self.0
    }

    pub fn all() -> impl Iterator<Item = GateOp> {
        (0u8..16).map(GateOp)
    }

    /// The ten operations that genuinely depend on both inputs.
    pub fn all_binary() -> impl Iterator<Item = GateOp> {
        GateOp::all().filter(|op| !op.is_constant() && !op.is_degenerate())
    }

    pub fn eval(self, a: bool, b: bool) -> bool {
        let i = (a as u8) | ((b as u8) << 1);
        self.0 >> i & 1 == 1
    }

    /// Word-parallel evaluation over 64 points at once.
    pub fn eval_words(self, a: u64, b: u64) -> u64 {
        let mut v = 0u64;
        if self.0 & 0b0001 != 0 {
            v |= !a & !b;
        }
        if self.0 & 0b0010 != 0 {
            v |= a & !b;
        }
        if self.0 & 0b0100 != 0 {
            v |= !a & b;
        }
        if self.0 & 0b1000 != 0 {
            v |= a & b;
        }
        v
    }

    pub fn depends_left(self) -> bool {
        let t = self.0;
        (t & 1) != (t >> 1 & 1) || (t >> 2 & 1) != (t >> 3 & 1)
    }

    pub fn depends_right(self) -> bool {
        let t = self.0;
        (t & 1) != (t >> 2 & 1) || (t >> 1 & 1) != (t >> 3 & 1)
    }

    pub fn is_constant(self) -> bool {
        self.0 == 0 || self.0 == 0xF
    }

    /// Depends on at most one input.
    pub fn is_degenerate(self) -> bool {
        !self.depends_left() || !self.depends_right()
    }

    pub fn is_parity(self) -> bool {
        self.0 == 0b0110 || self.0 == 0b1001
    }

    pub fn kind(self) -> OpKind {
        if self.0 == 0 {
            return OpKind::Constant(false);
        }
        if self.0 == 0xF {
            return OpKind::Constant(true);
        }
        match (self.depends_left(), self.depends_right()) {
            (true, false) => OpKind::PassLeft {
                invert: self.eval(false, false),
            },
            (false, true) => OpKind::PassRight {
                invert: self.eval(false, false),
            },
            (false, false) => unreachable!("constants already handled"),
            (true, true) => {
                if self.is_parity() {
                    OpKind::Parity {
                        invert: self.eval(false, false),
                    }
                } else {
                    // Exactly one table entry differs from the other three;
                    // that entry is where the product term equals 1.
                    let ones = self.0.count_ones();
                    debug_assert!(ones == 1 || ones == 3);
                    let invert = ones == 3;
                    let odd = if invert {
                        (!self.0 & 0xF).trailing_zeros() as u8
                    } else {
                        self.0.trailing_zeros() as u8
                    };
                    OpKind::Product {
                        flip_left: odd & 1 == 0,
                        flip_right: odd & 2 == 0,
                        invert,
                    }
                }
            }
        }
    }

    pub fn negate_output(self) -> GateOp {
        GateOp(!self.0 & 0xF)
    }

    /// Table of `op(¬a, b)`.
    pub fn negate_left(self) -> GateOp {
        GateOp::from_fn(|a, b| self.eval(!a, b))
    }

    /// Table of `op(a, ¬b)`.
    pub fn negate_right(self) -> GateOp {
        GateOp::from_fn(|a, b| self.eval(a, !b))
    }

    /// Table of `op(b, a)`.
    pub fn commuted(self) -> GateOp {
        GateOp::from_fn(|a, b| self.eval(b, a))
    }

    /// The function of `b` obtained by fixing `a`.
    pub fn restrict_left(self, a: bool) -> UnaryOp {
        UnaryOp::from_pair(self.eval(a, false), self.eval(a, true))
    }

    /// The function of `a` obtained by fixing `b`.
    pub fn restrict_right(self, b: bool) -> UnaryOp {
        UnaryOp::from_pair(self.eval(false, b), self.eval(true, b))
    }

    /// The function of `x` computed by `op(x, x)`.
    pub fn diagonal(self) -> UnaryOp {
        UnaryOp::from_pair(self.eval(false, false), self.eval(true, true))
    }

    pub fn mnemonic(self) -> &'static str {
        MNEMONICS[self.0 as usize].0
    }

    pub fn from_mnemonic(s: &str) -> Result<GateOp, CircuitError> {
        let upper = s.to_ascii_uppercase();
        MNEMONICS
            .iter()
            .chain(ALIASES.iter())
            .find(|(name, _)| *name == upper)
            .map(|&(_, t)| GateOp(t))
            .ok_or_else(|| CircuitError::InvalidParams(format!("unknown operation '{s}'")))
    }
}

impl UnaryOp {
    fn from_pair(at0: bool, at1: bool) -> UnaryOp {
        match (at0, at1) {
            (false, true) => UnaryOp::Pass,
            (true, false) => UnaryOp::Invert,
            (v, _) => UnaryOp::Const(v),
        }
    }
}

impl fmt::Debug for GateOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.mnemonic())
    }
}

impl fmt::Display for GateOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.mnemonic())
    }
}
