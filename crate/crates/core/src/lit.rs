//! Variables and literals.
//!
//! Variables are 1-based as in DIMACS. A literal packs its variable and sign
//! into one `u32` (`2 * (var - 1) + negated`), so literals index directly
//! into per-literal arrays such as occurrence and watch lists.

use core::fmt;
use core::ops::Not;

/// A propositional variable, numbered from 1.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(u32);

impl Var {
    /// Panics if `id == 0`.
    #[inline]
    pub fn new(id: u32) -> Self {
        assert!(id >= 1, "variables are numbered from 1");
        Var(id)
    }

    /// The DIMACS number of this variable.
    #[inline]
    pub fn id(self) -> u32 {
        self.0
    }

    /// Zero-based position, for dense per-variable arrays.
    #[inline]
    pub fn index(self) -> usize {
        (self.0 - 1) as usize
    }

    #[inline]
    pub fn from_index(idx: usize) -> Self {
        Var(idx as u32 + 1)
    }

    #[inline]
    pub fn pos(self) -> Lit {
        Lit::new(self, true)
    }

    #[inline]
    pub fn neg(self) -> Lit {
        Lit::new(self, false)
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit(u32);

impl Lit {
    #[inline]
    pub fn new(var: Var, positive: bool) -> Self {
        Lit(2 * (var.0 - 1) + (!positive) as u32)
    }

    /// Builds a literal from a non-zero DIMACS integer.
    #[inline]
    pub fn from_dimacs(x: i32) -> Self {
        assert!(x != 0, "0 is not a literal");
        Lit::new(Var(x.unsigned_abs()), x > 0)
    }

    #[inline]
    pub fn to_dimacs(self) -> i64 {
        let v = self.var().0 as i64;
        if self.is_positive() {
            v
        } else {
            -v
        }
    }

    #[inline]
    pub fn var(self) -> Var {
        Var((self.0 >> 1) + 1)
    }

    #[inline]
    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    /// Dense index: `2 * var.index() + negated`.
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn from_index(idx: usize) -> Self {
        Lit(idx as u32)
    }

    /// Value of this literal under an assignment of its variable.
    #[inline]
    pub fn eval(self, var_value: bool) -> bool {
        var_value == self.is_positive()
    }
}

impl Not for Lit {
    type Output = Lit;
    #[inline]
    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

impl fmt::Debug for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}
