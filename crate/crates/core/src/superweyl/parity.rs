use std::fmt;
use std::ops::Add;

use crate::error::{AlgebraError, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_odd(odd: bool) -> Self {
        if odd {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// `(-1)^{self}`
    pub fn sign(self) -> i64 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }

    /// `(-1)^{self * other}`
    pub fn koszul(self, other: Parity) -> i64 {
        if self.is_odd() && other.is_odd() {
            -1
        } else {
            1
        }
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_odd(self.is_odd() != rhs.is_odd())
    }
}

/// Parity of a ring element. Zero is homogeneous of both parities.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Grade {
    Zero,
    Pure(Parity),
    Mixed,
}

impl Grade {
    /// Grade of a sum of elements of grades `self` and `other`.
    pub fn join(self, other: Grade) -> Grade {
        match (self, other) {
            (Grade::Zero, g) | (g, Grade::Zero) => g,
            (Grade::Pure(a), Grade::Pure(b)) if a == b => Grade::Pure(a),
            _ => Grade::Mixed,
        }
    }

    pub fn admits(self, p: Parity) -> bool {
        match self {
            Grade::Zero => true,
            Grade::Pure(q) => q == p,
            Grade::Mixed => false,
        }
    }

    /// Parity to use in sign rules; zero counts as even.
    pub fn parity(self) -> Result<Parity> {
        match self {
            Grade::Zero => Ok(Parity::Even),
            Grade::Pure(p) => Ok(p),
            Grade::Mixed => Err(AlgebraError::NotHomogeneous),
        }
    }
}

/// A sequence of `+1`/`-1` entries; `+1` marks an even index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParitySequence {
    entries: Vec<i8>,
}

impl ParitySequence {
    pub fn new(entries: Vec<i8>) -> Result<Self> {
        if entries.iter().any(|&s| s != 1 && s != -1) {
            return Err(AlgebraError::InvalidParams(format!(
                "parity entries must be +1 or -1, got {entries:?}"
            )));
        }
        Ok(Self { entries })
    }

    /// `(1,...,1,-1,...,-1)` with `m` ones and `n` minus ones.
    pub fn standard(m: usize, n: usize) -> Self {
        let mut entries = vec![1; m];
        entries.extend(std::iter::repeat(-1).take(n));
        Self { entries }
    }

    pub fn all_even(len: usize) -> Self {
        Self { entries: vec![1; len] }
    }

    /// Concatenation of blocks `(sign, length)`.
    pub fn from_blocks(blocks: &[(i8, usize)]) -> Self {
        let mut entries = Vec::new();
        for &(s, len) in blocks {
            entries.extend(std::iter::repeat(s).take(len));
        }
        Self { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn m(&self) -> usize {
        self.entries.iter().filter(|&&s| s == 1).count()
    }

    pub fn n(&self) -> usize {
        self.len() - self.m()
    }

    pub fn entries(&self) -> &[i8] {
        &self.entries
    }

    pub fn sign(&self, i: usize) -> i8 {
        self.entries[i]
    }

    /// The parity `\bar i^s` of index `i` (0-based).
    pub fn parity(&self, i: usize) -> Parity {
        Parity::from_odd(self.entries[i] == -1)
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> Self {
        Self { entries: self.entries[range].to_vec() }
    }

    /// `sigma(s)_i = s_{sigma^{-1}(i)}`, with `sigma` given as the image list
    /// `sigma[j] = sigma(j)`.
    pub fn permute(&self, sigma: &[usize]) -> Self {
        let mut entries = vec![0; self.len()];
        for (j, &sj) in sigma.iter().enumerate() {
            entries[sj] = self.entries[j];
        }
        Self { entries }
    }
}

impl fmt::Display for ParitySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, s) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}
