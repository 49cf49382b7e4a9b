//! Fixed-width binary index vectors.
//!
//! Row and column indices of an n-qubit matrix are n-bit words. Qubit 1 is
//! the leftmost (most significant) bit, so the word read left to right names
//! the qubits in order and converting to `usize` gives the matrix index.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An n-bit binary index, 1 <= n <= 16. Bit 1 is the most significant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitIndex {
    n: u8,
    value: u16,
}

pub const MAX_BITS: usize = 16;

impl BitIndex {
    pub fn new(n: usize, value: usize) -> Result<Self> {
        if n == 0 || n > MAX_BITS {
            return Err(Error::argument(format!(
                "bit length must be between 1 and {MAX_BITS}, got {n}"
            )));
        }
        if value >> n != 0 {
            return Err(Error::argument(format!(
                "value {value} does not fit in {n} bits"
            )));
        }
        Ok(BitIndex {
            n: n as u8,
            value: value as u16,
        })
    }

    pub fn zeros(n: usize) -> Result<Self> {
        BitIndex::new(n, 0)
    }

    pub fn ones(n: usize) -> Result<Self> {
        let idx = BitIndex::new(n, 0)?;
        Ok(idx.complement())
    }

    /// All indices of width n in ascending order.
    pub fn all(n: usize) -> impl Iterator<Item = BitIndex> {
        let n = n.clamp(1, MAX_BITS);
        (0..1usize << n).map(move |v| BitIndex {
            n: n as u8,
            value: v as u16,
        })
    }

    pub fn len(&self) -> usize {
        self.n as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Matrix index of the basis vector this word names.
    pub fn index(&self) -> usize {
        self.value as usize
    }

    /// Bit at 1-based position r (qubit r), as 0 or 1.
    pub fn bit(&self, r: usize) -> u8 {
        assert!(r >= 1 && r <= self.len(), "bit position out of range");
        ((self.value >> (self.len() - r)) & 1) as u8
    }

    pub fn xor(&self, other: &BitIndex) -> BitIndex {
        assert_eq!(self.n, other.n, "xor requires equal widths");
        BitIndex {
            n: self.n,
            value: self.value ^ other.value,
        }
    }

    /// Flip every bit.
    pub fn complement(&self) -> BitIndex {
        let mask = if self.n as usize == MAX_BITS {
            u16::MAX
        } else {
            (1u16 << self.n) - 1
        };
        BitIndex {
            n: self.n,
            value: self.value ^ mask,
        }
    }

    /// Number of set bits.
    pub fn weight(&self) -> u32 {
        self.value.count_ones()
    }

    /// Hamming weight mod 2.
    pub fn parity(&self) -> u32 {
        self.weight() & 1
    }

    /// Binary scalar product: the number of positions where both words have a 1.
    /// Only its parity matters for Hadamard signs, but the full count feeds
    /// powers of i, so it is returned as an integer.
    pub fn dot(&self, other: &BitIndex) -> u32 {
        assert_eq!(self.n, other.n, "dot requires equal widths");
        (self.value & other.value).count_ones()
    }

    /// Concatenate, self supplying the leading bits.
    pub fn concat(&self, other: &BitIndex) -> Result<BitIndex> {
        let n = self.len() + other.len();
        if n > MAX_BITS {
            return Err(Error::argument(format!(
                "concatenated width {n} exceeds {MAX_BITS} bits"
            )));
        }
        Ok(BitIndex {
            n: n as u8,
            value: (self.value << other.len()) | other.value,
        })
    }

    /// Split after `cut` leading bits into (leading, trailing).
    pub fn split(&self, cut: usize) -> Result<(BitIndex, BitIndex)> {
        if cut == 0 || cut >= self.len() {
            return Err(Error::argument(format!(
                "split position {cut} must lie strictly inside a {} bit word",
                self.len()
            )));
        }
        let tail_len = self.len() - cut;
        let head = BitIndex {
            n: cut as u8,
            value: self.value >> tail_len,
        };
        let tail = BitIndex {
            n: tail_len as u8,
            value: self.value & ((1u16 << tail_len) - 1),
        };
        Ok((head, tail))
    }
}

impl fmt::Display for BitIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 1..=self.len() {
            write!(f, "{}", self.bit(r))?;
        }
        Ok(())
    }
}

impl FromStr for BitIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() || s.len() > MAX_BITS {
            return Err(Error::argument(format!("bad bit string {s:?}")));
        }
        let mut value = 0usize;
        for ch in s.chars() {
            value = (value << 1)
                | match ch {
                    '0' => 0,
                    '1' => 1,
                    _ => return Err(Error::argument(format!("bad bit string {s:?}"))),
                };
        }
        BitIndex::new(s.len(), value)
    }
}
