// SPDX-License-Identifier: Apache-2.0

use core::fmt;

use crate::error::{Error, Result};
use crate::scalar::{int, Rational};

/// Metric signature `(p, q)`: `p` positive-norm and `q` negative-norm
/// directions. Basis order is positive directions first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Signature {
    pub p: usize,
    pub q: usize,
}

/// Real, complex or quaternionic commutant of an irreducible module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum CommutantType {
    R,
    C,
    H,
}

impl CommutantType {
    pub fn dim(self) -> usize {
        match self {
            CommutantType::R => 1,
            CommutantType::C => 2,
            CommutantType::H => 4,
        }
    }
}

impl fmt::Display for CommutantType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CommutantType::R => "R",
            CommutantType::C => "C",
            CommutantType::H => "H",
        };
        f.write_str(s)
    }
}

impl Signature {
    /// Requires `p + q ≥ 1`.
    pub fn new(p: usize, q: usize) -> Result<Self> {
        if p + q == 0 {
            return Err(Error::InvalidSignature("p + q must be at least 1".into()));
        }
        Ok(Self { p, q })
    }

    pub(crate) const fn raw(p: usize, q: usize) -> Self {
        Self { p, q }
    }

    pub fn n(&self) -> usize {
        self.p + self.q
    }

    pub fn s(&self) -> i64 {
        self.p as i64 - self.q as i64
    }

    pub fn n_mod4(&self) -> u8 {
        (self.n() % 4) as u8
    }

    pub fn s_mod4(&self) -> u8 {
        self.s().rem_euclid(4) as u8
    }

    pub fn s_mod8(&self) -> u8 {
        self.s().rem_euclid(8) as u8
    }

    pub fn is_definite(&self) -> bool {
        self.p == 0 || self.q == 0
    }

    /// `g(e_i, e_i)`: +1 for the first `p` indices, −1 afterwards.
    pub fn eta(&self, i: usize) -> i64 {
        if i < self.p {
            1
        } else {
            -1
        }
    }

    pub fn metric(&self, u: &[Rational], v: &[Rational]) -> Rational {
        let mut acc = int(0);
        for i in 0..self.n() {
            let t = &u[i] * &v[i];
            if self.eta(i) > 0 {
                acc += t;
            } else {
                acc -= t;
            }
        }
        acc
    }

    /// The cone signature `(p + 1, q)`.
    pub fn cone(&self) -> Self {
        Self::raw(self.p + 1, self.q)
    }

    /// Dimension of an irreducible real module of the Clifford algebra with
    /// positive directions squaring to `−1`.
    pub fn spinor_dim(&self) -> usize {
        let n = self.n() as u32;
        match self.s_mod8() {
            0 | 6 => 1 << (n / 2),
            7 => 1 << ((n - 1) / 2),
            1 | 5 | 3 => 1 << ((n + 1) / 2),
            _ => 1 << (n / 2 + 1),
        }
    }

    /// Commutant of the irreducible module, by `s mod 8`.
    pub fn commutant_type(&self) -> CommutantType {
        match self.s_mod8() {
            0 | 6 | 7 => CommutantType::R,
            1 | 5 => CommutantType::C,
            _ => CommutantType::H,
        }
    }

    /// True when the Clifford algebra is a sum of two simple ideals
    /// (`s ≡ 3, 7 mod 8`).
    pub fn is_split_algebra(&self) -> bool {
        matches!(self.s_mod8(), 3 | 7)
    }

    /// All signatures with `1 ≤ p + q ≤ max_n`, ordered by `n` then `p`.
    pub fn all_up_to(max_n: usize) -> alloc::vec::Vec<Self> {
        let mut out = alloc::vec::Vec::new();
        for n in 1..=max_n {
            for p in (0..=n).rev() {
                out.push(Self::raw(p, n - p));
            }
        }
        out
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residues() {
        let s = Signature::new(2, 3).unwrap();
        assert_eq!((s.n(), s.s()), (5, -1));
        assert_eq!((s.n_mod4(), s.s_mod4(), s.s_mod8()), (1, 3, 7));
        assert!(Signature::new(0, 0).is_err());
    }

    #[test]
    fn table_dims() {
        assert_eq!(Signature::raw(1, 0).spinor_dim(), 2);
        assert_eq!(Signature::raw(0, 1).spinor_dim(), 1);
        assert_eq!(Signature::raw(2, 3).spinor_dim(), 4);
        assert_eq!(Signature::raw(4, 5).spinor_dim(), 16);
        assert_eq!(Signature::raw(1, 10).spinor_dim(), 32);
    }
}
