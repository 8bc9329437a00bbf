// SPDX-License-Identifier: Apache-2.0

//! Seeded sampling of exact vectors and subspaces.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::rank_of_vectors;
use crate::scalar::{int, Rational};
use crate::signature::Signature;

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Per-trial seed: trial `i` of master seed `s` draws from its own stream, so
/// trials can run in any order.
pub fn trial_rng(master: u64, trial: u64) -> SeededRng {
    let mut r = ChaCha8Rng::seed_from_u64(master);
    r.set_stream(trial);
    r
}

pub fn int_vector(rng: &mut SeededRng, len: usize, bound: i64) -> Vec<Rational> {
    (0..len).map(|_| int(rng.random_range(-bound..=bound))).collect()
}

/// `d` linearly independent integer vectors with entries in `−bound..=bound`.
///
/// Dependent draws are discarded and redrawn (rank repair).
pub fn independent_vectors(rng: &mut SeededRng, len: usize, d: usize, bound: i64) -> Vec<Vec<Rational>> {
    assert!(d <= len, "cannot draw {d} independent vectors in dimension {len}");
    let mut out: Vec<Vec<Rational>> = Vec::with_capacity(d);
    while out.len() < d {
        let v = int_vector(rng, len, bound);
        out.push(v);
        if rank_of_vectors(&out) < out.len() {
            out.pop();
        }
    }
    out
}

/// Nonzero null vector of an indefinite signature with rational entries.
///
/// Starts from `e_1 + e_{p+1}` and moves along a random line through it to
/// the second intersection with the null cone, which keeps entries rational.
pub fn null_vector(rng: &mut SeededRng, sig: Signature) -> Vec<Rational> {
    assert!(!sig.is_definite(), "definite signature has no null vectors");
    let n = sig.n();
    let mut x0 = alloc::vec![int(0); n];
    x0[0] = int(1);
    x0[sig.p] = int(1);
    loop {
        let d = int_vector(rng, n, 3);
        let gdd = sig.metric(&d, &d);
        if gdd == int(0) {
            continue;
        }
        let t = -(int(2) * sig.metric(&x0, &d)) / gdd;
        let v: Vec<Rational> = x0.iter().zip(&d).map(|(a, b)| a + &t * b).collect();
        if v.iter().any(|c| *c != int(0)) {
            return v;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn null_vectors_are_null() {
        let mut r = seeded(7);
        for s in Signature::all_up_to(6).into_iter().filter(|s| !s.is_definite()) {
            for _ in 0..10 {
                let v = null_vector(&mut r, s);
                assert_eq!(s.metric(&v, &v), int(0));
            }
        }
    }

    #[test]
    fn streams_reproducible() {
        let a = int_vector(&mut trial_rng(1, 5), 6, 3);
        let b = int_vector(&mut trial_rng(1, 5), 6, 3);
        let c = int_vector(&mut trial_rng(1, 6), 6, 3);
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn independent() {
        let vs = independent_vectors(&mut seeded(3), 5, 5, 1);
        assert_eq!(rank_of_vectors(&vs), 5);
    }
}
