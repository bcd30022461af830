//! Test polynomials: every monomial up to a weight, plus seeded random
//! homogeneous polynomials.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Monomial, QPoly};
use crate::arith::rat;

/// All partitions of `w` as monomials, in nonincreasing-part order.
pub fn partitions(w: u32) -> Vec<Monomial> {
    fn go(rest: u32, max: u32, acc: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if rest == 0 {
            out.push(Monomial::new(acc.clone()));
            return;
        }
        for part in (1..=max.min(rest)).rev() {
            acc.push(part);
            go(rest - part, part, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(w, w, &mut Vec::new(), &mut out);
    out
}

/// Every monomial of weight `<= max_weight`, including `1`.
pub fn exhaustive(max_weight: u32) -> Vec<QPoly> {
    (0..=max_weight)
        .flat_map(partitions)
        .map(|m| QPoly::from_terms([(m, rat(1, 1))]))
        .collect()
}

/// `count` homogeneous polynomials of random weight `<= max_weight`, each a
/// combination of up to three monomials with small rational coefficients.
pub fn random(seed: u64, count: usize, max_weight: u32) -> Vec<QPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let w = rng.gen_range(0..=max_weight);
            let parts = partitions(w);
            let terms: Vec<_> = (0..rng.gen_range(1..=3))
                .map(|_| {
                    let m = parts.choose(&mut rng).expect("partitions are nonempty").clone();
                    let c = rat(rng.gen_range(-9..=9), rng.gen_range(1..=9));
                    (m, c)
                })
                .collect();
            QPoly::from_terms(terms)
        })
        .collect()
}

/// The default corpus: exhaustive to `weight`, plus a seeded random sample
/// up to `weight + 3`.
pub fn standard(weight: u32, seed: u64) -> Vec<QPoly> {
    let mut corpus = exhaustive(weight);
    corpus.extend(random(seed, 24, weight + 3));
    corpus
}
