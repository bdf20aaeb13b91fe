//! Seeded generators for test harnesses and the command-line `--seed` flag.
//!
//! All generators draw from a ChaCha stream, so a seed fixes the output on
//! every platform.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::construction::ParamTuple;
use crate::factorization::LinearFactor;
use crate::scalar::{rat, Rational, Scalar};
use crate::trig::ExactPoly;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A zero-free `a cos t + b sin t + c` with `a, b` small halves and
/// `c = ⌈√(a² + b²)⌉ + 1`.
pub fn zero_free_factor<R: Rng>(rng: &mut R) -> LinearFactor<Rational> {
    loop {
        let a = rat(rng.gen_range(-6..=6), 2);
        let b = rat(rng.gen_range(-6..=6), 2);
        let norm2 = (&a * &a + &b * &b).to_f64();
        if norm2 == 0.0 {
            continue;
        }
        let c = rat(norm2.sqrt().ceil() as i64 + 1, 1);
        return LinearFactor::new(a, b, c).expect("(a, b) is nonzero");
    }
}

/// `n` pairwise non-proportional zero-free factors.
pub fn distinct_factors<R: Rng>(rng: &mut R, n: usize) -> Vec<LinearFactor<Rational>> {
    let mut out: Vec<LinearFactor<Rational>> = Vec::with_capacity(n);
    while out.len() < n {
        let f = zero_free_factor(rng).normalized();
        if !out.iter().any(|g| g.normalized() == f) {
            out.push(f);
        }
    }
    out
}

fn product(factors: &[LinearFactor<Rational>]) -> ExactPoly {
    factors.iter().fold(ExactPoly::one(), |acc, f| &acc * &f.to_trig())
}

const KS: [(i64, i64); 6] = [(1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2), (-1, 2)];

/// A valid [`ParamTuple`] with `G`, `Ĝ` and `S₁` of degree at most 4.
///
/// `G` is a product of one to three distinct factors, `Ĝ` a nonempty
/// product of some of them (repetition allowed), and `S₁` a product of up
/// to two further factors; draws repeat until `S₁ + kĜ` is zero-free.
pub fn param_tuple<R: Rng>(rng: &mut R) -> ParamTuple {
    loop {
        let pool = distinct_factors(rng, 5);
        let ng = rng.gen_range(1..=3);
        let g_factors = &pool[..ng];
        let nh = rng.gen_range(1..=ng.min(2));
        let ghat_factors: Vec<_> = (0..nh)
            .map(|_| g_factors.choose(rng).expect("nonempty").clone())
            .collect();
        let ns = rng.gen_range(0..=2);
        let s_factors: Vec<_> = (0..ns).map(|_| pool.choose(rng).expect("nonempty").clone()).collect();
        let (kn, kd) = KS[rng.gen_range(0..KS.len())];
        let scale = rat(rng.gen_range(1..=3), 1);
        let p = ParamTuple::new(
            product(g_factors),
            product(&ghat_factors),
            product(&s_factors).scale(&scale),
            rat(kn, kd),
        );
        if p.validate().is_ok() {
            return p;
        }
    }
}
