//! Deterministic inputs for the criterion benches.

use synalg::harness::Generator;
use synalg::{Effect, SymMatrix};

pub const SEED: u64 = 0x5eed;

/// A random symmetric matrix of dimension `n`.
pub fn symmetric(n: usize) -> SymMatrix {
    Generator::new(SEED, 0, n).symmetric()
}

/// A pair of random effects of dimension `n`.
pub fn effect_pair(n: usize) -> (Effect, Effect) {
    let mut g = Generator::new(SEED, 1, n);
    (g.effect(), g.effect())
}
