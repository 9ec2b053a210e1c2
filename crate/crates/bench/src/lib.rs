//! Inputs shared by the benchmarks in `benches/`.

use disord_core::mvp::RandomShape;
use disord_core::{value, Disord, Mvp};

/// A random polynomial with `terms` terms over six symbols.
pub fn polynomial(seed: u64, terms: usize) -> Mvp {
    Mvp::random(seed, &RandomShape { terms, ..RandomShape::default() })
}

/// The numbers `1..=n` as a disord.
pub fn counting(n: usize) -> Disord {
    Disord::new(value::numbers((1..=n).map(|k| k as f64))).expect("numbers share a kind")
}

/// A short session mixing disord and polynomial statements.
pub const SCRIPT: &str = "\
d <- disord(1:10)
e <- 10 + 3*d - d^2
d[e < 4] <- e[e < 4]
sort(d)
a <- rmvp(1)
b <- rmvp(2)
(a + b) * (a - b) == a^2 - b^2
coeffs(a)[coeffs(a) < 4] <- 0
a
";
