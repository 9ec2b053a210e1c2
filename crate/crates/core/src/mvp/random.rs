use rand::seq::{IteratorRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Monomial, Mvp};

/// Shape of the polynomials produced by [`Mvp::random`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomShape {
    pub terms: usize,
    pub symbols: Vec<String>,
    pub max_vars_per_term: usize,
    pub max_exponent: i64,
}

impl Default for RandomShape {
    /// Seven terms over `a..f`, exponents `1..=14`, coefficients a
    /// shuffle of `1..=7`.
    fn default() -> Self {
        Self {
            terms: 7,
            symbols: ["a", "b", "c", "d", "e", "f"].map(String::from).to_vec(),
            max_vars_per_term: 6,
            max_exponent: 14,
        }
    }
}

impl Mvp {
    /// Random polynomial with the default shape, deterministic in `seed`.
    pub fn rmvp(seed: u64) -> Mvp {
        Self::random(seed, &RandomShape::default())
    }

    /// Random polynomial: `shape.terms` distinct non-constant terms with
    /// coefficients a permutation of `1..=shape.terms`.
    pub fn random(seed: u64, shape: &RandomShape) -> Mvp {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let max_vars = shape.max_vars_per_term.clamp(1, shape.symbols.len().max(1));
        let mut monomials: Vec<Monomial> = Vec::with_capacity(shape.terms);
        let mut attempts = 0;
        while monomials.len() < shape.terms && !shape.symbols.is_empty() && attempts < 10_000 {
            attempts += 1;
            let nvars = rng.gen_range(1..=max_vars);
            let chosen = shape.symbols.iter().choose_multiple(&mut rng, nvars);
            let m = Monomial::from_powers(
                chosen
                    .into_iter()
                    .map(|s| (s.as_str(), rng.gen_range(1..=shape.max_exponent.max(1))))
                    .collect::<Vec<_>>(),
            );
            if !monomials.contains(&m) {
                monomials.push(m);
            }
        }
        let mut coeffs: Vec<f64> = (1..=monomials.len()).map(|c| c as f64).collect();
        coeffs.shuffle(&mut rng);
        Mvp::from_terms(monomials.into_iter().zip(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_in_seed() {
        assert_eq!(Mvp::rmvp(1), Mvp::rmvp(1));
        assert_ne!(Mvp::rmvp(1), Mvp::rmvp(2));
    }

    #[test]
    fn default_shape() {
        for seed in 0..50 {
            let p = Mvp::rmvp(seed);
            assert_eq!(p.len(), 7);
            let mut cs: Vec<f64> = p.terms().map(|(_, c)| c).collect();
            cs.sort_by(f64::total_cmp);
            assert_eq!(cs, (1..=7).map(f64::from).collect::<Vec<_>>());
            for (m, _) in p.terms() {
                assert!(!m.is_constant());
                for (name, e) in m.iter() {
                    assert!(("a"..="f").contains(&name));
                    assert!((1..=14).contains(&e));
                }
            }
        }
    }
}
