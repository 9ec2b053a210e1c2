use std::collections::BTreeMap;
use std::fmt;

/// A product of named variables raised to nonzero integer powers.
///
/// Variables are kept sorted by name, so the order in which a term was
/// written does not matter: `a^3 b c^6` and `b c^6 a^3` are the same
/// monomial. The derived ordering compares `(name, exponent)` pairs
/// lexicographically, with exponents compared numerically; this is the
/// order terms are printed in.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(BTreeMap<String, i64>);

impl Monomial {
    /// The empty product.
    pub fn one() -> Self {
        Self::default()
    }

    /// Builds a monomial from `(symbol, exponent)` pairs in any order.
    /// Repeated symbols have their exponents added; zero exponents vanish.
    pub fn from_powers<S: AsRef<str>>(raw: impl IntoIterator<Item = (S, i64)>) -> Self {
        let mut map = BTreeMap::new();
        for (name, exp) in raw {
            *map.entry(name.as_ref().to_string()).or_insert(0) += exp;
        }
        map.retain(|_, e| *e != 0);
        Self(map)
    }

    pub fn is_constant(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `(symbol, exponent)` pairs in alphabetical order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, i64)> {
        self.0.iter().map(|(k, &v)| (k.as_str(), v))
    }

    pub fn exponent(&self, symbol: &str) -> i64 {
        self.0.get(symbol).copied().unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut map = self.0.clone();
        for (k, &e) in &other.0 {
            let slot = map.entry(k.clone()).or_insert(0);
            *slot += e;
            if *slot == 0 {
                map.remove(k);
            }
        }
        Monomial(map)
    }

    pub(crate) fn encode(&self, out: &mut Vec<u8>) {
        out.extend_from_slice(&(self.0.len() as u64).to_le_bytes());
        for (k, &e) in &self.0 {
            out.extend_from_slice(&(k.len() as u64).to_le_bytes());
            out.extend_from_slice(k.as_bytes());
            out.extend_from_slice(&e.to_le_bytes());
        }
    }
}

/// `a b^9 e^4 f`; the constant monomial renders as the empty string.
impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (name, exp)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(name)?;
            if exp != 1 {
                write!(f, "^{exp}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monomial({self})")
    }
}

/// Normalizes a raw term: duplicate symbols are merged and zero exponents
/// dropped. The coefficient passes through unchanged.
pub fn normalize_term<S: AsRef<str>>(raw: &[(S, i64)], coeff: f64) -> (Monomial, f64) {
    (Monomial::from_powers(raw.iter().map(|(s, e)| (s.as_ref(), *e))), coeff)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn variable_order_is_irrelevant() {
        let (m1, c1) = normalize_term(&[("a", 3), ("b", 1), ("c", 6)], 4.0);
        let (m2, c2) = normalize_term(&[("b", 1), ("c", 6), ("a", 3)], 4.0);
        assert_eq!((m1.clone(), c1), (m2, c2));
        assert_eq!(m1.to_string(), "a^3 b c^6");
    }

    #[test]
    fn cancelling_exponents_give_the_constant() {
        let (m, c) = normalize_term(&[("x", 2), ("x", -2)], 5.0);
        assert!(m.is_constant());
        assert_eq!(c, 5.0);
        let (m, _) = normalize_term::<&str>(&[], 4.0);
        assert_eq!(m, Monomial::one());
        assert_eq!(m.to_string(), "");
    }

    #[test]
    fn product_adds_exponents() {
        let x = Monomial::from_powers([("x", 1), ("y", 2)]);
        let y = Monomial::from_powers([("x", -1), ("z", 1)]);
        assert_eq!(x.mul(&y), Monomial::from_powers([("y", 2), ("z", 1)]));
    }

    #[test]
    fn ordering_compares_exponents_numerically() {
        let m = |s: &[(&str, i64)]| Monomial::from_powers(s.iter().copied());
        let mut terms = vec![
            m(&[("b", 10), ("d", 10), ("f", 4)]),
            m(&[("a", 11), ("e", 6), ("f", 6)]),
            m(&[("a", 2), ("b", 4)]),
            m(&[]),
            m(&[("a", 1), ("b", 9)]),
            m(&[("b", 8), ("e", 7)]),
        ];
        terms.sort();
        let shown: Vec<String> = terms.iter().map(|t| t.to_string()).collect();
        assert_eq!(
            shown,
            vec!["", "a b^9", "a^2 b^4", "a^11 e^6 f^6", "b^8 e^7", "b^10 d^10 f^4"]
        );
    }
}
