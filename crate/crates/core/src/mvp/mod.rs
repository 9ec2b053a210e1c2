//! Sparse multivariate polynomials.
//!
//! An [`Mvp`] maps [`Monomial`]s to nonzero coefficients. Like any
//! associative container it enumerates its terms in some order; that order
//! is stable for a given value but carries no meaning. The accessors
//! [`Mvp::coeffs`], [`Mvp::vars`] and [`Mvp::powers`] expose the terms as
//! disords that share one hash (the polynomial's canonical digest), so the
//! three can be filtered against one another and fed back to
//! [`Mvp::from_disord_triples`] without ever learning the enumeration order.

mod monomial;
mod random;

use std::collections::BTreeMap;
use std::fmt;

use sha1::{Digest, Sha1};

pub use monomial::{normalize_term, Monomial};
pub use random::RandomShape;

use crate::disord::{Disord, Operand};
use crate::error::{Error, Result};
use crate::provenance::ProvenanceHash;
use std::sync::Arc;

use crate::storage::StorageOrder;
use crate::value::{Kind, Value};

#[derive(Clone, Default)]
pub struct Mvp {
    // enumeration order; monomials unique, coefficients nonzero
    terms: Arc<[(Monomial, f64)]>,
}

impl Mvp {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: f64) -> Self {
        Self::from_terms([(Monomial::one(), c)])
    }

    /// Sums the coefficients of like terms and drops zeros. Contributions to
    /// one monomial are added in sorted order, so the result does not depend
    /// on the order of the input.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, f64)>) -> Self {
        let mut grouped: BTreeMap<Monomial, Vec<f64>> = BTreeMap::new();
        for (m, c) in terms {
            grouped.entry(m).or_default().push(c);
        }
        let terms = grouped
            .into_iter()
            .filter_map(|(m, mut cs)| {
                let c = if cs.len() == 1 {
                    cs[0]
                } else {
                    cs.sort_by(f64::total_cmp);
                    cs.iter().sum()
                };
                (c != 0.0).then_some((m, c))
            })
            .collect();
        Self { terms }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in enumeration order. The order is an implementation detail.
    pub fn terms(&self) -> impl ExactSizeIterator<Item = (&Monomial, f64)> {
        self.terms.iter().map(|(m, c)| (m, *c))
    }

    /// Terms sorted by monomial.
    pub fn canonical_terms(&self) -> Vec<(&Monomial, f64)> {
        let mut out: Vec<_> = self.terms().collect();
        out.sort_by(|a, b| a.0.cmp(b.0));
        out
    }

    pub fn coefficient(&self, m: &Monomial) -> f64 {
        self.terms.iter().find(|(k, _)| k == m).map_or(0.0, |(_, c)| *c)
    }

    /// The same polynomial laid out as `order` dictates. The layout is a
    /// function of the order and of the polynomial's value only.
    pub fn arranged(&self, order: &StorageOrder) -> Mvp {
        let mut canonical = self.terms.to_vec();
        canonical.sort_by(|a, b| a.0.cmp(&b.0));
        let terms = order.arrange(&self.canonical_digest(), canonical);
        Mvp { terms: terms.into() }
    }

    pub fn neg(&self) -> Mvp {
        Mvp {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn add(&self, other: &Mvp) -> Mvp {
        Self::from_terms(self.terms.iter().chain(other.terms.iter()).cloned())
    }

    pub fn sub(&self, other: &Mvp) -> Mvp {
        self.add(&other.neg())
    }

    pub fn scalar_mul(&self, k: f64) -> Mvp {
        Self::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), k * c)))
    }

    pub fn mul(&self, other: &Mvp) -> Mvp {
        let mut products = Vec::with_capacity(self.len() * other.len());
        for (m1, c1) in self.terms.iter() {
            for (m2, c2) in other.terms.iter() {
                products.push((m1.mul(m2), c1 * c2));
            }
        }
        Self::from_terms(products)
    }

    /// `self^k` by repeated squaring; `p^0` is 1.
    pub fn int_pow(&self, k: i64) -> Result<Mvp> {
        if k < 0 {
            return Err(Error::NegativePower(k));
        }
        let mut result = Mvp::constant(1.0);
        let mut base = self.clone();
        let mut k = k as u64;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        Ok(result)
    }

    /// Algebraic equality: same monomials with exactly equal coefficients.
    pub fn equals(&self, other: &Mvp) -> bool {
        self.len() == other.len() && self.canonical_terms() == other.canonical_terms()
    }

    /// Digest of the sorted term list; equal polynomials give equal digests
    /// whatever their enumeration order.
    pub fn canonical_digest(&self) -> ProvenanceHash {
        let mut bytes = Vec::with_capacity(16 + self.len() * 32);
        bytes.extend_from_slice(b"mvp\0");
        bytes.extend_from_slice(&(self.len() as u64).to_le_bytes());
        for (m, c) in self.canonical_terms() {
            m.encode(&mut bytes);
            bytes.extend_from_slice(&c.to_bits().to_le_bytes());
        }
        ProvenanceHash::from_bytes(Sha1::digest(&bytes).into())
    }

    fn accessor(&self, kind: Kind, f: impl Fn(&Monomial, f64) -> Value) -> Disord {
        let elements: Vec<Value> = self.terms.iter().map(|(m, c)| f(m, *c)).collect();
        let kind = (!elements.is_empty()).then_some(kind);
        Disord::from_parts(elements, kind, self.canonical_digest())
    }

    /// Coefficients, one per term, in enumeration order.
    pub fn coeffs(&self) -> Disord {
        self.accessor(Kind::Number, |_, c| Value::Number(c))
    }

    /// Variable names of each term, aligned with [`coeffs`](Self::coeffs).
    pub fn vars(&self) -> Disord {
        self.accessor(Kind::List, |m, _| {
            Value::List(m.iter().map(|(s, _)| Value::Symbol(s.to_string())).collect())
        })
    }

    /// Exponents of each term, aligned with [`vars`](Self::vars).
    pub fn powers(&self) -> Disord {
        self.accessor(Kind::List, |m, _| {
            Value::List(m.iter().map(|(_, e)| Value::Number(e as f64)).collect())
        })
    }

    /// Replaces the coefficients. `value` is a scalar (every term gets it)
    /// or a numeric disord compatible with [`coeffs`](Self::coeffs), whose
    /// element `i` becomes the coefficient of term `i`. Terms whose new
    /// coefficient is zero disappear.
    pub fn set_coeffs(&self, value: impl Into<Operand>) -> Result<Mvp> {
        let new: Vec<f64> = match value.into() {
            Operand::Plain(p) if p.len() != 1 => return Err(Error::PlainVectorReplacement(p.len())),
            Operand::Plain(mut p) => vec![p.pop().expect("one").as_number()?; self.len()],
            Operand::Scalar(v) => vec![v.as_number()?; self.len()],
            Operand::Disord(d) => {
                let current = self.coeffs();
                current.check_compatible(&d)?;
                if d.len() != self.len() {
                    return Err(Error::LengthMismatch {
                        expected: self.len(),
                        found: d.len(),
                    });
                }
                d.storage_view()
                    .iter()
                    .map(Value::as_number)
                    .collect::<Result<_>>()?
            }
        };
        let terms = self
            .terms
            .iter()
            .zip(new)
            .filter(|(_, c)| *c != 0.0)
            .map(|((m, _), c)| (m.clone(), c))
            .collect();
        Ok(Mvp { terms })
    }

    /// Builds a polynomial from aligned plain sequences of variable names,
    /// exponents and coefficients.
    pub fn from_triples<S: AsRef<str>>(vars: &[Vec<S>], powers: &[Vec<i64>], coeffs: &[f64]) -> Result<Mvp> {
        if vars.len() != coeffs.len() || powers.len() != coeffs.len() {
            return Err(Error::LengthMismatch {
                expected: coeffs.len(),
                found: if vars.len() != coeffs.len() { vars.len() } else { powers.len() },
            });
        }
        let mut terms = Vec::with_capacity(coeffs.len());
        for ((vs, ps), &c) in vars.iter().zip(powers).zip(coeffs) {
            if vs.len() != ps.len() {
                return Err(Error::LengthMismatch {
                    expected: vs.len(),
                    found: ps.len(),
                });
            }
            let raw: Vec<(&str, i64)> = vs.iter().map(AsRef::as_ref).zip(ps.iter().copied()).collect();
            terms.push(normalize_term(&raw, c));
        }
        Ok(Mvp::from_terms(terms))
    }

    /// As [`from_triples`](Self::from_triples), from three disords that must
    /// share one hash.
    pub fn from_disord_triples(vars: &Disord, powers: &Disord, coeffs: &Disord) -> Result<Mvp> {
        vars.check_compatible(powers)?;
        powers.check_compatible(coeffs)?;
        vars.check_compatible(coeffs)?;
        let symbol_lists = vars
            .storage_view()
            .iter()
            .map(|v| {
                v.as_list()?
                    .iter()
                    .map(|s| s.as_symbol().map(str::to_string))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let power_lists = powers
            .storage_view()
            .iter()
            .map(|v| v.as_list()?.iter().map(as_exponent).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let cs = coeffs
            .storage_view()
            .iter()
            .map(Value::as_number)
            .collect::<Result<Vec<_>>>()?;
        Mvp::from_triples(&symbol_lists, &power_lists, &cs)
    }
}

fn as_exponent(v: &Value) -> Result<i64> {
    let x = v.as_number()?;
    if x.fract() != 0.0 || !x.is_finite() || x.abs() > i64::MAX as f64 / 2.0 {
        return Err(Error::type_mismatch(format!("exponent {x} is not an integer")));
    }
    Ok(x as i64)
}

impl PartialEq for Mvp {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl fmt::Debug for Mvp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disord::BinaryOp;

    fn term(vars: &[(&str, i64)], c: f64) -> (Monomial, f64) {
        (Monomial::from_powers(vars.iter().copied()), c)
    }

    // x^2 + 4 - 3xyz
    fn sample() -> Mvp {
        Mvp::from_terms([
            term(&[("x", 2)], 1.0),
            term(&[], 4.0),
            term(&[("x", 1), ("y", 1), ("z", 1)], -3.0),
        ])
    }

    #[test]
    fn canonical_form() {
        let p = Mvp::from_terms([term(&[("x", 1)], 2.0), term(&[("x", 1)], -2.0)]);
        assert!(p.is_zero());
        let q = Mvp::from_terms([term(&[("x", 1)], 1.0), term(&[("x", 1)], 2.0)]);
        assert_eq!(q.coefficient(&Monomial::from_powers([("x", 1)])), 3.0);
    }

    #[test]
    fn arithmetic() {
        let x = Mvp::from_terms([term(&[("x", 1)], 1.0)]);
        let one = Mvp::constant(1.0);
        let lhs = x.add(&one).mul(&x.sub(&one));
        let rhs = x.int_pow(2).unwrap().sub(&one);
        assert_eq!(lhs, rhs);
        assert!(sample().sub(&sample()).is_zero());
        assert_eq!(sample().add(&Mvp::zero()), sample());
        assert_eq!(sample().int_pow(0).unwrap(), Mvp::constant(1.0));
        assert_eq!(sample().int_pow(-1), Err(Error::NegativePower(-1)));
        assert!(sample().scalar_mul(0.0).is_zero());
        assert_ne!(sample(), sample().add(&one));
    }

    #[test]
    fn accessors_are_jointly_consistent() {
        let p = sample();
        let (c, v, pw) = (p.coeffs(), p.vars(), p.powers());
        assert_eq!(c.hash(), v.hash());
        assert_eq!(v.hash(), pw.hash());
        assert_eq!(c.hash(), p.canonical_digest());
        assert_eq!(
            c.storage_view(),
            &[Value::Number(4.0), Value::Number(-3.0), Value::Number(1.0)]
        );
        assert_eq!(pw.storage_view()[1], Value::List(crate::value::numbers([1., 1., 1.])));
        assert_eq!(Mvp::from_disord_triples(&v, &pw, &c).unwrap(), p);
        assert!(Mvp::zero().coeffs().is_empty());
        assert_eq!(p.coeffs(), p.coeffs());
    }

    #[test]
    fn digest_ignores_enumeration() {
        let p = sample();
        for seed in 0..10 {
            let q = p.arranged(&StorageOrder::Shuffle(seed));
            assert_eq!(q.canonical_digest(), p.canonical_digest());
            assert_eq!(q, p);
        }
        assert_ne!(p.canonical_digest(), p.add(&Mvp::constant(1.0)).canonical_digest());
        assert_ne!(Mvp::zero().canonical_digest(), Mvp::constant(1.0).canonical_digest());
    }

    #[test]
    fn coefficient_replacement() {
        let p = sample();
        assert_eq!(p.set_coeffs(p.coeffs()).unwrap(), p);
        let mask = Disord::elementwise_binary(BinaryOp::Lt, p.coeffs(), 2.0).unwrap();
        let filtered = p.set_coeffs(p.coeffs().replace_bool(&mask, 0.0).unwrap()).unwrap();
        assert_eq!(filtered, Mvp::constant(4.0));
        assert_eq!(p.set_coeffs(2.0).unwrap().len(), 3);
        assert!(p.set_coeffs(0.0).unwrap().is_zero());

        let other = Mvp::rmvp(3);
        assert_eq!(p.set_coeffs(other.coeffs()).unwrap_err().code(), "HashMismatch");
        assert_eq!(
            p.set_coeffs(crate::value::numbers([1., 2.])),
            Err(Error::PlainVectorReplacement(2))
        );
    }

    #[test]
    fn triples_must_share_provenance() {
        let p = sample();
        let q = Mvp::rmvp(1);
        assert_eq!(
            Mvp::from_disord_triples(&p.vars(), &p.powers(), &q.coeffs())
                .unwrap_err()
                .code(),
            "HashMismatch"
        );
        assert_eq!(
            Mvp::from_triples(&[vec!["x"]], &[vec![1, 2]], &[1.0]).unwrap_err().code(),
            "LengthMismatch"
        );
        let cancel = Mvp::from_triples(&[vec!["x"], vec!["x"]], &[vec![1], vec![1]], &[2.0, -2.0]).unwrap();
        assert!(cancel.is_zero());
    }
}
