//! Disordered vectors.
//!
//! A [`Disord`] is a sequence whose storage order is an implementation
//! detail. Operations whose answer does not depend on that order (elementwise
//! arithmetic between aligned operands, reductions, sorting into a plain
//! vector, Boolean-mask extraction and replacement) are provided; operations
//! whose answer would depend on it (positional access, combining with a plain
//! vector, combining two differently-born disords) fail.
//!
//! Alignment is tracked by a [`ProvenanceHash`]. Elementwise operations keep
//! their operand's hash, so `a`, `a^2` and `a + 1/a` stay combinable with
//! one another.

use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, IndexUse, Result};
use crate::format;
use crate::provenance::ProvenanceHash;
use crate::storage::StorageOrder;
use crate::value::{common_kind, encode_sequence, Kind, Value};

/// Default length of [`Disord::rdis`].
pub const RDIS_DEFAULT_LEN: usize = 9;

#[derive(Clone, PartialEq)]
pub struct Disord {
    elements: Arc<[Value]>,
    kind: Option<Kind>,
    hash: ProvenanceHash,
}

/// An argument to an elementwise operation.
#[derive(Debug, Clone, PartialEq)]
pub enum Operand {
    Disord(Disord),
    /// A length-one value; broadcasts against any disord.
    Scalar(Value),
    /// An ordinary ordered vector. Only length one (a scalar) combines with
    /// a disord.
    Plain(Vec<Value>),
}

impl From<Disord> for Operand {
    fn from(d: Disord) -> Self {
        Operand::Disord(d)
    }
}

impl From<&Disord> for Operand {
    fn from(d: &Disord) -> Self {
        Operand::Disord(d.clone())
    }
}

impl From<Value> for Operand {
    fn from(v: Value) -> Self {
        Operand::Scalar(v)
    }
}

impl From<f64> for Operand {
    fn from(x: f64) -> Self {
        Operand::Scalar(Value::Number(x))
    }
}

impl From<bool> for Operand {
    fn from(b: bool) -> Self {
        Operand::Scalar(Value::Bool(b))
    }
}

impl From<Vec<Value>> for Operand {
    fn from(v: Vec<Value>) -> Self {
        Operand::Plain(v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
    Mod,
    Pmax,
    Pmin,
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
    Ne,
}

impl BinaryOp {
    pub const ALL: [BinaryOp; 14] = [
        BinaryOp::Add,
        BinaryOp::Sub,
        BinaryOp::Mul,
        BinaryOp::Div,
        BinaryOp::Pow,
        BinaryOp::Mod,
        BinaryOp::Pmax,
        BinaryOp::Pmin,
        BinaryOp::Lt,
        BinaryOp::Le,
        BinaryOp::Gt,
        BinaryOp::Ge,
        BinaryOp::Eq,
        BinaryOp::Ne,
    ];

    pub fn is_comparison(self) -> bool {
        matches!(
            self,
            BinaryOp::Lt | BinaryOp::Le | BinaryOp::Gt | BinaryOp::Ge | BinaryOp::Eq | BinaryOp::Ne
        )
    }

    fn result_kind(self) -> Kind {
        if self.is_comparison() {
            Kind::Bool
        } else {
            Kind::Number
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            BinaryOp::Add => "+",
            BinaryOp::Sub => "-",
            BinaryOp::Mul => "*",
            BinaryOp::Div => "/",
            BinaryOp::Pow => "^",
            BinaryOp::Mod => "%%",
            BinaryOp::Pmax => "pmax",
            BinaryOp::Pmin => "pmin",
            BinaryOp::Lt => "<",
            BinaryOp::Le => "<=",
            BinaryOp::Gt => ">",
            BinaryOp::Ge => ">=",
            BinaryOp::Eq => "==",
            BinaryOp::Ne => "!=",
        }
    }

    /// Applies the operator to two single values.
    pub fn apply(self, lhs: &Value, rhs: &Value) -> Result<Value> {
        use std::cmp::Ordering;

        if !self.is_comparison() {
            let (x, y) = (lhs.as_number()?, rhs.as_number()?);
            let z = match self {
                BinaryOp::Add => x + y,
                BinaryOp::Sub => x - y,
                BinaryOp::Mul => x * y,
                BinaryOp::Div => x / y,
                BinaryOp::Pow => x.powf(y),
                // result takes the sign of the divisor
                BinaryOp::Mod => x - y * (x / y).floor(),
                BinaryOp::Pmax => {
                    if x.is_nan() || y.is_nan() {
                        f64::NAN
                    } else {
                        x.max(y)
                    }
                }
                BinaryOp::Pmin => {
                    if x.is_nan() || y.is_nan() {
                        f64::NAN
                    } else {
                        x.min(y)
                    }
                }
                _ => unreachable!(),
            };
            return Ok(Value::Number(z));
        }

        if lhs.kind() != rhs.kind() {
            return Err(Error::type_mismatch(format!(
                "cannot compare a {} with a {}",
                lhs.kind(),
                rhs.kind()
            )));
        }
        if matches!(self, BinaryOp::Eq | BinaryOp::Ne) {
            let equal = lhs == rhs;
            return Ok(Value::Bool(if self == BinaryOp::Eq { equal } else { !equal }));
        }
        let ordering = match (lhs, rhs) {
            (Value::Number(x), Value::Number(y)) => x.partial_cmp(y),
            (Value::Bool(x), Value::Bool(y)) => Some(x.cmp(y)),
            (Value::Symbol(x), Value::Symbol(y)) => Some(x.cmp(y)),
            _ => return Err(Error::type_mismatch("lists cannot be ordered")),
        };
        let holds = match ordering {
            None => false,
            Some(o) => match self {
                BinaryOp::Lt => o == Ordering::Less,
                BinaryOp::Le => o != Ordering::Greater,
                BinaryOp::Gt => o == Ordering::Greater,
                BinaryOp::Ge => o != Ordering::Less,
                _ => unreachable!(),
            },
        };
        Ok(Value::Bool(holds))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reduction {
    Max,
    Min,
    Sum,
    Prod,
    Any,
    All,
    Length,
}

impl Reduction {
    pub const ALL: [Reduction; 7] = [
        Reduction::Max,
        Reduction::Min,
        Reduction::Sum,
        Reduction::Prod,
        Reduction::Any,
        Reduction::All,
        Reduction::Length,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Reduction::Max => "max",
            Reduction::Min => "min",
            Reduction::Sum => "sum",
            Reduction::Prod => "prod",
            Reduction::Any => "any",
            Reduction::All => "all",
            Reduction::Length => "length",
        }
    }
}

/// Applies a reduction to values in any order; the result never depends on
/// that order. Sums and products accumulate over the sorted values so that
/// floating-point rounding is order-independent too.
pub fn reduce_values(op: Reduction, values: &[Value]) -> Result<Value> {
    if op == Reduction::Length {
        return Ok(Value::Number(values.len() as f64));
    }
    if matches!(op, Reduction::Any | Reduction::All) {
        let bools = values.iter().map(Value::as_bool).collect::<Result<Vec<_>>>()?;
        let out = if op == Reduction::Any {
            bools.iter().any(|&b| b)
        } else {
            bools.iter().all(|&b| b)
        };
        return Ok(Value::Bool(out));
    }
    let mut xs = values
        .iter()
        .map(|v| match v {
            // booleans count as 0/1 in sums and products
            Value::Bool(b) if matches!(op, Reduction::Sum | Reduction::Prod) => Ok(f64::from(u8::from(*b))),
            other => other.as_number(),
        })
        .collect::<Result<Vec<f64>>>()?;
    let out = match op {
        Reduction::Max | Reduction::Min if xs.iter().any(|x| x.is_nan()) => f64::NAN,
        Reduction::Max => xs.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        Reduction::Min => xs.iter().copied().fold(f64::INFINITY, f64::min),
        Reduction::Sum => {
            xs.sort_by(f64::total_cmp);
            xs.iter().sum()
        }
        Reduction::Prod => {
            xs.sort_by(f64::total_cmp);
            xs.iter().product()
        }
        _ => unreachable!(),
    };
    Ok(Value::Number(out))
}

/// Sorts values of an orderable kind. NaNs go last.
pub fn sort_values(values: &[Value], ascending: bool) -> Result<Vec<Value>> {
    let kind = common_kind(values)?;
    let mut out = values.to_vec();
    match kind {
        None => {}
        Some(Kind::Number) => out.sort_by(|a, b| match (a, b) {
            (Value::Number(x), Value::Number(y)) => match (x.is_nan(), y.is_nan()) {
                (true, true) => std::cmp::Ordering::Equal,
                (true, false) => std::cmp::Ordering::Greater,
                (false, true) => std::cmp::Ordering::Less,
                (false, false) if ascending => x.total_cmp(y),
                (false, false) => y.total_cmp(x),
            },
            _ => unreachable!(),
        }),
        Some(Kind::Bool) => {
            out.sort_by_key(|v| v.as_bool().unwrap_or(false));
            if !ascending {
                out.reverse();
            }
        }
        Some(Kind::Symbol) => {
            out.sort_by(|a, b| a.as_symbol().unwrap_or("").cmp(b.as_symbol().unwrap_or("")));
            if !ascending {
                out.reverse();
            }
        }
        Some(Kind::List) => return Err(Error::type_mismatch("lists cannot be sorted")),
    }
    Ok(out)
}

fn is_permutation(indices: &[usize], n: usize) -> bool {
    if indices.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &i in indices {
        if i >= n || std::mem::replace(&mut seen[i], true) {
            return false;
        }
    }
    true
}

fn check_value_kind(target: Option<Kind>, value: &Value) -> Result<()> {
    match target {
        Some(kind) if kind != value.kind() => Err(Error::type_mismatch(format!(
            "cannot store a {} in a disord of {}s",
            value.kind(),
            kind
        ))),
        _ => Ok(()),
    }
}

impl Disord {
    /// Creates a disord stored in the given order. Its hash is the digest of
    /// the values exactly as given.
    pub fn new(values: Vec<Value>) -> Result<Self> {
        Self::create(values, &StorageOrder::Insertion)
    }

    /// Creates a disord whose storage layout is chosen by `order`. The hash
    /// depends only on `values`, so equal creations stay compatible.
    pub fn create(values: Vec<Value>, order: &StorageOrder) -> Result<Self> {
        let kind = common_kind(&values)?;
        let hash = ProvenanceHash::fresh_from_sequence(&encode_sequence(kind, &values));
        let elements = order.arrange(&hash, values);
        Ok(Self {
            elements: elements.into(),
            kind,
            hash,
        })
    }

    pub(crate) fn from_parts(elements: Vec<Value>, kind: Option<Kind>, hash: ProvenanceHash) -> Self {
        debug_assert!(common_kind(&elements).map_or(false, |k| k.is_none() || k == kind));
        Self {
            elements: elements.into(),
            kind,
            hash,
        }
    }

    /// A pseudo-random arrangement of `1..=n`, deterministic in `seed`.
    pub fn rdis(n: usize, seed: u64) -> Self {
        Self::rdis_with(n, seed, &StorageOrder::Insertion)
    }

    pub fn rdis_with(n: usize, seed: u64, order: &StorageOrder) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut xs: Vec<f64> = (1..=n).map(|i| i as f64).collect();
        xs.shuffle(&mut rng);
        Self::create(xs.into_iter().map(Value::Number).collect(), order)
            .expect("numbers are homogeneous")
    }

    pub fn hash(&self) -> ProvenanceHash {
        self.hash
    }

    /// Element kind; `None` only for an empty disord of unknown kind.
    pub fn kind(&self) -> Option<Kind> {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The elements in their implementation-specific storage order. The order
    /// carries no meaning; only use it for display or for pairing with
    /// another disord of the same hash.
    pub fn storage_view(&self) -> &[Value] {
        &self.elements
    }

    /// Equal hashes, or either side empty.
    pub fn is_compatible(&self, other: &Disord) -> bool {
        self.hash == other.hash || self.is_empty() || other.is_empty()
    }

    pub fn check_compatible(&self, other: &Disord) -> Result<()> {
        if self.is_compatible(other) {
            Ok(())
        } else {
            Err(Error::HashMismatch {
                left: self.hash,
                right: other.hash,
            })
        }
    }

    fn with_elements(&self, elements: Vec<Value>, kind: Option<Kind>) -> Self {
        Self {
            elements: elements.into(),
            kind,
            hash: self.hash,
        }
    }

    fn empty_like(&self, hash: ProvenanceHash, kind: Option<Kind>) -> Self {
        Self {
            elements: Arc::from(Vec::new()),
            kind,
            hash,
        }
    }

    /// `op` applied elementwise. At least one side must be a disord; two
    /// disords must be compatible. The result carries the disord operand's
    /// hash (the nonempty one when there are two).
    pub fn elementwise_binary(
        op: BinaryOp,
        lhs: impl Into<Operand>,
        rhs: impl Into<Operand>,
    ) -> Result<Disord> {
        let lhs = lhs.into().into_scalar_if_unit()?;
        let rhs = rhs.into().into_scalar_if_unit()?;
        let kind = Some(op.result_kind());
        match (&lhs, &rhs) {
            (Operand::Disord(a), Operand::Disord(b)) => {
                a.check_compatible(b)?;
                if a.is_empty() || b.is_empty() {
                    let hash = if a.is_empty() { b.hash } else { a.hash };
                    return Ok(a.empty_like(hash, kind));
                }
                if a.len() != b.len() {
                    return Err(Error::LengthMismatch {
                        expected: a.len(),
                        found: b.len(),
                    });
                }
                let out = a
                    .elements
                    .iter()
                    .zip(b.elements.iter())
                    .map(|(x, y)| op.apply(x, y))
                    .collect::<Result<Vec<_>>>()?;
                Ok(a.with_elements(out, kind))
            }
            (Operand::Disord(a), Operand::Scalar(s)) => {
                let out = a
                    .elements
                    .iter()
                    .map(|x| op.apply(x, s))
                    .collect::<Result<Vec<_>>>()?;
                Ok(a.with_elements(out, kind))
            }
            (Operand::Scalar(s), Operand::Disord(b)) => {
                let out = b
                    .elements
                    .iter()
                    .map(|y| op.apply(s, y))
                    .collect::<Result<Vec<_>>>()?;
                Ok(b.with_elements(out, kind))
            }
            (Operand::Disord(a), Operand::Plain(_)) => Ok(a.empty_like(a.hash, kind)),
            (Operand::Plain(_), Operand::Disord(b)) => Ok(b.empty_like(b.hash, kind)),
            _ => Err(Error::type_mismatch(
                "elementwise disord operation needs at least one disord operand",
            )),
        }
    }

    /// Applies `f` to every element. Same length, same hash.
    pub fn map_elements(&self, mut f: impl FnMut(&Value) -> Result<Value>) -> Result<Disord> {
        let out = self.elements.iter().map(&mut f).collect::<Result<Vec<_>>>()?;
        let kind = common_kind(&out)?.or(self.kind);
        Ok(self.with_elements(out, kind))
    }

    /// A plain scalar; provenance is dropped.
    pub fn reduce(&self, op: Reduction) -> Result<Value> {
        reduce_values(op, &self.elements)
    }

    /// Sorted plain vector; provenance is dropped.
    pub fn sort_plain(&self, ascending: bool) -> Result<Vec<Value>> {
        sort_values(&self.elements, ascending)
    }

    /// Reversed storage. The hash changes, so the result is not compatible
    /// with `self`; reversing twice restores both elements and hash.
    pub fn reverse(&self) -> Disord {
        let mut out = self.elements.to_vec();
        out.reverse();
        Self {
            elements: out.into(),
            kind: self.kind,
            hash: self.hash.involute_reverse(),
        }
    }

    fn mask_bits(&self, mask: &Disord) -> Result<Vec<bool>> {
        if let Some(kind) = mask.kind {
            if kind != Kind::Bool {
                return Err(Error::type_mismatch(format!(
                    "index must be a boolean disord, found {kind}s"
                )));
            }
        }
        self.check_compatible(mask)?;
        if mask.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                found: mask.len(),
            });
        }
        mask.elements.iter().map(Value::as_bool).collect()
    }

    /// Elements where `mask` is true. The mask must be compatible with
    /// `self`; the result's hash is derived from `self`'s hash and the mask.
    pub fn extract_bool(&self, mask: &Disord) -> Result<Disord> {
        let bits = self.mask_bits(mask)?;
        let out: Vec<Value> = self
            .elements
            .iter()
            .zip(&bits)
            .filter(|(_, &keep)| keep)
            .map(|(v, _)| v.clone())
            .collect();
        Ok(Self {
            elements: out.into(),
            kind: self.kind,
            hash: self.hash.derive_subset(&bits),
        })
    }

    /// Positional extraction with zero-based `indices`: either none of the
    /// positions, or every position exactly once.
    pub fn extract_int(&self, indices: &[usize]) -> Result<Disord> {
        if indices.is_empty() {
            let none = vec![false; self.len()];
            return Ok(self.empty_like(self.hash.derive_subset(&none), self.kind));
        }
        if !is_permutation(indices, self.len()) {
            return Err(Error::bad_index(IndexUse::Extract));
        }
        let out = indices.iter().map(|&i| self.elements[i].clone()).collect::<Vec<_>>();
        Ok(Self {
            elements: out.into(),
            kind: self.kind,
            hash: self.hash.derive_permutation(indices),
        })
    }

    /// Replaces the elements selected by `mask`. `value` is a scalar, or a
    /// disord derived from `self` by the same mask (same hash as
    /// `self.extract_bool(mask)`). The result keeps `self`'s hash.
    pub fn replace_bool(&self, mask: &Disord, value: impl Into<Operand>) -> Result<Disord> {
        let bits = self.mask_bits(mask)?;
        let selected = bits.iter().filter(|&&b| b).count();
        let mut out = self.elements.to_vec();
        match value.into().into_scalar_if_unit_replacement()? {
            Operand::Scalar(v) => {
                if selected > 0 {
                    check_value_kind(self.kind, &v)?;
                }
                for (slot, _) in out.iter_mut().zip(&bits).filter(|(_, &b)| b) {
                    *slot = v.clone();
                }
            }
            Operand::Disord(v) => {
                let expected = self.hash.derive_subset(&bits);
                if !v.is_empty() && v.hash != expected {
                    return Err(Error::HashMismatch {
                        left: expected,
                        right: v.hash,
                    });
                }
                if v.len() != selected {
                    return Err(Error::LengthMismatch {
                        expected: selected,
                        found: v.len(),
                    });
                }
                if let (Some(k), Some(first)) = (self.kind, v.elements.first()) {
                    if k != first.kind() {
                        check_value_kind(Some(k), first)?;
                    }
                }
                let slots = out.iter_mut().zip(&bits).filter(|(_, &b)| b).map(|(s, _)| s);
                for (slot, new) in slots.zip(v.elements.iter()) {
                    *slot = new.clone();
                }
            }
            Operand::Plain(p) => return Err(Error::PlainVectorReplacement(p.len())),
        }
        let kind = self.kind;
        Ok(self.with_elements(out, kind))
    }

    /// Positional replacement; `indices` (zero-based) must name every
    /// position exactly once. A scalar overwrites everything and keeps the
    /// hash. A plain vector of full length is installed at the given
    /// positions and the result gets a fresh hash: its order no longer
    /// corresponds to the old one.
    pub fn replace_int(&self, indices: &[usize], value: impl Into<Operand>) -> Result<Disord> {
        if !is_permutation(indices, self.len()) {
            return Err(Error::bad_index(IndexUse::Replace));
        }
        match value.into() {
            Operand::Plain(p) if p.len() != 1 => {
                if p.len() != self.len() {
                    return Err(Error::LengthMismatch {
                        expected: self.len(),
                        found: p.len(),
                    });
                }
                if let Some(first) = p.first() {
                    check_value_kind(self.kind, first)?;
                }
                let mut out = p.clone();
                for (new, &slot) in p.into_iter().zip(indices) {
                    out[slot] = new;
                }
                Disord::new(out)
            }
            other => match other.into_scalar_if_unit_replacement()? {
                Operand::Scalar(v) => {
                    if !self.is_empty() {
                        check_value_kind(self.kind, &v)?;
                    }
                    Ok(self.with_elements(vec![v; self.len()], self.kind))
                }
                Operand::Disord(v) if indices.iter().enumerate().all(|(i, &j)| i == j) => {
                    self.replace_all(v)
                }
                _ => Err(Error::bad_index(IndexUse::Replace)),
            },
        }
    }

    /// Replaces every element. A scalar broadcasts; a disord must be
    /// compatible and of equal length. Either way the hash is kept.
    pub fn replace_all(&self, value: impl Into<Operand>) -> Result<Disord> {
        match value.into().into_scalar_if_unit_replacement()? {
            Operand::Scalar(v) => {
                if !self.is_empty() {
                    check_value_kind(self.kind, &v)?;
                }
                Ok(self.with_elements(vec![v; self.len()], self.kind))
            }
            Operand::Disord(v) => {
                self.check_compatible(&v)?;
                if v.len() != self.len() {
                    return Err(Error::LengthMismatch {
                        expected: self.len(),
                        found: v.len(),
                    });
                }
                Ok(self.with_elements(v.elements.to_vec(), v.kind.or(self.kind)))
            }
            Operand::Plain(p) => Err(Error::PlainVectorReplacement(p.len())),
        }
    }
}

impl Operand {
    // Length-one plain vectors act as scalars; longer ones are refused.
    fn into_scalar_if_unit(self) -> Result<Operand> {
        match self {
            Operand::Plain(mut p) if p.len() == 1 => Ok(Operand::Scalar(p.pop().expect("one"))),
            Operand::Plain(p) if p.len() > 1 => Err(Error::PlainVectorOperand(p.len())),
            other => Ok(other),
        }
    }

    fn into_scalar_if_unit_replacement(self) -> Result<Operand> {
        match self {
            Operand::Plain(mut p) if p.len() == 1 => Ok(Operand::Scalar(p.pop().expect("one"))),
            Operand::Plain(p) => Err(Error::PlainVectorReplacement(p.len())),
            other => Ok(other),
        }
    }
}

impl fmt::Display for Disord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "A disord object with hash {} and elements", self.hash)?;
        let body = match self.kind {
            Some(Kind::List) => format::format_list(&self.elements),
            kind => format::format_atomic(&self.elements, kind.unwrap_or(Kind::Number)),
        };
        writeln!(f, "{body}")?;
        f.write_str("(in some order)")
    }
}

impl fmt::Debug for Disord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Disord")
            .field("hash", &self.hash)
            .field("elements", &self.elements)
            .finish()
    }
}
