//! Element values held by disords and plain vectors.

use std::fmt;

use crate::error::{Error, Result};

/// One element of a disord.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Number(f64),
    Bool(bool),
    Symbol(String),
    List(Vec<Value>),
}

/// The four element kinds. A disord holds elements of exactly one kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Number,
    Bool,
    Symbol,
    List,
}

impl Kind {
    fn tag(self) -> u8 {
        match self {
            Kind::Number => b'n',
            Kind::Bool => b'b',
            Kind::Symbol => b's',
            Kind::List => b'l',
        }
    }

    /// R-style name of an empty vector of this kind.
    pub fn empty_name(self) -> &'static str {
        match self {
            Kind::Number => "numeric(0)",
            Kind::Bool => "logical(0)",
            Kind::Symbol => "character(0)",
            Kind::List => "list()",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Number => "number",
            Kind::Bool => "boolean",
            Kind::Symbol => "symbol",
            Kind::List => "list",
        })
    }
}

impl Value {
    pub fn kind(&self) -> Kind {
        match self {
            Value::Number(_) => Kind::Number,
            Value::Bool(_) => Kind::Bool,
            Value::Symbol(_) => Kind::Symbol,
            Value::List(_) => Kind::List,
        }
    }

    pub fn as_number(&self) -> Result<f64> {
        match self {
            Value::Number(x) => Ok(*x),
            other => Err(Error::type_mismatch(format!(
                "expected a number, found a {}",
                other.kind()
            ))),
        }
    }

    pub fn as_bool(&self) -> Result<bool> {
        match self {
            Value::Bool(b) => Ok(*b),
            other => Err(Error::type_mismatch(format!(
                "expected a boolean, found a {}",
                other.kind()
            ))),
        }
    }

    pub fn as_symbol(&self) -> Result<&str> {
        match self {
            Value::Symbol(s) => Ok(s),
            other => Err(Error::type_mismatch(format!(
                "expected a symbol, found a {}",
                other.kind()
            ))),
        }
    }

    pub fn as_list(&self) -> Result<&[Value]> {
        match self {
            Value::List(items) => Ok(items),
            other => Err(Error::type_mismatch(format!(
                "expected a list, found a {}",
                other.kind()
            ))),
        }
    }

    /// Appends the order-sensitive canonical encoding of this value.
    pub fn encode(&self, out: &mut Vec<u8>) {
        out.push(self.kind().tag());
        match self {
            Value::Number(x) => out.extend_from_slice(&x.to_bits().to_le_bytes()),
            Value::Bool(b) => out.push(u8::from(*b)),
            Value::Symbol(s) => {
                out.extend_from_slice(&(s.len() as u64).to_le_bytes());
                out.extend_from_slice(s.as_bytes());
            }
            Value::List(items) => {
                out.extend_from_slice(&(items.len() as u64).to_le_bytes());
                for item in items {
                    item.encode(out);
                }
            }
        }
    }
}

/// Canonical encoding of a whole sequence: element kind, length, then each
/// element in stored order.
pub fn encode_sequence(kind: Option<Kind>, values: &[Value]) -> Vec<u8> {
    let mut out = Vec::with_capacity(16 + values.len() * 10);
    out.extend_from_slice(b"disord/sequence\0");
    out.push(kind.map_or(0, Kind::tag));
    out.extend_from_slice(&(values.len() as u64).to_le_bytes());
    for v in values {
        v.encode(&mut out);
    }
    out
}

/// Kind shared by every element, `None` for an empty slice.
pub fn common_kind(values: &[Value]) -> Result<Option<Kind>> {
    let Some(first) = values.first() else {
        return Ok(None);
    };
    let kind = first.kind();
    if values.iter().any(|v| v.kind() != kind) {
        return Err(Error::MixedKinds);
    }
    Ok(Some(kind))
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Number(x)
    }
}

impl From<i64> for Value {
    fn from(x: i64) -> Self {
        Value::Number(x as f64)
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Bool(b)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Symbol(s.to_string())
    }
}

impl From<String> for Value {
    fn from(s: String) -> Self {
        Value::Symbol(s)
    }
}

impl From<Vec<Value>> for Value {
    fn from(items: Vec<Value>) -> Self {
        Value::List(items)
    }
}

/// Numbers as values.
pub fn numbers(xs: impl IntoIterator<Item = f64>) -> Vec<Value> {
    xs.into_iter().map(Value::Number).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encoding_distinguishes_kinds_and_nesting() {
        let enc = |v: &Value| {
            let mut out = Vec::new();
            v.encode(&mut out);
            out
        };
        assert_ne!(enc(&Value::Number(1.0)), enc(&Value::Bool(true)));
        assert_ne!(
            enc(&Value::List(vec![Value::from("ab")])),
            enc(&Value::List(vec![Value::from("a"), Value::from("b")]))
        );
    }

    #[test]
    fn mixed_kinds_rejected() {
        assert_eq!(common_kind(&[]), Ok(None));
        assert_eq!(
            common_kind(&[Value::Number(1.0), Value::Number(2.0)]),
            Ok(Some(Kind::Number))
        );
        assert_eq!(
            common_kind(&[Value::Number(1.0), Value::Bool(true)]),
            Err(Error::MixedKinds)
        );
    }
}
