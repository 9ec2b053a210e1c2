use std::collections::HashMap;
use std::fmt;

use super::parser::{parse_line, parse_script, Expr, Statement, Target};
use super::transcript::Transcript;
use crate::disord::{reduce_values, sort_values, BinaryOp, Disord, Operand, Reduction};
use crate::error::{Error, IndexUse, Result};
use crate::format::format_atomic;
use crate::mvp::Mvp;
use crate::mvp_text::{parse_mvp, print_mvp};
use crate::storage::StorageOrder;
use crate::value::{Kind, Value};

/// Deliberate defects, used to check that the order-invariance harness
/// notices a broken container. All off by default.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Faults {
    /// Let `x[i]` pick arbitrary positions out of a disord.
    pub positional_extract: bool,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Options {
    pub storage_order: StorageOrder,
    pub faults: Faults,
}

impl Options {
    pub fn with_order(storage_order: StorageOrder) -> Self {
        Self {
            storage_order,
            ..Self::default()
        }
    }
}

/// A value bound to a name in a session.
#[derive(Debug, Clone, PartialEq)]
pub enum Object {
    /// An ordinary ordered vector; scalars are vectors of length one.
    Vector(Vec<Value>),
    Disord(Disord),
    Mvp(Mvp),
    Null,
}

impl Object {
    fn scalar(v: impl Into<Value>) -> Self {
        Object::Vector(vec![v.into()])
    }

    fn type_name(&self) -> &'static str {
        match self {
            Object::Vector(_) => "vector",
            Object::Disord(_) => "disord",
            Object::Mvp(_) => "mvp",
            Object::Null => "NULL",
        }
    }
}

impl fmt::Display for Object {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Object::Vector(v) => {
                let kind = v.first().map_or(Kind::Number, Value::kind);
                f.write_str(&format_atomic(v, kind))
            }
            Object::Disord(d) => d.fmt(f),
            Object::Mvp(p) => f.write_str(&print_mvp(p)),
            Object::Null => f.write_str("NULL"),
        }
    }
}

/// Result of running a whole script.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScriptOutcome {
    pub transcript: Transcript,
    /// 0 on success, 1 after a runtime error, 2 after a parse error.
    pub status: i32,
}

fn is_quit(e: &Expr) -> bool {
    matches!(e, Expr::Name(n) | Expr::Call(n, _) if n == "q" || n == "quit")
}

/// Runs `source` top to bottom. A runtime error outside `try(...)` stops
/// the run; a parse error anywhere stops it before anything executes.
pub fn run_script(source: &str, options: Options) -> ScriptOutcome {
    let mut transcript = Transcript::default();
    let statements = match parse_script(source) {
        Ok(s) => s,
        Err(e) => {
            transcript.raw_error(e.line, format!("Error [ParseError]: {e}"));
            return ScriptOutcome { transcript, status: 2 };
        }
    };
    let mut session = Session::new(options);
    for stmt in &statements {
        if stmt.expr.as_ref().is_some_and(is_quit) {
            break;
        }
        if let Err(err) = session.execute(stmt, &mut transcript) {
            transcript.error(stmt.line, &err);
            return ScriptOutcome { transcript, status: 1 };
        }
    }
    ScriptOutcome { transcript, status: 0 }
}

/// Interpreter state: the variable environment and run options.
#[derive(Debug, Clone, Default)]
pub struct Session {
    env: HashMap<String, Object>,
    options: Options,
}

/// What one interactive line did.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineResult {
    pub transcript: Transcript,
    pub quit: bool,
}

impl Session {
    pub fn new(options: Options) -> Self {
        Self {
            env: HashMap::new(),
            options,
        }
    }

    pub fn get(&self, name: &str) -> Option<&Object> {
        self.env.get(name)
    }

    /// Executes one parsed statement, echoing into `out`. Errors raised
    /// outside `try(...)` are returned.
    pub fn execute(&mut self, stmt: &Statement, out: &mut Transcript) -> Result<()> {
        let Some(expr) = &stmt.expr else {
            return Ok(());
        };
        let value = self.eval(expr, stmt.line, out)?;
        if stmt.echoes() && value != Object::Null {
            out.echo(stmt.line, value.to_string());
        }
        Ok(())
    }

    /// Parses and runs one interactive line; errors are printed, never
    /// propagated.
    pub fn run_line(&mut self, text: &str, line: usize) -> LineResult {
        let mut transcript = Transcript::default();
        let expr = match parse_line(text) {
            Ok(e) => e,
            Err(e) => {
                transcript.error(line, &Error::Parse(e));
                return LineResult { transcript, quit: false };
            }
        };
        if expr.as_ref().is_some_and(is_quit) {
            return LineResult { transcript, quit: true };
        }
        let stmt = Statement {
            line,
            source: text.to_string(),
            expr,
        };
        if let Err(err) = self.execute(&stmt, &mut transcript) {
            transcript.error(line, &err);
        }
        LineResult { transcript, quit: false }
    }

    fn order(&self) -> &StorageOrder {
        &self.options.storage_order
    }

    fn lay_out(&self, p: Mvp) -> Object {
        Object::Mvp(p.arranged(self.order()))
    }

    fn eval(&mut self, e: &Expr, line: usize, out: &mut Transcript) -> Result<Object> {
        match e {
            Expr::Number(x) => Ok(Object::scalar(*x)),
            Expr::Str(s) => Ok(Object::scalar(s.as_str())),
            Expr::Bool(b) => Ok(Object::scalar(*b)),
            Expr::Name(n) => self
                .env
                .get(n)
                .cloned()
                .ok_or_else(|| Error::UnboundName(n.clone())),
            Expr::Paren(inner) => self.eval(inner, line, out),
            Expr::Neg(inner) => {
                let v = self.eval(inner, line, out)?;
                match v {
                    Object::Mvp(p) => Ok(self.lay_out(p.neg())),
                    other => self.binary(BinaryOp::Sub, Object::scalar(0.0), other),
                }
            }
            Expr::Binary(op, l, r) => {
                let l = self.eval(l, line, out)?;
                let r = self.eval(r, line, out)?;
                self.binary(*op, l, r)
            }
            Expr::Range(a, b) => {
                let a = scalar_number(&self.eval(a, line, out)?)?;
                let b = scalar_number(&self.eval(b, line, out)?)?;
                let n = (b - a).abs().floor() as usize;
                let step = if b >= a { 1.0 } else { -1.0 };
                Ok(Object::Vector((0..=n).map(|i| Value::Number(a + step * i as f64)).collect()))
            }
            Expr::Index(base, idx) => {
                let base = self.eval(base, line, out)?;
                let idx = self.eval(idx, line, out)?;
                self.index(base, idx)
            }
            Expr::Assign(target, value) => {
                let v = self.eval(value, line, out)?;
                self.assign(target, v.clone(), line, out)?;
                Ok(v)
            }
            Expr::Call(name, args) => self.call(name, args, line, out),
        }
    }

    fn binary(&self, op: BinaryOp, l: Object, r: Object) -> Result<Object> {
        match (l, r) {
            (Object::Mvp(p), Object::Mvp(q)) => match op {
                BinaryOp::Add => Ok(self.lay_out(p.add(&q))),
                BinaryOp::Sub => Ok(self.lay_out(p.sub(&q))),
                BinaryOp::Mul => Ok(self.lay_out(p.mul(&q))),
                BinaryOp::Eq => Ok(Object::scalar(p.equals(&q))),
                BinaryOp::Ne => Ok(Object::scalar(!p.equals(&q))),
                _ => Err(Error::type_mismatch(format!(
                    "operator {} is not defined between polynomials",
                    op.symbol()
                ))),
            },
            (Object::Mvp(p), Object::Vector(v)) => {
                let k = unit_number(&v)?;
                match op {
                    BinaryOp::Add => Ok(self.lay_out(p.add(&Mvp::constant(k)))),
                    BinaryOp::Sub => Ok(self.lay_out(p.sub(&Mvp::constant(k)))),
                    BinaryOp::Mul => Ok(self.lay_out(p.scalar_mul(k))),
                    BinaryOp::Div => Ok(self.lay_out(p.scalar_mul(1.0 / k))),
                    BinaryOp::Pow => {
                        if k.fract() != 0.0 {
                            return Err(Error::type_mismatch(format!("non-integer power {k}")));
                        }
                        Ok(self.lay_out(p.int_pow(k as i64)?))
                    }
                    _ => Err(Error::type_mismatch(format!(
                        "operator {} is not defined between a polynomial and a number",
                        op.symbol()
                    ))),
                }
            }
            (Object::Vector(v), Object::Mvp(p)) => {
                let k = unit_number(&v)?;
                match op {
                    BinaryOp::Add => Ok(self.lay_out(Mvp::constant(k).add(&p))),
                    BinaryOp::Sub => Ok(self.lay_out(Mvp::constant(k).sub(&p))),
                    BinaryOp::Mul => Ok(self.lay_out(p.scalar_mul(k))),
                    _ => Err(Error::type_mismatch(format!(
                        "operator {} is not defined between a number and a polynomial",
                        op.symbol()
                    ))),
                }
            }
            (Object::Vector(a), Object::Vector(b)) => vector_binary(op, &a, &b).map(Object::Vector),
            (l, r) => Disord::elementwise_binary(op, operand(l)?, operand(r)?).map(Object::Disord),
        }
    }

    fn index(&self, base: Object, idx: Object) -> Result<Object> {
        match (base, idx) {
            (Object::Disord(d), Object::Disord(mask)) => d.extract_bool(&mask).map(Object::Disord),
            (Object::Disord(d), Object::Vector(v)) => {
                let positions = positions(&v, IndexUse::Extract)?;
                if self.options.faults.positional_extract && positions.iter().all(|&i| i < d.len()) {
                    let picked = positions.iter().map(|&i| d.storage_view()[i].clone()).collect();
                    return Ok(Object::Vector(picked));
                }
                d.extract_int(&positions).map(Object::Disord)
            }
            (Object::Vector(v), Object::Vector(i)) => vector_index(&v, &i).map(Object::Vector),
            (base, idx) => Err(Error::type_mismatch(format!(
                "cannot index a {} with a {}",
                base.type_name(),
                idx.type_name()
            ))),
        }
    }

    fn replace_in(&self, current: Object, idx: Object, value: Object) -> Result<Object> {
        match (current, idx) {
            (Object::Disord(d), Object::Disord(mask)) => d.replace_bool(&mask, operand(value)?).map(Object::Disord),
            (Object::Disord(d), Object::Vector(v)) => {
                let positions = positions(&v, IndexUse::Replace)?;
                let fresh = matches!(&value, Object::Vector(v) if v.len() != 1);
                let replaced = d.replace_int(&positions, operand(value)?)?;
                if fresh {
                    // a new object: lay it out like any other creation
                    return Disord::create(replaced.storage_view().to_vec(), self.order()).map(Object::Disord);
                }
                Ok(Object::Disord(replaced))
            }
            (Object::Vector(v), Object::Vector(i)) => {
                let Object::Vector(new) = value else {
                    return Err(Error::type_mismatch("a plain vector can only receive plain values"));
                };
                vector_replace(v, &i, &new).map(Object::Vector)
            }
            (current, idx) => Err(Error::type_mismatch(format!(
                "cannot index a {} with a {}",
                current.type_name(),
                idx.type_name()
            ))),
        }
    }

    fn lookup(&self, name: &str) -> Result<Object> {
        self.env
            .get(name)
            .cloned()
            .ok_or_else(|| Error::UnboundName(name.to_string()))
    }

    fn lookup_mvp(&self, name: &str) -> Result<Mvp> {
        match self.lookup(name)? {
            Object::Mvp(p) => Ok(p),
            other => Err(Error::type_mismatch(format!(
                "coeffs() needs an mvp, {name} is a {}",
                other.type_name()
            ))),
        }
    }

    fn assign(&mut self, target: &Target, value: Object, line: usize, out: &mut Transcript) -> Result<()> {
        let new = match target {
            Target::Name(_) => value,
            Target::Index(name, idx) => {
                let current = self.lookup(name)?;
                let idx = self.eval(idx, line, out)?;
                self.replace_in(current, idx, value)?
            }
            Target::Coeffs(name) => {
                let p = self.lookup_mvp(name)?;
                self.lay_out(p.set_coeffs(operand(value)?)?)
            }
            Target::CoeffsIndex(name, idx) => {
                let p = self.lookup_mvp(name)?;
                let idx = self.eval(idx, line, out)?;
                let Object::Disord(updated) = self.replace_in(Object::Disord(p.coeffs()), idx, value)? else {
                    unreachable!("replacing into a disord yields a disord")
                };
                self.lay_out(p.set_coeffs(updated)?)
            }
        };
        self.env.insert(target.name().to_string(), new);
        Ok(())
    }

    fn call(&mut self, name: &str, args: &[Expr], line: usize, out: &mut Transcript) -> Result<Object> {
        match name {
            "try" => {
                let [inner] = args else {
                    return Err(arity(name, "1"));
                };
                return match self.eval(inner, line, out) {
                    Ok(_) if matches!(inner, Expr::Assign(..)) => Ok(Object::Null),
                    Ok(v) => Ok(v),
                    Err(err) => {
                        out.error(line, &err);
                        Ok(Object::Null)
                    }
                };
            }
            "map" | "sapply" => {
                let [x, Expr::Name(f)] = args else {
                    return Err(Error::BadCall(format!(
                        "{name}() takes an object and a function name (double, upper, lengths)"
                    )));
                };
                let f = builtin_fn(f)?;
                return match self.eval(x, line, out)? {
                    Object::Disord(d) => d.map_elements(f).map(Object::Disord),
                    Object::Vector(v) => v.iter().map(f).collect::<Result<Vec<_>>>().map(Object::Vector),
                    other => Err(Error::type_mismatch(format!("cannot map over a {}", other.type_name()))),
                };
            }
            _ => {}
        }

        let values = args
            .iter()
            .map(|a| self.eval(a, line, out))
            .collect::<Result<Vec<_>>>()?;
        let order = *self.order();
        match (name, values.as_slice()) {
            ("print", [v]) => {
                out.echo(line, v.to_string());
                Ok(Object::Null)
            }
            ("c", vs) => concat(vs).map(Object::Vector),
            ("disord", vs) => Disord::create(concat(vs)?, &order).map(Object::Disord),
            ("rdis", vs) if vs.len() <= 2 => {
                let n = vs.first().map(count_arg).transpose()?.unwrap_or(9);
                let seed = vs.get(1).map(count_arg).transpose()?.unwrap_or(0);
                Ok(Object::Disord(Disord::rdis_with(n, seed as u64, &order)))
            }
            ("rmvp", vs) if vs.len() <= 1 => {
                let seed = vs.first().map(count_arg).transpose()?.unwrap_or(0);
                Ok(self.lay_out(Mvp::rmvp(seed as u64)))
            }
            ("mvp" | "as.mvp", [Object::Vector(v)]) => {
                let [Value::Symbol(text)] = v.as_slice() else {
                    return Err(Error::BadCall(format!("{name}() needs a polynomial string")));
                };
                Ok(self.lay_out(parse_mvp(text)?))
            }
            ("mvp", [Object::Disord(v), Object::Disord(p), Object::Disord(c)]) => {
                Ok(self.lay_out(Mvp::from_disord_triples(v, p, c)?))
            }
            ("coeffs" | "vars" | "powers", [Object::Mvp(p)]) => Ok(Object::Disord(match name {
                "coeffs" => p.coeffs(),
                "vars" => p.vars(),
                _ => p.powers(),
            })),
            ("sort", [x]) | ("sort", [x, _]) => {
                let ascending = match values.get(1) {
                    None => true,
                    Some(flag) => !scalar_bool(flag)?,
                };
                match x {
                    Object::Disord(d) => d.sort_plain(ascending).map(Object::Vector),
                    Object::Vector(v) => sort_values(v, ascending).map(Object::Vector),
                    other => Err(Error::type_mismatch(format!("cannot sort a {}", other.type_name()))),
                }
            }
            ("rev", [Object::Disord(d)]) => Ok(Object::Disord(d.reverse())),
            ("rev", [Object::Vector(v)]) => Ok(Object::Vector(v.iter().rev().cloned().collect())),
            ("pmax" | "pmin", [a, b]) => {
                let op = if name == "pmax" { BinaryOp::Pmax } else { BinaryOp::Pmin };
                self.binary(op, a.clone(), b.clone())
            }
            (_, [x]) if reduction(name).is_some() => {
                let op = reduction(name).expect("checked");
                match x {
                    Object::Disord(d) => d.reduce(op).map(Object::scalar),
                    Object::Vector(v) => reduce_values(op, v).map(Object::scalar),
                    Object::Mvp(p) if op == Reduction::Length => Ok(Object::scalar(p.len() as f64)),
                    other => Err(Error::type_mismatch(format!(
                        "{name}() is not defined for a {}",
                        other.type_name()
                    ))),
                }
            }
            (
                "print" | "rdis" | "rmvp" | "mvp" | "as.mvp" | "coeffs" | "vars" | "powers" | "sort" | "rev"
                | "pmax" | "pmin" | "max" | "min" | "sum" | "prod" | "any" | "all" | "length",
                _,
            ) => Err(Error::BadCall(format!(
                "invalid arguments to {name}(): {}",
                values.iter().map(Object::type_name).collect::<Vec<_>>().join(", ")
            ))),
            _ => Err(Error::BadCall(format!("could not find function \"{name}\""))),
        }
    }
}

fn reduction(name: &str) -> Option<Reduction> {
    Reduction::ALL.into_iter().find(|r| r.name() == name)
}

fn arity(name: &str, expected: &str) -> Error {
    Error::BadCall(format!("{name}() takes {expected} argument(s)"))
}

fn builtin_fn(name: &str) -> Result<fn(&Value) -> Result<Value>> {
    fn double(v: &Value) -> Result<Value> {
        match v {
            Value::List(items) => items.iter().map(double).collect::<Result<Vec<_>>>().map(Value::List),
            other => Ok(Value::Number(2.0 * other.as_number()?)),
        }
    }
    fn upper(v: &Value) -> Result<Value> {
        match v {
            Value::List(items) => items.iter().map(upper).collect::<Result<Vec<_>>>().map(Value::List),
            other => Ok(Value::Symbol(other.as_symbol()?.to_uppercase())),
        }
    }
    fn lengths(v: &Value) -> Result<Value> {
        Ok(Value::Number(match v {
            Value::List(items) => items.len() as f64,
            _ => 1.0,
        }))
    }
    match name {
        "double" => Ok(double),
        "upper" | "toupper" => Ok(upper),
        "lengths" | "length" => Ok(lengths),
        other => Err(Error::BadCall(format!(
            "unknown function {other:?} (expected double, upper or lengths)"
        ))),
    }
}

fn operand(obj: Object) -> Result<Operand> {
    match obj {
        Object::Disord(d) => Ok(Operand::Disord(d)),
        Object::Vector(v) => Ok(Operand::Plain(v)),
        other => Err(Error::type_mismatch(format!(
            "a {} cannot be combined with a disord",
            other.type_name()
        ))),
    }
}

fn unit_number(v: &[Value]) -> Result<f64> {
    match v {
        [x] => x.as_number(),
        _ => Err(Error::type_mismatch(format!(
            "expected a single number, found a vector of length {}",
            v.len()
        ))),
    }
}

fn scalar_number(obj: &Object) -> Result<f64> {
    match obj {
        Object::Vector(v) => unit_number(v),
        other => Err(Error::type_mismatch(format!("expected a number, found a {}", other.type_name()))),
    }
}

fn scalar_bool(obj: &Object) -> Result<bool> {
    match obj {
        Object::Vector(v) if v.len() == 1 => v[0].as_bool(),
        other => Err(Error::type_mismatch(format!("expected TRUE or FALSE, found a {}", other.type_name()))),
    }
}

fn count_arg(obj: &Object) -> Result<usize> {
    let x = scalar_number(obj)?;
    if x < 0.0 || x.fract() != 0.0 {
        return Err(Error::BadCall(format!("expected a nonnegative integer, found {x}")));
    }
    Ok(x as usize)
}

fn concat(vs: &[Object]) -> Result<Vec<Value>> {
    let mut out = Vec::new();
    for v in vs {
        match v {
            Object::Vector(items) => out.extend(items.iter().cloned()),
            Object::Null => {}
            other => {
                return Err(Error::type_mismatch(format!(
                    "cannot concatenate a {}",
                    other.type_name()
                )))
            }
        }
    }
    crate::value::common_kind(&out)?;
    Ok(out)
}

// One-based positions to zero-based indices.
fn positions(v: &[Value], usage: IndexUse) -> Result<Vec<usize>> {
    v.iter()
        .map(|x| match x {
            Value::Number(i) if *i >= 1.0 && i.fract() == 0.0 => Ok(*i as usize - 1),
            Value::Bool(_) => Err(Error::type_mismatch(
                "a plain logical vector cannot index a disord",
            )),
            _ => Err(Error::bad_index(usage)),
        })
        .collect()
}

fn vector_binary(op: BinaryOp, a: &[Value], b: &[Value]) -> Result<Vec<Value>> {
    if a.is_empty() || b.is_empty() {
        return Ok(Vec::new());
    }
    let n = a.len().max(b.len());
    if a.len() != n && a.len() != 1 || b.len() != n && b.len() != 1 {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    (0..n)
        .map(|i| op.apply(&a[i % a.len()], &b[i % b.len()]))
        .collect()
}

fn vector_selection(v: &[Value], idx: &[Value]) -> Result<Vec<usize>> {
    if idx.iter().all(|x| matches!(x, Value::Bool(_))) && !idx.is_empty() {
        if idx.len() != v.len() {
            return Err(Error::LengthMismatch {
                expected: v.len(),
                found: idx.len(),
            });
        }
        return Ok(idx
            .iter()
            .enumerate()
            .filter(|(_, b)| matches!(b, Value::Bool(true)))
            .map(|(i, _)| i)
            .collect());
    }
    idx.iter()
        .map(|x| {
            let i = x.as_number()?;
            if i < 1.0 || i.fract() != 0.0 || i as usize > v.len() {
                return Err(Error::BadCall(format!("subscript {i} out of bounds")));
            }
            Ok(i as usize - 1)
        })
        .collect()
}

fn vector_index(v: &[Value], idx: &[Value]) -> Result<Vec<Value>> {
    Ok(vector_selection(v, idx)?.into_iter().map(|i| v[i].clone()).collect())
}

fn vector_replace(mut v: Vec<Value>, idx: &[Value], new: &[Value]) -> Result<Vec<Value>> {
    let slots = vector_selection(&v, idx)?;
    if new.len() != 1 && new.len() != slots.len() {
        return Err(Error::LengthMismatch {
            expected: slots.len(),
            found: new.len(),
        });
    }
    for (k, slot) in slots.into_iter().enumerate() {
        v[slot] = new[k % new.len()].clone();
    }
    crate::value::common_kind(&v)?;
    Ok(v)
}
