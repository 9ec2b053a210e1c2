//! R-style printing of atomic vectors and lists.
//!
//! Numbers are shown with at most 7 significant digits, all elements of a
//! vector sharing one number of decimals, right-aligned to a common width.
//! Lines carry `[i]` index labels and wrap at [`LINE_WIDTH`] columns.

use crate::value::{Kind, Value};

/// Console width used for wrapping.
pub const LINE_WIDTH: usize = 70;

const SIGNIFICANT_DIGITS: usize = 7;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Align {
    Left,
    Right,
}

struct Decomposed {
    nsig: usize,
    exponent: i32,
}

// Significant digits (after rounding to 7) and decimal exponent of a
// finite nonzero number.
fn decompose(x: f64) -> Decomposed {
    if x == 0.0 {
        return Decomposed {
            nsig: 1,
            exponent: 0,
        };
    }
    let s = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x.abs());
    let (mantissa, exp) = s.split_once('e').expect("exponent marker");
    let digits = mantissa.replace('.', "");
    let nsig = digits.trim_end_matches('0').len().max(1);
    Decomposed {
        nsig,
        exponent: exp.parse().expect("integer exponent"),
    }
}

fn r_exponent(rust_sci: &str) -> String {
    let (mantissa, exp) = rust_sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

fn non_finite(x: f64) -> &'static str {
    if x.is_nan() {
        "NaN"
    } else if x > 0.0 {
        "Inf"
    } else {
        "-Inf"
    }
}

/// Formats numbers with a shared precision, unpadded.
pub fn format_numbers(xs: &[f64]) -> Vec<String> {
    let finite: Vec<f64> = xs.iter().copied().filter(|x| x.is_finite()).collect();
    if finite.is_empty() {
        return xs.iter().map(|&x| non_finite(x).to_string()).collect();
    }
    let parts: Vec<Decomposed> = finite.iter().map(|&x| decompose(x)).collect();
    let neg = usize::from(finite.iter().any(|&x| x < 0.0));

    let mut left = 1usize;
    let mut rgt = 0usize;
    let mut max_sig = 1usize;
    let mut max_abs_exp = 0i32;
    for p in &parts {
        left = left.max((p.exponent + 1).max(1) as usize);
        rgt = rgt.max((p.nsig as i32 - 1 - p.exponent).max(0) as usize);
        max_sig = max_sig.max(p.nsig);
        max_abs_exp = max_abs_exp.max(p.exponent.abs());
    }
    let fixed_width = neg + left + if rgt > 0 { rgt + 1 } else { 0 };
    let sci_decimals = max_sig - 1;
    let exp_width = if max_abs_exp >= 100 { 5 } else { 4 };
    let sci_width = neg + 1 + if sci_decimals > 0 { sci_decimals + 1 } else { 0 } + exp_width;

    xs.iter()
        .map(|&x| {
            if !x.is_finite() {
                non_finite(x).to_string()
            } else if fixed_width <= sci_width {
                let s = format!("{:.*}", rgt, x);
                // no "-0"
                if s.starts_with('-') && s[1..].bytes().all(|b| b == b'0' || b == b'.') {
                    s[1..].to_string()
                } else {
                    s
                }
            } else {
                r_exponent(&format!("{:.*e}", sci_decimals, x))
            }
        })
        .collect()
}

/// A single number as R would echo it, without the `[1]` label.
pub fn format_number(x: f64) -> String {
    format_numbers(&[x]).pop().expect("one element")
}

fn layout(items: &[String], align: Align) -> String {
    let n = items.len();
    let width = items.iter().map(|s| s.chars().count()).max().unwrap_or(0);
    let label_width = format!("[{n}]").len();
    let per_line = ((LINE_WIDTH.saturating_sub(label_width)) / (width + 1)).max(1);

    let mut lines = Vec::new();
    for (row, chunk) in items.chunks(per_line).enumerate() {
        let label = format!("[{}]", row * per_line + 1);
        let mut line = format!("{label:>label_width$}");
        for item in chunk {
            line.push(' ');
            match align {
                Align::Right => line.push_str(&format!("{item:>width$}")),
                Align::Left => line.push_str(&format!("{item:<width$}")),
            }
        }
        lines.push(line.trim_end().to_string());
    }
    lines.join("\n")
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Prints a homogeneous sequence of non-list values. `kind` names the
/// vector when it is empty.
pub fn format_atomic(values: &[Value], kind: Kind) -> String {
    if values.is_empty() {
        return kind.empty_name().to_string();
    }
    match &values[0] {
        Value::Number(_) => {
            let xs: Vec<f64> = values.iter().filter_map(|v| v.as_number().ok()).collect();
            layout(&format_numbers(&xs), Align::Right)
        }
        Value::Bool(_) => {
            let items: Vec<String> = values
                .iter()
                .map(|v| if v.as_bool().unwrap_or(false) { "TRUE" } else { "FALSE" }.to_string())
                .collect();
            layout(&items, Align::Right)
        }
        Value::Symbol(_) => {
            let items: Vec<String> = values
                .iter()
                .map(|v| quote(v.as_symbol().unwrap_or_default()))
                .collect();
            layout(&items, Align::Left)
        }
        Value::List(_) => format_list(values),
    }
}

// Name for an empty inner list, taken from its nonempty siblings.
fn empty_inner_name(siblings: &[Value]) -> &'static str {
    let inner = siblings
        .iter()
        .filter_map(|v| v.as_list().ok())
        .flatten()
        .collect::<Vec<_>>();
    match inner.first().map(|v| v.kind()) {
        Some(Kind::Number) => {
            let integral = inner
                .iter()
                .all(|v| v.as_number().map_or(false, |x| x.fract() == 0.0));
            if integral {
                "integer(0)"
            } else {
                "numeric(0)"
            }
        }
        Some(kind) => kind.empty_name(),
        None => "list()",
    }
}

/// Prints a sequence of lists as `[[i]]` blocks separated by blank lines.
pub fn format_list(values: &[Value]) -> String {
    if values.is_empty() {
        return "list()".to_string();
    }
    let mut out = String::new();
    for (i, v) in values.iter().enumerate() {
        out.push_str(&format!("[[{}]]\n", i + 1));
        let body = match v {
            Value::List(items) if items.is_empty() => empty_inner_name(values).to_string(),
            Value::List(items) => match items[0].kind() {
                Kind::List => format_list(items),
                kind => format_atomic(items, kind),
            },
            other => format_atomic(std::slice::from_ref(other), other.kind()),
        };
        out.push_str(&body);
        out.push_str("\n\n");
    }
    out.pop();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value::numbers;

    fn show(xs: &[f64]) -> String {
        format_atomic(&numbers(xs.iter().copied()), Kind::Number)
    }

    #[test]
    fn integers() {
        assert_eq!(show(&[9., 4., 7., 1., 2., 6., 3., 8., 5.]), "[1] 9 4 7 1 2 6 3 8 5");
        assert_eq!(show(&[9., -1., 5.]), "[1]  9 -1  5");
        assert_eq!(
            show(&[12., 12., 10., 6., 0., -8., -18., -30., -44., -60.]),
            " [1]  12  12  10   6   0  -8 -18 -30 -44 -60"
        );
    }

    #[test]
    fn shared_decimals_and_wrapping() {
        let a = [9., 4., 7., 1., 2., 6., 3., 8., 5.];
        let xs: Vec<f64> = a.iter().map(|x| x + 1.0 / x).collect();
        assert_eq!(
            show(&xs),
            "[1] 9.111111 4.250000 7.142857 2.000000 2.500000 6.166667 3.333333\n[8] 8.125000 5.200000"
        );
        let sum: Vec<f64> = a.iter().map(|x| x + 1.0 / x + (2.0 * x - 9.0)).collect();
        assert_eq!(
            show(&sum),
            "[1] 18.1111111  3.2500000 12.1428571 -5.0000000 -2.5000000  9.1666667\n[7]  0.3333333 15.1250000  6.2000000"
        );
    }

    #[test]
    fn scientific_when_shorter() {
        assert_eq!(format_number(100000.0), "1e+05");
        assert_eq!(format_number(123456.0), "123456");
        assert_eq!(format_number(0.0001), "1e-04");
        assert_eq!(format_number(1234567.89), "1234568");
        assert_eq!(format_number(-0.0), "0");
        assert_eq!(format_number(f64::NEG_INFINITY), "-Inf");
        assert_eq!(format_numbers(&[1.5, f64::NAN]), vec!["1.5", "NaN"]);
    }

    #[test]
    fn booleans_and_symbols() {
        let bools: Vec<Value> = [false, true].iter().map(|&b| Value::Bool(b)).collect();
        assert_eq!(format_atomic(&bools, Kind::Bool), "[1] FALSE  TRUE");
        let syms = vec![Value::from("x"), Value::from("yy"), Value::from("z")];
        assert_eq!(format_atomic(&syms, Kind::Symbol), "[1] \"x\"  \"yy\" \"z\"");
        assert_eq!(format_atomic(&[], Kind::Number), "numeric(0)");
    }

    #[test]
    fn lists() {
        let vars = vec![
            Value::List(vec![]),
            Value::List(vec!["x".into(), "y".into(), "z".into()]),
            Value::List(vec!["x".into()]),
        ];
        assert_eq!(
            format_list(&vars),
            "[[1]]\ncharacter(0)\n\n[[2]]\n[1] \"x\" \"y\" \"z\"\n\n[[3]]\n[1] \"x\"\n"
        );
        let powers = vec![Value::List(vec![]), Value::List(numbers([1., 1., 1.]))];
        assert!(format_list(&powers).starts_with("[[1]]\ninteger(0)\n"));
    }
}
