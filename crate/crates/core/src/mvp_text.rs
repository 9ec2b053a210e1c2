//! Polynomial literals: parsing and canonical printing.
//!
//! Grammar (whitespace is allowed between tokens and also acts as a
//! multiplication separator):
//!
//! ```text
//! polynomial  := ["+"|"-"] term { ("+"|"-") term }
//! term        := coefficient { sep factor } | factor { sep factor }
//! factor      := symbol ["^" integer]
//! sep         := "*" | whitespace
//! coefficient := digits ["." digits] | "." digits
//! symbol      := letter { letter | digit | "_" }
//! integer     := ["-"] digits
//! ```
//!
//! Symbols may be several characters long, so `bc` is one variable; write
//! `b c` or `b*c` for a product.

use crate::error::ParseError;
use crate::mvp::{Monomial, Mvp};

/// First line of a printed polynomial.
pub const MVP_HEADER: &str = "mvp object algebraically equal to";

const EXPECT_TERM: &[&str] = &["coefficient", "symbol"];

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) -> bool {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
        self.pos > start
    }

    fn found(&self) -> String {
        match self.peek() {
            None => "end of input".to_string(),
            Some(_) => {
                let rest = std::str::from_utf8(&self.src[self.pos..]).unwrap_or("?");
                format!("{:?}", rest.chars().next().unwrap_or('?'))
            }
        }
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        ParseError::new(self.pos, self.found(), expected)
    }

    fn digits(&mut self) -> usize {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.pos - start
    }

    fn coefficient(&mut self) -> Result<f64, ParseError> {
        let start = self.pos;
        let whole = self.digits();
        let mut frac = 0;
        if self.peek() == Some(b'.') {
            self.pos += 1;
            frac = self.digits();
        }
        if whole + frac == 0 {
            self.pos = start;
            return Err(self.error(&["coefficient"]));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        text.parse().map_err(|_| ParseError::new(start, text, &["coefficient"]))
    }

    fn symbol(&mut self) -> Result<&'a str, ParseError> {
        let start = self.pos;
        if !self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
            return Err(self.error(&["symbol"]));
        }
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_')
        {
            self.pos += 1;
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii"))
    }

    fn factor(&mut self) -> Result<(&'a str, i64), ParseError> {
        let name = self.symbol()?;
        let save = self.pos;
        self.skip_ws();
        if self.peek() != Some(b'^') {
            self.pos = save;
            return Ok((name, 1));
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        if self.digits() == 0 {
            return Err(self.error(&["integer"]));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        let exp = text
            .parse()
            .map_err(|_| ParseError::new(start, text, &["integer"]))?;
        Ok((name, exp))
    }

    fn term(&mut self) -> Result<(Monomial, f64), ParseError> {
        let mut coeff = 1.0;
        let mut factors = Vec::new();
        match self.peek() {
            Some(c) if c.is_ascii_digit() || c == b'.' => coeff = self.coefficient()?,
            Some(c) if c.is_ascii_alphabetic() => factors.push(self.factor()?),
            _ => return Err(self.error(EXPECT_TERM)),
        }
        loop {
            let save = self.pos;
            self.skip_ws();
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    self.skip_ws();
                    factors.push(self.factor()?);
                }
                Some(c) if c.is_ascii_alphabetic() => factors.push(self.factor()?),
                _ => {
                    self.pos = save;
                    break;
                }
            }
        }
        Ok((Monomial::from_powers(factors), coeff))
    }

    fn polynomial(&mut self) -> Result<Mvp, ParseError> {
        let mut terms = Vec::new();
        self.skip_ws();
        let mut sign = 1.0;
        match self.peek() {
            Some(b'+') => {
                self.pos += 1;
                self.skip_ws();
            }
            Some(b'-') => {
                sign = -1.0;
                self.pos += 1;
                self.skip_ws();
            }
            _ => {}
        }
        loop {
            let (m, c) = self.term()?;
            terms.push((m, sign * c));
            self.skip_ws();
            sign = match self.peek() {
                None => break,
                Some(b'+') => 1.0,
                Some(b'-') => -1.0,
                Some(_) => return Err(self.error(&["\"+\"", "\"-\"", "end of input"])),
            };
            self.pos += 1;
            self.skip_ws();
        }
        Ok(Mvp::from_terms(terms))
    }
}

/// Parses a polynomial literal such as `"x^2 + 4 - 3*x*y*z"`.
pub fn parse_mvp(source: &str) -> Result<Mvp, ParseError> {
    Parser {
        src: source.as_bytes(),
        pos: 0,
    }
    .polynomial()
}

/// Shortest decimal that reads back to the same number; integers have no
/// decimal point.
pub fn format_coefficient(c: f64) -> String {
    if c.fract() == 0.0 && c.abs() < 1e15 {
        format!("{}", c as i64)
    } else if c.is_nan() {
        "NaN".to_string()
    } else if c.is_infinite() {
        "Inf".to_string()
    } else {
        format!("{c}")
    }
}

/// The terms of `p` in canonical order, e.g. `4  -  3 x y z  +  x^2`.
/// The zero polynomial is `0`.
pub fn format_terms(p: &Mvp) -> String {
    let terms = p.canonical_terms();
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in terms.into_iter().enumerate() {
        let magnitude = c.abs();
        if i == 0 {
            if c < 0.0 {
                out.push('-');
            }
        } else {
            out.push_str(if c < 0.0 { "  -  " } else { "  +  " });
        }
        if m.is_constant() {
            out.push_str(&format_coefficient(magnitude));
        } else if magnitude == 1.0 {
            out.push_str(&m.to_string());
        } else {
            out.push_str(&format_coefficient(magnitude));
            out.push(' ');
            out.push_str(&m.to_string());
        }
    }
    out
}

/// Printed polynomial lines never run past this many characters unless a
/// single term is longer.
pub const MVP_LINE_WIDTH: usize = 78;

/// Header line followed by [`format_terms`], wrapped after a sign so no
/// line exceeds [`MVP_LINE_WIDTH`].
pub fn print_mvp(p: &Mvp) -> String {
    let flat = format_terms(p);
    // "term  +" pieces; the separator is always two spaces, a sign, two spaces
    let bytes = flat.as_bytes();
    let mut chunks = Vec::new();
    let (mut start, mut i) = (0, 0);
    while i + 5 <= bytes.len() {
        if matches!(&bytes[i..i + 5], b"  +  " | b"  -  ") {
            chunks.push(&flat[start..i + 3]);
            start = i + 5;
            i += 5;
        } else {
            i += 1;
        }
    }
    chunks.push(&flat[start..]);

    let mut out = String::from(MVP_HEADER);
    let mut width = 0;
    for chunk in chunks {
        if width == 0 {
            out.push('\n');
        } else if width + 2 + chunk.len() > MVP_LINE_WIDTH {
            out.push('\n');
            width = 0;
        } else {
            out.push_str("  ");
            width += 2;
        }
        out.push_str(chunk);
        width += chunk.len();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_basic_forms() {
        let p = parse_mvp("x^2 + 4 - 3*x*y*z").unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.coefficient(&Monomial::one()), 4.0);
        assert_eq!(
            p.coefficient(&Monomial::from_powers([("x", 1), ("y", 1), ("z", 1)])),
            -3.0
        );
        assert_eq!(format_terms(&p), "4  -  3 x y z  +  x^2");
    }

    #[test]
    fn term_order_and_separators_are_irrelevant() {
        assert_eq!(
            parse_mvp("4 b c^6 * a^3").unwrap(),
            parse_mvp("4 a^3 b c^6").unwrap()
        );
        assert_eq!(
            parse_mvp("x + 3 x y + 4 x y^3").unwrap(),
            parse_mvp("4 x y^3 + 3 x y + x").unwrap()
        );
        // multi-letter symbols
        let bc = parse_mvp("4bc^6*a^3").unwrap();
        assert_eq!(bc, parse_mvp("4 a^3 bc^6").unwrap());
        assert_ne!(bc, parse_mvp("4 a^3 b c^6").unwrap());
    }

    #[test]
    fn signs_and_exponents() {
        assert_eq!(format_terms(&parse_mvp("-x").unwrap()), "-x");
        assert_eq!(format_terms(&parse_mvp("- 2 x^-2").unwrap()), "-2 x^-2");
        assert_eq!(format_terms(&parse_mvp("x^0 + 1").unwrap()), "2");
        assert_eq!(format_terms(&parse_mvp("0.5 x - 1.25").unwrap()), "-1.25  +  0.5 x");
        assert!(parse_mvp("x - x").unwrap().is_zero());
    }

    #[test]
    fn malformed_input() {
        let err = parse_mvp("x + + 3").unwrap_err();
        assert_eq!(err.position, 4);
        assert_eq!(err.expected, vec!["coefficient", "symbol"]);
        assert!(parse_mvp("").is_err());
        assert!(parse_mvp("x^").is_err());
        assert!(parse_mvp("3 * 4").is_err());
        assert_eq!(parse_mvp("x y )").unwrap_err().position, 4);
    }

    #[test]
    fn printing() {
        assert_eq!(print_mvp(&Mvp::zero()), "mvp object algebraically equal to\n0");
        let a = parse_mvp("5 a c^3 + a^2 d^2 f^2 + 4 a^3 b e^3 + 3 b c f + 2 b^2 e^3").unwrap();
        assert_eq!(
            format_terms(&a),
            "5 a c^3  +  a^2 d^2 f^2  +  4 a^3 b e^3  +  3 b c f  +  2 b^2 e^3"
        );
        assert_eq!(format_coefficient(1e20), "100000000000000000000");
        assert_eq!(format_coefficient(0.1), "0.1");
    }

    #[test]
    fn long_polynomials_wrap_after_a_sign() {
        let a = parse_mvp(
            "3 a b^9 e^4 f + 7 a^2 b^4 d^6 e f^4 + 4 a^4 b^6 c^5 d^11 f^4 + 6 a^6 b^3 c^14 f^2 \
             + 5 a^11 e^6 f^6 + b^8 e^7 f^12 + 2 b^10 d^10 f^4",
        )
        .unwrap();
        assert_eq!(
            print_mvp(&a),
            "mvp object algebraically equal to\n\
             3 a b^9 e^4 f  +  7 a^2 b^4 d^6 e f^4  +  4 a^4 b^6 c^5 d^11 f^4  +\n\
             6 a^6 b^3 c^14 f^2  +  5 a^11 e^6 f^6  +  b^8 e^7 f^12  +  2 b^10 d^10 f^4"
        );
        assert_eq!(parse_mvp(&print_mvp(&a)[MVP_HEADER.len()..]).unwrap(), a);
    }
}
