use crate::error::ParseError;

#[derive(Debug, Clone, PartialEq)]
pub enum Token {
    Number(f64),
    Str(String),
    Ident(String),
    Assign,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Modulo,
    Colon,
    Lt,
    Le,
    Gt,
    Ge,
    EqEq,
    Ne,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
}

impl Token {
    pub fn describe(&self) -> String {
        match self {
            Token::Number(x) => format!("number {x}"),
            Token::Str(s) => format!("string {s:?}"),
            Token::Ident(s) => format!("name {s}"),
            other => format!("\"{}\"", other.text()),
        }
    }

    pub fn text(&self) -> &'static str {
        match self {
            Token::Assign => "<-",
            Token::Plus => "+",
            Token::Minus => "-",
            Token::Star => "*",
            Token::Slash => "/",
            Token::Caret => "^",
            Token::Modulo => "%%",
            Token::Colon => ":",
            Token::Lt => "<",
            Token::Le => "<=",
            Token::Gt => ">",
            Token::Ge => ">=",
            Token::EqEq => "==",
            Token::Ne => "!=",
            Token::LParen => "(",
            Token::RParen => ")",
            Token::LBracket => "[",
            Token::RBracket => "]",
            Token::Comma => ",",
            Token::Number(_) | Token::Str(_) | Token::Ident(_) => "",
        }
    }
}

/// A token and its byte offset in the line.
pub type Spanned = (usize, Token);

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '.'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '.' || c == '_'
}

/// Splits one line into tokens. `#` starts a comment outside strings.
pub fn tokenize(line: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<(usize, char)> = line.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let at = |i: usize| chars.get(i).map(|&(_, c)| c);
    let offset = |i: usize| chars.get(i).map_or(line.len(), |&(o, _)| o);

    while let Some(c) = at(i) {
        let start = offset(i);
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '#' {
            break;
        }
        if c.is_ascii_digit() || (c == '.' && at(i + 1).is_some_and(|d| d.is_ascii_digit())) {
            let mut j = i;
            while at(j).is_some_and(|d| d.is_ascii_digit()) {
                j += 1;
            }
            if at(j) == Some('.') {
                j += 1;
                while at(j).is_some_and(|d| d.is_ascii_digit()) {
                    j += 1;
                }
            }
            if matches!(at(j), Some('e' | 'E')) {
                let mut k = j + 1;
                if matches!(at(k), Some('+' | '-')) {
                    k += 1;
                }
                if at(k).is_some_and(|d| d.is_ascii_digit()) {
                    while at(k).is_some_and(|d| d.is_ascii_digit()) {
                        k += 1;
                    }
                    j = k;
                }
            }
            let text = &line[start..offset(j)];
            let x = text
                .parse()
                .map_err(|_| ParseError::new(start, text, &["number"]))?;
            out.push((start, Token::Number(x)));
            i = j;
            continue;
        }
        if is_ident_start(c) {
            let mut j = i;
            while at(j).is_some_and(is_ident_char) {
                j += 1;
            }
            out.push((start, Token::Ident(line[start..offset(j)].to_string())));
            i = j;
            continue;
        }
        if c == '"' || c == '\'' {
            let mut j = i + 1;
            let mut s = String::new();
            loop {
                match at(j) {
                    None => return Err(ParseError::new(line.len(), "end of input", &["closing quote"])),
                    Some('\\') => {
                        if let Some(n) = at(j + 1) {
                            s.push(n);
                        }
                        j += 2;
                    }
                    Some(q) if q == c => {
                        j += 1;
                        break;
                    }
                    Some(other) => {
                        s.push(other);
                        j += 1;
                    }
                }
            }
            out.push((start, Token::Str(s)));
            i = j;
            continue;
        }
        let two = (c, at(i + 1));
        let (tok, width) = match two {
            ('<', Some('-')) => (Token::Assign, 2),
            ('<', Some('=')) => (Token::Le, 2),
            ('>', Some('=')) => (Token::Ge, 2),
            ('=', Some('=')) => (Token::EqEq, 2),
            ('!', Some('=')) => (Token::Ne, 2),
            ('%', Some('%')) => (Token::Modulo, 2),
            ('<', _) => (Token::Lt, 1),
            ('>', _) => (Token::Gt, 1),
            ('+', _) => (Token::Plus, 1),
            ('-', _) => (Token::Minus, 1),
            ('*', _) => (Token::Star, 1),
            ('/', _) => (Token::Slash, 1),
            ('^', _) => (Token::Caret, 1),
            (':', _) => (Token::Colon, 1),
            ('(', _) => (Token::LParen, 1),
            (')', _) => (Token::RParen, 1),
            ('[', _) => (Token::LBracket, 1),
            (']', _) => (Token::RBracket, 1),
            (',', _) => (Token::Comma, 1),
            _ => return Err(ParseError::new(start, format!("{c:?}"), &["token"])),
        };
        out.push((start, tok));
        i += width;
    }
    Ok(out)
}
