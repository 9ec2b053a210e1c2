use crate::script::{Stream, Transcript};

const BLOCK_START: &str = "A disord object with hash ";
const BLOCK_END: &str = "(in some order)";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LineClass {
    /// Same text under every storage order of a correct build.
    OrderFree,
    /// Shows disord element order or a hash token.
    OrderExposed,
}

/// True if `line` contains a full hash (40 hex digits, at least one a-f)
/// or a shortened one (12 hex digits then `...`).
pub fn has_hash_token(line: &str) -> bool {
    let bytes = line.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        if !bytes[i].is_ascii_hexdigit() || (i > 0 && bytes[i - 1].is_ascii_alphanumeric()) {
            i += 1;
            continue;
        }
        let start = i;
        while i < bytes.len() && matches!(bytes[i], b'0'..=b'9' | b'a'..=b'f') {
            i += 1;
        }
        let run = &bytes[start..i];
        let bounded = i == bytes.len() || !bytes[i].is_ascii_alphanumeric();
        let lettered = run.iter().any(u8::is_ascii_alphabetic);
        if bounded && run.len() == 40 && lettered {
            return true;
        }
        if run.len() == 12 && bytes[i..].starts_with(b"...") {
            return true;
        }
        i = i.max(start + 1);
    }
    false
}

/// Classifies every line of printed output. Lines of a disord display,
/// from its header to `(in some order)`, are order-exposed, as is any
/// line carrying a hash token.
pub fn classify_lines(text: &str) -> Vec<LineClass> {
    let mut in_block = false;
    text.lines()
        .map(|line| {
            if line.starts_with(BLOCK_START) {
                in_block = true;
                return LineClass::OrderExposed;
            }
            if in_block {
                if line == BLOCK_END {
                    in_block = false;
                }
                return LineClass::OrderExposed;
            }
            if has_hash_token(line) {
                LineClass::OrderExposed
            } else {
                LineClass::OrderFree
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObservedLine {
    /// Script line whose statement printed this.
    pub statement: usize,
    pub class: LineClass,
    pub text: String,
}

/// What a run printed, split into order-free payloads and error codes.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ObservableReport {
    pub lines: Vec<ObservedLine>,
    /// `(statement line, error code)` for every error printed.
    pub errors: Vec<(usize, String)>,
    pub status: i32,
}

fn error_code(text: &str) -> Option<&str> {
    let rest = text.strip_prefix("Error [")?;
    rest.split_once(']').map(|(code, _)| code)
}

impl ObservableReport {
    pub fn from_transcript(transcript: &Transcript, status: i32) -> Self {
        let mut report = ObservableReport {
            status,
            ..Self::default()
        };
        for entry in &transcript.entries {
            if entry.stream == Stream::Err {
                if let Some(code) = error_code(&entry.text) {
                    report.errors.push((entry.line, code.to_string()));
                }
            }
            for (text, class) in entry.text.lines().zip(classify_lines(&entry.text)) {
                report.lines.push(ObservedLine {
                    statement: entry.line,
                    class,
                    text: text.to_string(),
                });
            }
        }
        report
    }

    /// Order-free lines with the statement that printed them.
    pub fn payloads(&self) -> impl Iterator<Item = (usize, &str)> {
        self.lines
            .iter()
            .filter(|l| l.class == LineClass::OrderFree)
            .map(|l| (l.statement, l.text.as_str()))
    }

    /// First statement line at which two reports disagree, if any.
    pub fn first_divergence(&self, other: &ObservableReport) -> Option<usize> {
        let first_mismatch = |a: Vec<(usize, &str)>, b: Vec<(usize, &str)>| {
            a.iter()
                .zip(&b)
                .find(|(x, y)| x != y)
                .map(|(x, y)| x.0.min(y.0))
                .or_else(|| match a.len().cmp(&b.len()) {
                    std::cmp::Ordering::Less => Some(b[a.len()].0),
                    std::cmp::Ordering::Greater => Some(a[b.len()].0),
                    std::cmp::Ordering::Equal => None,
                })
        };
        let payload = first_mismatch(self.payloads().collect(), other.payloads().collect());
        let errors = first_mismatch(
            self.errors.iter().map(|(l, c)| (*l, c.as_str())).collect(),
            other.errors.iter().map(|(l, c)| (*l, c.as_str())).collect(),
        );
        match (payload, errors) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (Some(a), None) | (None, Some(a)) => Some(a),
            (None, None) if self.status != other.status => {
                Some(self.lines.last().map_or(0, |l| l.statement))
            }
            (None, None) => None,
        }
    }
}
