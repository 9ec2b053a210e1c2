use std::fmt::Write as _;

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stream {
    Out,
    Err,
}

/// One printed block, tagged with the script line that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub line: usize,
    pub stream: Stream,
    pub text: String,
}

/// Everything a run printed, in order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Transcript {
    pub entries: Vec<Entry>,
}

/// Text printed for an error: a stable code, then the message.
pub fn error_text(err: &Error) -> String {
    format!("Error [{}]: {}", err.code(), err)
}

impl Transcript {
    pub fn echo(&mut self, line: usize, text: impl Into<String>) {
        self.entries.push(Entry {
            line,
            stream: Stream::Out,
            text: text.into(),
        });
    }

    pub fn error(&mut self, line: usize, err: &Error) {
        self.entries.push(Entry {
            line,
            stream: Stream::Err,
            text: error_text(err),
        });
    }

    pub fn raw_error(&mut self, line: usize, text: impl Into<String>) {
        self.entries.push(Entry {
            line,
            stream: Stream::Err,
            text: text.into(),
        });
    }

    fn render(&self, keep: impl Fn(Stream) -> bool) -> String {
        let mut out = String::new();
        for e in self.entries.iter().filter(|e| keep(e.stream)) {
            let _ = writeln!(out, "{}", e.text);
        }
        out
    }

    /// Standard-output part.
    pub fn stdout(&self) -> String {
        self.render(|s| s == Stream::Out)
    }

    /// Standard-error part.
    pub fn stderr(&self) -> String {
        self.render(|s| s == Stream::Err)
    }

    /// Both streams interleaved in the order they were written.
    pub fn combined(&self) -> String {
        self.render(|_| true)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
