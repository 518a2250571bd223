//! Shared helpers for the line-oriented file formats.

use crate::error::{Error, Result};

pub(crate) fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::ParseError {
        line,
        message: message.into(),
    }
}

/// Non-blank lines with `#` comments stripped, paired with 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

pub(crate) struct Rows {
    pub header: (usize, Vec<usize>),
    pub body: Vec<(usize, Vec<String>)>,
}

/// Splits a `keyword n m …` header line from the token rows that follow it.
pub(crate) fn numeric_rows(text: &str, keyword: &str) -> Result<Rows> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let mut tokens = header.split_whitespace();
    if tokens.next() != Some(keyword) {
        return Err(parse_err(line, format!("expected '{keyword}' header")));
    }
    let values = tokens
        .map(|t| t.parse::<usize>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|e| parse_err(line, e.to_string()))?;
    let body = lines
        .map(|(n, l)| (n, l.split_whitespace().map(str::to_string).collect()))
        .collect();
    Ok(Rows {
        header: (line, values),
        body,
    })
}
