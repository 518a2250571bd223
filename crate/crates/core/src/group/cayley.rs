//! Plain-text Cayley table format.
//!
//! ```text
//! order 3
//! 0 1 2
//! 1 2 0
//! 2 0 1
//! labels
//! e
//! a
//! a^2
//! ```
//!
//! Blank lines and `#` comments are ignored. The `labels` section is optional.

use super::{FiniteGroup, MAX_GROUP_ORDER};
use crate::error::{Error, Result};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::ParseError {
        line,
        message: message.into(),
    }
}

pub fn group_from_text(text: &str) -> Result<FiniteGroup> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let order = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["order", n] => n
            .parse::<usize>()
            .map_err(|_| parse_err(hline, format!("bad order '{n}'")))?,
        _ => return Err(parse_err(hline, "expected 'order N'")),
    };
    if order == 0 || order > MAX_GROUP_ORDER {
        return Err(parse_err(hline, format!("order {order} out of range")));
    }

    let mut table = Vec::with_capacity(order);
    for _ in 0..order {
        let (ln, row) = lines
            .next()
            .ok_or_else(|| parse_err(hline, format!("expected {order} table rows")))?;
        let parsed = row
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| parse_err(ln, e.to_string()))?;
        if parsed.len() != order {
            return Err(parse_err(ln, format!("row has {} entries, expected {order}", parsed.len())));
        }
        table.push(parsed);
    }

    let labels = match lines.next() {
        None => None,
        Some((_, "labels")) => {
            let labels: Vec<String> = lines.by_ref().take(order).map(|(_, l)| l.to_string()).collect();
            if labels.len() != order {
                return Err(parse_err(hline, format!("expected {order} labels, got {}", labels.len())));
            }
            Some(labels)
        }
        Some((ln, other)) => return Err(parse_err(ln, format!("unexpected '{other}'"))),
    };
    if let Some((ln, extra)) = lines.next() {
        return Err(parse_err(ln, format!("trailing content '{extra}'")));
    }
    FiniteGroup::from_table(table, labels)
}

pub fn group_to_text(group: &FiniteGroup) -> String {
    let mut out = format!("order {}\n", group.order());
    for row in group.table() {
        let row: Vec<String> = row.iter().map(usize::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out.push_str("labels\n");
    for l in group.labels() {
        out.push_str(l);
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::{builtin_group, GroupFamily};
    use super::*;

    #[test]
    fn round_trip() {
        for fam in [GroupFamily::Symmetric(3), GroupFamily::Quaternion, GroupFamily::Cyclic(1)] {
            let g = builtin_group(&fam).unwrap();
            let back = group_from_text(&group_to_text(&g)).unwrap();
            assert_eq!(back, g);
            assert_eq!(back.labels(), g.labels());
        }
    }

    #[test]
    fn without_labels() {
        let g = group_from_text("# z3\norder 3\n0 1 2\n1 2 0\n2 0 1\n").unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.element_order(1), 3);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = group_from_text("order 2\n0 1\n1\n").unwrap_err();
        assert_eq!(e, Error::ParseError { line: 3, message: "row has 1 entries, expected 2".into() });
        assert!(matches!(group_from_text("ord 2"), Err(Error::ParseError { line: 1, .. })));
        assert!(matches!(group_from_text("order 2\n0 1\n1 1\n"), Err(Error::NotAGroup(_))));
    }
}
