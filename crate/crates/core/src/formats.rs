//! Text formats for groups.
//!
//! Cayley table: the first line holds the order `n`, followed by `n` lines of
//! `n` whitespace-separated 0-based element indices. Element 0 must be the
//! identity.
//!
//! Permutations: the first line is `perm <degree>`, followed by one generator
//! per line in disjoint-cycle notation over points `1..=degree`, for example
//! `(1 2 3)(4 5)`. `()` denotes the identity. Blank lines and lines starting
//! with `#` are ignored in both formats.

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Limits};

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Parses either format, chosen by the first meaningful line.
pub fn parse_group(text: &str, limits: &Limits) -> Result<FiniteGroup> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'));
    match first {
        Some(l) if l.starts_with("perm") => parse_permutation_file(text, limits),
        _ => parse_cayley(text, limits),
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        })
}

/// Whitespace-separated tokens with their 1-based column.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out.into_iter()
}

pub fn parse_cayley(text: &str, limits: &Limits) -> Result<FiniteGroup> {
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, 1, "empty input, expected the group order"))?;
    let mut head = tokens(header);
    let (col, tok) = head
        .next()
        .ok_or_else(|| parse_err(hline, 1, "expected the group order"))?;
    let n: usize = tok
        .parse()
        .map_err(|_| parse_err(hline, col, format!("invalid group order {tok:?}")))?;
    if let Some((col, extra)) = head.next() {
        return Err(parse_err(hline, col, format!("unexpected token {extra:?} after the order")));
    }
    if n == 0 {
        return Err(parse_err(hline, col, "group order must be positive"));
    }
    if n > limits.max_order {
        return Err(Error::OrderBound {
            order: n,
            bound: limits.max_order,
        });
    }
    let mut rows = Vec::with_capacity(n);
    let mut last_line = hline;
    for (lineno, line) in lines {
        last_line = lineno;
        if rows.len() == n {
            return Err(parse_err(lineno, 1, format!("more than {n} table rows")));
        }
        let mut row = Vec::with_capacity(n);
        for (col, tok) in tokens(line) {
            let v: u32 = tok
                .parse()
                .map_err(|_| parse_err(lineno, col, format!("invalid entry {tok:?}")))?;
            if v as usize >= n {
                return Err(parse_err(lineno, col, format!("entry {v} is not below {n}")));
            }
            if row.len() == n {
                return Err(parse_err(lineno, col, format!("row has more than {n} entries")));
            }
            row.push(v);
        }
        if row.len() < n {
            return Err(parse_err(
                lineno,
                line.len() + 1,
                format!("row has {} entries, expected {n}", row.len()),
            ));
        }
        let i = rows.len();
        if row[0] as usize != i {
            return Err(parse_err(lineno, 1, format!("element 0 is not the identity: 0*{i} = {}", row[0])));
        }
        if i == 0 {
            if let Some(j) = (0..n).find(|&j| row[j] as usize != j) {
                return Err(parse_err(lineno, 1, format!("element 0 is not the identity: 0*{j} = {}", row[j])));
            }
        }
        rows.push(row);
    }
    if rows.len() < n {
        return Err(parse_err(
            last_line + 1,
            1,
            format!("expected {n} table rows, found {}", rows.len()),
        ));
    }
    FiniteGroup::from_table(rows, limits)
}

/// Parses one permutation in cycle notation into 0-based images.
pub fn parse_cycles(text: &str, degree: usize, line: usize) -> Result<Vec<u32>> {
    let mut perm: Vec<u32> = (0..degree as u32).collect();
    let mut seen = vec![false; degree];
    let mut cycle: Option<Vec<usize>> = None;
    let mut chars = text.char_indices().peekable();
    while let Some((i, c)) = chars.next() {
        let col = i + 1;
        match c {
            '(' => {
                if cycle.is_some() {
                    return Err(parse_err(line, col, "nested '('"));
                }
                cycle = Some(Vec::new());
            }
            ')' => {
                let pts = cycle
                    .take()
                    .ok_or_else(|| parse_err(line, col, "')' without matching '('"))?;
                for (k, &p) in pts.iter().enumerate() {
                    perm[p] = pts[(k + 1) % pts.len()] as u32;
                }
            }
            c if c.is_whitespace() || c == ',' => {}
            c if c.is_ascii_digit() => {
                let mut end = i + c.len_utf8();
                while let Some(&(j, d)) = chars.peek() {
                    if d.is_ascii_digit() {
                        end = j + d.len_utf8();
                        chars.next();
                    } else {
                        break;
                    }
                }
                let pts = cycle
                    .as_mut()
                    .ok_or_else(|| parse_err(line, col, "point outside a cycle"))?;
                let p: usize = text[i..end]
                    .parse()
                    .map_err(|_| parse_err(line, col, "invalid point"))?;
                if p == 0 || p > degree {
                    return Err(parse_err(line, col, format!("point {p} outside 1..={degree}")));
                }
                if std::mem::replace(&mut seen[p - 1], true) {
                    return Err(parse_err(line, col, format!("point {p} appears twice")));
                }
                pts.push(p - 1);
            }
            other => return Err(parse_err(line, col, format!("unexpected character {other:?}"))),
        }
    }
    if cycle.is_some() {
        return Err(parse_err(line, text.len() + 1, "unclosed cycle"));
    }
    Ok(perm)
}

pub fn parse_permutation_file(text: &str, limits: &Limits) -> Result<FiniteGroup> {
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, 1, "empty input"))?;
    let mut head = tokens(header);
    match head.next() {
        Some((_, "perm")) => {}
        Some((col, tok)) => return Err(parse_err(hline, col, format!("expected 'perm', found {tok:?}"))),
        None => return Err(parse_err(hline, 1, "expected 'perm <degree>'")),
    }
    let (col, tok) = head
        .next()
        .ok_or_else(|| parse_err(hline, header.len() + 1, "missing degree"))?;
    let degree: usize = tok
        .parse()
        .map_err(|_| parse_err(hline, col, format!("invalid degree {tok:?}")))?;
    if degree == 0 {
        return Err(parse_err(hline, col, "degree must be positive"));
    }
    let gens = lines
        .map(|(lineno, l)| parse_cycles(l, degree, lineno))
        .collect::<Result<Vec<_>>>()?;
    FiniteGroup::from_permutations(degree, &gens, limits)
}

/// Disjoint-cycle notation over points `1..=degree`; `()` for the identity.
pub fn format_cycles(perm: &[u32]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] as usize == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut p = start;
        while !seen[p] {
            seen[p] = true;
            cycle.push((p + 1).to_string());
            p = perm[p] as usize;
        }
        out.push('(');
        out.push_str(&cycle.join(" "));
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

/// Renders a group in the Cayley table format.
pub fn write_cayley(g: &FiniteGroup) -> String {
    let mut out = format!("{}\n", g.order());
    for row in g.rows() {
        let cells: Vec<String> = row.iter().map(u32::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build, GroupRecipe};

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn klein_table_parses() {
        let text = "4\n0 1 2 3\n1 0 3 2\n2 3 0 1\n3 2 1 0\n";
        let g = parse_group(text, &lim()).unwrap();
        assert_eq!(g.order(), 4);
        assert!(g.is_abelian());
    }

    #[test]
    fn cayley_round_trip() {
        let d4 = build(&GroupRecipe::dihedral(4), &lim()).unwrap();
        let text = write_cayley(&d4);
        assert_eq!(parse_group(&text, &lim()).unwrap(), d4);
    }

    #[test]
    fn cayley_errors_carry_positions() {
        let e = parse_cayley("2\n0 1\n1 x\n", &lim()).unwrap_err();
        assert_eq!(
            e,
            Error::Parse {
                line: 3,
                column: 3,
                message: "invalid entry \"x\"".into()
            }
        );
        let e = parse_cayley("2\n0 1\n1 5\n", &lim()).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, column: 3, .. }));
        let e = parse_cayley("2\n0 1\n", &lim()).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e:?}");
        let e = parse_cayley("2\n1 0\n0 1\n", &lim()).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e:?}");
        let e = parse_cayley("2\n0 1\n1 1\n", &lim()).unwrap_err();
        assert!(matches!(e, Error::TableInvalid(_)), "{e:?}");
        let e = parse_cayley("3\n0 1 2\n1 2 0\n", &lim()).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 4, column: 1, .. }), "{e:?}");
    }

    #[test]
    fn permutation_file() {
        let text = "perm 4\n# S4\n(1 2 3 4)\n(1 2)\n";
        assert_eq!(parse_group(text, &lim()).unwrap().order(), 24);
        let text = "perm 3\n()\n";
        assert_eq!(parse_group(text, &lim()).unwrap().order(), 1);
    }

    #[test]
    fn cycle_notation() {
        assert_eq!(parse_cycles("(1 2 3)(4 5)", 5, 1).unwrap(), vec![1, 2, 0, 4, 3]);
        assert_eq!(parse_cycles("(1,3)", 3, 1).unwrap(), vec![2, 1, 0]);
        let e = parse_cycles("(1 2)(2 3)", 3, 7).unwrap_err();
        assert_eq!(
            e,
            Error::Parse {
                line: 7,
                column: 7,
                message: "point 2 appears twice".into()
            }
        );
        assert!(matches!(parse_cycles("(1 6)", 5, 1), Err(Error::Parse { column: 4, .. })));
        assert!(matches!(parse_cycles("(1 2", 5, 1), Err(Error::Parse { column: 5, .. })));
        assert!(matches!(parse_cycles("1 2)", 5, 1), Err(Error::Parse { column: 1, .. })));
        assert!(matches!(parse_cycles("(1 a)", 5, 1), Err(Error::Parse { column: 4, .. })));
    }

    #[test]
    fn cycles_format_and_reparse() {
        let p = vec![1, 2, 0, 4, 3];
        assert_eq!(format_cycles(&p), "(1 2 3)(4 5)");
        assert_eq!(parse_cycles(&format_cycles(&p), 5, 1).unwrap(), p);
        assert_eq!(format_cycles(&[0, 1, 2]), "()");
    }

    #[test]
    fn bad_permutation_header() {
        let e = parse_permutation_file("perm x\n(1 2)\n", &lim()).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, column: 6, .. }));
    }
}
