//! Text formats.
//!
//! `.trn`: first line `n`, then `n` rows of `n` characters over `{0,1}`;
//! row `i`, column `j` is 1 when `i` dominates `j`. Diagonal must be 0 and
//! `a_ij + a_ji = 1` off the diagonal.
//!
//! `.hyp`: first line `n m`, then `m` lines of four strictly increasing
//! 0-based vertex indices separated by spaces.

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph4;
use crate::tournament::{Tournament, MAX_ORDER, MIN_ORDER};

fn perr<T>(line: usize, column: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, column, message: message.into() })
}

pub fn write_trn(t: &Tournament) -> String {
    let n = t.order();
    let mut out = String::with_capacity((n + 1) * (n + 1));
    out.push_str(&n.to_string());
    out.push('\n');
    for i in 0..n {
        for j in 0..n {
            out.push(if t.dominates(i, j) { '1' } else { '0' });
        }
        out.push('\n');
    }
    out
}

/// Parses `.trn` text. Errors carry 1-based line and column.
pub fn read_trn(text: &str) -> Result<Tournament> {
    let mut lines = text.lines().enumerate();
    let Some((_, header)) = lines.next() else {
        return perr(1, 1, "empty input");
    };
    let n: usize = match header.trim().parse() {
        Ok(n) => n,
        Err(_) => return perr(1, 1, format!("expected vertex count, found {:?}", header.trim())),
    };
    if !(MIN_ORDER..=MAX_ORDER).contains(&n) {
        return perr(1, 1, format!("vertex count {n} outside {MIN_ORDER}..={MAX_ORDER}"));
    }
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let Some((_, line)) = lines.next() else {
            return perr(i + 2, 1, format!("missing row {i}"));
        };
        let line = line.trim_end();
        let mut row = Vec::with_capacity(n);
        for (j, ch) in line.chars().enumerate() {
            match ch {
                '0' => row.push(false),
                '1' => row.push(true),
                _ => return perr(i + 2, j + 1, format!("unexpected character {ch:?}")),
            }
        }
        if row.len() != n {
            return perr(i + 2, row.len().min(n) + 1, format!("row {i} has {} entries, expected {n}", row.len()));
        }
        if row[i] {
            return perr(i + 2, i + 1, "diagonal entry must be 0");
        }
        rows.push(row);
    }
    if let Some((idx, extra)) = lines.find(|(_, l)| !l.trim().is_empty()) {
        return perr(idx + 1, 1, format!("trailing content {:?}", extra.trim()));
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if rows[i][j] == rows[j][i] {
                return perr(i + 2, j + 1, format!("entries ({i},{j}) and ({j},{i}) must sum to 1"));
            }
        }
    }
    Tournament::from_matrix(&rows)
}

pub fn write_hyp(h: &Hypergraph4) -> String {
    let mut out = format!("{} {}\n", h.order(), h.edge_count());
    for e in h.edges() {
        out.push_str(&format!("{} {} {} {}\n", e[0], e[1], e[2], e[3]));
    }
    out
}

pub fn read_hyp(text: &str) -> Result<Hypergraph4> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let Some((hl, header)) = lines.next() else {
        return perr(1, 1, "empty input");
    };
    let nums: Vec<&str> = header.split_whitespace().collect();
    let parsed: Option<Vec<usize>> = nums.iter().map(|s| s.parse().ok()).collect();
    let (n, m) = match parsed.as_deref() {
        Some([n, m]) => (*n, *m),
        _ => return perr(hl + 1, 1, "expected header `n m`"),
    };
    let mut edges = Vec::with_capacity(m);
    for k in 0..m {
        let Some((ln, line)) = lines.next() else {
            return perr(hl + 2 + k, 1, format!("missing edge {k} of {m}"));
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 4 {
            return perr(ln + 1, 1, format!("expected 4 vertices, found {}", fields.len()));
        }
        let mut e = [0u32; 4];
        for (c, f) in fields.iter().enumerate() {
            let col = line.find(f).unwrap_or(0) + 1;
            match f.parse::<u32>() {
                Ok(v) if (v as usize) < n => e[c] = v,
                Ok(v) => return perr(ln + 1, col, format!("vertex {v} out of range for n = {n}")),
                Err(_) => return perr(ln + 1, col, format!("invalid vertex {f:?}")),
            }
            if c > 0 && e[c] <= e[c - 1] {
                return perr(ln + 1, col, "vertices must be strictly increasing");
            }
        }
        edges.push((ln + 1, e));
    }
    if let Some((ln, _)) = lines.next() {
        return perr(ln + 1, 1, format!("more than {m} edges"));
    }
    let mut seen = std::collections::HashSet::new();
    for (ln, e) in &edges {
        if !seen.insert(*e) {
            return perr(*ln, 1, format!("duplicate edge {e:?}"));
        }
    }
    Hypergraph4::new(n, edges.into_iter().map(|(_, e)| e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::baber;
    use crate::tournament::random_tournament;
    use proptest::prelude::*;

    #[test]
    fn trn_errors_have_positions() {
        let bad_diag = "3\n110\n001\n100\n";
        assert_eq!(
            read_trn(bad_diag).unwrap_err(),
            Error::Parse { line: 2, column: 1, message: "diagonal entry must be 0".into() }
        );
        assert!(matches!(read_trn("3\n010\n001\n110\n"), Err(Error::Parse { line: 3, column: 3, .. })));
        assert!(matches!(read_trn("3\n01x\n"), Err(Error::Parse { line: 2, column: 3, .. })));
        assert!(matches!(read_trn("3\n01\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(read_trn("3\n010\n001\n"), Err(Error::Parse { line: 4, .. })));
        assert!(matches!(read_trn("two\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(read_trn(""), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(read_trn("3\n010\n001\n100\n1\n"), Err(Error::Parse { line: 5, .. })));
        assert!(read_trn("3\n010\n001\n100\n").is_ok());
    }

    #[test]
    fn hyp_parsing() {
        let h = read_hyp("5 2\n0 1 2 3\n0 1 2 4\n").unwrap();
        assert_eq!(h.edge_count(), 2);
        assert!(matches!(read_hyp("5 1\n0 2 1 3\n"), Err(Error::Parse { line: 2, column: 5, .. })));
        assert!(matches!(read_hyp("5 1\n0 1 2 5\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(read_hyp("5 2\n0 1 2 3\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(read_hyp("5 1\n0 1 2 3\n0 1 2 4\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(read_hyp("5 2\n0 1 2 3\n0 1 2 3\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(read_hyp("5\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(read_hyp("5 1\n0 1 2\n"), Err(Error::Parse { line: 2, .. })));
    }

    proptest! {
        #[test]
        fn trn_round_trip(n in 3usize..70, seed in any::<u64>()) {
            let t = random_tournament(n, seed).unwrap();
            prop_assert_eq!(read_trn(&write_trn(&t)).unwrap(), t);
        }

        #[test]
        fn hyp_round_trip(n in 5usize..14, seed in any::<u64>()) {
            let h = baber(&random_tournament(n, seed).unwrap());
            prop_assert_eq!(read_hyp(&write_hyp(&h)).unwrap(), h);
        }
    }
}
