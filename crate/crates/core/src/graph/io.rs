//! Text formats: a plain edge list (`n m` header, then `u v` per line) and graph6.

use super::Graph;
use crate::error::{Error, Result};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Parses `n m` followed by `m` lines `u v`. Blank lines and `#` comments are skipped.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let head = parse_pair(hline, header)?;
    let (n, m) = head;
    let mut edges = Vec::with_capacity(m);
    for (lineno, line) in lines {
        if edges.len() == m {
            return Err(parse_err(lineno, format!("more than {m} edges")));
        }
        edges.push(parse_pair(lineno, line)?);
    }
    if edges.len() != m {
        return Err(parse_err(0, format!("expected {m} edges, found {}", edges.len())));
    }
    Graph::new(n, &edges)
}

fn parse_pair(lineno: usize, line: &str) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace().map(|t| {
        t.parse::<usize>()
            .map_err(|e| parse_err(lineno, format!("`{t}`: {e}")))
    });
    match (it.next(), it.next(), it.next()) {
        (Some(a), Some(b), None) => Ok((a?, b?)),
        _ => Err(parse_err(lineno, "expected two integers")),
    }
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Decodes one graph6 string (an optional `>>graph6<<` header is accepted).
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let line = text.trim();
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes = line.as_bytes();
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(parse_err(1, "graph6 bytes must lie in 63..=126"));
    }
    let (n, rest) = match bytes {
        [126, 126, r @ ..] if r.len() >= 6 => (sextets(&r[..6]), &r[6..]),
        [126, r @ ..] if r.len() >= 3 => (sextets(&r[..3]), &r[3..]),
        [b, r @ ..] if *b != 126 => ((b - 63) as usize, r),
        _ => return Err(parse_err(1, "truncated graph6 size")),
    };
    let bits_needed = n * n.saturating_sub(1) / 2;
    if rest.len() != bits_needed.div_ceil(6) {
        return Err(parse_err(
            1,
            format!("expected {} data bytes for n = {n}, got {}", bits_needed.div_ceil(6), rest.len()),
        ));
    }
    let bit = |k: usize| (rest[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::new(n, &edges)
}

fn sextets(bytes: &[u8]) -> usize {
    bytes.iter().fold(0, |acc, &b| (acc << 6) | (b - 63) as usize)
}

pub fn write_graph6(g: &Graph) -> String {
    let n = g.vertex_count();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        let width = if n <= 258_047 { 3 } else { 6 };
        out.extend(std::iter::repeat_n(126, if width == 3 { 1 } else { 2 }));
        for s in (0..width).rev() {
            out.push(((n >> (6 * s)) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.is_adjacent(i, j));
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 output is ASCII")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::presets;
    use proptest::prelude::*;

    #[test]
    fn edge_list_round_trip() {
        let text = "4 4\n0 1\n1 2\n2 3\n3 0\n";
        let g = parse_edge_list(text).unwrap();
        assert_eq!(g.regular_degree(), Some(2));
        assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn edge_list_errors() {
        assert!(matches!(parse_edge_list(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_edge_list("3 2\n0 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_edge_list("3 1\n0 x\n"), Err(Error::Parse { line: 2, .. })));
        assert_eq!(parse_edge_list("4 2\n0 1\n2 3\n"), Err(Error::NotConnected));
    }

    #[test]
    fn known_graph6_strings() {
        // Petersen graph and K4 as produced by nauty's geng/showg.
        let petersen = parse_graph6("IheA@GUAo").unwrap();
        assert_eq!(petersen.vertex_count(), 10);
        assert_eq!(petersen.edge_count(), 15);
        assert_eq!(petersen.regular_degree(), Some(3));
        let k4 = parse_graph6(">>graph6<<C~").unwrap();
        assert_eq!(k4, presets::complete(4).unwrap());
        assert_eq!(write_graph6(&k4), "C~");
    }

    #[test]
    fn bad_graph6() {
        assert!(parse_graph6("C").is_err());
        assert!(parse_graph6("C~~").is_err());
        assert!(parse_graph6("C\x20").is_err());
    }

    proptest! {
        #[test]
        fn graph6_round_trip(n in 2usize..20, seed in any::<u64>()) {
            // A path backbone keeps the graph connected; extra edges from the seed.
            let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
            let mut s = seed;
            for j in 2..n {
                for i in 0..j - 1 {
                    s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    if s >> 62 == 0 {
                        edges.push((i, j));
                    }
                }
            }
            let g = Graph::new(n, &edges).unwrap();
            prop_assert_eq!(parse_graph6(&write_graph6(&g)).unwrap(), g);
        }
    }
}
