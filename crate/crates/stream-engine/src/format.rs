use std::collections::HashSet;
use std::path::Path;

use hypergraph_core::{Hyperedge, Hypergraph, HypergraphError, VertexId};

use crate::error::StreamError;

/// Whether a repeated edge line is a hard error or is dropped with a tally.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DedupPolicy {
    Strict,
    Lenient,
}

#[derive(Clone, Debug)]
pub struct ParsedEdgeList {
    pub k: usize,
    pub n: VertexId,
    pub edges: Vec<Hyperedge>,
    /// Duplicate lines dropped under `DedupPolicy::Lenient`.
    pub dedup_dropped: usize,
    pub had_header: bool,
}

impl ParsedEdgeList {
    pub fn into_hypergraph(self) -> Result<Hypergraph, HypergraphError> {
        Hypergraph::new(self.k, self.n, self.edges)
    }
}

/// Parses the edge-list interchange format: an optional `k n m` header, then
/// one edge per line as k space-separated positive vertex ids, with `#`
/// starting a comment.
///
/// A 3-token first line is ambiguous between a header and a k=3 edge. It is
/// read as a header exactly when that reading is structurally plausible:
/// 2 <= k <= n and the remaining line count equals m. Under that reading any
/// later violation (wrong arity, vertex above n) is an error, never a silent
/// reinterpretation of the file as headerless. When the count does not match
/// and the first line cannot be an edge either, the mismatch is reported.
pub fn parse_edge_list(text: &str, policy: DedupPolicy) -> Result<ParsedEdgeList, StreamError> {
    let lines: Vec<(usize, Vec<&str>)> = text
        .lines()
        .enumerate()
        .map(|(i, raw)| {
            let content = raw.split('#').next().unwrap_or("");
            (i + 1, content.split_whitespace().collect::<Vec<_>>())
        })
        .filter(|(_, tokens)| !tokens.is_empty())
        .collect();

    let Some((first_no, first)) = lines.first() else {
        return Err(StreamError::parse(0, "no edges and no header"));
    };

    if let Some((k, n, m)) = read_header(first) {
        if lines.len() - 1 == m {
            return parse_edges(&lines[1..], k, Some(n), policy).map(|(edges, dropped)| {
                ParsedEdgeList {
                    k,
                    n,
                    edges,
                    dedup_dropped: dropped,
                    had_header: true,
                }
            });
        }
        // Count mismatch. Only a first line that itself forms a valid edge
        // can demote the file to headerless; otherwise the mismatch is real.
        if !is_valid_edge_line(first) {
            return Err(StreamError::parse(
                *first_no,
                format!(
                    "header declares {m} edges but {} lines follow",
                    lines.len() - 1
                ),
            ));
        }
    }

    let k = first.len();
    if k < 2 {
        return Err(StreamError::parse(
            *first_no,
            format!("edges need at least 2 vertices, line has {k}"),
        ));
    }
    let (edges, dropped) = parse_edges(&lines, k, None, policy)?;
    let n = edges.iter().map(|e| e.max_vertex()).max().unwrap_or(0);
    Ok(ParsedEdgeList {
        k,
        n,
        edges,
        dedup_dropped: dropped,
        had_header: false,
    })
}

pub fn read_edge_list_file(path: &Path, policy: DedupPolicy) -> Result<ParsedEdgeList, StreamError> {
    let text = std::fs::read_to_string(path)?;
    parse_edge_list(&text, policy)
}

/// Serializes in the same format `parse_edge_list` reads, always with a
/// header so the result is unambiguous.
pub fn write_edge_list(k: usize, n: VertexId, edges: &[Hyperedge]) -> String {
    let mut out = format!("{k} {n} {}\n", edges.len());
    for e in edges {
        let line: Vec<String> = e.vertices().iter().map(|v| v.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

fn is_valid_edge_line(tokens: &[&str]) -> bool {
    if tokens.len() < 2 {
        return false;
    }
    let verts: Option<Vec<VertexId>> = tokens.iter().map(|t| t.parse().ok()).collect();
    verts.is_some_and(|v| Hyperedge::new(v).is_ok())
}

fn read_header(tokens: &[&str]) -> Option<(usize, VertexId, usize)> {
    if tokens.len() != 3 {
        return None;
    }
    let k: usize = tokens[0].parse().ok()?;
    let n: VertexId = tokens[1].parse().ok()?;
    let m: usize = tokens[2].parse().ok()?;
    (k >= 2 && n as usize >= k).then_some((k, n, m))
}

fn parse_edges(
    lines: &[(usize, Vec<&str>)],
    k: usize,
    n: Option<VertexId>,
    policy: DedupPolicy,
) -> Result<(Vec<Hyperedge>, usize), StreamError> {
    let mut edges = Vec::with_capacity(lines.len());
    let mut seen: HashSet<Hyperedge> = HashSet::with_capacity(lines.len());
    let mut dropped = 0usize;
    for (line, tokens) in lines {
        if tokens.len() != k {
            return Err(StreamError::parse(
                *line,
                format!("expected {k} vertices, found {}", tokens.len()),
            ));
        }
        let mut verts = Vec::with_capacity(k);
        for t in tokens {
            let v: VertexId = t
                .parse()
                .map_err(|_| StreamError::parse(*line, format!("bad vertex id {t:?}")))?;
            verts.push(v);
        }
        let edge = Hyperedge::new(verts)
            .map_err(|e| StreamError::parse(*line, e.to_string()))?;
        if let Some(n) = n {
            if edge.max_vertex() > n {
                return Err(StreamError::parse(
                    *line,
                    format!("vertex {} exceeds declared n = {n}", edge.max_vertex()),
                ));
            }
        }
        if !seen.insert(edge.clone()) {
            match policy {
                DedupPolicy::Strict => {
                    return Err(StreamError::parse(*line, format!("duplicate edge {edge}")));
                }
                DedupPolicy::Lenient => {
                    dropped += 1;
                    continue;
                }
            }
        }
        edges.push(edge);
    }
    Ok((edges, dropped))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_file_roundtrips() {
        let text = "3 4 4\n1 2 3\n1 2 4\n1 3 4\n2 3 4\n";
        let parsed = parse_edge_list(text, DedupPolicy::Strict).unwrap();
        assert!(parsed.had_header);
        assert_eq!((parsed.k, parsed.n, parsed.edges.len()), (3, 4, 4));
        assert_eq!(write_edge_list(parsed.k, parsed.n, &parsed.edges), text);
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "# triangle\n\n2 3 3\n1 2  # first\n2 3\n1 3\n";
        let parsed = parse_edge_list(text, DedupPolicy::Strict).unwrap();
        assert_eq!((parsed.k, parsed.n, parsed.edges.len()), (2, 3, 3));
    }

    #[test]
    fn headerless_file_infers_metadata() {
        let text = "1 2 5 9\n1 2 5 8\n";
        let parsed = parse_edge_list(text, DedupPolicy::Strict).unwrap();
        assert!(!parsed.had_header);
        assert_eq!((parsed.k, parsed.n, parsed.edges.len()), (4, 9, 2));
    }

    #[test]
    fn three_token_first_line_prefers_consistent_header() {
        // "2 3 3" reads as k=2, n=3, m=3 when exactly 3 edges follow.
        let header_like = "2 3 3\n1 2\n2 3\n1 3\n";
        let parsed = parse_edge_list(header_like, DedupPolicy::Strict).unwrap();
        assert!(parsed.had_header);

        // With mismatched count, the line "3 4 5" is a k=3 edge.
        let edge_like = "3 4 5\n1 2 3\n";
        let parsed = parse_edge_list(edge_like, DedupPolicy::Strict).unwrap();
        assert!(!parsed.had_header);
        assert_eq!((parsed.k, parsed.edges.len()), (3, 2));
    }

    #[test]
    fn header_count_mismatch_is_loud_for_non_edge_headers() {
        // "2 3 3" repeats a vertex, so it cannot demote to an edge reading.
        let text = "2 3 3\n1 2\n2 3\n";
        let err = parse_edge_list(text, DedupPolicy::Strict).unwrap_err();
        assert!(err.to_string().contains("declares 3 edges"), "{err}");
    }

    #[test]
    fn broken_header_over_valid_edges_demotes_to_data() {
        // "2 3 5" is a valid edge, so a count mismatch reads it as one.
        let text = "2 3 5\n1 2 3\n";
        let parsed = parse_edge_list(text, DedupPolicy::Strict).unwrap();
        assert!(!parsed.had_header);
        assert_eq!((parsed.k, parsed.n, parsed.edges.len()), (3, 5, 2));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let cases = [
            ("3 4 2\n1 2 3\n1 2\n", 3, "expected 3 vertices"),
            ("3 4 2\n1 2 3\n1 2 x\n", 3, "bad vertex id"),
            ("3 4 2\n1 2 3\n1 2 9\n", 3, "exceeds declared n"),
            ("3 4 2\n1 2 3\n1 2 2\n", 3, "repeated vertex"),
        ];
        for (text, line, needle) in cases {
            match parse_edge_list(text, DedupPolicy::Strict) {
                Err(StreamError::Parse { line: l, message }) => {
                    assert_eq!(l, line, "{text:?}");
                    assert!(message.contains(needle), "{message:?} missing {needle:?}");
                }
                other => panic!("expected parse error for {text:?}, got {other:?}"),
            }
        }
    }

    #[test]
    fn duplicate_edges_follow_policy() {
        let text = "2 3 3\n1 2\n1 2\n2 3\n";
        let err = parse_edge_list(text, DedupPolicy::Strict).unwrap_err();
        assert!(err.to_string().contains("duplicate edge"));

        let parsed = parse_edge_list(text, DedupPolicy::Lenient).unwrap();
        assert_eq!(parsed.edges.len(), 2);
        assert_eq!(parsed.dedup_dropped, 1);
    }

    #[test]
    fn empty_input_is_an_error() {
        assert!(parse_edge_list("# nothing here\n", DedupPolicy::Strict).is_err());
    }

    #[test]
    fn zero_edge_header_is_fine() {
        let parsed = parse_edge_list("3 5 0\n", DedupPolicy::Strict).unwrap();
        assert_eq!((parsed.k, parsed.n, parsed.edges.len()), (3, 5, 0));
    }
}
