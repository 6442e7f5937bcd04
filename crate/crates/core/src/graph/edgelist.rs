//! Plain-text edge lists: `#` comment lines, a `p <n>` header, then one
//! `u v` pair per line.

use std::fmt::Write as _;

use super::Graph;
use crate::error::{Error, Result};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_id(token: &str, line: usize) -> Result<usize> {
    token
        .parse()
        .map_err(|_| parse_err(line, format!("expected a vertex id, found {token:?}")))
}

pub fn read_edge_list(text: &str) -> Result<Graph> {
    let mut vertex_count: Option<usize> = None;
    let mut edges = Vec::new();
    let mut seen = std::collections::HashSet::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let Some(n) = vertex_count else {
            match tokens.as_slice() {
                ["p", count] => {
                    vertex_count = Some(parse_id(count, line)?);
                    continue;
                }
                _ => return Err(parse_err(line, "expected header `p <n>`")),
            }
        };
        let [a, b] = tokens.as_slice() else {
            return Err(parse_err(line, "expected `u v`"));
        };
        let (u, v) = (parse_id(a, line)?, parse_id(b, line)?);
        if u >= n || v >= n {
            return Err(parse_err(
                line,
                format!("vertex id out of range for n = {n}"),
            ));
        }
        if u == v {
            return Err(parse_err(line, format!("self-loop at {u}")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(parse_err(line, format!("duplicate edge {u} {v}")));
        }
        edges.push((u, v));
    }

    let n = vertex_count.ok_or_else(|| parse_err(0, "missing header `p <n>`"))?;
    Graph::from_edges(n, &edges)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("p {}\n", g.vertex_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}
