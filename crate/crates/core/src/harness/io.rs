//! graph6 and edge-list text formats.

use std::fs;
use std::io::{self, Read};
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest vertex count representable in the single-byte size form.
pub const GRAPH6_MAX_N: usize = 62;

/// Encodes `g` as graph6: one size byte `n + 63`, then the upper-triangle
/// bits in column order `(0,1), (0,2), (1,2), (0,3), …` packed six to a
/// byte, zero-padded, each offset by 63.
pub fn encode_graph6(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > GRAPH6_MAX_N {
        return Err(Error::TooLarge {
            what: "graph6 encoding",
            n,
            limit: GRAPH6_MAX_N,
        });
    }
    let mut out = vec![(n + 63) as u8];
    let mut group = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            group = (group << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(group + 63);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((group << (6 - filled)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

pub fn decode_graph6(s: &str) -> Result<Graph> {
    let bytes = s.trim_end_matches(['\n', '\r']).as_bytes();
    let bytes = bytes.strip_prefix(b">>graph6<<").unwrap_or(bytes);
    let err = |offset: usize, message: &str| Error::Graph6 {
        offset,
        message: message.to_string(),
    };
    let (&first, body) = bytes.split_first().ok_or_else(|| err(0, "empty string"))?;
    if !(63..=126).contains(&first) {
        return Err(if first == 126 {
            err(0, "multi-byte size form (n > 62) is not supported")
        } else {
            err(0, &format!("byte {first} outside 63..=126"))
        });
    }
    if first == 126 {
        return Err(err(0, "multi-byte size form (n > 62) is not supported"));
    }
    let n = (first - 63) as usize;
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    if body.len() != need {
        return Err(err(
            1 + body.len().min(need),
            &format!("expected {need} adjacency bytes for n = {n}, found {}", body.len()),
        ));
    }
    if let Some(pos) = body.iter().position(|b| !(63..=126).contains(b)) {
        return Err(err(pos + 1, &format!("byte {} outside 63..=126", body[pos])));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, edges)
}

/// Whitespace-separated vertex pairs, one edge per line. `#` starts a
/// comment; an optional first line `n=<count>` declares the vertex count.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut declared = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| Error::EdgeList { line: line_no, message };
        if let Some(rest) = line.strip_prefix("n=") {
            if declared.is_some() || !edges.is_empty() {
                return Err(err("`n=` must come before any edge".into()));
            }
            declared = Some(rest.trim().parse::<usize>().map_err(|_| err(format!("bad vertex count `{rest}`")))?);
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let [a, b] = tokens.as_slice() else {
            return Err(err(format!("expected two vertex ids, found `{line}`")));
        };
        let parse = |t: &str| t.parse::<usize>().map_err(|_| err(format!("bad vertex id `{t}`")));
        let (u, v) = (parse(a)?, parse(b)?);
        if u == v {
            return Err(err(format!("self-loop at vertex {u}")));
        }
        edges.push((u, v));
    }
    let needed = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    let n = match declared {
        Some(n) if n < needed => {
            return Err(Error::EdgeList {
                line: 1,
                message: format!("declared n={n} but vertex {} appears", needed - 1),
            })
        }
        Some(n) => n,
        None => needed,
    };
    Graph::from_edges(n, edges)
}

pub fn format_edge_list(g: &Graph) -> String {
    let mut out = format!("n={}\n", g.n());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// A graph read from an input source, tagged with where it came from.
#[derive(Clone, Debug)]
pub struct InputGraph {
    pub line: usize,
    pub graph: Graph,
}

/// Reads graphs from `path` (`-` for standard input). Files ending in
/// `.g6`, or whose first non-empty line looks like graph6, are read as one
/// graph6 string per line; anything else is a single edge list.
pub fn read_graphs(path: &Path) -> Result<Vec<InputGraph>> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path)?
    };
    let g6 = path.extension().is_some_and(|e| e == "g6") || looks_like_graph6(&text);
    if g6 {
        read_graph6_lines(&text)
    } else {
        Ok(vec![InputGraph {
            line: 1,
            graph: parse_edge_list(&text)?,
        }])
    }
}

pub fn read_graph6_lines(text: &str) -> Result<Vec<InputGraph>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            decode_graph6(l.trim()).map(|graph| InputGraph { line: i + 1, graph }).map_err(|e| match e {
                Error::Graph6 { offset, message } => Error::Graph6 {
                    offset,
                    message: format!("line {}: {message}", i + 1),
                },
                other => other,
            })
        })
        .collect()
}

fn looks_like_graph6(text: &str) -> bool {
    let Some(first) = text.lines().map(str::trim).find(|l| !l.is_empty()) else {
        return false;
    };
    !first.starts_with("n=")
        && !first.starts_with('#')
        && first.bytes().all(|b| (63..=126).contains(&b))
}
