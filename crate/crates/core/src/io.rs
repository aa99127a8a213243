//! Edge-list, METIS and DIMACS readers plus the canonical edge-list writer.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    /// `u v` per line, 0-based; `#` and `%` start comments.
    EdgeList,
    /// `n m [fmt]` header, then one line of 1-based neighbors per vertex.
    Metis,
    /// `p edge n m` header and `e u v` lines, 1-based.
    Dimacs,
}

impl Format {
    /// Guesses the format from a file extension: `.graph` is METIS, `.col` and
    /// `.dimacs` are DIMACS, anything else is an edge list.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some("graph") | Some("metis") => Format::Metis,
            Some("col") | Some("dimacs") => Format::Dimacs,
            _ => Format::EdgeList,
        }
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edge-list" | "edgelist" | "el" => Ok(Format::EdgeList),
            "metis" => Ok(Format::Metis),
            "dimacs" => Ok(Format::Dimacs),
            _ => Err(Error::InvalidParams(format!("unknown graph format '{s}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Silently drop self-loops instead of rejecting the input.
    pub drop_self_loops: bool,
}

/// Parses `text` strictly: self-loops are an error.
pub fn parse_graph(text: &str, format: Format) -> Result<Graph> {
    parse_graph_with(text, format, ParseOptions::default())
}

pub fn parse_graph_with(text: &str, format: Format, opts: ParseOptions) -> Result<Graph> {
    match format {
        Format::EdgeList => parse_edge_list(text, opts),
        Format::Metis => parse_metis(text, opts),
        Format::Dimacs => parse_dimacs(text, opts),
    }
}

/// Reads and parses a file. `format` of `None` picks one by extension.
pub fn read_graph(path: &Path, format: Option<Format>, opts: ParseOptions) -> Result<Graph> {
    let bytes = std::fs::read(path)?;
    let text = String::from_utf8(bytes).map_err(|e| Error::Parse {
        line: 0,
        msg: format!("input is not UTF-8: {e}"),
    })?;
    parse_graph_with(
        &text,
        format.unwrap_or_else(|| Format::from_path(path)),
        opts,
    )
}

fn parse_index(tok: &str, line: usize) -> Result<usize> {
    tok.parse::<usize>().map_err(|_| Error::Parse {
        line,
        msg: format!("expected a vertex index, found '{tok}'"),
    })
}

fn one_based(tok: &str, line: usize, n: usize) -> Result<usize> {
    let v = parse_index(tok, line)?;
    if v == 0 || v > n {
        return Err(Error::OutOfRange { line, vertex: v, n });
    }
    Ok(v - 1)
}

fn push_edge(
    edges: &mut Vec<(usize, usize)>,
    u: usize,
    v: usize,
    line: usize,
    opts: ParseOptions,
) -> Result<()> {
    if u == v {
        if opts.drop_self_loops {
            return Ok(());
        }
        return Err(Error::SelfLoop { line, vertex: u });
    }
    edges.push((u, v));
    Ok(())
}

fn build(n: usize, edges: &[(usize, usize)]) -> Graph {
    let mut g = Graph::new(n);
    for &(u, v) in edges {
        g.add_edge(u, v);
    }
    g
}

fn parse_edge_list(text: &str, opts: ParseOptions) -> Result<Graph> {
    let mut edges = Vec::new();
    let mut n = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') || t.starts_with('%') {
            continue;
        }
        let toks: Vec<&str> = t.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(Error::Parse {
                line,
                msg: format!("expected 'u v', found {} fields", toks.len()),
            });
        }
        let u = parse_index(toks[0], line)?;
        let v = parse_index(toks[1], line)?;
        n = n.max(u + 1).max(v + 1);
        push_edge(&mut edges, u, v, line, opts)?;
    }
    Ok(build(n, &edges))
}

fn parse_metis(text: &str, opts: ParseOptions) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim_start().starts_with('%'));

    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing METIS header".into(),
    })?;
    let hline = hline + 1;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() < 2 || fields.len() > 4 {
        return Err(Error::Parse {
            line: hline,
            msg: "METIS header must be 'n m [fmt [ncon]]'".into(),
        });
    }
    let n = parse_index(fields[0], hline)?;
    let _declared_edges = parse_index(fields[1], hline)?;
    if let Some(fmt) = fields.get(2) {
        if !fmt.trim_start_matches('0').is_empty() {
            return Err(Error::Parse {
                line: hline,
                msg: format!("weighted METIS graphs (fmt {fmt}) are not supported"),
            });
        }
    }

    let mut edges = Vec::new();
    let mut v = 0;
    for (i, raw) in lines {
        let line = i + 1;
        if v == n {
            if raw.trim().is_empty() {
                continue;
            }
            return Err(Error::Parse {
                line,
                msg: format!("more than {n} vertex lines"),
            });
        }
        for tok in raw.split_whitespace() {
            let u = one_based(tok, line, n)?;
            push_edge(&mut edges, v, u, line, opts)?;
        }
        v += 1;
    }
    if v < n {
        return Err(Error::Parse {
            line: text.lines().count(),
            msg: format!("expected {n} vertex lines, found {v}"),
        });
    }
    Ok(build(n, &edges))
}

fn parse_dimacs(text: &str, opts: ParseOptions) -> Result<Graph> {
    let mut n = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let toks: Vec<&str> = raw.split_whitespace().collect();
        match toks.first().copied() {
            None | Some("c") => {}
            Some("p") => {
                if n.is_some() {
                    return Err(Error::Parse {
                        line,
                        msg: "duplicate 'p' line".into(),
                    });
                }
                if toks.len() != 4 {
                    return Err(Error::Parse {
                        line,
                        msg: "expected 'p edge n m'".into(),
                    });
                }
                n = Some(parse_index(toks[2], line)?);
            }
            Some("e") => {
                let n = n.ok_or(Error::Parse {
                    line,
                    msg: "edge before 'p' line".into(),
                })?;
                if toks.len() != 3 {
                    return Err(Error::Parse {
                        line,
                        msg: "expected 'e u v'".into(),
                    });
                }
                let u = one_based(toks[1], line, n)?;
                let v = one_based(toks[2], line, n)?;
                push_edge(&mut edges, u, v, line, opts)?;
            }
            Some(other) => {
                return Err(Error::Parse {
                    line,
                    msg: format!("unknown DIMACS line type '{other}'"),
                })
            }
        }
    }
    let n = n.ok_or(Error::Parse {
        line: 1,
        msg: "missing 'p' line".into(),
    })?;
    Ok(build(n, &edges))
}

/// Canonical edge list: one `u v` line per edge with `u < v`, ascending, LF
/// line endings. Isolated vertices are not represented.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Solution file: one 0-based vertex id per line, ascending.
pub fn write_solution(set: &[usize]) -> String {
    let mut out = String::new();
    for v in set {
        let _ = writeln!(out, "{v}");
    }
    out
}

/// Reads a solution file. Blank lines and `#` comments are skipped; the
/// result is sorted and deduplicated.
pub fn parse_solution(text: &str) -> Result<Vec<usize>> {
    let mut set = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let v = line.parse().map_err(|_| Error::Parse {
            line: i + 1,
            msg: format!("expected a vertex id, found '{line}'"),
        })?;
        set.push(v);
    }
    set.sort_unstable();
    set.dedup();
    Ok(set)
}
