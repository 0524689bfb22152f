//! Edge-list text format: optional `# n=<N>` header, then one `u v` pair per line.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

pub fn read_edge_list<R: BufRead>(input: R) -> Result<Graph> {
    let mut declared_n: Option<usize> = None;
    let mut edges = Vec::new();
    let mut max_id: Option<VertexId> = None;
    for (idx, line) in input.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            if let Some(value) = comment.trim().strip_prefix("n=") {
                if declared_n.is_some() || !edges.is_empty() {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: "the n= header must come before any edge".into(),
                    });
                }
                declared_n = Some(value.trim().parse().map_err(|e| Error::Parse {
                    line: lineno,
                    msg: format!("bad vertex count: {e}"),
                })?);
            }
            continue;
        }
        let mut fields = trimmed.split_whitespace();
        let mut next_id = || -> Result<VertexId> {
            let tok = fields.next().ok_or_else(|| Error::Parse {
                line: lineno,
                msg: "expected two vertex ids".into(),
            })?;
            tok.parse().map_err(|e| Error::Parse {
                line: lineno,
                msg: format!("bad vertex id {tok:?}: {e}"),
            })
        };
        let u = next_id()?;
        let v = next_id()?;
        if fields.next().is_some() {
            return Err(Error::Parse {
                line: lineno,
                msg: "trailing fields after edge".into(),
            });
        }
        max_id = Some(max_id.map_or(u.max(v), |m| m.max(u).max(v)));
        edges.push((u, v));
    }
    let implied = max_id.map_or(0, |m| m as usize + 1);
    let n = match declared_n {
        Some(n) if n < implied => {
            return Err(Error::InvalidInput(format!(
                "header declares n={n} but vertex id {} appears",
                implied - 1
            )))
        }
        Some(n) => n,
        None => implied,
    };
    Ok(Graph::from_edges(n, edges))
}

/// Writes the header and every live edge once, `u < v`, in sorted order.
pub fn write_edge_list<W: Write>(g: &Graph, mut out: W) -> std::io::Result<()> {
    writeln!(out, "# n={}", g.n())?;
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}
