//! Line-oriented `.herg` reader.

use std::collections::{BTreeMap, HashMap, HashSet};

use super::graph::{GraphError, HalfEdgedRibbonGraph, Mark, RawGraph};

fn perr(line: usize, msg: impl Into<String>) -> GraphError {
    GraphError::Parse {
        line,
        msg: msg.into(),
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

pub fn parse_graph(text: &str) -> Result<HalfEdgedRibbonGraph, GraphError> {
    // First pass: collect declared edge ids so end tokens can be told apart
    // from half-ribbon tokens.
    let mut declared: HashMap<String, (usize, bool)> = HashMap::new();
    for (i, raw_line) in text.lines().enumerate() {
        let line = strip_comment(raw_line).trim();
        if let Some(rest) = line.strip_prefix("edge ") {
            let (id, props) = rest
                .split_once(':')
                .ok_or_else(|| perr(i + 1, "expected 'edge <id>: twist=<0|1>'"))?;
            let id = id.trim().to_string();
            let mut twist = false;
            for kv in props.split_whitespace() {
                match kv {
                    "twist=0" => twist = false,
                    "twist=1" => twist = true,
                    other => return Err(perr(i + 1, format!("unknown edge property '{other}'"))),
                }
            }
            if id.is_empty() {
                return Err(perr(i + 1, "empty edge id"));
            }
            if declared.insert(id.clone(), (i + 1, twist)).is_some() {
                return Err(perr(i + 1, format!("duplicate edge id {id}")));
            }
        }
    }

    let mut raw = RawGraph::default();
    let mut seen_graph = false;
    let mut seen_ends: HashSet<String> = HashSet::new();
    let mut vids: HashSet<String> = HashSet::new();
    let mut edge_ends: HashMap<String, [bool; 2]> = HashMap::new();
    for (i, raw_line) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = strip_comment(raw_line).trim();
        if line.is_empty() || line.starts_with("edge ") {
            continue;
        }
        if let Some(rest) = line.strip_prefix("graph") {
            if seen_graph {
                return Err(perr(lineno, "second 'graph' line"));
            }
            seen_graph = true;
            let mut parts = rest.split_whitespace();
            raw.name = parts.next().unwrap_or("").to_string();
            let mut header = BTreeMap::new();
            for kv in parts {
                let (k, v) = kv
                    .split_once('=')
                    .ok_or_else(|| perr(lineno, format!("expected key=value, got '{kv}'")))?;
                header.insert(k.to_string(), v.to_string());
            }
            raw.header = header;
            continue;
        }
        let rest = line
            .strip_prefix("vertex ")
            .ok_or_else(|| perr(lineno, format!("unrecognized line '{line}'")))?;
        let (vid, toks) = rest
            .split_once(':')
            .ok_or_else(|| perr(lineno, "expected 'vertex <vid>: <tokens>'"))?;
        let vid = vid.trim().to_string();
        if vid.is_empty() {
            return Err(perr(lineno, "empty vertex id"));
        }
        if !vids.insert(vid.clone()) {
            return Err(perr(lineno, format!("duplicate vertex id {vid}")));
        }
        let mut rotation = Vec::new();
        for tok in toks.split_whitespace() {
            let edge_end = tok.rsplit_once('.').and_then(|(eid, side)| {
                declared
                    .contains_key(eid)
                    .then(|| (eid.to_string(), side.to_string()))
            });
            let label = if let Some((eid, side)) = edge_end {
                let idx = match side.as_str() {
                    "1" => 0,
                    "2" => 1,
                    _ => return Err(perr(lineno, format!("edge end '{tok}' must end in .1 or .2"))),
                };
                edge_ends.entry(eid).or_insert([false; 2])[idx] = true;
                tok.to_string()
            } else if tok.starts_with('h') {
                let (label, mark) = if let Some(l) = tok.strip_suffix("!m") {
                    (l, Some(Mark::M))
                } else if let Some(l) = tok.strip_suffix("!n") {
                    (l, Some(Mark::N))
                } else {
                    (tok, None)
                };
                if label.contains('!') {
                    return Err(perr(lineno, format!("bad half-ribbon mark in '{tok}'")));
                }
                if let Some(m) = mark {
                    raw.marks.insert(label.to_string(), m);
                }
                label.to_string()
            } else {
                return Err(perr(
                    lineno,
                    format!("token '{tok}' is neither a declared edge end nor a half-ribbon"),
                ));
            };
            if !seen_ends.insert(label.clone()) {
                return Err(perr(lineno, format!("end {label} listed twice")));
            }
            rotation.push(label);
        }
        raw.vertices.push((vid, rotation));
    }
    if !seen_graph {
        return Err(perr(1, "missing 'graph <name>' line"));
    }
    let mut ids: Vec<_> = declared.into_iter().collect();
    ids.sort_by_key(|(_, (line, _))| *line);
    for (id, (line, twist)) in ids {
        match edge_ends.get(&id) {
            Some([true, true]) => {}
            _ => {
                return Err(perr(
                    line,
                    format!("edge {id} is dangling: both {id}.1 and {id}.2 must be listed"),
                ))
            }
        }
        raw.edges
            .push((id.clone(), format!("{id}.1"), format!("{id}.2"), twist));
    }
    HalfEdgedRibbonGraph::from_raw(raw)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bare_vertex() {
        let g = parse_graph("graph g\nvertex v:\n").unwrap();
        assert_eq!(g.num_vertices(), 1);
        assert_eq!(g.num_edges(), 0);
        assert_eq!(g.num_half_ribbons(), 0);
    }

    #[test]
    fn single_half_ribbon() {
        let g = parse_graph("graph g\nvertex v: h1\n").unwrap();
        assert_eq!(g.num_half_ribbons(), 1);
    }

    #[test]
    fn end_listed_twice_is_error_with_line() {
        let err = parse_graph("graph g\nvertex v: e1.1\nvertex w: e1.1 e1.2\nedge e1: twist=0\n")
            .unwrap_err();
        assert_eq!(
            err,
            GraphError::Parse {
                line: 3,
                msg: "end e1.1 listed twice".into()
            }
        );
    }

    #[test]
    fn dangling_edge_reports_declaration_line() {
        let err = parse_graph("graph g\nvertex v: e1.1\n# note\nedge e1: twist=0\n").unwrap_err();
        assert!(matches!(err, GraphError::Parse { line: 4, .. }));
    }

    #[test]
    fn marks_and_header() {
        let g = parse_graph("graph p um=u wm=w\nvertex u: h1!m p.1\nvertex w: h2!n p.2\nedge p: twist=0\n")
            .unwrap();
        assert_eq!(g.header.get("um").map(String::as_str), Some("u"));
        assert_eq!(g.marked(Mark::M).len(), 1);
        assert_eq!(g.marked(Mark::N).len(), 1);
    }

    #[test]
    fn text_roundtrip() {
        let src = "graph g\nvertex u: e1.1 h1 e2.1\nvertex w: e2.2 e1.2\nedge e1: twist=1\nedge e2: twist=0\n";
        let g = parse_graph(src).unwrap();
        assert_eq!(g.to_herg_text(), src);
    }
}
