//! Line-oriented `.ctg` reader.

use std::collections::BTreeMap;

use super::decomp::{ColoredDecomposition, ColoredPiece};
use super::graph::{ColoredBuilder, ColoredError, ColoredTensorGraph, Polarity};
use crate::ribbon::Mark;

fn perr(line: usize, msg: impl Into<String>) -> ColoredError {
    ColoredError::Parse {
        line,
        msg: msg.into(),
    }
}

fn color_of(line: usize, tok: &str) -> Result<usize, ColoredError> {
    tok.strip_prefix("color=")
        .and_then(|c| c.parse().ok())
        .ok_or_else(|| perr(line, format!("expected color=<c>, got '{tok}'")))
}

pub fn parse_colored(text: &str) -> Result<ColoredTensorGraph, ColoredError> {
    let mut b: Option<ColoredBuilder> = None;
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut words = line.split_whitespace();
        let head = words.next().unwrap_or("");
        if head == "cgraph" {
            if b.is_some() {
                return Err(perr(ln, "second 'cgraph' line"));
            }
            let name = words.next().ok_or_else(|| perr(ln, "missing graph name"))?;
            let mut rank = None;
            let mut bipartite = false;
            for w in words {
                if let Some(r) = w.strip_prefix("rank=") {
                    rank = Some(r.parse().map_err(|_| perr(ln, format!("bad rank '{r}'")))?);
                } else if w == "bipartite" {
                    bipartite = true;
                } else {
                    return Err(perr(ln, format!("unknown header token '{w}'")));
                }
            }
            let mut nb = ColoredBuilder::new(name, rank.ok_or_else(|| perr(ln, "missing rank=<n>"))?);
            nb.bipartite = bipartite;
            b = Some(nb);
            continue;
        }
        let g = b.as_mut().ok_or_else(|| perr(ln, "expected 'cgraph' header first"))?;
        match head {
            "vertex" => {
                let id = words.next().ok_or_else(|| perr(ln, "missing vertex id"))?;
                let pol = match words.next() {
                    None => None,
                    Some("+") => Some(Polarity::Plus),
                    Some("-") => Some(Polarity::Minus),
                    Some(o) => return Err(perr(ln, format!("expected + or -, got '{o}'"))),
                };
                if let Some(extra) = words.next() {
                    return Err(perr(ln, format!("unexpected '{extra}'")));
                }
                g.vertices.push((id.into(), pol));
            }
            "edge" | "half" => {
                let rest = line[head.len()..].trim();
                let (id, props) = rest
                    .split_once(':')
                    .ok_or_else(|| perr(ln, format!("expected '{head} <id>: ...'")))?;
                let id = id.trim();
                if id.is_empty() {
                    return Err(perr(ln, "empty id"));
                }
                let toks: Vec<&str> = props.split_whitespace().collect();
                if head == "edge" {
                    let [u, w, c, tail @ ..] = toks.as_slice() else {
                        return Err(perr(ln, "expected 'edge <id>: <v1> <v2> color=<c>'"));
                    };
                    let contracted = match tail {
                        [] => false,
                        ["contracted"] => true,
                        _ => return Err(perr(ln, format!("unexpected '{}'", tail.join(" ")))),
                    };
                    g.edges.push((id.into(), (*u).into(), (*w).into(), color_of(ln, c)?, contracted));
                } else {
                    let [v, c, tail @ ..] = toks.as_slice() else {
                        return Err(perr(ln, "expected 'half <id>: <v> color=<c>'"));
                    };
                    let mark = match tail {
                        [] => None,
                        ["mark=m"] => Some(Mark::M),
                        ["mark=n"] => Some(Mark::N),
                        _ => return Err(perr(ln, format!("unexpected '{}'", tail.join(" ")))),
                    };
                    g.halves.push((id.into(), (*v).into(), color_of(ln, c)?, mark));
                }
            }
            other => return Err(perr(ln, format!("unrecognized line start '{other}'"))),
        }
    }
    b.ok_or_else(|| perr(0, "empty input"))?.build()
}

/// Manifest: `template <file>` then `piece <edge-id> <file>` per free
/// template edge.
pub fn parse_colored_manifest<F>(text: &str, mut load: F) -> Result<ColoredDecomposition, ColoredError>
where
    F: FnMut(&str) -> Result<ColoredTensorGraph, ColoredError>,
{
    let mut template = None;
    let mut pieces: BTreeMap<String, ColoredPiece> = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        match line.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["template", file] => template = Some(load(file)?),
            ["piece", eid, file] => {
                let piece = ColoredPiece::from_graph(load(file)?)?;
                if pieces.insert(eid.to_string(), piece).is_some() {
                    return Err(perr(i + 1, format!("second piece for edge {eid}")));
                }
            }
            _ => return Err(perr(i + 1, format!("unrecognized manifest line '{line}'"))),
        }
    }
    let template = template.ok_or_else(|| perr(0, "missing template line"))?;
    let mut ordered = Vec::new();
    for i in template.free_edges() {
        let id = &template.edges[i].id;
        ordered.push(pieces.remove(id).ok_or_else(|| ColoredError::Invalid(format!("no piece for edge {id}")))?);
    }
    if let Some(extra) = pieces.keys().next() {
        return Err(ColoredError::UnknownEdge(extra.clone()));
    }
    ColoredDecomposition::new(template, ordered)
}

#[cfg(test)]
mod tests {
    use super::*;

    const MELON: &str = "cgraph m rank=3 bipartite\nvertex u +\nvertex w -\n\
        edge c0: u w color=0\nedge c1: u w color=1\nedge c2: u w color=2\nedge c3: u w color=3\n";

    #[test]
    fn melon_parses() {
        let g = parse_colored(MELON).unwrap();
        assert_eq!((g.vertices.len(), g.edges.len()), (2, 4));
        assert_eq!(parse_colored(&g.to_ctg_text()).unwrap(), g);
    }

    #[test]
    fn repeated_color_is_an_error() {
        let t = "cgraph g rank=3\nvertex u\nvertex w\nedge a: u w color=1\nedge b: u w color=1\n";
        assert!(matches!(parse_colored(t), Err(ColoredError::ColorClash { .. })));
    }

    #[test]
    fn degree_and_syntax_errors() {
        assert!(parse_colored("cgraph g rank=3\nvertex u\nhalf h: u color=4\n").is_err());
        assert!(matches!(
            parse_colored("cgraph g rank=3\nvertex u\nedge a u u\n"),
            Err(ColoredError::Parse { line: 3, .. })
        ));
        let g = parse_colored("cgraph g rank=3\nvertex u\nhalf h0: u color=0 mark=m\nhalf h1: u color=1\n").unwrap();
        assert!(!g.is_tensor());
    }

    #[test]
    fn manifest_pairs_pieces_with_edges() {
        let piece = crate::stranded::decomp::ColoredPiece::dipole(3, 0).graph.to_ctg_text();
        let t = "cgraph t rank=3\nvertex u\nvertex w\nedge a: u w color=0\nhalf h1: u color=1\n";
        let load = |f: &str| parse_colored(if f == "t" { t } else { &piece });
        let d = parse_colored_manifest("template t\npiece a p\n", load).unwrap();
        assert_eq!(d.pieces.len(), 1);
        assert!(parse_colored_manifest("template t\n", load).is_err());
        assert!(parse_colored_manifest("template t\npiece a p\npiece b p\n", load).is_err());
    }
}
