use std::collections::{BTreeMap, BTreeSet};

use crate::catoid_models::{GraphSpec, PosetSpec};
use crate::error::{Error, Result};
use crate::value_algebra::{ValueAlgebra, Weight};

/// Non-empty, non-comment lines with their 1-based numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then(|| (i + 1, l.split_whitespace().collect()))
    })
}

/// Graph files: `vertex v` declarations (optional) and edge lines
/// `src dst name [weight]`. Weight tokens are kept as text and read by the
/// chosen algebra later.
pub fn parse_graph(text: &str) -> Result<GraphSpec> {
    let mut g = GraphSpec::new();
    for (n, toks) in lines(text) {
        match toks.as_slice() {
            ["vertex", v] => {
                g.vertex(v);
            }
            [src, dst, name] => g.add_edge(src, dst, name, None).map_err(|e| at(n, e))?,
            [src, dst, name, w] => g.add_edge(src, dst, name, Some(w)).map_err(|e| at(n, e))?,
            _ => return Err(Error::parse(n, "expected 'vertex v' or 'src dst name [weight]'")),
        }
    }
    Ok(g)
}

fn at(line: usize, e: Error) -> Error {
    match e {
        Error::Config(m) | Error::Domain(m) | Error::UnknownElement(m) | Error::Mismatch(m) => Error::parse(line, m),
        other => other,
    }
}

/// Poset files: cover lines `x < y`, or a bare vertex name.
pub fn parse_poset(text: &str) -> Result<PosetSpec> {
    let mut vertices: Vec<String> = Vec::new();
    let mut covers: Vec<(String, String)> = Vec::new();
    let mut seen = BTreeSet::new();
    let mut last = 0;
    for (n, toks) in lines(text) {
        last = n;
        match toks.as_slice() {
            [v] => vertices.push(v.to_string()),
            [a, "<", b] => {
                if !seen.insert((a.to_string(), b.to_string())) {
                    return Err(Error::parse(n, format!("duplicate cover {a} < {b}")));
                }
                covers.push((a.to_string(), b.to_string()));
            }
            _ => return Err(Error::parse(n, "expected 'x < y' or a vertex name")),
        }
    }
    let vs: Vec<&str> = vertices.iter().map(String::as_str).collect();
    let cs: Vec<(&str, &str)> = covers.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let spec = PosetSpec::new(&vs, &cs);
    spec.order().map_err(|e| at(last, e))?;
    Ok(spec)
}

/// Weight files: `label weight` per line, labels as printed by the model
/// (`eps` for the empty word, `[a,b]` for intervals, `t1.p.t2` for guarded
/// strings). Repeated labels are rejected.
pub fn parse_weights(text: &str, alg: &ValueAlgebra) -> Result<BTreeMap<String, Weight>> {
    let mut out = BTreeMap::new();
    for (n, toks) in lines(text) {
        let [label, w] = toks.as_slice() else {
            return Err(Error::parse(n, "expected 'label weight'"));
        };
        let w = alg.parse(w).map_err(|e| at(n, e))?;
        if out.insert(label.to_string(), w).is_some() {
            return Err(Error::parse(n, format!("duplicate weight for {label}")));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value_algebra::make_min_plus;

    #[test]
    fn graph_lines() {
        let g = parse_graph("# demo\nvertex z\na b x 2\nb c y\n").unwrap();
        assert_eq!(g.vertices, vec!["z", "a", "b", "c"]);
        assert_eq!(g.edges[0].name, "x");
        assert_eq!(g.edges[0].weight.as_deref(), Some("2"));
        assert_eq!(g.edges[1].weight, None);
        assert_eq!(
            parse_graph("a b x 1\na c x 2\n"),
            Err(Error::parse(2, "duplicate edge 'x'"))
        );
        assert!(matches!(parse_graph("a b\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn poset_lines() {
        let p = parse_poset("a < b\nb < c\n").unwrap();
        assert_eq!(p.covers, vec![("a".to_string(), "b".to_string()), ("b".to_string(), "c".to_string())]);
        let e = parse_poset("a < b\nb < a\n").unwrap_err();
        assert!(e.to_string().contains("cover relation cyclic at"), "{e}");
        assert_eq!(parse_poset("a < b\na < b\n"), Err(Error::parse(2, "duplicate cover a < b")));
    }

    #[test]
    fn weight_lines() {
        let alg = make_min_plus();
        let w = parse_weights("eps 0\nab inf\n", &alg).unwrap();
        assert_eq!(w["ab"], Weight::Inf);
        assert!(matches!(parse_weights("a -1\n", &alg), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_weights("a 1\na 2\n", &alg), Err(Error::Parse { line: 2, .. })));
    }
}
