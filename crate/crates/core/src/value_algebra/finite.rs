//! Fully tabulated finite algebras and their text format.
//!
//! ```text
//! # comment
//! name: three-chain
//! carrier: 0 1 top
//! order: 0 < 1 < top        # optional, several lines allowed; add = join
//! add:                      # alternative to order: a square table
//! mul0:                     # square table, rows in carrier order
//! 0 0 0
//! 0 1 top
//! 0 top top
//! one0: 1
//! dom0: 0 1 1               # optional single rows
//! cod0: 0 1 1
//! star0: 1 1 top            # optional; idempotent algebras default to
//!                           # the join of powers
//! ```
//!
//! `mul:`, `one:`, `dom:`, `cod:` and `star:` are shorthand for dimension 0.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::{NValueAlgebra, ValueAlgebra};
use crate::error::{Error, Result};

pub const INDEPENDENCE_MODEL_1: &str = include_str!("../../fixtures/independence_model1.txt");
pub const INDEPENDENCE_MODEL_2: &str = include_str!("../../fixtures/independence_model2.txt");
pub const THREE_CHAIN: &str = include_str!("../../fixtures/three_chain.txt");
pub const NO_MODAL_DIOID: &str = include_str!("../../fixtures/no_modal_dioid.txt");

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct DimTables {
    pub(crate) mul: Vec<Vec<u16>>,
    pub(crate) one: u16,
    pub(crate) dom: Option<Vec<u16>>,
    pub(crate) cod: Option<Vec<u16>>,
    pub(crate) star: Option<Vec<u16>>,
}

/// Validated operation tables over a finite carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteTables {
    pub(crate) names: Vec<String>,
    pub(crate) add: Vec<Vec<u16>>,
    pub(crate) zero: u16,
    pub(crate) idempotent: bool,
    pub(crate) dims: Vec<DimTables>,
    pub(crate) name: String,
}

impl FiniteTables {
    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n_dims(&self) -> usize {
        self.dims.len()
    }

    pub(crate) fn lookup(&self, token: &str) -> Option<u16> {
        self.names.iter().position(|n| n == token).map(|i| i as u16)
    }

    /// Row `row` of the multiplication table of dimension `dim`, as names.
    pub fn mul_row(&self, dim: usize, row: &str) -> Option<Vec<String>> {
        let r = self.lookup(row)? as usize;
        self.dims.get(dim).map(|d| {
            d.mul[r]
                .iter()
                .map(|&v| self.names[v as usize].clone())
                .collect()
        })
    }

    /// A copy with one multiplication row replaced.
    pub fn with_mul_row(&self, dim: usize, row: &str, values: &[&str]) -> Result<FiniteTables> {
        let mut t = self.clone();
        let r = self
            .lookup(row)
            .ok_or_else(|| Error::UnknownElement(row.to_string()))? as usize;
        if dim >= t.dims.len() || values.len() != self.names.len() {
            return Err(Error::Mismatch(format!(
                "row replacement for mul{dim} row {row} has the wrong shape"
            )));
        }
        for (c, v) in values.iter().enumerate() {
            t.dims[dim].mul[r][c] = self
                .lookup(v)
                .ok_or_else(|| Error::UnknownElement(v.to_string()))?;
        }
        Ok(t)
    }

    /// Wraps the tables as an n-dimensional value algebra.
    pub fn into_algebra(self) -> NValueAlgebra {
        let name = self.name.clone();
        let n = self.dims.len();
        let t = Arc::new(self);
        let dims = (0..n)
            .map(|i| {
                let nm = if n == 1 {
                    name.clone()
                } else {
                    format!("{name}.{i}")
                };
                ValueAlgebra::finite(t.clone(), i, nm)
            })
            .collect();
        NValueAlgebra::new(dims)
            .expect("dimensions share one addition table")
            .with_name(name)
    }
}

#[derive(Default)]
struct RawDim {
    mul: Option<Vec<Vec<u16>>>,
    one: Option<u16>,
    dom: Option<Vec<u16>>,
    cod: Option<Vec<u16>>,
    star: Option<Vec<u16>>,
    line: usize,
}

fn split_key(key: &str) -> (&str, usize) {
    let digits = key.trim_start_matches(|c: char| c.is_ascii_alphabetic());
    let head = &key[..key.len() - digits.len()];
    let dim = if digits.is_empty() {
        0
    } else {
        digits.parse().unwrap_or(usize::MAX)
    };
    (head, dim)
}

/// Parses the text format described in the module docs.
pub fn load_finite_algebra(text: &str) -> Result<NValueAlgebra> {
    parse_tables(text).map(FiniteTables::into_algebra)
}

pub fn parse_tables(text: &str) -> Result<FiniteTables> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();

    let mut names: Option<Vec<String>> = None;
    let mut name = "finite".to_string();
    let mut orders: Vec<(usize, Vec<String>)> = Vec::new();
    let mut add: Option<Vec<Vec<u16>>> = None;
    let mut dims: BTreeMap<usize, RawDim> = BTreeMap::new();

    let lookup = |names: &[String], tok: &str, line: usize, what: &str| -> Result<u16> {
        names
            .iter()
            .position(|n| n == tok)
            .map(|i| i as u16)
            .ok_or_else(|| Error::parse(line, format!("{what}: '{tok}' is not in the carrier")))
    };

    let mut i = 0;
    while i < lines.len() {
        let (ln, line) = lines[i];
        i += 1;
        let Some((key, rest)) = line.split_once(':') else {
            return Err(Error::parse(ln, format!("expected 'key: ...', found '{line}'")));
        };
        let key = key.trim();
        let rest = rest.trim();
        if key == "name" {
            name = rest.to_string();
            continue;
        }
        if key == "carrier" {
            let c: Vec<String> = rest.split_whitespace().map(String::from).collect();
            if c.is_empty() {
                return Err(Error::parse(ln, "empty carrier"));
            }
            for (k, a) in c.iter().enumerate() {
                if c[..k].contains(a) {
                    return Err(Error::parse(ln, format!("duplicate carrier element '{a}'")));
                }
            }
            if c.len() > u16::MAX as usize {
                return Err(Error::parse(ln, "carrier too large"));
            }
            names = Some(c);
            continue;
        }
        let Some(carrier) = names.as_ref() else {
            return Err(Error::parse(ln, "'carrier:' must come first"));
        };
        let n = carrier.len();
        if key == "order" {
            let chain: Vec<String> = rest.split('<').map(|s| s.trim().to_string()).collect();
            for c in &chain {
                lookup(carrier, c, ln, "order")?;
            }
            orders.push((ln, chain));
            continue;
        }
        let (head, dim) = split_key(key);
        let read_row = |toks: &str, line: usize, what: &str| -> Result<Vec<u16>> {
            let row: Vec<&str> = toks.split_whitespace().collect();
            if row.len() != n {
                return Err(Error::parse(
                    line,
                    format!("{what}: expected {n} entries, found {}", row.len()),
                ));
            }
            row.iter()
                .enumerate()
                .map(|(c, t)| lookup(carrier, t, line, &format!("{what}, column {}", carrier[c])))
                .collect()
        };
        match head {
            "add" | "mul" => {
                if !rest.is_empty() {
                    return Err(Error::parse(ln, "table header must be alone on its line"));
                }
                let mut table = Vec::with_capacity(n);
                for r in 0..n {
                    let Some(&(rl, row)) = lines.get(i) else {
                        return Err(Error::parse(
                            ln,
                            format!("{key}: table ends before row {}", carrier[r]),
                        ));
                    };
                    if row.contains(':') {
                        return Err(Error::parse(
                            rl,
                            format!("{key}: table ends before row {}", carrier[r]),
                        ));
                    }
                    i += 1;
                    table.push(read_row(row, rl, &format!("{key}, row {}", carrier[r]))?);
                }
                if head == "add" {
                    add = Some(table);
                } else {
                    let d = dims.entry(dim).or_default();
                    d.line = ln;
                    d.mul = Some(table);
                }
            }
            "one" => {
                let v = lookup(carrier, rest, ln, key)?;
                dims.entry(dim).or_default().one = Some(v);
            }
            "dom" | "cod" | "star" => {
                let row = read_row(rest, ln, key)?;
                let d = dims.entry(dim).or_default();
                match head {
                    "dom" => d.dom = Some(row),
                    "cod" => d.cod = Some(row),
                    _ => d.star = Some(row),
                }
            }
            _ => return Err(Error::parse(ln, format!("unknown key '{key}'"))),
        }
    }

    let names = names.ok_or_else(|| Error::parse(0, "missing 'carrier:' line"))?;
    let n = names.len();
    let add = match (add, orders.is_empty()) {
        (Some(a), _) => a,
        (None, false) => join_table(&names, &orders)?,
        (None, true) => return Err(Error::parse(0, "need an 'add:' table or 'order:' lines")),
    };
    let zero = (0..n)
        .find(|&z| (0..n).all(|x| add[z][x] as usize == x && add[x][z] as usize == x))
        .ok_or_else(|| Error::parse(0, "addition has no neutral element"))? as u16;
    let idempotent = (0..n).all(|x| add[x][x] as usize == x);

    if dims.is_empty() {
        return Err(Error::parse(0, "no multiplication table"));
    }
    let mut out = Vec::new();
    for (k, (dim, raw)) in dims.into_iter().enumerate() {
        if dim != k {
            return Err(Error::parse(raw.line, format!("dimension {k} is missing")));
        }
        let mul = raw
            .mul
            .ok_or_else(|| Error::parse(raw.line, format!("mul{dim}: table missing")))?;
        let one = raw
            .one
            .ok_or_else(|| Error::parse(raw.line, format!("one{dim}: missing unit")))?;
        if raw.dom.is_some() != raw.cod.is_some() {
            return Err(Error::parse(
                raw.line,
                format!("dimension {dim}: dom and cod must be given together"),
            ));
        }
        out.push(DimTables {
            mul,
            one,
            dom: raw.dom,
            cod: raw.cod,
            star: raw.star,
        });
    }
    Ok(FiniteTables {
        names,
        add,
        zero,
        idempotent,
        dims: out,
        name,
    })
}

/// Builds the join table of the partial order generated by the chains.
fn join_table(names: &[String], orders: &[(usize, Vec<String>)]) -> Result<Vec<Vec<u16>>> {
    let n = names.len();
    let idx = |s: &str| names.iter().position(|x| x == s).unwrap();
    let mut le = vec![vec![false; n]; n];
    for (i, row) in le.iter_mut().enumerate() {
        row[i] = true;
    }
    for (_, chain) in orders {
        for w in chain.windows(2) {
            le[idx(&w[0])][idx(&w[1])] = true;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if le[i][k] && le[k][j] {
                    le[i][j] = true;
                }
            }
        }
    }
    let line = orders[0].0;
    for i in 0..n {
        for j in 0..n {
            if i != j && le[i][j] && le[j][i] {
                return Err(Error::parse(
                    line,
                    format!("order is cyclic at {} and {}", names[i], names[j]),
                ));
            }
        }
    }
    let mut table = vec![vec![0u16; n]; n];
    for a in 0..n {
        for b in 0..n {
            let ubs: Vec<usize> = (0..n).filter(|&u| le[a][u] && le[b][u]).collect();
            let least = ubs.iter().copied().find(|&u| ubs.iter().all(|&v| le[u][v]));
            match least {
                Some(u) => table[a][b] = u as u16,
                None => {
                    return Err(Error::parse(
                        line,
                        format!("order: {} and {} have no join", names[a], names[b]),
                    ))
                }
            }
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(alg: &ValueAlgebra, s: &str) -> super::super::Weight {
        alg.parse(s).unwrap()
    }

    #[test]
    fn model_one_entries() {
        let a = load_finite_algebra(INDEPENDENCE_MODEL_1).unwrap();
        assert_eq!(a.n(), 2);
        let d0 = a.dim(0);
        let d1 = a.dim(1);
        assert_eq!(d0.format(d0.mul(w(d0, "1_1"), w(d0, "1_1"))), "a");
        assert_eq!(d1.format(d1.dom(w(d1, "a"))), "1_1");
        assert_eq!(d1.format(d1.one()), "1_1");
        assert_eq!(d0.format(d0.zero()), "0");
    }

    #[test]
    fn model_two_entries() {
        let a = load_finite_algebra(INDEPENDENCE_MODEL_2).unwrap();
        let d1 = a.dim(1);
        assert_eq!(d1.format(d1.cod(w(d1, "a"))), "1_1");
        assert_eq!(d1.format(d1.dom(w(d1, "a"))), "1_0");
        // a and 1_1 are incomparable; their join is b.
        assert_eq!(d1.format(d1.add(w(d1, "a"), w(d1, "1_1"))), "b");
    }

    #[test]
    fn three_chain_star() {
        let a = load_finite_algebra(THREE_CHAIN).unwrap();
        let q = a.dim(0);
        let top = w(q, "top");
        assert_eq!(super::super::quantale_star(q, top).unwrap(), top);
        assert_eq!(q.star(w(q, "0")), w(q, "1"));
    }

    #[test]
    fn errors_name_row_and_column() {
        let bad = "carrier: 0 1\norder: 0 < 1\nmul:\n0 0\n0 x\none: 1\n";
        let e = load_finite_algebra(bad).unwrap_err();
        match e {
            Error::Parse { line, message } => {
                assert_eq!(line, 5);
                assert!(message.contains("row 1"), "{message}");
                assert!(message.contains("column 1"), "{message}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn errors_on_missing_unit_and_short_tables() {
        let no_unit = "carrier: 0 1\norder: 0 < 1\nmul:\n0 0\n0 1\n";
        assert!(matches!(load_finite_algebra(no_unit), Err(Error::Parse { .. })));
        let short = "carrier: 0 1\norder: 0 < 1\nmul:\n0 0\none: 1\n";
        assert!(matches!(load_finite_algebra(short), Err(Error::Parse { .. })));
        let narrow = "carrier: 0 1\norder: 0 < 1\nmul:\n0\n0 1\none: 1\n";
        assert!(matches!(load_finite_algebra(narrow), Err(Error::Parse { line: 4, .. })));
    }

    #[test]
    fn errors_on_non_lattice_order() {
        let t = "carrier: 0 a b\norder: 0 < a\norder: 0 < b\nmul:\n0 0 0\n0 a 0\n0 0 b\none: a\n";
        let e = load_finite_algebra(t).unwrap_err();
        assert!(e.to_string().contains("no join"), "{e}");
    }

    #[test]
    fn row_patch() {
        let t = parse_tables(INDEPENDENCE_MODEL_1).unwrap();
        assert_eq!(t.mul_row(1, "a").unwrap(), vec!["a", "0", "a", "a"]);
        let p = t.with_mul_row(1, "a", &["0", "1_0", "a", "a"]).unwrap();
        assert_eq!(p.mul_row(1, "a").unwrap(), vec!["0", "1_0", "a", "a"]);
        assert_ne!(p, t);
    }
}
