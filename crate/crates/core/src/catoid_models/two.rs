use std::collections::BTreeSet;

use super::paths::{GraphSpec, Path};
use super::words::{all_words, shuffle, unshuffle, word_label, Word};
use crate::error::{Error, Result};
use crate::higher::NCatoid;

/// Words with concatenation in dimension 0 and shuffle in dimension 1.
#[derive(Debug, Clone)]
pub struct ShuffleConcat {
    max_len: usize,
    words: Vec<Word>,
}

/// The 2-catoid on `A*` with `ε` as the only identity in both dimensions.
pub fn shuffle_concat_2catoid(alphabet: &[char], max_len: usize) -> ShuffleConcat {
    ShuffleConcat {
        max_len,
        words: all_words(alphabet, max_len),
    }
}

impl ShuffleConcat {
    pub fn word(&self, s: &str) -> Word {
        Word(s.chars().collect())
    }
}

impl NCatoid for ShuffleConcat {
    type Elem = Word;

    fn name(&self) -> String {
        "shuffle-concat".into()
    }

    fn dims(&self) -> usize {
        2
    }

    fn universe(&self) -> &[Word] {
        &self.words
    }

    fn compose(&self, dim: usize, y: &Word, z: &Word) -> BTreeSet<Word> {
        if y.len() + z.len() > self.max_len {
            BTreeSet::new()
        } else if dim == 0 {
            BTreeSet::from([y.concat(z)])
        } else {
            shuffle(&y.0, &z.0)
        }
    }

    fn source(&self, _dim: usize, _x: &Word) -> Word {
        Word::empty()
    }

    fn target(&self, _dim: usize, _x: &Word) -> Word {
        Word::empty()
    }

    fn decompose2(&self, dim: usize, x: &Word) -> Vec<(Word, Word)> {
        if dim == 0 {
            (0..=x.len())
                .map(|i| (Word(x.0[..i].to_vec()), Word(x.0[i..].to_vec())))
                .collect()
        } else {
            unshuffle(x)
        }
    }

    fn escapes(&self, _dim: usize, y: &Word, z: &Word) -> bool {
        y.len() + z.len() > self.max_len
    }

    fn is_truncated(&self) -> bool {
        true
    }

    fn label(&self, x: &Word) -> String {
        word_label(x)
    }
}

/// A finite strict 2-category of globes: 1-cells are paths in a DAG, and a
/// 2-cell `π ⇒ π'` exists when the two paths are parallel, of equal length
/// and related edge by edge in the reflexive-transitive closure of the
/// declared edge relation.
#[derive(Debug, Clone)]
pub struct GlobeSpec {
    pub graph: GraphSpec,
    /// Basic 2-cells `e ⇒ f` between parallel edges, by edge name.
    pub cells: Vec<(String, String)>,
}

impl GlobeSpec {
    /// Edges `x, x', x'': a → b` with `x ⇒ x' ⇒ x''` and `y: b → c`.
    pub fn example() -> Self {
        let mut g = GraphSpec::new();
        g.add_edge("a", "b", "x", None).unwrap();
        g.add_edge("a", "b", "x'", None).unwrap();
        g.add_edge("a", "b", "x''", None).unwrap();
        g.add_edge("b", "c", "y", None).unwrap();
        GlobeSpec {
            graph: g,
            cells: vec![("x".into(), "x'".into()), ("x'".into(), "x''".into())],
        }
    }
}

/// A globe `(π, π')`. Constant globes have empty paths at `start`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Globe {
    pub start: usize,
    pub upper: Vec<usize>,
    pub lower: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct GlobeCatoid {
    graph: GraphSpec,
    globes: Vec<Globe>,
}

pub fn globe_2category(spec: &GlobeSpec) -> Result<GlobeCatoid> {
    let g = &spec.graph;
    if !g.is_acyclic() {
        return Err(Error::Config("globe model needs an acyclic graph".into()));
    }
    let m = g.edges.len();
    let mut le = vec![vec![false; m]; m];
    for (e, row) in le.iter_mut().enumerate() {
        row[e] = true;
    }
    for (a, b) in &spec.cells {
        let find = |s: &str| {
            g.edge_index(s)
                .ok_or_else(|| Error::Config(format!("unknown edge '{s}' in 2-cell")))
        };
        let (e, f) = (find(a)?, find(b)?);
        if g.edges[e].src != g.edges[f].src || g.edges[e].dst != g.edges[f].dst {
            return Err(Error::Config(format!("2-cell {a} => {b} joins edges that are not parallel")));
        }
        le[e][f] = true;
    }
    for k in 0..m {
        for i in 0..m {
            if le[i][k] {
                for j in 0..m {
                    if le[k][j] {
                        le[i][j] = true;
                    }
                }
            }
        }
    }
    for i in 0..m {
        for j in 0..m {
            if i != j && le[i][j] && le[j][i] {
                return Err(Error::Config(format!(
                    "2-cells between {} and {} form a cycle",
                    g.edges[i].name, g.edges[j].name
                )));
            }
        }
    }

    let longest = g.vertices.len().saturating_sub(1);
    let paths = super::paths::path_catoid(g, longest)?;
    let mut globes = Vec::new();
    for p in crate::catoid::Catoid::universe(&paths) {
        let Path { start, edges } = p;
        let mut lowers: Vec<Vec<usize>> = vec![Vec::new()];
        for &e in edges {
            let next: Vec<Vec<usize>> = lowers
                .iter()
                .flat_map(|l| {
                    (0..m).filter(|&f| le[e][f]).map(move |f| {
                        let mut v = l.clone();
                        v.push(f);
                        v
                    })
                })
                .collect();
            lowers = next;
        }
        for lower in lowers {
            globes.push(Globe { start: *start, upper: edges.clone(), lower });
        }
    }
    globes.sort();
    Ok(GlobeCatoid { graph: g.clone(), globes })
}

impl GlobeCatoid {
    fn end(&self, x: &Globe) -> usize {
        x.upper.last().map_or(x.start, |&e| self.graph.edges[e].dst)
    }

    /// Looks a globe up by its label.
    pub fn globe(&self, label: &str) -> Globe {
        self.globes
            .iter()
            .find(|g| self.label(g) == label)
            .unwrap_or_else(|| panic!("no globe labelled {label}"))
            .clone()
    }

    fn names(&self, p: &[usize]) -> String {
        let v: Vec<&str> = p.iter().map(|&e| self.graph.edges[e].name.as_str()).collect();
        format!("[{}]", v.join(","))
    }
}

impl NCatoid for GlobeCatoid {
    type Elem = Globe;

    fn name(&self) -> String {
        "globes".into()
    }

    fn dims(&self) -> usize {
        2
    }

    fn universe(&self) -> &[Globe] {
        &self.globes
    }

    fn compose(&self, dim: usize, y: &Globe, z: &Globe) -> BTreeSet<Globe> {
        if dim == 0 {
            if self.end(y) != z.start {
                return BTreeSet::new();
            }
            let mut upper = y.upper.clone();
            upper.extend_from_slice(&z.upper);
            let mut lower = y.lower.clone();
            lower.extend_from_slice(&z.lower);
            BTreeSet::from([Globe { start: y.start, upper, lower }])
        } else if y.start == z.start && y.lower == z.upper {
            BTreeSet::from([Globe { start: y.start, upper: y.upper.clone(), lower: z.lower.clone() }])
        } else {
            BTreeSet::new()
        }
    }

    fn source(&self, dim: usize, x: &Globe) -> Globe {
        if dim == 0 {
            Globe { start: x.start, upper: Vec::new(), lower: Vec::new() }
        } else {
            Globe { start: x.start, upper: x.upper.clone(), lower: x.upper.clone() }
        }
    }

    fn target(&self, dim: usize, x: &Globe) -> Globe {
        if dim == 0 {
            Globe { start: self.end(x), upper: Vec::new(), lower: Vec::new() }
        } else {
            Globe { start: x.start, upper: x.lower.clone(), lower: x.lower.clone() }
        }
    }

    fn label(&self, x: &Globe) -> String {
        if x.upper.is_empty() {
            format!("({})", self.graph.vertices[x.start])
        } else if x.upper == x.lower {
            self.names(&x.upper)
        } else {
            format!("{}=>{}", self.names(&x.upper), self.names(&x.lower))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catoid::{check_moebius, Catoid};
    use crate::higher::check_2catoid;

    #[test]
    fn globe_example_shape() {
        let g = globe_2category(&GlobeSpec::example()).unwrap();
        assert_eq!(g.universe().len(), 16);
        let a = g.globe("[x]=>[x']");
        let b = g.globe("[x']=>[x'']");
        assert_eq!(g.compose(1, &a, &b), BTreeSet::from([g.globe("[x]=>[x'']")]));
        let y = g.globe("[y]");
        assert_eq!(g.compose(0, &a, &y), BTreeSet::from([g.globe("[x,y]=>[x',y]")]));
        assert_eq!(g.label(&g.source(0, &a)), "(a)");
        assert_eq!(g.label(&g.target(1, &a)), "[x']");
    }

    #[test]
    fn globes_form_a_moebius_2category() {
        let g = globe_2category(&GlobeSpec::example()).unwrap();
        let rep = check_2catoid(&g);
        assert!(rep.is_clean(), "{rep}");
        assert!(rep.to_text().contains("INFO\tfunctional.1"));
        let view = g.dim(1);
        assert_eq!(crate::catoid::length(&view, &g.globe("[x]=>[x'']")).unwrap(), 2);
    }

    #[test]
    fn shuffle_concat_is_a_2catoid() {
        let sc = shuffle_concat_2catoid(&['a', 'b'], 3);
        let rep = check_2catoid(&sc);
        assert!(rep.is_clean(), "{rep}");
        assert!(check_moebius(&sc.dim(1)).is_clean());
        assert_eq!(sc.dim(0).universe().iter().filter(|w| sc.dim(0).is_identity(w)).count(), 1);
    }

    #[test]
    fn cyclic_cells_rejected() {
        let mut s = GlobeSpec::example();
        s.cells.push(("x''".into(), "x".into()));
        assert!(globe_2category(&s).is_err());
        let mut s = GlobeSpec::example();
        s.cells.push(("x".into(), "y".into()));
        assert!(globe_2category(&s).is_err());
    }
}
