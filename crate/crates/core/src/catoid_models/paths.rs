use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catoid::Catoid;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSpec {
    pub name: String,
    pub src: usize,
    pub dst: usize,
    /// Weight token, interpreted by whichever algebra reads it.
    pub weight: Option<String>,
}

/// A finite directed multigraph with named edges.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GraphSpec {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeSpec>,
}

impl GraphSpec {
    pub fn new() -> Self {
        GraphSpec::default()
    }

    /// Index of `name`, declaring it if new.
    pub fn vertex(&mut self, name: &str) -> usize {
        match self.vertex_index(name) {
            Some(i) => i,
            None => {
                self.vertices.push(name.to_string());
                self.vertices.len() - 1
            }
        }
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn add_edge(&mut self, src: &str, dst: &str, name: &str, weight: Option<&str>) -> Result<()> {
        if self.edges.iter().any(|e| e.name == name) {
            return Err(Error::Config(format!("duplicate edge '{name}'")));
        }
        let (s, d) = (self.vertex(src), self.vertex(dst));
        self.edges.push(EdgeSpec {
            name: name.to_string(),
            src: s,
            dst: d,
            weight: weight.map(String::from),
        });
        Ok(())
    }

    pub fn edge_index(&self, name: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.name == name)
    }

    /// `x: a → b` with weight 2 and `y: b → c` with weight 3.
    pub fn example_chain() -> Self {
        let mut g = GraphSpec::new();
        g.add_edge("a", "b", "x", Some("2")).unwrap();
        g.add_edge("b", "c", "y", Some("3")).unwrap();
        g
    }

    /// The chain above plus a shortcut `z: a → c` with weight 7.
    pub fn example_dag() -> Self {
        let mut g = GraphSpec::example_chain();
        g.add_edge("a", "c", "z", Some("7")).unwrap();
        g
    }

    /// A seeded random DAG on `n` vertices `v0 … v(n-1)`. Each forward pair
    /// `i < j` gets an edge with probability `p`, weighted 1..=9.
    pub fn random_dag(n: usize, p: f64, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut g = GraphSpec::new();
        for i in 0..n {
            g.vertex(&format!("v{i}"));
        }
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(p) {
                    let w = rng.gen_range(1..=9).to_string();
                    g.add_edge(&format!("v{i}"), &format!("v{j}"), &format!("e{k}"), Some(&w))
                        .expect("fresh edge name");
                    k += 1;
                }
            }
        }
        g
    }

    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter(move |(_, e)| e.src == v)
            .map(|(i, _)| i)
    }

    pub fn is_acyclic(&self) -> bool {
        // Kahn's algorithm
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for e in &self.edges {
            indeg[e.dst] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for e in self.out_edges(v).collect::<Vec<_>>() {
                let d = self.edges[e].dst;
                indeg[d] -= 1;
                if indeg[d] == 0 {
                    stack.push(d);
                }
            }
        }
        seen == n
    }
}

/// A path: a start vertex and a (possibly empty) list of edge indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub start: usize,
    pub edges: Vec<usize>,
}

/// The free category of a finite graph, cut off at `max_len` edges.
#[derive(Debug, Clone)]
pub struct PathCatoid {
    graph: GraphSpec,
    max_len: usize,
    paths: Vec<Path>,
    truncated: bool,
}

/// Paths of at most `max_len` edges. Constant paths are the identities.
pub fn path_catoid(g: &GraphSpec, max_len: usize) -> Result<PathCatoid> {
    let mut paths: Vec<Path> = (0..g.vertices.len())
        .map(|v| Path { start: v, edges: Vec::new() })
        .collect();
    let mut layer = paths.clone();
    let mut truncated = false;
    for step in 0..=max_len {
        let mut next = Vec::new();
        for p in &layer {
            let end = end_of(g, p);
            for e in g.out_edges(end) {
                let mut q = p.clone();
                q.edges.push(e);
                next.push(q);
            }
        }
        if step == max_len {
            truncated = !next.is_empty();
            break;
        }
        paths.extend(next.iter().cloned());
        layer = next;
    }
    paths.sort();
    Ok(PathCatoid {
        graph: g.clone(),
        max_len,
        paths,
        truncated,
    })
}

fn end_of(g: &GraphSpec, p: &Path) -> usize {
    p.edges.last().map_or(p.start, |&e| g.edges[e].dst)
}

impl PathCatoid {
    pub fn graph(&self) -> &GraphSpec {
        &self.graph
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn end(&self, p: &Path) -> usize {
        end_of(&self.graph, p)
    }

    /// The constant path at a vertex.
    pub fn constant(&self, v: &str) -> Path {
        Path {
            start: self.graph.vertex_index(v).expect("known vertex"),
            edges: Vec::new(),
        }
    }

    /// The path along the named edges. Panics when they do not chain.
    pub fn path(&self, edges: &[&str]) -> Path {
        let idx: Vec<usize> = edges
            .iter()
            .map(|e| self.graph.edge_index(e).expect("known edge"))
            .collect();
        let start = self.graph.edges[idx[0]].src;
        for w in idx.windows(2) {
            assert_eq!(self.graph.edges[w[0]].dst, self.graph.edges[w[1]].src, "edges do not chain");
        }
        Path { start, edges: idx }
    }
}

impl Catoid for PathCatoid {
    type Elem = Path;

    fn name(&self) -> String {
        "graph".into()
    }

    fn universe(&self) -> &[Path] {
        &self.paths
    }

    fn compose(&self, y: &Path, z: &Path) -> BTreeSet<Path> {
        if self.end(y) != z.start || y.edges.len() + z.edges.len() > self.max_len {
            return BTreeSet::new();
        }
        let mut edges = y.edges.clone();
        edges.extend_from_slice(&z.edges);
        BTreeSet::from([Path { start: y.start, edges }])
    }

    fn source(&self, x: &Path) -> Path {
        Path { start: x.start, edges: Vec::new() }
    }

    fn target(&self, x: &Path) -> Path {
        Path { start: self.end(x), edges: Vec::new() }
    }

    fn decompose2(&self, x: &Path) -> Vec<(Path, Path)> {
        let mut v = x.start;
        let mut out = Vec::with_capacity(x.edges.len() + 1);
        for i in 0..=x.edges.len() {
            out.push((
                Path { start: x.start, edges: x.edges[..i].to_vec() },
                Path { start: v, edges: x.edges[i..].to_vec() },
            ));
            if i < x.edges.len() {
                v = self.graph.edges[x.edges[i]].dst;
            }
        }
        out
    }

    fn escapes(&self, y: &Path, z: &Path) -> bool {
        self.end(y) == z.start && y.edges.len() + z.edges.len() > self.max_len
    }

    fn is_truncated(&self) -> bool {
        self.truncated
    }

    fn label(&self, x: &Path) -> String {
        if x.edges.is_empty() {
            format!("({})", self.graph.vertices[x.start])
        } else {
            let names: Vec<&str> = x.edges.iter().map(|&e| self.graph.edges[e].name.as_str()).collect();
            format!("[{}]", names.join(","))
        }
    }

    fn enumerate(&self, bound: usize) -> Vec<Path> {
        self.paths.iter().filter(|p| p.edges.len() <= bound).cloned().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catoid::{decompose2_by_inversion, length};

    #[test]
    fn two_edge_path() {
        let g = path_catoid(&GraphSpec::example_chain(), 4).unwrap();
        let x = g.path(&["x"]);
        let y = g.path(&["y"]);
        let xy = g.path(&["x", "y"]);
        assert_eq!(g.compose(&x, &y), BTreeSet::from([xy.clone()]));
        assert_eq!(g.label(&g.source(&xy)), "(a)");
        assert_eq!(g.label(&xy), "[x,y]");
        assert_eq!(length(&g, &xy).unwrap(), 2);
        assert!(!g.is_truncated());
        assert_eq!(g.universe().len(), 6);
    }

    #[test]
    fn closed_form_matches_inversion() {
        let g = path_catoid(&GraphSpec::random_dag(6, 0.5, 11), 5).unwrap();
        for x in g.universe() {
            assert_eq!(g.decompose2(x), decompose2_by_inversion(&g, x));
        }
    }

    #[test]
    fn loops_truncate() {
        let mut gs = GraphSpec::new();
        gs.add_edge("a", "a", "l", None).unwrap();
        assert!(!gs.is_acyclic());
        let g = path_catoid(&gs, 3).unwrap();
        assert!(g.is_truncated());
        assert_eq!(g.universe().len(), 4);
        assert!(GraphSpec::random_dag(8, 0.4, 1).is_acyclic());
    }

    #[test]
    fn duplicate_edges_rejected() {
        let mut g = GraphSpec::example_chain();
        assert!(g.add_edge("a", "c", "x", None).is_err());
    }
}
