//! Weighted path problems and batch law checks from the command line.
//!
//! `pathtool star` loads a model and a weight file, computes a star of the
//! weight function and prints `element<TAB>weight` rows. For graphs it can
//! also run the Conway matrix star on the edge-weight matrix and compare it
//! with the sum of path stars over each pair of vertices. `pathtool check`
//! runs a verification campaign and prints the report.
//!
//! Exit codes: 0 success, 1 oracle disagreement or failed laws, 2 bad input,
//! 3 a capability or Möbius error.

mod matrix;
mod parse;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

pub use matrix::{matrix_star, Matrix};
pub use parse::{parse_graph, parse_poset, parse_weights};

use crate::axiom_lab::{run_campaign, CampaignConfig, Suite};
use crate::catoid::Catoid;
use crate::catoid_models::{
    free_monoid, guarded_string_catoid, interval_catoid, pair_groupoid, path_catoid, shuffle_catoid, GraphSpec,
    PathCatoid, PosetSpec,
};
use crate::convolution::{is_in_bracket, star_form, Space, SpaceExt, StarForm, WeightFunction};
use crate::error::{Error, Result};
use crate::value_algebra::{by_name, ValueAlgebra, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ModelKind {
    Words,
    Shuffle,
    Poset,
    Pairs,
    Graph,
    Guarded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum AlgebraKind {
    Boolean,
    Minplus,
    Maxplus,
    Natinf,
}

impl AlgebraKind {
    pub fn algebra(self) -> ValueAlgebra {
        let name = match self {
            AlgebraKind::Boolean => "boolean",
            AlgebraKind::Minplus => "minplus",
            AlgebraKind::Maxplus => "maxplus",
            AlgebraKind::Natinf => "natinf",
        };
        by_name(name).expect("stock algebra")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum StarMode {
    Recursive,
    Dual,
    Unfolded,
    Matrix,
}

#[derive(Debug, Clone, PartialEq, Eq, clap::Args)]
pub struct StarArgs {
    #[arg(long, value_enum)]
    pub model: ModelKind,
    #[arg(long, value_enum, default_value = "boolean")]
    pub algebra: AlgebraKind,
    /// Length bound for words, shuffles, guarded strings and graph paths.
    #[arg(long, default_value_t = 4)]
    pub max_length: usize,
    #[arg(long, value_enum, default_value = "recursive")]
    pub star: StarMode,
    /// Weights: a graph file for `--model graph`, `label weight` lines
    /// otherwise. Without it, graphs use the chain a→b→c with weights 2, 3
    /// and other models give every indecomposable element weight 1.
    #[arg(long)]
    pub weights: Option<PathBuf>,
    /// Cover relation for `--model poset` (default: a five-element example).
    #[arg(long)]
    pub poset: Option<PathBuf>,
    /// Compute every applicable star form and fail on disagreement.
    #[arg(long)]
    pub check_oracles: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, clap::Args)]
pub struct CheckArgs {
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(Suite::NAMES))]
    pub suite: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 50)]
    pub samples: usize,
}

/// Exit status for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::UnknownElement(_) | Error::Config(_) => 2,
        Error::Capability(_) | Error::Moebius(_) | Error::Domain(_) | Error::Mismatch(_) => 3,
    }
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))
}

/// Outcome of a star run: TSV rows and oracle disagreements.
struct StarOutput {
    rows: String,
    disagreements: Vec<String>,
}

/// `f` with weights from `w` (unlisted elements get 0). Without `w`,
/// elements with no proper decomposition get weight 1.
fn load_function<E: Send + Sync + 'static>(
    sp: &std::sync::Arc<Space<E>>,
    w: Option<&BTreeMap<String, Weight>>,
) -> Result<WeightFunction<E>> {
    let st = sp.structure();
    let alg = sp.algebra();
    let mut v = vec![alg.zero(); sp.len()];
    match w {
        Some(w) => {
            for (label, &x) in w {
                let i = st.by_label(label).ok_or_else(|| Error::UnknownElement(label.clone()))?;
                v[i] = x;
            }
        }
        None => {
            for (x, slot) in v.iter_mut().enumerate() {
                let atom = !st.is_identity(x)
                    && st.decomps(x).iter().all(|&(y, z)| st.is_identity(y) || st.is_identity(z));
                if atom {
                    *slot = alg.one();
                }
            }
        }
    }
    Ok(sp.from_values(v))
}

fn applicable_forms<E: Send + Sync + 'static>(f: &WeightFunction<E>) -> Result<Vec<StarForm>> {
    let alg = f.space().algebra();
    let mut forms = vec![StarForm::Recursive, StarForm::Dual];
    if alg.flags().idempotent_add || f.space().structure().is_functional() {
        forms.push(StarForm::Unfolded);
    }
    if alg.star(alg.one()) == alg.one() && is_in_bracket(f)? {
        forms.push(StarForm::Path);
    }
    Ok(forms)
}

fn element_star<E: Send + Sync + 'static>(
    f: &WeightFunction<E>,
    form: StarForm,
    check: bool,
) -> Result<(StarOutput, WeightFunction<E>)> {
    let sp = f.space();
    let (st, alg) = (sp.structure(), sp.algebra());
    let star = star_form(f, form)?;
    let vals = star.values()?;
    let mut rows = String::new();
    for (x, w) in vals.iter().enumerate() {
        let _ = writeln!(rows, "{}\t{}", st.label(x), alg.format(*w));
    }
    let mut disagreements = Vec::new();
    if check {
        for other in applicable_forms(f)? {
            if other == form {
                continue;
            }
            let o = star_form(f, other)?.values()?;
            for x in 0..vals.len() {
                if o[x] != vals[x] {
                    disagreements.push(format!(
                        "{} vs {} at {}: {} vs {}",
                        form.as_str(),
                        other.as_str(),
                        st.label(x),
                        alg.format(vals[x]),
                        alg.format(o[x])
                    ));
                }
            }
        }
    }
    Ok((StarOutput { rows, disagreements }, star))
}

fn generic_star<C: Catoid>(
    c: &C,
    alg: ValueAlgebra,
    args: &StarArgs,
    w: Option<&BTreeMap<String, Weight>>,
) -> Result<StarOutput> {
    let form = match args.star {
        StarMode::Recursive => StarForm::Recursive,
        StarMode::Dual => StarForm::Dual,
        StarMode::Unfolded => StarForm::Unfolded,
        StarMode::Matrix => return Err(Error::Config("--star matrix needs --model graph".into())),
    };
    let sp = Space::new(c, alg);
    let f = load_function(&sp, w)?;
    Ok(element_star(&f, form, args.check_oracles)?.0)
}

/// The edge-weight matrix: entry `(u, v)` sums the weights of all edges
/// `u → v`. Edges without a weight get 1.
pub fn edge_matrix(g: &GraphSpec, alg: &ValueAlgebra) -> Result<Matrix> {
    let n = g.vertices.len();
    let mut m = Matrix::zero(alg, n, n);
    for e in &g.edges {
        let w = match &e.weight {
            Some(t) => alg.parse(t)?,
            None => alg.one(),
        };
        m.set(e.src, e.dst, alg.add(m.get(e.src, e.dst), w));
    }
    Ok(m)
}

/// The function on paths: identities ↦ 1, edges ↦ their weight, longer
/// paths ↦ 0. This lies in `K[C]`.
pub fn edge_function(pc: &PathCatoid, sp: &std::sync::Arc<Space<crate::catoid_models::Path>>) -> Result<WeightFunction<crate::catoid_models::Path>> {
    let alg = sp.algebra();
    let mut v = vec![alg.zero(); sp.len()];
    for (i, p) in pc.universe().iter().enumerate() {
        v[i] = match p.edges.as_slice() {
            [] => alg.one(),
            [e] => match &pc.graph().edges[*e].weight {
                Some(t) => alg.parse(t)?,
                None => alg.one(),
            },
            _ => alg.zero(),
        };
    }
    Ok(sp.from_values(v))
}

/// `Σ_{x : u → v} f(x)` for each vertex pair. Needs an untruncated universe.
pub fn homset_aggregate(pc: &PathCatoid, f: &WeightFunction<crate::catoid_models::Path>) -> Result<Matrix> {
    if pc.is_truncated() {
        return Err(Error::Domain(format!(
            "homset sums need every path within the length bound {}, and the graph has longer paths",
            pc.max_len()
        )));
    }
    let alg = f.space().algebra();
    let n = pc.graph().vertices.len();
    let mut m = Matrix::zero(alg, n, n);
    for (i, p) in pc.universe().iter().enumerate() {
        let (u, v) = (p.start, pc.end(p));
        m.set(u, v, alg.add(m.get(u, v), f.try_at(i)?));
    }
    Ok(m)
}

fn matrix_rows(g: &GraphSpec, m: &Matrix) -> String {
    let mut rows = String::new();
    for u in 0..m.n() {
        for v in 0..m.n() {
            let _ = writeln!(rows, "{}\t{}\t{}", g.vertices[u], g.vertices[v], m.algebra().format(m.get(u, v)));
        }
    }
    rows
}

fn compare_matrices(g: &GraphSpec, a: &Matrix, b: &Matrix, what: &str, out: &mut Vec<String>) {
    for u in 0..a.n() {
        for v in 0..a.n() {
            if a.get(u, v) != b.get(u, v) {
                out.push(format!(
                    "matrix vs {what} at ({},{}): {} vs {}",
                    g.vertices[u],
                    g.vertices[v],
                    a.algebra().format(a.get(u, v)),
                    a.algebra().format(b.get(u, v))
                ));
            }
        }
    }
}

fn graph_star(alg: ValueAlgebra, args: &StarArgs) -> Result<StarOutput> {
    let g = match &args.weights {
        Some(p) => parse_graph(&read(p)?)?,
        None => GraphSpec::example_chain(),
    };
    let mat = matrix_star(&edge_matrix(&g, &alg)?)?;
    let needs_paths = args.star != StarMode::Matrix || args.check_oracles;
    if !needs_paths {
        return Ok(StarOutput { rows: matrix_rows(&g, &mat), disagreements: Vec::new() });
    }
    let pc = path_catoid(&g, args.max_length)?;
    let sp = Space::new(&pc, alg);
    let f = edge_function(&pc, &sp)?;
    let form = match args.star {
        StarMode::Dual => StarForm::Dual,
        StarMode::Unfolded => StarForm::Unfolded,
        _ => StarForm::Recursive,
    };
    let (mut res, star) = element_star(&f, form, args.check_oracles)?;
    if args.check_oracles {
        let agg = homset_aggregate(&pc, &star)?;
        compare_matrices(&g, &mat, &agg, "homset sum", &mut res.disagreements);
    }
    if args.star == StarMode::Matrix {
        res.rows = matrix_rows(&g, &mat);
    }
    Ok(res)
}

fn star_output(args: &StarArgs) -> Result<StarOutput> {
    let alg = args.algebra.algebra();
    let weights = match (&args.weights, args.model) {
        (Some(p), m) if m != ModelKind::Graph => Some(parse_weights(&read(p)?, &alg)?),
        _ => None,
    };
    let w = weights.as_ref();
    let n = args.max_length;
    match args.model {
        ModelKind::Graph => graph_star(alg, args),
        ModelKind::Words => generic_star(&free_monoid(&['a', 'b'], n), alg, args, w),
        ModelKind::Shuffle => generic_star(&shuffle_catoid(&['a', 'b'], n), alg, args, w),
        ModelKind::Guarded => generic_star(&guarded_string_catoid(&["t1", "t2"], &["p", "q"], n), alg, args, w),
        ModelKind::Pairs => generic_star(&pair_groupoid(&["a", "b"]), alg, args, w),
        ModelKind::Poset => {
            let spec = match &args.poset {
                Some(p) => parse_poset(&read(p)?)?,
                None => PosetSpec::example(),
            };
            generic_star(&interval_catoid(&spec)?, alg, args, w)
        }
    }
}

/// `pathtool star`. Rows go to `out` only when the computation succeeds.
pub fn cmd_star(args: &StarArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match star_output(args) {
        Ok(res) => {
            let _ = out.write_all(res.rows.as_bytes());
            if res.disagreements.is_empty() {
                0
            } else {
                for d in &res.disagreements {
                    let _ = writeln!(err, "oracle disagreement: {d}");
                }
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// `pathtool check`: exit 0 iff the report has no unexpected failure.
pub fn cmd_check(args: &CheckArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let run = || -> Result<crate::report::Report> {
        let suite: Suite = args.suite.parse()?;
        run_campaign(&CampaignConfig::for_suite(suite, args.seed, args.samples))
    };
    match run() {
        Ok(rep) => {
            let _ = out.write_all(rep.to_text().as_bytes());
            if rep.is_clean() {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(model: ModelKind, algebra: AlgebraKind, star: StarMode) -> StarArgs {
        StarArgs { model, algebra, max_length: 3, star, weights: None, poset: None, check_oracles: true }
    }

    fn run(a: &StarArgs) -> (i32, String, String) {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let code = cmd_star(a, &mut o, &mut e);
        (code, String::from_utf8(o).unwrap(), String::from_utf8(e).unwrap())
    }

    #[test]
    fn chain_shortest_path() {
        let (code, out, err) = run(&args(ModelKind::Graph, AlgebraKind::Minplus, StarMode::Recursive));
        assert_eq!(code, 0, "{err}");
        assert!(out.lines().any(|l| l == "[x,y]\t5"), "{out}");
        let (code, out, _) = run(&args(ModelKind::Graph, AlgebraKind::Minplus, StarMode::Matrix));
        assert_eq!(code, 0);
        assert!(out.lines().any(|l| l == "a\tc\t5"), "{out}");
    }

    #[test]
    fn pairs_are_not_moebius() {
        let (code, out, err) = run(&args(ModelKind::Pairs, AlgebraKind::Boolean, StarMode::Recursive));
        assert_eq!(code, 3);
        assert!(out.is_empty());
        assert!(err.contains("model fails Möbius condition (2): identity decomposable"), "{err}");
    }

    #[test]
    fn every_model_agrees_with_itself() {
        for m in [ModelKind::Words, ModelKind::Shuffle, ModelKind::Poset, ModelKind::Guarded] {
            for a in [AlgebraKind::Boolean, AlgebraKind::Minplus, AlgebraKind::Natinf] {
                let (code, out, err) = run(&args(m, a, StarMode::Recursive));
                assert_eq!(code, 0, "{m:?} {a:?}: {err}");
                assert!(!out.is_empty());
            }
        }
        let (code, _, _) = run(&args(ModelKind::Words, AlgebraKind::Boolean, StarMode::Matrix));
        assert_eq!(code, 2);
    }
}
