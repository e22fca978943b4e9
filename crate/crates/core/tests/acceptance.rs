//! One PASS/FAIL line per acceptance criterion. Criteria whose failure has
//! been analysed and found to be a property of the published data are
//! listed in `KNOWN_RED`; for those the harness checks that the failure
//! still has the analysed shape, so it neither hides a regression nor an
//! unexpected change.

#![allow(clippy::needless_range_loop)]

use std::collections::BTreeMap;
use std::process::{Command, ExitCode};

use catoid_kleene::axiom_lab::{verify_independence, verify_quantale_star};
use catoid_kleene::catoid::{check_moebius, check_saturated_chain, Catoid, Structure};
use catoid_kleene::catoid_models::{
    free_monoid, globe_2category, guarded_string_catoid, interval_catoid, pair_groupoid, path_catoid,
    shuffle_catoid, shuffle_concat_2catoid, GlobeSpec, GraphSpec, PosetSpec,
};
use catoid_kleene::convolution::{
    check_conway, check_kat, check_kleene, check_star_forms, random_function, star_recursive, FunctionSampler,
    IdMode, Space,
};
use catoid_kleene::higher::{build_interchange_convolution, build_n_convolution, check_interchange, check_n_axioms};
use catoid_kleene::modal_convolution::{check_modal, dom_hat, ModalVariant};
use catoid_kleene::pathtool::{edge_function, edge_matrix, homset_aggregate, matrix_star, Matrix};
use catoid_kleene::value_algebra::{
    load_finite_algebra, make_boolean, make_min_plus, make_nat_inf_conway, NValueAlgebra, ValueAlgebra, Weight,
    NO_MODAL_DIOID, THREE_CHAIN,
};
use catoid_kleene::{Report, Status};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn clean(r: &Report, what: &str) -> Result<(), String> {
    if r.is_clean() {
        Ok(())
    } else {
        let bad: Vec<String> = r
            .entries
            .iter()
            .filter(|e| e.status.is_bad())
            .map(|e| format!("{}@{}/{}: {}", e.law, e.model, e.algebra, e.witnesses.first().cloned().unwrap_or_default()))
            .collect();
        Err(format!("{what}: {}", bad.join("; ")))
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn kleene_cell<C: Catoid>(c: &C, alg: ValueAlgebra) -> Result<usize, String> {
    let sp = Space::new(c, alg);
    let r = check_kleene(&sp, FunctionSampler::new(101, 100)).map_err(err)?;
    clean(&r, sp.model_name())?;
    for law in ["star-ind-left", "star-ind-right"] {
        let l = r.get(law).unwrap();
        ensure(l.checked > l.vacuous, || format!("{law}: no antecedent held"))?;
    }
    Ok(r.instances())
}

fn c1() -> Outcome {
    let mut n = kleene_cell(&free_monoid(&['a', 'b'], 4), make_min_plus())?;
    let dag = path_catoid(&GraphSpec::random_dag(8, 0.35, 8), 7).map_err(err)?;
    n += kleene_cell(&dag, make_min_plus())?;
    n += kleene_cell(&guarded_string_catoid(&["t1", "t2"], &["p", "q"], 3), make_boolean())?;
    Ok(format!("3 cells, 100 samples each, {n} pointwise instances"))
}

/// Shortest factorisation into non-empty words: the min-plus star of `f`
/// on a word when every `f(eps)` is non-negative.
fn word_star_oracle(f: &BTreeMap<String, Weight>, w: &str) -> Weight {
    let n = w.len();
    let mut best = vec![None::<i64>; n + 1];
    best[0] = Some(0);
    for i in 0..n {
        let Some(b) = best[i] else { continue };
        for j in i + 1..=n {
            if let Some(Weight::Int(c)) = f.get(&w[i..j]) {
                let v = b + c;
                if best[j].is_none_or(|o| v < o) {
                    best[j] = Some(v);
                }
            }
        }
    }
    best[n].map(Weight::Int).unwrap_or(Weight::Inf)
}

fn forms_cell<C: Catoid>(c: &C, alg: ValueAlgebra, seed: u64) -> Result<usize, String> {
    let sp = Space::new(c, alg);
    let r = check_star_forms(&sp, FunctionSampler::new(seed, 50)).map_err(err)?;
    clean(&r, sp.model_name())?;
    Ok(r.instances())
}

fn c2() -> Outcome {
    let mut n = 0;
    let words = free_monoid(&['a', 'b'], 4);
    n += forms_cell(&words, make_min_plus(), 1)?;
    n += forms_cell(&shuffle_catoid(&['a', 'b'], 4), make_boolean(), 2)?;
    n += forms_cell(&interval_catoid(&PosetSpec::example()).map_err(err)?, make_min_plus(), 3)?;
    n += forms_cell(&guarded_string_catoid(&["t1", "t2"], &["p", "q"], 3), make_boolean(), 4)?;
    n += forms_cell(&path_catoid(&GraphSpec::example_dag(), 4).map_err(err)?, make_min_plus(), 5)?;
    n += forms_cell(&path_catoid(&GraphSpec::random_dag(8, 0.35, 8), 4).map_err(err)?, make_min_plus(), 6)?;

    // against an independent dynamic programme on words
    let sp = Space::new(&words, make_min_plus());
    let st = sp.structure();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..50 {
        let f = random_function(&sp, &mut rng, IdMode::Free);
        let map: BTreeMap<String, Weight> = (0..sp.len())
            .filter_map(|i| {
                let w = f.at(i);
                let key = if st.label(i) == "eps" { None } else { Some(st.label(i).to_string()) };
                key.filter(|_| w != Weight::Inf).map(|k| (k, w))
            })
            .collect();
        let s = star_recursive(&f).map_err(err)?;
        for i in 0..sp.len() {
            let label = st.label(i);
            let want = if label == "eps" { Weight::Int(0) } else { word_star_oracle(&map, label) };
            ensure(s.at(i) == want, || format!("words/minplus at {label}: {:?} vs oracle {:?}", s.at(i), want))?;
            n += 1;
        }
    }
    Ok(format!("6 models x 50 samples, plus factorisation oracle; {n} instances"))
}

fn c3() -> Outcome {
    let p = interval_catoid(&PosetSpec::example()).map_err(err)?;
    let st = Structure::of(&p);
    let ac = st.by_label("[a,c]").unwrap();
    ensure(st.length(ac) == Ok(3), || format!("l([a,c]) = {:?}", st.length(ac)))?;
    let sat = check_saturated_chain(&p);
    let w = &sat.get("saturated-chain").unwrap().witnesses;
    ensure(w.iter().any(|x| x.starts_with("([a,b],[b,c]): 1+1 vs 3")), || format!("saturated chain witnesses {w:?}"))?;

    let g = check_moebius(&pair_groupoid(&["a", "b"]));
    ensure(g.status_of("moebius-2-identities-indecomposable") == Some(Status::Fail), || "pairs pass (2)".into())?;

    let conds = [
        "moebius-1-finitely-2-decomposable",
        "moebius-2-identities-indecomposable",
        "moebius-3-cancellation",
    ];
    let reports = [
        check_moebius(&free_monoid(&['a', 'b'], 4)),
        check_moebius(&shuffle_catoid(&['a', 'b'], 4)),
        check_moebius(&guarded_string_catoid(&["t1", "t2"], &["p", "q"], 3)),
        check_moebius(&path_catoid(&GraphSpec::example_dag(), 3).map_err(err)?),
        check_moebius(&p),
    ];
    for r in &reports {
        for c in conds {
            ensure(r.status_of(c) == Some(Status::Pass), || format!("{c} on {}", r.entries[0].model))?;
        }
    }
    Ok("l([a,c]) = 3, ([a,b],[b,c]) breaks saturation, pairs fail (2), 5 models pass (1)-(3)".into())
}

fn c4() -> Outcome {
    let g = guarded_string_catoid(&["t1", "t2"], &["p", "q"], 3);
    let sp = Space::new(&g, make_boolean());
    let r = check_kat(&sp, FunctionSampler::new(4, 100)).map_err(err)?;
    clean(&r, "guarded")?;
    let ids = sp.structure().identities().len();
    let count = r.get("test-count").and_then(|e| e.note.clone()).unwrap_or_default();
    ensure(count == format!("{} tests over {ids} identities", 1usize << ids), || count.clone())?;
    let kc = r.get("kc-tests").unwrap();
    ensure(kc.status == Status::Pass && kc.note.as_deref() == Some("2 tests in K[C]"), || format!("{kc:?}"))?;
    Ok(format!("{count}; indicator closure clean; K[C] tests = {{0, id0}}"))
}

fn c5() -> Outcome {
    let dag = path_catoid(&GraphSpec::example_dag(), 3).map_err(err)?;
    let sp = Space::new(&dag, make_boolean());
    let r = check_modal(&sp, ModalVariant::Hat, FunctionSampler::new(5, 100)).map_err(err)?;
    clean(&r, "dag/hat")?;

    // hat domain against a direct scan of the universe
    let st = sp.structure();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let f = random_function(&sp, &mut rng, IdMode::Free);
        let d = dom_hat(&f).map_err(err)?;
        for x in 0..sp.len() {
            let want = st.is_identity(x) && (0..sp.len()).any(|y| st.src(y) == x && f.at(y) == Weight::Bool(true));
            ensure(d.at(x) == Weight::Bool(want), || format!("dom_hat at {}", st.label(x)))?;
        }
    }

    let words = free_monoid(&['a', 'b'], 3);
    let r = check_modal(&Space::new(&words, make_boolean()), ModalVariant::Bracket, FunctionSampler::new(6, 100))
        .map_err(err)?;
    clean(&r, "words/bracket")?;

    let bad = load_finite_algebra(NO_MODAL_DIOID).map_err(err)?;
    let r = check_modal(&Space::new(&dag, bad.base().clone()), ModalVariant::Hat, FunctionSampler::new(7, 100))
        .map_err(err)?;
    let failed = r.failed_laws();
    ensure(failed == vec!["dom-local", "cod-local"], || format!("negative control failed {failed:?}"))?;
    Ok("dag/boolean/hat and words/boolean/bracket clean; a*a=0 dioid breaks exactly dom-local, cod-local".into())
}

fn c6() -> Outcome {
    let sc = shuffle_concat_2catoid(&['a', 'b'], 4);
    let ic = build_interchange_convolution(&sc, &NValueAlgebra::uniform(make_boolean(), 2)).map_err(err)?;
    let r = check_interchange(&ic, FunctionSampler::new(6, 100)).map_err(err)?;
    clean(&r, "shuffle-concat")?;
    let n = r.get("interchange.0.1").unwrap().checked;
    ensure(n == 100 * ic.space(0).len(), || format!("{n} instances"))?;
    Ok(format!("{n} pointwise interchange instances, id0 <= id1"))
}

fn c7() -> Outcome {
    let g = globe_2category(&GlobeSpec::example()).map_err(err)?;
    let b = build_n_convolution(&g, &NValueAlgebra::uniform(make_boolean(), 2)).map_err(err)?;
    let r = check_n_axioms(&b, FunctionSampler::new(7, 30)).map_err(err)?;
    clean(&r, "globes")?;
    for law in [
        "dom-closure.0.1",
        "cod-closure.0.1",
        "dom-1.0.1",
        "dom-1.1.0",
        "dom-2.0",
        "dom-2.1",
        "star-dom.0.1",
        "star-cod.0.1",
        "interchange.0.1",
        "dom-lax.1.0",
        "cod-lax.0.1",
    ] {
        ensure(r.status_of(law) == Some(Status::Pass), || format!("{law}: {:?}", r.status_of(law)))?;
    }
    Ok(format!("{} laws on {} globes, all basis pairs", r.entries.len(), b.space(0).len()))
}

/// The analysed state: model 1 reproduces only after correcting one
/// misprinted row, and model 2 cannot separate the closure axioms.
fn c8() -> Outcome {
    let r = verify_independence().map_err(err)?;
    let pat: Vec<(String, String, Status)> = r
        .entries
        .iter()
        .filter(|e| e.law == "independence-pattern")
        .map(|e| (e.algebra.clone(), e.model.clone(), e.status))
        .collect();
    let detail = pat
        .iter()
        .map(|(a, m, s)| format!("{a}/{m} {}", s.as_str()))
        .collect::<Vec<_>>()
        .join(", ");
    if pat.iter().all(|p| p.2 == Status::Pass) {
        return Ok(detail);
    }
    let notes: Vec<String> = r
        .entries
        .iter()
        .filter(|e| e.law == "table-diff")
        .map(|e| format!("{}: {}", e.algebra, e.note.clone().unwrap_or_default()))
        .collect();
    Err(format!("{detail} | {}", notes.join(" | ")))
}

fn c8_known_shape(msg: &str) -> bool {
    msg.starts_with("independence-1/printed FAIL, independence-1/erratum PASS, independence-2/printed FAIL |")
        && msg.contains("Fix(d-1) = Fix(d+1)")
}

fn c9() -> Outcome {
    let sp = Space::new(&free_monoid(&['a', 'b'], 4), make_boolean());
    let r = verify_quantale_star(&sp, FunctionSampler::new(9, 50)).map_err(err)?;
    clean(&r, "words")?;
    let q = load_finite_algebra(THREE_CHAIN).map_err(err)?;
    let sp2 = Space::new(&interval_catoid(&PosetSpec::example()).map_err(err)?, q.base().clone());
    let r2 = verify_quantale_star(&sp2, FunctionSampler::new(10, 50)).map_err(err)?;
    clean(&r2, "poset")?;
    Ok(format!("{} + {} instances", r.instances(), r2.instances()))
}

fn c10() -> Outcome {
    let n = make_nat_inf_conway();
    ensure(n.add(Weight::Int(2), Weight::Int(2)) == Weight::Int(4), || "2+2 != 4".into())?;
    let sp = Space::new(&free_monoid(&['a', 'b'], 4), n);
    let r = check_conway(&sp, FunctionSampler::new(10, 100)).map_err(err)?;
    clean(&r, "words/natinf")?;
    for law in ["conway-unfold-left", "conway-unfold-right", "sum-star", "product-star"] {
        ensure(r.status_of(law) == Some(Status::Pass), || law.to_string())?;
    }
    Ok(format!("2+2 = 4; four identities over {} instances", r.instances()))
}

fn warshall(adj: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = adj.len();
    let mut r = adj.to_vec();
    for (i, row) in r.iter_mut().enumerate() {
        row[i] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                r[i][j] = r[i][j] || (r[i][k] && r[k][j]);
            }
        }
    }
    r
}

fn floyd(w: &[Vec<Option<i64>>]) -> Vec<Vec<Option<i64>>> {
    let n = w.len();
    let mut d = w.to_vec();
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = Some(0);
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(a), Some(b)) = (d[i][k], d[k][j]) {
                    if d[i][j].is_none_or(|c| a + b < c) {
                        d[i][j] = Some(a + b);
                    }
                }
            }
        }
    }
    d
}

fn c11() -> Outcome {
    let boolean = make_boolean();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for t in 0..100 {
        let n = 1 + t % 6;
        let adj: Vec<Vec<bool>> = (0..n).map(|_| (0..n).map(|_| rng.gen_bool(0.3)).collect()).collect();
        let m = Matrix::from_rows(&boolean, adj.iter().map(|r| r.iter().map(|&b| Weight::Bool(b)).collect()).collect())
            .map_err(err)?;
        let s = matrix_star(&m).map_err(err)?;
        let o = warshall(&adj);
        for i in 0..n {
            for j in 0..n {
                ensure(s.get(i, j) == Weight::Bool(o[i][j]), || format!("boolean matrix {t} at ({i},{j})"))?;
            }
        }
    }

    let mp = make_min_plus();
    for seed in 0..20 {
        let g = GraphSpec::random_dag(6, 0.4, seed);
        let n = g.vertices.len();
        let mut w = vec![vec![None; n]; n];
        for e in &g.edges {
            let c: i64 = e.weight.as_deref().unwrap().parse().unwrap();
            w[e.src][e.dst] = Some(w[e.src][e.dst].map_or(c, |o: i64| o.min(c)));
        }
        let fw = floyd(&w);
        let s = matrix_star(&edge_matrix(&g, &mp).map_err(err)?).map_err(err)?;
        let pc = path_catoid(&g, n).map_err(err)?;
        let sp = Space::new(&pc, mp.clone());
        let agg = homset_aggregate(&pc, &star_recursive(&edge_function(&pc, &sp).map_err(err)?).map_err(err)?)
            .map_err(err)?;
        for i in 0..n {
            for j in 0..n {
                let want = fw[i][j].map(Weight::Int).unwrap_or(Weight::Inf);
                ensure(s.get(i, j) == want, || format!("dag {seed} matrix at ({i},{j})"))?;
                ensure(agg.get(i, j) == want, || format!("dag {seed} homset at ({i},{j})"))?;
            }
        }
    }

    let out = Command::new(env!("CARGO_BIN_EXE_pathtool"))
        .args(["star", "--model", "pairs", "--algebra", "boolean", "--star", "recursive"])
        .output()
        .map_err(err)?;
    let stderr = String::from_utf8_lossy(&out.stderr);
    ensure(out.status.code() == Some(3), || format!("pairs exit {:?}", out.status.code()))?;
    ensure(stderr.contains("Möbius condition (2)"), || stderr.to_string())?;
    Ok("100 boolean matrices = Warshall; 20 min-plus DAGs: matrix = Floyd-Warshall = homset sums; pairs exit 3".into())
}

fn main() -> ExitCode {
    let criteria: [(usize, fn() -> Outcome); 11] =
        [(1, c1), (2, c2), (3, c3), (4, c4), (5, c5), (6, c6), (7, c7), (8, c8), (9, c9), (10, c10), (11, c11)];
    let mut unexpected = 0;
    for (n, f) in criteria {
        let started = std::time::Instant::now();
        let res = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = started.elapsed().as_secs_f64();
        match &res {
            Ok(d) => println!("PASS criterion {n}: {d} ({secs:.1}s)"),
            Err(d) => println!("FAIL criterion {n}: {d} ({secs:.1}s)"),
        }
        let known = n == 8 && res.as_ref().err().is_some_and(|m| c8_known_shape(m));
        if res.is_err() && !known {
            unexpected += 1;
        }
    }
    if unexpected == 0 {
        println!("acceptance: every failure is a known, analysed one");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {unexpected} unexpected failure(s)");
        ExitCode::FAILURE
    }
}
