use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::{verify_independence, verify_quantale_star};
use crate::catoid::{check_catoid_axioms, check_moebius, check_saturated_chain};
use crate::catoid_models::{
    free_monoid, globe_2category, guarded_string_catoid, interval_catoid, pair_groupoid, path_catoid,
    shuffle_catoid, shuffle_concat_2catoid, GlobeSpec, GraphSpec, PosetSpec,
};
use crate::convolution::{
    check_conway, check_kat, check_kleene, check_semiring, check_star_forms, FunctionSampler, IdMode, Space,
};
use crate::error::{Error, Result};
use crate::higher::{build_interchange_convolution, build_n_convolution, check_interchange, check_n_axioms};
use crate::modal_convolution::{check_modal, ModalVariant};
use crate::report::{LawResult, Report};
use crate::value_algebra::{
    by_name, check_value_axioms, load_finite_algebra, AxiomClass, NValueAlgebra, Sampler, ValueAlgebra,
    NO_MODAL_DIOID, THREE_CHAIN,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Catoid,
    Kleene,
    Kat,
    Modal,
    Interchange,
    Nka,
    Conway,
    Independence,
    Quantale,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 10] =
        ["catoid", "kleene", "kat", "modal", "interchange", "nka", "conway", "independence", "quantale", "all"];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Catoid => "catoid",
            Suite::Kleene => "kleene",
            Suite::Kat => "kat",
            Suite::Modal => "modal",
            Suite::Interchange => "interchange",
            Suite::Nka => "nka",
            Suite::Conway => "conway",
            Suite::Independence => "independence",
            Suite::Quantale => "quantale",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "catoid" => Suite::Catoid,
            "kleene" => Suite::Kleene,
            "kat" => Suite::Kat,
            "modal" => Suite::Modal,
            "interchange" => Suite::Interchange,
            "nka" => Suite::Nka,
            "conway" => Suite::Conway,
            "independence" => Suite::Independence,
            "quantale" => Suite::Quantale,
            "all" => Suite::All,
            other => return Err(Error::Config(format!("unknown suite '{other}'"))),
        })
    }
}

/// One (suite, model, algebra) cell of a campaign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellSpec {
    pub suite: Suite,
    pub model: String,
    pub algebra: String,
    /// Length bound for truncated models.
    pub bound: usize,
    pub variant: ModalVariant,
    /// Laws this cell is a negative control for. A cell that cannot be set
    /// up at all reports the law `cell-error`.
    pub expect: Vec<String>,
}

impl CellSpec {
    pub fn new(suite: Suite, model: &str, algebra: &str, bound: usize) -> Self {
        CellSpec {
            suite,
            model: model.to_string(),
            algebra: algebra.to_string(),
            bound,
            variant: ModalVariant::Hat,
            expect: Vec::new(),
        }
    }

    pub fn with_variant(mut self, v: ModalVariant) -> Self {
        self.variant = v;
        self
    }

    pub fn expecting(mut self, laws: &[&str]) -> Self {
        self.expect = laws.iter().map(|s| s.to_string()).collect();
        self
    }

    /// Sort key for merging results.
    pub fn key(&self) -> String {
        let v = if self.suite == Suite::Modal { format!("/{}", self.variant.as_str()) } else { String::new() };
        format!("{}/{}/{}{v}/{}", self.suite, self.model, self.algebra, self.bound)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CampaignConfig {
    pub seed: u64,
    pub samples: usize,
    pub cells: Vec<CellSpec>,
}

impl CampaignConfig {
    /// The stock cells for `suite` (every suite for [`Suite::All`]),
    /// including its negative controls.
    pub fn for_suite(suite: Suite, seed: u64, samples: usize) -> Self {
        use Suite::*;
        let cells = match suite {
            All => [Catoid, Kleene, Kat, Modal, Interchange, Nka, Conway, Independence, Quantale]
                .into_iter()
                .flat_map(|s| CampaignConfig::for_suite(s, seed, samples).cells)
                .collect(),
            Catoid => {
                let mut v: Vec<CellSpec> = [
                    ("words", 4),
                    ("shuffle", 3),
                    ("guarded", 2),
                    ("graph", 3),
                    ("dag8", 7),
                ]
                .into_iter()
                .map(|(m, b)| CellSpec::new(Catoid, m, "-", b))
                .collect();
                v.push(CellSpec::new(Catoid, "poset", "-", 0).expecting(&["saturated-chain"]));
                v.push(CellSpec::new(Catoid, "pairs", "-", 0).expecting(&[
                    "moebius-2-identities-indecomposable",
                    "finite-length",
                    "saturated-chain",
                ]));
                v
            }
            Kleene => vec![
                CellSpec::new(Kleene, "words", "minplus", 4),
                CellSpec::new(Kleene, "words", "boolean", 4),
                CellSpec::new(Kleene, "dag8", "minplus", 7),
                CellSpec::new(Kleene, "guarded", "boolean", 3),
                CellSpec::new(Kleene, "poset", "maxplus", 0),
                CellSpec::new(Kleene, "pairs", "boolean", 0).expecting(&["cell-error"]),
            ],
            Kat => vec![CellSpec::new(Kat, "guarded", "boolean", 3)],
            Modal => vec![
                CellSpec::new(Modal, "graph", "boolean", 3),
                CellSpec::new(Modal, "graph", "minplus", 3),
                CellSpec::new(Modal, "words", "boolean", 3).with_variant(ModalVariant::Bracket),
                CellSpec::new(Modal, "graph", "no-modal", 3).expecting(&["dom-local", "cod-local"]),
            ],
            Interchange => vec![CellSpec::new(Interchange, "shuffle-concat", "boolean", 4)],
            Nka => vec![CellSpec::new(Nka, "globes", "boolean", 0), CellSpec::new(Nka, "globes", "minplus", 0)],
            Conway => vec![CellSpec::new(Conway, "words", "natinf", 4)],
            Independence => vec![CellSpec::new(Independence, "-", "-", 0)],
            Quantale => vec![
                CellSpec::new(Quantale, "words", "boolean", 4),
                CellSpec::new(Quantale, "poset", "three-chain", 0),
            ],
        };
        CampaignConfig { seed, samples, cells }
    }
}

fn algebra(name: &str) -> Result<ValueAlgebra> {
    match name {
        "three-chain" => Ok(load_finite_algebra(THREE_CHAIN)?.base().clone()),
        "no-modal" => Ok(load_finite_algebra(NO_MODAL_DIOID)?.base().clone()),
        other => by_name(other),
    }
}

/// FNV-1a, so that each cell's seed depends only on its key.
fn cell_seed(seed: u64, key: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325 ^ seed;
    for b in key.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

macro_rules! on_catoid {
    ($cell:expr, $seed:expr, |$c:ident| $body:expr) => {{
        let cell: &CellSpec = $cell;
        let b = cell.bound;
        match cell.model.as_str() {
            "words" => {
                let $c = free_monoid(&['a', 'b'], b);
                $body
            }
            "shuffle" => {
                let $c = shuffle_catoid(&['a', 'b'], b);
                $body
            }
            "poset" => {
                let $c = interval_catoid(&PosetSpec::example())?;
                $body
            }
            "pairs" => {
                let $c = pair_groupoid(&["a", "b"]);
                $body
            }
            "graph" => {
                let $c = path_catoid(&GraphSpec::example_dag(), b)?;
                $body
            }
            "dag8" => {
                let $c = path_catoid(&GraphSpec::random_dag(8, 0.35, $seed), b)?;
                $body
            }
            "guarded" => {
                let $c = guarded_string_catoid(&["t1", "t2"], &["p", "q"], b);
                $body
            }
            other => Err(Error::Config(format!("unknown model '{other}'"))),
        }
    }};
}

fn run_cell(cell: &CellSpec, seed: u64, samples: usize) -> Result<Report> {
    let s = FunctionSampler::new(cell_seed(seed, &cell.key()), samples);
    match cell.suite {
        Suite::All => Err(Error::Config("'all' is not a cell suite".into())),
        Suite::Independence => verify_independence(),
        Suite::Catoid => on_catoid!(cell, seed, |c| {
            let mut r = check_catoid_axioms(&c);
            r.extend(check_moebius(&c));
            r.extend(check_saturated_chain(&c));
            Ok(r)
        }),
        Suite::Interchange | Suite::Nka => {
            let k = NValueAlgebra::uniform(algebra(&cell.algebra)?, 2);
            match (cell.suite, cell.model.as_str()) {
                (Suite::Interchange, "shuffle-concat") => {
                    let sc = shuffle_concat_2catoid(&['a', 'b'], cell.bound);
                    let mut r = check_value_axioms(&k, AxiomClass::Interchange, Sampler::Exhaustive)?;
                    r.extend(check_interchange(&build_interchange_convolution(&sc, &k)?, s)?);
                    Ok(r)
                }
                (Suite::Nka, "globes") => {
                    let g = globe_2category(&GlobeSpec::example())?;
                    let mut r = check_value_axioms(&k, AxiomClass::NKleene, Sampler::Exhaustive)?;
                    r.extend(check_n_axioms(&build_n_convolution(&g, &k)?, s)?);
                    Ok(r)
                }
                (_, other) => Err(Error::Config(format!("unknown 2-catoid '{other}'"))),
            }
        }
        suite => {
            let alg = algebra(&cell.algebra)?;
            on_catoid!(cell, seed, |c| {
                let sp = Space::new(&c, alg);
                match suite {
                    Suite::Kleene => {
                        let mut r = check_semiring(&sp, s)?;
                        r.extend(check_kleene(&sp, s)?);
                        r.extend(check_star_forms(&sp, s)?);
                        let mut p = check_star_forms(&sp, s.with_mode(IdMode::One))?;
                        p.entries.retain(|e| e.law == "star-path-agrees");
                        r.extend(p);
                        Ok(r)
                    }
                    Suite::Kat => check_kat(&sp, s),
                    Suite::Modal => check_modal(&sp, cell.variant, s),
                    Suite::Conway => {
                        let mut r = check_semiring(&sp, s)?;
                        r.extend(check_conway(&sp, s)?);
                        Ok(r)
                    }
                    Suite::Quantale => verify_quantale_star(&sp, s),
                    _ => unreachable!("handled above"),
                }
            })
        }
    }
}

/// Runs every cell (in parallel) and merges the reports in key order.
///
/// Unknown model or algebra names fail the whole campaign before anything
/// runs. A cell whose construction fails for mathematical reasons (say a
/// star on a non-Möbius model) reports a `cell-error` law instead.
pub fn run_campaign(config: &CampaignConfig) -> Result<Report> {
    for c in &config.cells {
        if !matches!(c.algebra.as_str(), "-") {
            algebra(&c.algebra)?;
        }
        let known = [
            "-", "words", "shuffle", "poset", "pairs", "graph", "dag8", "guarded", "shuffle-concat", "globes",
        ];
        if !known.contains(&c.model.as_str()) {
            return Err(Error::Config(format!("unknown model '{}'", c.model)));
        }
    }
    let mut results: Vec<(String, Report)> = config
        .cells
        .par_iter()
        .map(|cell| {
            let mut rep = match run_cell(cell, config.seed, config.samples) {
                Ok(r) => r,
                Err(e) => {
                    let mut l = LawResult::new("cell-error", cell.model.clone(), cell.algebra.clone());
                    l.violation(e.to_string());
                    Report { entries: vec![l.finish()] }
                }
            };
            let expect: Vec<&str> = cell.expect.iter().map(String::as_str).collect();
            rep.expect_failures(&expect);
            (cell.key(), rep)
        })
        .collect();
    results.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out = Report::new();
    for (_, r) in results {
        out.extend(r);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    #[test]
    fn negative_controls_are_expected() {
        let cfg = CampaignConfig {
            seed: 1,
            samples: 40,
            cells: vec![
                CellSpec::new(Suite::Kleene, "pairs", "boolean", 0).expecting(&["cell-error"]),
                CellSpec::new(Suite::Modal, "graph", "no-modal", 3).expecting(&["dom-local", "cod-local"]),
            ],
        };
        let r = run_campaign(&cfg).unwrap();
        assert!(r.is_clean(), "{r}");
        let e = r.get("cell-error").unwrap();
        assert_eq!(e.status, Status::ExpectedFail);
        assert!(e.witnesses[0].contains("identity decomposable"), "{:?}", e.witnesses);
        assert_eq!(r.status_of("dom-local"), Some(Status::ExpectedFail));
    }

    #[test]
    fn unknown_names_are_config_errors() {
        let cfg = CampaignConfig { seed: 1, samples: 1, cells: vec![CellSpec::new(Suite::Kleene, "nope", "boolean", 1)] };
        assert!(matches!(run_campaign(&cfg), Err(Error::Config(_))));
        let cfg = CampaignConfig { seed: 1, samples: 1, cells: vec![CellSpec::new(Suite::Kleene, "words", "nope", 1)] };
        assert!(matches!(run_campaign(&cfg), Err(Error::Config(_))));
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn deterministic_and_clean_suites() {
        for suite in [Suite::Catoid, Suite::Kat, Suite::Conway, Suite::Quantale, Suite::Modal, Suite::Kleene] {
            let cfg = CampaignConfig::for_suite(suite, 7, 8);
            let a = run_campaign(&cfg).unwrap();
            assert!(a.is_clean(), "{suite}\n{a}");
            assert_eq!(a.to_text(), run_campaign(&cfg).unwrap().to_text());
        }
    }
}
