use std::collections::BTreeSet;

use crate::error::Result;
use crate::report::{LawResult, Report, Status};
use crate::value_algebra::{
    check_value_axioms, parse_tables, AxiomClass, FiniteTables, Sampler, INDEPENDENCE_MODEL_1, INDEPENDENCE_MODEL_2,
};

/// A finite two-fold modal semiring together with the failure pattern it is
/// claimed to have.
#[derive(Debug, Clone, Copy)]
pub struct IndependenceModel {
    pub tables: &'static str,
    /// Laws that must fail; every other law must pass.
    pub failing: &'static [&'static str],
    /// `(law, witness)` pairs that must appear among the violations.
    pub witnesses: &'static [(&'static str, &'static str)],
    /// A known misprint: `(dimension, row, corrected row)` in the
    /// multiplication tables. Checked separately, never instead of the
    /// printed tables.
    pub erratum: Option<(usize, &'static str, &'static [&'static str])>,
}

pub const INDEPENDENCE_MODELS: [IndependenceModel; 2] = [
    IndependenceModel {
        tables: INDEPENDENCE_MODEL_1,
        failing: &["dom-closure.0.1", "cod-closure.0.1"],
        witnesses: &[
            ("dom-closure.0.1", "(1_1,1_1): d-1(a) = 1_1 vs a"),
            ("cod-closure.0.1", "(1_1,1_1): d+1(a) = 1_1 vs a"),
        ],
        erratum: Some((1, "a", &["0", "1_0", "a", "a"])),
    },
    IndependenceModel {
        tables: INDEPENDENCE_MODEL_2,
        failing: &["cod-closure.0.1"],
        witnesses: &[("cod-closure.0.1", "(1_1,a): d+1(b) = 1_1 vs b")],
        erratum: None,
    },
];

fn pattern(model: &IndependenceModel, t: &FiniteTables, label: &str) -> Result<Report> {
    let alg = t.clone().into_algebra();
    let mut rep = check_value_axioms(&alg, AxiomClass::NSemiring, Sampler::Exhaustive)?;
    for e in &mut rep.entries {
        e.model = label.to_string();
    }
    let failed: BTreeSet<&str> = rep.failed_laws().into_iter().collect();
    let expected: BTreeSet<&str> = model.failing.iter().copied().collect();
    let mut p = LawResult::new("independence-pattern", label, t.name());
    for law in failed.difference(&expected) {
        let w = &rep.get(law).expect("failed law is in the report").witnesses;
        p.violation(format!("{law} fails unexpectedly at {}", w.join("; ")));
    }
    for law in expected.difference(&failed) {
        p.violation(format!("{law} passes but should fail"));
    }
    for (law, w) in model.witnesses {
        let found = rep.get(law).map(|e| e.witnesses.iter().any(|x| x == w)).unwrap_or(false);
        p.record(found, || format!("{law} lacks witness {w}"));
    }
    rep.expect_failures(model.failing);
    rep.push(p.finish());
    Ok(rep)
}

/// Checks one model exhaustively against its claimed pattern.
///
/// The printed tables decide the `independence-pattern` status. When the
/// model carries an erratum and the printed tables disagree, a
/// `table-diff` line names the changed cells and the corrected tables are
/// checked as a second, separately labelled model.
pub fn verify_independence_model(model: &IndependenceModel) -> Result<Report> {
    let printed = parse_tables(model.tables)?;
    let mut rep = pattern(model, &printed, "printed")?;
    let ok = rep.status_of("independence-pattern") == Some(Status::Pass);
    if let (false, Some((dim, row, values))) = (ok, model.erratum) {
        let fixed = printed.with_mul_row(dim, row, values)?;
        let old = printed.mul_row(dim, row).unwrap_or_default();
        let cells: Vec<String> = old
            .iter()
            .zip(values.iter())
            .zip(printed.names())
            .filter(|((o, n), _)| o.as_str() != **n)
            .map(|((o, n), col)| format!("mul{dim}({row},{col}): printed {o}, corrected {n}"))
            .collect();
        rep.push(LawResult::info("table-diff", "erratum", printed.name(), cells.join("; ")));
        rep.extend(pattern(model, &fixed, "erratum")?);
    }
    if !ok && model.erratum.is_none() {
        rep.push(LawResult::info("table-diff", "printed", printed.name(), blocking_note(&printed)));
    }
    Ok(rep)
}

/// Explains a mismatch that no single-cell correction can remove: when
/// `d-j` and `d+j` have the same fixpoints the two closure axioms say the
/// same thing, so one cannot fail without the other.
fn blocking_note(t: &FiniteTables) -> String {
    let alg = t.clone().into_algebra();
    let mut notes = Vec::new();
    for j in 1..alg.n() {
        let a = alg.dim(j);
        let Some(carrier) = a.carrier() else { continue };
        let fd: Vec<String> = carrier.iter().filter(|&&x| a.dom(x) == x).map(|&x| a.format(x)).collect();
        let fc: Vec<String> = carrier.iter().filter(|&&x| a.cod(x) == x).map(|&x| a.format(x)).collect();
        if fd == fc {
            notes.push(format!(
                "Fix(d-{j}) = Fix(d+{j}) = {{{}}}, so dom-closure and cod-closure into dimension {j} are equivalent",
                fd.join(",")
            ));
        }
    }
    if notes.is_empty() {
        "no known correction".to_string()
    } else {
        notes.join("; ")
    }
}

/// Both closure-independence models.
pub fn verify_independence() -> Result<Report> {
    let mut rep = Report::new();
    for m in &INDEPENDENCE_MODELS {
        rep.extend(verify_independence_model(m)?);
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn patterns(r: &Report) -> Vec<(String, Status)> {
        r.entries
            .iter()
            .filter(|e| e.law == "independence-pattern")
            .map(|e| (format!("{}/{}", e.algebra, e.model), e.status))
            .collect()
    }

    #[test]
    fn model_one_reproduces_after_erratum() {
        let r = verify_independence_model(&INDEPENDENCE_MODELS[0]).unwrap();
        assert_eq!(
            patterns(&r),
            vec![
                ("independence-1/printed".to_string(), Status::Fail),
                ("independence-1/erratum".to_string(), Status::Pass)
            ],
            "{r}"
        );
        let diff = r.get("table-diff").unwrap();
        assert_eq!(
            diff.note.as_deref(),
            Some("mul1(a,0): printed a, corrected 0; mul1(a,1_0): printed 0, corrected 1_0")
        );
    }

    #[test]
    fn model_two_closure_axioms_coincide() {
        let r = verify_independence_model(&INDEPENDENCE_MODELS[1]).unwrap();
        assert_eq!(patterns(&r), vec![("independence-2/printed".to_string(), Status::Fail)]);
        let cod = r.get("cod-closure.0.1").unwrap();
        assert!(cod.witnesses.contains(&"(1_1,a): d+1(b) = 1_1 vs b".to_string()), "{:?}", cod.witnesses);
        assert_eq!(r.status_of("dom-closure.0.1"), Some(Status::Fail));
        assert!(r.get("table-diff").unwrap().note.as_ref().unwrap().contains("equivalent"));
        let others: Vec<&str> = r.failed_laws().into_iter().filter(|l| !l.contains("closure") && *l != "independence-pattern").collect();
        assert!(others.is_empty(), "{others:?}");
    }
}
