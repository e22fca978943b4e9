use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::catoid::Catoid;

/// A guarded string `t₀ a₁ t₁ … a_k t_k`, stored as indices into the test
/// and action alphabets. `tests.len() == actions.len() + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GuardedString {
    pub tests: Vec<usize>,
    pub actions: Vec<usize>,
}

impl GuardedString {
    /// Number of actions.
    pub fn len(&self) -> usize {
        self.actions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.actions.is_empty()
    }

    pub fn first(&self) -> usize {
        self.tests[0]
    }

    pub fn last(&self) -> usize {
        *self.tests.last().expect("at least one test")
    }

    fn slice(&self, lo: usize, hi: usize) -> GuardedString {
        GuardedString {
            tests: self.tests[lo..=hi].to_vec(),
            actions: self.actions[lo..hi].to_vec(),
        }
    }
}

impl Ord for GuardedString {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.tests.cmp(&other.tests))
            .then_with(|| self.actions.cmp(&other.actions))
    }
}

impl PartialOrd for GuardedString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Guarded strings with at most `max_len` actions. Single tests are the
/// identities; strings compose by gluing on an equal boundary test.
#[derive(Debug, Clone)]
pub struct GuardedCatoid {
    tests: Vec<String>,
    actions: Vec<String>,
    max_len: usize,
    strings: Vec<GuardedString>,
}

pub fn guarded_string_catoid(tests: &[&str], actions: &[&str], max_len: usize) -> GuardedCatoid {
    let (nt, na) = (tests.len(), actions.len());
    let mut layer: Vec<GuardedString> = (0..nt)
        .map(|t| GuardedString { tests: vec![t], actions: Vec::new() })
        .collect();
    let mut strings = layer.clone();
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * nt * na);
        for g in &layer {
            for a in 0..na {
                for t in 0..nt {
                    let mut h = g.clone();
                    h.actions.push(a);
                    h.tests.push(t);
                    next.push(h);
                }
            }
        }
        strings.extend(next.iter().cloned());
        layer = next;
    }
    strings.sort();
    GuardedCatoid {
        tests: tests.iter().map(|s| s.to_string()).collect(),
        actions: actions.iter().map(|s| s.to_string()).collect(),
        max_len,
        strings,
    }
}

impl GuardedCatoid {
    /// Parses a dotted label such as `t1.p.t2`.
    pub fn string(&self, label: &str) -> GuardedString {
        let parts: Vec<&str> = label.split('.').collect();
        assert!(parts.len() % 2 == 1, "guarded strings alternate test.action.test");
        let find = |names: &[String], s: &str| {
            names.iter().position(|n| n == s).unwrap_or_else(|| panic!("unknown symbol {s}"))
        };
        GuardedString {
            tests: parts.iter().step_by(2).map(|s| find(&self.tests, s)).collect(),
            actions: parts.iter().skip(1).step_by(2).map(|s| find(&self.actions, s)).collect(),
        }
    }

    pub fn test_names(&self) -> &[String] {
        &self.tests
    }

    pub fn action_names(&self) -> &[String] {
        &self.actions
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }
}

impl Catoid for GuardedCatoid {
    type Elem = GuardedString;

    fn name(&self) -> String {
        "guarded".into()
    }

    fn universe(&self) -> &[GuardedString] {
        &self.strings
    }

    fn compose(&self, y: &GuardedString, z: &GuardedString) -> BTreeSet<GuardedString> {
        if y.last() != z.first() || y.len() + z.len() > self.max_len {
            return BTreeSet::new();
        }
        let mut x = y.clone();
        x.tests.extend_from_slice(&z.tests[1..]);
        x.actions.extend_from_slice(&z.actions);
        BTreeSet::from([x])
    }

    fn source(&self, x: &GuardedString) -> GuardedString {
        GuardedString { tests: vec![x.first()], actions: Vec::new() }
    }

    fn target(&self, x: &GuardedString) -> GuardedString {
        GuardedString { tests: vec![x.last()], actions: Vec::new() }
    }

    fn decompose2(&self, x: &GuardedString) -> Vec<(GuardedString, GuardedString)> {
        let k = x.len();
        let mut out: Vec<_> = (0..=k).map(|i| (x.slice(0, i), x.slice(i, k))).collect();
        out.sort();
        out
    }

    fn escapes(&self, y: &GuardedString, z: &GuardedString) -> bool {
        y.last() == z.first() && y.len() + z.len() > self.max_len
    }

    fn is_truncated(&self) -> bool {
        true
    }

    fn label(&self, x: &GuardedString) -> String {
        let mut parts = vec![self.tests[x.tests[0]].as_str()];
        for (a, t) in x.actions.iter().zip(&x.tests[1..]) {
            parts.push(&self.actions[*a]);
            parts.push(&self.tests[*t]);
        }
        parts.join(".")
    }

    fn enumerate(&self, bound: usize) -> Vec<GuardedString> {
        self.strings.iter().filter(|g| g.len() <= bound).cloned().collect()
    }
}
