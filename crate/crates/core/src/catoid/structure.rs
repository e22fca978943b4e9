use std::collections::{BTreeSet, HashMap};

use super::Catoid;
use crate::error::{Error, Result};

/// A catoid indexed once: elements are numbered in universe order and all
/// decompositions, sources, targets and lengths are precomputed.
#[derive(Debug, Clone)]
pub struct Structure<E> {
    name: String,
    elems: Vec<E>,
    index: HashMap<E, usize>,
    labels: Vec<String>,
    src: Vec<usize>,
    tgt: Vec<usize>,
    is_id: Vec<bool>,
    identities: Vec<usize>,
    decomps: Vec<Vec<(usize, usize)>>,
    products: HashMap<(usize, usize), Vec<usize>>,
    src_fibers: Vec<Vec<usize>>,
    tgt_fibers: Vec<Vec<usize>>,
    lengths: std::result::Result<Vec<usize>, String>,
    moebius: std::result::Result<(), String>,
    decomposable: std::result::Result<(), String>,
    local: std::result::Result<(), String>,
    truncated: bool,
}

impl<E: Clone + Eq + std::hash::Hash + Ord + std::fmt::Debug> Structure<E> {
    pub fn of<C: Catoid<Elem = E> + ?Sized>(c: &C) -> Self {
        let elems: Vec<E> = c.universe().to_vec();
        let n = elems.len();
        let index: HashMap<E, usize> = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let labels: Vec<String> = elems.iter().map(|e| c.label(e)).collect();
        let pos = |e: &E| index.get(e).copied();

        let mut moebius: std::result::Result<(), String> = Ok(());
        let mut src = vec![0; n];
        let mut tgt = vec![0; n];
        for (i, e) in elems.iter().enumerate() {
            match (pos(&c.source(e)), pos(&c.target(e))) {
                (Some(s), Some(t)) => {
                    src[i] = s;
                    tgt[i] = t;
                }
                _ => panic!("{}: source or target of {} lies outside the universe", c.name(), labels[i]),
            }
        }
        let is_id: Vec<bool> = (0..n).map(|i| src[i] == i).collect();
        let identities: Vec<usize> = (0..n).filter(|&i| is_id[i]).collect();

        let mut decomps = Vec::with_capacity(n);
        let mut products: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (i, e) in elems.iter().enumerate() {
            let mut d = Vec::new();
            for (y, z) in c.decompose2(e) {
                match (pos(&y), pos(&z)) {
                    (Some(a), Some(b)) => d.push((a, b)),
                    _ => {
                        if moebius.is_ok() {
                            moebius = Err(format!(
                                "model fails Möbius condition (1): factor of {} outside the universe",
                                labels[i]
                            ));
                        }
                    }
                }
            }
            d.sort_unstable();
            d.dedup();
            for &(a, b) in &d {
                products.entry((a, b)).or_default().push(i);
            }
            decomps.push(d);
        }

        let decomposable = moebius.clone();
        if moebius.is_ok() {
            'outer: for &e in &identities {
                for &(y, z) in &decomps[e] {
                    if !is_id[y] && !is_id[z] {
                        moebius = Err(format!(
                            "model fails Möbius condition (2): identity decomposable: {} in {} ⊙ {}",
                            labels[e], labels[y], labels[z]
                        ));
                        break 'outer;
                    }
                }
            }
        }
        if moebius.is_ok() {
            'outer3: for x in 0..n {
                for &(y, z) in &decomps[x] {
                    if y == x && z != tgt[x] {
                        moebius = Err(format!(
                            "model fails Möbius condition (3): {} in {} ⊙ {} with {} not the target",
                            labels[x], labels[x], labels[z], labels[z]
                        ));
                        break 'outer3;
                    }
                }
            }
        }

        let lengths = compute_lengths(&decomps, &is_id, &labels);
        if moebius.is_ok() {
            if let Err(m) = &lengths {
                moebius = Err(format!("model is not Möbius: {m}"));
            }
        }

        let mut src_fibers = vec![Vec::new(); n];
        let mut tgt_fibers = vec![Vec::new(); n];
        for i in 0..n {
            src_fibers[src[i]].push(i);
            tgt_fibers[tgt[i]].push(i);
        }

        let mut local = Ok(());
        'loc: for &e in &identities {
            for &y in &tgt_fibers[e] {
                for &z in &src_fibers[e] {
                    if !products.contains_key(&(y, z)) && !c.escapes(&elems[y], &elems[z]) {
                        local = Err(format!(
                            "t({}) = s({}) but they do not compose",
                            labels[y], labels[z]
                        ));
                        break 'loc;
                    }
                }
            }
        }

        Structure {
            name: c.name(),
            elems,
            index,
            labels,
            src,
            tgt,
            is_id,
            identities,
            decomps,
            products,
            src_fibers,
            tgt_fibers,
            lengths,
            moebius,
            decomposable,
            local,
            truncated: c.is_truncated(),
        }
    }
}

fn compute_lengths(
    decomps: &[Vec<(usize, usize)>],
    is_id: &[bool],
    labels: &[String],
) -> std::result::Result<Vec<usize>, String> {
    // 0 = unvisited, 1 = on stack, 2 = done
    let n = decomps.len();
    let mut state = vec![0u8; n];
    let mut len = vec![0usize; n];
    fn visit(
        x: usize,
        decomps: &[Vec<(usize, usize)>],
        is_id: &[bool],
        labels: &[String],
        state: &mut [u8],
        len: &mut [usize],
    ) -> std::result::Result<usize, String> {
        match state[x] {
            2 => return Ok(len[x]),
            1 => return Err(format!("length of {} is unbounded", labels[x])),
            _ => {}
        }
        state[x] = 1;
        let mut best = usize::from(!is_id[x]);
        for &(y, w) in &decomps[x] {
            if !is_id[y] {
                best = best.max(1 + visit(w, decomps, is_id, labels, state, len)?);
            }
        }
        state[x] = 2;
        len[x] = best;
        Ok(best)
    }
    for x in 0..n {
        visit(x, decomps, is_id, labels, &mut state, &mut len)?;
    }
    Ok(len)
}

impl<E> Structure<E> {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elems(&self) -> &[E] {
        &self.elems
    }

    pub fn elem(&self, i: usize) -> &E {
        &self.elems[i]
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn src(&self, i: usize) -> usize {
        self.src[i]
    }

    pub fn tgt(&self, i: usize) -> usize {
        self.tgt[i]
    }

    pub fn is_identity(&self, i: usize) -> bool {
        self.is_id[i]
    }

    pub fn identities(&self) -> &[usize] {
        &self.identities
    }

    /// Sorted index pairs `(y, z)` with `x ∈ y ⊙ z`.
    pub fn decomps(&self, x: usize) -> &[(usize, usize)] {
        &self.decomps[x]
    }

    /// `y ⊙ z` restricted to the universe, in index order.
    pub fn compose(&self, y: usize, z: usize) -> &[usize] {
        self.products.get(&(y, z)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// True when every product has at most one element inside the universe.
    pub fn is_functional(&self) -> bool {
        self.products.values().all(|v| v.len() <= 1)
    }

    /// Elements with source `e`.
    pub fn src_fiber(&self, e: usize) -> &[usize] {
        &self.src_fibers[e]
    }

    /// Elements with target `e`.
    pub fn tgt_fiber(&self, e: usize) -> &[usize] {
        &self.tgt_fibers[e]
    }

    pub fn length(&self, x: usize) -> Result<usize> {
        match &self.lengths {
            Ok(l) => Ok(l[x]),
            Err(m) => Err(Error::Moebius(m.clone())),
        }
    }

    pub fn max_length(&self) -> Result<usize> {
        match &self.lengths {
            Ok(l) => Ok(l.iter().copied().max().unwrap_or(0)),
            Err(m) => Err(Error::Moebius(m.clone())),
        }
    }

    /// `Ok` when all three Möbius conditions hold on the universe.
    pub fn moebius(&self) -> Result<()> {
        self.moebius.clone().map_err(Error::Moebius)
    }

    /// `Ok` when every element's factors lie in the universe.
    pub fn finitely_decomposable(&self) -> Result<()> {
        self.decomposable.clone().map_err(Error::Moebius)
    }

    pub fn is_local(&self) -> bool {
        self.local.is_ok()
    }

    pub fn locality_witness(&self) -> Option<&str> {
        self.local.as_ref().err().map(String::as_str)
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    /// All `n`-tuples of non-identities composing to `x`.
    pub fn decompose_n(&self, x: usize, n: usize) -> Vec<Vec<usize>> {
        let mut memo = HashMap::new();
        self.decompose_n_memo(x, n, &mut memo).into_iter().collect()
    }

    fn decompose_n_memo(
        &self,
        x: usize,
        n: usize,
        memo: &mut HashMap<(usize, usize), BTreeSet<Vec<usize>>>,
    ) -> BTreeSet<Vec<usize>> {
        if let Some(v) = memo.get(&(x, n)) {
            return v.clone();
        }
        let mut out = BTreeSet::new();
        match n {
            0 if self.is_id[x] => {
                out.insert(Vec::new());
            }
            1 if !self.is_id[x] => {
                out.insert(vec![x]);
            }
            0 | 1 => {}
            _ => {
                for &(y, w) in &self.decomps[x] {
                    if self.is_id[y] {
                        continue;
                    }
                    for tail in self.decompose_n_memo(w, n - 1, memo) {
                        let mut t = Vec::with_capacity(n);
                        t.push(y);
                        t.extend(tail);
                        out.insert(t);
                    }
                }
            }
        }
        memo.insert((x, n), out.clone());
        out
    }
}

impl<E: Eq + std::hash::Hash> Structure<E> {
    pub fn index_of(&self, e: &E) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn position(&self, e: &E) -> Result<usize> {
        self.index_of(e)
            .ok_or_else(|| Error::UnknownElement("element outside the universe".into()))
    }
}

impl<E> Structure<E> {
    /// Index of the element with the given label.
    pub fn by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catoid_models::{free_monoid, pair_groupoid, shuffle_catoid};

    #[test]
    fn free_monoid_structure() {
        let m = free_monoid(&['a', 'b'], 3);
        let s = Structure::of(&m);
        assert_eq!(s.len(), 15);
        assert_eq!(s.identities().len(), 1);
        assert!(s.moebius().is_ok());
        assert!(s.is_local());
        assert!(s.is_truncated());
        assert_eq!(s.max_length().unwrap(), 3);
        let ab = s.by_label("ab").unwrap();
        assert_eq!(s.decomps(ab).len(), 3);
        let a = s.by_label("a").unwrap();
        let b = s.by_label("b").unwrap();
        assert_eq!(s.compose(a, b), &[ab]);
    }

    #[test]
    fn pair_groupoid_fails_condition_two() {
        let g = pair_groupoid(&["a", "b"]);
        let s = Structure::of(&g);
        let e = s.moebius().unwrap_err().to_string();
        assert!(e.starts_with("model fails Möbius condition (2): identity decomposable"), "{e}");
        assert!(s.length(0).is_err());
    }

    #[test]
    fn shuffle_n_decompositions_are_sets() {
        let m = shuffle_catoid(&['a', 'b'], 3);
        let s = Structure::of(&m);
        let aab = s.by_label("aab").unwrap();
        let a = s.by_label("a").unwrap();
        let b = s.by_label("b").unwrap();
        let ts = s.decompose_n(aab, 3);
        // a·a·b, a·b·a and b·a·a interleavings all shuffle into aab.
        assert!(ts.contains(&vec![a, a, b]));
        assert!(ts.contains(&vec![a, b, a]));
        assert!(ts.contains(&vec![b, a, a]));
        assert_eq!(ts.len(), 3);
    }
}
