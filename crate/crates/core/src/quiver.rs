//! Quivers and their paths.
//!
//! A path `p = a_m ... a_0` is stored in traversal order (`a_0` first) and
//! printed in composition order (`a_m` first). The arrow list order of a
//! [`Quiver`] fixes the ordering of every arrow-indexed direct sum in the
//! crate.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub tail: usize,
    pub head: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    n_vertices: usize,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(n_vertices: usize, arrows: Vec<(usize, usize)>) -> Result<Self> {
        if n_vertices == 0 {
            return Err(Error::Validation("a quiver needs at least one vertex".into()));
        }
        let arrows = arrows
            .into_iter()
            .enumerate()
            .map(|(a, (tail, head))| {
                if tail >= n_vertices || head >= n_vertices {
                    Err(Error::Validation(format!(
                        "arrow {a} ({tail} -> {head}) leaves the vertex range 0..{n_vertices}"
                    )))
                } else {
                    Ok(Arrow { tail, head })
                }
            })
            .collect::<Result<_>>()?;
        Ok(Self { n_vertices, arrows })
    }

    /// One vertex and one loop: the path algebra is `k[x]`.
    pub fn loop_quiver() -> Self {
        Self::new(1, vec![(0, 0)]).expect("valid")
    }

    /// `0 <- 1 <- ... <- m`, the quiver of holomorphic chains.
    pub fn chain(m: usize) -> Self {
        Self::new(m + 1, (0..m).map(|i| (i + 1, i)).collect()).expect("valid")
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, a: usize) -> Arrow {
        self.arrows[a]
    }

    pub fn tail(&self, a: usize) -> usize {
        self.arrows[a].tail
    }

    pub fn head(&self, a: usize) -> usize {
        self.arrows[a].head
    }

    /// Arrows ending at `v`, in arrow order.
    pub fn arrows_into(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].head == v)
    }

    /// Some vertex on a directed cycle, if any (loops count).
    pub fn find_cycle(&self) -> Option<usize> {
        // Kahn's algorithm; whatever is left over lies on or behind a cycle.
        let mut indeg = vec![0usize; self.n_vertices];
        for a in &self.arrows {
            indeg[a.head] += 1;
        }
        let mut stack: Vec<usize> = (0..self.n_vertices).filter(|&v| indeg[v] == 0).collect();
        let mut removed = vec![false; self.n_vertices];
        while let Some(v) = stack.pop() {
            removed[v] = true;
            for a in self.arrows.iter().filter(|a| a.tail == v) {
                indeg[a.head] -= 1;
                if indeg[a.head] == 0 {
                    stack.push(a.head);
                }
            }
        }
        (0..self.n_vertices).find(|&v| !removed[v])
    }

    pub fn is_acyclic(&self) -> bool {
        self.find_cycle().is_none()
    }

    /// Builds a path from arrows listed in traversal order.
    pub fn path(&self, arrows: Vec<usize>) -> Result<Path> {
        if arrows.is_empty() {
            return Err(Error::Validation("use Path::trivial for length-0 paths".into()));
        }
        for &a in &arrows {
            if a >= self.arrows.len() {
                return Err(Error::IndexOutOfRange(format!("arrow {a}")));
            }
        }
        for w in arrows.windows(2) {
            if self.head(w[0]) != self.tail(w[1]) {
                return Err(Error::Validation(format!(
                    "arrows {} and {} do not compose",
                    w[1], w[0]
                )));
            }
        }
        Ok(Path {
            tail: self.tail(arrows[0]),
            head: self.head(*arrows.last().expect("nonempty")),
            arrows,
        })
    }

    /// Paths of length `0..=max_len`, grouped by `(length, head)`.
    ///
    /// Group `(l, i)` lists the paths `a . q` for `a` ranging over arrows into
    /// `i` in arrow order and `q` over group `(l - 1, tail a)`, which is
    /// lexicographic order on the printed arrow sequence.
    pub fn enumerate_paths(&self, max_len: usize) -> PathTable {
        let n = self.n_vertices;
        let mut by_len: Vec<Vec<Vec<Path>>> = Vec::with_capacity(max_len + 1);
        by_len.push((0..n).map(|i| vec![Path::trivial(i)]).collect());
        for l in 1..=max_len {
            let prev = &by_len[l - 1];
            let layer: Vec<Vec<Path>> = (0..n)
                .map(|i| {
                    self.arrows_into(i)
                        .flat_map(|a| prev[self.tail(a)].iter().map(move |q| q.then_arrow(a, i)))
                        .collect()
                })
                .collect();
            by_len.push(layer);
        }
        PathTable { by_len }
    }
}

/// Output of [`Quiver::enumerate_paths`].
#[derive(Clone, Debug)]
pub struct PathTable {
    by_len: Vec<Vec<Vec<Path>>>,
}

impl PathTable {
    pub fn max_len(&self) -> usize {
        self.by_len.len() - 1
    }

    /// Paths of length `len` ending at `head`.
    pub fn get(&self, len: usize, head: usize) -> &[Path] {
        &self.by_len[len][head]
    }

    pub fn count(&self, len: usize, head: usize) -> usize {
        self.by_len[len][head].len()
    }

    pub fn groups(&self) -> BTreeMap<(usize, usize), &[Path]> {
        let mut out = BTreeMap::new();
        for (l, layer) in self.by_len.iter().enumerate() {
            for (i, paths) in layer.iter().enumerate() {
                out.insert((l, i), paths.as_slice());
            }
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = &Path> {
        self.by_len.iter().flatten().flatten()
    }
}

/// A trivial path `<i>` or a composable arrow sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    tail: usize,
    head: usize,
    // traversal order; empty for trivial paths
    arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(vertex: usize) -> Self {
        Self {
            tail: vertex,
            head: vertex,
            arrows: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn tail(&self) -> usize {
        self.tail
    }

    pub fn head(&self) -> usize {
        self.head
    }

    /// Arrows in traversal order, `a_0` first.
    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    /// `a . self`, assuming `tail(a) = head(self)`.
    fn then_arrow(&self, a: usize, head: usize) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.push(a);
        Path {
            tail: self.tail,
            head,
            arrows,
        }
    }

    /// `self . other`: first `other`, then `self`. Absent unless
    /// `tail(self) = head(other)`.
    pub fn compose(&self, other: &Path) -> Option<Path> {
        if self.tail != other.head {
            return None;
        }
        let mut arrows = other.arrows.clone();
        arrows.extend_from_slice(&self.arrows);
        Some(Path {
            tail: other.tail,
            head: self.head,
            arrows,
        })
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arrows.is_empty() {
            return write!(f, "<{}>", self.tail);
        }
        let parts: Vec<String> = self.arrows.iter().rev().map(|a| format!("a{a}")).collect();
        write!(f, "{}", parts.join("."))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn loop_quiver_has_one_path_per_length() {
        let t = Quiver::loop_quiver().enumerate_paths(3);
        for l in 0..=3 {
            assert_eq!(t.count(l, 0), 1);
            assert_eq!(t.get(l, 0)[0].len(), l);
        }
    }

    #[test]
    fn single_arrow_has_no_long_paths() {
        let q = Quiver::new(2, vec![(1, 0)]).unwrap();
        let t = q.enumerate_paths(5);
        assert_eq!(t.get(0, 0), &[Path::trivial(0)]);
        assert_eq!(t.get(0, 1), &[Path::trivial(1)]);
        assert_eq!(t.get(1, 0), &[q.path(vec![0]).unwrap()]);
        assert_eq!(t.count(1, 1), 0);
        for l in 2..=5 {
            assert_eq!(t.count(l, 0) + t.count(l, 1), 0);
        }
        assert_eq!(t.iter().count(), 3);
    }

    #[test]
    fn two_cycle_length_two() {
        // a: 0 -> 1, b: 1 -> 0
        let q = Quiver::new(2, vec![(0, 1), (1, 0)]).unwrap();
        let t = q.enumerate_paths(2);
        let ba = q.path(vec![0, 1]).unwrap();
        let ab = q.path(vec![1, 0]).unwrap();
        assert_eq!(t.get(2, 0), std::slice::from_ref(&ba));
        assert_eq!(t.get(2, 1), std::slice::from_ref(&ab));
        assert_eq!(ba.to_string(), "a1.a0");
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let q = Quiver::new(1, vec![(0, 0), (0, 0)]).unwrap();
        let t = q.enumerate_paths(2);
        let printed: Vec<String> = t.get(2, 0).iter().map(ToString::to_string).collect();
        assert_eq!(printed, ["a0.a0", "a0.a1", "a1.a0", "a1.a1"]);
    }

    #[test]
    fn composition_rules() {
        let q = Quiver::new(2, vec![(1, 0)]).unwrap();
        let e0 = Path::trivial(0);
        let e1 = Path::trivial(1);
        let a = q.path(vec![0]).unwrap();
        assert_eq!(e0.compose(&e0), Some(e0.clone()));
        assert_eq!(e0.compose(&e1), None);
        assert_eq!(a.compose(&e1), Some(a.clone()));
        assert_eq!(e0.compose(&a), Some(a.clone()));
        assert_eq!(a.compose(&a), None);
    }

    #[test]
    fn rejects_bad_arrows() {
        assert!(Quiver::new(2, vec![(0, 2)]).is_err());
        assert!(Quiver::new(0, vec![]).is_err());
        let q = Quiver::new(3, vec![(0, 1), (2, 0)]).unwrap();
        assert!(q.path(vec![0, 1]).is_err());
        assert!(q.path(vec![1, 0]).is_ok());
    }

    #[test]
    fn cycle_detection() {
        assert!(Quiver::chain(3).is_acyclic());
        assert!(!Quiver::loop_quiver().is_acyclic());
        assert!(!Quiver::new(3, vec![(0, 1), (1, 2), (2, 1)]).unwrap().is_acyclic());
    }

    fn small_quiver() -> impl Strategy<Value = Quiver> {
        (1usize..=3).prop_flat_map(|n| {
            prop::collection::vec((0..n, 0..n), 0..=4).prop_map(move |arrows| Quiver::new(n, arrows).unwrap())
        })
    }

    proptest! {
        #[test]
        fn composition_is_associative(q in small_quiver()) {
            let t = q.enumerate_paths(2);
            let paths: Vec<&Path> = t.iter().collect();
            for p in &paths {
                for r in &paths {
                    for s in &paths {
                        let left = p.compose(r).and_then(|pr| pr.compose(s));
                        let right = r.compose(s).and_then(|rs| p.compose(&rs));
                        prop_assert_eq!(left, right);
                    }
                }
            }
        }

        #[test]
        fn path_counts_follow_recursion(q in small_quiver()) {
            let t = q.enumerate_paths(4);
            for l in 1..=4 {
                for i in 0..q.n_vertices() {
                    let expect: usize = q.arrows_into(i).map(|a| t.count(l - 1, q.tail(a))).sum();
                    prop_assert_eq!(t.count(l, i), expect);
                }
            }
            for p in t.iter() {
                prop_assert!(q.path(p.arrows().to_vec()).map(|x| &x == p).unwrap_or(p.is_trivial()));
            }
        }

        #[test]
        fn acyclic_quivers_stabilise(q in small_quiver()) {
            if q.is_acyclic() {
                let n = q.n_vertices();
                let t = q.enumerate_paths(n + 1);
                for l in n..=n + 1 {
                    for i in 0..n {
                        prop_assert_eq!(t.count(l, i), 0);
                    }
                }
            }
        }
    }
}
