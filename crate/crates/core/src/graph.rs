//! Immutable simple graphs with a fixed total vertex order.
//!
//! Vertices are `0..n`. The index order doubles as the tie-breaking order used
//! by the redundancy classification and by maximal generators, so it is part
//! of the input and never renumbered internally.

use std::collections::VecDeque;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, ParseErrorKind, Result};

/// A set of vertices iterated in ascending order.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(vec![v])
    }

    /// Wraps a vector that is already strictly increasing.
    pub(crate) fn from_sorted(v: Vec<usize>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        VertexSet(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn max(&self) -> Option<usize> {
        self.0.last().copied()
    }

    pub fn insert(&mut self, v: usize) -> bool {
        match self.0.binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.0.insert(pos, v);
                true
            }
        }
    }

    pub fn remove(&mut self, v: usize) -> bool {
        match self.0.binary_search(&v) {
            Ok(pos) => {
                self.0.remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    pub fn with(&self, v: usize) -> Self {
        let mut s = self.clone();
        s.insert(v);
        s
    }

    pub fn without(&self, v: usize) -> Self {
        let mut s = self.clone();
        s.remove(v);
        s
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        VertexSet(out)
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        self.iter().filter(|&v| !other.contains(v)).collect()
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        self.iter().filter(|&v| other.contains(v)).collect()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| !other.contains(v))
    }

    /// Space-separated, shifted to 1-based indices.
    pub fn to_one_indexed(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(|v| (v + 1).to_string()).collect();
        parts.join(" ")
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }
}

impl<const N: usize> From<[usize; N]> for VertexSet {
    fn from(arr: [usize; N]) -> Self {
        arr.into_iter().collect()
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        v.into_iter().collect()
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = &'a usize;
    type IntoIter = std::slice::Iter<'a, usize>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Simple, loopless, undirected graph.
///
/// Neighbor lists are sorted. `closed` holds one bitset row per vertex with
/// `N[v]`, giving constant-time adjacency tests and word-parallel
/// neighborhood inclusion at `O(n^2)` bits of memory.
#[derive(Clone, Debug)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    closed: Vec<FixedBitSet>,
    m: usize,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj
    }
}

impl Eq for Graph {}

impl Graph {
    /// Builds a graph, rejecting loops, duplicates and out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut closed: Vec<FixedBitSet> = (0..n)
            .map(|v| {
                let mut row = FixedBitSet::with_capacity(n);
                row.insert(v);
                row
            })
            .collect();
        let mut adj = vec![Vec::new(); n];
        let mut m = 0;
        for (i, (u, v)) in edges.into_iter().enumerate() {
            let line = i + 1;
            if u >= n || v >= n {
                let vertex = if u >= n { u } else { v } as i64;
                return Err(Error::parse(line, ParseErrorKind::VertexOutOfRange { vertex, n }));
            }
            if u == v {
                return Err(Error::parse(line, ParseErrorKind::SelfLoop(u as i64)));
            }
            if closed[u].contains(v) {
                return Err(Error::parse(line, ParseErrorKind::DuplicateEdge(u as i64, v as i64)));
            }
            closed[u].insert(v);
            closed[v].insert(u);
            adj[u].push(v);
            adj[v].push(u);
            m += 1;
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { adj, closed, m })
    }

    pub fn empty(n: usize) -> Graph {
        Graph::from_edges(n, std::iter::empty()).expect("edgeless graph is valid")
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        u != v && self.closed[u].contains(v)
    }

    /// Bitset of `N[v]`.
    pub fn closed_row(&self, v: usize) -> &FixedBitSet {
        &self.closed[v]
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn closed_neighborhood(&self, x: usize) -> VertexSet {
        let mut v = self.adj[x].clone();
        let pos = v.binary_search(&x).unwrap_err();
        v.insert(pos, x);
        VertexSet::from_sorted(v)
    }

    /// `N[D]` as a membership vector.
    pub fn closed_neighborhood_mask(&self, d: &VertexSet) -> Vec<bool> {
        let mut mask = vec![false; self.n()];
        for x in d.iter() {
            mask[x] = true;
            for &y in &self.adj[x] {
                mask[y] = true;
            }
        }
        mask
    }

    /// True iff `x ⊆ N[d]`.
    pub fn dominates(&self, d: &VertexSet, x: &VertexSet) -> bool {
        let mask = self.closed_neighborhood_mask(d);
        x.iter().all(|v| mask[v])
    }

    pub fn dominates_all(&self, d: &VertexSet) -> bool {
        self.closed_neighborhood_mask(d).into_iter().all(|b| b)
    }

    /// Components of `G[restrict]`, each sorted, ordered by minimum vertex.
    pub fn connected_components(&self, restrict: &VertexSet) -> Vec<VertexSet> {
        let n = self.n();
        let mut allowed = vec![false; n];
        for v in restrict.iter() {
            allowed[v] = true;
        }
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        let mut queue = VecDeque::new();
        for start in restrict.iter() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start);
            let mut comp = Vec::new();
            while let Some(v) = queue.pop_front() {
                comp.push(v);
                for &w in &self.adj[v] {
                    if allowed[w] && !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comps.push(comp.into_iter().collect());
        }
        comps
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::from_sorted((0..self.n()).collect())
    }

    pub fn component_count(&self) -> usize {
        self.connected_components(&self.all_vertices()).len()
    }

    /// A graph with no vertices is not considered connected.
    pub fn is_connected(&self) -> bool {
        self.n() > 0 && self.component_count() == 1
    }

    /// `G[vertices]` relabelled to `0..k` following the order of `vertices`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = local[w];
                if j != usize::MAX && i < j {
                    edges.push((i, j));
                }
            }
        }
        Graph::from_edges(vertices.len(), edges).expect("induced subgraph of a simple graph is simple")
    }

    /// Relabels vertex `v` to `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n());
        Graph::from_edges(self.n(), self.edges().map(|(u, v)| (perm[u], perm[v])))
            .expect("permutation preserves simplicity")
    }

    /// DIMACS edge format with 1-based endpoints.
    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p edge {} {}\n", self.n(), self.m);
        for (u, v) in self.edges() {
            out.push_str(&format!("e {} {}\n", u + 1, v + 1));
        }
        out
    }

    /// Plain format: `n m` then one 0-based `u v` per line.
    pub fn to_plain(&self) -> String {
        let mut out = format!("{} {}\n", self.n(), self.m);
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

fn parse_int(tok: &str, line: usize) -> Result<i64> {
    tok.parse::<i64>()
        .map_err(|_| Error::parse(line, ParseErrorKind::MalformedLine(format!("not an integer: {tok:?}"))))
}

/// Reads DIMACS edge format (`p edge n m`, `e u v`, 1-based) or the plain
/// `n m` / `u v` format (0-based). The format is chosen by the first
/// non-blank line: `c`, `p` or `e` selects DIMACS.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .unwrap_or("");
    let dimacs = matches!(first.split_whitespace().next(), Some("c" | "p" | "e"));
    if dimacs {
        parse_dimacs(text)
    } else {
        parse_plain(text)
    }
}

struct EdgeCollector {
    n: usize,
    seen: std::collections::HashSet<(usize, usize)>,
    edges: Vec<(usize, usize)>,
}

impl EdgeCollector {
    fn new(n: usize) -> Self {
        EdgeCollector { n, seen: Default::default(), edges: Vec::new() }
    }

    fn push(&mut self, line: usize, u: i64, v: i64, offset: i64) -> Result<()> {
        if u == v {
            return Err(Error::parse(line, ParseErrorKind::SelfLoop(u)));
        }
        for x in [u, v] {
            if x < offset || x - offset >= self.n as i64 {
                return Err(Error::parse(line, ParseErrorKind::VertexOutOfRange { vertex: x, n: self.n }));
            }
        }
        let (a, b) = ((u - offset) as usize, (v - offset) as usize);
        let key = (a.min(b), a.max(b));
        if !self.seen.insert(key) {
            return Err(Error::parse(line, ParseErrorKind::DuplicateEdge(u, v)));
        }
        self.edges.push(key);
        Ok(())
    }
}

fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut collector: Option<EdgeCollector> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let toks: Vec<&str> = raw.split_whitespace().collect();
        match toks.first().copied() {
            None | Some("c") => continue,
            Some("p") => {
                if header.is_some() {
                    return Err(Error::parse(line, ParseErrorKind::MalformedHeader("second header".into())));
                }
                if toks.len() != 4 || !(toks[1] == "edge" || toks[1] == "col") {
                    return Err(Error::parse(line, ParseErrorKind::MalformedHeader(raw.trim().to_string())));
                }
                let n = parse_int(toks[2], line)?;
                let m = parse_int(toks[3], line)?;
                if n < 0 || m < 0 {
                    return Err(Error::parse(line, ParseErrorKind::MalformedHeader(raw.trim().to_string())));
                }
                header = Some((n as usize, m as usize, line));
                collector = Some(EdgeCollector::new(n as usize));
            }
            Some("e") => {
                if toks.len() != 3 {
                    return Err(Error::parse(line, ParseErrorKind::MalformedLine(raw.trim().to_string())));
                }
                let u = parse_int(toks[1], line)?;
                let v = parse_int(toks[2], line)?;
                if u == v {
                    return Err(Error::parse(line, ParseErrorKind::SelfLoop(u)));
                }
                match collector.as_mut() {
                    Some(c) => c.push(line, u, v, 1)?,
                    None => return Err(Error::parse(line, ParseErrorKind::MissingHeader)),
                }
            }
            Some(_) => {
                return Err(Error::parse(line, ParseErrorKind::MalformedLine(raw.trim().to_string())));
            }
        }
    }
    let (n, m, hline) = header.ok_or(Error::parse(1, ParseErrorKind::MissingHeader))?;
    let collector = collector.expect("collector exists with header");
    if collector.edges.len() != m {
        return Err(Error::parse(
            hline,
            ParseErrorKind::CountMismatch { expected: m, found: collector.edges.len() },
        ));
    }
    Graph::from_edges(n, collector.edges)
}

fn parse_plain(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, head) = lines.next().ok_or(Error::parse(1, ParseErrorKind::MissingHeader))?;
    let toks: Vec<&str> = head.split_whitespace().collect();
    if toks.len() != 2 {
        return Err(Error::parse(hline, ParseErrorKind::MalformedHeader(head.to_string())));
    }
    let n = parse_int(toks[0], hline)?;
    let m = parse_int(toks[1], hline)?;
    if n < 0 || m < 0 {
        return Err(Error::parse(hline, ParseErrorKind::MalformedHeader(head.to_string())));
    }
    let mut collector = EdgeCollector::new(n as usize);
    for (line, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(Error::parse(line, ParseErrorKind::MalformedLine(l.to_string())));
        }
        let u = parse_int(toks[0], line)?;
        let v = parse_int(toks[1], line)?;
        collector.push(line, u, v, 0)?;
    }
    if collector.edges.len() != m as usize {
        return Err(Error::parse(
            hline,
            ParseErrorKind::CountMismatch { expected: m as usize, found: collector.edges.len() },
        ));
    }
    Graph::from_edges(n as usize, collector.edges)
}

/// Named small graphs used throughout tests and examples.
pub mod named {
    use super::Graph;

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3);
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    /// Star with center 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).unwrap()
    }
}
