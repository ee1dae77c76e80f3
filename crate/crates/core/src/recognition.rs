//! Recognition of chordal, P_k-free and trivially perfect graphs, and the tree
//! poset of a trivially perfect component.

use std::collections::VecDeque;

use rand::Rng;
use thiserror::Error;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Outcome of a recognition test; the negative case carries a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recognition {
    Yes,
    /// Vertices of a forbidden induced subgraph, in path or cycle order.
    No(Vec<usize>),
}

impl Recognition {
    pub fn holds(&self) -> bool {
        matches!(self, Recognition::Yes)
    }

    pub fn witness(&self) -> Option<&[usize]> {
        match self {
            Recognition::Yes => None,
            Recognition::No(w) => Some(w),
        }
    }
}

/// Default node budget for [`is_pk_free`].
pub const DEFAULT_PATH_BUDGET: u64 = 200_000_000;

/// Maximum cardinality search; returns the visiting order.
fn mcs_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut done = vec![false; n];
    // buckets[w] holds candidates of weight w, with lazy deletion.
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    buckets[0] = (0..n).rev().collect();
    let mut top = 0usize;
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let v = loop {
            match buckets[top].pop() {
                Some(v) if !done[v] && weight[v] == top => break v,
                Some(_) => continue,
                None => top -= 1,
            }
        };
        done[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if !done[w] {
                weight[w] += 1;
                buckets[weight[w]].push(w);
                if weight[w] > top {
                    top = weight[w];
                }
            }
        }
    }
    order
}

/// Checks whether `peo` is a perfect elimination ordering. On failure returns
/// a vertex together with two non-adjacent later neighbors.
fn check_peo(g: &Graph, peo: &[usize]) -> Option<(usize, usize, usize)> {
    let n = g.n();
    let mut pos = vec![0usize; n];
    for (i, &v) in peo.iter().enumerate() {
        pos[v] = i;
    }
    for &v in peo {
        let later: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| pos[w] > pos[v]).collect();
        let Some(&p) = later.iter().min_by_key(|&&w| pos[w]) else { continue };
        for &w in &later {
            if w != p && !g.adjacent(p, w) {
                return Some((v, p, w));
            }
        }
    }
    None
}

/// Shortest `u`–`w` path avoiding `N[v]` except at its endpoints.
fn path_around(g: &Graph, v: usize, u: usize, w: usize) -> Option<Vec<usize>> {
    let n = g.n();
    let mut blocked = vec![false; n];
    blocked[v] = true;
    for &x in g.neighbors(v) {
        blocked[x] = true;
    }
    blocked[w] = false;
    let mut prev = vec![usize::MAX; n];
    let mut queue = VecDeque::from([u]);
    prev[u] = u;
    while let Some(x) = queue.pop_front() {
        if x == w {
            let mut path = vec![w];
            let mut cur = w;
            while cur != u {
                cur = prev[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for &y in g.neighbors(x) {
            if !blocked[y] && prev[y] == usize::MAX {
                prev[y] = x;
                queue.push_back(y);
            }
        }
    }
    None
}

fn hole_through(g: &Graph, v: usize, u: usize, w: usize) -> Option<Vec<usize>> {
    let path = path_around(g, v, u, w)?;
    let mut cycle = vec![v];
    cycle.extend(path);
    Some(normalize_cycle(cycle))
}

/// Rotates a cycle to start at its minimum vertex, heading to the smaller
/// of its two neighbours.
fn normalize_cycle(mut cycle: Vec<usize>) -> Vec<usize> {
    let k = cycle.len();
    let i = (0..k).min_by_key(|&i| cycle[i]).unwrap();
    cycle.rotate_left(i);
    if k > 2 && cycle[k - 1] < cycle[1] {
        cycle[1..].reverse();
    }
    cycle
}

/// Chordality test via maximum cardinality search and a verified elimination
/// ordering. Non-chordal graphs yield a chordless cycle of length at least 4.
pub fn is_chordal(g: &Graph) -> Recognition {
    let mut peo = mcs_order(g);
    peo.reverse();
    let Some((v, u, w)) = check_peo(g, &peo) else {
        return Recognition::Yes;
    };
    if let Some(hole) = hole_through(g, v, u, w) {
        return Recognition::No(hole);
    }
    for v in 0..g.n() {
        let nb = g.neighbors(v);
        for (i, &u) in nb.iter().enumerate() {
            for &w in &nb[i + 1..] {
                if !g.adjacent(u, w) {
                    if let Some(hole) = hole_through(g, v, u, w) {
                        return Recognition::No(hole);
                    }
                }
            }
        }
    }
    unreachable!("elimination check failed but no hole exists")
}

/// A perfect elimination ordering when `g` is chordal.
pub fn perfect_elimination_ordering(g: &Graph) -> Option<Vec<usize>> {
    let mut peo = mcs_order(g);
    peo.reverse();
    check_peo(g, &peo).is_none().then_some(peo)
}

struct PathSearch<'a> {
    g: &'a Graph,
    k: usize,
    path: Vec<usize>,
    // how many non-final path vertices have x in their closed neighbourhood
    covered: Vec<u32>,
    on_path: Vec<bool>,
    nodes: u64,
    budget: u64,
}

impl PathSearch<'_> {
    fn extend(&mut self) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded { budget: self.budget });
        }
        if self.path.len() == self.k {
            return Ok(true);
        }
        let last = *self.path.last().unwrap();
        let g = self.g;
        for &w in g.neighbors(last) {
            if self.on_path[w] || self.covered[w] > 0 {
                continue;
            }
            self.covered[last] += 1;
            for &x in g.neighbors(last) {
                self.covered[x] += 1;
            }
            self.path.push(w);
            self.on_path[w] = true;
            if self.extend()? {
                return Ok(true);
            }
            self.on_path[w] = false;
            self.path.pop();
            self.covered[last] -= 1;
            for &x in g.neighbors(last) {
                self.covered[x] -= 1;
            }
        }
        Ok(false)
    }
}

/// Exact search for an induced path on `k` vertices, bounded by `budget`
/// search nodes.
pub fn is_pk_free(g: &Graph, k: usize, budget: u64) -> Result<Recognition> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    if k > g.n() {
        return Ok(Recognition::Yes);
    }
    let mut search = PathSearch {
        g,
        k,
        path: Vec::with_capacity(k),
        covered: vec![0; g.n()],
        on_path: vec![false; g.n()],
        nodes: 0,
        budget,
    };
    for v in 0..g.n() {
        search.path.push(v);
        search.on_path[v] = true;
        if search.extend()? {
            return Ok(Recognition::No(search.path));
        }
        search.on_path[v] = false;
        search.path.pop();
    }
    Ok(Recognition::Yes)
}

/// Grows `trials` random maximal induced paths and reports the first one
/// reaching `k` vertices. A `Yes` is evidence, not proof.
pub fn spot_check_pk_free<R: Rng>(g: &Graph, k: usize, trials: usize, rng: &mut R) -> Recognition {
    let n = g.n();
    if n == 0 || k > n {
        return Recognition::Yes;
    }
    let mut covered = vec![0u32; n];
    for _ in 0..trials {
        let start = rng.random_range(0..n);
        let mut path = vec![start];
        // extend at both ends alternately
        let mut touched: Vec<usize> = Vec::new();
        let mark = |x: usize, covered: &mut Vec<u32>, touched: &mut Vec<usize>| {
            covered[x] += 1;
            touched.push(x);
        };
        mark(start, &mut covered, &mut touched);
        for &x in g.neighbors(start) {
            mark(x, &mut covered, &mut touched);
        }
        let mut ends = [start, start];
        let mut stuck = [false, false];
        let mut side = 0;
        while path.len() < k && !(stuck[0] && stuck[1]) {
            side ^= 1;
            if stuck[side] {
                continue;
            }
            let end = ends[side];
            // a valid extension touches exactly one path vertex: the end itself
            let options: Vec<usize> = g
                .neighbors(end)
                .iter()
                .copied()
                .filter(|&w| covered[w] == 1 && !path.contains(&w))
                .collect();
            if options.is_empty() {
                stuck[side] = true;
                continue;
            }
            let w = options[rng.random_range(0..options.len())];
            mark(w, &mut covered, &mut touched);
            for &x in g.neighbors(w) {
                mark(x, &mut covered, &mut touched);
            }
            if side == 0 {
                path.insert(0, w);
            } else {
                path.push(w);
            }
            ends[side] = w;
            if path.len() == 2 {
                ends = [path[0], path[1]];
            }
        }
        for x in touched {
            covered[x] -= 1;
        }
        if path.len() >= k {
            return Recognition::No(path);
        }
    }
    Recognition::Yes
}

/// Why a connected graph has no tree poset.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum NotTriviallyPerfect {
    #[error("induced P4 {0:?}")]
    InducedP4([usize; 4]),
    #[error("induced C4 {0:?}")]
    InducedC4([usize; 4]),
    #[error("graph is not connected")]
    Disconnected,
}

impl From<NotTriviallyPerfect> for Error {
    fn from(e: NotTriviallyPerfect) -> Self {
        Error::NotInClass(format!("not trivially perfect: {e}"))
    }
}

/// Rooted tree order of a trivially perfect component.
///
/// Nodes are local indices `0..k` into `verts`, the sorted vertex list of the
/// component, so local order agrees with global order.
#[derive(Clone, Debug)]
pub struct TreePoset {
    verts: Vec<usize>,
    root: usize,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    depth: Vec<usize>,
    /// preorder position of x
    pre: Vec<usize>,
    /// preorder position of the last vertex in the subtree of x
    last: Vec<usize>,
    preorder: Vec<usize>,
    leaves: Vec<usize>,
    /// leaves below x are `leaves[leaf_range[x].0..leaf_range[x].1]`
    leaf_range: Vec<(usize, usize)>,
}

impl TreePoset {
    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    pub fn vertices(&self) -> &[usize] {
        &self.verts
    }

    pub fn global(&self, x: usize) -> usize {
        self.verts[x]
    }

    pub fn local(&self, v: usize) -> Option<usize> {
        self.verts.binary_search(&v).ok()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, x: usize) -> Option<usize> {
        self.parent[x]
    }

    pub fn children(&self, x: usize) -> &[usize] {
        &self.children[x]
    }

    pub fn depth(&self, x: usize) -> usize {
        self.depth[x]
    }

    /// Maximal elements in preorder.
    pub fn leaves(&self) -> &[usize] {
        &self.leaves
    }

    pub fn is_leaf(&self, x: usize) -> bool {
        self.children[x].is_empty()
    }

    pub fn preorder(&self) -> &[usize] {
        &self.preorder
    }

    /// Leaves `t` with `x <= t`.
    pub fn leaves_below(&self, x: usize) -> &[usize] {
        let (lo, hi) = self.leaf_range[x];
        &self.leaves[lo..hi]
    }

    /// Index range of `leaves_below(x)` within `leaves()`.
    pub fn leaf_range(&self, x: usize) -> (usize, usize) {
        self.leaf_range[x]
    }

    /// `x <= y`: x lies on the root-to-y path.
    #[inline]
    pub fn le(&self, x: usize, y: usize) -> bool {
        self.pre[x] <= self.pre[y] && self.pre[y] <= self.last[x]
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.le(x, y)
    }

    #[inline]
    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.le(x, y) || self.le(y, x)
    }

    /// Strict ancestors of x, nearest first.
    pub fn ancestors(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        std::iter::successors(self.parent[x], move |&p| self.parent[p])
    }

    /// Preorder position; the subtree of x occupies
    /// `preorder()[pre(x)..pre(x) + subtree_size(x)]`.
    pub fn pre(&self, x: usize) -> usize {
        self.pre[x]
    }

    pub fn subtree_size(&self, x: usize) -> usize {
        self.last[x] - self.pre[x] + 1
    }

    /// Vertices y with x <= y.
    pub fn subtree(&self, x: usize) -> &[usize] {
        let p = self.pre[x];
        &self.preorder[p..p + self.subtree_size(x)]
    }
}

/// Tree poset of the connected trivially perfect graph `h`.
pub fn build_tree_poset(h: &Graph) -> Result<TreePoset, NotTriviallyPerfect> {
    build_tree_poset_on(h, &h.all_vertices())
}

/// Tree poset of `g[comp]`, reported in local indices of `comp`.
pub fn build_tree_poset_on(g: &Graph, comp: &VertexSet) -> Result<TreePoset, NotTriviallyPerfect> {
    let verts: Vec<usize> = comp.as_slice().to_vec();
    let k = verts.len();
    if k == 0 {
        return Err(NotTriviallyPerfect::Disconnected);
    }
    let h = g.induced_subgraph(&verts);
    let mut parent = vec![None; k];
    let mut children = vec![Vec::new(); k];
    let mut depth = vec![0usize; k];
    let mut inside = vec![false; k];
    let mut deg_in = vec![0usize; k];
    // (parent node, vertex set of the piece)
    let mut stack: Vec<(Option<usize>, Vec<usize>)> = vec![(None, (0..k).collect())];
    let mut root = None;
    if !h.is_connected() {
        return Err(NotTriviallyPerfect::Disconnected);
    }
    while let Some((par, piece)) = stack.pop() {
        for &x in &piece {
            inside[x] = true;
        }
        for &x in &piece {
            deg_in[x] = h.neighbors(x).iter().filter(|&&y| inside[y]).count();
        }
        let universal = piece.iter().copied().find(|&x| deg_in[x] + 1 == piece.len());
        let Some(u) = universal else {
            let witness = no_universal_witness(&h, &piece, &inside, &deg_in);
            return Err(match witness {
                Ok(p4) => NotTriviallyPerfect::InducedP4(p4.map(|x| verts[x])),
                Err(c4) => NotTriviallyPerfect::InducedC4(c4.map(|x| verts[x])),
            });
        };
        match par {
            None => root = Some(u),
            Some(p) => {
                parent[u] = Some(p);
                depth[u] = depth[p] + 1;
                children[p].push(u);
            }
        }
        for &x in &piece {
            inside[x] = false;
        }
        let rest: VertexSet = piece.iter().copied().filter(|&x| x != u).collect();
        let comps = h.connected_components(&rest);
        // pushed in reverse so smaller components are processed first
        for c in comps.into_iter().rev() {
            stack.push((Some(u), c.into_vec()));
        }
    }
    for list in &mut children {
        list.sort_unstable();
    }
    let root = root.expect("nonempty component has a root");

    let mut pre = vec![0usize; k];
    let mut last = vec![0usize; k];
    let mut preorder = Vec::with_capacity(k);
    let mut leaves = Vec::new();
    let mut leaf_range = vec![(0usize, 0usize); k];
    let mut dfs: Vec<(usize, usize)> = Vec::new();
    let mut next = Some(root);
    loop {
        if let Some(x) = next.take() {
            pre[x] = preorder.len();
            preorder.push(x);
            leaf_range[x].0 = leaves.len();
            if children[x].is_empty() {
                leaves.push(x);
            }
            dfs.push((x, 0));
        }
        let Some(top) = dfs.last_mut() else { break };
        let x = top.0;
        if top.1 < children[x].len() {
            next = Some(children[x][top.1]);
            top.1 += 1;
        } else {
            last[x] = preorder.len() - 1;
            leaf_range[x].1 = leaves.len();
            dfs.pop();
        }
    }
    Ok(TreePoset { verts, root, parent, children, depth, pre, last, preorder, leaves, leaf_range })
}

/// Witness for a connected piece without a universal vertex: `Ok` is an
/// induced P4, `Err` an induced C4.
fn no_universal_witness(
    h: &Graph,
    piece: &[usize],
    inside: &[bool],
    deg_in: &[usize],
) -> Result<[usize; 4], [usize; 4]> {
    let v = *piece.iter().max_by_key(|&&x| (deg_in[x], std::cmp::Reverse(x))).unwrap();
    // a, b with v - a - b and b not adjacent to v
    let (a, b) = h
        .neighbors(v)
        .iter()
        .filter(|&&a| inside[a])
        .find_map(|&a| {
            h.neighbors(a)
                .iter()
                .find(|&&b| inside[b] && b != v && !h.adjacent(v, b))
                .map(|&b| (a, b))
        })
        .expect("connected piece without universal vertex has distance-2 pair");
    let c = h
        .neighbors(v)
        .iter()
        .copied()
        .find(|&c| inside[c] && c != a && !h.adjacent(c, a))
        .expect("maximum degree forces a neighbour of v outside N(a)");
    if h.adjacent(c, b) {
        Err([c, v, a, b])
    } else {
        Ok([c, v, a, b])
    }
}
