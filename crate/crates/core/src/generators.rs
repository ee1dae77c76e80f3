//! Seeded random and exhaustive graph corpora.
//!
//! Every generator is a pure function of its parameters and seed. Random
//! streams come from ChaCha8 keyed by the seed, with one stream per graph
//! index so corpora can be regenerated piecewise.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::recognition::{is_chordal, is_pk_free, spot_check_pk_free, DEFAULT_PATH_BUDGET};

/// Largest n for which path-freeness is obtained by rejection sampling.
pub const REJECTION_MAX_N: usize = 40;

/// Attempts allowed before rejection sampling gives up.
pub const REJECTION_ATTEMPTS: usize = 20_000;

/// Random stream number `index` of `seed`.
pub fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn edges_to_graph(n: usize, adj: &[Vec<usize>]) -> Graph {
    let edges = (0..n).flat_map(|v| adj[v].iter().filter(move |&&w| w < v).map(move |&w| (w, v)));
    Graph::from_edges(n, edges).expect("generated edges are valid")
}

/// Random chordal graph: vertex i joins a random subset of a maximal clique
/// of the graph on `0..i`, always including the clique's seed vertex.
pub fn gen_chordal(n: usize, density: f64, seed: u64) -> Result<Graph> {
    gen_chordal_with(&mut rng_for(seed, 0), n, density)
}

pub fn gen_chordal_with<R: Rng>(rng: &mut R, n: usize, density: f64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidArgument("graph needs at least one vertex".into()));
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::InvalidArgument(format!("density {density} outside [0, 1]")));
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    grow_chordal(rng, &mut adj, 1, density);
    let g = edges_to_graph(n, &adj);
    debug_assert!(is_chordal(&g).holds());
    Ok(g)
}

/// Adds vertices `start..` one at a time, each joined to a random subset of a
/// maximal clique through a random earlier vertex.
fn grow_chordal<R: Rng>(rng: &mut R, adj: &mut [Vec<usize>], start: usize, density: f64) {
    for i in start..adj.len() {
        let v = rng.random_range(0..i);
        let mut others = adj[v].clone();
        others.shuffle(rng);
        let mut clique = vec![v];
        for w in others {
            if clique.iter().all(|&c| adj[w].contains(&c)) {
                clique.push(w);
            }
        }
        for &c in &clique {
            if c == v || rng.random_bool(density) {
                adj[i].push(c);
                adj[c].push(i);
            }
        }
    }
}

/// A random trivially perfect core in which some vertices receive a spoke
/// with a pendant leaf, grown further by clique attachments.
fn gen_cored_with<R: Rng>(rng: &mut R, n: usize, density: f64) -> Graph {
    let core = if n >= 7 { rng.random_range(3..=n.div_ceil(3).max(3)) } else { rng.random_range(1..=n.div_ceil(3)) };
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut parent: Vec<Option<usize>> = vec![None; core];
    let link = |adj: &mut [Vec<usize>], u: usize, v: usize| {
        adj[u].push(v);
        adj[v].push(u);
    };
    for v in 1..core {
        let p = rng.random_range(0..v);
        parent[v] = Some(p);
        let mut a = Some(p);
        while let Some(x) = a {
            link(&mut adj, x, v);
            a = parent[x];
        }
    }
    let mut next = core;
    let mut order: Vec<usize> = (0..core).collect();
    order.shuffle(rng);
    for x in order {
        if next + 2 > n {
            break;
        }
        if rng.random_bool(0.1) {
            continue;
        }
        let s = next;
        link(&mut adj, s, x);
        let mut a = parent[x];
        while let Some(y) = a {
            if rng.random_bool(0.15) {
                link(&mut adj, s, y);
            }
            a = parent[y];
        }
        link(&mut adj, s, s + 1);
        next += 2;
    }
    grow_chordal(rng, &mut adj, next.max(1), density.max(0.8));
    edges_to_graph(n, &adj)
}

/// Random split graph: a clique on the first half, the rest independent
/// with random nonempty neighbourhoods in the clique.
pub fn gen_split(n: usize, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidArgument("graph needs at least one vertex".into()));
    }
    let mut rng = rng_for(seed, 0);
    let k = n.div_ceil(2);
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for u in 0..k {
        for v in u + 1..k {
            edges.push((u, v));
        }
    }
    for v in k..n {
        let forced = rng.random_range(0..k);
        for u in 0..k {
            if u == forced || rng.random_bool(0.4) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// Random connected trivially perfect graph: each vertex attaches to a random
/// earlier vertex and all of its ancestors in a random rooted forest.
pub fn gen_trivially_perfect(n: usize, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidArgument("graph needs at least one vertex".into()));
    }
    let mut rng = rng_for(seed, 0);
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut edges = Vec::new();
    for v in 1..n {
        let p = rng.random_range(0..v);
        parent[v] = Some(p);
        let mut a = Some(p);
        while let Some(x) = a {
            edges.push((x, v));
            a = parent[x];
        }
    }
    Graph::from_edges(n, edges)
}

/// Connected chordal P_k-free graph for k in 6..=9.
///
/// Up to [`REJECTION_MAX_N`] vertices the graph is rejection-sampled from
/// dense random chordal graphs and checked exactly; larger graphs are built
/// from hubs with pendant leaves and spot-checked.
pub fn gen_pk_free_chordal(n: usize, k: usize, seed: u64) -> Result<Graph> {
    if !(6..=9).contains(&k) {
        return Err(Error::InvalidArgument(format!("k = {k} outside 6..=9")));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("graph needs at least one vertex".into()));
    }
    if n <= REJECTION_MAX_N {
        let mut rng = rng_for(seed, 0);
        for _ in 0..REJECTION_ATTEMPTS {
            let density = rng.random_range(0.0..=1.0);
            let g = if k >= 8 && rng.random_bool(0.7) {
                gen_cored_with(&mut rng, n, density)
            } else {
                gen_chordal_with(&mut rng, n, density)?
            };
            if is_pk_free(&g, k, DEFAULT_PATH_BUDGET)?.holds() {
                return Ok(g);
            }
        }
        return Err(Error::RejectionBudget { attempts: REJECTION_ATTEMPTS });
    }
    let g = hub_graph(n, k, seed);
    debug_assert!(is_chordal(&g).holds());
    let mut rng = rng_for(seed, 1);
    if let crate::recognition::Recognition::No(path) = spot_check_pk_free(&g, k, 200, &mut rng) {
        return Err(Error::NotInClass(format!("generated graph has an induced path {path:?}")));
    }
    Ok(g)
}

/// Hubs with pendant leaves. Every spoke s hangs off one hub and carries
/// one to three pendant leaves. For k = 6 the spokes form a clique; for k = 7
/// the hubs form a clique; for k ≥ 8 the hubs form a trivially perfect graph
/// (a root joined to disjoint cliques).
fn hub_graph(n: usize, k: usize, seed: u64) -> Graph {
    let mut rng = rng_for(seed, 0);
    let mut adj: Vec<Vec<usize>> = Vec::with_capacity(n);
    let link = |adj: &mut Vec<Vec<usize>>, u: usize, v: usize| {
        adj[u].push(v);
        adj[v].push(u);
    };
    let hubs = if k == 6 { 0 } else { ((n as f64 / 3.0).sqrt().ceil() as usize).max(2) };
    for _ in 0..hubs {
        adj.push(Vec::new());
    }
    if k == 7 {
        for u in 0..hubs {
            for v in u + 1..hubs {
                link(&mut adj, u, v);
            }
        }
    } else if k >= 8 {
        // hub 0 is the root, the others are split into cliques of size up to 4
        let mut start = 1;
        while start < hubs {
            let end = (start + rng.random_range(1..=4)).min(hubs);
            for u in start..end {
                link(&mut adj, 0, u);
                for v in u + 1..end {
                    link(&mut adj, u, v);
                }
            }
            start = end;
        }
    }
    let mut spokes = Vec::new();
    while adj.len() < n {
        let remaining = n - adj.len();
        if remaining == 1 && !spokes.is_empty() {
            let s = spokes[rng.random_range(0..spokes.len())];
            adj.push(Vec::new());
            let l = adj.len() - 1;
            link(&mut adj, s, l);
            continue;
        }
        let s = adj.len();
        adj.push(Vec::new());
        if k == 6 {
            for &t in &spokes {
                link(&mut adj, s, t);
            }
        } else {
            let h = rng.random_range(0..hubs);
            link(&mut adj, s, h);
        }
        spokes.push(s);
        let leaves = rng.random_range(1..=3).min(n - adj.len());
        for _ in 0..leaves {
            adj.push(Vec::new());
            let l = adj.len() - 1;
            link(&mut adj, s, l);
        }
    }
    edges_to_graph(n, &adj)
}

/// All connected graphs on 1..=n_max vertices, one per isomorphism class.
pub fn exhaustive_corpus(n_max: usize) -> Result<Vec<Graph>> {
    if n_max > 7 {
        return Err(Error::SizeLimit(format!("exhaustive corpus limited to 7 vertices, got {n_max}")));
    }
    let mut out = Vec::new();
    if n_max == 0 {
        return Ok(out);
    }
    // adjacency as bit rows; every connected graph has a vertex whose removal
    // leaves it connected, so extending level n-1 reaches all of level n
    let mut level: Vec<Vec<u8>> = vec![vec![0]];
    out.push(Graph::empty(1));
    for n in 2..=n_max {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for rows in &level {
            for nb in 1u8..(1 << (n - 1)) {
                let mut r = rows.clone();
                for (v, row) in r.iter_mut().enumerate() {
                    if nb >> v & 1 == 1 {
                        *row |= 1 << (n - 1);
                    }
                }
                r.push(nb);
                if seen.insert(canonical(&r)) {
                    next.push(r);
                }
            }
        }
        for r in &next {
            let edges = (0..n).flat_map(|u| (u + 1..n).filter(move |&v| r[u] >> v & 1 == 1).map(move |v| (u, v)));
            out.push(Graph::from_edges(n, edges)?);
        }
        level = next;
    }
    Ok(out)
}

/// Smallest upper-triangle encoding over vertex orders that respect a
/// degree-based refinement.
fn canonical(rows: &[u8]) -> u32 {
    let n = rows.len();
    let deg: Vec<u32> = rows.iter().map(|r| r.count_ones()).collect();
    let key = |v: usize| {
        let mut nd: Vec<u32> = (0..n).filter(|&w| rows[v] >> w & 1 == 1).map(|w| deg[w]).collect();
        nd.sort_unstable();
        (deg[v], nd)
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| key(v));
    let keys: Vec<_> = order.iter().map(|&v| key(v)).collect();
    let mut classes: Vec<(usize, usize)> = Vec::new();
    let mut i = 0;
    while i < n {
        let mut j = i + 1;
        while j < n && keys[j] == keys[i] {
            j += 1;
        }
        classes.push((i, j));
        i = j;
    }
    let mut best = u32::MAX;
    permute_classes(&mut order, &classes, 0, rows, &mut best);
    best
}

fn permute_classes(order: &mut [usize], classes: &[(usize, usize)], c: usize, rows: &[u8], best: &mut u32) {
    if c == classes.len() {
        let n = order.len();
        let mut code = 0u32;
        for i in 0..n {
            for j in i + 1..n {
                code = code << 1 | u32::from(rows[order[i]] >> order[j] & 1);
            }
        }
        *best = (*best).min(code);
        return;
    }
    let (lo, hi) = classes[c];
    heap_permutations(order, lo, hi - lo, &mut |o| permute_classes(o, classes, c + 1, rows, best));
}

fn heap_permutations(order: &mut [usize], lo: usize, k: usize, f: &mut dyn FnMut(&mut [usize])) {
    if k <= 1 {
        f(order);
        return;
    }
    for i in 0..k - 1 {
        heap_permutations(order, lo, k - 1, f);
        if k.is_multiple_of(2) {
            order.swap(lo + i, lo + k - 1);
        } else {
            order.swap(lo, lo + k - 1);
        }
    }
    heap_permutations(order, lo, k - 1, f);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::redundancy::classify;

    #[test]
    fn corpus_counts() {
        let counts: Vec<usize> = (1..=7)
            .map(|n| exhaustive_corpus(n).unwrap().iter().filter(|g| g.n() == n).count())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112, 853]);
        assert!(exhaustive_corpus(7).unwrap().iter().all(|g| g.is_connected()));
        assert_eq!(exhaustive_corpus(3).unwrap().len(), 4);
    }

    #[test]
    fn chordal_generator() {
        assert_eq!(gen_chordal(1, 0.5, 3).unwrap().n(), 1);
        let k = gen_chordal(6, 1.0, 3).unwrap();
        assert_eq!(k.m(), 15);
        for seed in 0..50 {
            let g = gen_chordal(8, 0.5, seed).unwrap();
            assert!(is_chordal(&g).holds() && g.is_connected());
        }
        assert_eq!(gen_chordal(10, 0.4, 9).unwrap(), gen_chordal(10, 0.4, 9).unwrap());
    }

    #[test]
    fn pk_free_generator_small() {
        for seed in 0..20 {
            let g = gen_pk_free_chordal(10, 7, seed).unwrap();
            assert!(is_pk_free(&g, 7, DEFAULT_PATH_BUDGET).unwrap().holds());
            let cls = classify(&g);
            for c in &cls.components {
                let verts = c.as_slice();
                assert!(verts.iter().all(|&u| verts.iter().all(|&v| u == v || g.adjacent(u, v))));
            }
        }
        assert_eq!(gen_pk_free_chordal(1, 8, 0).unwrap().n(), 1);
    }

    #[test]
    fn hub_graphs_are_in_class() {
        for k in 6..=9 {
            let g = gen_pk_free_chordal(60, k, 5).unwrap();
            assert_eq!(g.n(), 60);
            assert!(g.is_connected() && is_chordal(&g).holds());
            assert!(is_pk_free(&g, k, DEFAULT_PATH_BUDGET).unwrap().holds());
        }
    }

    #[test]
    fn split_and_trivially_perfect() {
        for seed in 0..10 {
            let s = gen_split(9, seed).unwrap();
            assert!(is_chordal(&s).holds() && s.is_connected());
            let t = gen_trivially_perfect(9, seed).unwrap();
            assert!(crate::recognition::build_tree_poset(&t).is_ok());
        }
    }
}
