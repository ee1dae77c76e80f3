#![allow(dead_code)]

use domdelay::dom_enum::is_minimal_dominating;
use domdelay::generators::{exhaustive_corpus, gen_pk_free_chordal};
use domdelay::oracle::{brute_drn, brute_is_minimal_dominating};
use domdelay::recognition::{build_tree_poset_on, is_chordal, is_pk_free, DEFAULT_PATH_BUDGET};
use domdelay::redundancy::{classify, Classification};
use domdelay::{Graph, VertexSet};

pub type Check = Result<(), String>;

pub fn in_class(g: &Graph, k: usize) -> bool {
    is_chordal(g).holds() && is_pk_free(g, k, DEFAULT_PATH_BUDGET).unwrap().holds()
}

pub fn chordal_corpus() -> Vec<Graph> {
    exhaustive_corpus(7).unwrap().into_iter().filter(|g| is_chordal(g).holds()).collect()
}

/// Seeded graphs with 8 or 9 vertices for each k in 7..=9.
pub fn larger_samples(per_k: u64) -> Vec<(usize, Graph)> {
    let mut out = Vec::new();
    for k in 7..=9 {
        for seed in 0..per_k {
            out.push((k, gen_pk_free_chordal(8 + seed as usize % 2, k, seed).unwrap()));
        }
    }
    out
}

fn closed(g: &Graph, v: usize) -> VertexSet {
    g.closed_neighborhood(v)
}

/// Independence system on P7-free inputs, accessibility on P8-free ones.
pub fn set_system(g: &Graph) -> Check {
    let fam = brute_drn(g).map_err(|e| e.to_string())?;
    if in_class(g, 7) {
        for a in &fam {
            for x in a.iter() {
                if !fam.contains(&a.without(x)) {
                    return Err(format!("{a} minus {x} left D_RN on {}", g.to_plain()));
                }
            }
        }
    }
    if in_class(g, 8) {
        for a in fam.iter().filter(|a| !a.is_empty()) {
            if !a.iter().any(|x| fam.contains(&a.without(x))) {
                return Err(format!("{a} has no deletable element on {}", g.to_plain()));
            }
        }
    }
    Ok(())
}

/// IR(G) dominates G and the empty set is a redundant part.
pub fn ir_dominates(g: &Graph, cls: &Classification) -> Check {
    if !g.dominates_all(&cls.ir) {
        return Err(format!("IR does not dominate {}", g.to_plain()));
    }
    if g.n() <= 12 && !brute_drn(g).map_err(|e| e.to_string())?.contains(&VertexSet::new()) {
        return Err(format!("empty set missing from D_RN on {}", g.to_plain()));
    }
    Ok(())
}

/// The private-neighbour characterization against the definition.
pub fn ir_private(g: &Graph, cls: &Classification, subsets: impl IntoIterator<Item = VertexSet>) -> Check {
    for d in subsets {
        if is_minimal_dominating(g, cls, &d) != brute_is_minimal_dominating(g, &d) {
            return Err(format!("minimality differs for {d} on {}", g.to_plain()));
        }
    }
    Ok(())
}

pub fn all_subsets(n: usize) -> impl Iterator<Item = VertexSet> {
    (0u32..1 << n).map(move |mask| (0..n).filter(|&v| mask >> v & 1 == 1).collect())
}

fn induces_path(g: &Graph, p: &[usize]) -> bool {
    let mut seen = VertexSet::new();
    for &v in p {
        if !seen.insert(v) {
            return false;
        }
    }
    (0..p.len()).all(|i| (i + 1..p.len()).all(|j| g.adjacent(p[i], p[j]) == (j == i + 1)))
}

/// Adjacent irredundant vertices sit in the middle of an induced P6, and in a
/// chordal graph every admissible choice of outer vertices gives one.
pub fn ir_path(g: &Graph, cls: &Classification) -> Check {
    let chordal = is_chordal(g).holds();
    for (u, v) in g.edges() {
        if !cls.is_irredundant(u) || !cls.is_irredundant(v) {
            continue;
        }
        for (u, v) in [(u, v), (v, u)] {
            let (nu, nv) = (closed(g, u), closed(g, v));
            let u1s = nu.difference(&nv);
            let v1s = nv.difference(&nu);
            let mut found = false;
            for u1 in u1s.iter() {
                for u2 in closed(g, u1).difference(&nu).iter() {
                    for v1 in v1s.iter() {
                        for v2 in closed(g, v1).difference(&nv).iter() {
                            found = true;
                            if chordal && !induces_path(g, &[u2, u1, u, v, v1, v2]) {
                                return Err(format!(
                                    "{u2} {u1} {u} {v} {v1} {v2} is not an induced P6 on {}",
                                    g.to_plain()
                                ));
                            }
                        }
                    }
                }
            }
            if !found {
                return Err(format!("edge {u} {v} has no outer vertices on {}", g.to_plain()));
            }
        }
    }
    Ok(())
}

/// Components of a P_k-free chordal graph are P_{k-4}-free; for k = 7 they
/// are cliques and for k = 8 they carry a tree poset.
pub fn pk_pk4(g: &Graph, cls: &Classification, k: usize) -> Check {
    for c in &cls.components {
        let h = g.induced_subgraph(c.as_slice());
        if !is_pk_free(&h, k - 4, DEFAULT_PATH_BUDGET).unwrap().holds() {
            return Err(format!("component {c} has an induced P{} on {}", k - 4, g.to_plain()));
        }
        if k == 7 && h.m() != h.n() * (h.n() - 1) / 2 {
            return Err(format!("component {c} is not a clique on {}", g.to_plain()));
        }
        if k == 8 && build_tree_poset_on(g, c).is_err() {
            return Err(format!("component {c} has no tree poset on {}", g.to_plain()));
        }
    }
    Ok(())
}

/// All induced paths of G from u to v.
fn induced_paths(g: &Graph, u: usize, v: usize) -> Vec<Vec<usize>> {
    fn rec(g: &Graph, v: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let last = *path.last().unwrap();
        if last == v {
            out.push(path.clone());
            return;
        }
        for &w in g.neighbors(last) {
            let k = path.len();
            if path.contains(&w) || path[..k - 1].iter().any(|&p| g.adjacent(p, w)) {
                continue;
            }
            path.push(w);
            rec(g, v, path, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    rec(g, v, &mut vec![u], &mut out);
    out
}

/// `N(a) ∩ C` is connected and holds every induced path between its members.
pub fn na_connected(g: &Graph, cls: &Classification) -> Check {
    for a in cls.rn.iter() {
        let na: VertexSet = g.neighbors(a).iter().copied().collect();
        for c in &cls.components {
            let inside = na.intersection(c);
            if inside.is_empty() {
                continue;
            }
            if g.connected_components(&inside).len() != 1 {
                return Err(format!("N({a}) ∩ {c} is disconnected on {}", g.to_plain()));
            }
            let members = inside.as_slice();
            for (i, &u) in members.iter().enumerate() {
                for &v in &members[i + 1..] {
                    for p in induced_paths(g, u, v) {
                        if p.iter().any(|&x| !na.contains(x)) {
                            return Err(format!("path {p:?} leaves N({a}) on {}", g.to_plain()));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// On P9-free chordal graphs a redundant vertex is partial to at most one component.
pub fn na_complete(g: &Graph, cls: &Classification) -> Check {
    for a in cls.rn.iter() {
        if cls.partial_components(a).len() > 1 {
            return Err(format!("{a} is partial to {:?} on {}", cls.partial_components(a), g.to_plain()));
        }
    }
    Ok(())
}

/// Every structural check that applies to g.
pub fn structural(g: &Graph, subsets: Option<Vec<VertexSet>>) -> Check {
    let cls = classify(g);
    ir_dominates(g, &cls)?;
    let subsets = subsets.unwrap_or_else(|| if g.n() <= 6 { all_subsets(g.n()).collect() } else { Vec::new() });
    ir_private(g, &cls, subsets)?;
    if is_chordal(g).holds() {
        ir_path(g, &cls)?;
        na_connected(g, &cls)?;
        for k in 7..=9 {
            if in_class(g, k) {
                pk_pk4(g, &cls, k)?;
            }
        }
        if in_class(g, 9) {
            na_complete(g, &cls)?;
        }
    }
    Ok(())
}
