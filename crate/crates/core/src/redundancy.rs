//! Redundant/irredundant classification, private neighbours and the red/blue
//! split of a redundant part.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// The IR/RN bipartition of a graph together with its irredundant components.
#[derive(Clone, Debug)]
pub struct Classification {
    pub ir: VertexSet,
    pub rn: VertexSet,
    is_ir: Vec<bool>,
    /// For redundant y, an irredundant x with N[x] ⊆ N[y].
    witness: Vec<Option<usize>>,
    /// Irredundant components ordered by minimum vertex.
    pub components: Vec<VertexSet>,
    comp_of: Vec<Option<usize>>,
    /// For redundant a, every component a is partially adjacent to.
    partial: Vec<Vec<usize>>,
}

impl Classification {
    pub fn n(&self) -> usize {
        self.is_ir.len()
    }

    pub fn is_irredundant(&self, v: usize) -> bool {
        self.is_ir[v]
    }

    pub fn is_redundant(&self, v: usize) -> bool {
        !self.is_ir[v]
    }

    pub fn witness(&self, y: usize) -> Option<usize> {
        self.witness[y]
    }

    /// Component index of an irredundant vertex.
    pub fn comp_of(&self, v: usize) -> Option<usize> {
        self.comp_of[v]
    }

    /// All components the redundant vertex `a` is partially adjacent to.
    pub fn partial_components(&self, a: usize) -> &[usize] {
        &self.partial[a]
    }

    /// `C^a`: the unique component `a` is partially adjacent to. More than one
    /// such component cannot occur in a P9-free chordal graph.
    pub fn partial_component(&self, a: usize) -> Result<Option<usize>> {
        match self.partial[a].as_slice() {
            [] => Ok(None),
            [c] => Ok(Some(*c)),
            many => Err(Error::NotInClass(format!(
                "redundant vertex {a} is partially adjacent to {} irredundant components",
                many.len()
            ))),
        }
    }

    /// Fails when some redundant vertex has several partial components.
    pub fn check_partial_unique(&self) -> Result<()> {
        for a in self.rn.iter() {
            self.partial_component(a)?;
        }
        Ok(())
    }
}

/// Splits `V(G)` into irredundant and redundant vertices.
///
/// v is redundant iff some u ≠ v has N[u] ⊊ N[v], or N[u] = N[v] with u < v.
pub fn classify(g: &Graph) -> Classification {
    let n = g.n();
    let mut is_ir = vec![false; n];
    let mut witness = vec![None; n];
    for v in 0..n {
        // the (degree, index)-least u with N[u] ⊆ N[v] is irredundant
        let row = g.closed_row(v);
        let mut best = v;
        for &u in g.neighbors(v) {
            if (g.degree(u), u) < (g.degree(best), best) && g.closed_row(u).is_subset(row) {
                best = u;
            }
        }
        if best == v {
            is_ir[v] = true;
        } else {
            witness[v] = Some(best);
        }
    }
    let ir: VertexSet = (0..n).filter(|&v| is_ir[v]).collect();
    let rn: VertexSet = (0..n).filter(|&v| !is_ir[v]).collect();
    let components = g.connected_components(&ir);
    let mut comp_of = vec![None; n];
    for (i, c) in components.iter().enumerate() {
        for v in c.iter() {
            comp_of[v] = Some(i);
        }
    }
    let mut partial = vec![Vec::new(); n];
    let mut hits = vec![0usize; components.len()];
    for a in rn.iter() {
        let touched: Vec<usize> = g.neighbors(a).iter().filter_map(|&y| comp_of[y]).collect();
        for &i in &touched {
            hits[i] += 1;
        }
        for &i in &touched {
            if hits[i] > 0 {
                if hits[i] < components[i].len() {
                    partial[a].push(i);
                }
                hits[i] = 0;
            }
        }
        partial[a].sort_unstable();
    }
    Classification { ir, rn, is_ir, witness, components, comp_of, partial }
}

/// `{u : N[u] ∩ d = {x}}`; x itself may be among them.
pub fn private_neighbors(g: &Graph, d: &VertexSet, x: usize) -> VertexSet {
    g.closed_neighborhood(x)
        .iter()
        .filter(|&u| {
            let row = g.closed_row(u);
            d.iter().all(|y| y == x || !row.contains(y))
        })
        .collect()
}

/// Irredundant private neighbours `Priv_IR(d, x)`.
pub fn ir_private_neighbors(g: &Graph, cls: &Classification, d: &VertexSet, x: usize) -> VertexSet {
    private_neighbors(g, d, x).iter().filter(|&u| cls.is_irredundant(u)).collect()
}

/// Red and blue elements of a redundant part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RedBluePartition {
    pub blue: VertexSet,
    pub red: VertexSet,
    /// component index -> red elements with an irredundant private there
    pub red_by_component: BTreeMap<usize, VertexSet>,
    /// a -> Priv_IR(A, a)
    pub priv_ir: BTreeMap<usize, VertexSet>,
}

/// Blue elements keep an irredundant private neighbour inside a component
/// that A dominates entirely; the remaining elements are red.
pub fn red_blue(g: &Graph, cls: &Classification, a_set: &VertexSet) -> RedBluePartition {
    let dom = g.closed_neighborhood_mask(a_set);
    let full: Vec<bool> = cls.components.iter().map(|c| c.iter().all(|v| dom[v])).collect();
    let mut blue = VertexSet::new();
    let mut red = VertexSet::new();
    let mut red_by_component: BTreeMap<usize, VertexSet> = BTreeMap::new();
    let mut priv_ir = BTreeMap::new();
    for a in a_set.iter() {
        let p = ir_private_neighbors(g, cls, a_set, a);
        let is_blue = p.iter().any(|u| cls.comp_of(u).is_some_and(|i| full[i]));
        if is_blue {
            blue.insert(a);
        } else {
            red.insert(a);
            for u in p.iter() {
                let i = cls.comp_of(u).expect("irredundant vertex has a component");
                red_by_component.entry(i).or_default().insert(a);
            }
        }
        priv_ir.insert(a, p);
    }
    RedBluePartition { blue, red, red_by_component, priv_ir }
}
