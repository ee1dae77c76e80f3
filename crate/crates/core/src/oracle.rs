//! Exponential reference implementations working on bit masks.
//!
//! Nothing here calls into the enumeration engines; classification is
//! recomputed from the definition so that the two sides stay independent.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Largest graph accepted by [`brute_dom`] and the families derived from it.
pub const BRUTE_LIMIT: usize = 30;

/// Largest graph accepted by the mask-based searches.
pub const MASK_LIMIT: usize = 128;

type Mask = u128;

pub type Family = BTreeSet<VertexSet>;

fn to_set(mask: Mask) -> VertexSet {
    let mut v = Vec::new();
    let mut m = mask;
    while m != 0 {
        let i = m.trailing_zeros() as usize;
        v.push(i);
        m &= m - 1;
    }
    v.into_iter().collect()
}

fn to_mask(set: &VertexSet) -> Mask {
    set.iter().fold(0, |m, v| m | (1 << v))
}

fn bits(mask: Mask) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

struct Masks {
    n: usize,
    closed: Vec<Mask>,
}

impl Masks {
    fn new(g: &Graph, limit: usize) -> Result<Masks> {
        if g.n() > limit {
            return Err(Error::SizeLimit(format!("{} vertices exceeds the oracle limit of {limit}", g.n())));
        }
        let closed = (0..g.n())
            .map(|v| g.neighbors(v).iter().fold(1 << v, |m, &w| m | (1 << w)))
            .collect();
        Ok(Masks { n: g.n(), closed })
    }

    fn all(&self) -> Mask {
        if self.n == 128 {
            Mask::MAX
        } else {
            (1 << self.n) - 1
        }
    }

    fn dom(&self, d: Mask) -> Mask {
        bits(d).fold(0, |m, v| m | self.closed[v])
    }

    /// Vertices whose closed neighbourhood meets `d` exactly in `{x}`.
    fn private(&self, d: Mask, x: usize) -> Mask {
        let others = d & !(1 << x);
        let stolen = self.dom(others);
        self.closed[x] & !stolen
    }

    fn is_minimal_dominating(&self, d: Mask) -> bool {
        self.dom(d) == self.all() && bits(d).all(|x| self.private(d, x) != 0)
    }

    fn redundant(&self) -> Mask {
        let mut rn = 0;
        for v in 0..self.n {
            for u in 0..self.n {
                if u == v {
                    continue;
                }
                let (cu, cv) = (self.closed[u], self.closed[v]);
                let sub = cu & !cv == 0;
                if sub && (cu != cv || u < v) {
                    rn |= 1 << v;
                    break;
                }
            }
        }
        rn
    }
}

/// RN(G) straight from the definition.
pub fn brute_rn(g: &Graph) -> Result<VertexSet> {
    Ok(to_set(Masks::new(g, MASK_LIMIT)?.redundant()))
}

/// Definition-level minimality: `d` dominates V(G) and no proper subset does.
pub fn brute_is_minimal_dominating(g: &Graph, d: &VertexSet) -> bool {
    let n = g.n();
    let mut dom = vec![false; n];
    for x in d.iter() {
        for y in g.closed_neighborhood(x).iter() {
            dom[y] = true;
        }
    }
    if dom.iter().any(|&b| !b) {
        return false;
    }
    d.iter().all(|x| {
        let rest = d.without(x);
        !g.dominates(&rest, &g.all_vertices())
    })
}

/// All minimal dominating sets.
pub fn brute_dom(g: &Graph) -> Result<Family> {
    brute_dom_limited(g, BRUTE_LIMIT)
}

pub fn brute_dom_limited(g: &Graph, limit: usize) -> Result<Family> {
    let m = Masks::new(g, limit.min(MASK_LIMIT))?;
    let mut out = Family::new();
    if m.n == 0 {
        out.insert(VertexSet::new());
        return Ok(out);
    }
    // include/exclude branching with a dominability cut
    let mut can_dom = vec![0 as Mask; m.n + 1];
    for i in (0..m.n).rev() {
        can_dom[i] = can_dom[i + 1] | m.closed[i];
    }
    fn rec(m: &Masks, can_dom: &[Mask], i: usize, d: Mask, covered: Mask, out: &mut Family) {
        if (covered | can_dom[i]) != m.all() {
            return;
        }
        if i == m.n {
            if m.is_minimal_dominating(d) {
                out.insert(to_set(d));
            }
            return;
        }
        let with = d | (1 << i);
        // private neighbourhoods only shrink as vertices are added
        if bits(with).all(|x| m.private(with, x) != 0) {
            rec(m, can_dom, i + 1, with, covered | m.closed[i], out);
        }
        rec(m, can_dom, i + 1, d, covered, out);
    }
    rec(&m, &can_dom, 0, 0, 0, &mut out);
    Ok(out)
}

/// Redundant parts `{D ∩ RN : D ∈ D(G)}`.
pub fn brute_drn(g: &Graph) -> Result<Family> {
    let rn = to_mask(&brute_rn(g)?);
    Ok(brute_dom(g)?.iter().map(|d| to_set(to_mask(d) & rn)).collect())
}

/// Irredundant extensions `{D \ A : D ∈ D(G), D ∩ RN = A}`.
pub fn brute_dir(g: &Graph, a_set: &VertexSet) -> Result<Family> {
    let rn = to_mask(&brute_rn(g)?);
    let a = to_mask(a_set);
    Ok(brute_dom(g)?
        .iter()
        .map(to_mask)
        .filter(|&d| d & rn == a)
        .map(|d| to_set(d & !a))
        .collect())
}

/// Standalone extension instance on a vertex subset `comp` of `g`.
#[derive(Clone, Debug)]
pub struct BruteInstance<'a> {
    pub g: &'a Graph,
    pub comp: &'a VertexSet,
    pub x_sets: &'a [VertexSet],
    pub y_set: &'a VertexSet,
}

impl BruteInstance<'_> {
    fn prepare(&self) -> Result<(Masks, Vec<usize>, Mask, Vec<Mask>)> {
        let m = Masks::new(self.g, MASK_LIMIT)?;
        let verts: Vec<usize> = self.comp.iter().collect();
        if verts.len() > 24 {
            return Err(Error::SizeLimit(format!("component of {} vertices exceeds 24", verts.len())));
        }
        let xs: Vec<Mask> = self.x_sets.iter().map(to_mask).collect();
        let x_all = xs.iter().fold(0, |a, &b| a | b);
        let z = to_mask(self.comp) & !x_all & !to_mask(self.y_set);
        Ok((m, verts, z, xs))
    }

    fn subsets(verts: &[usize]) -> impl Iterator<Item = Mask> + '_ {
        (0u64..1 << verts.len()).map(move |s| {
            verts.iter().enumerate().filter(|(i, _)| s >> i & 1 == 1).fold(0, |m, (_, &v)| m | (1 << v))
        })
    }

    /// Some `D ⊆ C` dominates `C \ (X ∪ Y)` and dominates none of the `X_j`.
    pub fn brute_iep(&self) -> Result<bool> {
        let (m, verts, z, xs) = self.prepare()?;
        let found = Self::subsets(&verts).any(|d| {
            let nd = m.dom(d);
            z & !nd == 0 && xs.iter().all(|&x| x & !nd != 0)
        });
        Ok(found)
    }

    /// All inclusion-minimal `D ⊆ C` with the two properties of [`brute_iep`].
    pub fn brute_dir_component(&self) -> Result<Family> {
        let (m, verts, z, xs) = self.prepare()?;
        let ok = |d: Mask| {
            let nd = m.dom(d);
            z & !nd == 0 && xs.iter().all(|&x| x & !nd != 0)
        };
        let family = Self::subsets(&verts)
            .filter(|&d| ok(d) && bits(d).all(|v| !ok(d & !(1 << v))))
            .map(to_set)
            .collect();
        Ok(family)
    }

    /// Some minimal solution contains `s_set` and avoids `q_set`.
    pub fn brute_icep(&self, s_set: &VertexSet, q_set: &VertexSet) -> Result<bool> {
        let s = to_mask(s_set);
        let q = to_mask(q_set);
        Ok(self.brute_dir_component()?.iter().map(to_mask).any(|d| d & s == s && d & q == 0))
    }
}

/// Decides `A ∈ D_RN(G)` by searching for an irredundant extension:
/// `I ⊆ IR` dominating `IR \ N[A]` with every `Priv_IR(A, a)` left partly
/// undominated. Returns such an `I` when one exists.
pub fn brute_drn_member(g: &Graph, a_set: &VertexSet, budget: u64) -> Result<Option<VertexSet>> {
    let m = Masks::new(g, MASK_LIMIT)?;
    let rn = m.redundant();
    let ir = m.all() & !rn;
    let a = to_mask(a_set);
    if a & !rn != 0 {
        return Err(Error::InvalidArgument("A must consist of redundant vertices".into()));
    }
    let privs: Vec<Mask> = bits(a).map(|x| m.private(a, x) & ir).collect();
    if privs.contains(&0) {
        return Ok(None);
    }
    let target = ir & !m.dom(a);
    struct Search<'a> {
        m: &'a Masks,
        ir: Mask,
        target: Mask,
        privs: &'a [Mask],
        nodes: u64,
        budget: u64,
    }
    impl Search<'_> {
        fn rec(&mut self, i_set: Mask, covered: Mask, banned: Mask) -> Result<Option<Mask>> {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExceeded { budget: self.budget });
            }
            let left = self.target & !covered;
            if left == 0 {
                return Ok(Some(i_set));
            }
            let t = left.trailing_zeros() as usize;
            let mut tried = 0 as Mask;
            for x in bits(self.m.closed[t] & self.ir & !banned) {
                let cov = covered | self.m.closed[x];
                if self.privs.iter().any(|&p| p & !cov == 0) {
                    tried |= 1 << x;
                    continue;
                }
                // x is chosen here; alternatives tried earlier stay excluded
                if let Some(found) = self.rec(i_set | (1 << x), cov, banned | tried)? {
                    return Ok(Some(found));
                }
                tried |= 1 << x;
            }
            Ok(None)
        }
    }
    let found = Search { m: &m, ir, target, privs: &privs, nodes: 0, budget }.rec(0, 0, 0)?;
    Ok(found.map(|i| {
        // shrink to a minimal extension
        let mut i = i;
        for x in bits(i) {
            let rest = i & !(1 << x);
            if target & !m.dom(rest) == 0 {
                i = rest;
            }
        }
        to_set(i)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    fn fam(sets: &[&[usize]]) -> Family {
        sets.iter().map(|s| s.iter().copied().collect()).collect()
    }

    #[test]
    fn dom_of_small_graphs() {
        assert_eq!(brute_dom(&star(3)).unwrap(), fam(&[&[0], &[1, 2, 3]]));
        assert_eq!(brute_dom(&complete(1)).unwrap(), fam(&[&[0]]));
        assert_eq!(brute_dom(&complete(2)).unwrap(), fam(&[&[0], &[1]]));
    }

    #[test]
    fn dom_of_p6_has_seven_members() {
        let d = brute_dom(&path(6)).unwrap();
        assert_eq!(
            d,
            fam(&[&[0, 2, 4], &[0, 2, 5], &[0, 3, 4], &[0, 3, 5], &[1, 2, 5], &[1, 3, 5], &[1, 4]])
        );
    }

    #[test]
    fn drn_examples() {
        assert_eq!(brute_drn(&path(6)).unwrap(), fam(&[&[], &[1], &[4], &[1, 4]]));
        assert_eq!(brute_drn(&star(3)).unwrap(), fam(&[&[], &[0]]));
        assert_eq!(brute_drn(&complete(1)).unwrap(), fam(&[&[]]));
    }

    #[test]
    fn dir_examples() {
        assert_eq!(brute_dir(&path(6), &VertexSet::from([1])).unwrap(), fam(&[&[2, 5], &[3, 5]]));
        assert_eq!(brute_dir(&star(3), &VertexSet::new()).unwrap(), fam(&[&[1, 2, 3]]));
        // {0} is not a redundant part of P6
        assert!(brute_dir(&path(6), &VertexSet::from([0])).unwrap().is_empty());
    }

    #[test]
    fn iep_fixtures() {
        let s3 = Graph::from_edges(3, [(0, 1), (0, 2)]).unwrap();
        let comp = VertexSet::from([0, 1, 2]);
        let y = VertexSet::new();
        let x = [VertexSet::from([1])];
        let inst = BruteInstance { g: &s3, comp: &comp, x_sets: &x, y_set: &y };
        assert!(inst.brute_iep().unwrap());
        assert_eq!(inst.brute_dir_component().unwrap(), fam(&[&[2]]));
        assert!(inst.brute_icep(&VertexSet::from([2]), &VertexSet::new()).unwrap());
        assert!(!inst.brute_icep(&VertexSet::new(), &VertexSet::from([2])).unwrap());

        let k2 = complete(2);
        let comp = VertexSet::from([0, 1]);
        let inst = BruteInstance { g: &k2, comp: &comp, x_sets: &x, y_set: &y };
        assert!(!inst.brute_iep().unwrap());

        let empty = VertexSet::new();
        let inst = BruteInstance { g: &k2, comp: &empty, x_sets: &[], y_set: &y };
        assert!(inst.brute_iep().unwrap());
    }

    #[test]
    fn drn_member_matches_family() {
        let p6 = path(6);
        for a in [vec![], vec![1], vec![4], vec![1, 4]] {
            assert!(brute_drn_member(&p6, &a.into(), 1_000).unwrap().is_some());
        }
        let s3 = star(3);
        assert!(brute_drn_member(&s3, &VertexSet::from([0]), 1_000).unwrap().is_some());
    }

    #[test]
    fn size_limit() {
        let err = brute_dom(&path(BRUTE_LIMIT + 1)).unwrap_err();
        assert!(matches!(err, Error::SizeLimit(_)));
    }
}
