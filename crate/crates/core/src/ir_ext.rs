//! Irredundant extensions `DIR(A)` of a redundant part.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::VertexSet;
use crate::recognition::TreePoset;
use crate::rn_enum::{extension_exists, ExtensionInstance, Mode, Prepared, Role};

/// Is there a minimal `D` for the instance with `S ⊆ D` and `D ∩ Q = ∅`?
/// S and Q are poset-local indices.
pub fn solve_icep(inst: &ExtensionInstance<'_>, s_set: &[usize], q_set: &[usize]) -> Result<bool> {
    let k = inst.poset().len();
    let mut s = vec![false; k];
    let mut q = vec![false; k];
    for &x in s_set {
        if x >= k {
            return Err(Error::MalformedInstance(format!("S element {x} outside the component")));
        }
        s[x] = true;
    }
    for &x in q_set {
        if x >= k {
            return Err(Error::MalformedInstance(format!("Q element {x} outside the component")));
        }
        if s[x] {
            return Err(Error::MalformedInstance(format!("element {x} is both forced in and forced out")));
        }
        q[x] = true;
    }
    let role: Vec<Role> = (0..k).map(|x| inst.role(x)).collect();
    Ok(icep(inst.poset(), inst.x_sets(), &role, &s, &q))
}

fn icep(t: &TreePoset, x_sets: &[Vec<usize>], role: &[Role], s: &[bool], q: &[bool]) -> bool {
    let k = t.len();
    let members: Vec<usize> = (0..k).filter(|&x| s[x]).collect();
    // how many members of S see each vertex, and which one when unique
    let mut seen = vec![0u32; k];
    let mut by = vec![usize::MAX; k];
    for &m in &members {
        for a in t.ancestors(m) {
            seen[a] += 1;
            by[a] = m;
        }
        for &y in t.subtree(m) {
            seen[y] += 1;
            by[y] = m;
        }
    }
    let targets: Vec<bool> = (0..k).map(|x| role[x] == Role::Z && seen[x] == 0).collect();
    let mut forbidden: Vec<Vec<usize>> =
        x_sets.iter().map(|xs| xs.iter().copied().filter(|&x| seen[x] == 0).collect()).collect();
    let mut privs: Vec<Vec<usize>> = vec![Vec::new(); members.len()];
    for y in 0..k {
        if role[y] == Role::Z && seen[y] == 1 {
            let i = members.binary_search(&by[y]).unwrap();
            privs[i].push(y);
        }
    }
    forbidden.extend(privs);
    let allowed: Vec<bool> = (0..k).map(|x| !s[x] && !q[x]).collect();
    extension_exists(t, &targets, &forbidden, &allowed)
}

/// One component's solutions, either a clique (any single vertex) or
/// a backtrack search guarded by the extension test.
struct Search {
    poset: Arc<TreePoset>,
    x_sets: Vec<Vec<usize>>,
    role: Vec<Role>,
    s: Vec<bool>,
    q: Vec<bool>,
    /// decided levels with 1 = included, 2 = excluded
    stack: Vec<u8>,
    started: bool,
    done: bool,
}

impl Search {
    fn new(poset: Arc<TreePoset>, x_sets: Vec<Vec<usize>>, role: Vec<Role>) -> Self {
        let k = role.len();
        Search {
            poset,
            x_sets,
            role,
            s: vec![false; k],
            q: vec![false; k],
            stack: Vec::with_capacity(k),
            started: false,
            done: false,
        }
    }

    fn restart(&mut self) {
        self.s.iter_mut().for_each(|x| *x = false);
        self.q.iter_mut().for_each(|x| *x = false);
        self.stack.clear();
        self.started = false;
        self.done = false;
    }

    fn check(&self) -> bool {
        icep(&self.poset, &self.x_sets, &self.role, &self.s, &self.q)
    }

    /// Extends the partial decision at the current level, or backtracks.
    fn descend(&mut self) -> bool {
        let i = self.stack.len();
        self.s[i] = true;
        if self.check() {
            self.stack.push(1);
            return true;
        }
        self.s[i] = false;
        self.q[i] = true;
        if self.check() {
            self.stack.push(2);
            return true;
        }
        self.q[i] = false;
        false
    }

    /// Pops decided levels until an include can be flipped to exclude.
    fn backtrack(&mut self) -> bool {
        while let Some(b) = self.stack.pop() {
            let i = self.stack.len();
            if b == 1 {
                self.s[i] = false;
                self.q[i] = true;
                if self.check() {
                    self.stack.push(2);
                    return true;
                }
                self.q[i] = false;
            } else {
                self.q[i] = false;
            }
        }
        false
    }

    fn next(&mut self) -> Option<VertexSet> {
        if self.done {
            return None;
        }
        let k = self.s.len();
        if !self.started {
            self.started = true;
            if !self.check() {
                self.done = true;
                return None;
            }
        } else if !self.backtrack() {
            self.done = true;
            return None;
        }
        loop {
            if self.stack.len() == k {
                let t = &self.poset;
                let d: VertexSet = (0..k).filter(|&x| self.s[x]).map(|x| t.global(x)).collect();
                return Some(d);
            }
            if !self.descend() && !self.backtrack() {
                self.done = true;
                return None;
            }
        }
    }
}

/// `DIR(A, C)` for one irredundant component C.
pub struct DirComponentStream {
    search: Box<Search>,
}

impl DirComponentStream {
    /// Rewinds the stream to its first solution.
    pub fn restart(&mut self) {
        self.search.restart();
    }

    fn search(poset: Arc<TreePoset>, inst: ExtensionInstance<'_>) -> Self {
        let (x_sets, role) = inst.into_parts();
        DirComponentStream { search: Box::new(Search::new(poset, x_sets, role)) }
    }
}

impl Iterator for DirComponentStream {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        self.search.next()
    }
}

/// Search stream for component `ci`, whatever the mode.
pub fn enumerate_dir_component(prep: &Arc<Prepared>, a_set: &VertexSet, ci: usize) -> Result<DirComponentStream> {
    check_redundant(prep, a_set)?;
    if ci >= prep.cls.components.len() {
        return Err(Error::InvalidArgument(format!("no irredundant component {ci}")));
    }
    let an = prep.analyze(a_set);
    let inst = prep.instance(&an, ci);
    Ok(DirComponentStream::search(Arc::clone(&prep.posets[ci]), inst))
}

/// `DIR` of a standalone instance, as vertices of the poset.
pub fn enumerate_instance(inst: &ExtensionInstance<'_>) -> DirComponentStream {
    DirComponentStream::search(Arc::new(inst.poset().clone()), inst.clone())
}

fn check_redundant(prep: &Prepared, a_set: &VertexSet) -> Result<()> {
    match a_set.iter().find(|&a| a >= prep.graph.n() || prep.cls.is_irredundant(a)) {
        Some(a) => Err(Error::InvalidArgument(format!("vertex {} is not redundant", a + 1))),
        None => Ok(()),
    }
}

/// Cross product of per-component streams, last component fastest.
pub struct DirStream {
    inner: Product,
}

enum Product {
    /// one vertex from each listed clique component
    Cliques { prep: Arc<Prepared>, comps: Vec<usize>, pos: Vec<usize>, started: bool, done: bool },
    Streams(Streams),
}

struct Streams {
    streams: Vec<DirComponentStream>,
    current: Vec<VertexSet>,
    first: Vec<VertexSet>,
    /// stream j has produced nothing beyond its first solution
    at_first: Vec<bool>,
    started: bool,
    done: bool,
}

impl DirStream {
    fn from_streams(streams: Vec<DirComponentStream>) -> Self {
        let s = Streams { streams, current: Vec::new(), first: Vec::new(), at_first: Vec::new(), started: false, done: false };
        DirStream { inner: Product::Streams(s) }
    }

    fn empty() -> Self {
        let mut s = DirStream::from_streams(Vec::new());
        if let Product::Streams(st) = &mut s.inner {
            st.done = true;
        }
        s
    }

    /// Clique cross product over the given undominated components.
    pub(crate) fn cliques(prep: &Arc<Prepared>, comps: impl Iterator<Item = usize>) -> Self {
        let comps: Vec<usize> = comps.collect();
        let pos = vec![0; comps.len()];
        DirStream { inner: Product::Cliques { prep: Arc::clone(prep), comps, pos, started: false, done: false } }
    }

    /// Search streams for every component A leaves partly undominated.
    pub(crate) fn searches(prep: &Arc<Prepared>, a_set: &VertexSet) -> Self {
        let an = prep.analyze(a_set);
        let streams = (0..prep.cls.components.len())
            .filter(|&ci| an.undominated(ci) > 0)
            .map(|ci| DirComponentStream::search(Arc::clone(&prep.posets[ci]), prep.instance(&an, ci)))
            .collect();
        DirStream::from_streams(streams)
    }
}

impl Streams {
    fn union(&self) -> VertexSet {
        self.current.iter().flat_map(|d| d.iter()).collect()
    }

    fn next(&mut self) -> Option<VertexSet> {
        if self.done {
            return None;
        }
        let k = self.streams.len();
        if !self.started {
            self.started = true;
            for s in &mut self.streams {
                match s.next() {
                    Some(d) => {
                        self.first.push(d.clone());
                        self.current.push(d);
                        self.at_first.push(true);
                    }
                    None => {
                        self.done = true;
                        return None;
                    }
                }
            }
            if k == 0 {
                self.done = true;
            }
            return Some(self.union());
        }
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                return None;
            }
            i -= 1;
            if let Some(d) = self.streams[i].next() {
                self.current[i] = d;
                self.at_first[i] = false;
                break;
            }
        }
        for j in i + 1..k {
            if !self.at_first[j] {
                self.streams[j].restart();
                self.streams[j].next();
                self.current[j] = self.first[j].clone();
                self.at_first[j] = true;
            }
        }
        Some(self.union())
    }
}

impl Iterator for DirStream {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        match &mut self.inner {
            Product::Streams(s) => s.next(),
            Product::Cliques { prep, comps, pos, started, done } => {
                if *done {
                    return None;
                }
                let comp = |ci: usize| prep.cls.components[comps[ci]].as_slice();
                if !*started {
                    *started = true;
                    *done = comps.is_empty();
                } else {
                    let mut i = comps.len();
                    loop {
                        if i == 0 {
                            *done = true;
                            return None;
                        }
                        i -= 1;
                        if pos[i] + 1 < comp(i).len() {
                            pos[i] += 1;
                            break;
                        }
                    }
                    pos[i + 1..].iter_mut().for_each(|p| *p = 0);
                }
                Some((0..comps.len()).map(|i| comp(i)[pos[i]]).collect())
            }
        }
    }
}

/// `DIR(A)` of a member of `D_RN(G)`; empty for other redundant sets.
pub fn enumerate_dir(prep: &Arc<Prepared>, a_set: &VertexSet) -> Result<DirStream> {
    check_redundant(prep, a_set)?;
    if !prep.is_in_drn(a_set) {
        return Ok(DirStream::empty());
    }
    Ok(match prep.mode {
        Mode::P7 => {
            let an = prep.analyze(a_set);
            DirStream::cliques(prep, (0..prep.cls.components.len()).filter(|&ci| an.undominated(ci) > 0))
        }
        Mode::P8 => DirStream::searches(prep, a_set),
    })
}

/// Clique cross product `DIR(A)` for P7-free inputs.
pub fn dir_p7(prep: &Arc<Prepared>, a_set: &VertexSet) -> Result<DirStream> {
    check_redundant(prep, a_set)?;
    let an = prep.analyze(a_set);
    Ok(DirStream::cliques(prep, (0..prep.cls.components.len()).filter(|&ci| an.undominated(ci) > 0)))
}
