//! Enumeration of the redundant parts `D_RN(G)`.
//!
//! Two engines drive the same reverse-search tree: an array engine for
//! P7-free chordal graphs whose candidate test costs `O(deg(c))`, and an
//! extension-problem engine for P8-free chordal graphs.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::recognition::{build_tree_poset_on, TreePoset};
use crate::redundancy::{classify, Classification};

/// Which class certificate the caller vouches for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    P7,
    P8,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mode> {
        match s.to_ascii_lowercase().as_str() {
            "p7" => Ok(Mode::P7),
            "p8" => Ok(Mode::P8),
            other => Err(Error::InvalidArgument(format!("unknown mode {other:?} (expected p7 or p8)"))),
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::P7 => "p7",
            Mode::P8 => "p8",
        })
    }
}

/// Everything computed once per graph before enumeration starts.
#[derive(Debug)]
pub struct Prepared {
    pub graph: Graph,
    pub cls: Classification,
    pub mode: Mode,
    /// tree poset of every irredundant component
    pub posets: Vec<Arc<TreePoset>>,
    /// `C^a` for redundant a
    partial: Vec<Option<usize>>,
    /// `N(v) ∩ IR`
    ir_nbrs: Vec<Vec<usize>>,
}

impl Prepared {
    /// Classifies `g` and checks the structural facts the engines rely on.
    /// Chordality and path-freeness themselves are not verified here.
    pub fn new(g: Graph, mode: Mode) -> Result<Arc<Prepared>> {
        if !g.is_connected() {
            return Err(Error::Disconnected { components: g.component_count() });
        }
        let cls = classify(&g);
        let mut partial = vec![None; g.n()];
        for a in cls.rn.iter() {
            partial[a] = cls.partial_component(a)?;
        }
        let mut posets = Vec::with_capacity(cls.components.len());
        for (i, comp) in cls.components.iter().enumerate() {
            if mode == Mode::P7 {
                let k = comp.len();
                if comp.iter().any(|v| g.neighbors(v).iter().filter(|&&w| cls.comp_of(w) == Some(i)).count() + 1 != k) {
                    return Err(Error::NotInClass(format!(
                        "irredundant component {} is not a clique",
                        comp.to_one_indexed()
                    )));
                }
            }
            posets.push(Arc::new(build_tree_poset_on(&g, comp)?));
        }
        let ir_nbrs = (0..g.n())
            .map(|v| g.neighbors(v).iter().copied().filter(|&w| cls.is_irredundant(w)).collect())
            .collect();
        Ok(Arc::new(Prepared { graph: g, cls, mode, posets, partial, ir_nbrs }))
    }

    pub fn partial(&self, a: usize) -> Option<usize> {
        self.partial[a]
    }

    pub fn ir_neighbors(&self, v: usize) -> &[usize] {
        &self.ir_nbrs[v]
    }

    /// Local index of an irredundant vertex inside its component poset.
    fn local(&self, v: usize) -> (usize, usize) {
        let ci = self.cls.comp_of(v).expect("irredundant vertex");
        (ci, self.posets[ci].local(v).expect("vertex belongs to its component"))
    }

    /// The membership situation of a redundant set.
    pub fn analyze(&self, a_set: &VertexSet) -> Analysis {
        let n = self.graph.n();
        let mut cnt = vec![0u32; n];
        for a in a_set.iter() {
            for &y in &self.ir_nbrs[a] {
                cnt[y] += 1;
            }
        }
        let comps = &self.cls.components;
        let mut undominated: Vec<usize> = comps.iter().map(|c| c.len()).collect();
        for (i, c) in comps.iter().enumerate() {
            undominated[i] -= c.iter().filter(|&v| cnt[v] > 0).count();
        }
        let mut privs = Vec::with_capacity(a_set.len());
        let mut red = Vec::new();
        let mut lacking = false;
        for a in a_set.iter() {
            let p: Vec<usize> = self.ir_nbrs[a].iter().copied().filter(|&y| cnt[y] == 1).collect();
            if p.is_empty() {
                lacking = true;
            }
            let blue = p.iter().any(|&y| undominated[self.cls.comp_of(y).unwrap()] == 0);
            if !blue {
                red.push(privs.len());
            }
            privs.push((a, p));
        }
        Analysis { cnt, undominated, privs, red, lacking }
    }

    /// The extension instance of component `ci` for the analysed set.
    pub fn instance(&self, an: &Analysis, ci: usize) -> ExtensionInstance<'_> {
        let poset = &self.posets[ci];
        let mut x_sets = Vec::new();
        for &r in &an.red {
            let xs: Vec<usize> = an.privs[r]
                .1
                .iter()
                .filter(|&&y| self.cls.comp_of(y) == Some(ci))
                .map(|&y| self.local(y).1)
                .collect();
            if !xs.is_empty() {
                x_sets.push(xs);
            }
        }
        let mut role = vec![Role::Z; poset.len()];
        for (j, xs) in x_sets.iter().enumerate() {
            for &x in xs {
                role[x] = Role::X(j);
            }
        }
        for (x, &v) in poset.vertices().iter().enumerate() {
            if an.cnt[v] > 0 && role[x] == Role::Z {
                role[x] = Role::Y;
            }
        }
        ExtensionInstance { poset, x_sets, role }
    }

    /// Decides `A ∈ D_RN(G)` one irredundant component at a time.
    pub fn is_in_drn(&self, a_set: &VertexSet) -> bool {
        self.is_in_drn_traced(a_set, &mut IepStats::default())
    }

    pub fn is_in_drn_traced(&self, a_set: &VertexSet, stats: &mut IepStats) -> bool {
        let an = self.analyze(a_set);
        if an.lacking {
            return false;
        }
        (0..self.cls.components.len())
            .filter(|&ci| an.undominated[ci] > 0)
            .all(|ci| self.instance(&an, ci).solve_iep_traced(stats))
    }

    /// Whether `c` is the maximal generator of `a_with_c`, given that
    /// `a_with_c` is a member of `D_RN(G)`.
    pub fn solve_mgp(&self, a_with_c: &VertexSet, c: usize) -> bool {
        if !a_with_c.contains(c) || !self.is_in_drn(&a_with_c.without(c)) {
            return false;
        }
        a_with_c.iter().filter(|&y| y > c).all(|y| !self.is_in_drn(&a_with_c.without(y)))
    }
}

/// Counters for how the extension problem was decided.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct IepStats {
    pub calls: u64,
    /// instances whose forbidden sets straddle several subtrees
    pub fallbacks: u64,
}

/// Private-neighbour bookkeeping of a redundant set.
#[derive(Clone, Debug)]
pub struct Analysis {
    /// `|N[y] ∩ A|` for irredundant y
    cnt: Vec<u32>,
    undominated: Vec<usize>,
    /// `(a, Priv_IR(A, a))` in ascending order of a
    privs: Vec<(usize, Vec<usize>)>,
    /// positions in `privs` of red elements
    red: Vec<usize>,
    lacking: bool,
}

impl Analysis {
    /// Some element has no irredundant private neighbour.
    pub fn lacks_private(&self) -> bool {
        self.lacking
    }

    pub fn undominated(&self, ci: usize) -> usize {
        self.undominated[ci]
    }

    pub fn is_dominated(&self, v: usize) -> bool {
        self.cnt[v] > 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    X(usize),
    Y,
    Z,
}

/// One irredundant component with sets `X_1..X_p` and `Y`, in poset-local
/// indices; `Z` is everything else.
#[derive(Clone, Debug)]
pub struct ExtensionInstance<'p> {
    poset: &'p TreePoset,
    x_sets: Vec<Vec<usize>>,
    role: Vec<Role>,
}

impl<'p> ExtensionInstance<'p> {
    /// Validates a standalone instance.
    pub fn new(poset: &'p TreePoset, x_sets: Vec<Vec<usize>>, y: &[usize]) -> Result<Self> {
        let k = poset.len();
        let mut role = vec![Role::Z; k];
        for (j, xs) in x_sets.iter().enumerate() {
            for &x in xs {
                if x >= k {
                    return Err(Error::MalformedInstance(format!("X_{} element {x} outside the component", j + 1)));
                }
                if role[x] != Role::Z {
                    return Err(Error::MalformedInstance(format!("element {x} appears in two X sets")));
                }
                role[x] = Role::X(j);
            }
        }
        for &v in y {
            if v >= k {
                return Err(Error::MalformedInstance(format!("Y element {v} outside the component")));
            }
            if role[v] != Role::Z {
                return Err(Error::MalformedInstance(format!("Y element {v} also belongs to X")));
            }
            role[v] = Role::Y;
        }
        Ok(ExtensionInstance { poset, x_sets, role })
    }

    pub fn poset(&self) -> &'p TreePoset {
        self.poset
    }

    pub fn x_sets(&self) -> &[Vec<usize>] {
        &self.x_sets
    }

    pub fn role(&self, x: usize) -> Role {
        self.role[x]
    }

    pub(crate) fn into_parts(self) -> (Vec<Vec<usize>>, Vec<Role>) {
        (self.x_sets, self.role)
    }

    pub fn y_set(&self) -> Vec<usize> {
        (0..self.role.len()).filter(|&x| self.role[x] == Role::Y).collect()
    }

    pub fn z_set(&self) -> Vec<usize> {
        (0..self.role.len()).filter(|&x| self.role[x] == Role::Z).collect()
    }

    /// Elements of Z with no element of Z strictly above them.
    pub fn f_set(&self) -> Vec<usize> {
        let z: Vec<bool> = self.role.iter().map(|&r| r == Role::Z).collect();
        maximal_marked(self.poset, &z)
    }

    /// Does some `D ⊆ C` dominate Z while dominating none of the X sets?
    pub fn solve_iep(&self) -> bool {
        self.solve_iep_traced(&mut IepStats::default())
    }

    pub fn solve_iep_traced(&self, stats: &mut IepStats) -> bool {
        stats.calls += 1;
        let t = self.poset;
        let k = t.len();
        if self.x_sets.iter().any(|x| x.is_empty()) {
            return false;
        }
        let f = self.f_set();
        // F⁻: strict ancestors of F
        let mut below_f = vec![false; k];
        for &x in &f {
            for a in t.ancestors(x) {
                if below_f[a] {
                    break;
                }
                below_f[a] = true;
            }
        }
        let mut owner = vec![usize::MAX; k];
        for (i, &x) in f.iter().enumerate() {
            for &y in t.subtree(x) {
                owner[y] = i;
            }
        }
        let leaves = t.leaves();
        let mut diff = vec![0i64; leaves.len() + 1];
        for xs in &self.x_sets {
            let rest: Vec<usize> = xs.iter().copied().filter(|&x| !below_f[x]).collect();
            if rest.is_empty() {
                return false;
            }
            let o = owner[rest[0]];
            if o == usize::MAX || rest.iter().any(|&x| owner[x] == usize::MAX) {
                continue;
            }
            if rest.iter().any(|&x| owner[x] != o) {
                stats.fallbacks += 1;
                return self.solve_exact();
            }
            let top = *rest.iter().max_by_key(|&&x| t.depth(x)).unwrap();
            if rest.iter().all(|&x| t.le(x, top)) {
                let (lo, hi) = t.leaf_range(top);
                diff[lo] += 1;
                diff[hi] -= 1;
            }
        }
        let mut free_prefix = vec![0usize; leaves.len() + 1];
        let mut run = 0i64;
        for i in 0..leaves.len() {
            run += diff[i];
            free_prefix[i + 1] = free_prefix[i] + usize::from(run == 0);
        }
        f.iter().all(|&x| {
            let (lo, hi) = t.leaf_range(x);
            free_prefix[hi] > free_prefix[lo]
        })
    }

    /// Exact answer through the general extension routine.
    pub fn solve_exact(&self) -> bool {
        let targets: Vec<bool> = self.role.iter().map(|&r| r == Role::Z).collect();
        let allowed = vec![true; self.role.len()];
        extension_exists(self.poset, &targets, &self.x_sets, &allowed)
    }
}

/// Marked vertices with no marked vertex strictly above them.
fn maximal_marked(t: &TreePoset, mark: &[bool]) -> Vec<usize> {
    let k = t.len();
    let mut above = vec![false; k];
    for &x in t.preorder().iter().rev() {
        if let Some(p) = t.parent(x) {
            if mark[x] || above[x] {
                above[p] = true;
            }
        }
    }
    t.preorder().iter().copied().filter(|&x| mark[x] && !above[x]).collect()
}

/// Is there `D ⊆ allowed` dominating every target in the comparability graph
/// of `t` while leaving each forbidden set partly undominated?
pub fn extension_exists(t: &TreePoset, targets: &[bool], forbidden: &[Vec<usize>], allowed: &[bool]) -> bool {
    let k = t.len();
    if forbidden.iter().any(|x| x.is_empty()) {
        return false;
    }
    let tops = maximal_marked(t, targets);
    let mut allowed_above = vec![false; k];
    for &x in t.preorder().iter().rev() {
        if let Some(p) = t.parent(x) {
            if allowed[x] || allowed_above[x] {
                allowed_above[p] = true;
            }
        }
    }
    let mut base = vec![false; k];
    let mut forced = Vec::new();
    for &x in &tops {
        base[x] = true;
        for a in t.ancestors(x) {
            if base[a] {
                break;
            }
            base[a] = true;
        }
        if !allowed[x] && !allowed_above[x] {
            match t.ancestors(x).find(|&a| allowed[a]) {
                Some(a) => forced.push(a),
                None => return false,
            }
        }
    }
    let mut covered = vec![false; k];
    for &f in &forced {
        for &y in t.subtree(f) {
            base[y] = true;
            covered[y] = true;
        }
        for a in t.ancestors(f) {
            base[a] = true;
        }
    }
    // free tops: one chosen option each
    let free: Vec<usize> = tops.iter().copied().filter(|&x| !covered[x]).collect();
    let mut owner = vec![usize::MAX; k];
    let mut options: Vec<Vec<usize>> = Vec::with_capacity(free.len());
    for (i, &x) in free.iter().enumerate() {
        let mut opts = Vec::new();
        for &y in t.subtree(x) {
            owner[y] = i;
            if allowed[y] && !allowed_above[y] {
                opts.push(y);
            }
        }
        options.push(opts);
    }
    let mut blocked: Vec<Vec<bool>> = options.iter().map(|o| vec![false; o.len()]).collect();
    // coupled constraints: (free index, the part of R inside its subtree)
    let mut coupled: Vec<Vec<(usize, Vec<usize>)>> = Vec::new();
    let covers = |o: usize, part: &[usize]| part.iter().all(|&r| t.comparable(o, r));
    'sets: for xs in forbidden {
        let rest: Vec<usize> = xs.iter().copied().filter(|&x| !base[x]).collect();
        if rest.is_empty() {
            return false;
        }
        let mut parts: Vec<(usize, Vec<usize>)> = Vec::new();
        for &r in &rest {
            let o = owner[r];
            if o == usize::MAX {
                continue 'sets;
            }
            match parts.iter_mut().find(|(i, _)| *i == o) {
                Some((_, p)) => p.push(r),
                None => parts.push((o, vec![r])),
            }
        }
        if parts.len() == 1 {
            let (i, part) = &parts[0];
            for (j, &o) in options[*i].iter().enumerate() {
                if covers(o, part) {
                    blocked[*i][j] = true;
                }
            }
        } else {
            coupled.push(parts);
        }
    }
    let open: Vec<Vec<usize>> = options
        .iter()
        .zip(&blocked)
        .map(|(o, b)| o.iter().zip(b).filter(|(_, &bl)| !bl).map(|(&x, _)| x).collect())
        .collect();
    if open.iter().any(|o| o.is_empty()) {
        return false;
    }
    if coupled.is_empty() {
        return true;
    }
    let mut vars: Vec<usize> = coupled.iter().flat_map(|c| c.iter().map(|(i, _)| *i)).collect();
    vars.sort_unstable();
    vars.dedup();
    let mut choice = vec![usize::MAX; free.len()];
    fn search(
        depth: usize,
        vars: &[usize],
        open: &[Vec<usize>],
        choice: &mut Vec<usize>,
        coupled: &[Vec<(usize, Vec<usize>)>],
        covers: &dyn Fn(usize, &[usize]) -> bool,
    ) -> bool {
        // a constraint fails once every participant is assigned and covers its part
        let violated = coupled.iter().any(|parts| {
            parts.iter().all(|(i, part)| choice[*i] != usize::MAX && covers(choice[*i], part))
        });
        if violated {
            return false;
        }
        if depth == vars.len() {
            return true;
        }
        let v = vars[depth];
        for &o in &open[v] {
            choice[v] = o;
            if search(depth + 1, vars, open, choice, coupled, covers) {
                return true;
            }
        }
        choice[v] = usize::MAX;
        false
    }
    search(0, &vars, &open, &mut choice, &coupled, &covers)
}

const NONE: u32 = u32::MAX;
const STOLEN: u32 = u32::MAX - 1;

/// Array state of the P7 engine for the current redundant set A.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct P7Engine {
    /// T1: undominated vertices per component
    undominated: Vec<u32>,
    /// `|N[y] ∩ A|` per irredundant vertex
    dom_count: Vec<u32>,
    /// M1: `[|Priv ∩ C^a|, |Priv \ C^a|]`; the first entry is -1 without `C^a`
    priv_count: Vec<[i64; 2]>,
    /// M2: owner of a private neighbour, NONE, or STOLEN mid-trial
    priv_owner: Vec<u32>,
    /// M3: 0 when the private lies in its owner's partial component
    side: Vec<u8>,
    /// W: first member of A to dominate y
    dominator: Vec<u32>,
    a: Vec<usize>,
    /// entries written by the latest trial
    touches: u64,
}

impl P7Engine {
    pub fn new(prep: &Prepared) -> P7Engine {
        let n = prep.graph.n();
        let undominated = prep.cls.components.iter().map(|c| c.len() as u32).collect();
        let priv_count = (0..n).map(|v| [if prep.partial(v).is_some() { 0 } else { -1 }, 0]).collect();
        P7Engine {
            undominated,
            dom_count: vec![0; n],
            priv_count,
            priv_owner: vec![NONE; n],
            side: vec![1; n],
            dominator: vec![NONE; n],
            a: Vec::new(),
            touches: 0,
        }
    }

    /// Current redundant set in insertion (ascending) order.
    pub fn current(&self) -> &[usize] {
        &self.a
    }

    /// Largest element of A.
    pub fn rho(&self) -> Option<usize> {
        self.a.last().copied()
    }

    /// State entries written during the latest call to `try_candidate`.
    pub fn last_touches(&self) -> u64 {
        self.touches
    }

    fn initial_count(prep: &Prepared, c: usize) -> [i64; 2] {
        [if prep.partial(c).is_some() { 0 } else { -1 }, 0]
    }

    /// Tests whether `A ∪ {c}` is a redundant part; on success c is added.
    /// A rejected candidate leaves the state exactly as it was.
    pub fn try_candidate(&mut self, prep: &Prepared, c: usize) -> bool {
        let cls = &prep.cls;
        let cpart = prep.partial(c);
        let mut touches = 0u64;
        let mut completes = false;
        let c32 = c as u32;
        for &y in prep.ir_neighbors(c) {
            self.dom_count[y] += 1;
            touches += 1;
            if self.dom_count[y] == 1 {
                let ci = cls.comp_of(y).unwrap();
                let side = if Some(ci) == cpart { 0 } else { 1 };
                self.dominator[y] = c32;
                self.priv_owner[y] = c32;
                self.side[y] = side;
                self.priv_count[c][side as usize] += 1;
                self.undominated[ci] -= 1;
                touches += 5;
                if self.undominated[ci] == 0 {
                    completes = true;
                }
            } else if self.priv_owner[y] != NONE {
                let a = self.priv_owner[y] as usize;
                self.priv_count[a][self.side[y] as usize] -= 1;
                self.priv_owner[y] = STOLEN;
                touches += 2;
            }
        }
        let mut ok = completes;
        if ok {
            for &y in prep.ir_neighbors(c) {
                if self.priv_owner[y] != STOLEN {
                    continue;
                }
                let a = self.dominator[y] as usize;
                let [inner, outer] = self.priv_count[a];
                let alive = outer > 0
                    || (inner > 0 && self.undominated[prep.partial(a).expect("inner privates need C^a")] == 0);
                if !alive {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            for &y in prep.ir_neighbors(c) {
                if self.priv_owner[y] == STOLEN {
                    self.priv_owner[y] = NONE;
                    touches += 1;
                }
            }
            self.a.push(c);
        } else {
            for &y in prep.ir_neighbors(c) {
                self.dom_count[y] -= 1;
                touches += 1;
                if self.dominator[y] == c32 {
                    self.dominator[y] = NONE;
                    self.priv_owner[y] = NONE;
                    self.side[y] = 1;
                    self.undominated[cls.comp_of(y).unwrap()] += 1;
                    touches += 4;
                } else if self.priv_owner[y] == STOLEN {
                    let a = self.dominator[y];
                    self.priv_owner[y] = a;
                    self.priv_count[a as usize][self.side[y] as usize] += 1;
                    touches += 2;
                }
            }
            self.priv_count[c] = Self::initial_count(prep, c);
            touches += 1;
        }
        self.touches = touches;
        ok
    }

    /// Removes the most recently added element.
    pub fn backtrack(&mut self, prep: &Prepared) -> Option<usize> {
        let c = self.a.pop()?;
        let cls = &prep.cls;
        for &y in prep.ir_neighbors(c) {
            self.dom_count[y] -= 1;
            match self.dom_count[y] {
                0 => {
                    self.dominator[y] = NONE;
                    self.priv_owner[y] = NONE;
                    self.side[y] = 1;
                    self.undominated[cls.comp_of(y).unwrap()] += 1;
                }
                1 => {
                    let a = self.dominator[y];
                    self.priv_owner[y] = a;
                    self.priv_count[a as usize][self.side[y] as usize] += 1;
                }
                _ => {}
            }
        }
        self.priv_count[c] = Self::initial_count(prep, c);
        Some(c)
    }

    /// Components of the current A that still contain undominated vertices.
    pub fn undominated_components(&self) -> impl Iterator<Item = usize> + '_ {
        self.undominated.iter().enumerate().filter(|(_, &u)| u > 0).map(|(i, _)| i)
    }
}

enum Engine {
    P7(Box<P7Engine>),
    P8 { a: Vec<usize>, stats: IepStats },
}

struct Frame {
    depth: usize,
    /// next position in `Prepared::cls.rn`
    next: usize,
    entered: bool,
}

/// Pull-based enumeration of `D_RN(G)` without repetitions.
///
/// Sets are emitted on entry at even depths and on exit at odd depths, so
/// long runs of backtracking are interleaved with outputs.
pub struct RnStream {
    prep: Arc<Prepared>,
    engine: Engine,
    frames: Vec<Frame>,
    pending_pop: bool,
    max_touch_ratio: f64,
}

impl RnStream {
    pub fn new(prep: Arc<Prepared>) -> RnStream {
        let engine = match prep.mode {
            Mode::P7 => Engine::P7(Box::new(P7Engine::new(&prep))),
            Mode::P8 => Engine::P8 { a: Vec::new(), stats: IepStats::default() },
        };
        RnStream {
            prep,
            engine,
            frames: vec![Frame { depth: 0, next: 0, entered: false }],
            pending_pop: false,
            max_touch_ratio: 0.0,
        }
    }

    pub fn prepared(&self) -> &Arc<Prepared> {
        &self.prep
    }

    /// Current redundant set (the one most recently emitted, between pulls).
    pub fn current(&self) -> VertexSet {
        match &self.engine {
            Engine::P7(e) => VertexSet::from_sorted(e.current().to_vec()),
            Engine::P8 { a, .. } => a.iter().copied().collect(),
        }
    }

    /// Engine state, available in P7 mode.
    pub fn p7_engine(&self) -> Option<&P7Engine> {
        match &self.engine {
            Engine::P7(e) => Some(e),
            Engine::P8 { .. } => None,
        }
    }

    /// Largest `touches / (deg(c) + 1)` seen over all P7 candidate trials.
    pub fn max_touch_ratio(&self) -> f64 {
        self.max_touch_ratio
    }

    pub fn iep_stats(&self) -> IepStats {
        match &self.engine {
            Engine::P7(_) => IepStats::default(),
            Engine::P8 { stats, .. } => *stats,
        }
    }

    fn accept(&mut self, pos: usize) -> bool {
        let prep = &*self.prep;
        let c = prep.cls.rn.as_slice()[pos];
        match &mut self.engine {
            Engine::P7(e) => {
                let ok = e.try_candidate(prep, c);
                let ratio = e.last_touches() as f64 / (prep.graph.degree(c) + 1) as f64;
                if ratio > self.max_touch_ratio {
                    self.max_touch_ratio = ratio;
                }
                ok
            }
            Engine::P8 { a, stats } => {
                if a.contains(&c) {
                    return false;
                }
                let with: VertexSet = a.iter().copied().chain([c]).collect();
                if !prep.is_in_drn_traced(&with, stats) {
                    return false;
                }
                let generator = with.iter().filter(|&y| y > c).all(|y| !prep.is_in_drn_traced(&with.without(y), stats));
                if generator {
                    a.push(c);
                }
                generator
            }
        }
    }

    fn pop(&mut self) {
        match &mut self.engine {
            Engine::P7(e) => {
                e.backtrack(&self.prep);
            }
            Engine::P8 { a, .. } => {
                a.pop();
            }
        }
    }
}

impl Iterator for RnStream {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        if self.pending_pop {
            self.pending_pop = false;
            self.pop();
        }
        let rn_len = self.prep.cls.rn.len();
        loop {
            let frame = self.frames.last_mut()?;
            let depth = frame.depth;
            if !frame.entered {
                frame.entered = true;
                if depth % 2 == 0 {
                    return Some(self.current());
                }
            }
            let start = self.frames.last().unwrap().next;
            let mut child = None;
            for pos in start..rn_len {
                if self.prep.mode == Mode::P7 {
                    let c = self.prep.cls.rn.as_slice()[pos];
                    if matches!(&self.engine, Engine::P7(e) if e.rho().is_some_and(|r| c <= r)) {
                        continue;
                    }
                }
                if self.accept(pos) {
                    child = Some(pos);
                    break;
                }
            }
            match child {
                Some(pos) => {
                    self.frames.last_mut().unwrap().next = pos + 1;
                    let next = if self.prep.mode == Mode::P7 { pos + 1 } else { 0 };
                    self.frames.push(Frame { depth: depth + 1, next, entered: false });
                }
                None => {
                    self.frames.pop();
                    let out = (depth % 2 == 1).then(|| self.current());
                    if depth > 0 {
                        self.pending_pop = true;
                    }
                    if let Some(set) = out {
                        return Some(set);
                    }
                    if self.pending_pop {
                        self.pending_pop = false;
                        self.pop();
                    }
                }
            }
        }
    }
}

/// Stream over `D_RN(G)` for a prepared graph.
pub fn enumerate_rn(prep: &Arc<Prepared>) -> RnStream {
    RnStream::new(Arc::clone(prep))
}
