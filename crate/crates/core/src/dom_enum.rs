//! Minimal dominating sets as redundant parts joined with their
//! irredundant extensions.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::ir_ext::DirStream;
use crate::recognition::{is_chordal, is_pk_free, Recognition};
use crate::redundancy::Classification;
use crate::rn_enum::{Mode, Prepared, RnStream};

/// `A ∪ I` for every `A ∈ D_RN(G)` and every `I ∈ DIR(A)`.
pub struct DomStream {
    rn: RnStream,
    a: VertexSet,
    dir: Option<DirStream>,
}

impl DomStream {
    pub fn new(prep: Arc<Prepared>) -> DomStream {
        DomStream { rn: RnStream::new(prep), a: VertexSet::new(), dir: None }
    }

    pub fn prepared(&self) -> &Arc<Prepared> {
        self.rn.prepared()
    }

    /// The underlying redundant-part stream.
    pub fn rn_stream(&self) -> &RnStream {
        &self.rn
    }
}

impl Iterator for DomStream {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        loop {
            if let Some(i) = self.dir.as_mut().and_then(|d| d.next()) {
                return Some(self.a.union(&i));
            }
            self.a = self.rn.next()?;
            let prep = Arc::clone(self.rn.prepared());
            self.dir = Some(match self.rn.p7_engine() {
                Some(engine) => DirStream::cliques(&prep, engine.undominated_components()),
                None => DirStream::searches(&prep, &self.a),
            });
        }
    }
}

/// Streams `D(G)` for a connected graph of the certified class.
pub fn enumerate_dom(g: Graph, mode: Mode) -> Result<DomStream> {
    Ok(DomStream::new(Prepared::new(g, mode)?))
}

/// Checks chordality and P7- or P8-freeness exactly.
pub fn verify_class(g: &Graph, mode: Mode, budget: u64) -> Result<()> {
    if let Recognition::No(hole) = is_chordal(g) {
        let hole: VertexSet = hole.into_iter().collect();
        return Err(Error::NotInClass(format!("not chordal: induced cycle on {}", hole.to_one_indexed())));
    }
    let k = match mode {
        Mode::P7 => 7,
        Mode::P8 => 8,
    };
    if let Recognition::No(path) = is_pk_free(g, k, budget)? {
        let shown: Vec<String> = path.iter().map(|v| (v + 1).to_string()).collect();
        return Err(Error::NotInClass(format!("induced P{k} {}", shown.join(" "))));
    }
    Ok(())
}

/// Minimality through irredundant private neighbours: d dominates `IR(G)`
/// and every member keeps a private neighbour in `IR(G)`.
pub fn is_minimal_dominating(g: &Graph, cls: &Classification, d: &VertexSet) -> bool {
    let n = g.n();
    if d.iter().any(|v| v >= n) {
        return false;
    }
    let mut cnt = vec![0u32; n];
    for x in d.iter() {
        cnt[x] += 1;
        for &y in g.neighbors(x) {
            cnt[y] += 1;
        }
    }
    if cls.ir.iter().any(|y| cnt[y] == 0) {
        return false;
    }
    d.iter().all(|x| {
        let own = cls.is_irredundant(x) && cnt[x] == 1;
        own || g.neighbors(x).iter().any(|&y| cls.is_irredundant(y) && cnt[y] == 1)
    })
}
