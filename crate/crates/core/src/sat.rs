//! 3-SAT gadget: a P9-free chordal graph whose redundant vertices form a
//! redundant part exactly when the formula is satisfiable.

use std::collections::BTreeSet;

use rand::Rng;
use serde_json::json;

use crate::error::{Error, ParseErrorKind, Result};
use crate::generators::rng_for;
use crate::graph::{Graph, VertexSet};
use crate::oracle::brute_drn_member;

/// A literal: 0-indexed variable and sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit {
    pub var: usize,
    pub neg: bool,
}

impl Lit {
    pub fn pos(var: usize) -> Lit {
        Lit { var, neg: false }
    }

    pub fn neg(var: usize) -> Lit {
        Lit { var, neg: true }
    }

    /// DIMACS form, 1-indexed and signed.
    pub fn to_dimacs(self) -> i64 {
        let v = self.var as i64 + 1;
        if self.neg {
            -v
        } else {
            v
        }
    }

    pub fn eval(self, assignment: &[bool]) -> bool {
        assignment[self.var] != self.neg
    }
}

/// A 3-CNF formula outside the degenerate cases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cnf3 {
    var_count: usize,
    clauses: Vec<[Lit; 3]>,
}

impl Cnf3 {
    /// Checks: at least three variables and clauses, three distinct
    /// variables per clause, no repeated clause, no literal in every clause.
    pub fn new(var_count: usize, clauses: Vec<[Lit; 3]>) -> Result<Cnf3> {
        if var_count < 3 {
            return Err(Error::DegenerateFormula(format!("{var_count} variables (at least 3 required)")));
        }
        if clauses.len() < 3 {
            return Err(Error::DegenerateFormula(format!("{} clauses (at least 3 required)", clauses.len())));
        }
        let mut seen = BTreeSet::new();
        for (j, c) in clauses.iter().enumerate() {
            if let Some(l) = c.iter().find(|l| l.var >= var_count) {
                return Err(Error::DegenerateFormula(format!("clause {} uses variable {}", j + 1, l.var + 1)));
            }
            if c[0].var == c[1].var || c[0].var == c[2].var || c[1].var == c[2].var {
                return Err(Error::DegenerateFormula(format!("clause {} repeats a variable", j + 1)));
            }
            let mut key = *c;
            key.sort();
            if !seen.insert(key) {
                return Err(Error::DegenerateFormula(format!("clause {} is repeated", j + 1)));
            }
        }
        for var in 0..var_count {
            for l in [Lit::pos(var), Lit::neg(var)] {
                if clauses.iter().all(|c| c.contains(&l)) {
                    return Err(Error::DegenerateFormula(format!("literal {} occurs in every clause", l.to_dimacs())));
                }
            }
        }
        Ok(Cnf3 { var_count, clauses })
    }

    pub fn var_count(&self) -> usize {
        self.var_count
    }

    pub fn clauses(&self) -> &[[Lit; 3]] {
        &self.clauses
    }

    pub fn satisfies(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| c.iter().any(|l| l.eval(assignment)))
    }

    /// First satisfying assignment in binary counting order.
    pub fn brute_solve(&self) -> Option<Vec<bool>> {
        (0u64..1 << self.var_count)
            .map(|bits| (0..self.var_count).map(|i| bits >> i & 1 == 1).collect::<Vec<bool>>())
            .find(|a| self.satisfies(a))
    }

    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p cnf {} {}\n", self.var_count, self.clauses.len());
        for c in &self.clauses {
            s.push_str(&format!("{} {} {} 0\n", c[0].to_dimacs(), c[1].to_dimacs(), c[2].to_dimacs()));
        }
        s
    }
}

/// Parses DIMACS CNF; clauses may span lines and must have three literals.
pub fn parse_cnf(text: &str) -> Result<Cnf3> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<(Lit, usize)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if line.starts_with('p') {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let parsed = match parts.as_slice() {
                ["p", "cnf", n, m] => n.parse().ok().zip(m.parse().ok()),
                _ => None,
            };
            let (n, m) = parsed.ok_or_else(|| Error::parse(line_no, ParseErrorKind::MalformedHeader(line.into())))?;
            if header.is_some() {
                return Err(Error::parse(line_no, ParseErrorKind::MalformedHeader("second header".into())));
            }
            header = Some((n, m, line_no));
            continue;
        }
        let (n, _, _) = header.ok_or_else(|| Error::parse(line_no, ParseErrorKind::MissingHeader))?;
        for tok in line.split_whitespace() {
            let x: i64 = tok.parse().map_err(|_| Error::parse(line_no, ParseErrorKind::MalformedLine(raw.into())))?;
            if x == 0 {
                if current.len() != 3 {
                    return Err(Error::parse(
                        line_no,
                        ParseErrorKind::MalformedLine(format!("clause with {} literals", current.len())),
                    ));
                }
                clauses.push([current[0].0, current[1].0, current[2].0]);
                current.clear();
                continue;
            }
            if x.unsigned_abs() as usize > n {
                return Err(Error::parse(line_no, ParseErrorKind::VertexOutOfRange { vertex: x, n }));
            }
            let var = x.unsigned_abs() as usize - 1;
            current.push((if x < 0 { Lit::neg(var) } else { Lit::pos(var) }, line_no));
        }
    }
    let (n, m, header_line) = header.ok_or_else(|| Error::parse(1, ParseErrorKind::MissingHeader))?;
    if let Some(&(_, line)) = current.first() {
        return Err(Error::parse(line, ParseErrorKind::MalformedLine("clause not terminated by 0".into())));
    }
    if clauses.len() != m {
        return Err(Error::parse(header_line, ParseErrorKind::CountMismatch { expected: m, found: clauses.len() }));
    }
    Cnf3::new(n, clauses)
}

/// Uniformly random clauses over `var_count` variables, redrawn until the
/// formula is not degenerate.
pub fn random_cnf3(var_count: usize, clause_count: usize, seed: u64) -> Result<Cnf3> {
    if var_count < 3 || clause_count < 3 {
        return Err(Error::DegenerateFormula("at least 3 variables and 3 clauses required".into()));
    }
    let distinct = var_count * (var_count - 1) * (var_count - 2) / 6 * 8;
    if clause_count > distinct {
        return Err(Error::DegenerateFormula(format!("only {distinct} distinct clauses exist")));
    }
    let mut rng = rng_for(seed, 0);
    loop {
        let mut clauses: Vec<[Lit; 3]> = Vec::with_capacity(clause_count);
        while clauses.len() < clause_count {
            let vars = rand::seq::index::sample(&mut rng, var_count, 3);
            let c: Vec<Lit> = vars.iter().map(|v| Lit { var: v, neg: rng.random_bool(0.5) }).collect();
            let c = [c[0], c[1], c[2]];
            let mut key = c;
            key.sort();
            if !clauses.iter().any(|d| {
                let mut k = *d;
                k.sort();
                k == key
            }) {
                clauses.push(c);
            }
        }
        if let Ok(f) = Cnf3::new(var_count, clauses) {
            return Ok(f);
        }
    }
}

/// What a gadget vertex stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GadgetRole {
    /// x_i or ¬x_i
    Literal(Lit),
    /// u_i or ¬u_i
    Copy(Lit),
    Clause(usize),
    /// y_i or ¬y_i
    PendantMid(Lit),
    /// z_i or ¬z_i
    PendantEnd(Lit),
    PawA(usize),
    PawB(usize),
    PawV(usize),
    PawW(usize),
}

impl GadgetRole {
    fn describe(self) -> serde_json::Value {
        let lit = |kind: &str, l: Lit| json!({"role": kind, "var": l.var + 1, "negated": l.neg});
        match self {
            GadgetRole::Literal(l) => lit("x", l),
            GadgetRole::Copy(l) => lit("u", l),
            GadgetRole::PendantMid(l) => lit("y", l),
            GadgetRole::PendantEnd(l) => lit("z", l),
            GadgetRole::Clause(j) => json!({"role": "c", "clause": j + 1}),
            GadgetRole::PawA(i) => json!({"role": "a", "var": i + 1}),
            GadgetRole::PawB(i) => json!({"role": "b", "var": i + 1}),
            GadgetRole::PawV(i) => json!({"role": "v", "var": i + 1}),
            GadgetRole::PawW(i) => json!({"role": "w", "var": i + 1}),
        }
    }
}

/// Vertex numbering of the gadget: literals, copies, clauses, pendant
/// paths, then paws.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetMap {
    n_vars: usize,
    m_clauses: usize,
}

impl GadgetMap {
    pub fn new(n_vars: usize, m_clauses: usize) -> Self {
        GadgetMap { n_vars, m_clauses }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn m_clauses(&self) -> usize {
        self.m_clauses
    }

    pub fn vertex_count(&self) -> usize {
        12 * self.n_vars + self.m_clauses
    }

    pub fn literal(&self, l: Lit) -> usize {
        2 * l.var + usize::from(l.neg)
    }

    pub fn copy(&self, l: Lit) -> usize {
        2 * self.n_vars + 2 * l.var + usize::from(l.neg)
    }

    pub fn clause(&self, j: usize) -> usize {
        4 * self.n_vars + j
    }

    fn pendant_base(&self) -> usize {
        4 * self.n_vars + self.m_clauses
    }

    pub fn pendant_mid(&self, l: Lit) -> usize {
        self.pendant_base() + 4 * l.var + usize::from(l.neg)
    }

    pub fn pendant_end(&self, l: Lit) -> usize {
        self.pendant_base() + 4 * l.var + 2 + usize::from(l.neg)
    }

    fn paw_base(&self) -> usize {
        8 * self.n_vars + self.m_clauses
    }

    pub fn paw_a(&self, i: usize) -> usize {
        self.paw_base() + 4 * i
    }

    pub fn paw_b(&self, i: usize) -> usize {
        self.paw_base() + 4 * i + 1
    }

    pub fn paw_v(&self, i: usize) -> usize {
        self.paw_base() + 4 * i + 2
    }

    pub fn paw_w(&self, i: usize) -> usize {
        self.paw_base() + 4 * i + 3
    }

    pub fn role(&self, v: usize) -> Option<GadgetRole> {
        let n = self.n_vars;
        let lit = |r: usize| Lit { var: r / 2, neg: r % 2 == 1 };
        if v < 2 * n {
            Some(GadgetRole::Literal(lit(v)))
        } else if v < 4 * n {
            Some(GadgetRole::Copy(lit(v - 2 * n)))
        } else if v < self.pendant_base() {
            Some(GadgetRole::Clause(v - 4 * n))
        } else if v < self.paw_base() {
            let r = v - self.pendant_base();
            let l = Lit { var: r / 4, neg: r % 2 == 1 };
            Some(if r % 4 < 2 { GadgetRole::PendantMid(l) } else { GadgetRole::PendantEnd(l) })
        } else if v < self.vertex_count() {
            let r = v - self.paw_base();
            let i = r / 4;
            Some(match r % 4 {
                0 => GadgetRole::PawA(i),
                1 => GadgetRole::PawB(i),
                2 => GadgetRole::PawV(i),
                _ => GadgetRole::PawW(i),
            })
        } else {
            None
        }
    }

    /// The set the reduction targets: all a_i, v_i, y_i and ¬y_i.
    pub fn expected_redundant(&self) -> VertexSet {
        (0..self.n_vars)
            .flat_map(|i| [self.paw_a(i), self.paw_v(i), self.pendant_mid(Lit::pos(i)), self.pendant_mid(Lit::neg(i))])
            .collect()
    }

    /// One JSON object per line, in vertex order, with 1-indexed vertices.
    pub fn to_json_lines(&self) -> String {
        let mut s = String::new();
        for v in 0..self.vertex_count() {
            let mut obj = self.role(v).expect("vertex in range").describe();
            obj["vertex"] = json!(v + 1);
            s.push_str(&obj.to_string());
            s.push('\n');
        }
        s
    }
}

/// Builds the gadget graph, its redundant vertex set and the numbering.
pub fn build_reduction(phi: &Cnf3) -> (Graph, VertexSet, GadgetMap) {
    let n = phi.var_count();
    let map = GadgetMap::new(n, phi.clauses().len());
    let mut edges = Vec::new();
    let lits: Vec<Lit> = (0..n).flat_map(|i| [Lit::pos(i), Lit::neg(i)]).collect();
    let core: Vec<usize> =
        lits.iter().map(|&l| map.copy(l)).chain((0..phi.clauses().len()).map(|j| map.clause(j))).collect();
    for (i, &u) in core.iter().enumerate() {
        for &w in &core[i + 1..] {
            edges.push((u, w));
        }
    }
    for &l in &lits {
        edges.push((map.literal(l), map.copy(l)));
        edges.push((map.literal(l), map.pendant_mid(l)));
        edges.push((map.pendant_mid(l), map.pendant_end(l)));
    }
    for (j, c) in phi.clauses().iter().enumerate() {
        for &l in c {
            edges.push((map.literal(l), map.clause(j)));
        }
    }
    for i in 0..n {
        let (a, b, v, w) = (map.paw_a(i), map.paw_b(i), map.paw_v(i), map.paw_w(i));
        edges.extend([(a, v), (a, w), (v, w), (a, b)]);
        edges.push((v, map.copy(Lit::pos(i))));
        edges.push((v, map.copy(Lit::neg(i))));
    }
    let g = Graph::from_edges(map.vertex_count(), edges).expect("gadget edges are distinct");
    let a_set = crate::redundancy::classify(&g).rn;
    (g, a_set, map)
}

/// Searches for an irredundant extension of `a_set` and reads a truth
/// assignment off its literal vertices.
pub fn decide_and_extract(g: &Graph, a_set: &VertexSet, map: &GadgetMap, budget: u64) -> Result<Option<Vec<bool>>> {
    let Some(ext) = brute_drn_member(g, a_set, budget)? else {
        return Ok(None);
    };
    let mut assignment = vec![false; map.n_vars()];
    for v in ext.iter() {
        match map.role(v) {
            Some(GadgetRole::Literal(l)) => assignment[l.var] = !l.neg,
            other => {
                return Err(Error::MalformedInstance(format!("extension uses non-literal vertex {} ({other:?})", v + 1)))
            }
        }
    }
    Ok(Some(assignment))
}
