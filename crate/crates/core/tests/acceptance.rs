mod common;

use std::collections::BTreeSet;
use std::io::Write;
use std::time::{Duration, Instant};

use common::*;
use domdelay::bench::bench;
use domdelay::dom_enum::enumerate_dom;
use domdelay::generators::{exhaustive_corpus, gen_pk_free_chordal, gen_trivially_perfect, rng_for};
use domdelay::graph::named::{path, star};
use domdelay::ir_ext::{enumerate_dir, enumerate_instance, solve_icep};
use domdelay::oracle::{brute_dir, brute_dom, brute_drn, BruteInstance, Family};
use domdelay::recognition::{build_tree_poset, is_chordal, is_pk_free, DEFAULT_PATH_BUDGET};
use domdelay::rn_enum::{enumerate_rn, ExtensionInstance, IepStats, Mode, Prepared, RnStream};
use domdelay::sat::{build_reduction, decide_and_extract, random_cnf3, Cnf3, Lit};
use domdelay::{Graph, VertexSet};
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn family(it: impl Iterator<Item = VertexSet>) -> Result<Family, String> {
    let out: Vec<VertexSet> = it.collect();
    let len = out.len();
    let fam: Family = out.into_iter().collect();
    if fam.len() != len {
        return Err(format!("{} duplicate outputs", len - fam.len()));
    }
    Ok(fam)
}

fn class_graphs(k: usize) -> Vec<Graph> {
    let mut gs: Vec<Graph> = exhaustive_corpus(7).unwrap().into_iter().filter(|g| in_class(g, k)).collect();
    for seed in 0..500 {
        gs.push(gen_pk_free_chordal(4 + seed as usize % 7, k, seed).unwrap());
    }
    gs
}

fn dom_matches(g: &Graph, mode: Mode) -> Result<(), String> {
    let got = family(enumerate_dom(g.clone(), mode).map_err(|e| e.to_string())?)?;
    if got != brute_dom(g).unwrap() {
        return Err(format!("D(G) differs on {}", g.to_plain()));
    }
    Ok(())
}

fn p7_pipeline() -> Outcome {
    let gs = class_graphs(7);
    for g in &gs {
        dom_matches(g, Mode::P7)?;
    }
    Ok(format!("{} graphs", gs.len()))
}

fn p8_pipeline() -> Outcome {
    let gs = class_graphs(8);
    let mut parts = 0;
    for g in &gs {
        dom_matches(g, Mode::P8)?;
        let prep = Prepared::new(g.clone(), Mode::P8).unwrap();
        let rn = family(enumerate_rn(&prep))?;
        if rn != brute_drn(g).unwrap() {
            return Err(format!("D_RN differs on {}", g.to_plain()));
        }
        for a in &rn {
            let dir = family(enumerate_dir(&prep, a).unwrap())?;
            if dir != brute_dir(g, a).unwrap() {
                return Err(format!("DIR({a}) differs on {}", g.to_plain()));
            }
            parts += 1;
        }
    }
    Ok(format!("{} graphs, {parts} redundant parts", gs.len()))
}

fn set_systems() -> Outcome {
    let gs: Vec<Graph> = chordal_corpus().into_iter().filter(|g| in_class(g, 8)).collect();
    for g in &gs {
        set_system(g)?;
    }
    Ok(format!("{} graphs", gs.len()))
}

fn structural_props() -> Outcome {
    let corpus = chordal_corpus();
    for g in &corpus {
        structural(g, None)?;
    }
    let samples = larger_samples(100);
    for (i, (_, g)) in samples.iter().enumerate() {
        let mut rng = rng_for(99, i as u64);
        let subsets = (0..200).map(|_| (0..g.n()).filter(|_| rng.random_bool(0.4)).collect()).collect();
        structural(g, Some(subsets))?;
    }
    Ok(format!("{} corpus graphs, {} samples with 8 or 9 vertices", corpus.len(), samples.len()))
}

fn extension_solvers() -> Outcome {
    let mut stats = IepStats::default();
    let total = 2500u64;
    for i in 0..total {
        let mut rng = rng_for(7, i);
        let k = rng.random_range(1..=12);
        let h = gen_trivially_perfect(k, i).unwrap();
        let t = build_tree_poset(&h).unwrap();
        let p = rng.random_range(0..=3);
        // 0 and 1 mean Z, 2 means Y, 3.. name the X sets
        let label: Vec<usize> = (0..k).map(|_| rng.random_range(0..p + 3)).collect();
        let x_sets: Vec<Vec<usize>> =
            (3..p + 3).map(|j| (0..k).filter(|&v| label[v] == j).collect::<Vec<_>>()).filter(|x| !x.is_empty()).collect();
        let y: Vec<usize> = (0..k).filter(|&v| label[v] == 2).collect();
        let inst = ExtensionInstance::new(&t, x_sets.clone(), &y).unwrap();
        let xs: Vec<VertexSet> = x_sets.iter().map(|x| x.iter().copied().collect()).collect();
        let ys: VertexSet = y.iter().copied().collect();
        let comp = h.all_vertices();
        let b = BruteInstance { g: &h, comp: &comp, x_sets: &xs, y_set: &ys };
        if inst.solve_iep_traced(&mut stats) != b.brute_iep().unwrap() {
            return Err(format!("IEP instance {i}"));
        }
        let dir: BTreeSet<VertexSet> = enumerate_instance(&inst).collect();
        if dir != b.brute_dir_component().unwrap() {
            return Err(format!("extension family of instance {i}"));
        }
        let s: Vec<usize> = (0..k).filter(|_| rng.random_bool(0.2)).collect();
        let q: Vec<usize> = (0..k).filter(|v| !s.contains(v) && rng.random_bool(0.2)).collect();
        let want = b.brute_icep(&s.iter().copied().collect(), &q.iter().copied().collect()).unwrap();
        if solve_icep(&inst, &s, &q).unwrap() != want {
            return Err(format!("ICEP instance {i}"));
        }
    }
    Ok(format!("{total} instances, {} exact fallbacks in {} IEP calls", stats.fallbacks, stats.calls))
}

fn gadget() -> Outcome {
    let mut formulas = Vec::new();
    for seed in 0..220u64 {
        let n = 3 + seed as usize % 3;
        let distinct = n * (n - 1) * (n - 2) / 6 * 8;
        let m = if seed % 4 == 0 { 6 * n } else { 3 + seed as usize % (3 * n) };
        let m = m.min(distinct);
        formulas.push(random_cnf3(n, m, seed).map_err(|e| format!("n={n} m={m}: {e}"))?);
    }
    for extra in 0..3 {
        let mut clauses: Vec<[Lit; 3]> =
            (0..8).map(|s: usize| [0, 1, 2].map(|v| Lit { var: v, neg: s >> v & 1 == 1 })).collect();
        clauses.extend((3..3 + extra).map(|v| [Lit::pos(v), Lit::neg(0), Lit::pos(1)]));
        formulas.push(Cnf3::new(3 + extra, clauses).unwrap());
    }
    let mut unsat = 0;
    for phi in &formulas {
        let (g, a, map) = build_reduction(phi);
        if g.n() != 12 * phi.var_count() + phi.clauses().len() {
            return Err(format!("{} vertices for {} variables", g.n(), phi.var_count()));
        }
        let sat = phi.brute_solve().is_some();
        unsat += usize::from(!sat);
        match decide_and_extract(&g, &a, &map, 1 << 28).map_err(|e| e.to_string())? {
            Some(assignment) if sat && phi.satisfies(&assignment) => {}
            None if !sat => {}
            other => return Err(format!("sat={sat} but extension gave {other:?} for\n{}", phi.to_dimacs())),
        }
        if phi.var_count() <= 4
            && !(is_chordal(&g).holds() && is_pk_free(&g, 9, DEFAULT_PATH_BUDGET).unwrap().holds())
        {
            return Err(format!("gadget not P9-free chordal for\n{}", phi.to_dimacs()));
        }
    }
    Ok(format!("{} formulas, {unsat} unsatisfiable", formulas.len()))
}

fn ground_truths() -> Outcome {
    let fam = |sets: &[&[usize]]| -> Family { sets.iter().map(|s| s.iter().copied().collect()).collect() };
    let s3 = star(3);
    let p6 = path(6);
    let checks = [
        (brute_dom(&s3).unwrap().len(), 2),
        (enumerate_dom(s3.clone(), Mode::P7).unwrap().count(), 2),
        (brute_dom(&p6).unwrap().len(), 7),
        (enumerate_dom(p6.clone(), Mode::P7).unwrap().count(), 7),
        (enumerate_dom(p6.clone(), Mode::P8).unwrap().count(), 7),
    ];
    for (i, (got, want)) in checks.iter().enumerate() {
        if got != want {
            return Err(format!("count check {i}: {got} != {want}"));
        }
    }
    if brute_drn(&s3).unwrap() != fam(&[&[], &[0]]) {
        return Err("D_RN(S3)".into());
    }
    let want = fam(&[&[], &[1], &[4], &[1, 4]]);
    if brute_drn(&p6).unwrap() != want || family(enumerate_rn(&Prepared::new(p6, Mode::P7).unwrap()))? != want {
        return Err("D_RN(P6)".into());
    }
    Ok("|D(S3)| = 2, |D(P6)| = 7".into())
}

fn delay_scaling() -> Outcome {
    let mut rows = Vec::new();
    let mut prep_8000 = Duration::ZERO;
    for n in [2000, 4000, 8000] {
        let g = gen_pk_free_chordal(n, 7, 1).unwrap();
        let (mut cpu, mut wall) = (Duration::MAX, Duration::MAX);
        for _ in 0..7 {
            let r = bench(g.clone(), Mode::P7, Some(10_000)).map_err(|e| e.to_string())?;
            if r.solutions() < 10_000 {
                return Err(format!("only {} solutions at n = {n}", r.solutions()));
            }
            cpu = cpu.min(r.max_cpu_delay());
            wall = wall.min(r.max_delay());
            if n == 8000 {
                prep_8000 = prep_8000.max(r.preprocessing);
            }
        }
        rows.push((n, g.max_degree(), cpu, wall));
    }
    let ratio = |f: fn(&(usize, usize, Duration, Duration)) -> Duration| {
        f(&rows[2]).as_secs_f64() / f(&rows[0]).as_secs_f64()
    };
    let cpu_ratio = ratio(|r| r.2);
    let wall_ratio = ratio(|r| r.3);
    let detail = format!(
        "max delay {}; ratio {cpu_ratio:.2} cpu, {wall_ratio:.2} wall; preprocessing at 8000: {prep_8000:?}",
        rows.iter()
            .map(|(n, d, c, w)| format!("n={n} maxdeg={d}: {c:?} cpu / {w:?} wall"))
            .collect::<Vec<_>>()
            .join(", ")
    );
    if cpu_ratio <= 8.0 && prep_8000 <= Duration::from_secs(5) {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn touch_bound() -> Outcome {
    const BOUND: f64 = 16.0;
    let mut worst = 0.0f64;
    let mut graphs = class_graphs(7);
    for seed in 0..20 {
        graphs.push(gen_pk_free_chordal(200 + 50 * seed as usize, 7, seed).unwrap());
    }
    for g in &graphs {
        let mut s = RnStream::new(Prepared::new(g.clone(), Mode::P7).unwrap());
        for _ in s.by_ref().take(20_000) {}
        worst = worst.max(s.max_touch_ratio());
    }
    let detail = format!("max touches/(deg+1) = {worst:.2} over {} graphs, bound {BOUND}", graphs.len());
    if worst <= BOUND {
        Ok(detail)
    } else {
        Err(detail)
    }
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 9] = [
        ("P7 pipeline equals brute force", p7_pipeline),
        ("P8 pipeline, redundant parts and extensions equal brute force", p8_pipeline),
        ("independence and accessible set systems", set_systems),
        ("structural invariants", structural_props),
        ("IEP and ICEP solvers equal brute force", extension_solvers),
        ("3-SAT gadget", gadget),
        ("small ground truths", ground_truths),
        ("delay scaling", delay_scaling),
        ("per-candidate work bound", touch_bound),
    ];
    // written to stderr directly so the lines survive output capture
    let mut err = std::io::stderr();
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match &outcome {
            Ok(d) => writeln!(err, "criterion {} {name}: PASS ({d}; {secs:.1}s)", i + 1).unwrap(),
            Err(d) => {
                writeln!(err, "criterion {} {name}: FAIL ({d}; {secs:.1}s)", i + 1).unwrap();
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
