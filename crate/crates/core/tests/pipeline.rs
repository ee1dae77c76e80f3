use std::collections::BTreeSet;

use domdelay::dom_enum::enumerate_dom;
use domdelay::generators::{exhaustive_corpus, gen_pk_free_chordal};
use domdelay::ir_ext::enumerate_dir;
use domdelay::oracle::{brute_dir, brute_dom, brute_drn};
use domdelay::recognition::{is_chordal, is_pk_free, DEFAULT_PATH_BUDGET};
use domdelay::rn_enum::{enumerate_rn, Mode, Prepared};
use domdelay::{Graph, VertexSet};

fn in_class(g: &Graph, k: usize) -> bool {
    is_chordal(g).holds() && is_pk_free(g, k, DEFAULT_PATH_BUDGET).unwrap().holds()
}

fn check_dom(g: &Graph, mode: Mode) {
    let out: Vec<VertexSet> = enumerate_dom(g.clone(), mode).unwrap().collect();
    let fam: BTreeSet<VertexSet> = out.iter().cloned().collect();
    assert_eq!(fam.len(), out.len(), "duplicate output on {}", g.to_plain());
    assert_eq!(fam, brute_dom(g).unwrap(), "family mismatch on {}", g.to_plain());
}

fn check_parts(g: &Graph) {
    let prep = Prepared::new(g.clone(), Mode::P8).unwrap();
    let rn: Vec<VertexSet> = enumerate_rn(&prep).collect();
    let fam: BTreeSet<VertexSet> = rn.iter().cloned().collect();
    assert_eq!(fam.len(), rn.len());
    assert_eq!(fam, brute_drn(g).unwrap(), "rn mismatch on {}", g.to_plain());
    for a in &fam {
        let dir: Vec<VertexSet> = enumerate_dir(&prep, a).unwrap().collect();
        let dfam: BTreeSet<VertexSet> = dir.iter().cloned().collect();
        assert_eq!(dfam.len(), dir.len());
        assert_eq!(dfam, brute_dir(g, a).unwrap(), "dir mismatch for {a} on {}", g.to_plain());
    }
}

#[test]
fn p7_pipeline_on_corpus_and_samples() {
    for g in exhaustive_corpus(7).unwrap().iter().filter(|g| in_class(g, 7)) {
        check_dom(g, Mode::P7);
    }
    for seed in 0..500 {
        let n = 4 + (seed as usize % 7);
        check_dom(&gen_pk_free_chordal(n, 7, seed).unwrap(), Mode::P7);
    }
}

#[test]
fn p8_pipeline_on_corpus_and_samples() {
    for g in exhaustive_corpus(7).unwrap().iter().filter(|g| in_class(g, 8)) {
        check_dom(g, Mode::P8);
        check_parts(g);
    }
    for seed in 0..500 {
        let n = 4 + (seed as usize % 7);
        let g = gen_pk_free_chordal(n, 8, seed).unwrap();
        check_dom(&g, Mode::P8);
        check_parts(&g);
    }
}

#[test]
fn larger_samples() {
    for seed in 0..200 {
        let n = 11 + (seed as usize % 8);
        check_dom(&gen_pk_free_chordal(n, 7, seed).unwrap(), Mode::P7);
        let g = gen_pk_free_chordal(n, 8, seed).unwrap();
        check_dom(&g, Mode::P8);
        check_parts(&g);
    }
}
