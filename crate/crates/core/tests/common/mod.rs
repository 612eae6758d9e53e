//! Random automata and independent oracles shared by the property suites.

#![allow(dead_code)]

pub mod dimaps;
pub mod suites;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use hdalab_core::chain::Chain;
use hdalab_core::hda::Hda;
use hdalab_core::models::directed_circle;
use hdalab_core::precubical::PrecubicalBuilder;
use hdalab_core::tensor::tensor_hda;
use hdalab_core::{Alphabet, CoefficientRing, CubeId, CubeKey, PrecubicalSet, Word};
use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

pub const LETTERS: [&str; 5] = ["a", "b", "c", "d", "e"];
pub const DEFAULT_SEED: u64 = 0x5eed_4da1;

/// `HDA_LAB_SEED` or the default.
pub fn seed() -> u64 {
    std::env::var("HDA_LAB_SEED").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_SEED)
}

/// A deterministic runner for `cases` cases.
pub fn runner(cases: u32) -> TestRunner {
    let mut bytes = [0u8; 32];
    bytes[..8].copy_from_slice(&seed().to_le_bytes());
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &bytes))
}

/// `PROPTEST_CASES` or `default`.
pub fn cases(default: u32) -> u32 {
    std::env::var("PROPTEST_CASES").ok().and_then(|s| s.parse().ok()).unwrap_or(default)
}

pub fn alphabet() -> Arc<Alphabet> {
    Arc::new(Alphabet::new(LETTERS).unwrap())
}

/// Letter indices; repeats and the empty word are allowed.
pub fn arb_word() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..LETTERS.len(), 0..=2)
}

pub fn word(al: &Alphabet, w: &[usize]) -> Word {
    al.word(w.iter().map(|&i| LETTERS[i])).unwrap()
}

/// A directed circle or a directed interval.
#[derive(Clone, Debug)]
pub struct Factor {
    pub cyclic: bool,
    pub labels: Vec<Vec<usize>>,
}

pub fn arb_factor(max_len: usize) -> impl Strategy<Value = Factor> {
    (any::<bool>(), prop::collection::vec(arb_word(), 1..=max_len)).prop_map(|(cyclic, labels)| Factor { cyclic, labels })
}

pub fn arb_circle(max_len: usize) -> impl Strategy<Value = Factor> {
    prop::collection::vec(arb_word(), 1..=max_len).prop_map(|labels| Factor { cyclic: true, labels })
}

pub fn interval_hda(al: &Arc<Alphabet>, labels: Vec<Word>) -> Hda {
    let mut b = PrecubicalBuilder::new();
    let v = |i: usize| CubeKey::name(format!("v{i}"));
    for i in 0..=labels.len() {
        b.vertex(v(i));
    }
    for i in 0..labels.len() {
        b.cube(CubeKey::name(format!("x{i}")), 1, vec![v(i)], vec![v(i + 1)]);
    }
    let p = b.build().unwrap();
    let last = labels.len();
    Hda::new(p, al.clone(), labels, BTreeSet::from([0]), BTreeSet::from([last])).unwrap()
}

pub fn factor_hda(al: &Arc<Alphabet>, f: &Factor) -> Hda {
    let ws: Vec<Word> = f.labels.iter().map(|w| word(al, w)).collect();
    if f.cyclic {
        directed_circle(al, ws).unwrap()
    } else {
        interval_hda(al, ws)
    }
}

pub fn product(al: &Arc<Alphabet>, factors: &[Factor]) -> Hda {
    let mut acc = factor_hda(al, &factors[0]);
    for f in &factors[1..] {
        acc = tensor_hda(&acc, &factor_hda(al, f)).unwrap().hda;
    }
    acc
}

/// A face-closed part of a product of circles and intervals.
#[derive(Clone, Debug)]
pub struct Recipe {
    pub factors: Vec<Factor>,
    pub keep: Vec<bool>,
}

pub fn arb_recipe(max_factors: usize, max_len: usize) -> impl Strategy<Value = Recipe> {
    (prop::collection::vec(arb_factor(max_len), 1..=max_factors), prop::collection::vec(prop::bool::weighted(0.75), 1..40))
        .prop_map(|(factors, keep)| Recipe { factors, keep })
}

pub fn build(r: &Recipe) -> Hda {
    let al = alphabet();
    let full = product(&al, &r.factors);
    let p = full.precubical();
    let mut kept: BTreeSet<CubeId> = BTreeSet::new();
    for (j, x) in p.all_cubes().enumerate() {
        if r.keep[j % r.keep.len()] {
            kept.insert(x);
        }
    }
    if kept.is_empty() {
        kept.insert(CubeId::new(0, 0));
    }
    subcomplex(&full, &kept)
}

/// The smallest sub-automaton containing `cubes`.
pub fn subcomplex(a: &Hda, cubes: &BTreeSet<CubeId>) -> Hda {
    let p = a.precubical();
    let top = p.dim().unwrap_or(0);
    let mut kept: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); top + 1];
    for x in cubes {
        kept[x.dim].insert(x.index);
    }
    for n in (1..=top).rev() {
        let level: Vec<usize> = kept[n].iter().copied().collect();
        for i in level {
            for k in 0..2 {
                for j in 1..=n {
                    let f = p.face(CubeId::new(n, i), k, j).unwrap();
                    kept[n - 1].insert(f.index);
                }
            }
        }
    }
    let mut q = PrecubicalSet::new();
    let mut position: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new(); top + 1];
    let mut labels = Vec::new();
    for n in 0..=top {
        for &i in &kept[n] {
            let x = CubeId::new(n, i);
            let faces: Vec<usize> = (0..2u8)
                .flat_map(|k| (1..=n).map(move |j| (k, j)))
                .map(|(k, j)| position[n - 1][&p.face(x, k, j).unwrap().index])
                .collect();
            let y = q.push(n, p.key(x).clone(), &faces).unwrap();
            position[n].insert(i, y.index);
            if n == 1 {
                labels.push(a.label(x).clone());
            }
        }
    }
    let keep_states = |s: Vec<CubeId>| -> BTreeSet<usize> { s.iter().filter_map(|v| position[0].get(&v.index).copied()).collect() };
    let initial = keep_states(a.initial().collect());
    let final_states = keep_states(a.final_states().collect());
    Hda::new(q, a.alphabet().clone(), labels, initial, final_states).unwrap()
}

/// `e^k_i x`, by taking `d^{1-k}` in every other direction from the top down.
pub fn oracle_edge(p: &PrecubicalSet, x: CubeId, k: u8, i: usize) -> CubeId {
    let mut y = x;
    for j in (1..=x.dim).rev() {
        if j != i {
            y = p.face(y, 1 - k, j).unwrap();
        }
    }
    y
}

fn det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut acc = 0;
    for c in 0..n {
        if m[0][c] == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, &v)| v).collect()).collect();
        let sign = if c % 2 == 0 { 1 } else { -1 };
        acc += sign * m[0][c] * det(&minor);
    }
    acc
}

/// Coefficients of `∧_i (Σ letters of the i-th edge word)` by minors of the
/// letter-count matrix, keyed by increasing letter indices.
pub fn oracle_wedge_of_words(words: &[Vec<u32>]) -> BTreeMap<Vec<u32>, i64> {
    let letters: Vec<u32> = words.iter().flatten().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let counts: Vec<Vec<i64>> =
        words.iter().map(|w| letters.iter().map(|l| w.iter().filter(|x| *x == l).count() as i64).collect()).collect();
    let n = words.len();
    let mut out = BTreeMap::new();
    for cols in subsets(letters.len(), n) {
        let m: Vec<Vec<i64>> = counts.iter().map(|row| cols.iter().map(|&c| row[c]).collect()).collect();
        let d = det(&m);
        if d != 0 {
            out.insert(cols.iter().map(|&c| letters[c]).collect(), d);
        }
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut with: Vec<Vec<usize>> = subsets(n - 1, k - 1);
    for s in &mut with {
        s.push(n - 1);
    }
    let mut out = subsets(n - 1, k);
    out.extend(with);
    out
}

/// The label of a cube computed from scratch.
pub fn oracle_cube_label(a: &Hda, x: CubeId) -> BTreeMap<Vec<u32>, i64> {
    let p = a.precubical();
    let words: Vec<Vec<u32>> = (1..=x.dim).map(|i| a.label(oracle_edge(p, x, 0, i)).iter().map(|l| l.0).collect()).collect();
    oracle_wedge_of_words(&words)
}

/// An exterior element as index-keyed integer coefficients.
pub fn coefficients(e: &hdalab_core::ExteriorElement) -> BTreeMap<Vec<u32>, i64> {
    e.terms().map(|(b, k)| (b.letters().to_vec(), i64::try_from(k.clone()).unwrap())).collect()
}

/// Reduces oracle coefficients into `ring`, dropping zeros.
pub fn reduce(m: BTreeMap<Vec<u32>, i64>, ring: CoefficientRing) -> BTreeMap<Vec<u32>, i64> {
    let p = ring.characteristic() as i64;
    m.into_iter().map(|(k, v)| (k, if p == 0 { v } else { v.rem_euclid(p) })).filter(|(_, v)| *v != 0).collect()
}

/// `Σ_i (-1)^i (d^0_i x - d^1_i x)`, computed from faces.
pub fn oracle_boundary(p: &PrecubicalSet, x: CubeId, ring: CoefficientRing) -> Chain {
    let mut out = Chain::zero(x.dim - 1, ring);
    for i in 1..=x.dim {
        let s = BigInt::from(if i % 2 == 0 { 1 } else { -1 });
        out.add_term(p.face(x, 0, i).unwrap(), s.clone());
        out.add_term(p.face(x, 1, i).unwrap(), -s);
    }
    out
}

pub fn rings() -> [CoefficientRing; 3] {
    [CoefficientRing::Integers, CoefficientRing::prime_field(2).unwrap(), CoefficientRing::prime_field(3).unwrap()]
}
