//! Small hand-built automata: circles, the boundary of a square, the torus
//! and the Klein bottle, directed tori, and the lock specification.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::ModelError;
use crate::exterior::{Alphabet, Word};
use crate::hda::Hda;
use crate::precubical::{CubeKey, PrecubicalBuilder};
use crate::tensor::{tensor_hda, TensorHda};

fn name(s: &str) -> CubeKey {
    CubeKey::name(s)
}

fn build(b: &PrecubicalBuilder) -> crate::precubical::PrecubicalSet {
    b.build().expect("fixture faces resolve")
}

/// Vertices `v0, …, v(n-1)` and edges `x_i : v_i → v_(i+1 mod n)` labeled
/// by `labels[i]`; `v0` is initial and final.
pub fn directed_circle(alphabet: &Arc<Alphabet>, labels: Vec<Word>) -> Result<Hda, ModelError> {
    let n = labels.len();
    if n == 0 {
        return Err(ModelError::EmptyCircle);
    }
    let mut b = PrecubicalBuilder::new();
    for i in 0..n {
        b.vertex(name(&format!("v{i}")));
    }
    for i in 0..n {
        b.cube(name(&format!("x{i}")), 1, vec![name(&format!("v{i}"))], vec![name(&format!("v{}", (i + 1) % n))]);
    }
    let p = build(&b);
    let start = BTreeSet::from([0]);
    Ok(Hda::new(p, alphabet.clone(), labels, start.clone(), start)?)
}

/// The four edges of a square without its interior: `p0 → p2` and
/// `p3 → p5` labeled `a`, `p3 → p0` and `p5 → p2` labeled `b`; `p3` is
/// initial and there are no final states.
pub fn boundary_square(alphabet: &Arc<Alphabet>, a: Word, b: Word) -> Result<Hda, ModelError> {
    let mut pb = PrecubicalBuilder::new();
    for v in ["p3", "p5", "p0", "p2"] {
        pb.vertex(name(v));
    }
    let edges = [("p0p2", "p0", "p2"), ("p3p5", "p3", "p5"), ("p3p0", "p3", "p0"), ("p5p2", "p5", "p2")];
    for (e, s, t) in edges {
        pb.cube(name(e), 1, vec![name(s)], vec![name(t)]);
    }
    let p = build(&pb);
    let labels = vec![a.clone(), a, b.clone(), b];
    let initial = BTreeSet::from([p.find(0, &name("p3")).expect("vertex").index]);
    Ok(Hda::new(p, alphabet.clone(), labels, initial, BTreeSet::new())?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Surface {
    Torus,
    Klein,
}

/// Two squares side by side with the outer vertical sides identified and
/// the rows identified (straight for the torus, crossed for the Klein
/// bottle). Coordinate 1 runs along the `a` edges, coordinate 2 along `b`.
/// Vertices `v` (initial and final) and `w`.
pub fn torus_or_klein(alphabet: &Arc<Alphabet>, kind: Surface, a1: Word, a2: Word, b: Word) -> Result<Hda, ModelError> {
    if kind == Surface::Klein && a1 != a2 {
        return Err(ModelError::KleinLabelsDiffer);
    }
    let mut pb = PrecubicalBuilder::new();
    pb.vertex(name("v")).vertex(name("w"));
    // the two a-edges run v → w; bm and bs are the b-loops at v and w
    for (e, s, t) in [("a1", "v", "w"), ("a2", "v", "w"), ("bm", "v", "v"), ("bs", "w", "w")] {
        pb.cube(name(e), 1, vec![name(s)], vec![name(t)]);
    }
    let (r_lo, r_hi, l_lo, l_hi) = match kind {
        Surface::Torus => ("a2", "a2", "a1", "a1"),
        Surface::Klein => ("a2", "a1", "a1", "a2"),
    };
    pb.cube(name("R"), 2, vec![name("bm"), name(r_lo)], vec![name("bs"), name(r_hi)]);
    pb.cube(name("L"), 2, vec![name("bm"), name(l_lo)], vec![name("bs"), name(l_hi)]);
    let p = build(&pb);
    let labels = vec![a1, a2, b.clone(), b];
    let start = BTreeSet::from([0]);
    Ok(Hda::new(p, alphabet.clone(), labels, start.clone(), start)?)
}

/// `circle(labels_a) ⊗ circle(labels_b)`.
pub fn directed_torus(alphabet: &Arc<Alphabet>, labels_a: Vec<Word>, labels_b: Vec<Word>) -> Result<TensorHda, ModelError> {
    let a = directed_circle(alphabet, labels_a)?;
    let b = directed_circle(alphabet, labels_b)?;
    Ok(tensor_hda(&a, &b)?)
}

/// The lock alphabet `x++_0, x++_1, x--_0, x--_1`.
pub fn lock_alphabet() -> Arc<Alphabet> {
    Arc::new(Alphabet::new(["x++_0", "x++_1", "x--_0", "x--_1"]).expect("distinct letters"))
}

/// Two directed circles `idle → held_i → idle` labeled `x++_i` then `x--_i`,
/// glued at the initial and final vertex `idle`.
pub fn lock_spec() -> Hda {
    let alphabet = lock_alphabet();
    let mut pb = PrecubicalBuilder::new();
    pb.vertex(name("idle")).vertex(name("held_0")).vertex(name("held_1"));
    let mut labels = Vec::new();
    for i in 0..2 {
        let held = format!("held_{i}");
        pb.cube(name(&format!("acquire_{i}")), 1, vec![name("idle")], vec![name(&held)]);
        pb.cube(name(&format!("release_{i}")), 1, vec![name(&held)], vec![name("idle")]);
        labels.push(alphabet.word([format!("x++_{i}")]).expect("lock letter"));
        labels.push(alphabet.word([format!("x--_{i}")]).expect("lock letter"));
    }
    let p = build(&pb);
    let idle = BTreeSet::from([0]);
    Hda::new(p, alphabet, labels, idle.clone(), idle).expect("fixture is consistent")
}
