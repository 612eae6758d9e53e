//! Higher-dimensional automata over a free monoid, their labeling cochains
//! and the induced labels of homology classes.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::chain::Chain;
use crate::error::{AlgebraError, ChainError, CubeError, HdaError};
use crate::exterior::{word_to_vector, Alphabet, ExteriorElement, Word};
use crate::homology::{homology, HomologyGroup};
use crate::lattice::{label_image, LabelImage};
use crate::precubical::{Coord, CubeId, Path, PrecubicalSet};
use crate::ring::CoefficientRing;
use crate::validation::{ValidationReport, Violation};

/// A `Σ*`-HDA: a precubical set with initial and final vertices and a word
/// on every edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hda {
    precubical: PrecubicalSet,
    alphabet: Arc<Alphabet>,
    labels: Vec<Word>,
    initial: BTreeSet<usize>,
    final_states: BTreeSet<usize>,
}

impl Hda {
    /// `labels[j]` labels the edge at position `j`; states are vertex positions.
    pub fn new(
        precubical: PrecubicalSet,
        alphabet: Arc<Alphabet>,
        labels: Vec<Word>,
        initial: BTreeSet<usize>,
        final_states: BTreeSet<usize>,
    ) -> Result<Self, HdaError> {
        let edges = precubical.count(1);
        if labels.len() != edges {
            return Err(HdaError::LabelCount { expected: edges, found: labels.len() });
        }
        let vertices = precubical.count(0);
        if initial.iter().chain(&final_states).any(|&v| v >= vertices) {
            return Err(HdaError::StateNotVertex);
        }
        Ok(Hda { precubical, alphabet, labels, initial, final_states })
    }

    pub fn precubical(&self) -> &PrecubicalSet {
        &self.precubical
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn label(&self, edge: CubeId) -> &Word {
        debug_assert_eq!(edge.dim, 1);
        &self.labels[edge.index]
    }

    pub fn labels(&self) -> &[Word] {
        &self.labels
    }

    pub fn initial(&self) -> impl Iterator<Item = CubeId> + '_ {
        self.initial.iter().map(|&index| CubeId::new(0, index))
    }

    pub fn final_states(&self) -> impl Iterator<Item = CubeId> + '_ {
        self.final_states.iter().map(|&index| CubeId::new(0, index))
    }

    pub fn is_initial(&self, v: CubeId) -> bool {
        v.dim == 0 && self.initial.contains(&v.index)
    }

    pub fn is_final(&self, v: CubeId) -> bool {
        v.dim == 0 && self.final_states.contains(&v.index)
    }

    /// The same automaton with its labels rewritten, letter by letter name,
    /// over another alphabet.
    pub fn relabel(&self, alphabet: &Arc<Alphabet>) -> Result<Hda, AlgebraError> {
        if Arc::ptr_eq(alphabet, &self.alphabet) {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.alphabet.len());
        for name in self.alphabet.letters() {
            map.push(alphabet.letter(name)?);
        }
        let labels = self.labels.iter().map(|w| w.iter().map(|l| map[l.0 as usize]).collect()).collect();
        Ok(Hda { labels, alphabet: alphabet.clone(), ..self.clone() })
    }

    /// True iff both alphabets hold the same letters, in any order.
    pub fn same_letters(&self, other: &Alphabet) -> bool {
        let mut a: Vec<&String> = self.alphabet.letters().iter().collect();
        let mut b: Vec<&String> = other.letters().iter().collect();
        a.sort();
        b.sort();
        a == b
    }
}

/// Checks the precubical identities, the square-label condition, that
/// states and letters exist, and that parallel edges of every cube of
/// dimension `≥ 3` carry the same label.
pub fn validate_hda(a: &Hda) -> ValidationReport {
    let p = &a.precubical;
    let mut report = p.validate();
    for v in a.initial.iter().chain(&a.final_states) {
        if *v >= p.count(0) {
            report.push(Violation::UnknownState { state: v.to_string() });
        }
    }
    for e in p.cubes(1) {
        for l in a.label(e) {
            if l.0 as usize >= a.alphabet.len() {
                report.push(Violation::UnknownLetter { letter: l.0.to_string() });
            }
        }
    }
    for x in p.cubes(2) {
        for i in 1..=2 {
            if a.label(p.face_unchecked(x, 0, i)) != a.label(p.face_unchecked(x, 1, i)) {
                report.push(Violation::SquareLabel { cube: p.key(x).to_string(), i });
            }
        }
    }
    for n in 3..=p.dim().unwrap_or(0) {
        for x in p.cubes(n) {
            check_parallel_edges(a, x, &mut report);
        }
    }
    report
}

/// The edges of `x_♯` parallel to coordinate `i`, i.e. the images of the
/// standard-cube edges with a step at `i` and vertices elsewhere.
pub fn parallel_edges(p: &PrecubicalSet, x: CubeId, i: usize) -> Vec<CubeId> {
    let n = x.dim;
    (0..1usize << (n - 1))
        .map(|bits| {
            let mut coords = Vec::with_capacity(n);
            let mut b = 0;
            for pos in 1..=n {
                if pos == i {
                    coords.push(Coord::Step(0));
                } else {
                    coords.push(Coord::Vertex(((bits >> b) & 1) as i64));
                    b += 1;
                }
            }
            p.evaluate_subcube(x, &coords).expect("coordinates inside the standard cube")
        })
        .collect()
}

fn check_parallel_edges(a: &Hda, x: CubeId, report: &mut ValidationReport) {
    let p = &a.precubical;
    for i in 1..=x.dim {
        let edges = parallel_edges(p, x, i);
        let reference = edges[0];
        for &e in &edges[1..] {
            if a.label(e) != a.label(reference) {
                report.push(Violation::ParallelEdge {
                    cube: p.key(x).to_string(),
                    edge: p.key(e).to_string(),
                    reference: p.key(reference).to_string(),
                });
            }
        }
    }
}

/// `λ̄(ω)`: the product of the edge labels along the path.
pub fn extended_label(a: &Hda, path: &Path) -> Result<Word, CubeError> {
    let p = &a.precubical;
    if !p.contains(path.start()) || path.edges().iter().any(|&e| !p.contains(e)) {
        return Err(CubeError::NotInSet);
    }
    Ok(path.edges().iter().flat_map(|&e| a.label(e).iter().copied()).collect())
}

/// `l^1` on an edge: the sum of the letters of its label.
pub fn edge_label_vector(a: &Hda, edge: CubeId, ring: CoefficientRing) -> ExteriorElement {
    word_to_vector(&a.alphabet, ring, a.label(edge))
}

/// `l^n(x) = l^1(e^0_1 x) ∧ … ∧ l^1(e^0_n x)`, and `1` on vertices.
pub fn cube_label(a: &Hda, x: CubeId, ring: CoefficientRing) -> ExteriorElement {
    cube_label_with(a, x, ring, 0)
}

/// The factorization of `l^n(x)` through `e^k_i` edges, `k ∈ {0, 1}`.
pub fn cube_label_with(a: &Hda, x: CubeId, ring: CoefficientRing, k: u8) -> ExteriorElement {
    let p = &a.precubical;
    let mut out = ExteriorElement::one(&a.alphabet, ring);
    for i in 1..=x.dim {
        let e = p.edge_e_unchecked(x, k, i);
        out = out.wedge(&edge_label_vector(a, e, ring)).expect("same alphabet");
    }
    out
}

/// `l^n` extended linearly to a degree-`n` chain.
pub fn labeling_cochain(a: &Hda, n: usize, c: &Chain) -> Result<ExteriorElement, ChainError> {
    if c.degree() != n {
        return Err(ChainError::DegreeMismatch { expected: n, found: c.degree() });
    }
    let ring = c.ring();
    let mut out = ExteriorElement::zero(&a.alphabet, ring);
    for (x, coeff) in c.terms() {
        if !a.precubical.contains(x) {
            return Err(ChainError::UnknownCube);
        }
        out = out.add(&cube_label(a, x, ring).scale(coeff)).expect("same alphabet");
    }
    Ok(out)
}

/// One degree of a [`LabeledHomologyReport`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledDegree {
    pub group: HomologyGroup,
    /// `ℓ(g)` for every generator, in the order of [`HomologyGroup::generators`].
    pub labels: Vec<ExteriorElement>,
    pub image: LabelImage,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledHomologyReport {
    pub ring: CoefficientRing,
    pub degrees: Vec<LabeledDegree>,
}

impl LabeledHomologyReport {
    pub fn degree(&self, n: usize) -> Option<&LabeledDegree> {
        self.degrees.get(n)
    }
}

/// Homology of the automaton together with `ℓ^n([z]) = l^n(z)` on each
/// generator and the submodule of `Λ^n(Σ)` spanned by those labels.
pub fn labeled_homology(a: &Hda, ring: CoefficientRing) -> LabeledHomologyReport {
    let degrees = homology(&a.precubical, ring)
        .into_iter()
        .map(|group| {
            let labels: Vec<ExteriorElement> =
                group.generators().map(|g| labeling_cochain(a, group.degree, g).expect("generators have the right degree")).collect();
            let image = label_image(&a.alphabet, ring, &labels).expect("same alphabet");
            LabeledDegree { group, labels, image }
        })
        .collect();
    LabeledHomologyReport { ring, degrees }
}
