//! Elementary cubical dimaps given combinatorially: for every cube `x` of
//! the source a subdivision shape `(l_1, …, l_n)`, a permutation `σ_x` and a
//! flattening `x_♭` of the grid `R_x = ⟦0,l_1⟧ ⊗ … ⊗ ⟦0,l_n⟧` into the target.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::chain::{boundary, is_cycle, Chain};
use crate::error::{AlgebraError, DimapError};
use crate::exterior::{Alphabet, Word};
use crate::hda::{cube_label, labeled_homology, labeling_cochain, Hda};
use crate::precubical::{Coord, CubeId, CubeKey, Grid, Path, PrecubicalSet};
use crate::ring::CoefficientRing;
use crate::validation::{PropertyReport, ValidationReport, Violation};

/// The data attached to one cube of the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeMap {
    pub shape: Vec<usize>,
    /// `sigma[p - 1] = σ(p)`, values in `1..=n`.
    pub sigma: Vec<usize>,
    /// Grid cube coordinates to the position of the image cube, which has
    /// the dimension of the grid cube.
    pub flat: BTreeMap<Vec<Coord>, usize>,
}

impl CubeMap {
    pub fn grid(&self) -> Grid {
        Grid::new(self.shape.clone())
    }

    pub fn image(&self, c: &[Coord]) -> Option<CubeId> {
        self.flat.get(c).map(|&index| CubeId::new(Grid::dim_of(c), index))
    }

    /// `sgn(σ)`.
    pub fn sign(&self) -> i64 {
        let n = self.sigma.len();
        let inversions = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|&(a, b)| self.sigma[a] > self.sigma[b]).count();
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Position `m` (1-based) with `σ(m) = i`.
    pub fn preimage(&self, i: usize) -> Option<usize> {
        self.sigma.iter().position(|&s| s == i).map(|p| p + 1)
    }
}

fn is_permutation(sigma: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    sigma.len() == n
        && sigma.iter().all(|&s| {
            if s == 0 || s > n || seen[s - 1] {
                return false;
            }
            seen[s - 1] = true;
            true
        })
}

fn render(c: &[Coord]) -> String {
    CubeKey::Grid(c.to_vec()).to_string()
}

/// A dimap `|B| → |A|` presented source-indexed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementaryDimapData {
    source: Hda,
    target: Hda,
    f0: Vec<usize>,
    cubes: BTreeMap<CubeId, CubeMap>,
}

impl ElementaryDimapData {
    /// The target's labels are rewritten over the source alphabet, which must
    /// hold the same letters.
    pub fn new(source: Hda, target: Hda, f0: Vec<usize>, cubes: BTreeMap<CubeId, CubeMap>) -> Result<Self, DimapError> {
        if !source.same_letters(target.alphabet()) {
            return Err(AlgebraError::AlphabetMismatch.into());
        }
        let target = target.relabel(source.alphabet())?;
        Ok(ElementaryDimapData { source, target, f0, cubes })
    }

    /// The identity of `a`: shapes `(1, …, 1)`, `σ = id`, `x_♭ = x_♯`.
    pub fn identity(a: &Hda) -> Self {
        let p = a.precubical();
        let mut cubes = BTreeMap::new();
        for x in p.all_cubes().filter(|x| x.dim > 0) {
            let grid = Grid::standard(x.dim);
            let flat = grid
                .cubes()
                .into_iter()
                .map(|c| {
                    let y = p.evaluate_subcube(x, &c).expect("standard cube coordinates");
                    (c, y.index)
                })
                .collect();
            cubes.insert(x, CubeMap { shape: vec![1; x.dim], sigma: (1..=x.dim).collect(), flat });
        }
        ElementaryDimapData { source: a.clone(), target: a.clone(), f0: (0..p.count(0)).collect(), cubes }
    }

    pub fn source(&self) -> &Hda {
        &self.source
    }

    pub fn target(&self) -> &Hda {
        &self.target
    }

    pub fn f0(&self) -> &[usize] {
        &self.f0
    }

    pub fn cube(&self, x: CubeId) -> Option<&CubeMap> {
        self.cubes.get(&x)
    }

    pub fn cubes(&self) -> &BTreeMap<CubeId, CubeMap> {
        &self.cubes
    }

    fn vertex(&self, v: CubeId) -> Result<CubeId, DimapError> {
        self.f0
            .get(v.index)
            .map(|&w| CubeId::new(0, w))
            .ok_or_else(|| DimapError::MissingVertex(self.source.precubical().key(v).to_string()))
    }

    fn cube_map(&self, x: CubeId) -> Result<&CubeMap, DimapError> {
        self.cubes.get(&x).ok_or_else(|| DimapError::MissingCube(self.source.precubical().key(x).to_string()))
    }

    fn flat(&self, x: CubeId, c: &[Coord]) -> Result<CubeId, DimapError> {
        self.cube_map(x)?.image(c).ok_or_else(|| DimapError::MissingGridCube(render(c)))
    }

    /// `f_*(x)` for a single cube.
    fn push_cube(&self, x: CubeId) -> Result<Vec<(CubeId, i64)>, DimapError> {
        if x.dim == 0 {
            return Ok(vec![(self.vertex(x)?, 1)]);
        }
        let m = self.cube_map(x)?;
        let sign = m.sign();
        m.grid().top_cells().iter().map(|y| m.image(y).map(|z| (z, sign)).ok_or_else(|| DimapError::MissingGridCube(render(y)))).collect()
    }

    fn edge_path(&self, e: CubeId) -> Result<Vec<CubeId>, DimapError> {
        let m = self.cube_map(e)?;
        let l = *m.shape.first().ok_or_else(|| DimapError::MissingCube(self.source.precubical().key(e).to_string()))?;
        (0..l as i64).map(|j| self.flat(e, &[Coord::Step(j)])).collect()
    }
}

/// Checks the vertex map, the well-formedness of every cube's data, face
/// compatibility, edge endpoints, labels, and initial and final states.
pub fn validate_dimap(f: &ElementaryDimapData) -> ValidationReport {
    let (b, a) = (&f.source, &f.target);
    let (pb, pa) = (b.precubical(), a.precubical());
    let mut report = ValidationReport::ok();
    let key = |x: CubeId| pb.key(x).to_string();
    for v in pb.cubes(0) {
        if f.f0.get(v.index).is_none_or(|&w| w >= pa.count(0)) {
            report.push(Violation::VertexMap { vertex: key(v) });
        }
    }
    let f0 = |v: CubeId| f.f0.get(v.index).copied().filter(|&w| w < pa.count(0)).map(|w| CubeId::new(0, w));

    let mut well_formed = BTreeSet::new();
    for x in pb.all_cubes().filter(|x| x.dim > 0) {
        let Some(m) = f.cubes.get(&x) else {
            report.push(Violation::MissingCubeData { cube: key(x) });
            continue;
        };
        if m.shape.len() != x.dim || m.shape.contains(&0) {
            report.push(Violation::BadShape { cube: key(x) });
            continue;
        }
        if !is_permutation(&m.sigma, x.dim) {
            report.push(Violation::BadPermutation { cube: key(x) });
            continue;
        }
        let cells = m.grid().cubes();
        let missing: Vec<&Vec<Coord>> = cells.iter().filter(|c| !m.image(c).is_some_and(|y| pa.contains(y))).collect();
        if !missing.is_empty() {
            for c in missing {
                report.push(Violation::FlatteningIncomplete { cube: key(x), grid_cube: render(c) });
            }
            continue;
        }
        let mut morphism = true;
        for c in &cells {
            let fc = m.image(c).expect("complete");
            for k in 0..2u8 {
                for i in 1..=fc.dim {
                    if pa.face_unchecked(fc, k, i) != m.image(&Grid::face(c, k, i)).expect("complete") {
                        report.push(Violation::FlatteningNotMorphism { cube: key(x), grid_cube: render(c), k, i });
                        morphism = false;
                    }
                }
            }
        }
        if morphism {
            well_formed.insert(x);
        }
    }

    for &x in well_formed.iter().filter(|x| x.dim == 1) {
        let m = &f.cubes[&x];
        let l = m.shape[0] as i64;
        for (k, end) in [(0u8, 0), (1u8, l)] {
            if f0(pb.face_unchecked(x, k, 1)) != m.image(&[Coord::Vertex(end)]) {
                report.push(Violation::EdgeEndpoint { cube: key(x), k });
            }
        }
        let word: Word = (0..l).flat_map(|j| a.label(m.image(&[Coord::Step(j)]).expect("complete")).iter().copied()).collect();
        if &word != b.label(x) {
            report.push(Violation::EdgeLabel { cube: key(x) });
        }
    }

    for &x in well_formed.iter().filter(|x| x.dim >= 2) {
        let m = &f.cubes[&x];
        for k in 0..2u8 {
            for i in 1..=x.dim {
                let y = pb.face_unchecked(x, k, i);
                let Some(my) = well_formed.contains(&y).then(|| &f.cubes[&y]) else {
                    continue;
                };
                let pos = m.preimage(i).expect("permutation") - 1;
                let mut shape = m.shape.clone();
                let frozen = shape.remove(pos);
                if my.shape != shape {
                    report.push(Violation::FaceShape { cube: key(x), k, i });
                    continue;
                }
                let mut sigma = m.sigma.clone();
                sigma.remove(pos);
                for s in sigma.iter_mut().filter(|s| **s > i) {
                    *s -= 1;
                }
                if my.sigma != sigma {
                    report.push(Violation::FacePermutation { cube: key(x), k, i });
                    continue;
                }
                let value = Coord::Vertex(if k == 0 { 0 } else { frozen as i64 });
                for c in my.grid().cubes() {
                    let mut lifted = c.clone();
                    lifted.insert(pos, value);
                    if my.image(&c) != m.image(&lifted) {
                        report.push(Violation::FaceFlattening { cube: key(x), k, i, grid_cube: render(&c) });
                        break;
                    }
                }
            }
        }
    }

    for v in b.initial() {
        if f0(v).is_some_and(|w| !a.is_initial(w)) {
            report.push(Violation::InitialNotPreserved { state: key(v) });
        }
    }
    for v in b.final_states() {
        if f0(v).is_some_and(|w| !a.is_final(w)) {
            report.push(Violation::FinalNotPreserved { state: key(v) });
        }
    }
    report
}

fn check_in(p: &PrecubicalSet, c: &Chain) -> Result<(), DimapError> {
    if c.terms().all(|(x, _)| p.contains(x)) {
        Ok(())
    } else {
        Err(crate::error::ChainError::UnknownCube.into())
    }
}

/// `f_*(v) = f_0(v)` and `f_*(x) = sgn(σ_x) Σ_{y ∈ (R_x)_n} x_♭(y)`.
pub fn pushforward_chain(f: &ElementaryDimapData, c: &Chain) -> Result<Chain, DimapError> {
    check_in(f.source.precubical(), c)?;
    let mut out = Chain::zero(c.degree(), c.ring());
    for (x, coeff) in c.terms() {
        for (y, s) in f.push_cube(x)? {
            out.add_term(y, coeff * BigInt::from(s));
        }
    }
    Ok(out)
}

/// `f^I(ω) = x_{1♭} ⋯ x_{k♭}`; a constant path goes to the constant path at `f_0(ω(0))`.
pub fn path_image(f: &ElementaryDimapData, omega: &Path) -> Result<Path, DimapError> {
    let (pb, pa) = (f.source.precubical(), f.target.precubical());
    if !pb.contains(omega.start()) || omega.edges().iter().any(|&e| !pb.contains(e)) {
        return Err(crate::error::CubeError::NotInSet.into());
    }
    if omega.is_empty() {
        return Ok(Path::constant(pa, f.vertex(omega.start())?)?);
    }
    let mut edges = Vec::new();
    for &e in omega.edges() {
        edges.extend(f.edge_path(e)?);
    }
    Ok(Path::from_edges(pa, edges)?)
}

fn naturality_report(b: &Hda, a: &Hda, ring: CoefficientRing, push: impl Fn(&Chain) -> Result<Chain, DimapError>) -> PropertyReport {
    let mut report = PropertyReport::new();
    for x in b.precubical().all_cubes() {
        let lhs = cube_label(b, x, ring);
        let rhs = push(&Chain::cube(x, ring)).map(|c| labeling_cochain(a, x.dim, &c).expect("degree preserved"));
        report.record(rhs.as_ref().is_ok_and(|r| *r == lhs), || match &rhs {
            Ok(r) => format!("cube {}: l_B = {} but l_A(f_*) = {}", b.precubical().key(x), lhs.render(), r.render()),
            Err(e) => format!("cube {}: {e}", b.precubical().key(x)),
        });
    }
    report
}

fn chain_map_report(b: &Hda, a: &Hda, ring: CoefficientRing, push: impl Fn(&Chain) -> Result<Chain, DimapError>) -> PropertyReport {
    let mut report = PropertyReport::new();
    for x in b.precubical().all_cubes().filter(|x| x.dim > 0) {
        let c = Chain::cube(x, ring);
        let lhs = push(&c).map(|fc| boundary(a.precubical(), &fc).expect("degree ≥ 1"));
        let rhs = push(&boundary(b.precubical(), &c).expect("degree ≥ 1"));
        let ok = matches!((&lhs, &rhs), (Ok(l), Ok(r)) if l == r);
        report.record(ok, || format!("cube {}: d f_* != f_* d", b.precubical().key(x)));
    }
    report
}

fn homology_report(b: &Hda, a: &Hda, ring: CoefficientRing, push: impl Fn(&Chain) -> Result<Chain, DimapError>) -> PropertyReport {
    let mut report = PropertyReport::new();
    for d in labeled_homology(b, ring).degrees {
        for (g, label) in d.group.generators().zip(&d.labels) {
            let ok = push(g).is_ok_and(|w| {
                is_cycle(a.precubical(), &w).unwrap_or(false) && labeling_cochain(a, d.group.degree, &w).is_ok_and(|l| l == *label)
            });
            report.record(ok, || {
                format!("H_{} generator with label {}: not carried to a cycle of the same label", d.group.degree, label.render())
            });
        }
    }
    report
}

/// `l^n_B(x) = l^n_A(f_*(x))` for every cube `x` of the source.
pub fn check_naturality(f: &ElementaryDimapData, ring: CoefficientRing) -> PropertyReport {
    naturality_report(&f.source, &f.target, ring, |c| pushforward_chain(f, c))
}

/// `d ∘ f_* = f_* ∘ d` on every cube of the source.
pub fn check_chain_map(f: &ElementaryDimapData, ring: CoefficientRing) -> PropertyReport {
    chain_map_report(&f.source, &f.target, ring, |c| pushforward_chain(f, c))
}

/// `ℓ_B = ℓ_A ∘ f_*` on the homology generators of the source: each is sent
/// to a cycle with the same label.
pub fn check_homology_naturality(f: &ElementaryDimapData, ring: CoefficientRing) -> PropertyReport {
    homology_report(&f.source, &f.target, ring, |c| pushforward_chain(f, c))
}

fn same_hda(a: &Hda, b: &Hda) -> bool {
    a.same_letters(b.alphabet()) && b.relabel(a.alphabet()).is_ok_and(|b| b == *a)
}

/// Elementary dimaps `B = A_0 → A_1 → ⋯ → A_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimapChain {
    stages: Vec<ElementaryDimapData>,
}

impl DimapChain {
    pub fn new(stages: Vec<ElementaryDimapData>) -> Result<Self, DimapError> {
        if stages.is_empty() {
            return Err(DimapError::EmptyChain);
        }
        for (i, w) in stages.windows(2).enumerate() {
            if !same_hda(&w[0].target, &w[1].source) {
                return Err(DimapError::StageMismatch(i, i + 1));
            }
        }
        Ok(DimapChain { stages })
    }

    pub fn stages(&self) -> &[ElementaryDimapData] {
        &self.stages
    }

    pub fn source(&self) -> &Hda {
        &self.stages[0].source
    }

    pub fn target(&self) -> &Hda {
        &self.stages[self.stages.len() - 1].target
    }
}

/// The composite of a [`DimapChain`], tabulated on the cubes and edges of
/// its source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositeDimap {
    source: Hda,
    target: Hda,
    cubes: BTreeMap<CubeId, Chain>,
    edges: BTreeMap<CubeId, Path>,
    f0: Vec<usize>,
}

/// Composes the stages: `(g∘f)_* = g_* ∘ f_*` and `(g∘f)^I = g^I ∘ f^I`.
pub fn compose_dimaps(chain: &DimapChain) -> Result<CompositeDimap, DimapError> {
    let source = chain.source().clone();
    let pb = source.precubical();
    let ring = CoefficientRing::Integers;
    let mut cubes = BTreeMap::new();
    let mut edges = BTreeMap::new();
    for x in pb.all_cubes() {
        let mut c = Chain::cube(x, ring);
        for f in &chain.stages {
            c = pushforward_chain(f, &c)?;
        }
        cubes.insert(x, c);
    }
    for e in pb.cubes(1) {
        let mut w = Path::from_edges(pb, vec![e])?;
        for f in &chain.stages {
            w = path_image(f, &w)?;
        }
        edges.insert(e, w);
    }
    let f0 = pb.cubes(0).map(|v| cubes[&v].terms().next().expect("vertex image").0.index).collect();
    let target = chain.target().relabel(source.alphabet())?;
    Ok(CompositeDimap { source, target, cubes, edges, f0 })
}

impl CompositeDimap {
    pub fn source(&self) -> &Hda {
        &self.source
    }

    pub fn target(&self) -> &Hda {
        &self.target
    }

    pub fn f0(&self) -> &[usize] {
        &self.f0
    }

    /// `f_*(x)` of a single cube over `ℤ`.
    pub fn cube_image(&self, x: CubeId) -> Option<&Chain> {
        self.cubes.get(&x)
    }

    pub fn pushforward(&self, c: &Chain) -> Result<Chain, DimapError> {
        check_in(self.source.precubical(), c)?;
        let mut out = Chain::zero(c.degree(), c.ring());
        for (x, coeff) in c.terms() {
            for (y, s) in self.cubes[&x].terms() {
                out.add_term(y, coeff * s);
            }
        }
        Ok(out)
    }

    pub fn path_image(&self, omega: &Path) -> Result<Path, DimapError> {
        let (pb, pa) = (self.source.precubical(), self.target.precubical());
        if !pb.contains(omega.start()) || omega.edges().iter().any(|&e| !pb.contains(e)) {
            return Err(crate::error::CubeError::NotInSet.into());
        }
        let mut out = Path::constant(pa, CubeId::new(0, self.f0[omega.start().index]))?;
        for e in omega.edges() {
            out = out.concat(pa, &self.edges[e])?;
        }
        Ok(out)
    }

    pub fn check_naturality(&self, ring: CoefficientRing) -> PropertyReport {
        naturality_report(&self.source, &self.target, ring, |c| self.pushforward(c))
    }

    pub fn check_chain_map(&self, ring: CoefficientRing) -> PropertyReport {
        chain_map_report(&self.source, &self.target, ring, |c| self.pushforward(c))
    }

    pub fn check_homology_naturality(&self, ring: CoefficientRing) -> PropertyReport {
        homology_report(&self.source, &self.target, ring, |c| self.pushforward(c))
    }
}

/// The grid `⟦0,l_1⟧ ⊗ … ⊗ ⟦0,l_n⟧` as an HDA with `l_i = labels[i].len()`;
/// every edge in direction `i` at step `[s,s+1]` is labeled `labels[i][s]`.
/// The origin is initial and the far corner final.
pub fn grid_hda(alphabet: &Arc<Alphabet>, labels: &[Vec<Word>]) -> Hda {
    let shape: Vec<usize> = labels.iter().map(Vec::len).collect();
    let p = Grid::new(shape.clone()).to_precubical();
    let words = p
        .cubes(1)
        .map(|e| {
            let CubeKey::Grid(c) = p.key(e) else { unreachable!("grid keys") };
            let (dir, step) = c
                .iter()
                .enumerate()
                .find_map(|(i, c)| match c {
                    Coord::Step(s) => Some((i, *s as usize)),
                    Coord::Vertex(_) => None,
                })
                .expect("an edge has one step");
            labels[dir][step].clone()
        })
        .collect();
    let corner = |far: bool| {
        let c = shape.iter().map(|&l| Coord::Vertex(if far { l as i64 } else { 0 })).collect();
        p.find(0, &CubeKey::Grid(c)).expect("corner").index
    };
    let (i, f) = (corner(false), corner(true));
    Hda::new(p, alphabet.clone(), words, [i].into(), [f].into()).expect("grid labels are complete")
}

/// A dimap from a coarse grid `B` onto the fine grid `A = grid_hda(target_labels)`.
/// Direction `j` of `A` (1-based) is direction `perm[j-1]` of `B`, and each
/// step of `B` in direction `i` is cut into `refine[i-1]` steps of `A`. The
/// labels of `B` are the concatenations of the labels they are cut into.
///
/// # Panics
///
/// If `perm` is not a permutation or a length of `A` is not divisible by
/// the matching refinement.
pub fn grid_dimap(alphabet: &Arc<Alphabet>, target_labels: &[Vec<Word>], refine: &[usize], perm: &[usize]) -> ElementaryDimapData {
    let n = target_labels.len();
    assert!(is_permutation(perm, n) && refine.len() == n && !refine.contains(&0), "malformed grid dimap");
    let target = grid_hda(alphabet, target_labels);
    let mut source_labels = vec![Vec::new(); n];
    for (j, row) in target_labels.iter().enumerate() {
        let i = perm[j] - 1;
        assert!(row.len() % refine[i] == 0, "length not divisible by refinement");
        source_labels[i] = row.chunks(refine[i]).map(|w| w.concat()).collect();
    }
    let source = grid_hda(alphabet, &source_labels);
    let (pb, pa) = (source.precubical(), target.precubical());
    let find = |c: Vec<Coord>| pa.find(Grid::dim_of(&c), &CubeKey::Grid(c)).expect("inside the fine grid").index;

    let mut f0 = vec![0; pb.count(0)];
    let mut cubes = BTreeMap::new();
    for x in pb.all_cubes() {
        let CubeKey::Grid(c) = pb.key(x) else { unreachable!("grid keys") };
        let steps: Vec<usize> = (1..=n).filter(|&i| matches!(c[i - 1], Coord::Step(_))).collect();
        let js: Vec<usize> = (1..=n).filter(|&j| steps.contains(&perm[j - 1])).collect();
        let lift = |y: &[Coord]| -> Vec<Coord> {
            (1..=n)
                .map(|j| {
                    let i = perm[j - 1];
                    let r = refine[i - 1] as i64;
                    match c[i - 1] {
                        Coord::Vertex(v) => Coord::Vertex(v * r),
                        Coord::Step(s) => match y[js.iter().position(|&t| t == j).expect("step direction")] {
                            Coord::Vertex(t) => Coord::Vertex(s * r + t),
                            Coord::Step(t) => Coord::Step(s * r + t),
                        },
                    }
                })
                .collect()
        };
        if x.dim == 0 {
            f0[x.index] = find(lift(&[]));
            continue;
        }
        let shape: Vec<usize> = js.iter().map(|&j| refine[perm[j - 1] - 1]).collect();
        let sigma = js.iter().map(|&j| 1 + steps.iter().position(|&i| i == perm[j - 1]).expect("step")).collect();
        let flat = Grid::new(shape.clone()).cubes().into_iter().map(|y| {
            let img = find(lift(&y));
            (y, img)
        });
        cubes.insert(x, CubeMap { shape, sigma, flat: flat.collect() });
    }
    ElementaryDimapData::new(source, target, f0, cubes).expect("same alphabet")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hda::extended_label;
    use crate::models::examples::directed_circle;

    fn ab() -> Arc<Alphabet> {
        Arc::new(Alphabet::new(["a", "b", "c"]).unwrap())
    }

    fn w(al: &Alphabet, s: &str) -> Word {
        al.word(s.split(' ').filter(|s| !s.is_empty())).unwrap()
    }

    #[test]
    fn identity_is_valid_and_identity_on_chains() {
        let al = ab();
        let sq = grid_hda(&al, &[vec![w(&al, "a")], vec![w(&al, "b")]]);
        let f = ElementaryDimapData::identity(&sq);
        assert!(validate_dimap(&f).is_ok());
        let r = CoefficientRing::Integers;
        for x in sq.precubical().all_cubes() {
            assert_eq!(pushforward_chain(&f, &Chain::cube(x, r)).unwrap(), Chain::cube(x, r));
        }
        assert!(check_naturality(&f, r).passed());
    }

    #[test]
    fn subdivided_edge() {
        let al = ab();
        let f = grid_dimap(&al, &[vec![w(&al, "a"), w(&al, "b")]], &[2], &[1]);
        assert!(validate_dimap(&f).is_ok());
        let pb = f.source().precubical();
        let e = pb.cubes(1).next().unwrap();
        assert_eq!(f.source().label(e), &w(&al, "a b"));
        let r = CoefficientRing::Integers;
        let img = pushforward_chain(&f, &Chain::cube(e, r)).unwrap();
        assert_eq!(img.len(), 2);
        assert!(img.terms().all(|(_, c)| *c == BigInt::from(1)));
        let path = path_image(&f, &Path::from_edges(pb, vec![e]).unwrap()).unwrap();
        assert_eq!(path.len(), 2);
        assert_eq!(extended_label(f.target(), &path).unwrap(), w(&al, "a b"));
        let v = Path::constant(pb, pb.cubes(0).next().unwrap()).unwrap();
        assert!(path_image(&f, &v).unwrap().is_empty());
    }

    #[test]
    fn transposed_square_flips_sign() {
        let al = ab();
        let f = grid_dimap(&al, &[vec![w(&al, "b")], vec![w(&al, "a")]], &[1, 1], &[2, 1]);
        assert!(validate_dimap(&f).is_ok());
        let r = CoefficientRing::Integers;
        let x = CubeId::new(2, 0);
        assert_eq!(f.cube(x).unwrap().sigma, vec![2, 1]);
        let img = pushforward_chain(&f, &Chain::cube(x, r)).unwrap();
        assert_eq!(img, Chain::cube(CubeId::new(2, 0), r).neg());
        assert!(check_naturality(&f, r).passed());
        assert!(check_chain_map(&f, r).passed());
    }

    #[test]
    fn broken_face_data_is_reported() {
        let al = ab();
        let f = grid_dimap(&al, &[vec![w(&al, "b")], vec![w(&al, "a")]], &[1, 1], &[2, 1]);
        let x = CubeId::new(2, 0);
        let mut cubes = f.cubes().clone();
        cubes.get_mut(&x).unwrap().sigma = vec![1, 2];
        let g = ElementaryDimapData::new(f.source().clone(), f.target().clone(), f.f0().to_vec(), cubes).unwrap();
        let rep = validate_dimap(&g);
        assert!(rep.violations.iter().any(|v| matches!(v, Violation::FaceFlattening { k: 0, i: 1, .. })));
    }

    #[test]
    fn two_transpositions_compose_to_plus() {
        let al = ab();
        let f = grid_dimap(&al, &[vec![w(&al, "b")], vec![w(&al, "a")]], &[1, 1], &[2, 1]);
        let g = grid_dimap(&al, &[vec![w(&al, "a")], vec![w(&al, "b")]], &[1, 1], &[2, 1]);
        let chain = DimapChain::new(vec![g, f]).unwrap();
        let comp = compose_dimaps(&chain).unwrap();
        let r = CoefficientRing::Integers;
        let x = CubeId::new(2, 0);
        assert_eq!(comp.pushforward(&Chain::cube(x, r)).unwrap(), Chain::cube(x, r));
        assert!(comp.check_naturality(r).passed());
        assert!(comp.check_chain_map(r).passed());
    }

    #[test]
    fn two_subdivisions_give_four_edges() {
        let al = ab();
        let fine = vec![vec![w(&al, "a"), w(&al, "b"), w(&al, "c"), w(&al, "a")]];
        let g = grid_dimap(&al, &fine, &[2], &[1]);
        let mid: Vec<Vec<Word>> = vec![g.source().labels().to_vec()];
        let f = grid_dimap(&al, &mid, &[2], &[1]);
        let comp = compose_dimaps(&DimapChain::new(vec![f, g]).unwrap()).unwrap();
        let e = CubeId::new(1, 0);
        assert_eq!(comp.cube_image(e).unwrap().len(), 4);
        let path = comp.path_image(&Path::from_edges(comp.source().precubical(), vec![e]).unwrap()).unwrap();
        assert_eq!(path.len(), 4);
    }

    #[test]
    fn stage_mismatch() {
        let al = ab();
        let f = grid_dimap(&al, &[vec![w(&al, "a")]], &[1], &[1]);
        let g = grid_dimap(&al, &[vec![w(&al, "b")]], &[1], &[1]);
        assert_eq!(DimapChain::new(vec![f, g]).unwrap_err(), DimapError::StageMismatch(0, 1));
    }

    #[test]
    fn circle_into_interval_is_obstructed() {
        let al = ab();
        let circle = directed_circle(&al, vec![w(&al, "a")]).unwrap();
        let interval = grid_hda(&al, &[vec![w(&al, "a")]]);
        let r = CoefficientRing::Integers;
        for v in 0..2 {
            let flat = Grid::standard(1).cubes().into_iter().map(|c| {
                let i = match c[0] {
                    Coord::Vertex(k) => k as usize,
                    Coord::Step(_) => 0,
                };
                (c, i)
            });
            let cubes = [(CubeId::new(1, 0), CubeMap { shape: vec![1], sigma: vec![1], flat: flat.collect() })].into();
            let f = ElementaryDimapData::new(circle.clone(), interval.clone(), vec![v], cubes).unwrap();
            assert!(!validate_dimap(&f).is_ok());
            assert!(!check_homology_naturality(&f, r).passed());
        }
    }
}
