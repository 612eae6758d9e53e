//! Finite precubical sets.
//!
//! Cubes are addressed by [`CubeId`] handles (dimension + position in that
//! dimension) and carry a stable [`CubeKey`]. Face operators `d^k_i` use the
//! 1-based index `i = 1..n` throughout.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::CubeError;
use crate::validation::{ValidationReport, Violation};

/// One coordinate of a cube of `⟦0,l_1⟧ ⊗ … ⊗ ⟦0,l_n⟧`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coord {
    /// The vertex `j`.
    Vertex(i64),
    /// The edge `[j, j+1]`.
    Step(i64),
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coord::Vertex(j) => write!(f, "{j}"),
            Coord::Step(j) => write!(f, "[{},{}]", j, j + 1),
        }
    }
}

/// Stable identifier of a cube.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CubeKey {
    Name(String),
    /// Vertex `j` of an interval.
    Int(i64),
    /// Edge `[a, b]` of an interval.
    Span(i64, i64),
    /// Cube `(x, y)` of a tensor product.
    Pair(Box<CubeKey>, Box<CubeKey>),
    /// Cube of a grid `⟦0,l_1⟧ ⊗ … ⊗ ⟦0,l_n⟧` given by its coordinates.
    Grid(Vec<Coord>),
}

impl CubeKey {
    pub fn name(s: impl Into<String>) -> Self {
        CubeKey::Name(s.into())
    }

    pub fn pair(a: CubeKey, b: CubeKey) -> Self {
        CubeKey::Pair(Box::new(a), Box::new(b))
    }
}

impl fmt::Display for CubeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CubeKey::Name(s) => write!(f, "{s}"),
            CubeKey::Int(j) => write!(f, "{j}"),
            CubeKey::Span(a, b) => write!(f, "[{a},{b}]"),
            CubeKey::Pair(a, b) => write!(f, "({a},{b})"),
            CubeKey::Grid(cs) => {
                write!(f, "(")?;
                for (k, c) in cs.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Handle of a cube inside one [`PrecubicalSet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubeId {
    pub dim: usize,
    pub index: usize,
}

impl CubeId {
    pub fn new(dim: usize, index: usize) -> Self {
        CubeId { dim, index }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Level {
    keys: Vec<CubeKey>,
    lookup: BTreeMap<CubeKey, usize>,
    /// For a cube of dimension `n` at position `p`: `faces[2np .. 2np+2n]`
    /// holds `d^0_1..d^0_n` followed by `d^1_1..d^1_n`.
    faces: Vec<usize>,
}

/// A finite precubical set.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PrecubicalSet {
    levels: Vec<Level>,
}

impl PrecubicalSet {
    pub fn new() -> Self {
        PrecubicalSet::default()
    }

    /// Appends a cube whose faces are given as positions one level down
    /// (`d^0_1..d^0_n, d^1_1..d^1_n`). Returns `None` if the key is taken.
    pub fn push(&mut self, dim: usize, key: CubeKey, faces: &[usize]) -> Option<CubeId> {
        assert_eq!(faces.len(), 2 * dim, "a {dim}-cube has {} faces", 2 * dim);
        while self.levels.len() <= dim {
            self.levels.push(Level::default());
        }
        if dim > 0 {
            let below = self.levels[dim - 1].keys.len();
            assert!(faces.iter().all(|&f| f < below), "face reference out of range");
        }
        let level = &mut self.levels[dim];
        if level.lookup.contains_key(&key) {
            return None;
        }
        let index = level.keys.len();
        level.lookup.insert(key.clone(), index);
        level.keys.push(key);
        level.faces.extend_from_slice(faces);
        Some(CubeId { dim, index })
    }

    /// Highest dimension that has cubes, `None` for the empty set.
    pub fn dim(&self) -> Option<usize> {
        (0..self.levels.len()).rev().find(|&n| !self.levels[n].keys.is_empty())
    }

    pub fn count(&self, dim: usize) -> usize {
        self.levels.get(dim).map_or(0, |l| l.keys.len())
    }

    /// Number of cubes per dimension, `0..=dim`.
    pub fn counts(&self) -> Vec<usize> {
        match self.dim() {
            None => Vec::new(),
            Some(d) => (0..=d).map(|n| self.count(n)).collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.dim().is_none()
    }

    pub fn cubes(&self, dim: usize) -> impl Iterator<Item = CubeId> + '_ {
        (0..self.count(dim)).map(move |index| CubeId { dim, index })
    }

    pub fn all_cubes(&self) -> impl Iterator<Item = CubeId> + '_ {
        (0..self.levels.len()).flat_map(move |d| self.cubes(d))
    }

    pub fn contains(&self, id: CubeId) -> bool {
        id.index < self.count(id.dim)
    }

    pub fn key(&self, id: CubeId) -> &CubeKey {
        &self.levels[id.dim].keys[id.index]
    }

    pub fn find(&self, dim: usize, key: &CubeKey) -> Option<CubeId> {
        self.levels.get(dim)?.lookup.get(key).map(|&index| CubeId { dim, index })
    }

    /// Looks a cube up by key in any dimension.
    pub fn find_any(&self, key: &CubeKey) -> Option<CubeId> {
        (0..self.levels.len()).find_map(|d| self.find(d, key))
    }

    /// `d^k_i x`, with `i` in `1..=dim x`.
    pub fn face(&self, x: CubeId, k: u8, i: usize) -> Result<CubeId, CubeError> {
        if !self.contains(x) {
            return Err(CubeError::NotInSet);
        }
        if i == 0 || i > x.dim || k > 1 {
            return Err(CubeError::IndexOutOfRange { dim: x.dim, index: i });
        }
        Ok(self.face_unchecked(x, k, i))
    }

    #[inline]
    pub(crate) fn face_unchecked(&self, x: CubeId, k: u8, i: usize) -> CubeId {
        let n = x.dim;
        let base = 2 * n * x.index;
        let index = self.levels[n].faces[base + (k as usize) * n + (i - 1)];
        CubeId { dim: n - 1, index }
    }

    /// Applies `d^k_1` repeatedly down to a vertex.
    fn corner(&self, mut x: CubeId, k: u8) -> CubeId {
        while x.dim > 0 {
            x = self.face_unchecked(x, k, 1);
        }
        x
    }

    pub fn initial_vertex(&self, x: CubeId) -> CubeId {
        self.corner(x, 0)
    }

    pub fn final_vertex(&self, x: CubeId) -> CubeId {
        self.corner(x, 1)
    }

    /// The edge `e^k_i x`: `x` itself for an edge, otherwise the composite
    /// `d^{1-k}_1 ⋯ d^{1-k}_{i-1} d^{1-k}_{i+1} ⋯ d^{1-k}_n x`.
    pub fn edge_e(&self, x: CubeId, k: u8, i: usize) -> Result<CubeId, CubeError> {
        if !self.contains(x) {
            return Err(CubeError::NotInSet);
        }
        if x.dim == 0 || i == 0 || i > x.dim || k > 1 {
            return Err(CubeError::IndexOutOfRange { dim: x.dim, index: i });
        }
        Ok(self.edge_e_unchecked(x, k, i))
    }

    pub(crate) fn edge_e_unchecked(&self, x: CubeId, k: u8, i: usize) -> CubeId {
        let n = x.dim;
        let mut y = x;
        // apply the innermost operator d_n first; indices above i are removed
        // before those below, so no renumbering is needed
        for j in (1..=n).rev() {
            if j != i {
                y = self.face_unchecked(y, 1 - k, j);
            }
        }
        y
    }

    /// `x_♯(y)` where `y` is a cube of the standard cube `⟦0,1⟧^{⊗n}` given by
    /// its coordinates (each `Vertex(0)`, `Vertex(1)` or `Step(0)`).
    pub fn evaluate_subcube(&self, x: CubeId, y: &[Coord]) -> Result<CubeId, CubeError> {
        if !self.contains(x) {
            return Err(CubeError::NotInSet);
        }
        if y.len() != x.dim {
            return Err(CubeError::DimensionMismatch { expected: x.dim, found: y.len() });
        }
        let mut out = x;
        for (pos, c) in y.iter().enumerate().rev() {
            match *c {
                Coord::Vertex(k @ (0 | 1)) => out = self.face_unchecked(out, k as u8, pos + 1),
                Coord::Step(0) => {}
                _ => return Err(CubeError::IndexOutOfRange { dim: x.dim, index: pos + 1 }),
            }
        }
        Ok(out)
    }

    /// Checks the precubical identities `d^k_i d^l_j x = d^l_{j-1} d^k_i x` for `i < j`.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::ok();
        for n in 2..self.levels.len() {
            for x in self.cubes(n) {
                for j in 2..=n {
                    for i in 1..j {
                        for k in 0..2u8 {
                            for l in 0..2u8 {
                                let lhs = self.face_unchecked(self.face_unchecked(x, l, j), k, i);
                                let rhs = self.face_unchecked(self.face_unchecked(x, k, i), l, j - 1);
                                if lhs != rhs {
                                    report.push(Violation::Identity { cube: self.key(x).to_string(), k, i, l, j });
                                }
                            }
                        }
                    }
                }
            }
        }
        report
    }
}

/// Validation entry point: ok iff all precubical identities hold. Face
/// references are resolved when the set is built (see [`PrecubicalBuilder`]).
pub fn validate_precubical(p: &PrecubicalSet) -> ValidationReport {
    p.validate()
}

/// Builds a precubical set from key-addressed cube records, collecting
/// duplicate keys and dangling face references as violations.
#[derive(Clone, Debug, Default)]
pub struct PrecubicalBuilder {
    records: Vec<(CubeKey, usize, Vec<CubeKey>, Vec<CubeKey>)>,
}

impl PrecubicalBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(&mut self, key: CubeKey) -> &mut Self {
        self.records.push((key, 0, Vec::new(), Vec::new()));
        self
    }

    pub fn cube(&mut self, key: CubeKey, dim: usize, d0: Vec<CubeKey>, d1: Vec<CubeKey>) -> &mut Self {
        self.records.push((key, dim, d0, d1));
        self
    }

    pub fn build(&self) -> Result<PrecubicalSet, ValidationReport> {
        let mut report = ValidationReport::ok();
        let max_dim = self.records.iter().map(|r| r.1).max();
        let mut set = PrecubicalSet::new();
        let Some(max_dim) = max_dim else {
            return Ok(set);
        };
        for n in 0..=max_dim {
            for (key, dim, d0, d1) in self.records.iter().filter(|r| r.1 == n) {
                if d0.len() != *dim || d1.len() != *dim {
                    report.push(Violation::FaceCount { cube: key.to_string(), dim: *dim, found: d0.len().min(d1.len()) });
                    continue;
                }
                let mut faces = Vec::with_capacity(2 * dim);
                let mut ok = true;
                for (k, side) in [d0, d1].into_iter().enumerate() {
                    for (i, f) in side.iter().enumerate() {
                        match set.find(n - 1, f) {
                            Some(id) => faces.push(id.index),
                            None => {
                                ok = false;
                                report.push(Violation::MissingFace { cube: key.to_string(), k: k as u8, i: i + 1, face: f.to_string() });
                            }
                        }
                    }
                }
                if !ok {
                    continue;
                }
                if set.push(n, key.clone(), &faces).is_none() {
                    report.push(Violation::DuplicateCube { cube: key.to_string(), dim: n });
                }
            }
        }
        if report.is_ok() {
            Ok(set)
        } else {
            Err(report)
        }
    }
}

/// The precubical interval `⟦k,l⟧`.
pub fn interval(k: i64, l: i64) -> PrecubicalSet {
    assert!(k <= l, "interval requires k <= l");
    let mut p = PrecubicalSet::new();
    for j in k..=l {
        p.push(0, CubeKey::Int(j), &[]);
    }
    for j in k + 1..=l {
        let a = (j - 1 - k) as usize;
        p.push(1, CubeKey::Span(j - 1, j), &[a, a + 1]);
    }
    p
}

/// The grid `⟦0,l_1⟧ ⊗ … ⊗ ⟦0,l_n⟧`, addressed by coordinate tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    shape: Vec<usize>,
}

impl Grid {
    pub fn new(shape: Vec<usize>) -> Self {
        Grid { shape }
    }

    /// The standard cube `⟦0,1⟧^{⊗n}`.
    pub fn standard(n: usize) -> Self {
        Grid { shape: vec![1; n] }
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn rank(&self) -> usize {
        self.shape.len()
    }

    pub fn contains(&self, c: &[Coord]) -> bool {
        c.len() == self.shape.len()
            && c.iter().zip(&self.shape).all(|(c, &l)| match *c {
                Coord::Vertex(j) => (0..=l as i64).contains(&j),
                Coord::Step(j) => (0..l as i64).contains(&j),
            })
    }

    pub fn dim_of(c: &[Coord]) -> usize {
        c.iter().filter(|c| matches!(c, Coord::Step(_))).count()
    }

    /// `d^k_i` of a grid cube: the `i`-th step coordinate `[j,j+1]` becomes `j+k`.
    pub fn face(c: &[Coord], k: u8, i: usize) -> Vec<Coord> {
        let mut out = c.to_vec();
        let mut seen = 0;
        for slot in out.iter_mut() {
            if let Coord::Step(j) = *slot {
                seen += 1;
                if seen == i {
                    *slot = Coord::Vertex(j + k as i64);
                    return out;
                }
            }
        }
        panic!("grid face index {i} out of range");
    }

    /// All cubes of the grid, in lexicographic coordinate order.
    pub fn cubes(&self) -> Vec<Vec<Coord>> {
        let mut out: Vec<Vec<Coord>> = vec![Vec::new()];
        for &l in &self.shape {
            let mut next = Vec::new();
            for prefix in &out {
                for j in 0..=l as i64 {
                    let mut v = prefix.clone();
                    v.push(Coord::Vertex(j));
                    next.push(v);
                    if j < l as i64 {
                        let mut v = prefix.clone();
                        v.push(Coord::Step(j));
                        next.push(v);
                    }
                }
            }
            out = next;
        }
        out
    }

    /// The cubes of top dimension, `([j_1,j_1+1], …, [j_n,j_n+1])`.
    pub fn top_cells(&self) -> Vec<Vec<Coord>> {
        let mut out: Vec<Vec<Coord>> = vec![Vec::new()];
        for &l in &self.shape {
            let mut next = Vec::new();
            for prefix in &out {
                for j in 0..l as i64 {
                    let mut v = prefix.clone();
                    v.push(Coord::Step(j));
                    next.push(v);
                }
            }
            out = next;
        }
        out
    }

    /// The grid as a precubical set with [`CubeKey::Grid`] keys.
    pub fn to_precubical(&self) -> PrecubicalSet {
        let mut cubes = self.cubes();
        cubes.sort_by_key(|c| Grid::dim_of(c));
        let mut p = PrecubicalSet::new();
        for c in cubes {
            let n = Grid::dim_of(&c);
            let mut faces = Vec::with_capacity(2 * n);
            for k in 0..2u8 {
                for i in 1..=n {
                    let f = Grid::face(&c, k, i);
                    faces.push(p.find(n - 1, &CubeKey::Grid(f)).expect("faces precede cubes").index);
                }
            }
            p.push(n, CubeKey::Grid(c), &faces);
        }
        p
    }
}

/// Index bookkeeping for `P ⊗ Q`: cube `(x, y)` of dimension `n = p + q` sits
/// at `offset[n][p] + x.index * |Q_q| + y.index`.
#[derive(Clone, Debug)]
pub struct TensorLayout {
    left_counts: Vec<usize>,
    right_counts: Vec<usize>,
    offsets: Vec<Vec<usize>>,
}

impl TensorLayout {
    fn new(p: &PrecubicalSet, q: &PrecubicalSet) -> Self {
        let left_counts: Vec<usize> = p.counts();
        let right_counts: Vec<usize> = q.counts();
        let max = if left_counts.is_empty() || right_counts.is_empty() { 0 } else { left_counts.len() + right_counts.len() - 1 };
        let mut offsets = Vec::with_capacity(max);
        for n in 0..max {
            let mut row = Vec::new();
            let mut acc = 0;
            for a in 0..=n {
                row.push(acc);
                let lc = left_counts.get(a).copied().unwrap_or(0);
                let rc = right_counts.get(n - a).copied().unwrap_or(0);
                acc += lc * rc;
            }
            row.push(acc);
            offsets.push(row);
        }
        TensorLayout { left_counts, right_counts, offsets }
    }

    pub fn id_of(&self, x: CubeId, y: CubeId) -> CubeId {
        let n = x.dim + y.dim;
        let rc = self.right_counts[y.dim];
        CubeId { dim: n, index: self.offsets[n][x.dim] + x.index * rc + y.index }
    }

    pub fn factors(&self, id: CubeId) -> (CubeId, CubeId) {
        let row = &self.offsets[id.dim];
        let a = (0..=id.dim).find(|&a| id.index >= row[a] && id.index < row[a + 1]).expect("index inside the tensor layout");
        let rc = self.right_counts[id.dim - a];
        let local = id.index - row[a];
        (CubeId::new(a, local / rc), CubeId::new(id.dim - a, local % rc))
    }

    pub fn left_counts(&self) -> &[usize] {
        &self.left_counts
    }
}

/// `P ⊗ Q` with `(P⊗Q)_n = ∐_{p+q=n} P_p × Q_q`.
pub fn tensor(p: &PrecubicalSet, q: &PrecubicalSet) -> (PrecubicalSet, TensorLayout) {
    let layout = TensorLayout::new(p, q);
    let mut out = PrecubicalSet::new();
    let (Some(dp), Some(dq)) = (p.dim(), q.dim()) else {
        return (out, layout);
    };
    for n in 0..=dp + dq {
        for a in 0..=n {
            let b = n - a;
            if a > dp || b > dq {
                continue;
            }
            for x in p.cubes(a) {
                for y in q.cubes(b) {
                    let mut faces = Vec::with_capacity(2 * n);
                    for k in 0..2u8 {
                        for i in 1..=n {
                            let f = if i <= a {
                                layout.id_of(p.face_unchecked(x, k, i), y)
                            } else {
                                layout.id_of(x, q.face_unchecked(y, k, i - a))
                            };
                            faces.push(f.index);
                        }
                    }
                    let key = CubeKey::pair(p.key(x).clone(), q.key(y).clone());
                    let id = out.push(n, key, &faces).expect("pair keys are unique");
                    debug_assert_eq!(id, layout.id_of(x, y));
                }
            }
        }
    }
    (out, layout)
}

/// A path: a start vertex followed by edges `x_1, …, x_k` with
/// `d^0_1 x_{j+1} = d^1_1 x_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Path {
    start: CubeId,
    edges: Vec<CubeId>,
}

impl Path {
    /// The length-0 path at vertex `v`.
    pub fn constant(p: &PrecubicalSet, v: CubeId) -> Result<Path, CubeError> {
        if v.dim != 0 {
            return Err(CubeError::DimensionMismatch { expected: 0, found: v.dim });
        }
        if !p.contains(v) {
            return Err(CubeError::NotInSet);
        }
        Ok(Path { start: v, edges: Vec::new() })
    }

    pub fn from_edges(p: &PrecubicalSet, edges: Vec<CubeId>) -> Result<Path, CubeError> {
        let first = *edges.first().ok_or(CubeError::BrokenPath)?;
        for e in &edges {
            if e.dim != 1 {
                return Err(CubeError::DimensionMismatch { expected: 1, found: e.dim });
            }
            if !p.contains(*e) {
                return Err(CubeError::NotInSet);
            }
        }
        for w in edges.windows(2) {
            if p.face_unchecked(w[1], 0, 1) != p.face_unchecked(w[0], 1, 1) {
                return Err(CubeError::BrokenPath);
            }
        }
        Ok(Path { start: p.face_unchecked(first, 0, 1), edges })
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn start(&self) -> CubeId {
        self.start
    }

    pub fn end(&self, p: &PrecubicalSet) -> CubeId {
        match self.edges.last() {
            Some(&e) => p.face_unchecked(e, 1, 1),
            None => self.start,
        }
    }

    pub fn edges(&self) -> &[CubeId] {
        &self.edges
    }

    pub fn is_loop(&self, p: &PrecubicalSet) -> bool {
        self.start == self.end(p)
    }

    /// `ω · ν`.
    pub fn concat(&self, p: &PrecubicalSet, other: &Path) -> Result<Path, CubeError> {
        if self.end(p) != other.start {
            return Err(CubeError::EndpointMismatch);
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Ok(Path { start: self.start, edges })
    }
}

/// A dimension-preserving map between precubical sets, stored per dimension
/// as positions in the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcMorphism {
    images: Vec<Vec<usize>>,
}

impl PcMorphism {
    pub fn new(images: Vec<Vec<usize>>) -> Self {
        PcMorphism { images }
    }

    pub fn apply(&self, x: CubeId) -> CubeId {
        CubeId { dim: x.dim, index: self.images[x.dim][x.index] }
    }

    /// True iff every cube has an image and faces commute with the map.
    pub fn is_morphism(&self, source: &PrecubicalSet, target: &PrecubicalSet) -> bool {
        for x in source.all_cubes() {
            let Some(&img) = self.images.get(x.dim).and_then(|v| v.get(x.index)) else {
                return false;
            };
            let fx = CubeId { dim: x.dim, index: img };
            if !target.contains(fx) {
                return false;
            }
            for k in 0..2u8 {
                for i in 1..=x.dim {
                    if self.apply(source.face_unchecked(x, k, i)) != target.face_unchecked(fx, k, i) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> (PrecubicalSet, TensorLayout) {
        let i = interval(0, 1);
        tensor(&i, &i)
    }

    #[test]
    fn interval_structure() {
        let p = interval(0, 3);
        assert!(validate_precubical(&p).is_ok());
        assert_eq!(p.counts(), vec![4, 3]);
        let e = p.find(1, &CubeKey::Span(1, 2)).unwrap();
        assert_eq!(p.key(p.face(e, 0, 1).unwrap()), &CubeKey::Int(1));
        assert_eq!(p.key(p.face(e, 1, 1).unwrap()), &CubeKey::Int(2));
    }

    #[test]
    fn standard_square() {
        let (sq, layout) = square();
        assert!(validate_precubical(&sq).is_ok());
        assert_eq!(sq.counts(), vec![4, 4, 1]);
        let top = CubeId::new(2, 0);
        let iota1 = CubeKey::Span(0, 1);
        assert_eq!(sq.key(top), &CubeKey::pair(iota1.clone(), iota1.clone()));
        // d^0_2 (ι_1, ι_1) = (ι_1, 0)
        let f = sq.face(top, 0, 2).unwrap();
        assert_eq!(sq.key(f), &CubeKey::pair(iota1, CubeKey::Int(0)));
        assert_eq!(layout.factors(f).0.dim, 1);
        assert_eq!(sq.key(sq.initial_vertex(top)), &CubeKey::pair(CubeKey::Int(0), CubeKey::Int(0)));
    }

    #[test]
    fn tensor_with_point_is_identity() {
        let p = interval(0, 2);
        let point = interval(0, 0);
        let (t, _) = tensor(&p, &point);
        assert_eq!(t.counts(), p.counts());
        assert!(validate_precubical(&t).is_ok());
    }

    #[test]
    fn broken_square_reports_identity() {
        let mut b = PrecubicalBuilder::new();
        for v in ["00", "10", "01", "11", "zz"] {
            b.vertex(CubeKey::name(v));
        }
        let e = |n: &str, s: &str, t: &str| (CubeKey::name(n), vec![CubeKey::name(s)], vec![CubeKey::name(t)]);
        for (n, s, t) in [e("bot", "00", "10"), e("top", "01", "11"), e("left", "00", "01"), e("right", "10", "11"), e("odd", "zz", "01")] {
            b.cube(n, 1, s, t);
        }
        // d^0_2 = bot, d^0_1 = odd (starts at zz, not at 00)
        b.cube(CubeKey::name("x"), 2, vec![CubeKey::name("odd"), CubeKey::name("bot")], vec![CubeKey::name("right"), CubeKey::name("top")]);
        let p = b.build().unwrap();
        let report = validate_precubical(&p);
        assert!(report.violations.contains(&Violation::Identity { cube: "x".into(), k: 0, i: 1, l: 0, j: 2 }));
    }

    #[test]
    fn builder_reports_dangling_faces() {
        let mut b = PrecubicalBuilder::new();
        b.vertex(CubeKey::name("v"));
        b.cube(CubeKey::name("e"), 1, vec![CubeKey::name("v")], vec![CubeKey::name("w")]);
        let err = b.build().unwrap_err();
        assert_eq!(err.violations.len(), 1);
        assert!(matches!(err.violations[0], Violation::MissingFace { k: 1, i: 1, .. }));
    }

    #[test]
    fn edge_operator_on_squares() {
        let (sq, _) = square();
        let x = CubeId::new(2, 0);
        assert_eq!(sq.edge_e(x, 0, 1).unwrap(), sq.face(x, 1, 2).unwrap());
        assert_eq!(sq.edge_e(x, 1, 2).unwrap(), sq.face(x, 0, 1).unwrap());
        let e = CubeId::new(1, 0);
        assert_eq!(sq.edge_e(e, 0, 1).unwrap(), e);
        assert!(sq.edge_e(x, 0, 3).is_err());
    }

    #[test]
    fn subcube_evaluation() {
        let (sq, _) = square();
        let x = CubeId::new(2, 0);
        assert_eq!(sq.evaluate_subcube(x, &[Coord::Step(0), Coord::Step(0)]).unwrap(), x);
        assert_eq!(sq.evaluate_subcube(x, &[Coord::Vertex(0), Coord::Step(0)]).unwrap(), sq.face(x, 0, 1).unwrap());
        assert_eq!(sq.evaluate_subcube(x, &[Coord::Vertex(0), Coord::Vertex(0)]).unwrap(), sq.initial_vertex(x));
        assert!(sq.evaluate_subcube(x, &[Coord::Step(0)]).is_err());
    }

    #[test]
    fn paths_concatenate() {
        let p = interval(0, 2);
        let a = p.find(1, &CubeKey::Span(0, 1)).unwrap();
        let b = p.find(1, &CubeKey::Span(1, 2)).unwrap();
        let v0 = p.find(0, &CubeKey::Int(0)).unwrap();
        let wa = Path::from_edges(&p, vec![a]).unwrap();
        let wb = Path::from_edges(&p, vec![b]).unwrap();
        let ab = wa.concat(&p, &wb).unwrap();
        assert_eq!(ab.len(), 2);
        assert_eq!(Path::constant(&p, v0).unwrap().concat(&p, &wa).unwrap(), wa);
        assert_eq!(wb.concat(&p, &wa), Err(CubeError::EndpointMismatch));
        assert_eq!(Path::from_edges(&p, vec![b, a]), Err(CubeError::BrokenPath));
    }

    #[test]
    fn grid_matches_tensor_of_intervals() {
        let g = Grid::new(vec![2, 1]);
        let p = g.to_precubical();
        assert!(validate_precubical(&p).is_ok());
        let (t, _) = tensor(&interval(0, 2), &interval(0, 1));
        assert_eq!(p.counts(), t.counts());
        assert_eq!(g.top_cells().len(), 2);
    }
}
