//! Smith normal form over `Z` and `Z/p`.
//!
//! [`Reducer`] works in place on a sparse matrix and never permutes it:
//! pivots stay at their original `(row, col)` positions. The row and column
//! operations can be replayed on the transforms `U`, `U⁻¹`, `V`, `V⁻¹`
//! (each tracked only on request) so that `U·M·V` has exactly one nonzero
//! entry per pivot row and pivot column.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::matrix::{IntMatrix, SparseMatrix};
use crate::ring::CoefficientRing;

/// Which transforms a reduction records.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Track {
    pub u: bool,
    pub u_inv: bool,
    pub v: bool,
    pub v_inv: bool,
}

impl Track {
    pub const NONE: Track = Track { u: false, u_inv: false, v: false, v_inv: false };
    pub const ALL: Track = Track { u: true, u_inv: true, v: true, v_inv: true };
}

/// A pivot of the reduced matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pivot {
    pub row: usize,
    pub col: usize,
    pub value: BigInt,
}

type SparseVec = BTreeMap<usize, BigInt>;

/// Outcome of [`reduce`]. Pivot values form a divisibility chain in order
/// and are canonical associates (positive over `Z`, one over a field).
#[derive(Clone, Debug)]
pub struct Reduction {
    pub rows: usize,
    pub cols: usize,
    pub pivots: Vec<Pivot>,
    /// Rows of `U`.
    pub u: Option<Vec<SparseVec>>,
    /// Columns of `U⁻¹`.
    pub u_inv: Option<Vec<SparseVec>>,
    /// Columns of `V`.
    pub v: Option<Vec<SparseVec>>,
    /// Rows of `V⁻¹`.
    pub v_inv: Option<Vec<SparseVec>>,
}

impl Reduction {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_rows(&self) -> BTreeSet<usize> {
        self.pivots.iter().map(|p| p.row).collect()
    }

    pub fn pivot_cols(&self) -> BTreeSet<usize> {
        self.pivots.iter().map(|p| p.col).collect()
    }

    /// `U·x` (requires `U`).
    pub fn apply_u(&self, x: &SparseVec, ring: CoefficientRing) -> SparseVec {
        let u = self.u.as_ref().expect("U was not tracked");
        apply_rows(u, x, ring)
    }

    /// `V⁻¹·x` (requires `V⁻¹`).
    pub fn apply_v_inv(&self, x: &SparseVec, ring: CoefficientRing) -> SparseVec {
        let v_inv = self.v_inv.as_ref().expect("V⁻¹ was not tracked");
        apply_rows(v_inv, x, ring)
    }
}

fn apply_rows(rows: &[SparseVec], x: &SparseVec, ring: CoefficientRing) -> SparseVec {
    let mut out = SparseVec::new();
    for (i, row) in rows.iter().enumerate() {
        let mut acc = BigInt::zero();
        let (small, large) = if row.len() < x.len() { (row, x) } else { (x, row) };
        for (j, a) in small {
            if let Some(b) = large.get(j) {
                acc += a * b;
            }
        }
        let acc = ring.normalize(acc);
        if !acc.is_zero() {
            out.insert(i, acc);
        }
    }
    out
}

fn identity_vecs(n: usize) -> Vec<SparseVec> {
    (0..n).map(|i| BTreeMap::from([(i, BigInt::one())])).collect()
}

/// `target += q·source` on sparse vectors.
fn axpy(target: &mut SparseVec, q: &BigInt, source: &SparseVec, ring: CoefficientRing) {
    for (&k, x) in source {
        let entry = target.entry(k).or_default();
        *entry = ring.normalize(&*entry + q * x);
        if entry.is_zero() {
            target.remove(&k);
        }
    }
}

/// Sparse elimination state.
struct Reducer {
    ring: CoefficientRing,
    rows: Vec<SparseVec>,
    col_support: Vec<BTreeSet<usize>>,
    row_done: Vec<bool>,
    col_done: Vec<bool>,
    u: Option<Vec<SparseVec>>,
    u_inv: Option<Vec<SparseVec>>,
    v: Option<Vec<SparseVec>>,
    v_inv: Option<Vec<SparseVec>>,
}

impl Reducer {
    fn new(m: &SparseMatrix, ring: CoefficientRing, track: Track) -> Self {
        let nr = m.rows();
        let nc = m.cols();
        let mut rows = vec![SparseVec::new(); nr];
        let mut col_support = vec![BTreeSet::new(); nc];
        for (j, col) in m.columns().iter().enumerate() {
            for (&i, x) in col {
                let x = ring.normalize(x.clone());
                if !x.is_zero() {
                    rows[i].insert(j, x);
                    col_support[j].insert(i);
                }
            }
        }
        Reducer {
            ring,
            rows,
            col_support,
            row_done: vec![false; nr],
            col_done: vec![false; nc],
            u: track.u.then(|| identity_vecs(nr)),
            u_inv: track.u_inv.then(|| identity_vecs(nr)),
            v: track.v.then(|| identity_vecs(nc)),
            v_inv: track.v_inv.then(|| identity_vecs(nc)),
        }
    }

    /// `row_i += q·row_r`.
    fn add_row(&mut self, i: usize, r: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        let ring = self.ring;
        let source = core::mem::take(&mut self.rows[r]);
        for (&j, x) in &source {
            let entry = self.rows[i].entry(j).or_default();
            *entry = ring.normalize(&*entry + q * x);
            if entry.is_zero() {
                self.rows[i].remove(&j);
                self.col_support[j].remove(&i);
            } else {
                self.col_support[j].insert(i);
            }
        }
        self.rows[r] = source;
        if let Some(u) = &mut self.u {
            let src = core::mem::take(&mut u[r]);
            axpy(&mut u[i], q, &src, ring);
            u[r] = src;
        }
        if let Some(u_inv) = &mut self.u_inv {
            let src = core::mem::take(&mut u_inv[i]);
            axpy(&mut u_inv[r], &-q, &src, ring);
            u_inv[i] = src;
        }
    }

    /// `col_j += q·col_c`.
    fn add_col(&mut self, j: usize, c: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        let ring = self.ring;
        let support: Vec<usize> = self.col_support[c].iter().copied().collect();
        for i in support {
            let x = self.rows[i][&c].clone();
            let entry = self.rows[i].entry(j).or_default();
            *entry = ring.normalize(&*entry + q * x);
            if entry.is_zero() {
                self.rows[i].remove(&j);
                self.col_support[j].remove(&i);
            } else {
                self.col_support[j].insert(i);
            }
        }
        if let Some(v) = &mut self.v {
            let src = core::mem::take(&mut v[c]);
            axpy(&mut v[j], q, &src, ring);
            v[c] = src;
        }
        if let Some(v_inv) = &mut self.v_inv {
            let src = core::mem::take(&mut v_inv[j]);
            axpy(&mut v_inv[c], &-q, &src, ring);
            v_inv[j] = src;
        }
    }

    /// Multiplies row `r` by the unit `w`.
    fn scale_row(&mut self, r: usize, w: &BigInt) {
        if w.is_one() {
            return;
        }
        let ring = self.ring;
        for x in self.rows[r].values_mut() {
            *x = ring.mul(x, w);
        }
        if let Some(u) = &mut self.u {
            for x in u[r].values_mut() {
                *x = ring.mul(x, w);
            }
        }
        if let Some(u_inv) = &mut self.u_inv {
            let w_inv = ring.inverse(w).expect("scaling by a unit");
            for x in u_inv[r].values_mut() {
                *x = ring.mul(x, &w_inv);
            }
        }
    }

    /// Active entry to pivot on: a unit of least Markowitz cost if one
    /// exists, otherwise an entry of least absolute value.
    fn choose_pivot(&self) -> Option<(usize, usize)> {
        let mut best_unit: Option<(usize, usize, usize)> = None;
        let mut best_other: Option<(BigInt, usize, usize)> = None;
        for (i, row) in self.rows.iter().enumerate() {
            if self.row_done[i] || row.is_empty() {
                continue;
            }
            for (&j, x) in row {
                if self.ring.is_unit(x) {
                    let cost = (row.len() - 1) * (self.col_support[j].len() - 1);
                    if best_unit.as_ref().is_none_or(|b| cost < b.0) {
                        best_unit = Some((cost, i, j));
                        if cost == 0 {
                            return Some((i, j));
                        }
                    }
                } else if best_unit.is_none() {
                    let size = x.abs();
                    if best_other.as_ref().is_none_or(|b| size < b.0) {
                        best_other = Some((size, i, j));
                    }
                }
            }
        }
        best_unit.map(|(_, i, j)| (i, j)).or(best_other.map(|(_, i, j)| (i, j)))
    }

    /// An active entry outside row `r`/column `c` not divisible by `p`.
    fn find_indivisible(&self, p: &BigInt) -> Option<usize> {
        for (i, row) in self.rows.iter().enumerate() {
            if self.row_done[i] {
                continue;
            }
            if row.values().any(|x| !self.ring.divides(p, x)) {
                return Some(i);
            }
        }
        None
    }

    /// Clears the row and column of the pivot, shrinking the pivot with
    /// Euclidean steps when needed. Returns the final pivot position.
    fn settle(&mut self, mut r: usize, mut c: usize) -> (usize, usize) {
        'outer: loop {
            let p = self.rows[r][&c].clone();
            let others: Vec<usize> = self.col_support[c].iter().copied().filter(|&i| i != r).collect();
            for i in others {
                let a = self.rows[i][&c].clone();
                let (q, rem) = self.ring.div_rem(&a, &p);
                self.add_row(i, r, &-q);
                if !rem.is_zero() {
                    r = i;
                    continue 'outer;
                }
            }
            let others: Vec<usize> = self.rows[r].keys().copied().filter(|&j| j != c).collect();
            for j in others {
                let a = self.rows[r][&j].clone();
                let (q, rem) = self.ring.div_rem(&a, &p);
                self.add_col(j, c, &-q);
                if !rem.is_zero() {
                    c = j;
                    continue 'outer;
                }
            }
            if !self.ring.is_unit(&p) {
                self.row_done[r] = true;
                let bad = self.find_indivisible(&p);
                self.row_done[r] = false;
                if let Some(i) = bad {
                    self.add_row(r, i, &BigInt::one());
                    continue 'outer;
                }
            }
            return (r, c);
        }
    }

    fn run(mut self) -> Reduction {
        let mut pivots = Vec::new();
        while let Some((r, c)) = self.choose_pivot() {
            let (r, c) = self.settle(r, c);
            let p = self.rows[r][&c].clone();
            let (value, w) = self.ring.canonical_associate(&p);
            self.scale_row(r, &w);
            self.row_done[r] = true;
            self.col_done[c] = true;
            pivots.push(Pivot { row: r, col: c, value });
        }
        debug_assert!(self.col_done.len() == self.col_support.len());
        Reduction {
            rows: self.rows.len(),
            cols: self.col_support.len(),
            pivots,
            u: self.u,
            u_inv: self.u_inv,
            v: self.v,
            v_inv: self.v_inv,
        }
    }
}

/// Reduces `m` to Smith form, recording the requested transforms.
pub fn reduce(m: &SparseMatrix, ring: CoefficientRing, track: Track) -> Reduction {
    Reducer::new(m, ring, track).run()
}

/// `D = U·M·V` with `D` diagonal, `d_1 | d_2 | …`, and `U`, `V` invertible over the ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// The nonzero diagonal entries.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.d.diagonal().into_iter().filter(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

fn dense_from_rows(rows: &[SparseVec], n: usize, order: &[usize]) -> IntMatrix {
    let mut m = IntMatrix::zeros(order.len(), n);
    for (new, &old) in order.iter().enumerate() {
        for (&j, x) in &rows[old] {
            m.set(new, j, x.clone());
        }
    }
    m
}

fn dense_from_cols(cols: &[SparseVec], n: usize, order: &[usize]) -> IntMatrix {
    let mut m = IntMatrix::zeros(n, order.len());
    for (new, &old) in order.iter().enumerate() {
        for (&i, x) in &cols[old] {
            m.set(i, new, x.clone());
        }
    }
    m
}

/// Smith normal form of a dense matrix over `ring`.
pub fn smith_normal_form(m: &IntMatrix, ring: CoefficientRing) -> SmithForm {
    let red = reduce(&m.to_sparse(), ring, Track { u: true, v: true, ..Track::NONE });
    let mut row_order: Vec<usize> = red.pivots.iter().map(|p| p.row).collect();
    let pivot_rows = red.pivot_rows();
    row_order.extend((0..m.rows()).filter(|i| !pivot_rows.contains(i)));
    let mut col_order: Vec<usize> = red.pivots.iter().map(|p| p.col).collect();
    let pivot_cols = red.pivot_cols();
    col_order.extend((0..m.cols()).filter(|j| !pivot_cols.contains(j)));
    let u = dense_from_rows(red.u.as_ref().expect("tracked"), m.rows(), &row_order);
    let v = dense_from_cols(red.v.as_ref().expect("tracked"), m.cols(), &col_order);
    let mut d = IntMatrix::zeros(m.rows(), m.cols());
    for (k, p) in red.pivots.iter().enumerate() {
        d.set(k, k, p.value.clone());
    }
    SmithForm { u, d, v }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMatrix, ring: CoefficientRing) -> SmithForm {
        let s = smith_normal_form(m, ring);
        assert_eq!(s.u.mul(&m.normalized(ring)).mul(&s.v).normalized(ring), s.d);
        assert!(s.d.is_diagonal());
        let f = s.invariant_factors();
        for w in f.windows(2) {
            assert!(ring.divides(&w[0], &w[1]));
        }
        if ring == CoefficientRing::Integers {
            assert_eq!(s.u.determinant().abs(), BigInt::one());
            assert_eq!(s.v.determinant().abs(), BigInt::one());
        }
        s
    }

    #[test]
    fn coprime_diagonal() {
        let s = check(&IntMatrix::from_rows(&[[2, 0], [0, 3]]), CoefficientRing::Integers);
        assert_eq!(s.d, IntMatrix::from_rows(&[[1, 0], [0, 6]]));
    }

    #[test]
    fn zero_and_identity() {
        let s = check(&IntMatrix::zeros(2, 3), CoefficientRing::Integers);
        assert!(s.d.is_zero());
        let s = check(&IntMatrix::identity(3), CoefficientRing::Integers);
        assert_eq!(s.d, IntMatrix::identity(3));
    }

    #[test]
    fn torsion_and_field() {
        let m = IntMatrix::from_rows(&[[2, 4, 4], [-6, 6, 12], [10, -4, -16]]);
        let s = check(&m, CoefficientRing::Integers);
        assert_eq!(s.invariant_factors(), vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        let s = check(&m, CoefficientRing::PrimeField(2));
        assert!(s.invariant_factors().is_empty());
        let s = check(&m, CoefficientRing::PrimeField(5));
        assert_eq!(s.rank(), 3);
    }

    #[test]
    fn tracked_inverses_agree() {
        let m = IntMatrix::from_rows(&[[3, 5, 1], [4, 2, 8], [0, 7, 6]]);
        let red = reduce(&m.to_sparse(), CoefficientRing::Integers, Track::ALL);
        let nr = m.rows();
        let u = dense_from_rows(red.u.as_ref().unwrap(), nr, &(0..nr).collect::<Vec<_>>());
        let ui = dense_from_cols(red.u_inv.as_ref().unwrap(), nr, &(0..nr).collect::<Vec<_>>());
        assert_eq!(u.mul(&ui), IntMatrix::identity(nr));
        let v = dense_from_cols(red.v.as_ref().unwrap(), 3, &[0, 1, 2]);
        let vi = dense_from_rows(red.v_inv.as_ref().unwrap(), 3, &[0, 1, 2]);
        assert_eq!(v.mul(&vi), IntMatrix::identity(3));
    }
}
