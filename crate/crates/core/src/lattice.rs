//! Submodules spanned by finitely many vectors: membership with witnesses
//! or certificates of non-membership, and canonical bases.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::AlgebraError;
use crate::exterior::{Alphabet, Blade, ExteriorElement};
use crate::matrix::SparseMatrix;
use crate::ring::CoefficientRing;
use crate::snf::{reduce, Track};

pub type SparseVec = BTreeMap<usize, BigInt>;

/// Proof that a target is not in the span: a functional `u` and a modulus
/// `m` with `u·v ≡ 0 (mod m)` for every spanning vector `v` and
/// `u·t ≢ 0 (mod m)`. `m = 0` means the congruences are equalities in the ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate<K> {
    pub functional: Vec<(K, BigInt)>,
    pub modulus: BigInt,
}

fn residue(x: BigInt, m: &BigInt, ring: CoefficientRing) -> BigInt {
    let x = ring.normalize(x);
    if m.is_zero() {
        x
    } else {
        x.mod_floor(m)
    }
}

impl<K: Ord> Certificate<K> {
    fn pair(&self, v: &BTreeMap<K, BigInt>, ring: CoefficientRing) -> BigInt {
        let mut acc = BigInt::zero();
        for (k, a) in &self.functional {
            if let Some(b) = v.get(k) {
                acc += a * b;
            }
        }
        residue(acc, &self.modulus, ring)
    }

    /// Re-checks both congruences.
    pub fn verify(&self, vectors: &[BTreeMap<K, BigInt>], target: &BTreeMap<K, BigInt>, ring: CoefficientRing) -> bool {
        vectors.iter().all(|v| self.pair(v, ring).is_zero()) && !self.pair(target, ring).is_zero()
    }
}

/// Outcome of a membership test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership<K> {
    /// `target = Σ witness_j · v_j`.
    Member {
        witness: Vec<BigInt>,
    },
    NotMember {
        certificate: Certificate<K>,
    },
}

impl<K> Membership<K> {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member { .. })
    }
}

/// Decides `target ∈ span(vectors)` over `ring`, with coordinates indexed by `usize`.
pub fn solve(vectors: &[SparseVec], target: &SparseVec, ring: CoefficientRing) -> Membership<usize> {
    let target: SparseVec = target.iter().map(|(&k, x)| (k, ring.normalize(x.clone()))).filter(|(_, x)| !x.is_zero()).collect();
    let used: BTreeSet<usize> = vectors.iter().flat_map(|v| v.keys().copied()).collect();
    if let Some(&k) = target.keys().find(|k| !used.contains(k)) {
        return Membership::NotMember { certificate: Certificate { functional: vec![(k, BigInt::one())], modulus: BigInt::zero() } };
    }
    let index: BTreeMap<usize, usize> = used.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let keys: Vec<usize> = used.into_iter().collect();
    let relabel = |v: &SparseVec| -> SparseVec { v.iter().map(|(k, x)| (index[k], x.clone())).collect() };
    let m = SparseMatrix::from_columns(keys.len(), vectors.iter().map(relabel).collect());
    let red = reduce(&m, ring, Track { u: true, v: true, ..Track::NONE });
    let y = red.apply_u(&relabel(&target), ring);
    let u = red.u.as_ref().expect("tracked");
    let functional = |row: usize| -> Vec<(usize, BigInt)> { u[row].iter().map(|(&i, x)| (keys[i], x.clone())).collect() };

    let pivot_rows = red.pivot_rows();
    if let Some((&r, _)) = y.iter().find(|(r, _)| !pivot_rows.contains(r)) {
        return Membership::NotMember { certificate: Certificate { functional: functional(r), modulus: BigInt::zero() } };
    }
    let mut x_prime: SparseVec = SparseVec::new();
    for piv in &red.pivots {
        let yr = y.get(&piv.row).cloned().unwrap_or_default();
        if !ring.divides(&piv.value, &yr) {
            return Membership::NotMember { certificate: Certificate { functional: functional(piv.row), modulus: piv.value.clone() } };
        }
        let (q, _) = ring.div_rem(&yr, &piv.value);
        if !q.is_zero() {
            x_prime.insert(piv.col, q);
        }
    }
    let v = red.v.as_ref().expect("tracked");
    let mut witness = vec![BigInt::zero(); vectors.len()];
    for (&c, q) in &x_prime {
        for (&j, a) in &v[c] {
            witness[j] += a * q;
        }
    }
    for w in &mut witness {
        *w = ring.normalize(core::mem::take(w));
    }
    Membership::Member { witness }
}

/// Canonical basis of `span(vectors)`: echelon form by increasing key with
/// positive pivots, entries of each pivot column reduced modulo the pivot in
/// the basis vectors before it (Hermite normal form over `Z`, reduced row
/// echelon form over a field).
pub fn canonical_basis(vectors: &[SparseVec], ring: CoefficientRing) -> Vec<SparseVec> {
    let mut pool: Vec<SparseVec> = vectors
        .iter()
        .map(|v| v.iter().map(|(&k, x)| (k, ring.normalize(x.clone()))).filter(|(_, x)| !x.is_zero()).collect::<SparseVec>())
        .filter(|v| !v.is_empty())
        .collect();
    let mut basis: Vec<SparseVec> = Vec::new();
    while !pool.is_empty() {
        let lead = pool.iter().filter_map(|v| v.keys().next().copied()).min().expect("nonempty vectors");
        loop {
            let mut idx: Vec<usize> = (0..pool.len()).filter(|&i| pool[i].keys().next() == Some(&lead)).collect();
            idx.sort_by(|&a, &b| ring.size(&pool[a][&lead]).cmp(&ring.size(&pool[b][&lead])).then(a.cmp(&b)));
            let piv = idx[0];
            let p = pool[piv][&lead].clone();
            let mut changed = false;
            for &i in &idx[1..] {
                let (q, _) = ring.div_rem(&pool[i][&lead], &p);
                let src = pool[piv].clone();
                sub_scaled(&mut pool[i], &q, &src, ring);
                changed = true;
            }
            pool.retain(|v| !v.is_empty());
            if !changed || pool.iter().filter(|v| v.keys().next() == Some(&lead)).count() == 1 {
                break;
            }
        }
        let piv = pool.iter().position(|v| v.keys().next() == Some(&lead)).expect("pivot survives");
        let mut b = pool.swap_remove(piv);
        let (_, w) = ring.canonical_associate(&b[&lead]);
        for x in b.values_mut() {
            *x = ring.mul(x, &w);
        }
        basis.push(b);
    }
    for k in 0..basis.len() {
        let lead = *basis[k].keys().next().expect("nonempty");
        let p = basis[k][&lead].clone();
        let src = basis[k].clone();
        for b in basis.iter_mut().take(k) {
            if let Some(x) = b.get(&lead).cloned() {
                let q = if ring.is_field() { ring.div_rem(&x, &p).0 } else { x.div_floor(&p) };
                sub_scaled(b, &q, &src, ring);
            }
        }
    }
    basis
}

fn sub_scaled(target: &mut SparseVec, q: &BigInt, source: &SparseVec, ring: CoefficientRing) {
    if q.is_zero() {
        return;
    }
    for (&k, x) in source {
        let e = target.entry(k).or_default();
        *e = ring.normalize(&*e - q * x);
        if e.is_zero() {
            target.remove(&k);
        }
    }
}

/// Invariant factors of the matrix whose columns are `vectors`.
pub fn invariant_factors(vectors: &[SparseVec], rows: usize, ring: CoefficientRing) -> Vec<BigInt> {
    let m = SparseMatrix::from_columns(rows, vectors.to_vec());
    reduce(&m, ring, Track::NONE).pivots.into_iter().map(|p| p.value).collect()
}

/// The submodule of `Λ(Σ)` spanned by a list of elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelImage {
    pub rank: usize,
    /// Invariant factors of the spanning matrix.
    pub invariant_factors: Vec<BigInt>,
    /// Canonical basis of the span, see [`canonical_basis`].
    pub basis: Vec<ExteriorElement>,
}

/// Coordinates of exterior elements on the blades that occur in them.
struct BladeIndex {
    blades: Vec<Blade>,
    index: BTreeMap<Blade, usize>,
}

impl BladeIndex {
    fn new<'a>(elements: impl Iterator<Item = &'a ExteriorElement>) -> Self {
        let set: BTreeSet<Blade> = elements.flat_map(|e| e.terms().map(|(b, _)| b.clone())).collect();
        let blades: Vec<Blade> = set.into_iter().collect();
        let index = blades.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
        BladeIndex { blades, index }
    }

    fn vector(&self, e: &ExteriorElement) -> SparseVec {
        e.terms().map(|(b, x)| (self.index[b], x.clone())).collect()
    }

    fn element(&self, v: &SparseVec, alphabet: &Arc<Alphabet>, ring: CoefficientRing) -> ExteriorElement {
        let mut e = ExteriorElement::zero(alphabet, ring);
        for (&i, x) in v {
            e.add_term(self.blades[i].clone(), x.clone());
        }
        e
    }
}

fn check_common(alphabet: &Arc<Alphabet>, ring: CoefficientRing, elements: &[&ExteriorElement]) -> Result<(), AlgebraError> {
    for e in elements {
        if e.ring() != ring {
            return Err(AlgebraError::RingMismatch);
        }
        if !(Arc::ptr_eq(e.alphabet(), alphabet) || e.alphabet().letters() == alphabet.letters()) {
            return Err(AlgebraError::AlphabetMismatch);
        }
    }
    Ok(())
}

/// The span of `vectors` in `Λ(Σ)`.
pub fn label_image(alphabet: &Arc<Alphabet>, ring: CoefficientRing, vectors: &[ExteriorElement]) -> Result<LabelImage, AlgebraError> {
    check_common(alphabet, ring, &vectors.iter().collect::<Vec<_>>())?;
    let idx = BladeIndex::new(vectors.iter());
    let vs: Vec<SparseVec> = vectors.iter().map(|e| idx.vector(e)).collect();
    let invariant_factors = invariant_factors(&vs, idx.blades.len(), ring);
    let basis = canonical_basis(&vs, ring).iter().map(|v| idx.element(v, alphabet, ring)).collect();
    Ok(LabelImage { rank: invariant_factors.len(), invariant_factors, basis })
}

/// Decides whether `target` is a linear combination of `vectors` over `ring`.
pub fn lattice_membership(vectors: &[ExteriorElement], target: &ExteriorElement) -> Result<Membership<Blade>, AlgebraError> {
    let ring = target.ring();
    check_common(target.alphabet(), ring, &vectors.iter().collect::<Vec<_>>())?;
    let idx = BladeIndex::new(vectors.iter().chain(core::iter::once(target)));
    let vs: Vec<SparseVec> = vectors.iter().map(|e| idx.vector(e)).collect();
    Ok(match solve(&vs, &idx.vector(target), ring) {
        Membership::Member { witness } => Membership::Member { witness },
        Membership::NotMember { certificate } => Membership::NotMember {
            certificate: Certificate {
                functional: certificate.functional.into_iter().map(|(i, x)| (idx.blades[i].clone(), x)).collect(),
                modulus: certificate.modulus,
            },
        },
    })
}

/// Blade-indexed coefficients of an element, for certificate checks.
pub fn blade_coordinates(e: &ExteriorElement) -> BTreeMap<Blade, BigInt> {
    e.terms().map(|(b, x)| (b.clone(), x.clone())).collect()
}

/// Rank of the kernel of the map `R^k → Λ(Σ)` sending the `j`-th basis vector to `vectors[j]`.
pub fn kernel_rank(vectors: &[ExteriorElement]) -> usize {
    let Some(first) = vectors.first() else {
        return 0;
    };
    let idx = BladeIndex::new(vectors.iter());
    let vs: Vec<SparseVec> = vectors.iter().map(|e| idx.vector(e)).collect();
    vectors.len() - invariant_factors(&vs, idx.blades.len(), first.ring()).len()
}

impl LabelImage {
    /// True iff `x` lies in the span.
    pub fn contains(&self, x: &ExteriorElement) -> Result<bool, AlgebraError> {
        Ok(lattice_membership(&self.basis, x)?.is_member())
    }
}

/// Leading coefficient sign helper used by reports: makes the first
/// nonzero coefficient of `e` positive over `Z`.
pub fn positive_leading(e: &ExteriorElement) -> ExteriorElement {
    match e.terms().next() {
        Some((_, x)) if x.is_negative() => e.neg(),
        _ => e.clone(),
    }
}
