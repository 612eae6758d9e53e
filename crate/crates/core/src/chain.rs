//! Cubical chains and boundary matrices.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::ChainError;
use crate::matrix::SparseMatrix;
use crate::precubical::{CubeId, PrecubicalSet};
use crate::ring::CoefficientRing;

/// A homogeneous chain: a finite combination of cubes of one dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    degree: usize,
    ring: CoefficientRing,
    terms: BTreeMap<usize, BigInt>,
}

impl Chain {
    pub fn zero(degree: usize, ring: CoefficientRing) -> Self {
        Chain { degree, ring, terms: BTreeMap::new() }
    }

    pub fn cube(x: CubeId, ring: CoefficientRing) -> Self {
        let mut c = Chain::zero(x.dim, ring);
        c.add_term(x, BigInt::one());
        c
    }

    pub fn from_terms<I>(degree: usize, ring: CoefficientRing, terms: I) -> Result<Self, ChainError>
    where
        I: IntoIterator<Item = (CubeId, BigInt)>,
    {
        let mut c = Chain::zero(degree, ring);
        for (x, a) in terms {
            if x.dim != degree {
                return Err(ChainError::DegreeMismatch { expected: degree, found: x.dim });
            }
            c.add_term(x, a);
        }
        Ok(c)
    }

    /// Chain from a sparse coefficient vector indexed by cube position.
    pub fn from_vector(degree: usize, ring: CoefficientRing, v: BTreeMap<usize, BigInt>) -> Self {
        let terms = v.into_iter().map(|(i, a)| (i, ring.normalize(a))).filter(|(_, a)| !a.is_zero()).collect();
        Chain { degree, ring, terms }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (CubeId, &BigInt)> + '_ {
        let dim = self.degree;
        self.terms.iter().map(move |(&index, a)| (CubeId { dim, index }, a))
    }

    pub fn vector(&self) -> &BTreeMap<usize, BigInt> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, x: CubeId) -> BigInt {
        if x.dim != self.degree {
            return BigInt::zero();
        }
        self.terms.get(&x.index).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, x: CubeId, a: BigInt) {
        debug_assert_eq!(x.dim, self.degree);
        let entry = self.terms.entry(x.index).or_default();
        *entry = self.ring.normalize(&*entry + a);
        if entry.is_zero() {
            self.terms.remove(&x.index);
        }
    }

    pub fn add(&self, other: &Chain) -> Result<Chain, ChainError> {
        if other.degree != self.degree {
            return Err(ChainError::DegreeMismatch { expected: self.degree, found: other.degree });
        }
        let mut out = self.clone();
        for (x, a) in other.terms() {
            out.add_term(x, a.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Chain) -> Result<Chain, ChainError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Chain {
        self.scale(&BigInt::from(-1))
    }

    pub fn scale(&self, k: &BigInt) -> Chain {
        Chain::from_vector(self.degree, self.ring, self.terms.iter().map(|(&i, a)| (i, a * k)).collect())
    }

    fn check_in(&self, p: &PrecubicalSet) -> Result<(), ChainError> {
        if self.terms.keys().all(|&index| p.contains(CubeId { dim: self.degree, index })) {
            Ok(())
        } else {
            Err(ChainError::UnknownCube)
        }
    }
}

/// `d x = Σ_i (-1)^i (d^0_i x - d^1_i x)`, extended linearly.
pub fn boundary(p: &PrecubicalSet, c: &Chain) -> Result<Chain, ChainError> {
    if c.degree == 0 {
        return Err(ChainError::DegreeZero);
    }
    c.check_in(p)?;
    let n = c.degree;
    let mut out = Chain::zero(n - 1, c.ring);
    for (x, a) in c.terms() {
        for i in 1..=n {
            let s = if i % 2 == 0 { a.clone() } else { -a };
            out.add_term(p.face_unchecked(x, 0, i), s.clone());
            out.add_term(p.face_unchecked(x, 1, i), -s);
        }
    }
    Ok(out)
}

/// True iff `c` is a cycle (every degree-0 chain is).
pub fn is_cycle(p: &PrecubicalSet, c: &Chain) -> Result<bool, ChainError> {
    if c.degree == 0 {
        c.check_in(p)?;
        return Ok(true);
    }
    Ok(boundary(p, c)?.is_zero())
}

/// Matrix of `d_n : C_n → C_{n-1}`: rows `P_{n-1}`, columns `P_n`.
/// For `n = 0` this is the `0 × |P_0|` matrix.
pub fn boundary_matrix(p: &PrecubicalSet, n: usize, ring: CoefficientRing) -> SparseMatrix {
    if n == 0 {
        return SparseMatrix::zeros(0, p.count(0));
    }
    let cols = p.cubes(n).map(|x| boundary(p, &Chain::cube(x, ring)).expect("degree ≥ 1").terms).collect();
    SparseMatrix::from_columns(p.count(n - 1), cols)
}

/// The cubical chain complex as its boundary matrices `d_1, …, d_N`.
#[derive(Clone, Debug)]
pub struct ChainComplexRep {
    pub ring: CoefficientRing,
    /// `matrices[n-1]` is `d_n`.
    pub matrices: Vec<SparseMatrix>,
}

impl ChainComplexRep {
    pub fn of(p: &PrecubicalSet, ring: CoefficientRing) -> Self {
        let top = p.dim().unwrap_or(0);
        ChainComplexRep { ring, matrices: (1..=top).map(|n| boundary_matrix(p, n, ring)).collect() }
    }

    pub fn d(&self, n: usize) -> Option<&SparseMatrix> {
        n.checked_sub(1).and_then(|k| self.matrices.get(k))
    }

    /// True iff `d_{n} ∘ d_{n+1} = 0` for all `n`.
    pub fn squares_to_zero(&self) -> bool {
        self.matrices.windows(2).all(|w| w[0].mul(&w[1], self.ring).is_zero())
    }
}
