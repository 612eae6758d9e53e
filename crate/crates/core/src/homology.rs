//! Cubical homology with explicit generators.
//!
//! For degree `n`, reduce `d_{n+1}` tracking `U⁻¹`. The columns `w_k` of
//! `U⁻¹` at pivot rows are cycles and the image of `d_{n+1}` is
//! `⊕ p_k·w_k`. The remaining columns `u_j` complete a basis of `C_n`, and
//! the cycles in their span are given by the kernel of `B = [d_n u_j]`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::chain::{boundary_matrix, is_cycle, Chain};
use crate::error::ChainError;
use crate::matrix::SparseMatrix;
use crate::precubical::PrecubicalSet;
use crate::ring::CoefficientRing;
use crate::snf::{reduce, Reduction, Track};

/// `H_n` as `R^rank ⊕ ⊕ R/t_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    pub degree: usize,
    pub ring: CoefficientRing,
    pub rank: usize,
    /// Invariant factors `> 1`, each dividing the next; empty over a field.
    pub torsion: Vec<BigInt>,
    pub free_generators: Vec<Chain>,
    /// One cycle per entry of `torsion`, in the same order.
    pub torsion_generators: Vec<Chain>,
}

impl HomologyGroup {
    /// Free generators followed by torsion generators.
    pub fn generators(&self) -> impl Iterator<Item = &Chain> {
        self.free_generators.iter().chain(self.torsion_generators.iter())
    }

    pub fn generator_count(&self) -> usize {
        self.free_generators.len() + self.torsion_generators.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

/// Coordinates of a cycle's class in the generators of a [`HomologyGroup`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassCoordinates {
    pub free: Vec<BigInt>,
    /// Reduced modulo the matching torsion coefficient.
    pub torsion: Vec<BigInt>,
}

impl ClassCoordinates {
    pub fn is_zero(&self) -> bool {
        self.free.iter().chain(&self.torsion).all(Zero::is_zero)
    }
}

/// `H_n` together with the transforms needed to decompose arbitrary cycles.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    pub group: HomologyGroup,
    image: Reduction,
    kernel: Reduction,
    /// Non-pivot rows of `d_{n+1}`, i.e. the columns `u_j`.
    complement: Vec<usize>,
    /// Pivot positions of `d_{n+1}` carrying torsion.
    torsion_pivots: Vec<usize>,
    /// Columns of `B` spanning its kernel.
    kernel_cols: Vec<usize>,
}

impl HomologyBasis {
    /// Coordinates of the class of `z`; errors when `z` is not a cycle.
    pub fn coordinates(&self, p: &PrecubicalSet, z: &Chain) -> Result<ClassCoordinates, ChainError> {
        let n = self.group.degree;
        if z.degree() != n {
            return Err(ChainError::DegreeMismatch { expected: n, found: z.degree() });
        }
        if !is_cycle(p, z)? {
            return Err(ChainError::NotACycle);
        }
        let ring = self.group.ring;
        let y = self.image.apply_u(z.vector(), ring);
        let torsion = self
            .torsion_pivots
            .iter()
            .zip(&self.group.torsion)
            .map(|(&k, t)| {
                let row = self.image.pivots[k].row;
                y.get(&row).cloned().unwrap_or_default().mod_floor(t)
            })
            .collect();
        let b: BTreeMap<usize, BigInt> =
            self.complement.iter().enumerate().filter_map(|(j, row)| y.get(row).map(|x| (j, x.clone()))).collect();
        let kappa = self.kernel.apply_v_inv(&b, ring);
        let free = self.kernel_cols.iter().map(|c| kappa.get(c).cloned().unwrap_or_default()).collect();
        Ok(ClassCoordinates { free, torsion })
    }

    /// True iff `z` is a boundary.
    pub fn is_boundary(&self, p: &PrecubicalSet, z: &Chain) -> Result<bool, ChainError> {
        Ok(self.coordinates(p, z)?.is_zero())
    }
}

fn homology_in_degree(p: &PrecubicalSet, n: usize, ring: CoefficientRing, coordinates: bool) -> HomologyBasis {
    let d_next = boundary_matrix(p, n + 1, ring);
    let d_here = boundary_matrix(p, n, ring);
    let image = reduce(&d_next, ring, Track { u: coordinates, u_inv: true, ..Track::NONE });
    let u_inv = image.u_inv.as_ref().expect("tracked");
    let pivot_rows: BTreeSet<usize> = image.pivot_rows();
    let complement: Vec<usize> = (0..p.count(n)).filter(|r| !pivot_rows.contains(r)).collect();

    let mut torsion = Vec::new();
    let mut torsion_generators = Vec::new();
    let mut torsion_pivots = Vec::new();
    for (k, piv) in image.pivots.iter().enumerate() {
        if !ring.is_unit(&piv.value) {
            torsion.push(piv.value.clone());
            torsion_generators.push(Chain::from_vector(n, ring, u_inv[piv.row].clone()));
            torsion_pivots.push(k);
        }
    }

    let b_cols = complement.iter().map(|&r| d_here.apply(&u_inv[r], ring)).collect();
    let b = SparseMatrix::from_columns(d_here.rows(), b_cols);
    let kernel = reduce(&b, ring, Track { v: true, v_inv: coordinates, ..Track::NONE });
    let pivot_cols = kernel.pivot_cols();
    let kernel_cols: Vec<usize> = (0..complement.len()).filter(|c| !pivot_cols.contains(c)).collect();
    let v = kernel.v.as_ref().expect("tracked");
    let free_generators: Vec<Chain> = kernel_cols
        .iter()
        .map(|&c| {
            let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
            for (&j, kappa) in &v[c] {
                for (&i, x) in &u_inv[complement[j]] {
                    *acc.entry(i).or_default() += kappa * x;
                }
            }
            Chain::from_vector(n, ring, acc)
        })
        .collect();

    HomologyBasis {
        group: HomologyGroup { degree: n, ring, rank: free_generators.len(), torsion, free_generators, torsion_generators },
        image,
        kernel,
        complement,
        torsion_pivots,
        kernel_cols,
    }
}

/// `H_n(P; R)` for `n = 0..=dim P`; empty for the empty set.
pub fn homology(p: &PrecubicalSet, ring: CoefficientRing) -> Vec<HomologyGroup> {
    match p.dim() {
        None => Vec::new(),
        Some(top) => (0..=top).map(|n| homology_in_degree(p, n, ring, false).group).collect(),
    }
}

/// `H_n(P; R)` with the data to compute coordinates of classes.
pub fn homology_basis(p: &PrecubicalSet, n: usize, ring: CoefficientRing) -> HomologyBasis {
    homology_in_degree(p, n, ring, true)
}

/// Betti numbers `rank H_n` for `n = 0..=dim P`.
pub fn betti_numbers(p: &PrecubicalSet, ring: CoefficientRing) -> Vec<usize> {
    homology(p, ring).iter().map(|h| h.rank).collect()
}
