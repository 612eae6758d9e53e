//! Tensor products of HDAs and homology cross products.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::chain::{boundary, is_cycle, Chain};
use crate::error::{AlgebraError, ChainError};
use crate::hda::{cube_label, Hda};
use crate::precubical::{tensor, CubeId, TensorLayout};
use crate::ring::CoefficientRing;
use crate::validation::PropertyReport;

/// `A ⊗ B` together with the bookkeeping between `(x, y)` and its cube.
#[derive(Clone, Debug)]
pub struct TensorHda {
    pub hda: Hda,
    pub layout: TensorLayout,
}

impl TensorHda {
    /// The cube `(x, y)`.
    pub fn pair(&self, x: CubeId, y: CubeId) -> CubeId {
        self.layout.id_of(x, y)
    }

    pub fn factors(&self, z: CubeId) -> (CubeId, CubeId) {
        self.layout.factors(z)
    }
}

/// `A ⊗ B` with `I = I_A × I_B`, `F = F_A × F_B`, and `(x, v)`, `(v, y)`
/// labeled by `λ_A(x)` and `λ_B(y)`. `B` may use the same letters as `A`
/// in another order; its labels are then rewritten over `A`'s alphabet.
pub fn tensor_hda(a: &Hda, b: &Hda) -> Result<TensorHda, AlgebraError> {
    if !a.same_letters(b.alphabet()) {
        return Err(AlgebraError::AlphabetMismatch);
    }
    let b = b.relabel(a.alphabet())?;
    let (p, layout) = tensor(a.precubical(), b.precubical());
    let labels = p
        .cubes(1)
        .map(|e| {
            let (x, y) = layout.factors(e);
            if x.dim == 1 {
                a.label(x).clone()
            } else {
                b.label(y).clone()
            }
        })
        .collect();
    let lay = &layout;
    let product = |s: Vec<CubeId>, t: Vec<CubeId>| -> BTreeSet<usize> {
        s.iter().flat_map(|&x| t.iter().map(move |&y| lay.id_of(x, y).index)).collect()
    };
    let initial = product(a.initial().collect(), b.initial().collect());
    let final_states = product(a.final_states().collect(), b.final_states().collect());
    let hda = Hda::new(p, a.alphabet().clone(), labels, initial, final_states).expect("consistent product");
    Ok(TensorHda { hda, layout })
}

/// A class of `H_{p+q}(A ⊗ B)` represented by `ζ(a ⊗ b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossClass {
    pub chain: Chain,
    pub p: usize,
    pub q: usize,
}

/// `ζ(a ⊗ b) = Σ a_x b_y (x, y)`.
pub fn zeta(t: &TensorHda, a: &Chain, b: &Chain) -> Chain {
    let mut out = Chain::zero(a.degree() + b.degree(), a.ring());
    for (x, s) in a.terms() {
        for (y, r) in b.terms() {
            out.add_term(t.pair(x, y), s * r);
        }
    }
    out
}

/// The cross product of the classes of the cycles `alpha` and `beta`.
pub fn cross_product(a: &Hda, b: &Hda, t: &TensorHda, alpha: &Chain, beta: &Chain) -> Result<CrossClass, ChainError> {
    if !is_cycle(a.precubical(), alpha)? || !is_cycle(b.precubical(), beta)? {
        return Err(ChainError::NotACycle);
    }
    Ok(CrossClass { chain: zeta(t, alpha, beta), p: alpha.degree(), q: beta.degree() })
}

/// `l^{p+q}(x, y) = l^p(x) ∧ l^q(y)` on every cube of `A ⊗ B`.
pub fn check_tensor_label_identity(a: &Hda, b: &Hda, t: &TensorHda, ring: CoefficientRing) -> PropertyReport {
    let b = b.relabel(a.alphabet()).expect("letters checked when the product was built");
    let mut report = PropertyReport::new();
    for z in t.hda.precubical().all_cubes() {
        let (x, y) = t.factors(z);
        let lhs = cube_label(&t.hda, z, ring);
        let rhs = cube_label(a, x, ring).wedge(&cube_label(&b, y, ring)).expect("same alphabet");
        report.record(lhs == rhs, || format!("cube {}: {} != {}", t.hda.precubical().key(z), lhs.render(), rhs.render()));
    }
    report
}

/// `d ζ(x ⊗ y) = ζ(dx ⊗ y + (-1)^{deg x} x ⊗ dy)` on every pair of cubes.
pub fn check_zeta_chain_map(a: &Hda, b: &Hda, t: &TensorHda, ring: CoefficientRing) -> PropertyReport {
    let (pa, pb) = (a.precubical(), b.precubical());
    let mut report = PropertyReport::new();
    for z in t.hda.precubical().all_cubes() {
        if z.dim == 0 {
            continue;
        }
        let (x, y) = t.factors(z);
        let cx = Chain::cube(x, ring);
        let cy = Chain::cube(y, ring);
        let lhs = boundary(t.hda.precubical(), &Chain::cube(z, ring)).expect("degree ≥ 1");
        let mut rhs = Chain::zero(z.dim - 1, ring);
        if x.dim > 0 {
            rhs = rhs.add(&zeta(t, &boundary(pa, &cx).expect("degree ≥ 1"), &cy)).expect("same degree");
        }
        if y.dim > 0 {
            let sign = BigInt::from(if x.dim % 2 == 0 { 1 } else { -1 });
            let part = zeta(t, &cx, &boundary(pb, &cy).expect("degree ≥ 1")).scale(&sign);
            rhs = rhs.add(&part).expect("same degree");
        }
        report.record(lhs == rhs, || format!("cube {}: boundary does not commute with ζ", t.hda.precubical().key(z)));
    }
    report
}
