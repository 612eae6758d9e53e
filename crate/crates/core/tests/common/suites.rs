//! Seeded property suites. Each returns the number of cases run, or the
//! first failure after shrinking.

use std::collections::BTreeMap;

use hdalab_core::chain::{boundary, Chain, ChainComplexRep};
use hdalab_core::hda::{cube_label, labeled_homology, labeling_cochain, validate_hda, Hda};
use hdalab_core::homology::{betti_numbers, homology, homology_basis};
use hdalab_core::lattice::solve;
use hdalab_core::matrix::IntMatrix;
use hdalab_core::snf::smith_normal_form;
use hdalab_core::tensor::{cross_product, tensor_hda};
use hdalab_core::{CoefficientRing, CubeId, PrecubicalSet};
use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use super::*;

fn run<S: Strategy>(cases: u32, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<u32, String>
where
    S::Value: std::fmt::Debug,
{
    runner(cases).run(&strategy, test).map(|_| cases).map_err(|e| e.to_string())
}

fn ring_of(i: usize) -> CoefficientRing {
    rings()[i % 3]
}

/// `l^{n-1}(dx) = 0` for every cube.
pub fn cocycle(cases: u32) -> Result<u32, String> {
    run(cases, (arb_recipe(3, 3), 0..3usize), |(r, k)| {
        let a = build(&r);
        let ring = ring_of(k);
        let p = a.precubical();
        for n in 1..=p.dim().unwrap_or(0) {
            for x in p.cubes(n) {
                let dx = boundary(p, &Chain::cube(x, ring)).unwrap();
                let l = labeling_cochain(&a, n - 1, &dx).unwrap();
                prop_assert!(l.is_zero(), "l(d {}) = {}", p.key(x), l.render());
            }
        }
        Ok(())
    })
}

/// `l^1(e^0_i x) = l^1(e^1_i x)`.
pub fn e_edge_lemma(cases: u32) -> Result<u32, String> {
    run(cases, arb_recipe(3, 3), |r| {
        let a = build(&r);
        prop_assert!(validate_hda(&a).is_ok());
        let p = a.precubical();
        for n in 1..=p.dim().unwrap_or(0) {
            for x in p.cubes(n) {
                for i in 1..=n {
                    let (e0, e1) = (oracle_edge(p, x, 0, i), oracle_edge(p, x, 1, i));
                    let w = |e: CubeId| oracle_wedge_of_words(&[a.label(e).iter().map(|l| l.0).collect()]);
                    prop_assert_eq!(w(e0), w(e1), "cube {} direction {}", p.key(x), i);
                    prop_assert_eq!(p.edge_e(x, 0, i).unwrap(), e0);
                    prop_assert_eq!(p.edge_e(x, 1, i).unwrap(), e1);
                }
            }
        }
        Ok(())
    })
}

/// `l^{n-1}(d^0_i x) = l^{n-1}(d^1_i x)`, and `l^n` agrees with the minors oracle.
pub fn face_lemma(cases: u32) -> Result<u32, String> {
    run(cases, (arb_recipe(3, 3), 0..3usize), |(r, k)| {
        let a = build(&r);
        let ring = ring_of(k);
        let p = a.precubical();
        for x in p.all_cubes() {
            let l = cube_label(&a, x, ring);
            prop_assert_eq!(coefficients(&l), reduce(oracle_cube_label(&a, x), ring), "cube {}", p.key(x));
            for i in 1..=x.dim {
                let f0 = cube_label(&a, p.face(x, 0, i).unwrap(), ring);
                let f1 = cube_label(&a, p.face(x, 1, i).unwrap(), ring);
                prop_assert_eq!(f0, f1, "cube {} direction {}", p.key(x), i);
            }
        }
        Ok(())
    })
}

/// `l^{p+q}(x, y) = l^p(x) ∧ l^q(y)` on every cube of a product.
pub fn tensor_label_identity(cases: u32) -> Result<u32, String> {
    run(cases, (arb_recipe(2, 3), arb_recipe(1, 3), 0..3usize), |(ra, rb, k)| {
        let (a, b) = (build(&ra), build(&rb));
        let ring = ring_of(k);
        let t = tensor_hda(&a, &b).unwrap();
        for z in t.hda.precubical().all_cubes() {
            let (x, y) = t.factors(z);
            prop_assert_eq!(z.dim, x.dim + y.dim);
            let lhs = cube_label(&t.hda, z, ring);
            let rhs = cube_label(&a, x, ring).wedge(&cube_label(&b, y, ring)).unwrap();
            prop_assert_eq!(&lhs, &rhs);
            let mut words: Vec<Vec<u32>> = Vec::new();
            for i in 1..=x.dim {
                words.push(a.label(oracle_edge(a.precubical(), x, 0, i)).iter().map(|l| l.0).collect());
            }
            for i in 1..=y.dim {
                words.push(b.label(oracle_edge(b.precubical(), y, 0, i)).iter().map(|l| l.0).collect());
            }
            prop_assert_eq!(coefficients(&lhs), reduce(oracle_wedge_of_words(&words), ring));
        }
        Ok(())
    })
}

/// `ℓ(α × β) = ℓ(α) ∧ ℓ(β)` for all generator pairs, `A` a circle or a
/// torus and `B` a circle.
pub fn cross_product_theorem(cases: u32) -> Result<u32, String> {
    let strategy = (arb_circle(3), proptest::option::of(arb_circle(3)), arb_circle(3), 0..3usize);
    run(cases, strategy, |(c1, c2, c3, k)| {
        let al = alphabet();
        let ring = ring_of(k);
        let mut fa = vec![c1.clone()];
        fa.extend(c2.clone());
        let a = product(&al, &fa);
        let b = factor_hda(&al, &c3);
        let t = tensor_hda(&a, &b).unwrap();
        let (ha, hb) = (labeled_homology(&a, ring), labeled_homology(&b, ring));
        let circle_sum = |f: &Factor| -> Vec<u32> { f.labels.iter().flatten().map(|&i| i as u32).collect() };
        let w = circle_sum(&c3);
        prop_assert_eq!(coefficients(&hb.degrees[1].labels[0]), reduce(oracle_wedge_of_words(std::slice::from_ref(&w)), ring));
        for da in &ha.degrees {
            for db in &hb.degrees {
                for (alpha, la) in da.group.generators().zip(&da.labels) {
                    for (beta, lb) in db.group.generators().zip(&db.labels) {
                        let cross = cross_product(&a, &b, &t, alpha, beta).unwrap();
                        let lhs = labeling_cochain(&t.hda, cross.p + cross.q, &cross.chain).unwrap();
                        prop_assert_eq!(&lhs, &la.wedge(lb).unwrap());
                    }
                }
            }
        }
        if c2.is_none() {
            let top = &labeled_homology(&t.hda, ring).degrees[2];
            let oracle = reduce(oracle_wedge_of_words(&[circle_sum(&c1), w]), ring);
            prop_assert_eq!(top.group.rank, 1);
            let l = &top.labels[0];
            prop_assert!(coefficients(l) == oracle || coefficients(&l.neg()) == oracle);
        }
        Ok(())
    })
}

/// `d ∘ d = 0`, and the boundary matrices agree with the face formula.
pub fn boundary_squares_to_zero(cases: u32) -> Result<u32, String> {
    run(cases, (arb_recipe(3, 3), 0..3usize), |(r, k)| {
        let a = build(&r);
        let ring = ring_of(k);
        let p = a.precubical();
        prop_assert!(ChainComplexRep::of(p, ring).squares_to_zero());
        for n in 1..=p.dim().unwrap_or(0) {
            for x in p.cubes(n) {
                let lib = boundary(p, &Chain::cube(x, ring)).unwrap();
                let oracle = oracle_boundary(p, x, ring);
                prop_assert_eq!(&lib, &oracle);
                if n >= 2 {
                    let mut dd = Chain::zero(n - 2, ring);
                    for (y, s) in oracle.terms() {
                        dd = dd.add(&oracle_boundary(p, y, ring).scale(s)).unwrap();
                    }
                    prop_assert!(dd.is_zero(), "dd {} != 0", p.key(x));
                }
            }
        }
        Ok(())
    })
}

fn arb_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..=6, c), r))
}

fn bareiss(m: &IntMatrix) -> BigInt {
    let n = m.rows();
    let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut sign = BigInt::from(1);
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if a[k][k] == BigInt::from(0) {
            match (k + 1..n).find(|&i| a[i][k] != BigInt::from(0)) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::from(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// `D = U·M·V` with `U`, `V` unimodular and `d_1 | d_2 | …`.
pub fn snf_certificates(cases: u32) -> Result<u32, String> {
    run(cases, (arb_matrix(), 0..3usize), |(rows, k)| {
        let ring = ring_of(k);
        let m = IntMatrix::from_rows(&rows).normalized(ring);
        let s = smith_normal_form(&m, ring);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v).normalized(ring), s.d.normalized(ring));
        prop_assert!(s.d.is_diagonal());
        for u in [&s.u, &s.v] {
            let det = ring.normalize(bareiss(u));
            prop_assert!(ring.is_unit(&det), "determinant {}", det);
        }
        let f = s.invariant_factors();
        for w in f.windows(2) {
            prop_assert!(ring.divides(&w[0], &w[1]), "{} does not divide {}", w[0], w[1]);
        }
        let diag = s.d.diagonal();
        let nonzero = diag.iter().take_while(|x| **x != BigInt::from(0)).count();
        prop_assert!(diag[nonzero..].iter().all(|x| *x == BigInt::from(0)));
        Ok(())
    })
}

/// Columns of `d_2` as vectors over the edge positions.
fn d2_columns(p: &PrecubicalSet, ring: CoefficientRing) -> Vec<BTreeMap<usize, BigInt>> {
    p.cubes(2).map(|x| oracle_boundary(p, x, ring).vector().clone()).collect()
}

/// A loop of length `k` with `char R ∤ k` has a nonzero class: the loop
/// winds around a circle `m` times, or walks a staircase on a torus.
/// Returns (fixtures, loops checked).
pub fn loop_cycles(fixtures: u32) -> Result<(u32, u32), String> {
    let strategy = (arb_circle(4), proptest::option::of(arb_circle(3)), 1usize..4, prop::collection::vec(any::<bool>(), 0..12));
    let checked = std::cell::Cell::new(0u32);
    let r = run(fixtures, strategy, |(c1, c2, winding, steps)| {
        let al = alphabet();
        let mut fs = vec![c1.clone()];
        fs.extend(c2.clone());
        let a = product(&al, &fs);
        let p = a.precubical();
        let edges = loop_edges(&a, &fs, winding, &steps);
        let k = edges.len();
        prop_assert!(hdalab_core::Path::from_edges(p, edges.clone()).unwrap().is_loop(p));
        for ring in rings() {
            let c = ring.characteristic() as usize;
            if c != 0 && k.is_multiple_of(c) {
                continue;
            }
            let mut z = Chain::zero(1, ring);
            for &e in &edges {
                z.add_term(e, BigInt::from(1));
            }
            let cols = d2_columns(p, ring);
            prop_assert!(!solve(&cols, z.vector(), ring).is_member(), "loop of length {} bounds over {}", k, ring);
            let basis = homology_basis(p, 1, ring);
            prop_assert!(!basis.is_boundary(p, &z).unwrap());
            checked.set(checked.get() + 1);
        }
        Ok(())
    });
    r.map(|n| (n, checked.get()))
}

/// Edges of a loop from the origin: `winding` turns around the first circle
/// on a circle; on a torus a staircase that returns after whole turns.
fn loop_edges(a: &Hda, fs: &[Factor], winding: usize, steps: &[bool]) -> Vec<CubeId> {
    let p = a.precubical();
    let find = |v: CubeId, dir: usize| -> CubeId {
        p.cubes(1)
            .find(|&e| p.face(e, 0, 1).unwrap() == v && direction(a, fs, e) == dir)
            .expect("every vertex has an outgoing edge per direction")
    };
    let start = CubeId::new(0, 0);
    let mut v = start;
    let mut out = Vec::new();
    let lens: Vec<usize> = fs.iter().map(|f| f.labels.len()).collect();
    let mut plan: Vec<usize> = Vec::new();
    if lens.len() == 1 {
        plan.extend(std::iter::repeat_n(0, winding * lens[0]));
    } else {
        let (mut i, mut j) = (0, 0);
        for &s in steps {
            plan.push(if s { 1 } else { 0 });
            if s {
                j += 1
            } else {
                i += 1
            }
        }
        while i % lens[0] != 0 || i == 0 {
            plan.push(0);
            i += 1;
        }
        while j % lens[1] != 0 {
            plan.push(1);
            j += 1;
        }
    }
    for dir in plan {
        let e = find(v, dir);
        out.push(e);
        v = p.face(e, 1, 1).unwrap();
    }
    assert_eq!(v, start);
    out
}

/// Which factor an edge of a product moves along.
fn direction(a: &Hda, fs: &[Factor], e: CubeId) -> usize {
    if fs.len() == 1 {
        return 0;
    }
    match a.precubical().key(e) {
        hdalab_core::CubeKey::Pair(x, _) => usize::from(matches!(**x, hdalab_core::CubeKey::Name(ref s) if s.starts_with('v'))),
        _ => 0,
    }
}

fn gf2_rank(mut rows: Vec<Vec<u8>>) -> usize {
    let mut rank = 0;
    let cols = rows.first().map_or(0, Vec::len);
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] == 1) else { continue };
        rows.swap(rank, piv);
        for r in 0..rows.len() {
            if r != rank && rows[r][c] == 1 {
                let src = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(src) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `dim H_n` over `Z_2` by elimination on the face formula.
pub fn gf2_betti(p: &PrecubicalSet) -> Vec<usize> {
    let top = p.dim().unwrap_or(0);
    let ranks: Vec<usize> = (0..=top + 1)
        .map(|n| {
            if n == 0 || n > top {
                return 0;
            }
            let rows: Vec<Vec<u8>> = p
                .cubes(n)
                .map(|x| {
                    let mut row = vec![0u8; p.count(n - 1)];
                    for k in 0..2 {
                        for i in 1..=n {
                            row[p.face(x, k, i).unwrap().index] ^= 1;
                        }
                    }
                    row
                })
                .collect();
            gf2_rank(rows)
        })
        .collect();
    (0..=top).map(|n| p.count(n) - ranks[n] - ranks[n + 1]).collect()
}

/// `dim H_n(A ⊗ B) = Σ_{i+j=n} dim H_i(A) · dim H_j(B)` over `Z_2`.
pub fn kunneth_z2(pairs: u32) -> Result<u32, String> {
    let z2 = CoefficientRing::prime_field(2).unwrap();
    run(pairs, (arb_recipe(2, 3), arb_recipe(2, 3)), |(ra, rb)| {
        let (a, b) = (build(&ra), build(&rb));
        let t = tensor_hda(&a, &b).unwrap();
        let (ba, bb, bt) = (betti_numbers(a.precubical(), z2), betti_numbers(b.precubical(), z2), betti_numbers(t.hda.precubical(), z2));
        prop_assert_eq!(&ba, &gf2_betti(a.precubical()));
        prop_assert_eq!(&bb, &gf2_betti(b.precubical()));
        prop_assert_eq!(&bt, &gf2_betti(t.hda.precubical()));
        let mut expected = vec![0usize; ba.len() + bb.len() - 1];
        for (i, x) in ba.iter().enumerate() {
            for (j, y) in bb.iter().enumerate() {
                expected[i + j] += x * y;
            }
        }
        prop_assert_eq!(bt, expected);
        Ok(())
    })
}

/// Homology generators are cycles and labels agree over every ring.
pub fn generators_are_cycles(cases: u32) -> Result<u32, String> {
    run(cases, (arb_recipe(3, 2), 0..3usize), |(r, k)| {
        let a = build(&r);
        let ring = ring_of(k);
        let p = a.precubical();
        for g in homology(p, ring) {
            for z in g.generators() {
                if g.degree > 0 {
                    prop_assert!(boundary(p, z).unwrap().is_zero());
                }
            }
        }
        Ok(())
    })
}
