//! Dimap fixtures between grids, circles and tori.

use std::collections::BTreeMap;
use std::sync::Arc;

use hdalab_core::chain::Chain;
use hdalab_core::dimap::{
    check_chain_map, check_homology_naturality, check_naturality, compose_dimaps, grid_dimap, pushforward_chain, validate_dimap, CubeMap,
    DimapChain, ElementaryDimapData,
};
use hdalab_core::hda::Hda;
use hdalab_core::models::directed_circle;
use hdalab_core::tensor::tensor_hda;
use hdalab_core::{Alphabet, CoefficientRing, Coord, CubeId, CubeKey, Grid, Word};
use proptest::prelude::*;

use super::{alphabet, runner, word, LETTERS};

/// The product of directed circles with the given edge labels, one circle per direction.
pub fn circles(al: &Arc<Alphabet>, labels: &[Vec<Word>]) -> Hda {
    let mut acc = directed_circle(al, labels[0].clone()).unwrap();
    for l in &labels[1..] {
        acc = tensor_hda(&acc, &directed_circle(al, l.clone()).unwrap()).unwrap().hda;
    }
    acc
}

fn circle_key(c: Coord, len: usize) -> CubeKey {
    match c {
        Coord::Vertex(t) => CubeKey::name(format!("v{}", t as usize % len)),
        Coord::Step(t) => CubeKey::name(format!("x{t}")),
    }
}

fn product_key(cs: &[Coord], lens: &[usize]) -> CubeKey {
    let mut k = circle_key(cs[0], lens[0]);
    for (c, &l) in cs[1..].iter().zip(&lens[1..]) {
        k = CubeKey::pair(k, circle_key(*c, l));
    }
    k
}

fn coords_of(key: &CubeKey, n: usize) -> Vec<Coord> {
    let mut out = Vec::new();
    let mut k = key;
    for _ in 1..n {
        let CubeKey::Pair(a, b) = k else { panic!("product key") };
        out.push(leaf(b));
        k = a;
    }
    out.push(leaf(k));
    out.reverse();
    out
}

fn leaf(k: &CubeKey) -> Coord {
    let CubeKey::Name(s) = k else { panic!("circle key") };
    let v: i64 = s[1..].parse().unwrap();
    if s.starts_with('v') {
        Coord::Vertex(v)
    } else {
        Coord::Step(v)
    }
}

/// Like [`grid_dimap`] with every direction closed up into a circle: the
/// coarse product of circles maps onto the fine one `circles(target_labels)`.
pub fn circle_dimap(al: &Arc<Alphabet>, target_labels: &[Vec<Word>], refine: &[usize], perm: &[usize]) -> ElementaryDimapData {
    let n = target_labels.len();
    let target = circles(al, target_labels);
    let mut source_labels = vec![Vec::new(); n];
    for (j, row) in target_labels.iter().enumerate() {
        let i = perm[j] - 1;
        source_labels[i] = row.chunks(refine[i]).map(|w| w.concat()).collect();
    }
    let source = circles(al, &source_labels);
    let lens: Vec<usize> = target_labels.iter().map(Vec::len).collect();
    let (pb, pa) = (source.precubical(), target.precubical());
    let find = |c: Vec<Coord>| pa.find(Grid::dim_of(&c), &product_key(&c, &lens)).expect("inside the fine product").index;
    let mut f0 = vec![0; pb.count(0)];
    let mut cubes = BTreeMap::new();
    for x in pb.all_cubes() {
        let c = coords_of(pb.key(x), n);
        let steps: Vec<usize> = (1..=n).filter(|&i| matches!(c[i - 1], Coord::Step(_))).collect();
        let js: Vec<usize> = (1..=n).filter(|&j| steps.contains(&perm[j - 1])).collect();
        let lift = |y: &[Coord]| -> Vec<Coord> {
            (1..=n)
                .map(|j| {
                    let i = perm[j - 1];
                    let r = refine[i - 1] as i64;
                    match c[i - 1] {
                        Coord::Vertex(v) => Coord::Vertex(v * r),
                        Coord::Step(s) => match y[js.iter().position(|&t| t == j).unwrap()] {
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
        let sigma = js.iter().map(|&j| 1 + steps.iter().position(|&i| i == perm[j - 1]).unwrap()).collect();
        let flat = Grid::new(shape.clone()).cubes().into_iter().map(|y| {
            let img = find(lift(&y));
            (y, img)
        });
        cubes.insert(x, CubeMap { shape, sigma, flat: flat.collect() });
    }
    ElementaryDimapData::new(source, target, f0, cubes).unwrap()
}

/// Random fine labels, refinements and a permutation for `n` directions.
#[derive(Clone, Debug)]
pub struct DimapRecipe {
    pub cyclic: bool,
    pub refine: Vec<usize>,
    pub perm: Vec<usize>,
    pub coarse_steps: Vec<usize>,
    pub letters: Vec<Vec<usize>>,
}

pub fn arb_dimap_recipe() -> impl Strategy<Value = DimapRecipe> {
    (any::<bool>(), 1usize..=2)
        .prop_flat_map(|(cyclic, n)| {
            (
                Just(cyclic),
                prop::collection::vec(1usize..=3, n),
                Just((1..=n).collect::<Vec<_>>()).prop_shuffle(),
                prop::collection::vec(1usize..=2, n),
                prop::collection::vec(prop::collection::vec(0..LETTERS.len(), 0..=1), 12),
            )
        })
        .prop_map(|(cyclic, refine, perm, coarse_steps, letters)| DimapRecipe { cyclic, refine, perm, coarse_steps, letters })
}

pub fn build_dimap(r: &DimapRecipe) -> ElementaryDimapData {
    let al = alphabet();
    let n = r.refine.len();
    let mut next = r.letters.iter().cycle();
    let labels: Vec<Vec<Word>> = (1..=n)
        .map(|j| {
            let i = r.perm[j - 1];
            let len = r.coarse_steps[i - 1] * r.refine[i - 1];
            (0..len).map(|_| word(&al, next.next().unwrap())).collect()
        })
        .collect();
    if r.cyclic {
        circle_dimap(&al, &labels, &r.refine, &r.perm)
    } else {
        grid_dimap(&al, &labels, &r.refine, &r.perm)
    }
}

/// All four laws on one dimap; `Err` names the first that fails.
pub fn laws(f: &ElementaryDimapData, ring: CoefficientRing) -> Result<(), String> {
    let v = validate_dimap(f);
    if !v.is_ok() {
        return Err(format!("invalid: {:?}", v.violations));
    }
    for (name, r) in [
        ("chain map", check_chain_map(f, ring)),
        ("naturality", check_naturality(f, ring)),
        ("homology naturality", check_homology_naturality(f, ring)),
    ] {
        if !r.passed() {
            return Err(format!("{name}: {:?}", r.failures));
        }
    }
    Ok(())
}

/// Random grid and circle dimaps satisfy every law.
pub fn random_dimaps(cases: u32) -> Result<u32, String> {
    runner(cases)
        .run(&(arb_dimap_recipe(), 0..3usize), |(r, k)| {
            let f = build_dimap(&r);
            laws(&f, super::rings()[k]).map_err(TestCaseError::fail)
        })
        .map(|_| cases)
        .map_err(|e| e.to_string())
}

pub fn w(al: &Alphabet, s: &str) -> Word {
    al.word(s.split(' ').filter(|s| !s.is_empty())).unwrap()
}

/// The named fixtures: identity, subdivision, transposition and composites.
pub fn fixtures() -> Vec<(&'static str, Result<(), String>)> {
    let al = Arc::new(Alphabet::new(["a", "b", "c"]).unwrap());
    let z = CoefficientRing::Integers;
    let torus = circles(&al, &[vec![w(&al, "a"), w(&al, "b")], vec![w(&al, "c")]]);
    let sub_circle = circle_dimap(&al, &[vec![w(&al, "a"), w(&al, "b"), w(&al, "c")]], &[3], &[1]);
    let sub_square = grid_dimap(&al, &[vec![w(&al, "a"), w(&al, "b")], vec![w(&al, "c"), w(&al, "a")]], &[2, 2], &[1, 2]);
    let transposed = grid_dimap(&al, &[vec![w(&al, "b")], vec![w(&al, "a")]], &[1, 1], &[2, 1]);
    let torus_swap = circle_dimap(&al, &[vec![w(&al, "c")], vec![w(&al, "a"), w(&al, "b")]], &[2, 1], &[2, 1]);
    let mut out = vec![
        ("identity on a torus", laws(&ElementaryDimapData::identity(&torus), z)),
        ("subdivided circle", laws(&sub_circle, z)),
        ("subdivided square", laws(&sub_square, z)),
        ("transposed square", laws(&transposed, z)),
        ("subdivided transposed torus", laws(&torus_swap, z)),
    ];
    let back = grid_dimap(&al, &[vec![w(&al, "a")], vec![w(&al, "b")]], &[1, 1], &[2, 1]);
    out.push(("two transpositions", composite_laws(vec![back, transposed.clone()], z, Some(1))));
    let outer = grid_dimap(&al, &[vec![w(&al, "a"), w(&al, "b"), w(&al, "c"), w(&al, "a")]], &[2], &[1]);
    let inner = grid_dimap(&al, &[vec![w(&al, "a b"), w(&al, "c a")]], &[2], &[1]);
    out.push(("two subdivisions", composite_laws(vec![inner, outer], z, None)));
    out
}

/// Composes and checks; `sign` pins the image of the top cube of a square.
pub fn composite_laws(stages: Vec<ElementaryDimapData>, ring: CoefficientRing, sign: Option<i64>) -> Result<(), String> {
    for f in &stages {
        laws(f, ring)?;
    }
    let chain = DimapChain::new(stages).map_err(|e| e.to_string())?;
    let g = compose_dimaps(&chain).map_err(|e| e.to_string())?;
    for (name, r) in [
        ("chain map", g.check_chain_map(ring)),
        ("naturality", g.check_naturality(ring)),
        ("homology naturality", g.check_homology_naturality(ring)),
    ] {
        if !r.passed() {
            return Err(format!("composite {name}: {:?}", r.failures));
        }
    }
    if let Some(s) = sign {
        let top = CubeId::new(2, 0);
        let img = g.pushforward(&Chain::cube(top, ring)).map_err(|e| e.to_string())?;
        if img != Chain::cube(top, ring).scale(&s.into()) {
            return Err(format!("composite sends the square to {:?}", img));
        }
    }
    Ok(())
}

/// `f_*` of the transposed square is minus the flattened square.
pub fn transposed_square_sign() -> Result<(), String> {
    let al = Arc::new(Alphabet::new(["a", "b"]).unwrap());
    let z = CoefficientRing::Integers;
    let f = grid_dimap(&al, &[vec![w(&al, "b")], vec![w(&al, "a")]], &[1, 1], &[2, 1]);
    let x = CubeId::new(2, 0);
    let img = pushforward_chain(&f, &Chain::cube(x, z)).map_err(|e| e.to_string())?;
    let m = f.cube(x).ok_or("no cube data")?;
    let flat_top = m.flat[&vec![Coord::Step(0), Coord::Step(0)]];
    let expected = Chain::cube(CubeId::new(2, flat_top), z).neg();
    if m.sign() == -1 && img == expected {
        Ok(())
    } else {
        Err(format!("sign {} image {:?}", m.sign(), img))
    }
}
