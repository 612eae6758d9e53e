//! JSON file formats for automata, dimaps and programs.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fs;
use std::path::{Path as FsPath, PathBuf};
use std::sync::Arc;

use hdalab_core::dimap::{CubeMap, ElementaryDimapData};
use hdalab_core::error::AlgebraError;
use hdalab_core::hda::{validate_hda, Hda};
use hdalab_core::models::program::{Action, Guard, Process, SharedVariableProgram, Variable};
use hdalab_core::precubical::PrecubicalBuilder;
use hdalab_core::{Alphabet, Coord, CubeId, CubeKey, Grid, ValidationReport, Violation};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr::{parse_expr, parse_guard, ExprError};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: line {line}, column {column}: {message}")]
    Parse { path: String, line: usize, column: usize, message: String },
    #[error("{0}")]
    Expr(#[from] ExprError),
    #[error("{0}")]
    Algebra(#[from] AlgebraError),
    #[error("{0}")]
    Reference(String),
    #[error("{} violation(s)", .0.violations.len())]
    Invalid(ValidationReport),
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &FsPath) -> Result<T, FormatError> {
    let text = fs::read_to_string(path).map_err(|source| FormatError::Io { path: path.display().to_string(), source })?;
    from_json_str(&text, &path.display().to_string())
}

pub fn from_json_str<T: for<'de> Deserialize<'de>>(text: &str, name: &str) -> Result<T, FormatError> {
    serde_json::from_str(text).map_err(|e| FormatError::Parse {
        path: name.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

/// Pretty JSON with object keys sorted.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("serializable");
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubeRecord {
    pub id: String,
    pub dim: usize,
    #[serde(default)]
    pub d0: Vec<String>,
    #[serde(default)]
    pub d1: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HdaFile {
    pub alphabet: Vec<String>,
    pub cubes: Vec<CubeRecord>,
    pub initial: Vec<String>,
    #[serde(rename = "final")]
    pub final_states: Vec<String>,
}

/// File ids of every cube, indexed by dimension and position. Keys that
/// render alike in different dimensions get a `#dim` suffix.
pub fn cube_ids(a: &Hda) -> Vec<Vec<String>> {
    let p = a.precubical();
    let dims = p.dim().map_or(0, |d| d + 1);
    let rendered: Vec<Vec<String>> = (0..dims).map(|n| p.cubes(n).map(|x| p.key(x).to_string()).collect()).collect();
    let mut seen: HashMap<&str, usize> = HashMap::new();
    for s in rendered.iter().flatten() {
        *seen.entry(s).or_default() += 1;
    }
    rendered
        .iter()
        .enumerate()
        .map(|(n, row)| row.iter().map(|s| if seen[s.as_str()] > 1 { format!("{s}#{n}") } else { s.clone() }).collect())
        .collect()
}

impl HdaFile {
    pub fn from_hda(a: &Hda) -> HdaFile {
        let p = a.precubical();
        let ids = cube_ids(a);
        let al = a.alphabet();
        let mut cubes = Vec::new();
        for x in p.all_cubes() {
            let face_ids = |k: u8| (1..=x.dim).map(|i| ids[x.dim - 1][p.face(x, k, i).expect("in range").index].clone()).collect();
            cubes.push(CubeRecord {
                id: ids[x.dim][x.index].clone(),
                dim: x.dim,
                d0: face_ids(0),
                d1: face_ids(1),
                label: (x.dim == 1).then(|| a.label(x).iter().map(|&l| al.name(l).to_string()).collect()),
            });
        }
        let states = |vs: Vec<CubeId>| vs.into_iter().map(|v| ids[0][v.index].clone()).collect();
        HdaFile {
            alphabet: al.letters().to_vec(),
            cubes,
            initial: states(a.initial().collect()),
            final_states: states(a.final_states().collect()),
        }
    }

    /// Builds the automaton. Structural problems (dangling faces, missing
    /// labels, unknown letters or states) and violations of the automaton
    /// laws are returned as [`FormatError::Invalid`].
    pub fn to_hda(&self) -> Result<Hda, FormatError> {
        let hda = self.to_hda_unchecked()?;
        let report = validate_hda(&hda);
        if report.is_ok() {
            Ok(hda)
        } else {
            Err(FormatError::Invalid(report))
        }
    }

    /// Like [`HdaFile::to_hda`] without checking the automaton laws.
    pub fn to_hda_unchecked(&self) -> Result<Hda, FormatError> {
        let alphabet = Arc::new(Alphabet::new(self.alphabet.iter().cloned())?);
        let mut builder = PrecubicalBuilder::new();
        let names = |v: &[String]| v.iter().map(|s| CubeKey::Name(s.clone())).collect::<Vec<_>>();
        for c in &self.cubes {
            builder.cube(CubeKey::Name(c.id.clone()), c.dim, names(&c.d0), names(&c.d1));
        }
        let p = builder.build().map_err(FormatError::Invalid)?;
        let mut report = ValidationReport::ok();
        let records: HashMap<(usize, &str), &CubeRecord> = self.cubes.iter().map(|c| ((c.dim, c.id.as_str()), c)).collect();
        let mut labels = Vec::with_capacity(p.count(1));
        for e in p.cubes(1) {
            let CubeKey::Name(id) = p.key(e) else { unreachable!("file keys are names") };
            let mut word = Vec::new();
            match &records[&(1, id.as_str())].label {
                None => report.push(Violation::MissingLabel { edge: id.clone() }),
                Some(letters) => {
                    for l in letters {
                        match alphabet.letter(l) {
                            Ok(l) => word.push(l),
                            Err(_) => report.push(Violation::UnknownLetter { letter: l.clone() }),
                        }
                    }
                }
            }
            labels.push(word);
        }
        let mut states = |ids: &[String]| -> BTreeSet<usize> {
            let mut out = BTreeSet::new();
            for id in ids {
                match p.find(0, &CubeKey::Name(id.clone())) {
                    Some(v) => {
                        out.insert(v.index);
                    }
                    None => report.push(Violation::UnknownState { state: id.clone() }),
                }
            }
            out
        };
        let initial = states(&self.initial);
        let final_states = states(&self.final_states);
        if !report.is_ok() {
            return Err(FormatError::Invalid(report));
        }
        Ok(Hda::new(p, alphabet, labels, initial, final_states).expect("labels and states checked"))
    }
}

pub fn load_hda(path: &FsPath) -> Result<Hda, FormatError> {
    read_json::<HdaFile>(path)?.to_hda()
}

/// Finds a cube by file id.
pub fn find_cube(ids: &[Vec<String>], dim: usize, id: &str) -> Option<CubeId> {
    ids.get(dim)?.iter().position(|s| s == id).map(|index| CubeId::new(dim, index))
}

/// Looks a cube up by file id in any dimension.
pub fn find_any_cube(ids: &[Vec<String>], id: &str) -> Option<CubeId> {
    (0..ids.len()).find_map(|d| find_cube(ids, d, id))
}

/// Renders grid coordinates as `(0,[0,1])`.
pub fn render_coords(c: &[Coord]) -> String {
    CubeKey::Grid(c.to_vec()).to_string()
}

/// Parses `(0,[0,1],2)`.
pub fn parse_coords(s: &str) -> Option<Vec<Coord>> {
    let inner = s.trim().strip_prefix('(')?.strip_suffix(')')?;
    let mut out = Vec::new();
    let mut rest = inner.trim();
    while !rest.is_empty() {
        if let Some(r) = rest.strip_prefix('[') {
            let close = r.find(']')?;
            let (a, b) = r[..close].split_once(',')?;
            let (a, b): (i64, i64) = (a.trim().parse().ok()?, b.trim().parse().ok()?);
            if b != a + 1 {
                return None;
            }
            out.push(Coord::Step(a));
            rest = r[close + 1..].trim_start();
        } else {
            let end = rest.find(',').unwrap_or(rest.len());
            out.push(Coord::Vertex(rest[..end].trim().parse().ok()?));
            rest = &rest[end..];
        }
        if let Some(r) = rest.strip_prefix(',') {
            rest = r.trim_start();
            if rest.is_empty() {
                return None;
            }
        } else if !rest.is_empty() {
            return None;
        }
    }
    Some(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimapCubeRecord {
    pub id: String,
    pub shape: Vec<usize>,
    pub sigma: Vec<usize>,
    pub flat: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimapFile {
    /// Paths relative to the dimap file.
    pub source: String,
    pub target: String,
    pub f0: BTreeMap<String, String>,
    pub cubes: Vec<DimapCubeRecord>,
}

impl DimapFile {
    pub fn from_dimap(f: &ElementaryDimapData, source: &str, target: &str) -> DimapFile {
        let (sid, tid) = (cube_ids(f.source()), cube_ids(f.target()));
        let f0 = f.f0().iter().enumerate().map(|(v, &w)| (sid[0][v].clone(), tid[0][w].clone())).collect();
        let cubes = f
            .cubes()
            .iter()
            .map(|(x, m)| DimapCubeRecord {
                id: sid[x.dim][x.index].clone(),
                shape: m.shape.clone(),
                sigma: m.sigma.clone(),
                flat: m.flat.iter().map(|(c, &y)| (render_coords(c), tid[Grid::dim_of(c)][y].clone())).collect(),
            })
            .collect();
        DimapFile { source: source.into(), target: target.into(), f0, cubes }
    }

    /// Resolves ids against already loaded automata. Flattening entries
    /// naming unknown target cubes are dropped, which validation reports.
    pub fn to_dimap(&self, source: &Hda, target: &Hda) -> Result<ElementaryDimapData, FormatError> {
        let (sid, tid) = (cube_ids(source), cube_ids(target));
        let mut f0 = vec![usize::MAX; source.precubical().count(0)];
        for (v, w) in &self.f0 {
            let v = find_cube(&sid, 0, v).ok_or_else(|| FormatError::Reference(format!("f0: unknown source vertex {v:?}")))?;
            if let Some(w) = find_cube(&tid, 0, w) {
                f0[v.index] = w.index;
            }
        }
        let mut cubes = BTreeMap::new();
        for r in &self.cubes {
            let x = find_any_cube(&sid, &r.id)
                .filter(|x| x.dim > 0)
                .ok_or_else(|| FormatError::Reference(format!("unknown source cube {:?}", r.id)))?;
            let mut flat = BTreeMap::new();
            for (c, y) in &r.flat {
                let coords =
                    parse_coords(c).ok_or_else(|| FormatError::Reference(format!("cube {:?}: bad grid coordinates {c:?}", r.id)))?;
                if let Some(y) = find_cube(&tid, Grid::dim_of(&coords), y) {
                    flat.insert(coords, y.index);
                }
            }
            cubes.insert(x, CubeMap { shape: r.shape.clone(), sigma: r.sigma.clone(), flat });
        }
        ElementaryDimapData::new(source.clone(), target.clone(), f0, cubes).map_err(|e| FormatError::Reference(e.to_string()))
    }
}

pub fn base_dir(path: &FsPath) -> PathBuf {
    path.parent().map(FsPath::to_path_buf).unwrap_or_default()
}

/// Loads a dimap file together with the automata it refers to.
pub fn load_dimap(path: &FsPath) -> Result<ElementaryDimapData, FormatError> {
    let file: DimapFile = read_json(path)?;
    let dir = base_dir(path);
    let source = load_hda(&dir.join(&file.source))?;
    let target = load_hda(&dir.join(&file.target))?;
    file.to_dimap(&source, &target)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InitialValues {
    One(i64),
    Many(Vec<i64>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariableRecord {
    pub name: String,
    pub min: i64,
    pub max: i64,
    pub initial: InitialValues,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionRecord {
    pub name: String,
    pub from: String,
    pub to: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub guard: Option<String>,
    /// Variable to expression; all assignments happen at once.
    #[serde(default)]
    pub effect: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProcessRecord {
    pub name: String,
    pub states: Vec<String>,
    pub initial: String,
    pub actions: Vec<ActionRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProgramFile {
    #[serde(default)]
    pub variables: Vec<VariableRecord>,
    pub processes: Vec<ProcessRecord>,
}

impl ProgramFile {
    pub fn from_program(p: &SharedVariableProgram) -> ProgramFile {
        let variables = p
            .variables
            .iter()
            .map(|v| VariableRecord {
                name: v.name.clone(),
                min: v.min,
                max: v.max,
                initial: match v.initial.as_slice() {
                    [x] => InitialValues::One(*x),
                    xs => InitialValues::Many(xs.to_vec()),
                },
            })
            .collect();
        let processes = p
            .processes
            .iter()
            .map(|q| ProcessRecord {
                name: q.name.clone(),
                states: q.states.clone(),
                initial: q.initial.clone(),
                actions: q
                    .actions
                    .iter()
                    .map(|a| ActionRecord {
                        name: a.name.clone(),
                        from: a.from.clone(),
                        to: a.to.clone(),
                        guard: (a.guard != Guard::True).then(|| a.guard.to_string()),
                        effect: a.effect.iter().map(|(v, e)| (v.clone(), e.to_string())).collect(),
                    })
                    .collect(),
            })
            .collect();
        ProgramFile { variables, processes }
    }

    pub fn to_program(&self) -> Result<SharedVariableProgram, FormatError> {
        let variables = self
            .variables
            .iter()
            .map(|v| Variable {
                name: v.name.clone(),
                min: v.min,
                max: v.max,
                initial: match &v.initial {
                    InitialValues::One(x) => vec![*x],
                    InitialValues::Many(xs) => xs.clone(),
                },
            })
            .collect();
        let mut processes = Vec::new();
        for q in &self.processes {
            let mut actions = Vec::new();
            for a in &q.actions {
                let mut act = Action::new(&a.name, &a.from, &a.to);
                if let Some(g) = &a.guard {
                    act = act.guarded(parse_guard(g)?);
                }
                for (var, e) in &a.effect {
                    act = act.assign(var, parse_expr(e)?);
                }
                actions.push(act);
            }
            processes.push(Process { name: q.name.clone(), states: q.states.clone(), initial: q.initial.clone(), actions });
        }
        Ok(SharedVariableProgram { variables, processes })
    }
}
