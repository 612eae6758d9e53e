//! Shared-variable programs and their compilation into cube-filled HDAs.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::ProgramError;
use crate::exterior::{Alphabet, Letter};
use crate::hda::Hda;
use crate::precubical::{CubeKey, PrecubicalSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Const(i64),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    /// Floor modulo; the divisor must be nonzero.
    Mod(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn var(name: &str) -> Expr {
        Expr::Var(name.into())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CmpOp {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Guard {
    True,
    Cmp(Expr, CmpOp, Expr),
    Not(Box<Guard>),
    And(Vec<Guard>),
    Or(Vec<Guard>),
}

impl Guard {
    /// `var == value`.
    pub fn eq(var: &str, value: i64) -> Guard {
        Guard::Cmp(Expr::var(var), CmpOp::Eq, Expr::Const(value))
    }
}

/// A variable with domain `min..=max` and a set of initial values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub min: i64,
    pub max: i64,
    pub initial: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Action {
    pub name: String,
    pub from: String,
    pub to: String,
    pub guard: Guard,
    /// Parallel assignment.
    pub effect: Vec<(String, Expr)>,
}

impl Action {
    pub fn new(name: &str, from: &str, to: &str) -> Self {
        Action { name: name.into(), from: from.into(), to: to.into(), guard: Guard::True, effect: Vec::new() }
    }

    pub fn guarded(mut self, guard: Guard) -> Self {
        self.guard = guard;
        self
    }

    pub fn assign(mut self, var: &str, value: Expr) -> Self {
        self.effect.push((var.into(), value));
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Process {
    pub name: String,
    pub states: Vec<String>,
    pub initial: String,
    pub actions: Vec<Action>,
}

/// Processes running in parallel over shared variables. The initial global
/// states are all combinations of initial local states and initial values;
/// they are also the final states of the compiled automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SharedVariableProgram {
    pub variables: Vec<Variable>,
    pub processes: Vec<Process>,
}

/// Local states and valuation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GlobalState {
    pub locals: Vec<usize>,
    pub values: Vec<i64>,
}

#[derive(Clone, Debug)]
enum CExpr {
    Const(i64),
    Var(usize),
    Neg(Box<CExpr>),
    Add(Box<CExpr>, Box<CExpr>),
    Sub(Box<CExpr>, Box<CExpr>),
    Mul(Box<CExpr>, Box<CExpr>),
    Mod(Box<CExpr>, Box<CExpr>),
}

#[derive(Clone, Debug)]
enum CGuard {
    True,
    Cmp(CExpr, CmpOp, CExpr),
    Not(Box<CGuard>),
    And(Vec<CGuard>),
    Or(Vec<CGuard>),
}

#[derive(Clone, Debug)]
struct CAction {
    from: usize,
    to: usize,
    guard: CGuard,
    effect: Vec<(usize, CExpr)>,
    letter: Letter,
}

fn overflow() -> ProgramError {
    ProgramError::Invalid("arithmetic overflow while evaluating an expression".into())
}

impl CExpr {
    fn eval(&self, v: &[i64]) -> Result<i64, ProgramError> {
        Ok(match self {
            CExpr::Const(c) => *c,
            CExpr::Var(i) => v[*i],
            CExpr::Neg(a) => a.eval(v)?.checked_neg().ok_or_else(overflow)?,
            CExpr::Add(a, b) => a.eval(v)?.checked_add(b.eval(v)?).ok_or_else(overflow)?,
            CExpr::Sub(a, b) => a.eval(v)?.checked_sub(b.eval(v)?).ok_or_else(overflow)?,
            CExpr::Mul(a, b) => a.eval(v)?.checked_mul(b.eval(v)?).ok_or_else(overflow)?,
            CExpr::Mod(a, b) => {
                let d = b.eval(v)?;
                if d == 0 {
                    return Err(ProgramError::Invalid("modulo by zero".into()));
                }
                a.eval(v)?.rem_euclid(d)
            }
        })
    }
}

impl CGuard {
    fn eval(&self, v: &[i64]) -> Result<bool, ProgramError> {
        Ok(match self {
            CGuard::True => true,
            CGuard::Cmp(a, op, b) => {
                let (a, b) = (a.eval(v)?, b.eval(v)?);
                match op {
                    CmpOp::Eq => a == b,
                    CmpOp::Ne => a != b,
                    CmpOp::Lt => a < b,
                    CmpOp::Le => a <= b,
                    CmpOp::Gt => a > b,
                    CmpOp::Ge => a >= b,
                }
            }
            CGuard::Not(g) => !g.eval(v)?,
            CGuard::And(gs) => {
                for g in gs {
                    if !g.eval(v)? {
                        return Ok(false);
                    }
                }
                true
            }
            CGuard::Or(gs) => {
                for g in gs {
                    if g.eval(v)? {
                        return Ok(true);
                    }
                }
                false
            }
        })
    }
}

/// A program with names resolved to indices.
#[derive(Clone, Debug)]
pub struct CompiledProgram {
    program: SharedVariableProgram,
    alphabet: Arc<Alphabet>,
    vars: BTreeMap<String, usize>,
    actions: Vec<Vec<CAction>>,
}

/// The label letter of action `action` of process `pid`.
pub fn action_label(action: &str, pid: usize) -> String {
    format!("{action}_{pid}")
}

impl SharedVariableProgram {
    /// Alphabet of indexed action names: process by process, actions in
    /// declaration order.
    pub fn alphabet(&self) -> Result<Alphabet, ProgramError> {
        let names = self.processes.iter().enumerate().flat_map(|(pid, p)| p.actions.iter().map(move |a| action_label(&a.name, pid)));
        Ok(Alphabet::new(names)?)
    }

    pub fn compile(&self) -> Result<CompiledProgram, ProgramError> {
        let mut vars = BTreeMap::new();
        for (i, v) in self.variables.iter().enumerate() {
            if vars.insert(v.name.clone(), i).is_some() {
                return Err(ProgramError::DuplicateVariable(v.name.clone()));
            }
            if v.min > v.max || v.initial.is_empty() {
                return Err(ProgramError::EmptyDomain(v.name.clone()));
            }
            if let Some(&x) = v.initial.iter().find(|&&x| x < v.min || x > v.max) {
                return Err(ProgramError::OutOfDomain { variable: v.name.clone(), value: x });
            }
        }
        if self.processes.is_empty() {
            return Err(ProgramError::Invalid("a program needs at least one process".into()));
        }
        for p in &self.processes {
            let mut seen = BTreeSet::new();
            if let Some(a) = p.actions.iter().find(|a| !seen.insert(a.name.as_str())) {
                return Err(ProgramError::DuplicateAction { process: p.name.clone(), action: a.name.clone() });
            }
        }
        let alphabet = Arc::new(self.alphabet()?);
        let mut actions = Vec::new();
        for (pid, p) in self.processes.iter().enumerate() {
            let state_index = |s: &str| p.states.iter().position(|t| t == s);
            if state_index(&p.initial).is_none() {
                return Err(ProgramError::UnknownLocalState { process: p.name.clone(), state: p.initial.clone() });
            }
            let mut compiled = Vec::new();
            for a in &p.actions {
                let resolve =
                    |s: &str| state_index(s).ok_or_else(|| ProgramError::UnknownLocalState { process: p.name.clone(), state: s.into() });
                let mut effect = Vec::new();
                let mut assigned = BTreeSet::new();
                for (var, e) in &a.effect {
                    let i = *vars.get(var).ok_or_else(|| ProgramError::UnknownVariable(var.clone()))?;
                    if !assigned.insert(i) {
                        return Err(ProgramError::Invalid(format!("process {}: action {:?} assigns {var:?} twice", p.name, a.name)));
                    }
                    effect.push((i, compile_expr(e, &vars)?));
                }
                compiled.push(CAction {
                    from: resolve(&a.from)?,
                    to: resolve(&a.to)?,
                    guard: compile_guard(&a.guard, &vars)?,
                    effect,
                    letter: alphabet.letter(&action_label(&a.name, pid))?,
                });
            }
            actions.push(compiled);
        }
        Ok(CompiledProgram { program: self.clone(), alphabet, vars, actions })
    }
}

fn compile_expr(e: &Expr, vars: &BTreeMap<String, usize>) -> Result<CExpr, ProgramError> {
    let b = |x: &Expr| compile_expr(x, vars).map(Box::new);
    Ok(match e {
        Expr::Const(c) => CExpr::Const(*c),
        Expr::Var(v) => CExpr::Var(*vars.get(v).ok_or_else(|| ProgramError::UnknownVariable(v.clone()))?),
        Expr::Neg(a) => CExpr::Neg(b(a)?),
        Expr::Add(x, y) => CExpr::Add(b(x)?, b(y)?),
        Expr::Sub(x, y) => CExpr::Sub(b(x)?, b(y)?),
        Expr::Mul(x, y) => CExpr::Mul(b(x)?, b(y)?),
        Expr::Mod(x, y) => CExpr::Mod(b(x)?, b(y)?),
    })
}

fn compile_guard(g: &Guard, vars: &BTreeMap<String, usize>) -> Result<CGuard, ProgramError> {
    Ok(match g {
        Guard::True => CGuard::True,
        Guard::Cmp(a, op, b) => CGuard::Cmp(compile_expr(a, vars)?, *op, compile_expr(b, vars)?),
        Guard::Not(x) => CGuard::Not(Box::new(compile_guard(x, vars)?)),
        Guard::And(xs) => CGuard::And(xs.iter().map(|x| compile_guard(x, vars)).collect::<Result<_, _>>()?),
        Guard::Or(xs) => CGuard::Or(xs.iter().map(|x| compile_guard(x, vars)).collect::<Result<_, _>>()?),
    })
}

/// An action of one process, `(pid, action index)`.
pub type Step = (usize, usize);

/// A candidate cube: a state and actions of pairwise distinct processes,
/// sorted by process id.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CubeSpec {
    pub state: usize,
    pub steps: Vec<Step>,
}

/// The reachable transition system of a program.
#[derive(Clone, Debug)]
pub struct StateSpace {
    pub states: Vec<GlobalState>,
    pub initial: Vec<usize>,
    /// Enabled steps and their targets, per state, sorted by step.
    pub transitions: Vec<BTreeMap<Step, usize>>,
}

impl CompiledProgram {
    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn program(&self) -> &SharedVariableProgram {
        &self.program
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.vars.get(name).copied()
    }

    fn initial_states(&self) -> Vec<GlobalState> {
        let locals: Vec<usize> = self
            .program
            .processes
            .iter()
            .map(|p| p.states.iter().position(|s| *s == p.initial).expect("checked at compile time"))
            .collect();
        let mut valuations: Vec<Vec<i64>> = vec![Vec::new()];
        for v in &self.program.variables {
            let mut next = Vec::new();
            for prefix in &valuations {
                for &x in &v.initial {
                    let mut w = prefix.clone();
                    w.push(x);
                    next.push(w);
                }
            }
            valuations = next;
        }
        let mut out: Vec<GlobalState> = valuations.into_iter().map(|values| GlobalState { locals: locals.clone(), values }).collect();
        out.sort();
        out.dedup();
        out
    }

    fn successor(&self, s: &GlobalState, (pid, a): Step) -> Result<Option<GlobalState>, ProgramError> {
        let act = &self.actions[pid][a];
        if s.locals[pid] != act.from || !act.guard.eval(&s.values)? {
            return Ok(None);
        }
        let mut t = s.clone();
        t.locals[pid] = act.to;
        for (i, e) in &act.effect {
            let x = e.eval(&s.values)?;
            let var = &self.program.variables[*i];
            if x < var.min || x > var.max {
                return Err(ProgramError::OutOfDomain { variable: var.name.clone(), value: x });
            }
            t.values[*i] = x;
        }
        Ok(Some(t))
    }

    /// Breadth-first exploration from the initial states.
    pub fn explore(&self) -> Result<StateSpace, ProgramError> {
        let init = self.initial_states();
        let mut seen: BTreeSet<GlobalState> = init.iter().cloned().collect();
        let mut queue: alloc::collections::VecDeque<GlobalState> = init.iter().cloned().collect();
        let mut edges: BTreeMap<GlobalState, BTreeMap<Step, GlobalState>> = BTreeMap::new();
        while let Some(s) = queue.pop_front() {
            let mut out = BTreeMap::new();
            for (pid, acts) in self.actions.iter().enumerate() {
                for a in 0..acts.len() {
                    if let Some(t) = self.successor(&s, (pid, a))? {
                        if seen.insert(t.clone()) {
                            queue.push_back(t.clone());
                        }
                        out.insert((pid, a), t);
                    }
                }
            }
            edges.insert(s, out);
        }
        let states: Vec<GlobalState> = seen.into_iter().collect();
        let index: BTreeMap<&GlobalState, usize> = states.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let transitions = states.iter().map(|s| edges[s].iter().map(|(&st, t)| (st, index[t])).collect()).collect();
        let initial = init.iter().map(|s| index[s]).collect();
        Ok(StateSpace { states, initial, transitions })
    }

    pub fn render_state(&self, s: &GlobalState) -> String {
        let mut out = String::new();
        for (pid, &l) in s.locals.iter().enumerate() {
            if pid > 0 {
                out.push(',');
            }
            out.push_str(&self.program.processes[pid].states[l]);
        }
        out.push('|');
        for (i, v) in self.program.variables.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&format!("{}={}", v.name, s.values[i]));
        }
        out
    }

    fn step_name(&self, (pid, a): Step) -> &str {
        self.alphabet.name(self.actions[pid][a].letter)
    }
}

impl StateSpace {
    /// Runs `steps` from `state`, `None` if some step is disabled.
    fn run(&self, state: usize, steps: impl IntoIterator<Item = Step>) -> Option<usize> {
        let mut s = state;
        for st in steps {
            s = *self.transitions[s].get(&st)?;
        }
        Some(s)
    }

    /// The state reached by each subset of the steps (bit `i` of the index
    /// set when step `i` ran), or `None` unless every execution order of
    /// every subset leads to one common state.
    fn subset_states(&self, spec: &CubeSpec) -> Option<Vec<usize>> {
        let n = spec.steps.len();
        let mut reached = vec![usize::MAX; 1 << n];
        reached[0] = spec.state;
        for mask in 1usize..1 << n {
            let mut common = None;
            for i in (0..n).filter(|i| mask & (1 << i) != 0) {
                let before = reached[mask & !(1 << i)];
                let after = self.run(before, [spec.steps[i]])?;
                match common {
                    None => common = Some(after),
                    Some(c) if c != after => return None,
                    _ => {}
                }
            }
            reached[mask] = common.expect("nonempty subset");
        }
        Some(reached)
    }
}

/// Cubes per dimension of the compiled model, filled dimension by dimension.
/// `reorder` may permute the candidates of each dimension before they are
/// examined; the result does not depend on it.
pub fn fill_cubes(space: &StateSpace, reorder: &mut dyn FnMut(&mut Vec<CubeSpec>)) -> Vec<BTreeSet<CubeSpec>> {
    let mut levels: Vec<BTreeSet<CubeSpec>> = Vec::new();
    levels.push((0..space.states.len()).map(|state| CubeSpec { state, steps: Vec::new() }).collect());
    levels.push(
        space.transitions.iter().enumerate().flat_map(|(state, t)| t.keys().map(move |&st| CubeSpec { state, steps: vec![st] })).collect(),
    );
    let nproc = space.states.first().map_or(0, |s| s.locals.len());
    for n in 2..=nproc {
        let mut candidates = Vec::new();
        for (state, t) in space.transitions.iter().enumerate() {
            let steps: Vec<Step> = t.keys().copied().collect();
            choose_distinct(&steps, n, &mut Vec::new(), 0, &mut |chosen| {
                candidates.push(CubeSpec { state, steps: chosen.to_vec() });
            });
        }
        reorder(&mut candidates);
        let below = &levels[n - 1];
        let mut level = BTreeSet::new();
        for c in candidates {
            let Some(reached) = space.subset_states(&c) else {
                continue;
            };
            let faces_exist = (0..n).all(|i| {
                let mut rest = c.steps.clone();
                rest.remove(i);
                let lower = CubeSpec { state: c.state, steps: rest.clone() };
                let upper = CubeSpec { state: reached[1 << i], steps: rest };
                below.contains(&lower) && below.contains(&upper)
            });
            if faces_exist {
                level.insert(c);
            }
        }
        if level.is_empty() {
            break;
        }
        levels.push(level);
    }
    levels
}

/// Calls `f` on every choice of `n` steps from pairwise distinct processes,
/// in lexicographic order; `steps` is sorted.
fn choose_distinct(steps: &[Step], n: usize, chosen: &mut Vec<Step>, from: usize, f: &mut dyn FnMut(&[Step])) {
    if chosen.len() == n {
        f(chosen);
        return;
    }
    for k in from..steps.len() {
        if chosen.last().is_some_and(|last| last.0 >= steps[k].0) {
            continue;
        }
        chosen.push(steps[k]);
        choose_distinct(steps, n, chosen, k + 1, f);
        chosen.pop();
    }
}

/// Reachable, cube-filled HDA of a program. Face `d^k_i` of a cube drops
/// its `i`-th step (steps ordered by process id), executed first when `k = 1`.
pub fn program_to_hda(prog: &SharedVariableProgram) -> Result<Hda, ProgramError> {
    program_to_hda_with(prog, &mut |_| {})
}

pub fn program_to_hda_with(prog: &SharedVariableProgram, reorder: &mut dyn FnMut(&mut Vec<CubeSpec>)) -> Result<Hda, ProgramError> {
    let compiled = prog.compile()?;
    let space = compiled.explore()?;
    let levels = fill_cubes(&space, reorder);
    Ok(assemble(&compiled, &space, &levels))
}

fn assemble(compiled: &CompiledProgram, space: &StateSpace, levels: &[BTreeSet<CubeSpec>]) -> Hda {
    let mut p = PrecubicalSet::new();
    let mut positions: Vec<BTreeMap<&CubeSpec, usize>> = Vec::new();
    let state_names: Vec<String> = space.states.iter().map(|s| compiled.render_state(s)).collect();
    for (n, level) in levels.iter().enumerate() {
        let mut pos = BTreeMap::new();
        for c in level {
            let mut faces = Vec::with_capacity(2 * n);
            if n > 0 {
                for k in 0..2 {
                    for i in 0..n {
                        let mut rest = c.steps.clone();
                        let removed = rest.remove(i);
                        let state = if k == 0 { c.state } else { space.transitions[c.state][&removed] };
                        let face = CubeSpec { state, steps: rest };
                        faces.push(positions[n - 1][&face]);
                    }
                }
            }
            let key = if n == 0 {
                CubeKey::Name(state_names[c.state].clone())
            } else {
                let acts: Vec<&str> = c.steps.iter().map(|&st| compiled.step_name(st)).collect();
                CubeKey::Name(format!("{}@{}", state_names[c.state], acts.join("+")))
            };
            let id = p.push(n, key, &faces).expect("cube keys are distinct");
            pos.insert(c, id.index);
        }
        positions.push(pos);
    }
    let labels = levels
        .get(1)
        .map(|edges| edges.iter().map(|c| vec![compiled.actions[c.steps[0].0][c.steps[0].1].letter]).collect())
        .unwrap_or_default();
    let init: BTreeSet<usize> = space.initial.iter().copied().collect();
    Hda::new(p, compiled.alphabet.clone(), labels, init.clone(), init).expect("labels cover all edges")
}

impl fmt::Display for CmpOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CmpOp::Eq => "==",
            CmpOp::Ne => "!=",
            CmpOp::Lt => "<",
            CmpOp::Le => "<=",
            CmpOp::Gt => ">",
            CmpOp::Ge => ">=",
        })
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) if *c < 0 => write!(f, "({c})"),
            Expr::Const(c) => write!(f, "{c}"),
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Neg(a) => write!(f, "-({a})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Mod(a, b) => write!(f, "({a} % {b})"),
        }
    }
}

impl fmt::Display for Guard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |f: &mut fmt::Formatter<'_>, gs: &[Guard], op: &str| -> fmt::Result {
            write!(f, "(")?;
            for (i, g) in gs.iter().enumerate() {
                if i > 0 {
                    write!(f, " {op} ")?;
                }
                write!(f, "{g}")?;
            }
            write!(f, ")")
        };
        match self {
            Guard::True => write!(f, "true"),
            Guard::Cmp(a, op, b) => write!(f, "{a} {op} {b}"),
            Guard::Not(g) => write!(f, "!({g})"),
            Guard::And(gs) if gs.is_empty() => write!(f, "true"),
            Guard::Or(gs) if gs.is_empty() => write!(f, "false"),
            Guard::And(gs) => join(f, gs, "&&"),
            Guard::Or(gs) => join(f, gs, "||"),
        }
    }
}
