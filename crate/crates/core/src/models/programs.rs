//! Built-in programs: Peterson's mutual exclusion, the dining philosophers,
//! and the counter-based lock.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::ModelError;
use crate::exterior::Alphabet;
use crate::hda::Hda;
use crate::models::examples::directed_circle;
use crate::models::program::{action_label, Action, CmpOp, Expr, Guard, Process, SharedVariableProgram, Variable};

fn strings(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| String::from(*s)).collect()
}

fn flag(name: String) -> Variable {
    Variable { name, min: 0, max: 1, initial: vec![0] }
}

/// Two processes with flags `b0`, `b1` and turn variable `t`. Process `i`
/// sets `b_i := 1`, then `t := 1 - i`, enters the critical section once
/// `b_(1-i) = 0` or `t = i`, and leaves with `b_i := 0`. Both values of
/// `t` are initial.
pub fn peterson() -> SharedVariableProgram {
    let process = |i: usize| {
        let me = format!("b{i}");
        let other = format!("b{}", 1 - i);
        Process {
            name: format!("P{i}"),
            states: strings(&["idle", "flagged", "waiting", "critical"]),
            initial: "idle".into(),
            actions: vec![
                Action::new(&format!("{me}:=1"), "idle", "flagged").assign(&me, Expr::Const(1)),
                Action::new(&format!("t:={}", 1 - i), "flagged", "waiting").assign("t", Expr::Const(1 - i as i64)),
                Action::new("crit", "waiting", "critical").guarded(Guard::Or(vec![Guard::eq(&other, 0), Guard::eq("t", i as i64)])),
                Action::new(&format!("{me}:=0"), "critical", "idle").assign(&me, Expr::Const(0)),
            ],
        }
    };
    SharedVariableProgram {
        variables: vec![flag("b0".into()), flag("b1".into()), Variable { name: "t".into(), min: 0, max: 1, initial: vec![0, 1] }],
        processes: vec![process(0), process(1)],
    }
}

/// The six steps of a philosopher, in order.
pub const PHILOSOPHER_STEPS: [&str; 6] = ["think", "pick_l", "pick_r", "eat", "put_l", "put_r"];

/// `n` philosophers around a table; stick `i` lies to the left of
/// philosopher `i` and stick `i+1 mod n` to the right. All sticks start free.
pub fn dining_philosophers(n: usize) -> Result<SharedVariableProgram, ModelError> {
    if n < 2 {
        return Err(ModelError::TooFewPhilosophers(n));
    }
    let stick = |j: usize| format!("s{}", j % n);
    let free = |j: usize| Guard::Cmp(Expr::Var(stick(j)), CmpOp::Eq, Expr::Const(0));
    let states = strings(&["start", "thought", "holds_left", "holds_both", "ate", "holds_right"]);
    let processes = (0..n)
        .map(|i| {
            let (l, r) = (stick(i), stick(i + 1));
            Process {
                name: format!("phil{i}"),
                states: states.clone(),
                initial: "start".into(),
                actions: vec![
                    Action::new("think", "start", "thought"),
                    Action::new("pick_l", "thought", "holds_left").guarded(free(i)).assign(&l, Expr::Const(1)),
                    Action::new("pick_r", "holds_left", "holds_both").guarded(free(i + 1)).assign(&r, Expr::Const(1)),
                    Action::new("eat", "holds_both", "ate"),
                    Action::new("put_l", "ate", "holds_right").assign(&l, Expr::Const(0)),
                    Action::new("put_r", "holds_right", "start").assign(&r, Expr::Const(0)),
                ],
            }
        })
        .collect();
    Ok(SharedVariableProgram { variables: (0..n).map(|j| flag(stick(j))).collect(), processes })
}

/// The subsystem of philosopher `i` alone: a directed circle through its six
/// steps, over the alphabet of the whole table.
pub fn philosopher_part(n: usize, i: usize) -> Result<Hda, ModelError> {
    let alphabet = Arc::new(dining_philosophers(n)?.alphabet()?);
    let labels = PHILOSOPHER_STEPS.iter().map(|s| alphabet.word([action_label(s, i % n)])).collect::<Result<Vec<_>, _>>()?;
    directed_circle(&alphabet, labels)
}

/// The alphabet of [`dining_philosophers`].
pub fn philosophers_alphabet(n: usize) -> Result<Alphabet, ModelError> {
    Ok(dining_philosophers(n)?.alphabet()?)
}

/// Two processes looping `x++; x--` on a shared counter `x` that starts at 0.
pub fn lock_counter() -> SharedVariableProgram {
    let x = || Expr::var("x");
    let process = |i: usize| Process {
        name: format!("P{i}"),
        states: strings(&["out", "in"]),
        initial: "out".into(),
        actions: vec![
            Action::new("x++", "out", "in").assign("x", Expr::Add(x().into(), Expr::Const(1).into())),
            Action::new("x--", "in", "out").assign("x", Expr::Sub(x().into(), Expr::Const(1).into())),
        ],
    };
    SharedVariableProgram {
        variables: vec![Variable { name: "x".into(), min: 0, max: 2, initial: vec![0] }],
        processes: vec![process(0), process(1)],
    }
}
