//! Rendering of validation, homology and analysis results as JSON values
//! and as text.

use std::fmt::Write as _;

use hdalab_core::analysis::{ImplementsReport, IndependenceReport, LabelTest};
use hdalab_core::chain::Chain;
use hdalab_core::hda::{Hda, LabeledHomologyReport};
use hdalab_core::homology::HomologyGroup;
use hdalab_core::lattice::{positive_leading, Membership};
use hdalab_core::validation::PropertyReport;
use hdalab_core::{ExteriorElement, ValidationReport};
use serde_json::{json, Map, Value};

use crate::format::cube_ids;

pub fn chain_json(ids: &[Vec<String>], c: &Chain) -> Value {
    let mut m = Map::new();
    for (x, k) in c.terms() {
        m.insert(ids[x.dim][x.index].clone(), json!(k.to_string()));
    }
    Value::Object(m)
}

pub fn render_chain(ids: &[Vec<String>], c: &Chain) -> String {
    if c.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (j, (x, k)) in c.terms().enumerate() {
        let id = &ids[x.dim][x.index];
        let neg = k.sign() == num_bigint::Sign::Minus;
        let mag = if neg { -k.clone() } else { k.clone() };
        if j == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if mag != 1.into() {
            let _ = write!(s, "{mag}·");
        }
        s.push_str(id);
    }
    s
}

pub fn validation_json(r: &ValidationReport) -> Value {
    json!({
        "ok": r.is_ok(),
        "violations": r.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
    })
}

pub fn validation_text(r: &ValidationReport) -> String {
    if r.is_ok() {
        return "ok\n".into();
    }
    let mut s = format!("{} violation(s)\n", r.violations.len());
    for v in &r.violations {
        let _ = writeln!(s, "  {v}");
    }
    s
}

fn group_json(ids: &[Vec<String>], g: &HomologyGroup) -> Value {
    json!({
        "degree": g.degree,
        "rank": g.rank,
        "torsion": g.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
        "generators": g.generators().map(|c| chain_json(ids, c)).collect::<Vec<_>>(),
    })
}

fn group_summary(g: &HomologyGroup) -> String {
    let ring = g.ring.to_string();
    let ring = if ring == "z" { "Z".to_string() } else { format!("Z{}", g.ring.characteristic()) };
    let mut parts: Vec<String> = Vec::new();
    if g.rank > 0 {
        parts.push(if g.rank == 1 { ring.clone() } else { format!("{ring}^{}", g.rank) });
    }
    parts.extend(g.torsion.iter().map(|t| format!("Z/{t}")));
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

pub fn homology_json(a: &Hda, groups: &[HomologyGroup]) -> Value {
    let ids = cube_ids(a);
    json!({
        "ring": groups.first().map(|g| g.ring.to_string()),
        "betti": groups.iter().map(|g| g.rank).collect::<Vec<_>>(),
        "degrees": groups.iter().map(|g| group_json(&ids, g)).collect::<Vec<_>>(),
    })
}

pub fn homology_text(a: &Hda, groups: &[HomologyGroup]) -> String {
    let ids = cube_ids(a);
    let mut s = String::new();
    let betti: Vec<String> = groups.iter().map(|g| g.rank.to_string()).collect();
    let _ = writeln!(s, "betti ({})", betti.join(", "));
    for g in groups {
        let _ = writeln!(s, "H_{} = {}", g.degree, group_summary(g));
        for c in g.generators() {
            let _ = writeln!(s, "  [{}]", render_chain(&ids, c));
        }
    }
    s
}

fn elements(v: &[ExteriorElement]) -> Vec<String> {
    v.iter().map(ExteriorElement::render).collect()
}

pub fn labels_json(a: &Hda, r: &LabeledHomologyReport) -> Value {
    let ids = cube_ids(a);
    json!({
        "ring": r.ring.to_string(),
        "degrees": r.degrees.iter().map(|d| {
            let mut g = group_json(&ids, &d.group);
            g["labels"] = json!(elements(&d.labels));
            g["image"] = json!({
                "rank": d.image.rank,
                "invariant_factors": d.image.invariant_factors.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
                "basis": elements(&d.image.basis),
            });
            g
        }).collect::<Vec<_>>(),
    })
}

pub fn labels_text(a: &Hda, r: &LabeledHomologyReport) -> String {
    let ids = cube_ids(a);
    let mut s = String::new();
    for d in &r.degrees {
        let _ = writeln!(s, "H_{} = {}", d.group.degree, group_summary(&d.group));
        for (c, l) in d.group.generators().zip(&d.labels) {
            let _ = writeln!(s, "  l[{}] = {}", render_chain(&ids, c), l.render());
        }
        let basis = elements(&d.image.basis);
        let _ = writeln!(s, "  image rank {} basis {{{}}}", d.image.rank, basis.join("; "));
    }
    s
}

fn membership_json(t: &LabelTest) -> Value {
    match &t.membership {
        Membership::Member { witness } => json!({
            "member": true,
            "coefficients": witness.iter().map(|k| k.to_string()).collect::<Vec<_>>(),
        }),
        Membership::NotMember { certificate } => {
            let al = t.target.alphabet();
            let ring = t.target.ring();
            json!({
                "member": false,
                "certificate": {
                    "functional": certificate.functional.iter().map(|(b, k)| {
                        let blade = ExteriorElement::monomial(al, ring, b.clone(), 1.into()).render();
                        json!([blade, k.to_string()])
                    }).collect::<Vec<_>>(),
                    "modulus": certificate.modulus.to_string(),
                },
            })
        }
    }
}

fn label_test_json(t: &LabelTest) -> Value {
    json!({
        "degree": t.degree,
        "label": t.target.render(),
        "generator_labels": elements(&t.generator_labels),
        "membership": membership_json(t),
        "reason": t.reason,
    })
}

fn label_test_text(t: &LabelTest, s: &mut String) {
    let _ = writeln!(s, "  degree {}: {}", t.degree, t.target.render());
    match &t.membership {
        Membership::Member { witness } => {
            let w: Vec<String> = witness.iter().map(|k| k.to_string()).collect();
            let _ = writeln!(s, "    realized with generator coefficients ({})", w.join(", "));
        }
        Membership::NotMember { certificate } => {
            let _ = writeln!(
                s,
                "    not realized; certificate with {} functional terms, modulus {}",
                certificate.functional.len(),
                certificate.modulus
            );
        }
    }
    if let Some(r) = &t.reason {
        let _ = writeln!(s, "    {r}");
    }
}

pub fn independence_json(r: &IndependenceReport) -> Value {
    json!({
        "verdict": r.verdict().as_str(),
        "ring": r.ring.to_string(),
        "part_labels": elements(&r.part_labels),
        "wedge": positive_leading(&r.wedge).render(),
        "test": label_test_json(&r.test),
    })
}

pub fn independence_text(r: &IndependenceReport) -> String {
    let mut s = format!("{}\n", r.verdict().as_str());
    let _ = writeln!(s, "  part labels: {}", elements(&r.part_labels).join("; "));
    label_test_text(&r.test, &mut s);
    s
}

pub fn implements_json(r: &ImplementsReport) -> Value {
    json!({
        "verdict": r.verdict().as_str(),
        "ring": r.ring.to_string(),
        "witness": r.witness().map(label_test_json),
        "tests": r.tests.iter().map(label_test_json).collect::<Vec<_>>(),
    })
}

pub fn implements_text(r: &ImplementsReport) -> String {
    let mut s = format!("{}\n", r.verdict().as_str());
    for t in &r.tests {
        label_test_text(t, &mut s);
    }
    s
}

pub fn property_json(r: &PropertyReport) -> Value {
    json!({ "checked": r.checked, "failures": r.failures })
}

pub fn property_text(name: &str, r: &PropertyReport) -> String {
    let mut s = format!("{name}: {} checked, {} failure(s)\n", r.checked, r.failures.len());
    for f in &r.failures {
        let _ = writeln!(s, "  {f}");
    }
    s
}
