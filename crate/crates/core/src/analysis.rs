//! Obstructions from labels of homology classes: parts that cannot be
//! independent in a system, and implementations that cannot realize a
//! specification.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{AlgebraError, AnalysisError};
use crate::exterior::{Alphabet, ExteriorElement};
use crate::hda::{labeled_homology, Hda, LabeledHomologyReport};
use crate::lattice::{lattice_membership, positive_leading, Membership};
use crate::ring::CoefficientRing;

/// `ObstructionFound` is a proof; `NoObstruction` decides nothing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    ObstructionFound,
    NoObstruction,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::ObstructionFound => "obstruction-found",
            Verdict::NoObstruction => "no-obstruction",
        }
    }
}

/// The `index`-th generator of `H_degree`, in the order free then torsion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassSelector {
    pub degree: usize,
    pub index: usize,
}

/// Whether one element of `Λ^n(Σ)` is the label of a class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelTest {
    pub degree: usize,
    pub target: ExteriorElement,
    /// The labels of the generators of `H_degree`, which span the label image.
    pub generator_labels: Vec<ExteriorElement>,
    /// A witness combination of the generators, or a certificate of non-membership.
    pub membership: Membership<crate::exterior::Blade>,
    pub reason: Option<String>,
}

impl LabelTest {
    pub fn verdict(&self) -> Verdict {
        if self.membership.is_member() {
            Verdict::NoObstruction
        } else {
            Verdict::ObstructionFound
        }
    }
}

/// Tests `target ∈ ℓ(H_degree)` against an already computed report.
pub fn test_label(
    report: &LabeledHomologyReport,
    alphabet: &Arc<Alphabet>,
    degree: usize,
    target: &ExteriorElement,
) -> Result<LabelTest, AlgebraError> {
    let (generator_labels, reason) = match report.degree(degree) {
        Some(d) => (d.labels.clone(), None),
        None => (Vec::new(), Some(format!("the automaton tested against has no cells in degree {degree}"))),
    };
    let target = target.relabel(alphabet)?;
    let membership = lattice_membership(&generator_labels, &target)?;
    Ok(LabelTest { degree, target, generator_labels, membership, reason })
}

/// The label `ℓ_B(β)` of a selected class of `part` and its degree.
pub fn class_label(part: &Hda, selector: ClassSelector, ring: CoefficientRing, which: usize) -> Result<ExteriorElement, AnalysisError> {
    let report = labeled_homology(part, ring);
    report.degree(selector.degree).and_then(|d| d.labels.get(selector.index)).cloned().ok_or(AnalysisError::NoSuchClass {
        part: which,
        degree: selector.degree,
        index: selector.index,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependenceReport {
    pub ring: CoefficientRing,
    pub part_labels: Vec<ExteriorElement>,
    /// `ℓ_{B_1}(β_1) ∧ ⋯ ∧ ℓ_{B_n}(β_n)`.
    pub wedge: ExteriorElement,
    pub test: LabelTest,
}

impl IndependenceReport {
    pub fn verdict(&self) -> Verdict {
        self.test.verdict()
    }
}

/// The wedge of the part labels, over `main`'s alphabet.
pub fn wedge_of_parts(
    alphabet: &Arc<Alphabet>,
    parts: &[(Hda, ClassSelector)],
    ring: CoefficientRing,
) -> Result<(Vec<ExteriorElement>, ExteriorElement, usize), AnalysisError> {
    let mut labels = Vec::with_capacity(parts.len());
    let mut wedge = ExteriorElement::one(alphabet, ring);
    let mut degree = 0;
    for (j, (part, sel)) in parts.iter().enumerate() {
        if !part.same_letters(alphabet) {
            return Err(AlgebraError::AlphabetMismatch.into());
        }
        let part = part.relabel(alphabet)?;
        let l = class_label(&part, *sel, ring, j)?;
        wedge = wedge.wedge(&l)?;
        degree += sel.degree;
        labels.push(l);
    }
    Ok((labels, wedge, degree))
}

/// If the parts were independent in `main`, some class of `main` would carry
/// the wedge of their labels. A failed membership proves they are not.
pub fn independence_with(
    main: &Hda,
    report: &LabeledHomologyReport,
    parts: &[(Hda, ClassSelector)],
) -> Result<IndependenceReport, AnalysisError> {
    let (part_labels, wedge, degree) = wedge_of_parts(main.alphabet(), parts, report.ring)?;
    let test = test_label(report, main.alphabet(), degree, &wedge)?;
    Ok(IndependenceReport { ring: report.ring, part_labels, wedge, test })
}

pub fn independence(main: &Hda, parts: &[(Hda, ClassSelector)], ring: CoefficientRing) -> Result<IndependenceReport, AnalysisError> {
    independence_with(main, &labeled_homology(main, ring), parts)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImplementsReport {
    pub ring: CoefficientRing,
    /// One test per nonzero generator label of the implementation.
    pub tests: Vec<LabelTest>,
}

impl ImplementsReport {
    pub fn verdict(&self) -> Verdict {
        if self.tests.iter().all(|t| t.membership.is_member()) {
            Verdict::NoObstruction
        } else {
            Verdict::ObstructionFound
        }
    }

    /// The first label of the implementation that the specification lacks.
    pub fn witness(&self) -> Option<&LabelTest> {
        self.tests.iter().find(|t| !t.membership.is_member())
    }
}

/// Every label of a class of an implementation must be the label of a class
/// of the specification in the same degree; a label that is not proves the
/// implementation does not implement the specification.
pub fn implements(imp: &Hda, spec: &Hda, ring: CoefficientRing) -> Result<ImplementsReport, AnalysisError> {
    if !imp.same_letters(spec.alphabet()) {
        return Err(AlgebraError::AlphabetMismatch.into());
    }
    let imp = imp.relabel(spec.alphabet())?;
    let spec_report = labeled_homology(spec, ring);
    let mut tests = Vec::new();
    for d in labeled_homology(&imp, ring).degrees {
        for l in d.labels.iter().filter(|l| !l.is_zero()) {
            tests.push(test_label(&spec_report, spec.alphabet(), d.group.degree, &positive_leading(l))?);
        }
    }
    Ok(ImplementsReport { ring, tests })
}
