use crate::arith::Poly;
use crate::modcore::ModuleRep;
use crate::trunc::{Submodule, TruncatedIdeal};

use super::{Value, Verdict, Witness, WitnessKind};

/// The result of one exact comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub lhs: Value,
    pub rhs: Value,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub orders: Vec<u32>,
}

fn poly_element(f: &Poly) -> Vec<String> {
    vec![f.to_string()]
}

fn vector_element(v: &[Poly]) -> Vec<String> {
    v.iter().map(Poly::to_string).collect()
}

fn witness(kind: WitnessKind, element: Vec<String>, detail: &str) -> Option<Witness> {
    Some(Witness { kind, element, detail: detail.to_string() })
}

fn verdict(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

impl Outcome {
    /// `lhs = rhs` as ideals.
    pub fn ideals_equal(lhs: &TruncatedIdeal, rhs: &TruncatedIdeal) -> Self {
        let w = if let Some(f) = rhs.witness_not_containing(lhs) {
            witness(WitnessKind::LhsNotInRhs, poly_element(&f), "generator of the left side outside the right side")
        } else if let Some(f) = lhs.witness_not_containing(rhs) {
            witness(WitnessKind::RhsNotInLhs, poly_element(&f), "generator of the right side outside the left side")
        } else if lhs.colength() != rhs.colength() {
            // Mutual generator containment forces equal colengths; kept as a guard.
            witness(WitnessKind::ValueMismatch, Vec::new(), "colengths differ")
        } else {
            None
        };
        Outcome {
            lhs: Value::ideal(lhs),
            rhs: Value::ideal(rhs),
            verdict: verdict(w.is_none()),
            witness: w,
            orders: vec![lhs.order(), rhs.order()],
        }
    }

    /// `lhs ⊆ rhs` as ideals.
    pub fn ideal_contained(lhs: &TruncatedIdeal, rhs: &TruncatedIdeal) -> Self {
        let w = rhs
            .witness_not_containing(lhs)
            .and_then(|f| witness(WitnessKind::LhsNotInRhs, poly_element(&f), "generator of the left side outside the right side"));
        Outcome {
            lhs: Value::ideal(lhs),
            rhs: Value::ideal(rhs),
            verdict: verdict(w.is_none()),
            witness: w,
            orders: vec![lhs.order(), rhs.order()],
        }
    }

    pub fn modules_equal(lhs: &ModuleRep, rhs: &ModuleRep) -> Self {
        Self::submodules_equal(lhs.submodule(), rhs.submodule())
    }

    pub fn submodules_equal(lhs: &Submodule, rhs: &Submodule) -> Self {
        let w = if let Some(v) = rhs.witness_not_containing(lhs) {
            witness(WitnessKind::LhsNotInRhs, vector_element(&v), "generator of the left side outside the right side")
        } else if let Some(v) = lhs.witness_not_containing(rhs) {
            witness(WitnessKind::RhsNotInLhs, vector_element(&v), "generator of the right side outside the left side")
        } else if lhs.rank() != rhs.rank() || lhs.colength() != rhs.colength() {
            witness(WitnessKind::ValueMismatch, Vec::new(), "ranks or colengths differ")
        } else {
            None
        };
        Outcome {
            lhs: Value::module(lhs),
            rhs: Value::module(rhs),
            verdict: verdict(w.is_none()),
            witness: w,
            orders: vec![lhs.order(), rhs.order()],
        }
    }

    /// `lhs ⊆ rhs` as submodules of the same free module.
    pub fn module_contained(lhs: &ModuleRep, rhs: &ModuleRep) -> Self {
        let (l, r) = (lhs.submodule(), rhs.submodule());
        let w = r
            .witness_not_containing(l)
            .and_then(|v| witness(WitnessKind::LhsNotInRhs, vector_element(&v), "generator of the left side outside the right side"));
        Outcome {
            lhs: Value::module(l),
            rhs: Value::module(r),
            verdict: verdict(w.is_none()),
            witness: w,
            orders: vec![l.order(), r.order()],
        }
    }

    pub fn integers_equal(lhs: i64, rhs: i64) -> Self {
        let w = if lhs == rhs { None } else { witness(WitnessKind::ValueMismatch, Vec::new(), &format!("{lhs} != {rhs}")) };
        Outcome { lhs: Value::integer(lhs), rhs: Value::integer(rhs), verdict: verdict(w.is_none()), witness: w, orders: Vec::new() }
    }

    /// Passes when `element` lies in `lhs` but not in `rhs`, recording it as
    /// the witness of the expected non-containment.
    pub fn expected_non_containment(lhs: Value, rhs: &TruncatedIdeal, element: &Poly, in_lhs: bool) -> Self {
        let separated = in_lhs && !rhs.contains_poly(element);
        let kind = if separated { WitnessKind::ExpectedNonContainment } else { WitnessKind::ValueMismatch };
        let detail = if separated { "element of the left side outside the right side" } else { "expected non-containment not witnessed" };
        Outcome {
            lhs,
            rhs: Value::ideal(rhs),
            verdict: verdict(separated),
            witness: witness(kind, poly_element(element), detail),
            orders: vec![rhs.order()],
        }
    }
}
