//! Obstructions to `F1 ≻ F0` (F1 obtained from F0 by ribbon-type surgery
//! plus unknotted summands).
//!
//! Every verdict is one-directional: `Obstructed` proves that `F1 ≻ F0`
//! fails, while `NotObstructed` proves nothing.

use serde::Serialize;

use crate::algebra::{QuandleAction, SymmetricQuandle};
use crate::coloring::{colorings, is_monochromatic_fixed_point};
use crate::diagram::ChDiagram;
use crate::invariant::{first_excess, Coefficient, InvariantError, WeightMultiset};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Coloring,
    Cocycle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ObstructionVerdict {
    Obstructed,
    NotObstructed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    Coloring {
        upper_count: u64,
        lower_count: u64,
        /// Every coloring of the upper diagram is a monochromatic fixed point.
        upper_only_trivial: bool,
        lower_only_trivial: bool,
    },
    Cocycle {
        /// A value occurring more often in the upper multiset.
        excess_value: Option<Coefficient>,
        upper_multiplicity: usize,
        lower_multiplicity: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub relation: String,
    pub method: Method,
    pub verdict: ObstructionVerdict,
    pub evidence: Evidence,
    pub note: String,
}

impl ObstructionReport {
    pub fn is_obstructed(&self) -> bool {
        self.verdict == ObstructionVerdict::Obstructed
    }
}

const NO_CONCLUSION: &str = "no obstruction found; this says nothing about whether the relation holds";

fn relation(upper: &str, lower: &str) -> String {
    format!("{upper} ≻ {lower}")
}

fn label(d: &ChDiagram, fallback: &str) -> String {
    d.name().unwrap_or(fallback).to_string()
}

/// Colorability obstruction: `F1 ≻ F0` forces `F0` to be colorable
/// whenever `F1` is.
pub fn coloring_obstruction(
    d1: &ChDiagram,
    d0: &ChDiagram,
    sq: &SymmetricQuandle,
    action: Option<&QuandleAction>,
) -> ObstructionReport {
    let c1 = colorings(d1, sq, action);
    let c0 = colorings(d0, sq, action);
    let only_trivial = |cs: &[crate::coloring::Coloring]| {
        !cs.is_empty() && cs.iter().all(|c| is_monochromatic_fixed_point(c, sq))
    };
    let evidence = Evidence::Coloring {
        upper_count: c1.len() as u64,
        lower_count: c0.len() as u64,
        upper_only_trivial: only_trivial(&c1),
        lower_only_trivial: only_trivial(&c0),
    };
    let obstructed = !c1.is_empty() && c0.is_empty();
    let note = if obstructed {
        format!(
            "upper diagram has {} colorings and lower has none, so the upper surface-link is not obtained from the lower one",
            c1.len()
        )
    } else if c1.is_empty() {
        format!("upper diagram is not colorable; {NO_CONCLUSION}")
    } else {
        NO_CONCLUSION.to_string()
    };
    ObstructionReport {
        relation: relation(&label(d1, "F1"), &label(d0, "F0")),
        method: Method::Coloring,
        verdict: if obstructed { ObstructionVerdict::Obstructed } else { ObstructionVerdict::NotObstructed },
        evidence,
        note,
    }
}

/// Weight-multiset obstruction: `F1 ≻ F0` forces `Φ(F1) ⊂ Φ(F0)` with
/// multiplicity.
pub fn cocycle_obstruction(phi1: &WeightMultiset, phi0: &WeightMultiset) -> Result<ObstructionReport, InvariantError> {
    let excess = first_excess(phi1, phi0)?;
    let (verdict, evidence, note) = match excess {
        Some((v, k1, k0)) => (
            ObstructionVerdict::Obstructed,
            Evidence::Cocycle { excess_value: Some(v), upper_multiplicity: k1, lower_multiplicity: k0 },
            format!("value {v} occurs {k1} times in the upper multiset but {k0} times in the lower one"),
        ),
        None => (
            ObstructionVerdict::NotObstructed,
            Evidence::Cocycle { excess_value: None, upper_multiplicity: 0, lower_multiplicity: 0 },
            NO_CONCLUSION.to_string(),
        ),
    };
    Ok(ObstructionReport { relation: relation("F1", "F0"), method: Method::Cocycle, verdict, evidence, note })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KinoshitaAdvisory {
    pub fixed_points: Vec<usize>,
    pub fixed_point_free: bool,
    pub note: String,
}

/// Reports whether ρ has fixed points. When it has none, any surface-link
/// with a non-orientable component admits no coloring at all.
pub fn kinoshita_check(sq: &SymmetricQuandle) -> KinoshitaAdvisory {
    let fixed_points = sq.involution().fixed_points();
    let fixed_point_free = fixed_points.is_empty();
    let note = if fixed_point_free {
        "ρ has no fixed points: a diagram with a non-orientable component (for example a projective plane) has no colorings".into()
    } else {
        format!("ρ fixes {fixed_points:?}; monochromatic colorings by these elements always exist")
    };
    KinoshitaAdvisory { fixed_points, fixed_point_free, note }
}
