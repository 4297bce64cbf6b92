//! Depth-bounded checker for the hypotheses under which the star
//! modification of a minimal map stays minimal with exactly 2n+3 intervals:
//! Delta contains no discontinuity, its boundary avoids the orbits of all
//! discontinuities and their one-sided images, and the orbits of the two
//! endpoints are disjoint.
//!
//! Orbit membership is an equality question, so every check here is a
//! canonical-form comparison; no enclosure refinement is involved. The
//! orbit sets themselves are enumerated to the requested depth only, which
//! is what the verdict records.

use super::{InductionError, SubInterval};
use crate::iet::Iet;
use crate::numbers::SymbolicReal;

/// A concrete witness that a condition fails.
#[derive(Debug, Clone)]
pub struct Violation {
    /// Which boundary point or region is implicated.
    pub culprit: String,
    /// The orbit value it collided with (or contains).
    pub value: SymbolicReal,
    /// Orbit description, e.g. "orbit of breakpoint 2, step -3".
    pub source: String,
}

#[derive(Debug, Clone)]
pub enum ConditionStatus {
    Verified { depth: usize },
    Violated(Violation),
}

impl ConditionStatus {
    pub fn verified(&self) -> bool {
        matches!(self, ConditionStatus::Verified { .. })
    }
}

/// Report for the three hypotheses, each Verified-to-depth or Violated with
/// a witness. Inconclusiveness is impossible: within the enumerated depth
/// every comparison is decided exactly.
#[derive(Debug, Clone)]
pub struct MinBasicReport {
    /// Delta contains no discontinuity of T.
    pub interior_clear: ConditionStatus,
    /// The boundary of Delta avoids the orbits of every breakpoint and of
    /// its one-sided images.
    pub boundary_avoids_orbits: ConditionStatus,
    /// The orbits of d and f are disjoint.
    pub endpoint_orbits_disjoint: ConditionStatus,
    pub depth: usize,
}

impl MinBasicReport {
    pub fn all_verified(&self) -> bool {
        self.interior_clear.verified()
            && self.boundary_avoids_orbits.verified()
            && self.endpoint_orbits_disjoint.verified()
    }
}

/// Two-sided orbit of a value with step labels, stopping each direction at
/// the first undefined step.
fn labelled_orbit(iet: &Iet, x: &SymbolicReal, depth: usize) -> Vec<(i64, SymbolicReal)> {
    let mut out = Vec::with_capacity(2 * depth + 1);
    for (s, v) in iet.forward_orbit(x, depth).into_iter().enumerate() {
        out.push((s as i64, v));
    }
    for (s, v) in iet.backward_orbit(x, depth).into_iter().enumerate().skip(1) {
        out.push((-(s as i64), v));
    }
    out
}

pub fn check_minbasic_conditions(
    iet: &Iet,
    delta: &SubInterval,
    depth: usize,
) -> Result<MinBasicReport, InductionError> {
    let n = iet.n();

    // (i) no discontinuity of T inside the open interval
    let mut interior_clear = ConditionStatus::Verified { depth };
    for i in 1..n {
        let a = &iet.breakpoints()[i];
        if delta.contains(a)? {
            interior_clear = ConditionStatus::Violated(Violation {
                culprit: "Delta".into(),
                value: a.clone(),
                source: format!("breakpoint {i} lies inside Delta"),
            });
            break;
        }
    }

    // (ii) boundary avoids the orbit families of all breakpoints
    let d = delta.lower();
    let f = delta.upper();
    let mut boundary = ConditionStatus::Verified { depth };
    'outer: for i in 0..=n {
        let (plus, minus) = iet.one_sided_limits(i);
        let seeds = [
            (iet.breakpoints()[i].clone(), format!("breakpoint {i}")),
            (plus, format!("right limit at breakpoint {i}")),
            (minus, format!("left limit at breakpoint {i}")),
        ];
        for (seed, label) in seeds {
            for (step, v) in labelled_orbit(iet, &seed, depth) {
                for (end, name) in [(d, "d"), (f, "f")] {
                    if *end == v {
                        boundary = ConditionStatus::Violated(Violation {
                            culprit: name.into(),
                            value: v.clone(),
                            source: format!("{label}, step {step}"),
                        });
                        break 'outer;
                    }
                }
            }
        }
    }

    // (iii) orbits of d and f disjoint
    let orbit_d = labelled_orbit(iet, d, depth);
    let orbit_f = labelled_orbit(iet, f, depth);
    let mut disjoint = ConditionStatus::Verified { depth };
    'pairs: for (sd, vd) in &orbit_d {
        for (sf, vf) in &orbit_f {
            if vd == vf {
                disjoint = ConditionStatus::Violated(Violation {
                    culprit: "d and f".into(),
                    value: vd.clone(),
                    source: format!("orbit of d step {sd} meets orbit of f step {sf}"),
                });
                break 'pairs;
            }
        }
    }

    Ok(MinBasicReport {
        interior_clear,
        boundary_avoids_orbits: boundary,
        endpoint_orbits_disjoint: disjoint,
        depth,
    })
}
