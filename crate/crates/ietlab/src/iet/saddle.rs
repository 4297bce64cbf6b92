//! Exact enumeration of saddle connections.
//!
//! A saddle connection is a finite forward orbit segment from a one-sided
//! image of a discontinuity back to a discontinuity, with no breakpoint in
//! between. Connections hitting the interval ends with at most two points
//! are the trivial ones every IET has.

use super::{Eval, Iet, IetError, Location, Verdict};
use crate::numbers::SymbolicReal;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Side {
    Plus,
    Minus,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::Plus => write!(f, "+"),
            Side::Minus => write!(f, "-"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SaddleConnection {
    /// Starting breakpoint index (0-based).
    pub start: usize,
    pub side: Side,
    /// The itinerary T(a^side), T^2(a^side), ..., ending at a breakpoint.
    pub points: Vec<SymbolicReal>,
    /// Breakpoint index reached by the last point.
    pub end: usize,
    pub trivial: bool,
}

impl SaddleConnection {
    pub fn length(&self) -> usize {
        self.points.len()
    }
}

/// Result of an exhaustive depth-bounded scan. Absence of nontrivial
/// connections is a certificate at the recorded depth, never a minimality
/// proof on its own.
#[derive(Debug, Clone)]
pub struct SaddleSearch {
    pub connections: Vec<SaddleConnection>,
    pub depth: usize,
    /// True when every start was iterated to the full depth bound, so
    /// "none found" is meaningful at this depth.
    pub complete_to_depth: bool,
}

impl SaddleSearch {
    pub fn nontrivial(&self) -> impl Iterator<Item = &SaddleConnection> {
        self.connections.iter().filter(|c| !c.trivial)
    }

    pub fn has_nontrivial(&self) -> bool {
        self.nontrivial().next().is_some()
    }
}

impl Iet {
    /// Enumerates every saddle connection of itinerary length <= depth by
    /// exact forward iteration of each one-sided limit. Results are ordered
    /// by (start, side, length).
    pub fn saddle_connections(&self, depth: usize) -> Result<SaddleSearch, IetError> {
        assert!(depth >= 1, "saddle search needs depth >= 1");
        let n = self.n();
        let mut connections = Vec::new();
        for start in 0..=n {
            let sides: &[Side] = if start == 0 || start == n {
                &[Side::Plus]
            } else {
                &[Side::Plus, Side::Minus]
            };
            for &side in sides {
                let (plus, minus) = self.one_sided_limits(start);
                let mut x = match side {
                    Side::Plus => plus,
                    Side::Minus => minus,
                };
                let mut points = Vec::new();
                'orbit: for _ in 1..=depth {
                    points.push(x.clone());
                    match self.locate(&x)? {
                        Location::Breakpoint(end) => {
                            let trivial =
                                (end == 0 || end == n) && cardinality(self, start, &points)? <= 2;
                            connections.push(SaddleConnection {
                                start,
                                side,
                                points: points.clone(),
                                end,
                                trivial,
                            });
                            break 'orbit;
                        }
                        Location::Interior(_) => match self.evaluate(&x)? {
                            Eval::Value(v) => x = v,
                            Eval::Undefined { .. } => unreachable!("interior point"),
                        },
                    }
                }
            }
        }
        connections.sort_by_key(|c| (c.start, c.side, c.points.len()));
        Ok(SaddleSearch {
            connections,
            depth,
            complete_to_depth: true,
        })
    }
}

/// Cardinality of the set {a_start} ∪ points, with exact deduplication.
fn cardinality(iet: &Iet, start: usize, points: &[SymbolicReal]) -> Result<usize, IetError> {
    let mut distinct: Vec<&SymbolicReal> = vec![&iet.breakpoints()[start]];
    for p in points {
        let mut fresh = true;
        for d in &distinct {
            if matches!(p.cmp_exact(d)?, Verdict::Equal) {
                fresh = false;
                break;
            }
        }
        if fresh {
            distinct.push(p);
        }
    }
    Ok(distinct.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iet::{rational_lengths, SignedPermutation};
    use crate::numbers::{SymbolTable, SymbolicReal};
    use crate::rat::rat;

    #[test]
    fn rational_square_exchange_has_nontrivial_connection() {
        // lambda = (1/4, 1/4, 1/4, 1/4), pi = (4, 3, 2, 1): breakpoint
        // orbits collide on the rational lattice
        let t = SymbolTable::new(true);
        let lengths = rational_lengths(&t, &[rat(1, 4), rat(1, 4), rat(1, 4), rat(1, 4)]);
        let iet = Iet::new(lengths, SignedPermutation::new(vec![4, 3, 2, 1]).unwrap()).unwrap();
        let scan = iet.saddle_connections(8).unwrap();
        assert!(scan.has_nontrivial());
    }

    #[test]
    fn golden_rotation_has_only_trivial_connections() {
        let t = SymbolTable::new(true);
        let s5 = t.register_sqrt("s5", 5).unwrap();
        let g = SymbolicReal::affine(&t, rat(-1, 2), &[(s5, rat(1, 2))]);
        let one_minus_g = SymbolicReal::rational(&t, rat(1, 1)).sub(&g);
        let iet = Iet::new(
            vec![g, one_minus_g],
            SignedPermutation::new(vec![2, 1]).unwrap(),
        )
        .unwrap();
        let scan = iet.saddle_connections(50).unwrap();
        assert!(!scan.has_nontrivial());
        assert!(scan.complete_to_depth);
        // the boundary connections exist
        assert!(!scan.connections.is_empty());
        for c in &scan.connections {
            assert!(c.end == 0 || c.end == iet.n());
        }
    }

    #[test]
    fn single_flipped_interval_only_trivial() {
        let t = SymbolTable::new(true);
        let lengths = rational_lengths(&t, &[rat(1, 1)]);
        let iet = Iet::new(lengths, SignedPermutation::new(vec![-1]).unwrap()).unwrap();
        let scan = iet.saddle_connections(5).unwrap();
        assert!(!scan.has_nontrivial());
        for c in &scan.connections {
            assert!(c.trivial);
        }
    }
}
