//! Collapse of a proper IET to a circle exchange.
//!
//! Identifying the two ends of the interval can create one false
//! discontinuity, exactly when the permutation shows one of the two
//! patterns (with pi(n+1) := pi(1)): pi(i) = n, pi(i+1) = 1 for an
//! orientation-preserving gluing, or pi(i) = -1, pi(i+1) = -n for a flipped
//! one. The collapsed map exchanges n' in {n-1, n} arcs.

use super::{Eval, Iet, IetError, Propriety, Verdict};
use crate::numbers::SymbolicReal;

/// The detected collapse pattern, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Collapse {
    /// 0-based index i of the pattern (pi entries i and i+1 mod n).
    pub pattern_at: usize,
    /// True for the (-1, -n) pattern, which also removes one flip.
    pub flipped: bool,
    /// Breakpoint index of the removed false discontinuity; index 0 means
    /// the identified point 0 ≡ b itself.
    pub removed_breakpoint: usize,
}

/// A proper circle exchange, kept together with the interval map it came
/// from. Cut points and image points are stored as values in [0, b), sorted
/// ascending; arc `j` runs counterclockwise from cut j to cut j+1 (the last
/// arc wraps) and maps onto the image arc starting at `images[sigma[j]]`.
#[derive(Debug, Clone)]
pub struct CircleExchange {
    base: Iet,
    collapse: Option<Collapse>,
    cuts: Vec<SymbolicReal>,
    cut_sources: Vec<usize>,
    images: Vec<SymbolicReal>,
    sigma: Vec<usize>,
    arc_flips: Vec<bool>,
    arc_intervals: Vec<Vec<usize>>,
}

#[derive(Debug, Clone)]
pub enum CircleEval {
    Value(SymbolicReal),
    Undefined { cut: usize },
}

impl Iet {
    /// Collapses to a circle exchange, removing the pattern-detected false
    /// discontinuity at the identification. Requires a proper map.
    pub fn to_circle(&self) -> Result<CircleExchange, IetError> {
        match self.is_proper()? {
            Propriety::Proper => {}
            Propriety::FalseDiscontinuities(idx) => return Err(IetError::NotProper(idx)),
        }
        let n = self.n();
        let entries = self.permutation().entries();
        let mut collapse = None;
        if n >= 2 {
            for i in 0..n {
                let next = entries[(i + 1) % n];
                if entries[i] == n as i64 && next == 1 {
                    collapse = Some(Collapse {
                        pattern_at: i,
                        flipped: false,
                        removed_breakpoint: (i + 1) % n,
                    });
                    break;
                }
                if entries[i] == -1 && next == -(n as i64) {
                    collapse = Some(Collapse {
                        pattern_at: i,
                        flipped: true,
                        removed_breakpoint: (i + 1) % n,
                    });
                    break;
                }
            }
        }
        // circle breakpoints: indices 0..n-1 (a_n ≡ a_0), minus the removed one
        let removed = collapse.as_ref().map(|c| c.removed_breakpoint);
        let cut_sources: Vec<usize> = (0..n).filter(|i| Some(*i) != removed).collect();
        let nprime = cut_sources.len();
        let cuts: Vec<SymbolicReal> = cut_sources
            .iter()
            .map(|&i| self.breakpoints()[i].clone())
            .collect();

        // underlying domain intervals of each arc
        let mut arc_intervals: Vec<Vec<usize>> = Vec::with_capacity(nprime);
        for j in 0..nprime {
            let s = cut_sources[j];
            let e = cut_sources[(j + 1) % nprime];
            let mut ivals = Vec::new();
            let mut k = s;
            loop {
                ivals.push(k);
                k = (k + 1) % n;
                if k == e {
                    break;
                }
            }
            arc_intervals.push(ivals);
        }

        let b = self.total_length().clone();
        let normalize = |v: SymbolicReal| -> Result<SymbolicReal, IetError> {
            Ok(if matches!(v.cmp_exact(&b)?, Verdict::Equal) {
                self.zero()
            } else {
                v
            })
        };

        let mut arc_flips = Vec::with_capacity(nprime);
        let mut lowers: Vec<SymbolicReal> = Vec::with_capacity(nprime);
        let mut uppers: Vec<SymbolicReal> = Vec::with_capacity(nprime);
        for j in 0..nprime {
            let ivals = &arc_intervals[j];
            let flip = self.permutation().flipped(ivals[0]);
            debug_assert!(ivals
                .iter()
                .all(|&i| self.permutation().flipped(i) == flip));
            arc_flips.push(flip);
            let start_bp = cut_sources[j];
            let end_src = cut_sources[(j + 1) % nprime];
            let end_bp = if end_src == 0 { n } else { end_src };
            let v_start = normalize(self.one_sided_limits(start_bp).0)?;
            let v_end = normalize(self.one_sided_limits(end_bp).1)?;
            if flip {
                lowers.push(v_end);
                uppers.push(v_start);
            } else {
                lowers.push(v_start);
                uppers.push(v_end);
            }
        }

        // image labels sorted ascending, consistent with the cut order
        let mut order: Vec<usize> = (0..nprime).collect();
        {
            let mut err: Option<IetError> = None;
            order.sort_by(|&p, &q| match lowers[p].cmp_exact(&lowers[q]) {
                Ok(Verdict::Less) => std::cmp::Ordering::Less,
                Ok(Verdict::Greater) => std::cmp::Ordering::Greater,
                Ok(Verdict::Equal) => std::cmp::Ordering::Equal,
                Err(e) => {
                    if err.is_none() {
                        err = Some(e.into());
                    }
                    std::cmp::Ordering::Equal
                }
            });
            if let Some(e) = err {
                return Err(e);
            }
        }
        let images: Vec<SymbolicReal> = order.iter().map(|&j| lowers[j].clone()).collect();
        let mut sigma = vec![0usize; nprime];
        for (rank, &j) in order.iter().enumerate() {
            sigma[j] = rank;
        }
        // each arc's upper endpoint must be the next image label (cyclically)
        for j in 0..nprime {
            let expect = &images[(sigma[j] + 1) % nprime];
            if !matches!(uppers[j].cmp_exact(expect)?, Verdict::Equal) {
                return Err(IetError::BadBranches(format!(
                    "image arcs of the circle exchange do not tile (arc {j})"
                )));
            }
        }

        Ok(CircleExchange {
            base: self.clone(),
            collapse,
            cuts,
            cut_sources,
            images,
            sigma,
            arc_flips,
            arc_intervals,
        })
    }
}

impl CircleExchange {
    pub fn base(&self) -> &Iet {
        &self.base
    }

    pub fn collapsed(&self) -> bool {
        self.collapse.is_some()
    }

    pub fn collapse(&self) -> Option<&Collapse> {
        self.collapse.as_ref()
    }

    /// Number of exchanged arcs, n' in {n-1, n}.
    pub fn n_prime(&self) -> usize {
        self.cuts.len()
    }

    /// Number of flipped arcs.
    pub fn k_prime(&self) -> usize {
        self.arc_flips.iter().filter(|&&f| f).count()
    }

    pub fn has_flips(&self) -> bool {
        self.k_prime() > 0
    }

    /// Cut points c_1 < ... < c_n' as values in [0, b).
    pub fn cuts(&self) -> &[SymbolicReal] {
        &self.cuts
    }

    /// Image labels b_1 < ... < b_n' as values in [0, b).
    pub fn images(&self) -> &[SymbolicReal] {
        &self.images
    }

    /// Arc j maps onto the image arc starting at images[sigma[j]].
    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn arc_flips(&self) -> &[bool] {
        &self.arc_flips
    }

    /// Underlying domain intervals of arc j (two of them after a collapse).
    pub fn arc_intervals(&self, j: usize) -> &[usize] {
        &self.arc_intervals[j]
    }

    /// Properness of the circle exchange itself: one-sided limits (as
    /// circle points) disagree at every cut. A single-arc exchange is
    /// proper by convention, its cut being unremovable.
    pub fn is_proper_circle(&self) -> Result<bool, IetError> {
        if self.n_prime() <= 1 {
            return Ok(true);
        }
        let n = self.base.n();
        let b = self.base.total_length().clone();
        for &src in &self.cut_sources {
            let plus_bp = src;
            let minus_bp = if src == 0 { n } else { src };
            let plus = self.normalize_value(self.base.one_sided_limits(plus_bp).0, &b)?;
            let minus = self.normalize_value(self.base.one_sided_limits(minus_bp).1, &b)?;
            if matches!(plus.cmp_exact(&minus)?, Verdict::Equal) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn normalize_value(
        &self,
        v: SymbolicReal,
        b: &SymbolicReal,
    ) -> Result<SymbolicReal, IetError> {
        Ok(if matches!(v.cmp_exact(b)?, Verdict::Equal) {
            self.base.zero()
        } else {
            v
        })
    }

    /// Circle map at a point of [0, b); continuous through the collapsed
    /// discontinuity, undefined at the cuts.
    pub fn evaluate(&self, x: &SymbolicReal) -> Result<CircleEval, IetError> {
        let b = self.base.total_length().clone();
        let x = self.normalize_value(x.clone(), &b)?;
        for (j, c) in self.cuts.iter().enumerate() {
            if matches!(x.cmp_exact(c)?, Verdict::Equal) {
                return Ok(CircleEval::Undefined { cut: j });
            }
        }
        // the collapsed point maps to the identification 0 ≡ b
        if let Some(col) = &self.collapse {
            let removed = &self.base.breakpoints()[col.removed_breakpoint];
            if matches!(x.cmp_exact(removed)?, Verdict::Equal) {
                return Ok(CircleEval::Value(self.base.zero()));
            }
        }
        match self.base.evaluate(&x)? {
            Eval::Value(v) => Ok(CircleEval::Value(self.normalize_value(v, &b)?)),
            Eval::Undefined { breakpoint } => {
                // only breakpoint 0/n can remain here, and only in the
                // wrap-collapse case where 0 is not a cut
                debug_assert!(breakpoint == 0 || breakpoint == self.base.n());
                Ok(CircleEval::Value(self.base.zero()))
            }
        }
    }

    /// Forward circle orbit; stops at a cut.
    pub fn forward_orbit(&self, x: &SymbolicReal, depth: usize) -> Vec<SymbolicReal> {
        let mut out = vec![x.clone()];
        let mut cur = x.clone();
        for _ in 0..depth {
            match self.evaluate(&cur) {
                Ok(CircleEval::Value(v)) => {
                    cur = v.clone();
                    out.push(v);
                }
                _ => break,
            }
        }
        out
    }

    /// Index of the cut equal to x, if any.
    pub fn cut_index_of(&self, x: &SymbolicReal) -> Result<Option<usize>, IetError> {
        for (j, c) in self.cuts.iter().enumerate() {
            if matches!(x.cmp_exact(c)?, Verdict::Equal) {
                return Ok(Some(j));
            }
        }
        Ok(None)
    }

    /// Index of the image label equal to x, if any.
    pub fn image_index_of(&self, x: &SymbolicReal) -> Result<Option<usize>, IetError> {
        for (j, c) in self.images.iter().enumerate() {
            if matches!(x.cmp_exact(c)?, Verdict::Equal) {
                return Ok(Some(j));
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iet::{rational_lengths, SignedPermutation};
    use crate::numbers::{SymbolTable, SymbolicReal};
    use crate::rat::rat;
    use std::sync::Arc;

    fn sqrt_lengths(n: usize) -> (Arc<SymbolTable>, Vec<SymbolicReal>) {
        let t = SymbolTable::new(true);
        let mut lengths = Vec::new();
        for i in 0..n {
            let (id, k) = t.fresh_sqrt(&format!("l{i}"));
            // scale into a unit-ish range: sqrt(k)/(2k) is about 1/(2 sqrt k)
            let _ = k;
            lengths.push(SymbolicReal::affine(
                &t,
                rat(0, 1),
                &[(id, rat(1, 2 * (i as i64 + 2)))],
            ));
        }
        (t, lengths)
    }

    #[test]
    fn rotation_collapses_to_single_arc() {
        let t = SymbolTable::new(true);
        let s5 = t.register_sqrt("s5", 5).unwrap();
        let g = SymbolicReal::affine(&t, rat(-1, 2), &[(s5, rat(1, 2))]);
        let one_minus_g = SymbolicReal::rational(&t, rat(1, 1)).sub(&g);
        let iet = Iet::new(
            vec![g, one_minus_g],
            SignedPermutation::new(vec![2, 1]).unwrap(),
        )
        .unwrap();
        let c = iet.to_circle().unwrap();
        assert!(c.collapsed());
        assert_eq!(c.n_prime(), 1);
        assert_eq!(c.k_prime(), 0);
        assert_eq!(c.sigma(), &[0]);
        assert!(c.is_proper_circle().unwrap());
    }

    #[test]
    fn five_interval_flip_pattern_collapse() {
        // pi = (-3, -4, 5, 1, -2): pattern pi(3) = 5 = n, pi(4) = 1 -> n' = 4
        let (_, lengths) = sqrt_lengths(5);
        let iet = Iet::new(
            lengths,
            SignedPermutation::new(vec![-3, -4, 5, 1, -2]).unwrap(),
        )
        .unwrap();
        let c = iet.to_circle().unwrap();
        assert!(c.collapsed());
        assert_eq!(c.n_prime(), 4);
        let col = c.collapse().unwrap();
        assert_eq!(col.pattern_at, 2);
        assert!(!col.flipped);
        assert_eq!(col.removed_breakpoint, 3);
    }

    #[test]
    fn flipped_family_collapses_one_interval() {
        // pi = (-3, 4, 1, -2): pi(2) = 4 = n, pi(3) = 1, so the straight
        // pattern fires and the 4-interval map becomes a 3-arc exchange
        let (_, lengths) = sqrt_lengths(4);
        let iet = Iet::new(
            lengths,
            SignedPermutation::new(vec![-3, 4, 1, -2]).unwrap(),
        )
        .unwrap();
        let c = iet.to_circle().unwrap();
        assert!(c.collapsed());
        assert_eq!(c.n_prime(), 3);
        assert_eq!(c.k_prime(), 2);
        assert!(c.is_proper_circle().unwrap());
    }

    #[test]
    fn genuinely_patternless_case() {
        // pi = (3, 1, 4, 2): proper, no collapse pattern, n' = n = 4
        let (_, lengths) = sqrt_lengths(4);
        let iet = Iet::new(lengths, SignedPermutation::new(vec![3, 1, 4, 2]).unwrap()).unwrap();
        let c = iet.to_circle().unwrap();
        assert!(!c.collapsed());
        assert_eq!(c.n_prime(), 4);
        // the identification hides a false discontinuity at 0 that the
        // pattern scan deliberately does not remove
        assert!(!c.is_proper_circle().unwrap());
    }

    #[test]
    fn improper_input_rejected() {
        let t = SymbolTable::new(true);
        let lengths = rational_lengths(&t, &[rat(1, 3), rat(2, 3)]);
        let iet = Iet::new(lengths, SignedPermutation::new(vec![-2, -1]).unwrap()).unwrap();
        assert!(matches!(iet.to_circle(), Err(IetError::NotProper(_))));
    }

    #[test]
    fn circle_orbits_agree_with_interval_orbits() {
        let t = SymbolTable::new(true);
        let s5 = t.register_sqrt("s5", 5).unwrap();
        let g = SymbolicReal::affine(&t, rat(-1, 2), &[(s5, rat(1, 2))]);
        let one_minus_g = SymbolicReal::rational(&t, rat(1, 1)).sub(&g);
        let iet = Iet::new(
            vec![g, one_minus_g],
            SignedPermutation::new(vec![2, 1]).unwrap(),
        )
        .unwrap();
        let c = iet.to_circle().unwrap();
        let x = SymbolicReal::rational(&t, rat(1, 7));
        let circle_orbit = c.forward_orbit(&x, 25);
        let interval_orbit = iet.forward_orbit(&x, 25);
        // interval orbit never dies here and no point is the collapse point,
        // so both orbits agree as circle point sets
        assert_eq!(circle_orbit.len(), interval_orbit.len());
        for (a, b) in circle_orbit.iter().zip(&interval_orbit) {
            assert_eq!(a, b);
        }
    }
}
