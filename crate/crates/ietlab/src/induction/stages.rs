//! Staged construction of the infinite-discontinuity minimal exchange.
//!
//! Each stage accelerates the previous map on a small interval chosen just
//! right of a distinguished point p: the interval must shrink like 1/i,
//! nest strictly below the previous one, avoid the finite orbit segments
//! that matter, and satisfy the star-modification minimality hypotheses.
//! Fresh basis symbols realize the endpoints, which makes all the orbit
//! avoidance exact: an orbit value never mentions the new symbols, so the
//! equalities are refuted canonically.

use super::{
    check_minbasic_conditions, first_return_map, star_from_return_system, InductionError,
    SubInterval,
};
use crate::iet::{Eval, Iet, Iteration, SignedPermutation};
use crate::numbers::{SymbolTable, SymbolicReal};
use crate::rat::{rat, Rat};
use num::Zero;
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct StageConfig {
    /// Orbit depth for every avoidance certificate.
    pub orbit_depth: usize,
    /// Step bound for first-return computations.
    pub step_bound: usize,
    /// Width of the enclosures used to scan for gaps (a search parameter,
    /// not a certificate parameter).
    pub search_width: Rat,
}

impl Default for StageConfig {
    fn default() -> Self {
        StageConfig {
            orbit_depth: 100,
            step_bound: 100_000,
            search_width: Rat::new(1.into(), (1i64 << 24).into()),
        }
    }
}

/// Record of one stage: the chosen interval, the visiting depth that the
/// dense-approach condition produced, and the verification depth of the
/// avoidance certificates.
#[derive(Debug, Clone)]
pub struct StagePlan {
    pub stage: usize,
    pub delta: SubInterval,
    pub visit_depth: usize,
    pub dense_points: Vec<SymbolicReal>,
    pub verification_depth: usize,
    pub induced_permutation: SignedPermutation,
}

/// Finitely many stages of the infinite construction, with the base map,
/// the distinguished point and the dense sequence they were built against.
#[derive(Debug, Clone)]
pub struct InfiniteIet {
    pub base: Iet,
    pub point: SymbolicReal,
    pub dense_seq: Vec<SymbolicReal>,
    pub stages: Vec<Iet>,
    pub plans: Vec<StagePlan>,
}

#[derive(Debug, Clone)]
pub enum LimitEval {
    Value(SymbolicReal),
    Undefined,
}

/// Places a fresh square-root symbol scaled into the open rational window.
pub fn fresh_point_in(
    table: &Arc<SymbolTable>,
    lo: &Rat,
    hi: &Rat,
    name_hint: &str,
) -> Result<SymbolicReal, InductionError> {
    assert!(lo < hi, "empty placement window");
    let (id, k) = table.fresh_sqrt(name_hint);
    let sym = SymbolicReal::symbol(table, id);
    let root_ceiling = Rat::from_integer(((k as f64).sqrt().ceil() as i64 + 1).into());
    let span = hi - lo;
    // value = lo + span/4 + (span/4) * sqrt(k)/ceil(sqrt(k)) sits in
    // (lo + span/4, lo + span/2)
    let scale = &span / (rat(4, 1) * root_ceiling);
    let value = sym
        .scale(&scale)
        .add_rat(&(lo + &span / rat(4, 1)));
    debug_assert!({
        let v = value.enclose(&(&span / rat(64, 1))).unwrap();
        &v.0 > lo && &v.1 < hi
    });
    Ok(value)
}

/// The dyadic midpoint sequence b/2, b/4, 3b/4, b/8, 3b/8, ... used as the
/// default dense set.
pub fn dyadic_dense_sequence(iet: &Iet, count: usize) -> Vec<SymbolicReal> {
    let b = iet.total_length();
    let mut out = Vec::with_capacity(count);
    let mut level = 1u32;
    'outer: loop {
        let denom = 1i64 << level;
        let mut num = 1i64;
        while num < denom {
            out.push(b.scale(&rat(num, denom)));
            if out.len() == count {
                break 'outer;
            }
            num += 2;
        }
        level += 1;
    }
    out
}

/// Minimal depth N >= 1 such that, for every h <= i, both orbit segments
/// {S^j(p)}_{0<=j<=N} and {S^j(p)}_{-N<=j<=0} meet (x_h - 1/i, x_h + 1/i).
fn visiting_depth(
    prev: &Iet,
    p: &SymbolicReal,
    dense_seq: &[SymbolicReal],
    i: usize,
    cap: usize,
) -> Result<usize, InductionError> {
    let radius = rat(1, i as i64);
    let windows: Vec<(SymbolicReal, SymbolicReal)> = dense_seq[..i]
        .iter()
        .map(|x| (x.add_rat(&(-radius.clone())), x.add_rat(&radius)))
        .collect();
    let in_window = |v: &SymbolicReal, w: &(SymbolicReal, SymbolicReal)| -> Result<bool, InductionError> {
        Ok(w.0.lt(v)? && v.lt(&w.1)?)
    };
    let mut fwd_hit = vec![usize::MAX; i];
    let mut bwd_hit = vec![usize::MAX; i];
    let mut fv = p.clone();
    let mut bv = p.clone();
    for step in 0..=cap {
        if step > 0 {
            fv = match prev.evaluate(&fv)? {
                Eval::Value(v) => v,
                Eval::Undefined { .. } => {
                    return Err(InductionError::StageSearchFailed(format!(
                        "forward orbit of p dies at step {step} before visiting all windows"
                    )))
                }
            };
            bv = match prev.evaluate_inverse(&bv)? {
                Eval::Value(v) => v,
                Eval::Undefined { .. } => {
                    return Err(InductionError::StageSearchFailed(format!(
                        "backward orbit of p dies at step {step} before visiting all windows"
                    )))
                }
            };
        }
        for (h, w) in windows.iter().enumerate() {
            if fwd_hit[h] == usize::MAX && in_window(&fv, w)? {
                fwd_hit[h] = step;
            }
            if bwd_hit[h] == usize::MAX && in_window(&bv, w)? {
                bwd_hit[h] = step;
            }
        }
        if step >= 1
            && fwd_hit.iter().all(|&s| s != usize::MAX)
            && bwd_hit.iter().all(|&s| s != usize::MAX)
        {
            let needed = fwd_hit
                .iter()
                .chain(bwd_hit.iter())
                .copied()
                .max()
                .unwrap_or(1)
                .max(1);
            return Ok(needed);
        }
    }
    Err(InductionError::StageSearchFailed(format!(
        "orbit of p does not visit all 1/{i}-windows within depth {cap}"
    )))
}

/// Certifies that p has full orbit under the map to the given depth.
fn check_full_orbit(iet: &Iet, p: &SymbolicReal, depth: usize) -> Result<(), InductionError> {
    for m in [depth as i64, -(depth as i64)] {
        match iet.iterate(p, m)? {
            Iteration::Orbit(_) => {}
            Iteration::HitBreakpoint { step, .. } => {
                return Err(InductionError::StageSearchFailed(format!(
                    "p hits a breakpoint at step {step}"
                )))
            }
        }
    }
    Ok(())
}

/// Structural membership of a value in an orbit list.
fn orbit_mentions(orbit: &[SymbolicReal], v: &SymbolicReal) -> bool {
    orbit.iter().any(|o| o == v)
}

/// Builds stage i from the previous map. `prev_delta` is stage i-1's
/// interval (None for i = 1); `base` is the original map whose orbit of p
/// the boundary must avoid.
pub fn build_stage(
    base: &Iet,
    prev: &Iet,
    prev_delta: Option<&SubInterval>,
    p: &SymbolicReal,
    dense_seq: &[SymbolicReal],
    i: usize,
    cfg: &StageConfig,
) -> Result<(Iet, StagePlan), InductionError> {
    assert!(i >= 1, "stages are numbered from 1");
    assert!(dense_seq.len() >= i, "dense sequence too short for stage {i}");
    let table = base.table().clone();
    let depth = cfg.orbit_depth;

    check_full_orbit(prev, p, depth)?;
    let n_i = visiting_depth(prev, p, dense_seq, i, depth)?;

    // search region (p, U) with U <= min(a_2 of base, d_{i-1}, p + 1/i)
    let w = &cfg.search_width;
    let p_enc = p.enclose(w)?;
    let mut upper = &p_enc.0 + rat(1, i as i64);
    let a2_enc = base.breakpoints()[1].enclose(w)?;
    if a2_enc.0 < upper {
        upper = a2_enc.0.clone();
    }
    if let Some(pd) = prev_delta {
        let d_prev_enc = pd.lower().enclose(w)?;
        if d_prev_enc.0 < upper {
            upper = d_prev_enc.0.clone();
        }
    }
    if upper <= p_enc.1 {
        return Err(InductionError::StageSearchFailed(format!(
            "empty admissible region right of p at stage {i}"
        )));
    }

    // avoid the orbit of p to ±n_i (enclosures for the gap scan, exact
    // compares later)
    let mut avoid: Vec<(Rat, Rat)> = Vec::new();
    let mut collect = |v: &SymbolicReal| -> Result<(), InductionError> {
        let e = v.enclose(w)?;
        if e.1 > p_enc.1 && e.0 < upper {
            avoid.push(e);
        }
        Ok(())
    };
    let orbit_p_ni: Vec<SymbolicReal> = {
        let mut o = prev.forward_orbit(p, n_i);
        o.extend(prev.backward_orbit(p, n_i).into_iter().skip(1));
        o
    };
    for v in &orbit_p_ni {
        collect(v)?;
    }
    avoid.sort_by(|a, b| a.0.cmp(&b.0));

    // gaps between avoid enclosures inside (p_hi, upper), widest first
    let mut gaps: Vec<(Rat, Rat)> = Vec::new();
    let mut cursor = p_enc.1.clone();
    for (lo, hi) in &avoid {
        if lo > &cursor {
            let cap = if lo < &upper { lo.clone() } else { upper.clone() };
            if cap > cursor {
                gaps.push((cursor.clone(), cap));
            }
        }
        if hi > &cursor {
            cursor = hi.clone();
        }
        if cursor >= upper {
            break;
        }
    }
    if cursor < upper {
        gaps.push((cursor, upper.clone()));
    }
    gaps.sort_by(|a, b| (&b.1 - &b.0).cmp(&(&a.1 - &a.0)));

    let orbit_p_base: Vec<SymbolicReal> = {
        let mut o = base.forward_orbit(p, depth);
        o.extend(base.backward_orbit(p, depth).into_iter().skip(1));
        o
    };

    for (g_lo, g_hi) in gaps.into_iter().take(8) {
        let gap = &g_hi - &g_lo;
        if gap.is_zero() {
            continue;
        }
        let at = |num: i64, den: i64| -> Rat { &g_lo + &gap * rat(num, den) };
        let d = fresh_point_in(&table, &at(8, 16), &at(9, 16), &format!("stage{i}_d"))?;
        let f = fresh_point_in(&table, &at(13, 16), &at(14, 16), &format!("stage{i}_f"))?;
        let delta = SubInterval::new(prev, d.clone(), f.clone())?;

        // C-1: |Delta| < d - p, and nesting below the previous stage
        let width_ok = delta.width().lt(&d.sub(p))?;
        let nest_ok = match prev_delta {
            Some(pd) => f.lt(pd.lower())?,
            None => true,
        };
        // C-2: f - p < 1/i
        let c2_ok = f.sub(p).lt(&SymbolicReal::rational(&table, rat(1, i as i64)))?;
        // C-3: boundary avoids the orbit of p under the base map
        let c3_ok = !orbit_mentions(&orbit_p_base, &d) && !orbit_mentions(&orbit_p_base, &f);
        // C-6: Delta avoids the ±n_i orbit segment of p
        let mut c6_ok = true;
        for v in &orbit_p_ni {
            if delta.contains(v)? {
                c6_ok = false;
                break;
            }
        }
        if !(width_ok && nest_ok && c2_ok && c3_ok && c6_ok) {
            continue;
        }
        // C-5: the star-modification hypotheses for (prev, Delta)
        let report = check_minbasic_conditions(prev, &delta, depth)?;
        if !report.all_verified() {
            continue;
        }

        let rs = first_return_map(prev, &delta, cfg.step_bound)?;
        let star = star_from_return_system(&rs)?;
        let plan = StagePlan {
            stage: i,
            delta,
            visit_depth: n_i,
            dense_points: dense_seq[..i].to_vec(),
            verification_depth: depth,
            induced_permutation: rs.induced_permutation().clone(),
        };
        return Ok((star, plan));
    }
    Err(InductionError::StageSearchFailed(format!(
        "no admissible interval found at stage {i}"
    )))
}

impl InfiniteIet {
    /// Builds `count` stages over the given base map, creating the
    /// distinguished point p as a fresh symbol in the first interval.
    pub fn build(base: &Iet, count: usize, cfg: &StageConfig) -> Result<Self, InductionError> {
        let table = base.table().clone();
        let a2 = base.breakpoints()[1].enclose(&cfg.search_width)?;
        let lo = &a2.0 / rat(8, 1);
        let hi = &a2.0 / rat(4, 1);
        let p = fresh_point_in(&table, &lo, &hi, "p")?;
        Self::build_from_point(base, p, count, cfg)
    }

    pub fn build_from_point(
        base: &Iet,
        p: SymbolicReal,
        count: usize,
        cfg: &StageConfig,
    ) -> Result<Self, InductionError> {
        let dense_seq = dyadic_dense_sequence(base, count.max(1));
        let mut stages: Vec<Iet> = Vec::with_capacity(count);
        let mut plans: Vec<StagePlan> = Vec::with_capacity(count);
        for i in 1..=count {
            let (prev, prev_delta) = match stages.last() {
                Some(s) => (s, plans.last().map(|pl| &pl.delta)),
                None => (base, None),
            };
            let (stage, plan) = build_stage(base, prev, prev_delta, &p, &dense_seq, i, cfg)?;
            stages.push(stage);
            plans.push(plan);
        }
        Ok(InfiniteIet {
            base: base.clone(),
            point: p,
            dense_seq,
            stages,
            plans,
        })
    }

    pub fn stage(&self, i: usize) -> &Iet {
        &self.stages[i - 1]
    }

    pub fn stage_count(&self) -> usize {
        self.stages.len()
    }
}

/// Evaluates the limit object: the stabilized stage value inside a built
/// interval, the base map outside the modified region, undefined on the
/// accumulated discontinuities, and an explicit refusal in the tail region
/// where unbuilt stages would live.
pub fn limit_evaluate(inf: &InfiniteIet, x: &SymbolicReal) -> Result<LimitEval, InductionError> {
    for (plan, stage) in inf.plans.iter().zip(&inf.stages) {
        if plan.delta.contains(x)? {
            return Ok(match stage.evaluate(x)? {
                Eval::Value(v) => LimitEval::Value(v),
                Eval::Undefined { .. } => LimitEval::Undefined,
            });
        }
        if x == plan.delta.lower() || x == plan.delta.upper() {
            return Ok(LimitEval::Undefined);
        }
    }
    if let Some(last) = inf.plans.last() {
        if inf.point.lt(x)? && x.lt(last.delta.lower())? {
            return Err(InductionError::UnresolvedRegion);
        }
    }
    Ok(match inf.base.evaluate(x)? {
        Eval::Value(v) => LimitEval::Value(v),
        Eval::Undefined { .. } => LimitEval::Undefined,
    })
}
