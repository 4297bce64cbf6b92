//! Signed-permutation interval exchange transformations.
//!
//! An `Iet` is a vector of positive symbolic lengths together with a signed
//! permutation; intervals carrying a negative entry are flipped (slope -1).
//! All indices in this module are 0-based: intervals `0..n`, breakpoints
//! `0..=n` with breakpoint 0 at the origin and breakpoint n at the right end.
//! Signed permutation *entries* keep their usual 1-based values.

mod circle;
mod keane;
pub mod random;
mod saddle;

pub use circle::{CircleExchange, Collapse};
pub use keane::{KeaneCertificate, KeaneObstruction, KeaneViolation};
pub use saddle::{SaddleConnection, SaddleSearch, Side};

use crate::numbers::{NumError, SymbolTable, SymbolicReal, Verdict};
use crate::rat::{int, Rat};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IetError {
    #[error("length {0} is not strictly positive")]
    NonPositiveLength(usize),
    #[error("invalid signed permutation: {0}")]
    InvalidPermutation(String),
    #[error("point outside the domain [0, b]")]
    OutOfDomain,
    #[error("map is not proper (false discontinuities at breakpoints {0:?})")]
    NotProper(Vec<usize>),
    #[error("depth {0} exhausted without a verdict")]
    DepthExhausted(usize),
    #[error("an interval exchange needs at least one interval")]
    Empty,
    #[error("branch images do not tile the target interval: {0}")]
    BadBranches(String),
    #[error(transparent)]
    Num(#[from] NumError),
}

/// Injective map N_n -> ±N_n with bijective absolute value; negative entries
/// mark flipped intervals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedPermutation {
    images: Vec<i64>,
}

impl SignedPermutation {
    pub fn new(images: Vec<i64>) -> Result<Self, IetError> {
        let n = images.len();
        if n == 0 {
            return Err(IetError::Empty);
        }
        let mut seen = vec![false; n];
        for &v in &images {
            let a = v.unsigned_abs() as usize;
            if v == 0 || a > n {
                return Err(IetError::InvalidPermutation(format!(
                    "entry {v} out of range for n = {n}"
                )));
            }
            if seen[a - 1] {
                return Err(IetError::InvalidPermutation(format!(
                    "absolute value {a} repeated"
                )));
            }
            seen[a - 1] = true;
        }
        Ok(SignedPermutation { images })
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.images
    }

    /// Image position of interval `i` (0-based interval, 1-based position).
    pub fn position(&self, i: usize) -> usize {
        self.images[i].unsigned_abs() as usize
    }

    /// Whether interval `i` is flipped.
    pub fn flipped(&self, i: usize) -> bool {
        self.images[i] < 0
    }

    pub fn flip_count(&self) -> usize {
        self.images.iter().filter(|&&v| v < 0).count()
    }

    pub fn has_flips(&self) -> bool {
        self.flip_count() > 0
    }

    /// 0-based interval occupying 1-based image position `j`.
    pub fn interval_at_position(&self, j: usize) -> usize {
        self.images
            .iter()
            .position(|v| v.unsigned_abs() as usize == j)
            .expect("positions 1..=n are all occupied")
    }

    /// The inverse permutation tau with tau(j) = sigma(pi(|pi|^-1(j))) |pi|^-1(j).
    pub fn inverse(&self) -> SignedPermutation {
        let n = self.n();
        let mut images = vec![0i64; n];
        for (j, img) in images.iter_mut().enumerate() {
            let i = self.interval_at_position(j + 1);
            let sign = if self.flipped(i) { -1 } else { 1 };
            *img = sign * (i as i64 + 1);
        }
        SignedPermutation { images }
    }

    /// No prefix {1..l} maps onto {1..l} in absolute value, for l < n.
    pub fn is_irreducible(&self) -> bool {
        let n = self.n();
        let mut max_pos = 0usize;
        for l in 1..n {
            max_pos = max_pos.max(self.position(l - 1));
            if max_pos == l {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// One affine branch `x -> sign*x + offset` carrying the offset's integer
/// coordinates over the length vector (for orbit bookkeeping).
#[derive(Debug, Clone)]
pub struct AffineMap {
    pub sign: i8,
    pub offset: SymbolicReal,
    /// offset as an integer combination of the base lengths; empty when the
    /// branch is a composite not tracked against a length vector.
    pub offset_vec: Vec<i64>,
}

impl AffineMap {
    pub fn identity(table: &Arc<SymbolTable>, n: usize) -> Self {
        AffineMap {
            sign: 1,
            offset: SymbolicReal::zero(table),
            offset_vec: vec![0; n],
        }
    }

    pub fn apply(&self, x: &SymbolicReal) -> SymbolicReal {
        if self.sign > 0 {
            x.add(&self.offset)
        } else {
            self.offset.sub(x)
        }
    }

    /// Composition `other ∘ self` (apply self first).
    pub fn then(&self, other: &AffineMap) -> AffineMap {
        let sign = self.sign * other.sign;
        let offset = if other.sign > 0 {
            other.offset.add(&self.offset)
        } else {
            other.offset.sub(&self.offset)
        };
        let offset_vec = if self.offset_vec.len() == other.offset_vec.len() {
            self.offset_vec
                .iter()
                .zip(&other.offset_vec)
                .map(|(a, b)| (other.sign as i64) * a + b)
                .collect()
        } else {
            Vec::new()
        };
        AffineMap {
            sign,
            offset,
            offset_vec,
        }
    }

    pub fn inverse(&self) -> AffineMap {
        // y = sx + t  =>  x = s(y - t) = sy - st
        let offset = if self.sign > 0 {
            self.offset.neg()
        } else {
            self.offset.clone()
        };
        AffineMap {
            sign: self.sign,
            offset,
            offset_vec: self
                .offset_vec
                .iter()
                .map(|&a| -(self.sign as i64) * a)
                .collect(),
        }
    }

    pub fn is_flip(&self) -> bool {
        self.sign < 0
    }

    /// Structural equality of the affine data.
    pub fn same_map(&self, other: &AffineMap) -> bool {
        self.sign == other.sign && self.offset == other.offset
    }
}

/// Exact orbit point record: value = sign * x0 + sum k_i lambda_i.
#[derive(Debug, Clone)]
pub struct OrbitPoint {
    pub value: SymbolicReal,
    pub iterate: i64,
    pub sign: i8,
    pub translation: Vec<i64>,
}

impl OrbitPoint {
    /// Recomputes the value from the coefficient record, for consistency
    /// checks against direct iteration.
    pub fn reconstruct(&self, x0: &SymbolicReal, lengths: &[SymbolicReal]) -> SymbolicReal {
        let mut v = if self.sign > 0 { x0.clone() } else { x0.neg() };
        for (k, l) in self.translation.iter().zip(lengths) {
            if *k != 0 {
                v = v.add(&l.scale(&int(*k)));
            }
        }
        v
    }
}

#[derive(Debug, Clone)]
pub enum Location {
    Interior(usize),
    Breakpoint(usize),
}

#[derive(Debug, Clone)]
pub enum Eval {
    Value(SymbolicReal),
    Undefined { breakpoint: usize },
}

impl Eval {
    pub fn value(self) -> Option<SymbolicReal> {
        match self {
            Eval::Value(v) => Some(v),
            Eval::Undefined { .. } => None,
        }
    }
}

#[derive(Debug, Clone)]
pub enum Iteration {
    Orbit(OrbitPoint),
    HitBreakpoint { step: i64, breakpoint: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Propriety {
    Proper,
    FalseDiscontinuities(Vec<usize>),
}

/// An interval exchange transformation with flips, in exact coordinates.
#[derive(Clone)]
pub struct Iet {
    lengths: Vec<SymbolicReal>,
    perm: SignedPermutation,
    breakpoints: Vec<SymbolicReal>,
    image_breakpoints: Vec<SymbolicReal>,
    branches: Vec<AffineMap>,
}

impl fmt::Debug for Iet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Iet(n = {}, pi = {})", self.n(), self.perm)
    }
}

impl Iet {
    pub fn new(lengths: Vec<SymbolicReal>, perm: SignedPermutation) -> Result<Self, IetError> {
        let n = lengths.len();
        if n == 0 {
            return Err(IetError::Empty);
        }
        if perm.n() != n {
            return Err(IetError::InvalidPermutation(format!(
                "permutation size {} does not match {} lengths",
                perm.n(),
                n
            )));
        }
        let table = lengths[0].table().clone();
        let zero = SymbolicReal::zero(&table);
        for (i, l) in lengths.iter().enumerate() {
            if !matches!(l.cmp_exact(&zero)?, Verdict::Greater) {
                return Err(IetError::NonPositiveLength(i));
            }
        }
        let mut breakpoints = Vec::with_capacity(n + 1);
        breakpoints.push(zero.clone());
        for l in &lengths {
            let prev = breakpoints.last().unwrap();
            breakpoints.push(prev.add(l));
        }
        let mut image_breakpoints = Vec::with_capacity(n + 1);
        image_breakpoints.push(zero);
        for j in 1..=n {
            let i = perm.interval_at_position(j);
            let prev = image_breakpoints.last().unwrap();
            image_breakpoints.push(prev.add(&lengths[i]));
        }

        // Integer coordinates of breakpoints and image prefixes over lambda.
        let a_vec = |i: usize| -> Vec<i64> {
            let mut v = vec![0i64; n];
            for e in v.iter_mut().take(i) {
                *e = 1;
            }
            v
        };
        let b_vec = |j: usize| -> Vec<i64> {
            let mut v = vec![0i64; n];
            for l in 1..=j {
                v[perm.interval_at_position(l)] += 1;
            }
            v
        };

        let mut branches = Vec::with_capacity(n);
        for i in 0..n {
            let pos = perm.position(i);
            if !perm.flipped(i) {
                let offset = image_breakpoints[pos - 1].sub(&breakpoints[i]);
                let mut offset_vec = b_vec(pos - 1);
                for (v, a) in offset_vec.iter_mut().zip(a_vec(i)) {
                    *v -= a;
                }
                branches.push(AffineMap {
                    sign: 1,
                    offset,
                    offset_vec,
                });
            } else {
                let offset = image_breakpoints[pos].add(&breakpoints[i]);
                let mut offset_vec = b_vec(pos);
                for (v, a) in offset_vec.iter_mut().zip(a_vec(i)) {
                    *v += a;
                }
                branches.push(AffineMap {
                    sign: -1,
                    offset,
                    offset_vec,
                });
            }
        }

        Ok(Iet {
            lengths,
            perm,
            breakpoints,
            image_breakpoints,
            branches,
        })
    }

    /// Rebuilds an IET from explicit breakpoints and affine branches,
    /// deriving the signed permutation from the exact order of the images.
    /// Breakpoints must be strictly increasing and the branch images must
    /// tile the interval they span.
    pub fn from_branches(
        breakpoints: Vec<SymbolicReal>,
        branches: Vec<AffineMap>,
    ) -> Result<Self, IetError> {
        let n = branches.len();
        if n == 0 || breakpoints.len() != n + 1 {
            return Err(IetError::BadBranches(format!(
                "{} branches with {} breakpoints",
                n,
                breakpoints.len()
            )));
        }
        for w in breakpoints.windows(2) {
            if !matches!(w[0].cmp_exact(&w[1])?, Verdict::Less) {
                return Err(IetError::BadBranches(
                    "breakpoints not strictly increasing".into(),
                ));
            }
        }
        // image of each branch, normalized to (lo, hi)
        let mut images: Vec<(SymbolicReal, SymbolicReal)> = Vec::with_capacity(n);
        for (i, br) in branches.iter().enumerate() {
            let u = br.apply(&breakpoints[i]);
            let v = br.apply(&breakpoints[i + 1]);
            if br.sign > 0 {
                images.push((u, v));
            } else {
                images.push((v, u));
            }
        }
        // exact sort of image intervals by lower endpoint
        let mut order: Vec<usize> = (0..n).collect();
        {
            let mut err: Option<IetError> = None;
            order.sort_by(|&p, &q| match images[p].0.cmp_exact(&images[q].0) {
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
        // tiling checks
        if !matches!(images[order[0]].0.cmp_exact(&breakpoints[0])?, Verdict::Equal) {
            return Err(IetError::BadBranches(
                "first image does not start at the left end".into(),
            ));
        }
        for w in order.windows(2) {
            if !matches!(images[w[0]].1.cmp_exact(&images[w[1]].0)?, Verdict::Equal) {
                return Err(IetError::BadBranches(
                    "image intervals overlap or leave gaps".into(),
                ));
            }
        }
        if !matches!(
            images[order[n - 1]].1.cmp_exact(&breakpoints[n])?,
            Verdict::Equal
        ) {
            return Err(IetError::BadBranches(
                "last image does not reach the right end".into(),
            ));
        }
        let mut entries = vec![0i64; n];
        for (rank, &i) in order.iter().enumerate() {
            let signed = (rank as i64) + 1;
            entries[i] = if branches[i].sign > 0 { signed } else { -signed };
        }
        let perm = SignedPermutation::new(entries)?;
        // translate so the domain starts at 0
        let origin = breakpoints[0].clone();
        let lengths: Vec<SymbolicReal> = (0..n)
            .map(|i| breakpoints[i + 1].sub(&breakpoints[i]))
            .collect();
        let built = Iet::new(lengths, perm)?;
        debug_assert!({
            let shift_ok = origin.is_rational() || true;
            shift_ok
        });
        Ok(built)
    }

    pub fn n(&self) -> usize {
        self.lengths.len()
    }

    pub fn table(&self) -> &Arc<SymbolTable> {
        self.lengths[0].table()
    }

    pub fn lengths(&self) -> &[SymbolicReal] {
        &self.lengths
    }

    pub fn permutation(&self) -> &SignedPermutation {
        &self.perm
    }

    pub fn flip_count(&self) -> usize {
        self.perm.flip_count()
    }

    /// Breakpoints a_0 = 0 < a_1 < ... < a_n = b.
    pub fn breakpoints(&self) -> &[SymbolicReal] {
        &self.breakpoints
    }

    pub fn image_breakpoints(&self) -> &[SymbolicReal] {
        &self.image_breakpoints
    }

    pub fn total_length(&self) -> &SymbolicReal {
        &self.breakpoints[self.n()]
    }

    pub fn branch(&self, i: usize) -> &AffineMap {
        &self.branches[i]
    }

    pub fn zero(&self) -> SymbolicReal {
        SymbolicReal::zero(self.table())
    }

    fn locate_in(&self, points: &[SymbolicReal], x: &SymbolicReal) -> Result<Location, IetError> {
        let n = self.n();
        if matches!(x.cmp_exact(&points[0])?, Verdict::Less) {
            return Err(IetError::OutOfDomain);
        }
        if matches!(x.cmp_exact(&points[0])?, Verdict::Equal) {
            return Ok(Location::Breakpoint(0));
        }
        match x.cmp_exact(&points[n])? {
            Verdict::Greater => return Err(IetError::OutOfDomain),
            Verdict::Equal => return Ok(Location::Breakpoint(n)),
            Verdict::Less => {}
        }
        let mut lo = 0usize;
        let mut hi = n;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            match x.cmp_exact(&points[mid])? {
                Verdict::Less => hi = mid,
                Verdict::Greater => lo = mid,
                Verdict::Equal => return Ok(Location::Breakpoint(mid)),
            }
        }
        Ok(Location::Interior(lo))
    }

    /// Position of x among the breakpoints.
    pub fn locate(&self, x: &SymbolicReal) -> Result<Location, IetError> {
        self.locate_in(&self.breakpoints, x)
    }

    /// Position of x among the image breakpoints.
    pub fn locate_image(&self, x: &SymbolicReal) -> Result<Location, IetError> {
        self.locate_in(&self.image_breakpoints, x)
    }

    /// Exact evaluation; breakpoints are outside the domain.
    pub fn evaluate(&self, x: &SymbolicReal) -> Result<Eval, IetError> {
        match self.locate(x)? {
            Location::Breakpoint(i) => Ok(Eval::Undefined { breakpoint: i }),
            Location::Interior(i) => Ok(Eval::Value(self.branches[i].apply(x))),
        }
    }

    /// One backward step; undefined on image breakpoints.
    pub fn evaluate_inverse(&self, x: &SymbolicReal) -> Result<Eval, IetError> {
        match self.locate_image(x)? {
            Location::Breakpoint(j) => Ok(Eval::Undefined { breakpoint: j }),
            Location::Interior(j) => {
                let i = self.perm.interval_at_position(j + 1);
                Ok(Eval::Value(self.branches[i].inverse().apply(x)))
            }
        }
    }

    /// One-sided limits (T(a_i^+), T(a_i^-)) at breakpoint `i`, with the
    /// boundary conventions T(a_0^-) = T(a_0^+) and T(a_n^+) = T(a_n^-).
    pub fn one_sided_limits(&self, i: usize) -> (SymbolicReal, SymbolicReal) {
        let n = self.n();
        assert!(i <= n, "breakpoint index out of range");
        let plus = (i < n).then(|| self.branches[i].apply(&self.breakpoints[i]));
        let minus = (i > 0).then(|| self.branches[i - 1].apply(&self.breakpoints[i]));
        match (plus, minus) {
            (Some(p), Some(m)) => (p, m),
            (Some(p), None) => (p.clone(), p),
            (None, Some(m)) => (m.clone(), m),
            (None, None) => unreachable!("n >= 1"),
        }
    }

    /// The inverse IET (mu, tau) with mu_j = lambda_{|pi|^-1(j)}.
    pub fn invert(&self) -> Iet {
        let n = self.n();
        let tau = self.perm.inverse();
        let mu: Vec<SymbolicReal> = (1..=n)
            .map(|j| self.lengths[self.perm.interval_at_position(j)].clone())
            .collect();
        Iet::new(mu, tau).expect("inverse of a valid IET is valid")
    }

    /// Lists interior breakpoints where the one-sided limits coincide.
    pub fn is_proper(&self) -> Result<Propriety, IetError> {
        let mut false_discs = Vec::new();
        for i in 1..self.n() {
            let (p, m) = self.one_sided_limits(i);
            if matches!(p.cmp_exact(&m)?, Verdict::Equal) {
                false_discs.push(i);
            }
        }
        Ok(if false_discs.is_empty() {
            Propriety::Proper
        } else {
            Propriety::FalseDiscontinuities(false_discs)
        })
    }

    /// Exact m-fold iteration with the coefficient record
    /// value = sign(m) x + sum k_i(m) lambda_i. Negative m steps backward.
    pub fn iterate(&self, x: &SymbolicReal, m: i64) -> Result<Iteration, IetError> {
        let n = self.n();
        if matches!(x.cmp_exact(&self.breakpoints[0])?, Verdict::Less)
            || matches!(x.cmp_exact(&self.breakpoints[n])?, Verdict::Greater)
        {
            return Err(IetError::OutOfDomain);
        }
        let mut value = x.clone();
        let mut sign: i8 = 1;
        let mut k = vec![0i64; n];
        let steps = m.unsigned_abs();
        for step in 1..=steps {
            let (s, offset, offset_vec): (i8, SymbolicReal, Vec<i64>) = if m > 0 {
                match self.locate(&value)? {
                    Location::Breakpoint(i) => {
                        return Ok(Iteration::HitBreakpoint {
                            step: step as i64 - 1,
                            breakpoint: i,
                        })
                    }
                    Location::Interior(i) => {
                        let br = &self.branches[i];
                        (br.sign, br.offset.clone(), br.offset_vec.clone())
                    }
                }
            } else {
                match self.locate_image(&value)? {
                    Location::Breakpoint(j) => {
                        return Ok(Iteration::HitBreakpoint {
                            step: -(step as i64 - 1),
                            breakpoint: j,
                        })
                    }
                    Location::Interior(j) => {
                        let i = self.perm.interval_at_position(j + 1);
                        let br = self.branches[i].inverse();
                        (br.sign, br.offset, br.offset_vec)
                    }
                }
            };
            value = if s > 0 {
                value.add(&offset)
            } else {
                offset.sub(&value)
            };
            for (ke, te) in k.iter_mut().zip(&offset_vec) {
                *ke = (s as i64) * *ke + te;
            }
            sign *= s;
        }
        Ok(Iteration::Orbit(OrbitPoint {
            value,
            iterate: m,
            sign,
            translation: k,
        }))
    }

    /// Right-continuous extension step on [0, b): takes the branch to the
    /// right at breakpoints. Used by the Keane condition.
    pub fn evaluate_right_continuous(&self, x: &SymbolicReal) -> Result<SymbolicReal, IetError> {
        match self.locate(x)? {
            Location::Breakpoint(i) if i < self.n() => {
                Ok(self.branches[i].apply(&self.breakpoints[i]))
            }
            Location::Breakpoint(_) => Err(IetError::OutOfDomain),
            Location::Interior(i) => Ok(self.branches[i].apply(x)),
        }
    }

    /// Forward orbit x, T(x), ..., stopping at the first undefined step;
    /// includes the starting point.
    pub fn forward_orbit(&self, x: &SymbolicReal, depth: usize) -> Vec<SymbolicReal> {
        let mut out = vec![x.clone()];
        let mut cur = x.clone();
        for _ in 0..depth {
            match self.evaluate(&cur) {
                Ok(Eval::Value(v)) => {
                    cur = v.clone();
                    out.push(v);
                }
                _ => break,
            }
        }
        out
    }

    /// Backward orbit x, T^-1(x), ..., stopping when undefined.
    pub fn backward_orbit(&self, x: &SymbolicReal, depth: usize) -> Vec<SymbolicReal> {
        let mut out = vec![x.clone()];
        let mut cur = x.clone();
        for _ in 0..depth {
            match self.evaluate_inverse(&cur) {
                Ok(Eval::Value(v)) => {
                    cur = v.clone();
                    out.push(v);
                }
                _ => break,
            }
        }
        out
    }

    /// Two-sided orbit to the given depth each way; the starting point is
    /// listed once.
    pub fn orbit_points(&self, x: &SymbolicReal, depth: usize) -> Vec<SymbolicReal> {
        let mut out = self.forward_orbit(x, depth);
        out.extend(self.backward_orbit(x, depth).into_iter().skip(1));
        out
    }

    /// Rational point strictly between two exact values, found by refining
    /// enclosures of the endpoints.
    pub fn rational_point_inside(
        &self,
        lo: &SymbolicReal,
        hi: &SymbolicReal,
    ) -> Result<SymbolicReal, IetError> {
        let table = self.table().clone();
        let mut width = Rat::new(1.into(), 16.into());
        for _ in 0..256 {
            let (_, lo_hi) = lo.enclose(&width)?;
            let (hi_lo, _) = hi.enclose(&width)?;
            if lo_hi < hi_lo {
                let mid = (&lo_hi + &hi_lo) / int(2);
                let cand = SymbolicReal::rational(&table, mid);
                if matches!(lo.cmp_exact(&cand)?, Verdict::Less)
                    && matches!(cand.cmp_exact(hi)?, Verdict::Less)
                {
                    return Ok(cand);
                }
            }
            width = width / int(4);
        }
        Err(IetError::Num(NumError::PrecisionExhausted {
            width: crate::rat::rat_str(&width),
        }))
    }
}

/// Builds rational lengths over the given table.
pub fn rational_lengths(table: &Arc<SymbolTable>, values: &[Rat]) -> Vec<SymbolicReal> {
    values
        .iter()
        .map(|r| SymbolicReal::rational(table, r.clone()))
        .collect()
}

/// Multiset equality of domain lengths and image lengths (measure
/// preservation); holds by construction, kept as a checkable invariant.
pub fn measure_preserved(iet: &Iet) -> Result<bool, IetError> {
    let n = iet.n();
    let mut image_lengths: Vec<SymbolicReal> = (0..n)
        .map(|j| iet.image_breakpoints()[j + 1].sub(&iet.image_breakpoints()[j]))
        .collect();
    for l in iet.lengths() {
        let Some(pos) = image_lengths.iter().position(|m| m == l) else {
            return Ok(false);
        };
        image_lengths.swap_remove(pos);
    }
    Ok(image_lengths.is_empty())
}
