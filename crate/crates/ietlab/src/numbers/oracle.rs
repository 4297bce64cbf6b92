//! Enclosure oracles backing basis symbols.

use crate::rat::{Int, Rat};
use num::integer::Roots;
use num::{One, Signed, Zero};

/// Procedure producing rational enclosures of one real number.
///
/// `Sqrt(k)` refines without bound. `Table` is limited to the resolution the
/// supplied entries reach; requests below that resolution are answered with
/// the finest entry and the caller decides whether that is good enough.
#[derive(Debug, Clone)]
pub enum Oracle {
    /// Square root of a non-square positive integer.
    Sqrt(u64),
    /// User-supplied nested enclosures, coarse to fine. Stored already
    /// intersected, so widths are non-increasing.
    Table(Vec<(Rat, Rat)>),
}

impl Oracle {
    pub fn sqrt(k: u64) -> Result<Self, String> {
        if k == 0 {
            return Err("sqrt oracle needs a positive integer".into());
        }
        let r = k.sqrt();
        if r * r == k {
            return Err(format!("sqrt({k}) is rational; symbols must be irrational"));
        }
        Ok(Oracle::Sqrt(k))
    }

    /// Builds a table oracle, intersecting entries so they are nested.
    pub fn table(entries: Vec<(Rat, Rat)>) -> Result<Self, String> {
        if entries.is_empty() {
            return Err("bisection table needs at least one interval".into());
        }
        let mut nested: Vec<(Rat, Rat)> = Vec::with_capacity(entries.len());
        for (lo, hi) in entries {
            if lo > hi {
                return Err("table interval with lo > hi".into());
            }
            let (lo, hi) = match nested.last() {
                None => (lo, hi),
                Some((plo, phi)) => {
                    let nlo = if &lo > plo { lo } else { plo.clone() };
                    let nhi = if &hi < phi { hi } else { phi.clone() };
                    if nlo > nhi {
                        return Err("table intervals have empty intersection".into());
                    }
                    (nlo, nhi)
                }
            };
            nested.push((lo, hi));
        }
        Ok(Oracle::Table(nested))
    }

    /// Coarsest enclosure, used as the declared range when none is given.
    pub fn initial(&self) -> (Rat, Rat) {
        match self {
            Oracle::Sqrt(k) => {
                let r = Int::from(k.sqrt());
                (
                    Rat::from_integer(r.clone()),
                    Rat::from_integer(r + Int::one()),
                )
            }
            Oracle::Table(entries) => entries[0].clone(),
        }
    }

    /// Enclosure of width `<= width` when the oracle can reach it, otherwise
    /// the finest available interval (only for exhausted tables).
    pub fn refine(&self, width: &Rat) -> (Rat, Rat) {
        debug_assert!(width.is_positive());
        match self {
            Oracle::Sqrt(k) => {
                // Denominator q = 2^t with 1/q <= width, then
                // isqrt(k q^2)/q encloses sqrt(k) with width 1/q.
                let mut q = Int::one();
                let two = Int::from(2);
                while &Rat::new(Int::one(), q.clone()) > width {
                    q = &q * &two;
                }
                let n = Int::from(*k) * &q * &q;
                let p = n.sqrt();
                (
                    Rat::new(p.clone(), q.clone()),
                    Rat::new(p + Int::one(), q),
                )
            }
            Oracle::Table(entries) => {
                for e in entries {
                    if &(&e.1 - &e.0) <= width {
                        return e.clone();
                    }
                }
                entries.last().unwrap().clone()
            }
        }
    }

    /// Whether the oracle can certify enclosures of arbitrarily small width.
    pub fn unbounded(&self) -> bool {
        matches!(self, Oracle::Sqrt(_))
    }

    /// Serialized form used in symbol-table files.
    pub fn describe(&self) -> String {
        match self {
            Oracle::Sqrt(k) => format!("sqrt({k})"),
            Oracle::Table(entries) => {
                let (lo, hi) = entries.last().unwrap();
                format!("{}..{}", lo, hi)
            }
        }
    }
}

/// Intersection of two enclosures of the same value. Empty intersections
/// signal a lying oracle and are reported as a poisoned interval.
pub fn intersect(a: &(Rat, Rat), b: &(Rat, Rat)) -> (Rat, Rat) {
    let lo = if a.0 > b.0 { a.0.clone() } else { b.0.clone() };
    let hi = if a.1 < b.1 { a.1.clone() } else { b.1.clone() };
    (lo, hi)
}

pub fn width(e: &(Rat, Rat)) -> Rat {
    &e.1 - &e.0
}

pub fn is_empty(e: &(Rat, Rat)) -> bool {
    e.0 > e.1
}

/// True when the interval certainly excludes zero.
pub fn sign_of(e: &(Rat, Rat)) -> Option<i8> {
    if e.0.is_positive() {
        Some(1)
    } else if e.1.is_negative() {
        Some(-1)
    } else if e.0.is_zero() && e.1.is_zero() {
        Some(0)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn sqrt_oracle_refines() {
        let o = Oracle::sqrt(5).unwrap();
        let (lo, hi) = o.refine(&rat(1, 1000));
        assert!(&hi - &lo <= rat(1, 1000));
        // 2.236 < sqrt(5) < 2.2361
        assert!(lo < rat(22361, 10000));
        assert!(hi > rat(2236, 1000));
        assert!(&lo * &lo < rat(5, 1));
        assert!(&hi * &hi > rat(5, 1));
    }

    #[test]
    fn square_rejected() {
        assert!(Oracle::sqrt(9).is_err());
        assert!(Oracle::sqrt(0).is_err());
    }

    #[test]
    fn table_nesting() {
        let o = Oracle::table(vec![
            (rat(61, 100), rat(62, 100)),
            (rat(617, 1000), rat(619, 1000)),
        ])
        .unwrap();
        let e = o.refine(&rat(1, 100));
        assert!(width(&e) <= rat(1, 100));
        // exhausted request returns the finest entry
        let e2 = o.refine(&rat(1, 100000));
        assert_eq!(e2, (rat(617, 1000), rat(619, 1000)));
        assert!(Oracle::table(vec![(rat(1, 2), rat(1, 3))]).is_err());
        assert!(Oracle::table(vec![
            (rat(0, 1), rat(1, 4)),
            (rat(1, 2), rat(1, 1)),
        ])
        .is_err());
    }
}
