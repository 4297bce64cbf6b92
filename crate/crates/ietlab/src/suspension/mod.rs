//! Combinatorial suspension of a circle exchange.
//!
//! The suspended surface is the band S^1 x [0,1] with the top glued to the
//! bottom arc-by-arc through the circle exchange. Every topological
//! conclusion needed here (marked-point classes, hyperbolic sector counts,
//! singularity indices, Euler characteristic, genus, orientability) is
//! determined by the endpoint identifications, so the surface is never
//! meshed: the classes are computed by a union-find closure over the 2n'
//! boundary marked points.

pub mod families;

use crate::iet::{CircleExchange, Iet, IetError};
use crate::numbers::SymbolicReal;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SuspensionError {
    #[error(transparent)]
    Iet(#[from] IetError),
    #[error("identification classes are unbalanced (class with {tops} top / {bottoms} bottom points); upstream bug")]
    UnbalancedClass { tops: usize, bottoms: usize },
    #[error("orientable surface with odd n' - m = {0}; upstream bug")]
    OddEuler(i64),
}

/// One identification class of boundary marked points: i_k top points
/// (c_i, 1) and i_k bottom points (b_j, 0) glued into a single point with
/// 2 i_k hyperbolic sectors and index 1 - i_k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedClass {
    /// 0-based cut indices with (c_i, 1) in the class, ascending.
    pub tops: Vec<usize>,
    /// 0-based image indices with (b_j, 0) in the class, ascending.
    pub bottoms: Vec<usize>,
}

impl MarkedClass {
    /// The number of top (equivalently bottom) points in the class.
    pub fn weight(&self) -> usize {
        self.tops.len()
    }

    pub fn sector_count(&self) -> usize {
        2 * self.weight()
    }

    pub fn index(&self) -> i64 {
        1 - self.weight() as i64
    }
}

/// Topology of the compact suspended surface.
#[derive(Debug, Clone)]
pub struct SuspensionReport {
    pub circle: CircleExchange,
    pub classes: Vec<MarkedClass>,
    pub euler_characteristic: i64,
    pub genus: i64,
    pub orientable: bool,
}

impl SuspensionReport {
    /// Number of marked points m.
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// sector count -> how many classes have it
    pub fn sector_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for c in &self.classes {
            *h.entry(c.sector_count()).or_insert(0) += 1;
        }
        h
    }

    /// Class containing top point i.
    pub fn class_of_top(&self, i: usize) -> usize {
        self.classes
            .iter()
            .position(|c| c.tops.contains(&i))
            .expect("every top point is classified")
    }

    /// Class containing bottom point j.
    pub fn class_of_bottom(&self, j: usize) -> usize {
        self.classes
            .iter()
            .position(|c| c.bottoms.contains(&j))
            .expect("every bottom point is classified")
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let r = self.find(self.parent[x]);
            self.parent[x] = r;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Builds the suspension report of a proper IET: collapse to the circle,
/// close the endpoint identifications, count sectors and indices, apply
/// the genus formula (with n read as the circle exchange's arc count).
pub fn suspend(iet: &Iet) -> Result<SuspensionReport, SuspensionError> {
    let circle = iet.to_circle()?;
    suspend_circle(circle)
}

/// Same, starting from an already-collapsed circle exchange.
pub fn suspend_circle(circle: CircleExchange) -> Result<SuspensionReport, SuspensionError> {
    let np = circle.n_prime();
    // nodes: 0..np are top points (c_i, 1); np..2np are bottom points (b_j, 0)
    let mut uf = UnionFind::new(2 * np);
    for j in 0..np {
        let s = circle.sigma()[j];
        let (top_lo, top_hi) = (j, (j + 1) % np);
        let (bot_lo, bot_hi) = (np + s, np + (s + 1) % np);
        if circle.arc_flips()[j] {
            uf.union(top_hi, bot_lo);
            uf.union(top_lo, bot_hi);
        } else {
            uf.union(top_lo, bot_lo);
            uf.union(top_hi, bot_hi);
        }
    }
    let mut groups: BTreeMap<usize, MarkedClass> = BTreeMap::new();
    for node in 0..2 * np {
        let root = uf.find(node);
        let class = groups.entry(root).or_insert_with(|| MarkedClass {
            tops: Vec::new(),
            bottoms: Vec::new(),
        });
        if node < np {
            class.tops.push(node);
        } else {
            class.bottoms.push(node - np);
        }
    }
    let classes: Vec<MarkedClass> = groups.into_values().collect();
    for c in &classes {
        if c.tops.len() != c.bottoms.len() {
            return Err(SuspensionError::UnbalancedClass {
                tops: c.tops.len(),
                bottoms: c.bottoms.len(),
            });
        }
    }
    let m = classes.len() as i64;
    let np_i = np as i64;
    let euler_characteristic = m - np_i;
    let orientable = !circle.has_flips();
    let genus = if orientable {
        let diff = np_i - m;
        if diff % 2 != 0 {
            return Err(SuspensionError::OddEuler(diff));
        }
        1 + diff / 2
    } else {
        2 + np_i - m
    };
    Ok(SuspensionReport {
        circle,
        classes,
        euler_characteristic,
        genus,
        orientable,
    })
}

/// How a point of the transverse circle sits relative to the singular flow
/// lines of the suspension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrbitClass {
    /// Both semi-orbits dense (for minimal circle exchanges).
    Generic,
    /// Forward semi-orbit runs into the marked class (point is a cut c_i).
    CType { class: usize },
    /// Backward semi-orbit emanates from the marked class (point is an
    /// image label b_j).
    BType { class: usize },
}

/// Classifies a circle point against the report's marked classes; cut
/// points take precedence when a point is both a cut and an image label.
pub fn orbit_trichotomy(
    report: &SuspensionReport,
    point: &SymbolicReal,
) -> Result<OrbitClass, SuspensionError> {
    if let Some(i) = report.circle.cut_index_of(point)? {
        return Ok(OrbitClass::CType {
            class: report.class_of_top(i),
        });
    }
    if let Some(j) = report.circle.image_index_of(point)? {
        return Ok(OrbitClass::BType {
            class: report.class_of_bottom(j),
        });
    }
    Ok(OrbitClass::Generic)
}
