//! Exact representation and decidable comparison of the reals the rest of
//! the crate computes with.
//!
//! A [`SymbolicReal`] is a rational-affine combination over declared
//! irrational basis symbols. Two values over a table that declares rational
//! independence are equal exactly when their canonical forms coincide, so
//! equality is a structural check; order is decided by refining rational
//! enclosures of the difference until zero is excluded.

pub mod kernel;
pub mod oracle;

use crate::rat::{rat_str, Int, Rat};
use num::{One, Signed, Zero};
use oracle::Oracle;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex, RwLock};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymbolId(u32);

#[derive(Debug, Error)]
pub enum NumError {
    #[error("unknown symbol (id {0})")]
    UnknownSymbol(u32),
    #[error("symbol table does not declare rational independence; equality cannot be certified")]
    IndependenceNotDeclared,
    #[error("comparison undecided at enclosure width {width}; oracle precision exhausted")]
    PrecisionExhausted { width: String },
    #[error("symbol `{0}` already registered")]
    DuplicateSymbol(String),
    #[error("bad oracle: {0}")]
    BadOracle(String),
}

struct SymbolState {
    name: String,
    oracle: Oracle,
    declared_range: (Rat, Rat),
    /// Best enclosure seen so far; only ever shrinks.
    cache: Mutex<(Rat, Rat)>,
}

/// Registry of basis symbols. Values are immutable once created; the table
/// itself only grows, so symbol ids stay valid for the table's lifetime.
pub struct SymbolTable {
    symbols: RwLock<Vec<Arc<SymbolState>>>,
    independent: bool,
}

impl fmt::Debug for SymbolTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let syms = self.symbols.read().unwrap();
        write!(f, "SymbolTable({} symbols)", syms.len())
    }
}

impl SymbolTable {
    pub fn new(independent: bool) -> Arc<Self> {
        Arc::new(SymbolTable {
            symbols: RwLock::new(Vec::new()),
            independent,
        })
    }

    pub fn independence_declared(&self) -> bool {
        self.independent
    }

    pub fn len(&self) -> usize {
        self.symbols.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn register(&self, name: &str, oracle: Oracle) -> Result<SymbolId, NumError> {
        self.register_ranged(name, oracle, None)
    }

    /// Registers a symbol with an explicitly declared range. The range is
    /// intersected with the oracle's coarsest enclosure.
    pub fn register_ranged(
        &self,
        name: &str,
        oracle: Oracle,
        declared_range: Option<(Rat, Rat)>,
    ) -> Result<SymbolId, NumError> {
        let mut syms = self.symbols.write().unwrap();
        if syms.iter().any(|s| s.name == name) {
            return Err(NumError::DuplicateSymbol(name.to_string()));
        }
        let base = oracle.initial();
        let range = match declared_range {
            None => base,
            Some(r) => {
                let r = oracle::intersect(&base, &r);
                if oracle::is_empty(&r) {
                    return Err(NumError::BadOracle(format!(
                        "declared range of `{name}` excludes the oracle value"
                    )));
                }
                r
            }
        };
        let id = SymbolId(syms.len() as u32);
        syms.push(Arc::new(SymbolState {
            name: name.to_string(),
            oracle,
            declared_range: range.clone(),
            cache: Mutex::new(range),
        }));
        Ok(id)
    }

    pub fn register_sqrt(&self, name: &str, k: u64) -> Result<SymbolId, NumError> {
        let o = Oracle::sqrt(k).map_err(NumError::BadOracle)?;
        self.register(name, o)
    }

    /// Allocates the next squarefree non-square integer whose root is not
    /// yet registered, guaranteeing independence from all existing sqrt
    /// symbols. Returns the new id and the chosen radicand.
    pub fn fresh_sqrt(&self, name_hint: &str) -> (SymbolId, u64) {
        let used: Vec<u64> = {
            let syms = self.symbols.read().unwrap();
            syms.iter()
                .filter_map(|s| match s.oracle {
                    Oracle::Sqrt(k) => Some(k),
                    _ => None,
                })
                .collect()
        };
        let mut k = 2u64;
        loop {
            if is_squarefree(k) && !is_square(k) && !used.contains(&k) {
                let name = self.unique_name(name_hint, k);
                if let Ok(id) = self.register_sqrt(&name, k) {
                    return (id, k);
                }
            }
            k += 1;
        }
    }

    fn unique_name(&self, hint: &str, k: u64) -> String {
        let base = format!("{hint}_r{k}");
        let syms = self.symbols.read().unwrap();
        if !syms.iter().any(|s| s.name == base) {
            return base;
        }
        let mut i = 2usize;
        loop {
            let cand = format!("{base}_{i}");
            if !syms.iter().any(|s| s.name == cand) {
                return cand;
            }
            i += 1;
        }
    }

    pub fn lookup(&self, name: &str) -> Option<SymbolId> {
        let syms = self.symbols.read().unwrap();
        syms.iter()
            .position(|s| s.name == name)
            .map(|i| SymbolId(i as u32))
    }

    pub fn name_of(&self, id: SymbolId) -> Result<String, NumError> {
        let syms = self.symbols.read().unwrap();
        syms.get(id.0 as usize)
            .map(|s| s.name.clone())
            .ok_or(NumError::UnknownSymbol(id.0))
    }

    pub fn oracle_of(&self, id: SymbolId) -> Result<Oracle, NumError> {
        let syms = self.symbols.read().unwrap();
        syms.get(id.0 as usize)
            .map(|s| s.oracle.clone())
            .ok_or(NumError::UnknownSymbol(id.0))
    }

    pub fn declared_range(&self, id: SymbolId) -> Result<(Rat, Rat), NumError> {
        let syms = self.symbols.read().unwrap();
        syms.get(id.0 as usize)
            .map(|s| s.declared_range.clone())
            .ok_or(NumError::UnknownSymbol(id.0))
    }

    pub fn symbol_names(&self) -> Vec<String> {
        let syms = self.symbols.read().unwrap();
        syms.iter().map(|s| s.name.clone()).collect()
    }

    /// Enclosure of a single symbol with width `<= width` when the oracle
    /// allows, intersected with everything seen before (so enclosures are
    /// nested over time, which makes refinement observably monotone).
    pub fn symbol_enclosure(&self, id: SymbolId, width: &Rat) -> Result<(Rat, Rat), NumError> {
        let state = {
            let syms = self.symbols.read().unwrap();
            syms.get(id.0 as usize)
                .cloned()
                .ok_or(NumError::UnknownSymbol(id.0))?
        };
        let mut cache = state.cache.lock().unwrap();
        if &oracle::width(&cache) <= width {
            return Ok(cache.clone());
        }
        let fresh = state.oracle.refine(width);
        let merged = oracle::intersect(&cache, &fresh);
        if oracle::is_empty(&merged) {
            return Err(NumError::BadOracle(format!(
                "oracle for `{}` produced disjoint enclosures",
                state.name
            )));
        }
        *cache = merged.clone();
        Ok(merged)
    }
}

fn is_square(k: u64) -> bool {
    let r = (k as f64).sqrt() as u64;
    (r.saturating_sub(1)..=r + 1).any(|x| x * x == k)
}

fn is_squarefree(k: u64) -> bool {
    let mut n = k;
    let mut d = 2u64;
    while d * d <= n {
        if n % (d * d) == 0 {
            return false;
        }
        while n % d == 0 {
            n /= d;
        }
        d += 1;
    }
    true
}

/// Exact rational-affine combination over the basis symbols of one table.
#[derive(Clone)]
pub struct SymbolicReal {
    table: Arc<SymbolTable>,
    constant: Rat,
    coeffs: BTreeMap<SymbolId, Rat>,
}

impl SymbolicReal {
    pub fn rational(table: &Arc<SymbolTable>, value: Rat) -> Self {
        SymbolicReal {
            table: table.clone(),
            constant: value,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn zero(table: &Arc<SymbolTable>) -> Self {
        Self::rational(table, Rat::zero())
    }

    pub fn symbol(table: &Arc<SymbolTable>, id: SymbolId) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(id, Rat::one());
        SymbolicReal {
            table: table.clone(),
            constant: Rat::zero(),
            coeffs,
        }
    }

    pub fn affine(table: &Arc<SymbolTable>, constant: Rat, terms: &[(SymbolId, Rat)]) -> Self {
        let mut coeffs = BTreeMap::new();
        for (id, c) in terms {
            if !c.is_zero() {
                let e = coeffs.entry(*id).or_insert_with(Rat::zero);
                *e += c;
            }
        }
        coeffs.retain(|_, c: &mut Rat| !c.is_zero());
        SymbolicReal {
            table: table.clone(),
            constant,
            coeffs,
        }
    }

    pub fn table(&self) -> &Arc<SymbolTable> {
        &self.table
    }

    pub fn constant_part(&self) -> &Rat {
        &self.constant
    }

    pub fn coefficients(&self) -> impl Iterator<Item = (SymbolId, &Rat)> {
        self.coeffs.iter().map(|(id, c)| (*id, c))
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        self.coeffs.is_empty().then_some(&self.constant)
    }

    pub fn mentions(&self, id: SymbolId) -> bool {
        self.coeffs.contains_key(&id)
    }

    fn same_table(&self, other: &SymbolicReal) {
        assert!(
            Arc::ptr_eq(&self.table, &other.table),
            "symbolic reals from different symbol tables cannot be combined"
        );
    }

    pub fn add(&self, other: &SymbolicReal) -> SymbolicReal {
        self.same_table(other);
        let mut out = self.clone();
        out.constant += &other.constant;
        for (id, c) in &other.coeffs {
            let e = out.coeffs.entry(*id).or_insert_with(Rat::zero);
            *e += c;
        }
        out.coeffs.retain(|_, c| !c.is_zero());
        out
    }

    pub fn sub(&self, other: &SymbolicReal) -> SymbolicReal {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SymbolicReal {
        let mut out = self.clone();
        out.constant = -out.constant;
        for c in out.coeffs.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn scale(&self, by: &Rat) -> SymbolicReal {
        if by.is_zero() {
            return SymbolicReal::rational(&self.table, Rat::zero());
        }
        let mut out = self.clone();
        out.constant *= by;
        for c in out.coeffs.values_mut() {
            *c *= by;
        }
        out
    }

    pub fn add_rat(&self, r: &Rat) -> SymbolicReal {
        let mut out = self.clone();
        out.constant += r;
        out
    }

    /// Rational interval containing the value, of width `<= width` whenever
    /// every involved oracle can refine that far. Smaller requests never
    /// produce wider intervals.
    pub fn enclose(&self, width: &Rat) -> Result<(Rat, Rat), NumError> {
        assert!(width.is_positive(), "enclosure width must be positive");
        if self.coeffs.is_empty() {
            return Ok((self.constant.clone(), self.constant.clone()));
        }
        let m = Rat::from_integer(Int::from(self.coeffs.len() as u64));
        let mut lo = self.constant.clone();
        let mut hi = self.constant.clone();
        for (id, c) in &self.coeffs {
            let per = width / (&m * c.abs());
            let (slo, shi) = self.table.symbol_enclosure(*id, &per)?;
            if c.is_positive() {
                lo += c * &slo;
                hi += c * &shi;
            } else {
                lo += c * &shi;
                hi += c * &slo;
            }
        }
        Ok((lo, hi))
    }

    /// Total order verdict. Equality is canonical-form identity and is
    /// conditional on the table's declared independence; strict order is
    /// decided by enclosure refinement.
    pub fn cmp_exact(&self, other: &SymbolicReal) -> Result<Verdict, NumError> {
        self.same_table(other);
        if self.constant == other.constant && self.coeffs == other.coeffs {
            if !self.table.independent {
                return Err(NumError::IndependenceNotDeclared);
            }
            return Ok(Verdict::Equal);
        }
        let diff = self.sub(other);
        if let Some(r) = diff.as_rational() {
            return Ok(if r.is_positive() {
                Verdict::Greater
            } else {
                Verdict::Less
            });
        }
        let mut width = Rat::one();
        let four = Rat::from_integer(Int::from(4));
        for _ in 0..512 {
            let e = diff.enclose(&width)?;
            match oracle::sign_of(&e) {
                Some(1) => return Ok(Verdict::Greater),
                Some(-1) => return Ok(Verdict::Less),
                _ => {}
            }
            // A stalled interval means some table oracle is exhausted.
            if oracle::width(&e) > &width * &four {
                return Err(NumError::PrecisionExhausted {
                    width: rat_str(&oracle::width(&e)),
                });
            }
            width = width / &four;
        }
        Err(NumError::PrecisionExhausted {
            width: rat_str(&width),
        })
    }

    pub fn lt(&self, other: &SymbolicReal) -> Result<bool, NumError> {
        Ok(matches!(self.cmp_exact(other)?, Verdict::Less))
    }

    pub fn le(&self, other: &SymbolicReal) -> Result<bool, NumError> {
        Ok(!matches!(self.cmp_exact(other)?, Verdict::Greater))
    }

    pub fn gt(&self, other: &SymbolicReal) -> Result<bool, NumError> {
        Ok(matches!(self.cmp_exact(other)?, Verdict::Greater))
    }

    pub fn ge(&self, other: &SymbolicReal) -> Result<bool, NumError> {
        Ok(!matches!(self.cmp_exact(other)?, Verdict::Less))
    }

    pub fn is_positive_exact(&self) -> Result<bool, NumError> {
        self.gt(&SymbolicReal::zero(&self.table))
    }

    /// Midpoint of an enclosure at the requested width; handy for picking
    /// rational sample points, never used for certificates.
    pub fn approx(&self, width: &Rat) -> Result<Rat, NumError> {
        let (lo, hi) = self.enclose(width)?;
        Ok((lo + hi) / Rat::from_integer(Int::from(2)))
    }

    /// Expression rendering, e.g. `-1/2 + 3/10*s5`.
    pub fn expr(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        if !self.constant.is_zero() || self.coeffs.is_empty() {
            parts.push(rat_str(&self.constant));
        }
        for (id, c) in &self.coeffs {
            let name = self
                .table
                .name_of(*id)
                .unwrap_or_else(|_| format!("?{}", id.0));
            parts.push(format!("{}*{}", rat_str(c), name));
        }
        parts.join(" + ")
    }
}

impl fmt::Debug for SymbolicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymbolicReal({})", self.expr())
    }
}

impl fmt::Display for SymbolicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.expr())
    }
}

/// Structural canonical-form equality; mathematically exact under the
/// declared-independence hypothesis.
impl PartialEq for SymbolicReal {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.table, &other.table)
            && self.constant == other.constant
            && self.coeffs == other.coeffs
    }
}

impl Eq for SymbolicReal {}

impl std::hash::Hash for SymbolicReal {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.constant.hash(state);
        for (id, c) in &self.coeffs {
            id.hash(state);
            c.hash(state);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Less,
    Equal,
    Greater,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Independence {
    Independent,
    Dependent { witness: Vec<Int> },
}

/// Checks rational independence in the inhomogeneous sense: dependent when
/// some nonzero integer vector n makes sum n_i x_i rational. Constant parts
/// are irrelevant, so the certificate is a kernel vector of the coefficient
/// matrix.
pub fn rational_independence_check(xs: &[SymbolicReal]) -> Result<Independence, NumError> {
    independence_over(xs, false)
}

/// Homogeneous variant: dependent when some nonzero integer vector makes
/// sum n_i x_i exactly zero. This is the hypothesis minimality certificates
/// need; it is weaker than the inhomogeneous check.
pub fn homogeneous_independence_check(xs: &[SymbolicReal]) -> Result<Independence, NumError> {
    independence_over(xs, true)
}

fn independence_over(xs: &[SymbolicReal], include_constants: bool) -> Result<Independence, NumError> {
    assert!(!xs.is_empty(), "independence check needs at least one value");
    let table = xs[0].table.clone();
    if !table.independence_declared() {
        return Err(NumError::IndependenceNotDeclared);
    }
    for x in xs {
        assert!(
            Arc::ptr_eq(&x.table, &table),
            "independence check across different symbol tables"
        );
    }
    let mut ids: Vec<SymbolId> = Vec::new();
    for x in xs {
        for (id, _) in x.coefficients() {
            if !ids.contains(&id) {
                ids.push(id);
            }
        }
    }
    ids.sort();
    let rows: Vec<Vec<Rat>> = xs
        .iter()
        .map(|x| {
            let mut row: Vec<Rat> = ids
                .iter()
                .map(|id| x.coeffs.get(id).cloned().unwrap_or_else(Rat::zero))
                .collect();
            if include_constants {
                row.push(x.constant.clone());
            }
            row
        })
        .collect();
    Ok(match kernel::integer_kernel_vector(&rows) {
        Some(witness) => Independence::Dependent { witness },
        None => Independence::Independent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    fn table_with_golden() -> (Arc<SymbolTable>, SymbolicReal) {
        let t = SymbolTable::new(true);
        let s5 = t.register_sqrt("s5", 5).unwrap();
        // g = (sqrt(5) - 1)/2, the reciprocal golden ratio
        let g = SymbolicReal::affine(&t, rat(-1, 2), &[(s5, rat(1, 2))]);
        (t, g)
    }

    #[test]
    fn compare_identical_forms() {
        let (t, g) = table_with_golden();
        assert_eq!(g.cmp_exact(&g).unwrap(), Verdict::Equal);
        let half_plus_g = g.add_rat(&rat(1, 2));
        let g_plus_half = SymbolicReal::rational(&t, rat(1, 2)).add(&g);
        assert_eq!(half_plus_g.cmp_exact(&g_plus_half).unwrap(), Verdict::Equal);
    }

    #[test]
    fn compare_against_rational() {
        // symbol enclosed in [0.61, 0.62] is below 5/8
        let t = SymbolTable::new(true);
        let id = t
            .register(
                "g",
                Oracle::table(vec![(rat(61, 100), rat(62, 100))]).unwrap(),
            )
            .unwrap();
        let g = SymbolicReal::symbol(&t, id);
        let fiveeighths = SymbolicReal::rational(&t, rat(5, 8));
        assert_eq!(g.cmp_exact(&fiveeighths).unwrap(), Verdict::Less);
        // and the golden symbol, needing real refinement
        let (t2, g2) = table_with_golden();
        let y = SymbolicReal::rational(&t2, rat(5, 8));
        assert_eq!(g2.cmp_exact(&y).unwrap(), Verdict::Less);
        assert_eq!(y.cmp_exact(&g2).unwrap(), Verdict::Greater);
        let _ = t;
    }

    #[test]
    fn enclose_rational_is_exact() {
        let t = SymbolTable::new(true);
        let x = SymbolicReal::rational(&t, rat(3, 4));
        let (lo, hi) = x.enclose(&rat(1, 1000000)).unwrap();
        assert_eq!(lo, rat(3, 4));
        assert_eq!(hi, rat(3, 4));
    }

    #[test]
    fn enclose_canonical_collapse() {
        let (_, g) = table_with_golden();
        let twice_minus = g.scale(&int(2)).sub(&g);
        assert_eq!(twice_minus, g);
        let w = rat(1, 100);
        let e1 = twice_minus.enclose(&w).unwrap();
        let e2 = g.enclose(&w).unwrap();
        assert!(&e1.1 - &e1.0 <= w);
        assert_eq!(e1, e2);
    }

    #[test]
    fn enclosures_nest_under_refinement() {
        let (_, g) = table_with_golden();
        let coarse = g.enclose(&rat(1, 10)).unwrap();
        let fine = g.enclose(&rat(1, 100000)).unwrap();
        let mid = (&fine.0 + &fine.1) / int(2);
        assert!(coarse.0 <= mid && mid <= coarse.1);
        // repeat coarse after fine: must not widen past the cache
        let coarse2 = g.enclose(&rat(1, 10)).unwrap();
        assert!(coarse2.0 >= coarse.0 && coarse2.1 <= coarse.1);
    }

    #[test]
    fn independence_basic_cases() {
        let (t, g) = table_with_golden();
        // a lone rational is dependent with witness (1)
        let half = SymbolicReal::rational(&t, rat(1, 2));
        match rational_independence_check(&[half]).unwrap() {
            Independence::Dependent { witness } => assert_eq!(witness, vec![Int::from(1)]),
            _ => panic!("rational constant must be dependent"),
        }
        // two distinct basis symbols are independent
        let s3 = t.register_sqrt("s3", 3).unwrap();
        let h = SymbolicReal::symbol(&t, s3);
        assert_eq!(
            rational_independence_check(&[g.clone(), h]).unwrap(),
            Independence::Independent
        );
        // g and 2g + 1/3 are dependent with witness (2, -1)
        let y = g.scale(&int(2)).add_rat(&rat(1, 3));
        match rational_independence_check(&[g.clone(), y]).unwrap() {
            Independence::Dependent { witness } => {
                assert_eq!(witness, vec![Int::from(2), Int::from(-1)])
            }
            _ => panic!("expected dependence"),
        }
    }

    #[test]
    fn homogeneous_vs_inhomogeneous() {
        let (t, g) = table_with_golden();
        let one_minus_g = SymbolicReal::rational(&t, rat(1, 1)).sub(&g);
        // (g, 1-g) sums to 1: inhomogeneously dependent...
        match rational_independence_check(&[g.clone(), one_minus_g.clone()]).unwrap() {
            Independence::Dependent { witness } => {
                assert_eq!(witness, vec![Int::from(1), Int::from(1)])
            }
            _ => panic!("lengths summing to 1 are dependent"),
        }
        // ...but homogeneously independent (no integer combo is exactly 0)
        assert_eq!(
            homogeneous_independence_check(&[g, one_minus_g]).unwrap(),
            Independence::Independent
        );
    }

    #[test]
    fn undeclared_table_cannot_certify_equality() {
        let t = SymbolTable::new(false);
        let id = t.register_sqrt("s2", 2).unwrap();
        let x = SymbolicReal::symbol(&t, id);
        assert!(matches!(
            x.cmp_exact(&x),
            Err(NumError::IndependenceNotDeclared)
        ));
        // strict order still decidable without the declaration
        let y = SymbolicReal::rational(&t, rat(3, 2));
        assert_eq!(x.cmp_exact(&y).unwrap(), Verdict::Less);
    }

    #[test]
    fn exhausted_table_oracle_reports_precision() {
        let t = SymbolTable::new(true);
        let id = t
            .register(
                "u",
                Oracle::table(vec![(rat(1, 4), rat(1, 2))]).unwrap(),
            )
            .unwrap();
        let u = SymbolicReal::symbol(&t, id);
        let probe = SymbolicReal::rational(&t, rat(3, 8));
        assert!(matches!(
            u.cmp_exact(&probe),
            Err(NumError::PrecisionExhausted { .. })
        ));
    }

    #[test]
    fn fresh_sqrt_skips_used_and_nonsquarefree() {
        let t = SymbolTable::new(true);
        t.register_sqrt("a", 2).unwrap();
        let (_, k1) = t.fresh_sqrt("x");
        assert_eq!(k1, 3);
        let (_, k2) = t.fresh_sqrt("x");
        assert_eq!(k2, 5); // skips 4 (square) and the used 2, 3
        let (_, k3) = t.fresh_sqrt("x");
        assert_eq!(k3, 6); // 6 is squarefree
        let (_, k4) = t.fresh_sqrt("x");
        assert_eq!(k4, 7); // skips nothing; 8 = 2^3 would be rejected next
        let (_, k5) = t.fresh_sqrt("x");
        assert_eq!(k5, 10); // skips 8 (not squarefree) and 9 (square)
    }

    #[test]
    fn vector_space_axioms_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let t = SymbolTable::new(true);
        let ids = [
            t.register_sqrt("s2", 2).unwrap(),
            t.register_sqrt("s3", 3).unwrap(),
            t.register_sqrt("s5", 5).unwrap(),
        ];
        let random_val = |rng: &mut rand_chacha::ChaCha8Rng| {
            let c = rat(rng.gen_range(-20i64..20), rng.gen_range(1i64..9));
            let terms: Vec<(SymbolId, Rat)> = ids
                .iter()
                .map(|id| (*id, rat(rng.gen_range(-9i64..9), rng.gen_range(1i64..7))))
                .collect();
            SymbolicReal::affine(&t, c, &terms)
        };
        for _ in 0..200 {
            let x = random_val(&mut rng);
            let y = random_val(&mut rng);
            let z = random_val(&mut rng);
            assert_eq!(x.add(&y), y.add(&x));
            assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
            assert_eq!(x.sub(&x), SymbolicReal::zero(&t));
            let a = rat(3, 7);
            assert_eq!(x.add(&y).scale(&a), x.scale(&a).add(&y.scale(&a)));
            assert_eq!(x.scale(&rat(0, 1)), SymbolicReal::zero(&t));
        }
    }
}
