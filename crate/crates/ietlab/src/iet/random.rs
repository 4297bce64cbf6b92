//! Seeded random instances for property tests and batch experiments.
//!
//! Lengths are built from one fresh square-root symbol per interval, scaled
//! by rationals, so a random instance always has rationally independent
//! lengths and irrational total length.

use super::{Iet, Propriety, SignedPermutation};
use crate::numbers::{SymbolTable, SymbolicReal};
use crate::rat::{Rat, rat};
use rand::Rng;
use std::sync::Arc;

/// Uniform random signed permutation of size n; flips appear with the given
/// probability per interval (resampled if `require_flip` finds none).
pub fn random_signed_permutation<R: Rng>(
    rng: &mut R,
    n: usize,
    flip_probability: f64,
    require_flip: bool,
) -> SignedPermutation {
    loop {
        let mut abs: Vec<i64> = (1..=n as i64).collect();
        for i in (1..n).rev() {
            let j = rng.gen_range(0..=i);
            abs.swap(i, j);
        }
        let entries: Vec<i64> = abs
            .into_iter()
            .map(|a| {
                if rng.gen_bool(flip_probability) {
                    -a
                } else {
                    a
                }
            })
            .collect();
        let p = SignedPermutation::new(entries).expect("shuffled entries are valid");
        if require_flip && !p.has_flips() {
            continue;
        }
        return p;
    }
}

/// Random irreducible flip-free permutation (rejection sampled).
pub fn random_irreducible_standard<R: Rng>(rng: &mut R, n: usize) -> SignedPermutation {
    loop {
        let p = random_signed_permutation(rng, n, 0.0, false);
        if p.is_irreducible() {
            return p;
        }
    }
}

/// n fresh independent lengths, each a rational multiple of a fresh square
/// root, with value roughly uniform in (1/(2n), 3/(2n)).
pub fn random_independent_lengths<R: Rng>(
    table: &Arc<SymbolTable>,
    rng: &mut R,
    n: usize,
    name_prefix: &str,
) -> Vec<SymbolicReal> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let (id, _k) = table.fresh_sqrt(&format!("{name_prefix}{i}"));
        let sym = SymbolicReal::symbol(table, id);
        // rational scale sending the symbol near the random target
        let target_num = rng.gen_range(1i64..=3 * 64);
        let target = Rat::new(target_num.into(), ( 2 * n as i64 * 64).into());
        let approx = sym
            .approx(&rat(1, 1 << 20))
            .expect("sqrt oracles refine unboundedly");
        let scale = target / approx;
        // round the scale to a modest denominator to keep numbers small
        let denom = 1i64 << 16;
        let rounded = Rat::new(
            (&scale * Rat::from_integer(denom.into())).floor().to_integer() + 1,
            denom.into(),
        );
        out.push(sym.scale(&rounded));
    }
    out
}

/// Random IET with the requested flip policy.
pub fn random_iet<R: Rng>(
    table: &Arc<SymbolTable>,
    rng: &mut R,
    n: usize,
    flip_probability: f64,
    name_prefix: &str,
) -> Iet {
    let perm = random_signed_permutation(rng, n, flip_probability, false);
    let lengths = random_independent_lengths(table, rng, n, name_prefix);
    Iet::new(lengths, perm).expect("positive independent lengths")
}

/// Random *proper* IET (rejection sampled over permutations).
pub fn random_proper_iet<R: Rng>(
    table: &Arc<SymbolTable>,
    rng: &mut R,
    n: usize,
    flip_probability: f64,
    name_prefix: &str,
) -> Iet {
    let lengths = random_independent_lengths(table, rng, n, name_prefix);
    loop {
        let perm = random_signed_permutation(rng, n, flip_probability, false);
        let iet = Iet::new(lengths.clone(), perm).expect("positive independent lengths");
        if matches!(iet.is_proper(), Ok(Propriety::Proper)) {
            return iet;
        }
    }
}

/// Random Keane-certified minimal IET: flip-free, irreducible, independent
/// lengths.
pub fn random_minimal_iet<R: Rng>(
    table: &Arc<SymbolTable>,
    rng: &mut R,
    n: usize,
    name_prefix: &str,
) -> Iet {
    let perm = random_irreducible_standard(rng, n);
    let lengths = random_independent_lengths(table, rng, n, name_prefix);
    Iet::new(lengths, perm).expect("positive independent lengths")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iet::KeaneCertificate;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_minimal_instances_certify() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let table = SymbolTable::new(true);
        for round in 0..5 {
            let n = 2 + (round % 4);
            let iet = random_minimal_iet(&table, &mut rng, n, &format!("t{round}_"));
            assert!(matches!(
                iet.keane_certificate(10).unwrap(),
                KeaneCertificate::MinimalByKeane
            ));
        }
    }

    #[test]
    fn random_lengths_are_positive_and_modest() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let table = SymbolTable::new(true);
        let lengths = random_independent_lengths(&table, &mut rng, 6, "p");
        for l in &lengths {
            assert!(l.is_positive_exact().unwrap());
            let (lo, hi) = l.enclose(&rat(1, 1000)).unwrap();
            assert!(lo > rat(0, 1));
            assert!(hi < rat(1, 1)); // each length well below 1
        }
    }
}
