use num_bigint::BigInt;
use rand::Rng;

use super::lattice::RLattice;
use super::order::QuadraticOrder;

/// Entry range of sampled coordinate vectors.
const ENTRY_RANGE: i64 = 3;

fn random_vector<R: Rng>(rng: &mut R, n: usize) -> Vec<BigInt> {
    (0..4 * n).map(|_| BigInt::from(rng.gen_range(-ENTRY_RANGE..=ENTRY_RANGE))).collect()
}

/// The R-span of `rank` random vectors, not saturated.
pub fn random_sublattice<R: Rng>(rng: &mut R, order: &QuadraticOrder, n: usize, rank: usize) -> RLattice {
    assert!(rank <= 2 * n, "rank {rank} exceeds 2n = {}", 2 * n);
    loop {
        let rows: Vec<Vec<BigInt>> = (0..rank).map(|_| random_vector(rng, n)).collect();
        let l = RLattice::from_integer_rows(order, n, &rows);
        if l.rank() == rank {
            return l;
        }
    }
}

/// A summand of random rank in `1..=2n`.
pub fn random_summand<R: Rng>(rng: &mut R, order: &QuadraticOrder, n: usize) -> RLattice {
    let rank = rng.gen_range(1..=2 * n);
    random_sublattice(rng, order, n, rank).saturate().expect("integral")
}

/// An isotropic summand of random rank in `1..=n`, grown one line at a time inside `U^⊥`.
pub fn random_isotropic_summand<R: Rng>(rng: &mut R, order: &QuadraticOrder, n: usize) -> RLattice {
    let rank = rng.gen_range(1..=n);
    let mut u = RLattice::zero(order, n);
    while u.rank() < rank {
        let perp = u.orthogonal_complement().expect("summand");
        let basis = perp.basis();
        let mut v = vec![BigInt::from(0); 4 * n];
        for row in basis {
            let c = BigInt::from(rng.gen_range(-ENTRY_RANGE..=ENTRY_RANGE));
            for (x, b) in v.iter_mut().zip(row) {
                *x += &c * b;
            }
        }
        let grown = u.sum(&RLattice::from_integer_rows(order, n, &[v])).expect("same ambient");
        if grown.rank() == u.rank() + 1 {
            u = grown.saturate().expect("integral");
        }
    }
    u
}
