//! Seeded random objects for property checks. Coefficients are drawn
//! uniformly from `-9..=9` and mapped into the field.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::Scalar;
use crate::maps::{MapOnN, OmegaTriple};
use crate::nilmatrix::{InvTriMatrix, RingContext, UTMatrix};

pub const COEFF_RANGE: std::ops::RangeInclusive<i64> = -9..=9;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn scalar<R: Rng>(ctx: &RingContext, rng: &mut R) -> Scalar {
    ctx.scalar(rng.gen_range(COEFF_RANGE))
}

/// Nonzero in the field (rejection sampling, so residues that vanish mod p
/// are redrawn too).
pub fn nonzero_scalar<R: Rng>(ctx: &RingContext, rng: &mut R) -> Scalar {
    loop {
        let s = scalar(ctx, rng);
        if !s.is_zero() {
            return s;
        }
    }
}

pub fn vector<R: Rng>(ctx: &RingContext, len: usize, rng: &mut R) -> Vec<Scalar> {
    (0..len).map(|_| scalar(ctx, rng)).collect()
}

pub fn ut_matrix<R: Rng>(ctx: &RingContext, rng: &mut R) -> UTMatrix {
    let r = ctx.r();
    let entries: Vec<_> = (1..r)
        .flat_map(|i| (i + 1..=r).map(move |j| (i, j)))
        .map(|(i, j)| (i, j, scalar(ctx, rng)))
        .collect();
    UTMatrix::from_entries(*ctx, entries).expect("valid positions")
}

/// `sum a_i e_{i,i+1}` with every `a_i` nonzero (the shape of an S1 element).
pub fn s1_shaped<R: Rng>(ctx: &RingContext, rng: &mut R) -> UTMatrix {
    let vals: Vec<_> = (1..ctx.r()).map(|_| nonzero_scalar(ctx, rng)).collect();
    UTMatrix::superdiagonal(*ctx, &vals).expect("r-1 values")
}

pub fn inv_tri<R: Rng>(ctx: &RingContext, rng: &mut R) -> InvTriMatrix {
    let r = ctx.r();
    let mut entries = Vec::new();
    for i in 1..=r {
        entries.push((i, i, nonzero_scalar(ctx, rng)));
        for j in i + 1..=r {
            entries.push((i, j, scalar(ctx, rng)));
        }
    }
    InvTriMatrix::from_entries(*ctx, entries).expect("nonzero diagonal")
}

pub fn linear_map<R: Rng>(ctx: &RingContext, rng: &mut R) -> MapOnN {
    let n = ctx.n();
    let columns = (0..n).map(|_| vector(ctx, n, rng)).collect();
    MapOnN::from_columns(*ctx, columns, None).expect("n x n coefficients")
}

pub fn omega_triple<R: Rng>(ctx: &RingContext, rng: &mut R) -> OmegaTriple {
    let n = ctx.n();
    OmegaTriple {
        a: vector(ctx, n, rng),
        b: vector(ctx, n, rng),
        c: vector(ctx, n, rng),
    }
}
