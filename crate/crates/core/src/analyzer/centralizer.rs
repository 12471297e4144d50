use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linsolve::{ExactMatrix, SubspaceBasis};
use crate::maps::BasisIndexing;
use crate::nilmatrix::{s1_element, s2_element, RingContext, UTMatrix};

/// Span of the coordinate vectors of `mats`.
pub fn coordinates_span<'a, I>(ctx: RingContext, mats: I) -> SubspaceBasis
where
    I: IntoIterator<Item = &'a UTMatrix>,
{
    let idx = BasisIndexing::new(ctx);
    SubspaceBasis::span(ctx.spec(), ctx.n(), mats.into_iter().map(|m| idx.coordinates(m)))
        .expect("coordinates have length n")
}

/// `span{A, A^2, ..., A^{r-1}}` for `A = sum a_i e_{i,i+1}` with all `a_i != 0`.
pub fn centralizer_closed_form(a: &UTMatrix) -> Result<SubspaceBasis> {
    if !a.is_full_superdiagonal() {
        return Err(Error::NotSuperdiagonal);
    }
    let ctx = *a.ctx();
    let powers = (1..ctx.r() as u32)
        .map(|t| a.power(t))
        .collect::<Result<Vec<_>>>()?;
    Ok(coordinates_span(ctx, &powers))
}

/// Brute force: the kernel of `X -> [A, X]` on coordinates.
pub fn centralizer_oracle(a: &UTMatrix) -> SubspaceBasis {
    let ctx = *a.ctx();
    let idx = BasisIndexing::new(ctx);
    let n = ctx.n();
    let mut m = ExactMatrix::zeros(ctx.spec(), n, n);
    for k in 0..n {
        let col = idx.coordinates(&a.commutator(&idx.unit(k)).expect("same context"));
        for (row, v) in col.into_iter().enumerate() {
            m.set(row, k, v);
        }
    }
    m.null_space()
}

/// The S1 members used for span checks: for `k = 1..=r`, conjugate `J` by
/// `D_k = diag(k^{(i-1)(i-2)/2})`, which yields the superdiagonal
/// `(1, k, k^2, ..., k^{r-2})`. Distinct `k` give Vandermonde rows, so the
/// family spans the whole superdiagonal. Over `F_p` only distinct nonzero
/// residues are used, so small `p` gives fewer members.
pub fn s1_generic_family(ctx: RingContext) -> Result<Vec<UTMatrix>> {
    let r = ctx.r();
    let mut seen: Vec<Scalar> = Vec::new();
    let mut family = Vec::new();
    for k in 1..=r as i64 {
        let ks = ctx.scalar(k);
        if ks.is_zero() || seen.contains(&ks) {
            continue;
        }
        seen.push(ks);
        let d: Vec<Scalar> = (1..=r)
            .map(|i| {
                let e = ((i - 1) * i.saturating_sub(2) / 2) as u32;
                ctx.spec().from_bigint(&BigInt::from(k).pow(e))
            })
            .collect();
        family.push(s1_element(ctx, &d)?);
    }
    Ok(family)
}

/// Rank of `S1-family ∪ S2` inside `N_r`; equals `n` when the set spans.
pub fn span_s_rank(ctx: RingContext) -> Result<usize> {
    let mut family = s1_generic_family(ctx)?;
    let idx = BasisIndexing::new(ctx);
    for (i, j) in idx.pairs() {
        family.push(s2_element(ctx, i, j)?);
    }
    Ok(coordinates_span(ctx, &family).dimension())
}
