use serde::Serialize;

use crate::analyzer::centralizer::coordinates_span;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linsolve::ExactMatrix;
use crate::maps::{BasisIndexing, MapOnN};
use crate::nilmatrix::{shift_matrix, w1, w2, RingContext, UTMatrix};

/// Does `f(A)` lie in `span{A, ..., A^{r-3}} + Omega`?
pub fn lemma2_form_check(f: &MapOnN, a: &UTMatrix) -> Result<bool> {
    let ctx = *f.ctx();
    ctx.ensure_same(a.ctx())?;
    if ctx.r() < 4 {
        return Err(Error::RankTooSmall {
            required: 4,
            r: ctx.r(),
        });
    }
    if !f.is_linear() {
        return Err(Error::AffineMap);
    }
    if !a.is_full_superdiagonal() {
        return Err(Error::NotSuperdiagonal);
    }
    let r = ctx.r();
    let mut gens = (1..=(r - 3) as u32)
        .map(|t| a.power(t))
        .collect::<Result<Vec<_>>>()?;
    for (i, j) in ctx.omega_slots() {
        gens.push(UTMatrix::unit(ctx, i, j)?);
    }
    let space = coordinates_span(ctx, &gens);
    let image = f.apply(a)?;
    space.contains_vector(&BasisIndexing::new(ctx).coordinates(&image))
}

/// One entry equation `gamma * rj = alpha * w1 + beta * w2` at `slot`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoefficientEquation {
    pub slot: (usize, usize),
    pub rj_entry: Scalar,
    pub w1_entry: Scalar,
    pub w2_entry: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoefficientSystemResult {
    pub r: usize,
    pub t: usize,
    pub equations: Vec<CoefficientEquation>,
    /// Dimension of the solution space in `(alpha, beta, gamma)`.
    pub solution_dimension: usize,
    /// Every solution has `alpha = beta = 0`.
    pub forced_trivial: bool,
}

/// Builds the entry equations comparing `(rJ)^t`, `W1^t` and `W2^t` at slots
/// `(1,1+t)`, `(2,2+t)` and `(r-t,r)`, with every entry taken from a direct
/// matrix power, and solves them exactly over `Q`.
pub fn lemma3_coefficient_system(r: usize, t: usize) -> Result<CoefficientSystemResult> {
    if r < 5 {
        return Err(Error::RankTooSmall { required: 5, r });
    }
    if !(1 < t && t + 2 < r) {
        return Err(Error::OutOfRange(format!("need 1 < t < r-2, got r={r}, t={t}")));
    }
    let ctx = RingContext::new(r, FieldSpec::Rationals)?;
    let rj = shift_matrix(ctx).scale(&ctx.scalar(r as i64)).power(t as u32)?;
    let w1t = w1(ctx).power(t as u32)?;
    let w2t = w2(ctx).power(t as u32)?;
    let slots = [(1, 1 + t), (2, 2 + t), (r - t, r)];
    let equations: Vec<CoefficientEquation> = slots
        .iter()
        .map(|&(i, j)| CoefficientEquation {
            slot: (i, j),
            rj_entry: rj.get(i, j),
            w1_entry: w1t.get(i, j),
            w2_entry: w2t.get(i, j),
        })
        .collect();
    // unknowns ordered (alpha, beta, gamma): alpha*w1 + beta*w2 - gamma*rj = 0
    let rows = equations
        .iter()
        .map(|e| vec![e.w1_entry.clone(), e.w2_entry.clone(), -&e.rj_entry])
        .collect();
    let m = ExactMatrix::from_rows(ctx.spec(), 3, rows)?;
    let sols = m.null_space();
    let forced_trivial = sols.vectors().iter().all(|v| v[0].is_zero() && v[1].is_zero());
    Ok(CoefficientSystemResult {
        r,
        t,
        equations,
        solution_dimension: sols.dimension(),
        forced_trivial,
    })
}
