use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::maps::{g_map, zeta_map, MapOnN};
use crate::nilmatrix::RingContext;

/// `f = lambda * id + mu` with `mu` taking values in Omega.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CentralizingDecomposition {
    pub lambda: Scalar,
    pub mu: MapOnN,
}

impl CentralizingDecomposition {
    pub fn reassemble(&self) -> MapOnN {
        MapOnN::identity(*self.mu.ctx())
            .scale(&self.lambda)
            .try_add(&self.mu)
            .expect("same context")
    }
}

/// `f = lambda * id + a * g + zeta_map(zeta)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommutingDecomposition {
    pub lambda: Scalar,
    pub a: Scalar,
    pub zeta: Vec<Scalar>,
    /// Standard form (`lambda x` plus a central-valued map) holds iff `a = 0`.
    pub is_standard_form: bool,
}

impl CommutingDecomposition {
    pub fn reassemble(&self, ctx: RingContext) -> Result<MapOnN> {
        MapOnN::identity(ctx)
            .scale(&self.lambda)
            .try_add(&g_map(ctx)?.scale(&self.a))?
            .try_add(&zeta_map(ctx, &self.zeta)?)
    }
}

fn require_linear_r4(f: &MapOnN) -> Result<RingContext> {
    let ctx = *f.ctx();
    if ctx.r() < 4 {
        return Err(Error::RankTooSmall {
            required: 4,
            r: ctx.r(),
        });
    }
    if !f.is_linear() {
        return Err(Error::AffineMap);
    }
    Ok(ctx)
}

/// Reads `lambda` from the `(2,3)` coordinate of `f(e_{2,3})`; `(2,3)` is never
/// an Omega slot once `r >= 4`, so no other choice of `lambda` can leave the
/// residual inside Omega. The residual is then checked on every basis unit.
pub fn decompose_centralizing(f: &MapOnN) -> Result<CentralizingDecomposition> {
    let ctx = require_linear_r4(f)?;
    let idx = f.indexing();
    let k23 = idx.index(2, 3)?;
    let lambda = f.columns()[k23][k23].clone();
    let mu = f.try_sub(&MapOnN::identity(ctx).scale(&lambda))?;
    for k in 0..ctx.n() {
        if !mu.image_of_unit(k).in_omega() {
            let (i, j) = idx.pair(k);
            return Err(Error::ResidualOutsideOmega { i, j });
        }
    }
    Ok(CentralizingDecomposition { lambda, mu })
}

/// Splits the Omega part further: `a` is the `e_{1,r-1}` coordinate of
/// `mu(e_{1,2})` and must equal the `e_{2,r}` coordinate of `mu(e_{r-1,r})`;
/// `mu - a g` must be central-valued, and its `e_{1,r}` coordinates give `zeta`.
pub fn decompose_commuting(f: &MapOnN) -> Result<CommutingDecomposition> {
    let ctx = require_linear_r4(f)?;
    let CentralizingDecomposition { lambda, mu } = decompose_centralizing(f)?;
    let r = ctx.r();
    let idx = f.indexing();
    let a = mu.columns()[idx.index(1, 2)?][idx.index(1, r - 1)?].clone();
    let a_check = &mu.columns()[idx.index(r - 1, r)?][idx.index(2, r)?];
    if &a != a_check {
        return Err(Error::NotCommuting(format!(
            "coefficient of e_{{1,{}}} in mu(e_{{1,2}}) is {a} but coefficient of e_{{2,{r}}} in mu(e_{{{},{r}}}) is {a_check}",
            r - 1,
            r - 1
        )));
    }
    let rest = mu.try_sub(&g_map(ctx)?.scale(&a))?;
    for k in 0..ctx.n() {
        if !rest.image_of_unit(k).in_center() {
            let (i, j) = idx.pair(k);
            return Err(Error::NotCommuting(format!(
                "mu - a g sends e_{{{i},{j}}} outside the center"
            )));
        }
    }
    let center = idx.index(1, r)?;
    let zeta = rest.columns().iter().map(|col| col[center].clone()).collect();
    let is_standard_form = a.is_zero();
    Ok(CommutingDecomposition {
        lambda,
        a,
        zeta,
        is_standard_form,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analyzer::is_centralizing;
    use crate::field::FieldSpec;
    use crate::maps::{omega_map, BasisIndexing};
    use crate::sample;

    fn ctx(r: usize) -> RingContext {
        RingContext::new(r, FieldSpec::Rationals).unwrap()
    }

    #[test]
    fn scalar_multiple_of_identity() {
        let c = ctx(4);
        let f = MapOnN::identity(c).scale(&c.scalar(3));
        let d = decompose_centralizing(&f).unwrap();
        assert_eq!(d.lambda, c.scalar(3));
        assert_eq!(d.mu, MapOnN::zero(c));
        let half = FieldSpec::Rationals.parse_scalar("1/2").unwrap();
        let d = decompose_commuting(&MapOnN::identity(c).scale(&half)).unwrap();
        assert_eq!(d.lambda, half);
        assert!(d.a.is_zero());
        assert!(d.zeta.iter().all(Scalar::is_zero));
        assert!(d.is_standard_form);
    }

    #[test]
    fn identity_plus_g_plus_zeta() {
        let c = ctx(4);
        let idx = BasisIndexing::new(c);
        let mut z = vec![c.zero(); 6];
        z[idx.index(2, 3).unwrap()] = c.one();
        let g = g_map(c).unwrap();
        let zm = zeta_map(c, &z).unwrap();
        let f = MapOnN::identity(c)
            .scale(&c.scalar(2))
            .try_add(&g)
            .unwrap()
            .try_add(&zm)
            .unwrap();
        let d = decompose_centralizing(&f).unwrap();
        assert_eq!(d.lambda, c.scalar(2));
        assert_eq!(d.mu, g.try_add(&zm).unwrap());
        assert_eq!(d.reassemble(), f);
    }

    #[test]
    fn identity_plus_four_g() {
        let c = ctx(5);
        let f = MapOnN::identity(c)
            .try_add(&g_map(c).unwrap().scale(&c.scalar(4)))
            .unwrap();
        let d = decompose_commuting(&f).unwrap();
        assert_eq!((d.lambda.clone(), d.a.clone()), (c.one(), c.scalar(4)));
        assert!(d.zeta.iter().all(Scalar::is_zero));
        assert!(!d.is_standard_form);
        assert_eq!(d.reassemble(c).unwrap(), f);
    }

    #[test]
    fn pure_zeta() {
        let c = ctx(4);
        let idx = BasisIndexing::new(c);
        let mut z = vec![c.zero(); 6];
        z[idx.index(1, 2).unwrap()] = c.one();
        z[idx.index(3, 4).unwrap()] = c.one();
        let d = decompose_commuting(&zeta_map(c, &z).unwrap()).unwrap();
        assert!(d.lambda.is_zero() && d.a.is_zero());
        assert_eq!(d.zeta, z);
    }

    #[test]
    fn omega_valued_map_has_zero_lambda() {
        let c = ctx(5);
        let mut rng = sample::rng(7);
        let f = omega_map(c, &sample::omega_triple(&c, &mut rng)).unwrap();
        assert!(is_centralizing(&f).verdict);
        let d = decompose_centralizing(&f).unwrap();
        assert!(d.lambda.is_zero());
        assert_eq!(d.mu, f);
    }

    #[test]
    fn refusals() {
        let c3 = ctx(3);
        assert!(matches!(
            decompose_centralizing(&MapOnN::identity(c3)),
            Err(Error::RankTooSmall { required: 4, r: 3 })
        ));
        let c = ctx(4);
        let p = crate::maps::p_affine_map(c).unwrap();
        assert_eq!(decompose_centralizing(&p), Err(Error::AffineMap));
        let idx = BasisIndexing::new(c);
        let mut images = vec![crate::UTMatrix::zero(c); 6];
        images[idx.index(2, 3).unwrap()] = crate::UTMatrix::unit(c, 2, 3).unwrap();
        let f = MapOnN::from_images(c, &images).unwrap();
        assert!(matches!(
            decompose_centralizing(&f),
            Err(Error::ResidualOutsideOmega { .. })
        ));
    }

    #[test]
    fn centralizing_but_not_commuting_is_rejected_by_commuting_split() {
        // X -> x_{1,2} e_{1,r-1} alone is centralizing; the e_{2,r} read of `a` is 0
        let c = ctx(5);
        let idx = BasisIndexing::new(c);
        let mut images = vec![crate::UTMatrix::zero(c); 10];
        images[idx.index(1, 2).unwrap()] = crate::UTMatrix::unit(c, 1, 4).unwrap();
        let f = MapOnN::from_images(c, &images).unwrap();
        assert!(decompose_centralizing(&f).is_ok());
        assert!(matches!(decompose_commuting(&f), Err(Error::NotCommuting(_))));
    }
}
