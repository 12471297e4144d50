use std::collections::BTreeMap;

use crate::analyzer::decide::Property;
use crate::field::Scalar;
use crate::linsolve::{RowReducer, SubspaceBasis};
use crate::maps::{BasisIndexing, MapOnN};
use crate::nilmatrix::RingContext;

/// The space of all linear maps on `N_r` with a given property.
#[derive(Debug, Clone)]
pub struct MapSpaceCensus {
    pub ctx: RingContext,
    pub property: Property,
    pub dimension: usize,
    /// Basis vectors of length `n^2`, laid out as in [`MapOnN::to_flat`].
    pub basis: SubspaceBasis,
    pub equations: usize,
}

impl MapSpaceCensus {
    pub fn basis_maps(&self) -> Vec<MapOnN> {
        self.basis
            .vectors()
            .iter()
            .map(|v| MapOnN::from_flat(self.ctx, v).expect("n^2 coefficients"))
            .collect()
    }
}

/// Characteristic-zero prediction for `r >= 4`: `3n + 1` centralizing maps
/// (`lambda id` plus anything into Omega) and `n + 2` commuting maps
/// (`lambda`, `a` and a central functional).
pub fn predicted_dimension(ctx: RingContext, property: Property) -> Option<usize> {
    if !ctx.spec().is_rationals() || ctx.r() < 4 {
        return None;
    }
    let n = ctx.n();
    Some(match property {
        Property::Centralizing => 3 * n + 1,
        Property::Commuting => n + 2,
    })
}

/// Null space of the polarized constraint system.
///
/// Unknowns are the `n^2` coefficients `L[c][k]` (coordinate `c` of the image
/// of basis unit `k`). For each pair `k <= l` the bilinear expression
/// `[L e_k, e_l] + [L e_l, e_k]` is linear in the unknowns; each of its
/// coordinates must vanish, except `(1,r)` when only centrality is required.
pub fn map_space_dimension(ctx: RingContext, property: Property) -> MapSpaceCensus {
    let n = ctx.n();
    let r = ctx.r();
    let idx = BasisIndexing::new(ctx);
    let pairs: Vec<(usize, usize)> = idx.pairs().collect();
    let center_slot = idx.index(1, r).expect("(1,r) is valid");

    // [e_c, e_l] as at most two signed units, keyed by coordinate
    let bracket = |c: usize, l: usize| -> Vec<(usize, i64)> {
        let (a, b) = pairs[c];
        let (x, y) = pairs[l];
        let mut out = Vec::new();
        if b == x {
            out.push((idx.index(a, y).expect("a < y"), 1));
        }
        if y == a {
            out.push((idx.index(x, b).expect("x < b"), -1));
        }
        out
    };

    let mut reducer = RowReducer::new(ctx.spec(), n * n);
    let mut equations = 0;
    for k in 0..n {
        for l in k..n {
            let mut rows: BTreeMap<usize, BTreeMap<usize, i64>> = BTreeMap::new();
            for c in 0..n {
                for (slot, sign) in bracket(c, l) {
                    *rows.entry(slot).or_default().entry(k * n + c).or_default() += sign;
                }
                if k != l {
                    for (slot, sign) in bracket(c, k) {
                        *rows.entry(slot).or_default().entry(l * n + c).or_default() += sign;
                    }
                }
            }
            for (slot, terms) in rows {
                if property == Property::Centralizing && slot == center_slot {
                    continue;
                }
                let terms: Vec<(usize, Scalar)> = terms
                    .into_iter()
                    .filter(|(_, v)| *v != 0)
                    .map(|(u, v)| (u, ctx.scalar(v)))
                    .collect();
                if terms.is_empty() {
                    continue;
                }
                equations += 1;
                reducer.push_sparse(&terms);
            }
        }
    }
    let basis = reducer.null_space();
    MapSpaceCensus {
        ctx,
        property,
        dimension: basis.dimension(),
        basis,
        equations,
    }
}
