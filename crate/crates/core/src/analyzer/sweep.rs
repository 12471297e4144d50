use rayon::prelude::*;
use serde::Serialize;

use crate::analyzer::census::{map_space_dimension, predicted_dimension};
use crate::analyzer::decide::Property;
use crate::error::Result;
use crate::field::FieldSpec;
use crate::nilmatrix::RingContext;

/// One line of a characteristic sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub r: usize,
    pub field: FieldSpec,
    pub n: usize,
    pub dim_centralizing: usize,
    pub dim_commuting: usize,
    pub pred_centralizing: Option<usize>,
    pub pred_commuting: Option<usize>,
    /// `Some(_)` only where a prediction exists.
    pub matches: Option<bool>,
}

/// How a missing prediction is reported: below the rank range over `Q`, or
/// an exploration cell over `F_p`.
pub fn no_prediction_label(ctx: RingContext) -> &'static str {
    if ctx.spec().is_rationals() {
        "n/a (r<4)"
    } else {
        "exploration"
    }
}

impl SweepRow {
    pub fn match_label(&self) -> &'static str {
        match self.matches {
            Some(true) => "true",
            Some(false) => "false",
            None => no_prediction_label(RingContext::new(self.r, self.field).expect("validated")),
        }
    }
}

fn sweep_one(r: usize, field: FieldSpec) -> Result<SweepRow> {
    let ctx = RingContext::new(r, field)?;
    let dim_centralizing = map_space_dimension(ctx, Property::Centralizing).dimension;
    let dim_commuting = map_space_dimension(ctx, Property::Commuting).dimension;
    let pred_centralizing = predicted_dimension(ctx, Property::Centralizing);
    let pred_commuting = predicted_dimension(ctx, Property::Commuting);
    let matches = match (pred_centralizing, pred_commuting) {
        (Some(a), Some(b)) => Some(a == dim_centralizing && b == dim_commuting),
        _ => None,
    };
    Ok(SweepRow {
        r,
        field,
        n: ctx.n(),
        dim_centralizing,
        dim_commuting,
        pred_centralizing,
        pred_commuting,
        matches,
    })
}

/// Census over every `(r, field)` pair, computed in parallel. Rows come back
/// ordered by `r`, then by the order of `fields`.
pub fn charp_sweep(rs: &[usize], fields: &[FieldSpec]) -> Result<Vec<SweepRow>> {
    let mut rs = rs.to_vec();
    rs.sort_unstable();
    rs.dedup();
    let jobs: Vec<(usize, FieldSpec)> = rs
        .iter()
        .flat_map(|&r| fields.iter().map(move |f| (r, *f)))
        .collect();
    jobs.into_par_iter().map(|(r, f)| sweep_one(r, f)).collect()
}
