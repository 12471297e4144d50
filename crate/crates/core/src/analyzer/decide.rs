use serde::Serialize;

use crate::maps::MapOnN;
use crate::nilmatrix::UTMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Property {
    /// `[f(x), x]` central for all `x`.
    Centralizing,
    /// `[f(x), x] = 0` for all `x`.
    Commuting,
}

impl Property {
    fn accepts(self, commutator: &UTMatrix) -> bool {
        match self {
            Property::Centralizing => commutator.in_center(),
            Property::Commuting => commutator.is_zero(),
        }
    }
}

impl std::str::FromStr for Property {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "centralizing" => Ok(Property::Centralizing),
            "commuting" => Ok(Property::Commuting),
            other => Err(format!("unknown property {other:?}")),
        }
    }
}

/// A concrete input `x` on which `[f(x), x]` violates the property.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub input: UTMatrix,
    pub commutator: UTMatrix,
    /// The basis units whose (polarized) condition failed.
    pub basis_pair: ((usize, usize), (usize, usize)),
}

impl Witness {
    /// Re-evaluates `[f(input), input]` from scratch.
    pub fn reproduces(&self, f: &MapOnN, property: Property) -> bool {
        match f.apply(&self.input).and_then(|fx| fx.commutator(&self.input)) {
            Ok(c) => c == self.commutator && !property.accepts(&c),
            Err(_) => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecideReport {
    pub property: Property,
    pub verdict: bool,
    pub conditions_checked: usize,
    pub violations: usize,
    pub witnesses: Vec<Witness>,
}

/// Witness lists are truncated to this many entries; `violations` keeps the
/// full count.
pub const MAX_WITNESSES: usize = 16;

/// Exact decision by polarization.
///
/// Writing `x = sum x_k e_k` and `f = L + c0`,
/// `[f(x), x] = sum_k x_k^2 [L e_k, e_k] + sum_{k<l} x_k x_l ([L e_k, e_l] + [L e_l, e_k]) + sum_k x_k [c0, e_k]`.
/// This polynomial has degree at most 2 in each variable, so over `Q` or
/// `F_p` with `p >= 3` it lands in the target subspace for every `x` exactly
/// when each coefficient does.
///
/// Witnesses are concrete inputs: `e_k` or `-e_k` when a single-variable
/// coefficient fails (`phi(±e_k) = q ± l`, and both vanish only if `q = l = 0`
/// in odd characteristic), otherwise `e_k + e_l`, whose value reduces to the
/// cross coefficient once all single-variable ones vanish.
pub fn decide(f: &MapOnN, property: Property) -> DecideReport {
    let ctx = *f.ctx();
    let idx = f.indexing();
    let n = ctx.n();
    let units: Vec<UTMatrix> = (0..n).map(|k| idx.unit(k)).collect();
    let images = f.images();
    let constant = f.constant();

    let mut checked = 0;
    let mut violations = 0;
    let mut witnesses = Vec::new();
    let push = |w: Witness, witnesses: &mut Vec<Witness>| {
        if witnesses.len() < MAX_WITNESSES {
            witnesses.push(w);
        }
    };

    for k in 0..n {
        let quad = &images[k] * &units[k] - &units[k] * &images[k];
        let lin = match constant {
            Some(c0) => c0.commutator(&units[k]).expect("same context"),
            None => UTMatrix::zero(ctx),
        };
        checked += 2;
        if property.accepts(&quad) && property.accepts(&lin) {
            continue;
        }
        violations += 1;
        let plus = &quad + &lin;
        let (input, commutator) = if !property.accepts(&plus) {
            (units[k].clone(), plus)
        } else {
            (-&units[k], &quad - &lin)
        };
        let pair = idx.pair(k);
        push(
            Witness {
                input,
                commutator,
                basis_pair: (pair, pair),
            },
            &mut witnesses,
        );
    }

    if violations == 0 {
        for k in 0..n {
            for l in k + 1..n {
                let cross = images[k].commutator(&units[l]).expect("same context")
                    + images[l].commutator(&units[k]).expect("same context");
                checked += 1;
                if property.accepts(&cross) {
                    continue;
                }
                violations += 1;
                push(
                    Witness {
                        input: &units[k] + &units[l],
                        commutator: cross,
                        basis_pair: (idx.pair(k), idx.pair(l)),
                    },
                    &mut witnesses,
                );
            }
        }
    } else {
        // cross terms are not needed for the verdict; count them for the report
        checked += n * (n - 1) / 2;
    }

    DecideReport {
        property,
        verdict: violations == 0,
        conditions_checked: checked,
        violations,
        witnesses,
    }
}

pub fn is_centralizing(f: &MapOnN) -> DecideReport {
    decide(f, Property::Centralizing)
}

pub fn is_commuting(f: &MapOnN) -> DecideReport {
    decide(f, Property::Commuting)
}
