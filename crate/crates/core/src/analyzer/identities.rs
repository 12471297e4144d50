//! Audits of closed-form matrix identities. Each check evaluates the
//! displayed formula literally, computes the same object by direct exact
//! multiplication, and records agreement per parameter value.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{factorial, product_range, FieldSpec, Scalar};
use crate::nilmatrix::{s2_element, shift_matrix, w1, w2, RingContext, UTMatrix};
use crate::sample;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CheckStatus {
    Matches,
    Mismatch { displayed: String, direct: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub params: BTreeMap<String, i64>,
    pub status: CheckStatus,
    /// Side claims evaluated at the same parameters (e.g. non-centrality).
    pub facts: BTreeMap<String, bool>,
}

impl CheckRecord {
    fn new(params: &[(&str, i64)], status: CheckStatus) -> Self {
        Self {
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            status,
            facts: BTreeMap::new(),
        }
    }

    fn fact(mut self, name: &str, value: bool) -> Self {
        self.facts.insert(name.to_string(), value);
        self
    }

    pub fn matches(&self) -> bool {
        self.status == CheckStatus::Matches
    }

    pub fn param(&self, name: &str) -> Option<i64> {
        self.params.get(name).copied()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheckReport {
    pub identity: String,
    pub parameter_range: String,
    pub records: Vec<CheckRecord>,
}

impl IdentityCheckReport {
    pub fn all_match(&self) -> bool {
        self.records.iter().all(CheckRecord::matches)
    }

    pub fn none_match(&self) -> bool {
        !self.records.iter().any(CheckRecord::matches)
    }

    /// True when `name` was recorded and holds on every record that has it.
    pub fn fact_holds(&self, name: &str) -> bool {
        let mut seen = false;
        for rec in &self.records {
            if let Some(&v) = rec.facts.get(name) {
                seen = true;
                if !v {
                    return false;
                }
            }
        }
        seen
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.matches())
    }
}

fn status(displayed: String, direct: String) -> CheckStatus {
    if displayed == direct {
        CheckStatus::Matches
    } else {
        CheckStatus::Mismatch { displayed, direct }
    }
}

/// Checks `r! != (t+1)!(r-t)! + (r-t)(r-1)! - t!(r-t)!` for `5 <= r <= r_max`,
/// `1 < t < r-2`. The display `r! = t!(r-t)` is also evaluated as written and
/// recorded in the `literal_equality_absent` fact.
pub fn factorial_inequality_check(r_max: usize) -> Result<IdentityCheckReport> {
    if r_max < 5 {
        return Err(Error::OutOfRange(format!("r_max must be at least 5, got {r_max}")));
    }
    let mut records = Vec::new();
    for r in 5..=r_max as u64 {
        let rf = factorial(r);
        for t in 2..r - 2 {
            let rhs = factorial(t + 1) * factorial(r - t) + BigInt::from(r - t) * factorial(r - 1)
                - factorial(t) * factorial(r - t);
            let holds = rf != rhs;
            let st = if holds {
                CheckStatus::Matches
            } else {
                CheckStatus::Mismatch {
                    displayed: format!("{r}! != {rhs}"),
                    direct: format!("{r}! = {rf} = {rhs}"),
                }
            };
            let literal = factorial(t) * BigInt::from(r - t);
            records.push(
                CheckRecord::new(&[("r", r as i64), ("t", t as i64)], st)
                    .fact("inequality_holds", holds)
                    .fact("literal_equality_absent", rf != literal),
            );
        }
    }
    Ok(IdentityCheckReport {
        identity: "factorial_inequality".into(),
        parameter_range: format!("5 <= r <= {r_max}, 1 < t < r-2"),
        records,
    })
}

/// The displayed commutator
/// `[W1, C] = -sum e_{t,t+2} - (i-2) e_{i-2,j} + (i+j-1) e_{i-1,j+1} - (j+1) e_{i,j+2}`
/// for `C = T_{i,j}^{-1} J T_{i,j}`, out-of-range units read as zero.
pub fn w1c_formula(ctx: RingContext, i: usize, j: usize) -> UTMatrix {
    let r = ctx.r() as i64;
    let (i, j) = (i as i64, j as i64);
    let unit = |a: i64, b: i64| UTMatrix::unit_or_zero(ctx, a, b);
    let mut acc = UTMatrix::zero(ctx);
    for t in 1..=r - 2 {
        acc = &acc - &unit(t, t + 2);
    }
    acc = &acc - &unit(i - 2, j).scale(&ctx.scalar(i - 2));
    acc = &acc + &unit(i - 1, j + 1).scale(&ctx.scalar(i + j - 1));
    &acc - &unit(i, j + 2).scale(&ctx.scalar(j + 1))
}

/// For every `1 <= i < j <= r`: direct `[W1, C]` against the displayed form,
/// plus the `not_in_center` fact.
pub fn w1c_identity_check(ctx: RingContext) -> Result<IdentityCheckReport> {
    if ctx.r() < 4 {
        return Err(Error::RankTooSmall {
            required: 4,
            r: ctx.r(),
        });
    }
    let w = w1(ctx);
    let mut records = Vec::new();
    for i in 1..ctx.r() {
        for j in i + 1..=ctx.r() {
            let direct = w.commutator(&s2_element(ctx, i, j)?)?;
            let displayed = w1c_formula(ctx, i, j);
            records.push(
                CheckRecord::new(
                    &[("r", ctx.r() as i64), ("i", i as i64), ("j", j as i64)],
                    status(displayed.to_string(), direct.to_string()),
                )
                .fact("not_in_center", !direct.in_center()),
            );
        }
    }
    Ok(IdentityCheckReport {
        identity: "w1_c_commutator".into(),
        parameter_range: format!("r = {}, 1 <= i < j <= r", ctx.r()),
        records,
    })
}

/// A formal sum of matrix units that may include diagonal positions (the
/// literal power displays put terms on the diagonal when `t = 1`).
type Terms = BTreeMap<(usize, usize), Scalar>;

fn render_terms(terms: &Terms) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (k, ((i, j), v)) in terms.iter().enumerate() {
        if k > 0 {
            s.push_str(" + ");
        }
        if v.is_one() {
            let _ = write!(s, "e({i},{j})");
        } else {
            let _ = write!(s, "({v})e({i},{j})");
        }
    }
    s
}

fn matrix_terms(m: &UTMatrix) -> Terms {
    m.entries().map(|(i, j, v)| ((i, j), v.clone())).collect()
}

fn add_term(terms: &mut Terms, i: usize, j: usize, v: BigInt) {
    let s = FieldSpec::Rationals.from_bigint(&v);
    let acc = terms.remove(&(i, j)).unwrap_or_else(|| FieldSpec::Rationals.zero()) + s;
    if !acc.is_zero() {
        terms.insert((i, j), acc);
    }
}

/// `(prod_{k=lo}^{hi} (r - k))`, empty product 1.
fn falling_from(r: i64, lo: i64, hi: i64) -> BigInt {
    (lo..=hi).fold(BigInt::from(1), |acc, k| acc * (r - k))
}

/// Literal displays `W1^t = sum_{i=1}^{r-t} i(i+1)...t e_{i,i+t-1}` and
/// `W2^t = sum_{i=1}^{r-t} (r-i)(r-(i+1))...(r-t) e_{i,i+t-1}` (products read
/// as running from `i` up to `t`, empty when `i > t`).
pub fn power_literal_display(r: usize, t: usize, which: u8) -> Terms {
    let mut terms = Terms::new();
    let (ri, ti) = (r as i64, t as i64);
    for i in 1..=r - t {
        let ii = i as i64;
        let coef = match which {
            1 => product_range(ii, ti),
            _ => falling_from(ri, ii, ti),
        };
        add_term(&mut terms, i, i + t - 1, coef);
    }
    terms
}

/// Corrected candidates `W1^t = sum i(i+1)...(i+t-1) e_{i,i+t}` and
/// `W2^t = sum (r-i)(r-i-1)...(r-i-t+1) e_{i,i+t}`.
pub fn power_corrected_candidate(r: usize, t: usize, which: u8) -> Terms {
    let mut terms = Terms::new();
    let (ri, ti) = (r as i64, t as i64);
    for i in 1..=r - t {
        let ii = i as i64;
        let coef = match which {
            1 => product_range(ii, ii + ti - 1),
            _ => falling_from(ri, ii, ii + ti - 1),
        };
        add_term(&mut terms, i, i + t, coef);
    }
    terms
}

/// Compares both displays and the corrected candidates with `W1^t`, `W2^t`.
/// Status reflects the literal display; `corrected_matches` the candidate.
pub fn power_closed_form_check(r: usize, t: usize) -> Result<IdentityCheckReport> {
    if r < 4 {
        return Err(Error::RankTooSmall { required: 4, r });
    }
    if !(1..r).contains(&t) {
        return Err(Error::OutOfRange(format!("need 1 <= t <= r-1, got r={r}, t={t}")));
    }
    let ctx = RingContext::new(r, FieldSpec::Rationals)?;
    let mut records = Vec::new();
    for (which, base) in [(1u8, w1(ctx)), (2u8, w2(ctx))] {
        let direct = matrix_terms(&base.power(t as u32)?);
        let literal = power_literal_display(r, t, which);
        let corrected = power_corrected_candidate(r, t, which);
        records.push(
            CheckRecord::new(
                &[("r", r as i64), ("t", t as i64), ("w", which as i64)],
                status(render_terms(&literal), render_terms(&direct)),
            )
            .fact("corrected_matches", corrected == direct),
        );
    }
    Ok(IdentityCheckReport {
        identity: "w_power_closed_form".into(),
        parameter_range: format!("r = {r}, t = {t}, W1 and W2"),
        records,
    })
}

/// `sum (a_i b_{i+1} - b_i a_{i+1}) e_{i,i+2}` for superdiagonal `A`, `B`.
pub fn s1_commutator_formula(a: &UTMatrix, b: &UTMatrix) -> UTMatrix {
    let ctx = *a.ctx();
    let mut acc = UTMatrix::zero(ctx);
    for i in 1..=ctx.r() - 2 {
        let coef = &a.get(i, i + 1) * &b.get(i + 1, i + 2) - &b.get(i, i + 1) * &a.get(i + 1, i + 2);
        acc = &acc + &UTMatrix::unit(ctx, i, i + 2).expect("i+2 <= r").scale(&coef);
    }
    acc
}

fn trial_seed(seed: u64, trial: u64) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(trial)
}

/// The S1 pair used by trial `trial` of [`s1_commutator_check`]. Trials 0 and
/// 1 are the fixed pairs `(J, 2J)` and `(J, W1)`; later ones are random.
pub fn s1_commutator_pair(ctx: RingContext, seed: u64, trial: u64) -> (UTMatrix, UTMatrix) {
    match trial {
        0 => (shift_matrix(ctx), shift_matrix(ctx).scale(&ctx.scalar(2))),
        1 => (shift_matrix(ctx), w1(ctx)),
        _ => {
            let mut rng = sample::rng(trial_seed(seed, trial));
            let a = sample::s1_shaped(&ctx, &mut rng);
            let b = sample::s1_shaped(&ctx, &mut rng);
            (a, b)
        }
    }
}

/// Direct `[A, B]` against the displayed formula, plus the claim that it is
/// central only when it vanishes. Runs `trials` pairs (the two fixed pairs
/// first).
pub fn s1_commutator_check(ctx: RingContext, trials: usize, seed: u64) -> Result<IdentityCheckReport> {
    if ctx.r() < 4 {
        return Err(Error::RankTooSmall {
            required: 4,
            r: ctx.r(),
        });
    }
    let mut records = Vec::with_capacity(trials);
    for trial in 0..trials as u64 {
        let (a, b) = s1_commutator_pair(ctx, seed, trial);
        let direct = a.commutator(&b)?;
        let displayed = s1_commutator_formula(&a, &b);
        records.push(
            CheckRecord::new(
                &[("r", ctx.r() as i64), ("trial", trial as i64)],
                status(displayed.to_string(), direct.to_string()),
            )
            .fact("membership_claim_holds", direct.in_center() == direct.is_zero())
            .fact("vanishes", direct.is_zero()),
        );
    }
    Ok(IdentityCheckReport {
        identity: "s1_commutator".into(),
        parameter_range: format!("r = {}, {trials} pairs, seed {seed}", ctx.r()),
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(r: usize) -> RingContext {
        RingContext::new(r, FieldSpec::Rationals).unwrap()
    }

    #[test]
    fn factorial_examples() {
        let rep = factorial_inequality_check(6).unwrap();
        // r=5: t=2; r=6: t=2,3
        assert_eq!(rep.records.len(), 3);
        assert!(rep.all_match());
        assert!(rep.fact_holds("literal_equality_absent"));
        // oracle: hand evaluation
        let rhs = |r: u64, t: u64| {
            factorial(t + 1) * factorial(r - t) + BigInt::from(r - t) * factorial(r - 1)
                - factorial(t) * factorial(r - t)
        };
        assert_eq!(rhs(6, 2), BigInt::from(576));
        assert_eq!(rhs(5, 2), BigInt::from(96));
        assert!(factorial_inequality_check(4).is_err());
    }

    #[test]
    fn w1c_r5_pair_2_4() {
        let c = ctx(5);
        let direct = w1(c).commutator(&s2_element(c, 2, 4).unwrap()).unwrap();
        let expected = UTMatrix::from_entries(
            c,
            [(1, 3, -1), (2, 4, -1), (3, 5, -1), (1, 5, 5)].map(|(i, j, v)| (i, j, c.scalar(v))),
        )
        .unwrap();
        assert_eq!(direct, expected);
        assert_eq!(w1c_formula(c, 2, 4), expected);
        let rep = w1c_identity_check(c).unwrap();
        assert_eq!(rep.records.len(), 10);
        assert!(rep.all_match());
        assert!(rep.fact_holds("not_in_center"));
    }

    #[test]
    fn w1c_r4_edge_pair() {
        let rep = w1c_identity_check(ctx(4)).unwrap();
        let rec = rep
            .records
            .iter()
            .find(|r| r.param("i") == Some(1) && r.param("j") == Some(2))
            .unwrap();
        assert!(rec.matches());
        assert!(w1c_identity_check(ctx(3)).is_err());
    }

    #[test]
    fn power_display_r4_t2() {
        let rep = power_closed_form_check(4, 2).unwrap();
        let w1rec = &rep.records[0];
        assert_eq!(
            w1rec.status,
            CheckStatus::Mismatch {
                displayed: "(2)e(1,2) + (2)e(2,3)".into(),
                direct: "(2)e(1,3) + (6)e(2,4)".into()
            }
        );
        assert!(rep.fact_holds("corrected_matches"));
        assert!(rep.none_match());
    }

    #[test]
    fn power_display_t1_and_r6_t3() {
        let rep = power_closed_form_check(5, 1).unwrap();
        assert!(rep.fact_holds("corrected_matches"));
        // the literal t = 1 display lands on the diagonal
        assert!(rep.none_match());
        let rep = power_closed_form_check(6, 3).unwrap();
        assert!(rep.fact_holds("corrected_matches"));
        assert!(power_closed_form_check(5, 5).is_err());
    }

    #[test]
    fn s1_commutators() {
        let c = ctx(4);
        let rep = s1_commutator_check(c, 20, 0).unwrap();
        assert!(rep.all_match());
        assert!(rep.fact_holds("membership_claim_holds"));
        assert!(rep.records[0].facts["vanishes"]);
        let (a, b) = s1_commutator_pair(c, 0, 1);
        let jw = a.commutator(&b).unwrap();
        assert_eq!(
            jw,
            &UTMatrix::unit(c, 1, 3).unwrap() + &UTMatrix::unit(c, 2, 4).unwrap()
        );
        assert!(!jw.in_center());
    }

    #[test]
    fn reruns_are_identical() {
        let c = ctx(5);
        assert_eq!(s1_commutator_check(c, 10, 42).unwrap(), s1_commutator_check(c, 10, 42).unwrap());
        assert_eq!(power_closed_form_check(7, 3).unwrap(), power_closed_form_check(7, 3).unwrap());
    }
}
