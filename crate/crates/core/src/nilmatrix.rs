//! Strictly upper triangular matrices `N_r`, the invertible upper triangular
//! conjugators that act on them, and the named matrices used by the theory
//! (`J`, `W1`, `W2`, members of the conjugation families `S1` and `S2`).
//!
//! Indices are 1-based throughout, matching the usual `e_{i,j}` notation.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

type Entries = BTreeMap<(usize, usize), Scalar>;

/// The ring `N_r` over a fixed field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RingContext {
    r: usize,
    spec: FieldSpec,
}

impl RingContext {
    pub fn new(r: usize, spec: FieldSpec) -> Result<Self> {
        if r < 2 {
            return Err(Error::DimensionTooSmall(r));
        }
        Ok(Self { r, spec })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Dimension of `N_r` as a vector space, `r(r-1)/2`.
    pub fn n(&self) -> usize {
        self.r * (self.r - 1) / 2
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn zero(&self) -> Scalar {
        self.spec.zero()
    }

    pub fn one(&self) -> Scalar {
        self.spec.one()
    }

    pub fn scalar(&self, v: i64) -> Scalar {
        self.spec.from_i64(v)
    }

    pub fn is_strict_upper(&self, i: usize, j: usize) -> bool {
        1 <= i && i < j && j <= self.r
    }

    pub fn ensure_same(&self, other: &RingContext) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ContextMismatch {
                left_r: self.r,
                left_field: self.spec,
                right_r: other.r,
                right_field: other.spec,
            })
        }
    }

    /// Positions of the three Omega slots `(1,r-1)`, `(1,r)`, `(2,r)`, keeping
    /// only those that are strictly upper triangular.
    pub fn omega_slots(&self) -> Vec<(usize, usize)> {
        let r = self.r;
        let mut slots = vec![(1, r - 1), (1, r), (2, r)];
        slots.retain(|&(i, j)| self.is_strict_upper(i, j));
        slots.dedup();
        slots
    }

    /// Below r = 4 the Omega slots cover all of `N_r` (or collide).
    pub fn omega_is_degenerate(&self) -> bool {
        self.r < 4
    }
}

fn scalar_is_compatible(ctx: &RingContext, v: &Scalar) -> Result<()> {
    if v.spec() == ctx.spec {
        Ok(())
    } else {
        Err(Error::FieldMismatch {
            left: ctx.spec,
            right: v.spec(),
        })
    }
}

fn sparse_product(a: &Entries, b: &Entries) -> Entries {
    let mut by_row: BTreeMap<usize, Vec<(usize, &Scalar)>> = BTreeMap::new();
    for (&(k, j), v) in b {
        by_row.entry(k).or_default().push((j, v));
    }
    let mut out = Entries::new();
    for (&(i, k), x) in a {
        if let Some(row) = by_row.get(&k) {
            for &(j, y) in row {
                let term = x * y;
                match out.get_mut(&(i, j)) {
                    Some(acc) => *acc = &*acc + &term,
                    None => {
                        out.insert((i, j), term);
                    }
                }
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn combine(a: &Entries, b: &Entries, sign: i64, spec: FieldSpec) -> Entries {
    let mut out = a.clone();
    let factor = spec.from_i64(sign);
    for (&key, v) in b {
        let term = &factor * v;
        match out.get_mut(&key) {
            Some(acc) => *acc = &*acc + &term,
            None => {
                out.insert(key, term);
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// An element of `N_r`, stored sparsely (absent entries are zero).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UTMatrix {
    ctx: RingContext,
    entries: Entries,
}

impl UTMatrix {
    pub fn zero(ctx: RingContext) -> Self {
        Self {
            ctx,
            entries: Entries::new(),
        }
    }

    /// The matrix unit `e_{i,j}`.
    pub fn unit(ctx: RingContext, i: usize, j: usize) -> Result<Self> {
        if !ctx.is_strict_upper(i, j) {
            return Err(Error::InvalidIndex { i, j, r: ctx.r });
        }
        let mut entries = Entries::new();
        entries.insert((i, j), ctx.one());
        Ok(Self { ctx, entries })
    }

    /// `e_{i,j}`, or zero when `(i,j)` falls outside the strict upper triangle.
    pub fn unit_or_zero(ctx: RingContext, i: i64, j: i64) -> Self {
        if i >= 1 && j >= 1 && ctx.is_strict_upper(i as usize, j as usize) {
            Self::unit(ctx, i as usize, j as usize).expect("index checked")
        } else {
            Self::zero(ctx)
        }
    }

    /// Builds a matrix from `(i, j, value)` triples; repeated positions add up
    /// and zero results are dropped.
    pub fn from_entries<I>(ctx: RingContext, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Scalar)>,
    {
        let mut map = Entries::new();
        for (i, j, v) in entries {
            if !ctx.is_strict_upper(i, j) {
                return Err(Error::InvalidIndex { i, j, r: ctx.r });
            }
            scalar_is_compatible(&ctx, &v)?;
            let acc = map.remove(&(i, j)).unwrap_or_else(|| ctx.zero());
            map.insert((i, j), acc + v);
        }
        map.retain(|_, v| !v.is_zero());
        Ok(Self { ctx, entries: map })
    }

    /// `sum_i values[i] e_{i,i+1}`.
    pub fn superdiagonal(ctx: RingContext, values: &[Scalar]) -> Result<Self> {
        if values.len() != ctx.r - 1 {
            return Err(Error::LengthMismatch {
                expected: ctx.r - 1,
                got: values.len(),
            });
        }
        Self::from_entries(
            ctx,
            values.iter().enumerate().map(|(k, v)| (k + 1, k + 2, v.clone())),
        )
    }

    pub fn ctx(&self) -> &RingContext {
        &self.ctx
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.entries
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| self.ctx.zero())
    }

    /// Nonzero entries in lexicographic `(i, j)` order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.entries.iter().map(|(&(i, j), v)| (i, j, v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.ctx.ensure_same(&other.ctx)?;
        Ok(Self {
            ctx: self.ctx,
            entries: combine(&self.entries, &other.entries, 1, self.ctx.spec),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.ctx.ensure_same(&other.ctx)?;
        Ok(Self {
            ctx: self.ctx,
            entries: combine(&self.entries, &other.entries, -1, self.ctx.spec),
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.ctx.ensure_same(&other.ctx)?;
        Ok(Self {
            ctx: self.ctx,
            entries: sparse_product(&self.entries, &other.entries),
        })
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut entries = Entries::new();
        if !c.is_zero() {
            for (&k, v) in &self.entries {
                entries.insert(k, c * v);
            }
        }
        Self {
            ctx: self.ctx,
            entries,
        }
    }

    /// `A^t` for `t >= 1`; the identity is not an element of `N_r`.
    pub fn power(&self, t: u32) -> Result<Self> {
        if t == 0 {
            return Err(Error::ZeroPower);
        }
        let mut acc = self.clone();
        for _ in 1..t {
            if acc.is_zero() {
                break;
            }
            acc = &acc * self;
        }
        Ok(acc)
    }

    /// `[A, B] = AB - BA`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        let ab = self.try_mul(other)?;
        let ba = other.try_mul(self)?;
        ab.try_sub(&ba)
    }

    /// Membership in the center `Z(N_r) = F e_{1,r}`.
    pub fn in_center(&self) -> bool {
        let r = self.ctx.r;
        self.entries.keys().all(|&k| k == (1, r))
    }

    /// Membership in `Omega = span{e_{1,r-1}, e_{1,r}, e_{2,r}}`. For r < 4
    /// this is all of `N_r`; see [`RingContext::omega_is_degenerate`].
    pub fn in_omega(&self) -> bool {
        let slots = self.ctx.omega_slots();
        self.entries.keys().all(|k| slots.contains(k))
    }

    /// Is this `sum a_i e_{i,i+1}` with every `a_i` nonzero?
    pub fn is_full_superdiagonal(&self) -> bool {
        let r = self.ctx.r;
        self.entries.len() == r - 1 && (1..r).all(|i| self.entries.contains_key(&(i, i + 1)))
    }

    pub fn to_doc(&self) -> MatrixDoc {
        MatrixDoc {
            r: self.ctx.r,
            field: self.ctx.spec,
            entries: self
                .entries()
                .map(|(i, j, v)| EntryDoc {
                    i,
                    j,
                    v: v.render(),
                })
                .collect(),
        }
    }

    pub fn from_doc(doc: &MatrixDoc) -> Result<Self> {
        let ctx = RingContext::new(doc.r, doc.field)?;
        Self::from_doc_in(ctx, doc)
    }

    fn from_doc_in(ctx: RingContext, doc: &MatrixDoc) -> Result<Self> {
        let mut seen = Entries::new();
        let mut last = (0, 0);
        for e in &doc.entries {
            if !ctx.is_strict_upper(e.i, e.j) {
                return Err(Error::InvalidIndex {
                    i: e.i,
                    j: e.j,
                    r: ctx.r,
                });
            }
            if (e.i, e.j) <= last {
                return Err(Error::Format(format!(
                    "entries must be in strictly increasing (i,j) order; ({},{}) follows ({},{})",
                    e.i, e.j, last.0, last.1
                )));
            }
            last = (e.i, e.j);
            let v = ctx.spec.parse_scalar(&e.v)?;
            if v.is_zero() {
                return Err(Error::Format(format!("zero entry at ({},{})", e.i, e.j)));
            }
            seen.insert((e.i, e.j), v);
        }
        Ok(Self { ctx, entries: seen })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_doc()).expect("matrix serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: MatrixDoc = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        Self::from_doc(&doc)
    }
}

impl fmt::Display for UTMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (i, j, v)) in self.entries().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if v.is_one() {
                write!(f, "e({i},{j})")?;
            } else {
                write!(f, "({v})e({i},{j})")?;
            }
        }
        Ok(())
    }
}

impl Serialize for UTMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_doc().serialize(s)
    }
}

macro_rules! forward_matrix_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&UTMatrix> for &UTMatrix {
            type Output = UTMatrix;

            fn $method(self, rhs: &UTMatrix) -> UTMatrix {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }

        impl $trait<UTMatrix> for UTMatrix {
            type Output = UTMatrix;

            fn $method(self, rhs: UTMatrix) -> UTMatrix {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_matrix_op!(Add, add, try_add);
forward_matrix_op!(Sub, sub, try_sub);
forward_matrix_op!(Mul, mul, try_mul);

impl Neg for &UTMatrix {
    type Output = UTMatrix;

    fn neg(self) -> UTMatrix {
        self.scale(&self.ctx.scalar(-1))
    }
}

/// JSON form of a matrix: `{"r":..,"field":..,"entries":[{"i","j","v"}..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDoc {
    pub r: usize,
    pub field: FieldSpec,
    pub entries: Vec<EntryDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryDoc {
    pub i: usize,
    pub j: usize,
    pub v: String,
}

/// An invertible upper triangular matrix (diagonal included).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvTriMatrix {
    ctx: RingContext,
    entries: Entries,
}

impl InvTriMatrix {
    pub fn identity(ctx: RingContext) -> Self {
        let entries = (1..=ctx.r).map(|i| ((i, i), ctx.one())).collect();
        Self { ctx, entries }
    }

    pub fn from_entries<I>(ctx: RingContext, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Scalar)>,
    {
        let mut map = Entries::new();
        for (i, j, v) in entries {
            if !(1 <= i && i <= j && j <= ctx.r) {
                return Err(Error::InvalidIndex { i, j, r: ctx.r });
            }
            scalar_is_compatible(&ctx, &v)?;
            let acc = map.remove(&(i, j)).unwrap_or_else(|| ctx.zero());
            map.insert((i, j), acc + v);
        }
        map.retain(|_, v| !v.is_zero());
        if let Some(i) = (1..=ctx.r).find(|i| !map.contains_key(&(*i, *i))) {
            return Err(Error::Singular(i));
        }
        Ok(Self { ctx, entries: map })
    }

    /// `D = sum d_i e_{i,i}`.
    pub fn diagonal(ctx: RingContext, d: &[Scalar]) -> Result<Self> {
        if d.len() != ctx.r {
            return Err(Error::LengthMismatch {
                expected: ctx.r,
                got: d.len(),
            });
        }
        Self::from_entries(
            ctx,
            d.iter().enumerate().map(|(k, v)| (k + 1, k + 1, v.clone())),
        )
    }

    /// `T_{i,j} = I - e_{i,j}`.
    pub fn transvection(ctx: RingContext, i: usize, j: usize) -> Result<Self> {
        if !ctx.is_strict_upper(i, j) {
            return Err(Error::InvalidIndex { i, j, r: ctx.r });
        }
        let mut t = Self::identity(ctx);
        t.entries.insert((i, j), ctx.scalar(-1));
        Ok(t)
    }

    pub fn ctx(&self) -> &RingContext {
        &self.ctx
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.entries
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| self.ctx.zero())
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.entries.iter().map(|(&(i, j), v)| (i, j, v))
    }

    /// Exact inverse by back substitution.
    pub fn inverse(&self) -> Result<Self> {
        let r = self.ctx.r;
        let mut inv = Entries::new();
        for j in 1..=r {
            let djj = self.get(j, j);
            inv.insert((j, j), djj.inverse().map_err(|_| Error::Singular(j))?);
            for i in (1..j).rev() {
                let mut acc = self.ctx.zero();
                for k in i + 1..=j {
                    if let (Some(b), Some(x)) = (self.entries.get(&(i, k)), inv.get(&(k, j))) {
                        acc = acc + b * x;
                    }
                }
                if !acc.is_zero() {
                    let dii = self.get(i, i).inverse().map_err(|_| Error::Singular(i))?;
                    inv.insert((i, j), -(dii * acc));
                }
            }
        }
        Ok(Self {
            ctx: self.ctx,
            entries: inv,
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.ctx.ensure_same(&other.ctx)?;
        Ok(Self {
            ctx: self.ctx,
            entries: sparse_product(&self.entries, &other.entries),
        })
    }

    /// `B^{-1} A B`. Conjugating by an upper triangular matrix keeps `A` in `N_r`.
    pub fn conjugate(&self, a: &UTMatrix) -> Result<UTMatrix> {
        self.ctx.ensure_same(&a.ctx)?;
        let inv = self.inverse()?;
        Ok(self.conjugate_with_inverse(&inv, a))
    }

    /// `B^{-1} A B` given a precomputed `B^{-1}`.
    pub(crate) fn conjugate_with_inverse(&self, inv: &InvTriMatrix, a: &UTMatrix) -> UTMatrix {
        let left = sparse_product(&inv.entries, &a.entries);
        let entries = sparse_product(&left, &self.entries);
        debug_assert!(entries.keys().all(|&(i, j)| i < j));
        UTMatrix {
            ctx: self.ctx,
            entries,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.entries.len() == self.ctx.r && self.entries.iter().all(|(&(i, j), v)| i == j && v.is_one())
    }
}

/// `J = sum e_{i,i+1}`.
pub fn shift_matrix(ctx: RingContext) -> UTMatrix {
    weighted_shift(ctx, |_| 1)
}

/// `W1 = sum i e_{i,i+1}`.
pub fn w1(ctx: RingContext) -> UTMatrix {
    weighted_shift(ctx, |i| i as i64)
}

/// `W2 = sum (r-i) e_{i,i+1}`.
pub fn w2(ctx: RingContext) -> UTMatrix {
    let r = ctx.r as i64;
    weighted_shift(ctx, move |i| r - i as i64)
}

fn weighted_shift(ctx: RingContext, weight: impl Fn(usize) -> i64) -> UTMatrix {
    UTMatrix::from_entries(ctx, (1..ctx.r).map(|i| (i, i + 1, ctx.scalar(weight(i)))))
        .expect("superdiagonal positions are valid")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedMatrix {
    J,
    W1,
    W2,
}

pub fn named_matrix(ctx: RingContext, which: NamedMatrix) -> UTMatrix {
    match which {
        NamedMatrix::J => shift_matrix(ctx),
        NamedMatrix::W1 => w1(ctx),
        NamedMatrix::W2 => w2(ctx),
    }
}

/// `D^{-1} J D` for `D = diag(d)`, by explicit conjugation.
pub fn s1_element(ctx: RingContext, d: &[Scalar]) -> Result<UTMatrix> {
    let dm = InvTriMatrix::diagonal(ctx, d)?;
    dm.conjugate(&shift_matrix(ctx))
}

/// `T^{-1} J T` for `T = I - e_{i,j}`, by explicit inversion and conjugation.
pub fn s2_element(ctx: RingContext, i: usize, j: usize) -> Result<UTMatrix> {
    let t = InvTriMatrix::transvection(ctx, i, j)?;
    t.conjugate(&shift_matrix(ctx))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(r: usize) -> RingContext {
        RingContext::new(r, FieldSpec::Rationals).unwrap()
    }

    fn e(c: RingContext, i: usize, j: usize) -> UTMatrix {
        UTMatrix::unit(c, i, j).unwrap()
    }

    fn m(c: RingContext, terms: &[(i64, usize, usize)]) -> UTMatrix {
        UTMatrix::from_entries(c, terms.iter().map(|&(v, i, j)| (i, j, c.scalar(v)))).unwrap()
    }

    #[test]
    fn units() {
        let c = ctx(4);
        assert_eq!(e(c, 1, 2).get(1, 2), c.one());
        assert_eq!(e(c, 3, 4).nnz(), 1);
        assert!(UTMatrix::unit(c, 2, 2).is_err());
        assert!(UTMatrix::unit(c, 0, 2).is_err());
        assert!(UTMatrix::unit(c, 3, 5).is_err());
        assert!(UTMatrix::unit_or_zero(c, 0, 3).is_zero());
        assert!(UTMatrix::unit_or_zero(c, 2, 5).is_zero());
        assert!(RingContext::new(1, FieldSpec::Rationals).is_err());
    }

    #[test]
    fn products_and_powers() {
        let c = ctx(4);
        assert_eq!(&e(c, 1, 2) * &e(c, 2, 3), e(c, 1, 3));
        assert!(shift_matrix(c).power(4).unwrap().is_zero());
        assert_eq!(w1(c).power(2).unwrap(), m(c, &[(2, 1, 3), (6, 2, 4)]));
        assert_eq!(shift_matrix(c).power(0), Err(Error::ZeroPower));
    }

    #[test]
    fn commutators() {
        let c = ctx(4);
        assert_eq!(e(c, 1, 2).commutator(&e(c, 2, 3)).unwrap(), e(c, 1, 3));
        assert_eq!(e(c, 1, 3).commutator(&e(c, 3, 4)).unwrap(), e(c, 1, 4));
        let j = shift_matrix(c);
        assert!(j.commutator(&j).unwrap().is_zero());
    }

    #[test]
    fn context_mismatch() {
        let a = shift_matrix(ctx(4));
        let b = shift_matrix(ctx(5));
        assert!(matches!(a.try_add(&b), Err(Error::ContextMismatch { .. })));
        let f7 = RingContext::new(4, FieldSpec::prime(7).unwrap()).unwrap();
        assert!(a.commutator(&shift_matrix(f7)).is_err());
    }

    #[test]
    fn center_and_omega() {
        let c = ctx(4);
        assert!(m(c, &[(5, 1, 4)]).in_center());
        assert!(!e(c, 1, 3).in_center());
        assert!(UTMatrix::zero(c).in_center());
        assert!(m(c, &[(1, 1, 3), (2, 2, 4)]).in_omega());
        assert!(!e(c, 2, 3).in_omega());
        assert!(e(c, 1, 4).in_omega());
        let c3 = ctx(3);
        assert!(c3.omega_is_degenerate());
        assert!(shift_matrix(c3).in_omega());
    }

    #[test]
    fn named() {
        let c = ctx(4);
        assert_eq!(shift_matrix(c), m(c, &[(1, 1, 2), (1, 2, 3), (1, 3, 4)]));
        assert_eq!(w1(c), m(c, &[(1, 1, 2), (2, 2, 3), (3, 3, 4)]));
        assert_eq!(w2(c), m(c, &[(3, 1, 2), (2, 2, 3), (1, 3, 4)]));
        assert_eq!(named_matrix(c, NamedMatrix::W2), w2(c));
    }

    #[test]
    fn s1_elements() {
        let c = ctx(4);
        let d = |v: [i64; 4]| v.map(|x| c.scalar(x));
        assert_eq!(
            s1_element(c, &d([1, 2, 4, 8])).unwrap(),
            m(c, &[(2, 1, 2), (2, 2, 3), (2, 3, 4)])
        );
        assert_eq!(s1_element(c, &d([1, 1, 1, 1])).unwrap(), shift_matrix(c));
        assert_eq!(
            s1_element(c, &d([1, -1, 1, -1])).unwrap(),
            m(c, &[(-1, 1, 2), (-1, 2, 3), (-1, 3, 4)])
        );
        assert!(matches!(s1_element(c, &d([1, 0, 1, 1])), Err(Error::Singular(2))));
    }

    #[test]
    fn s2_elements() {
        let c = ctx(4);
        let j = shift_matrix(c);
        assert_eq!(s2_element(c, 2, 3).unwrap(), &(&j + &e(c, 2, 4)) - &e(c, 1, 3));
        assert_eq!(s2_element(c, 1, 2).unwrap(), &j + &e(c, 1, 3));
        assert_eq!(s2_element(c, 3, 4).unwrap(), &j - &e(c, 2, 4));
        assert!(s2_element(c, 3, 3).is_err());
    }

    #[test]
    fn conjugation() {
        let c = ctx(4);
        let j = shift_matrix(c);
        let a = w1(c);
        assert_eq!(InvTriMatrix::identity(c).conjugate(&a).unwrap(), a);
        let d = InvTriMatrix::diagonal(c, &[1, 2, 4, 8].map(|x| c.scalar(x))).unwrap();
        assert_eq!(d.conjugate(&j).unwrap(), j.scale(&c.scalar(2)));
        let t = InvTriMatrix::transvection(c, 2, 3).unwrap();
        assert_eq!(t.conjugate(&j).unwrap(), s2_element(c, 2, 3).unwrap());
    }

    #[test]
    fn inverses() {
        let c = ctx(4);
        let t = InvTriMatrix::transvection(c, 2, 3).unwrap();
        let expected =
            InvTriMatrix::from_entries(c, (1..=4).map(|i| (i, i, c.one())).chain([(2, 3, c.one())]))
                .unwrap();
        assert_eq!(t.inverse().unwrap(), expected);
        let d = InvTriMatrix::diagonal(c, &[1, 2, 4, 8].map(|x| c.scalar(x))).unwrap();
        let half = |k: i64| FieldSpec::Rationals.ratio(&1.into(), &k.into()).unwrap();
        let dinv = InvTriMatrix::diagonal(c, &[half(1), half(2), half(4), half(8)]).unwrap();
        assert_eq!(d.inverse().unwrap(), dinv);
        assert!(InvTriMatrix::identity(c).inverse().unwrap().is_identity());
        assert!(InvTriMatrix::diagonal(c, &[1, 0, 1, 1].map(|x| c.scalar(x))).is_err());
    }

    #[test]
    fn json_format() {
        let c = ctx(4);
        let a = m(c, &[(3, 3, 4), (1, 1, 2)]).try_add(&m(c, &[(1, 2, 4)])).unwrap();
        let half = FieldSpec::Rationals.ratio(&1.into(), &2.into()).unwrap();
        let a = a.try_add(&e(c, 1, 3).scale(&half)).unwrap();
        let text = a.to_json();
        assert_eq!(
            text,
            r#"{"r":4,"field":"Q","entries":[{"i":1,"j":2,"v":"1"},{"i":1,"j":3,"v":"1/2"},{"i":2,"j":4,"v":"1"},{"i":3,"j":4,"v":"3"}]}"#
        );
        assert_eq!(UTMatrix::from_json(&text).unwrap(), a);
        let bad = [
            r#"{"r":4,"field":"Q","entries":[{"i":2,"j":2,"v":"1"}]}"#,
            r#"{"r":4,"field":"Q","entries":[{"i":1,"j":3,"v":"1"},{"i":1,"j":2,"v":"1"}]}"#,
            r#"{"r":4,"field":"Q","entries":[{"i":1,"j":3,"v":"0"}]}"#,
            r#"{"r":4,"field":"F4","entries":[]}"#,
            r#"{"r":4,"field":"Q","entries":[{"i":1,"j":3,"v":"x"}]}"#,
            r#"{"r":4,"field":"Q""#,
        ];
        for b in bad {
            assert!(UTMatrix::from_json(b).is_err(), "{b}");
        }
    }
}
