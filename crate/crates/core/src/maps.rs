//! Linear and affine self-maps of `N_r` in coordinates.
//!
//! A map is stored as an `n x n` coefficient matrix whose `k`-th column holds
//! the coordinates of the image of the `k`-th basis unit, plus an optional
//! constant term. Basis units are ordered lexicographically:
//! `(1,2), (1,3), ..., (1,r), (2,3), ..., (r-1,r)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::nilmatrix::{InvTriMatrix, MatrixDoc, RingContext, UTMatrix};

/// The lexicographic bijection between positions `(i,j)` and coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisIndexing {
    ctx: RingContext,
}

impl BasisIndexing {
    pub fn new(ctx: RingContext) -> Self {
        Self { ctx }
    }

    pub fn len(&self) -> usize {
        self.ctx.n()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// 0-based coordinate of `e_{i,j}`.
    pub fn index(&self, i: usize, j: usize) -> Result<usize> {
        let r = self.ctx.r();
        if !self.ctx.is_strict_upper(i, j) {
            return Err(Error::InvalidIndex { i, j, r });
        }
        Ok((i - 1) * r - (i - 1) * i / 2 + (j - i - 1))
    }

    /// Inverse of [`index`](Self::index).
    pub fn pair(&self, k: usize) -> (usize, usize) {
        let r = self.ctx.r();
        let mut rest = k;
        for i in 1..r {
            let row_len = r - i;
            if rest < row_len {
                return (i, i + 1 + rest);
            }
            rest -= row_len;
        }
        panic!("basis index {k} out of range for r={r}");
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        let r = self.ctx.r();
        (1..r).flat_map(move |i| (i + 1..=r).map(move |j| (i, j)))
    }

    pub fn unit(&self, k: usize) -> UTMatrix {
        let (i, j) = self.pair(k);
        UTMatrix::unit(self.ctx, i, j).expect("valid basis index")
    }

    pub fn coordinates(&self, x: &UTMatrix) -> Vec<Scalar> {
        let mut out = vec![self.ctx.zero(); self.len()];
        for (i, j, v) in x.entries() {
            out[self.index(i, j).expect("stored entries are strictly upper")] = v.clone();
        }
        out
    }

    pub fn decode(&self, coords: &[Scalar]) -> Result<UTMatrix> {
        if coords.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: coords.len(),
            });
        }
        UTMatrix::from_entries(
            self.ctx,
            coords.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(k, v)| {
                let (i, j) = self.pair(k);
                (i, j, v.clone())
            }),
        )
    }
}

/// A linear map `N_r -> N_r`, optionally shifted by a constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapOnN {
    ctx: RingContext,
    columns: Vec<Vec<Scalar>>,
    constant: Option<UTMatrix>,
}

/// Three linear functionals giving the `e_{1,r-1}`, `e_{1,r}` and `e_{2,r}`
/// coordinates of a map into Omega.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaTriple {
    pub a: Vec<Scalar>,
    pub b: Vec<Scalar>,
    pub c: Vec<Scalar>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedMap {
    Identity,
    G,
    PAffine,
}

impl MapOnN {
    pub fn zero(ctx: RingContext) -> Self {
        let n = ctx.n();
        Self {
            ctx,
            columns: vec![vec![ctx.zero(); n]; n],
            constant: None,
        }
    }

    pub fn identity(ctx: RingContext) -> Self {
        let mut m = Self::zero(ctx);
        for k in 0..ctx.n() {
            m.columns[k][k] = ctx.one();
        }
        m
    }

    /// The linear map sending the `k`-th basis unit to `images[k]`.
    pub fn from_images(ctx: RingContext, images: &[UTMatrix]) -> Result<Self> {
        if images.len() != ctx.n() {
            return Err(Error::LengthMismatch {
                expected: ctx.n(),
                got: images.len(),
            });
        }
        let idx = BasisIndexing::new(ctx);
        let mut columns = Vec::with_capacity(images.len());
        for img in images {
            ctx.ensure_same(img.ctx())?;
            columns.push(idx.coordinates(img));
        }
        Ok(Self {
            ctx,
            columns,
            constant: None,
        })
    }

    pub fn from_columns(ctx: RingContext, columns: Vec<Vec<Scalar>>, constant: Option<UTMatrix>) -> Result<Self> {
        let n = ctx.n();
        if columns.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: columns.len(),
            });
        }
        for col in &columns {
            if col.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    got: col.len(),
                });
            }
            if let Some(bad) = col.iter().find(|v| v.spec() != ctx.spec()) {
                return Err(Error::FieldMismatch {
                    left: ctx.spec(),
                    right: bad.spec(),
                });
            }
        }
        if let Some(c) = &constant {
            ctx.ensure_same(c.ctx())?;
        }
        Ok(Self {
            ctx,
            columns,
            constant: constant.filter(|c| !c.is_zero()),
        })
    }

    /// Flattened coefficients, column by column (`k * n + coordinate`).
    pub fn from_flat(ctx: RingContext, flat: &[Scalar]) -> Result<Self> {
        let n = ctx.n();
        if flat.len() != n * n {
            return Err(Error::LengthMismatch {
                expected: n * n,
                got: flat.len(),
            });
        }
        Self::from_columns(ctx, flat.chunks(n).map(<[Scalar]>::to_vec).collect(), None)
    }

    pub fn to_flat(&self) -> Vec<Scalar> {
        self.columns.iter().flatten().cloned().collect()
    }

    pub fn ctx(&self) -> &RingContext {
        &self.ctx
    }

    pub fn indexing(&self) -> BasisIndexing {
        BasisIndexing::new(self.ctx)
    }

    pub fn columns(&self) -> &[Vec<Scalar>] {
        &self.columns
    }

    pub fn constant(&self) -> Option<&UTMatrix> {
        self.constant.as_ref()
    }

    pub fn is_linear(&self) -> bool {
        self.constant.is_none()
    }

    pub fn linear_part(&self) -> MapOnN {
        Self {
            ctx: self.ctx,
            columns: self.columns.clone(),
            constant: None,
        }
    }

    pub fn with_constant(mut self, c: UTMatrix) -> Result<Self> {
        self.ctx.ensure_same(c.ctx())?;
        self.constant = Some(c).filter(|c| !c.is_zero());
        Ok(self)
    }

    /// Image of the `k`-th basis unit under the linear part.
    pub fn image_of_unit(&self, k: usize) -> UTMatrix {
        self.indexing().decode(&self.columns[k]).expect("column has length n")
    }

    pub fn images(&self) -> Vec<UTMatrix> {
        (0..self.ctx.n()).map(|k| self.image_of_unit(k)).collect()
    }

    pub fn apply(&self, x: &UTMatrix) -> Result<UTMatrix> {
        self.ctx.ensure_same(x.ctx())?;
        let idx = self.indexing();
        let n = self.ctx.n();
        let mut out = vec![self.ctx.zero(); n];
        for (i, j, v) in x.entries() {
            let k = idx.index(i, j)?;
            for (c, coef) in self.columns[k].iter().enumerate() {
                if !coef.is_zero() {
                    out[c] = &out[c] + &(coef * v);
                }
            }
        }
        let lin = idx.decode(&out)?;
        Ok(match &self.constant {
            Some(c) => &lin + c,
            None => lin,
        })
    }

    fn zip_with(&self, other: &MapOnN, sign: i64) -> Result<MapOnN> {
        self.ctx.ensure_same(&other.ctx)?;
        let s = self.ctx.scalar(sign);
        let columns = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + &(&s * y)).collect())
            .collect();
        let constant = match (&self.constant, &other.constant) {
            (None, None) => None,
            (Some(c), None) => Some(c.clone()),
            (None, Some(d)) => Some(d.scale(&s)),
            (Some(c), Some(d)) => Some(c + &d.scale(&s)),
        };
        Self::from_columns(self.ctx, columns, constant)
    }

    pub fn try_add(&self, other: &MapOnN) -> Result<MapOnN> {
        self.zip_with(other, 1)
    }

    pub fn try_sub(&self, other: &MapOnN) -> Result<MapOnN> {
        self.zip_with(other, -1)
    }

    pub fn scale(&self, c: &Scalar) -> MapOnN {
        Self {
            ctx: self.ctx,
            columns: self
                .columns
                .iter()
                .map(|col| col.iter().map(|v| c * v).collect())
                .collect(),
            constant: self.constant.as_ref().map(|k| k.scale(c)).filter(|k| !k.is_zero()),
        }
    }

    /// `self ∘ inner`; both maps must be linear.
    pub fn compose(&self, inner: &MapOnN) -> Result<MapOnN> {
        self.ctx.ensure_same(&inner.ctx)?;
        if !self.is_linear() || !inner.is_linear() {
            return Err(Error::AffineMap);
        }
        let images = inner
            .images()
            .iter()
            .map(|img| self.apply(img))
            .collect::<Result<Vec<_>>>()?;
        Self::from_images(self.ctx, &images)
    }

    /// `h(X) = B f(B^{-1} X B) B^{-1}`.
    pub fn conjugate_by(&self, b: &InvTriMatrix) -> Result<MapOnN> {
        self.ctx.ensure_same(b.ctx())?;
        if !self.is_linear() {
            return Err(Error::AffineMap);
        }
        let binv = b.inverse()?;
        let idx = self.indexing();
        let images = (0..self.ctx.n())
            .map(|k| {
                let x = idx.unit(k);
                let inner = b.conjugate_with_inverse(&binv, &x);
                let fx = self.apply(&inner)?;
                Ok(binv.conjugate_with_inverse(b, &fx))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_images(self.ctx, &images)
    }

    pub fn to_doc(&self) -> MapDoc {
        MapDoc {
            r: self.ctx.r(),
            field: self.ctx.spec(),
            columns: self
                .columns
                .iter()
                .map(|c| c.iter().map(Scalar::render).collect())
                .collect(),
            constant: self.constant.as_ref().map(UTMatrix::to_doc),
        }
    }

    pub fn from_doc(doc: &MapDoc) -> Result<Self> {
        let ctx = RingContext::new(doc.r, doc.field)?;
        let columns = doc
            .columns
            .iter()
            .map(|c| {
                c.iter()
                    .map(|s| ctx.spec().parse_scalar(s))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let constant = match &doc.constant {
            Some(m) => {
                let c = UTMatrix::from_doc(m)?;
                ctx.ensure_same(c.ctx())?;
                Some(c)
            }
            None => None,
        };
        Self::from_columns(ctx, columns, constant)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_doc()).expect("map serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: MapDoc = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        Self::from_doc(&doc)
    }
}

impl Serialize for MapOnN {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_doc().serialize(s)
    }
}

/// JSON form of a map: `{"r":..,"field":..,"columns":[[..]..],"constant":..}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    pub r: usize,
    pub field: crate::field::FieldSpec,
    pub columns: Vec<Vec<String>>,
    pub constant: Option<MatrixDoc>,
}

fn require_r4(ctx: &RingContext) -> Result<()> {
    if ctx.r() < 4 {
        Err(Error::RankTooSmall {
            required: 4,
            r: ctx.r(),
        })
    } else {
        Ok(())
    }
}

/// `g(X) = x_{1,2} e_{1,r-1} + x_{r-1,r} e_{2,r}`.
pub fn g_map(ctx: RingContext) -> Result<MapOnN> {
    require_r4(&ctx)?;
    let r = ctx.r();
    let idx = BasisIndexing::new(ctx);
    let mut m = MapOnN::zero(ctx);
    m.columns[idx.index(1, 2)?][idx.index(1, r - 1)?] = ctx.one();
    m.columns[idx.index(r - 1, r)?][idx.index(2, r)?] = ctx.one();
    Ok(m)
}

/// The affine map `p(A) = e_{1,r-1} + a_{1,r} e_{1,r} + e_{2,r}`: centralizing
/// but not commuting.
pub fn p_affine_map(ctx: RingContext) -> Result<MapOnN> {
    require_r4(&ctx)?;
    let r = ctx.r();
    let idx = BasisIndexing::new(ctx);
    let mut m = MapOnN::zero(ctx);
    let k = idx.index(1, r)?;
    m.columns[k][k] = ctx.one();
    let constant = &UTMatrix::unit(ctx, 1, r - 1)? + &UTMatrix::unit(ctx, 2, r)?;
    m.with_constant(constant)
}

pub fn named_map(ctx: RingContext, which: NamedMap) -> Result<MapOnN> {
    match which {
        NamedMap::Identity => Ok(MapOnN::identity(ctx)),
        NamedMap::G => g_map(ctx),
        NamedMap::PAffine => p_affine_map(ctx),
    }
}

fn check_functional(ctx: &RingContext, v: &[Scalar]) -> Result<()> {
    if v.len() != ctx.n() {
        return Err(Error::LengthMismatch {
            expected: ctx.n(),
            got: v.len(),
        });
    }
    if let Some(bad) = v.iter().find(|x| x.spec() != ctx.spec()) {
        return Err(Error::FieldMismatch {
            left: ctx.spec(),
            right: bad.spec(),
        });
    }
    Ok(())
}

/// `X -> functional(X) e_{1,r}`, a map into the center.
pub fn zeta_map(ctx: RingContext, functional: &[Scalar]) -> Result<MapOnN> {
    check_functional(&ctx, functional)?;
    let idx = BasisIndexing::new(ctx);
    let slot = idx.index(1, ctx.r())?;
    let mut m = MapOnN::zero(ctx);
    for (k, v) in functional.iter().enumerate() {
        m.columns[k][slot] = v.clone();
    }
    Ok(m)
}

/// `X -> a(X) e_{1,r-1} + b(X) e_{1,r} + c(X) e_{2,r}`.
pub fn omega_map(ctx: RingContext, t: &OmegaTriple) -> Result<MapOnN> {
    require_r4(&ctx)?;
    for f in [&t.a, &t.b, &t.c] {
        check_functional(&ctx, f)?;
    }
    let r = ctx.r();
    let idx = BasisIndexing::new(ctx);
    let slots = [idx.index(1, r - 1)?, idx.index(1, r)?, idx.index(2, r)?];
    let mut m = MapOnN::zero(ctx);
    for k in 0..ctx.n() {
        m.columns[k][slots[0]] = t.a[k].clone();
        m.columns[k][slots[1]] = t.b[k].clone();
        m.columns[k][slots[2]] = t.c[k].clone();
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::nilmatrix::{shift_matrix, w1};

    fn ctx(r: usize) -> RingContext {
        RingContext::new(r, FieldSpec::Rationals).unwrap()
    }

    fn e(c: RingContext, i: usize, j: usize) -> UTMatrix {
        UTMatrix::unit(c, i, j).unwrap()
    }

    #[test]
    fn indexing_is_lexicographic() {
        let idx = BasisIndexing::new(ctx(4));
        let pairs: Vec<_> = idx.pairs().collect();
        assert_eq!(pairs, vec![(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]);
        for r in 2..10 {
            let idx = BasisIndexing::new(ctx(r));
            for (k, (i, j)) in idx.pairs().enumerate() {
                assert_eq!(idx.index(i, j).unwrap(), k);
                assert_eq!(idx.pair(k), (i, j));
                let coords = idx.coordinates(&idx.unit(k));
                assert!(coords.iter().enumerate().all(|(c, v)| v.is_one() == (c == k)));
            }
        }
    }

    #[test]
    fn from_images() {
        let c = ctx(4);
        let idx = BasisIndexing::new(c);
        let units: Vec<_> = (0..6).map(|k| idx.unit(k)).collect();
        assert_eq!(MapOnN::from_images(c, &units).unwrap(), MapOnN::identity(c));
        assert_eq!(
            MapOnN::from_images(c, &vec![UTMatrix::zero(c); 6]).unwrap(),
            MapOnN::zero(c)
        );
        let mut imgs = vec![UTMatrix::zero(c); 6];
        imgs[0] = e(c, 1, 3);
        imgs[5] = e(c, 2, 4);
        assert_eq!(MapOnN::from_images(c, &imgs).unwrap(), g_map(c).unwrap());
        assert!(MapOnN::from_images(c, &imgs[..5]).is_err());
    }

    #[test]
    fn apply_named() {
        let c = ctx(4);
        assert_eq!(MapOnN::identity(c).apply(&w1(c)).unwrap(), w1(c));
        let g = g_map(c).unwrap();
        let x = &e(c, 1, 2) + &e(c, 3, 4).scale(&c.scalar(5));
        assert_eq!(g.apply(&x).unwrap(), &e(c, 1, 3) + &e(c, 2, 4).scale(&c.scalar(5)));
        assert_eq!(g.apply(&e(c, 1, 2)).unwrap(), e(c, 1, 3));
        let p = p_affine_map(c).unwrap();
        assert_eq!(p.apply(&UTMatrix::zero(c)).unwrap(), &e(c, 1, 3) + &e(c, 2, 4));
        assert_eq!(
            p.apply(&(&e(c, 1, 2) + &e(c, 3, 4))).unwrap(),
            &e(c, 1, 3) + &e(c, 2, 4)
        );
        let a = &e(c, 1, 4).scale(&c.scalar(7)) + &e(c, 2, 3);
        assert_eq!(
            p.apply(&a).unwrap(),
            &(&e(c, 1, 3) + &e(c, 2, 4)) + &e(c, 1, 4).scale(&c.scalar(7))
        );
        assert!(g_map(ctx(3)).is_err());
        assert!(p_affine_map(ctx(3)).is_err());
    }

    #[test]
    fn zeta_and_omega() {
        let c = ctx(4);
        let idx = BasisIndexing::new(c);
        let mut f = vec![c.zero(); 6];
        f[idx.index(2, 3).unwrap()] = c.one();
        let z = zeta_map(c, &f).unwrap();
        assert_eq!(
            z.apply(&e(c, 2, 3).scale(&c.scalar(7))).unwrap(),
            e(c, 1, 4).scale(&c.scalar(7))
        );
        let t = OmegaTriple {
            a: vec![c.one(); 6],
            b: vec![c.scalar(2); 6],
            c: vec![c.scalar(3); 6],
        };
        let o = omega_map(c, &t).unwrap();
        assert!(o.apply(&shift_matrix(c)).unwrap().in_omega());
        assert!(zeta_map(c, &f[..5]).is_err());
    }

    #[test]
    fn arithmetic() {
        let c = ctx(4);
        let id = MapOnN::identity(c);
        let g = g_map(c).unwrap();
        assert_eq!(g.try_add(&MapOnN::zero(c)).unwrap(), g);
        assert_eq!(id.compose(&g).unwrap(), g);
        assert_eq!(
            id.scale(&c.scalar(2)).try_add(&id.scale(&c.scalar(3))).unwrap(),
            id.scale(&c.scalar(5))
        );
        assert!(g.try_sub(&g).unwrap().columns().iter().flatten().all(Scalar::is_zero));
        let p = p_affine_map(c).unwrap();
        assert_eq!(p.compose(&g), Err(Error::AffineMap));
        assert_eq!(g.compose(&p), Err(Error::AffineMap));
        assert!(p.try_sub(&p).unwrap().is_linear());
        assert!(g.try_add(&g_map(ctx(5)).unwrap()).is_err());
    }

    #[test]
    fn conjugation_by_trivial_conjugators() {
        let c = ctx(4);
        let g = g_map(c).unwrap();
        assert_eq!(g.conjugate_by(&InvTriMatrix::identity(c)).unwrap(), g);
        let d = InvTriMatrix::diagonal(c, &[1, 3, -2, 5].map(|x| c.scalar(x))).unwrap();
        let id = MapOnN::identity(c);
        assert_eq!(id.conjugate_by(&d).unwrap(), id);
        assert_eq!(
            p_affine_map(c).unwrap().conjugate_by(&d),
            Err(Error::AffineMap)
        );
    }

    #[test]
    fn conjugation_matches_stepwise_evaluation() {
        let c = ctx(4);
        let t = InvTriMatrix::transvection(c, 2, 3).unwrap();
        let tinv = t.inverse().unwrap();
        let g = g_map(c).unwrap();
        let h = g.conjugate_by(&t).unwrap();
        let x = e(c, 1, 2);
        // T^{-1} X T, then g, then T (.) T^{-1}, each step by plain products
        let tx = t.conjugate(&x).unwrap();
        let gx = g.apply(&tx).unwrap();
        let back = tinv.conjugate(&gx).unwrap();
        assert_eq!(h.apply(&x).unwrap(), back);
    }

    #[test]
    fn json_format() {
        let c = ctx(4);
        let p = p_affine_map(c).unwrap();
        let text = p.to_json();
        assert!(text.starts_with(r#"{"r":4,"field":"Q","columns":[["0","0","0","0","0","0"],"#));
        assert!(text.ends_with(
            r#""constant":{"r":4,"field":"Q","entries":[{"i":1,"j":3,"v":"1"},{"i":2,"j":4,"v":"1"}]}}"#
        ));
        assert_eq!(MapOnN::from_json(&text).unwrap(), p);
        let g = g_map(c).unwrap();
        assert!(g.to_json().ends_with(r#""constant":null}"#));
        assert!(MapOnN::from_json(r#"{"r":4,"field":"Q","columns":[],"constant":null}"#).is_err());
        assert!(MapOnN::from_json(r#"{"r":4,"field":"Q","columns":"#).is_err());
    }
}
