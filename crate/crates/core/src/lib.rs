//! Exact computations with centralizing and commuting linear maps on the ring
//! `N_r` of strictly upper triangular `r x r` matrices.
//!
//! A linear map `f: N_r -> N_r` is *centralizing* when `[f(x), x]` is central
//! for every `x`, and *commuting* when `[f(x), x] = 0`. Over a field of
//! characteristic zero and for `r >= 4`, every centralizing map has the form
//! `f(x) = lambda x + mu(x)` with `mu` taking values in the three-dimensional
//! corner space `Omega = span{e_{1,r-1}, e_{1,r}, e_{2,r}}`, and every
//! commuting map is `lambda x + a g(x) + zeta(x)` with `g` the distinguished
//! map `X -> x_{1,2} e_{1,r-1} + x_{r-1,r} e_{2,r}` and `zeta` central-valued.
//!
//! The crate decides these properties exactly, extracts the decompositions,
//! computes centralizers and map-space dimensions, and audits the closed-form
//! identities that the classification rests on.

pub mod analyzer;
pub mod error;
pub mod field;
pub mod linsolve;
pub mod maps;
pub mod nilmatrix;
pub mod sample;

pub use error::{Error, Result};
pub use field::{FieldSpec, Scalar};
pub use linsolve::{ExactMatrix, SubspaceBasis};
pub use maps::{BasisIndexing, MapOnN, OmegaTriple};
pub use nilmatrix::{InvTriMatrix, RingContext, UTMatrix};
