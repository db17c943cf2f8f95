//! Exact computations with the level-zero nil-DAHA, the equivariant K-theory
//! of affine Grassmannians and the quantum K-theoretic Chevalley rule.

pub mod error;
pub mod grassmannian;
pub mod nildaha;
pub mod quantum;
pub mod ring;
pub mod root_data;
pub mod semi_infinite;
pub mod weyl;

pub use error::{Error, Result};
pub use grassmannian::{GrClass, Grassmannian, LocalClass, SchubertExpansion, Window};
pub use nildaha::{NilDaha, SmashElt};
pub use ring::{LaurentPoly, RatFunc};
pub use root_data::{CartanType, Coweight, RootDatum, Weight};
pub use weyl::{AffineWeylElt, FiniteWeylElt, WeylGroup};
