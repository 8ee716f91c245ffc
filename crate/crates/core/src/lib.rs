//! Symmetry-resolved entanglement entropy of SU(2) and U(1) invariant spin
//! systems.
//!
//! The crate is organised around one data type, [`SectorDims`]: a list of
//! sectors `(d_r, b_r)` describing how a symmetry-restricted Hilbert space
//! splits between a subsystem and its complement. From it:
//!
//! * [`typical_entropy`] gives the exact mean and variance of the restricted
//!   entanglement entropy of a random state,
//! * [`random_states`] samples such states and measures the same entropy,
//! * [`recoupling`] builds the states explicitly in the `2^N` product basis,
//! * [`asymptotics`] holds the large-`N` expansions.
//!
//! ```
//! use symres::{su2_dims::sector_dims, typical_entropy::average_entropy, TwiceSpin};
//! let dims = sector_dims(6, 3, TwiceSpin::ONE).unwrap();
//! assert!((average_entropy(&dims) - 0.884_523_809_5).abs() < 1e-9);
//! ```

pub mod abelian_u1;
pub mod asymptotics;
pub mod error;
pub mod random_states;
pub mod recoupling;
pub mod special_fn;
pub mod spin;
pub mod su2_dims;
pub mod typical_entropy;

mod linalg;

pub use error::{Error, Result};
pub use spin::TwiceSpin;
pub use su2_dims::SectorDims;
pub use typical_entropy::EntropyStats;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/dimensions.md")]
    mod dimensions {}
    #[doc = include_str!("../../../book/src/typical-entropy.md")]
    mod typical_entropy {}
    #[doc = include_str!("../../../book/src/sampling.md")]
    mod sampling {}
    #[doc = include_str!("../../../book/src/recoupling.md")]
    mod recoupling {}
    #[doc = include_str!("../../../book/src/asymptotics.md")]
    mod asymptotics {}
    #[doc = include_str!("../../../book/src/abelian.md")]
    mod abelian {}
}
