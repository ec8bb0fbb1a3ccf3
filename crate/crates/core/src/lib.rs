//! Separated set-systems and cubillages of cyclic zonotopes.
//!
//! A collection of subsets of `[n]` is `r`-separated when no two members
//! alternate more than `r + 1` times. The maximal `(d−1)`-separated
//! collections of full size are exactly the vertex label sets (spectra) of
//! fine zonotopal tilings, or cubillages, of the cyclic zonotope `Z(n,d)`.
//! This crate computes with both sides of that correspondence.
//!
//! ```
//! use zonoforge::setcalc::{is_pure, max_size};
//! use zonoforge::AuditCaps;
//!
//! let p = is_pure(6, 4, &AuditCaps::default())?;
//! assert!(!p.pure);
//! assert_eq!(p.witness.unwrap().len(), 55);
//! assert_eq!(max_size(6, 4)?, 57);
//! # Ok::<(), zonoforge::Error>(())
//! ```

mod bits;
mod caps;
mod error;
mod formats;

pub mod cubillage;
pub mod extendability;
pub mod membrane;
pub mod setcalc;
pub mod zonogeom;

pub use caps::{AuditCaps, AUDIT_CAP_VAR};
pub use cubillage::{Cube, Cubillage, Diagnostic};
pub use error::{Error, Result};
pub use extendability::Certificate;
pub use membrane::{InversionSet, Membrane, ParityConvention};
pub use setcalc::{Collection, SubsetMask};

/// Largest supported ground set.
pub const MAX_GROUND: usize = 30;

/// Library version, embedded in CLI output.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Version of the JSON document layout.
pub const SCHEMA_VERSION: u32 = 1;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/separation.md")]
    mod separation {}
    #[doc = include_str!("../../../book/src/zonotopes.md")]
    mod zonotopes {}
    #[doc = include_str!("../../../book/src/cubillages.md")]
    mod cubillages {}
    #[doc = include_str!("../../../book/src/membranes.md")]
    mod membranes {}
    #[doc = include_str!("../../../book/src/inversions.md")]
    mod inversions {}
    #[doc = include_str!("../../../book/src/extendability.md")]
    mod extendability {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
