//! Tight spectra and étale groupoids of finite pseudobases.
//!
//! The library works over finite carriers throughout: subsets are bit
//! vectors, relations are dense boolean matrices, and every existence
//! theorem is realised as a terminating search. The main pipeline goes
//!
//! * [`rel`] — binary relations `(P, ≺)` with the dense/compact cover
//!   calculus and pseudobasis validation;
//! * [`tight`] — Frink filters, tight subsets and the search forms of the
//!   selection and stretching theorems;
//! * [`spectrum`] — the tight spectrum as a finite topological space with
//!   its basic opens and the representation checks;
//! * [`fintop`] — finite topological spaces, saturation, patch topologies
//!   and concrete pseudobases, including topology recovery;
//! * [`invsemi`] — Cayley-table inverse semigroups, cosets and ordered
//!   structure;
//! * [`gpd`] — finite groupoids, bisections, the tight groupoid of a
//!   pseudobasic inverse semigroup and groupoid recovery.
//!
//! All values are immutable after construction and all operations are pure;
//! everything can be shared freely across threads.

pub mod carrier;
pub mod error;
pub mod fintop;
pub mod fixtures;
pub mod gpd;
pub mod invsemi;
pub mod io;
pub mod rel;
pub mod report;
pub mod spectrum;
pub mod tight;

pub use carrier::{Carrier, Subset, DEFAULT_CARRIER_CAP, MAX_CARRIER};
pub use error::{Error, Result};
pub use rel::{CoverKind, RelStructure};
pub use report::{Check, ValidationReport};
