//! Delta-crossing and triple-crossing knot diagrams.
//!
//! The crate covers text codecs and planar-map semantics for the diagram
//! kinds ([`diagram`]), conversions between them ([`resolve`]), local
//! pattern detection in triple-point shadows ([`tangles`]), polynomial
//! invariants ([`invariants`]), identification against a reference table
//! ([`identify`]) and the enumeration pipeline ([`tabulate`]).

pub mod checks;
pub mod diagram;
pub mod error;
pub mod identify;
pub mod invariants;
pub mod resolve;
pub mod tabulate;
pub mod tangles;

pub use diagram::{
    Arc, ClassicalDiagram, Crossing, DeltaCrossing, DeltaDiagram, DeltaType, PlanarMap, Role, Roles, ShadowProjection,
    Sign, TripleDiagram,
};
pub use error::{DiagramError, InvariantError};
pub use invariants::{Fingerprint, Poly1, Poly2};
