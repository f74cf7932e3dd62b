//! Polynomial invariants of classical diagrams and identification
//! fingerprints.

pub mod bracket;
pub mod homfly;
pub mod poly;
pub mod text;

use serde::{Deserialize, Serialize};

use crate::diagram::ClassicalDiagram;
use crate::error::InvariantError;
pub use homfly::HomflyEngine;
pub use poly::{LaurentPoly, Poly1, Poly2};

/// Largest diagram the invariant routines accept by default.
pub const DEFAULT_CROSSING_BUDGET: usize = 64;

/// HOMFLY-PT, Jones and Alexander polynomials of one diagram. Jones and
/// Alexander use doubled exponents of `t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "text::FingerprintText", try_from = "text::FingerprintText")]
pub struct Fingerprint {
    pub homfly: Poly2,
    pub jones: Poly1,
    pub alexander: Poly1,
    pub components: usize,
}

impl Fingerprint {
    pub fn unknot() -> Fingerprint {
        Fingerprint { homfly: Poly2::one(), jones: Poly1::one(), alexander: Poly1::one(), components: 1 }
    }

    pub fn is_unknot(&self) -> bool {
        *self == Fingerprint::unknot()
    }

    pub fn mirror(&self) -> Fingerprint {
        Fingerprint {
            homfly: homfly::mirror_homfly(&self.homfly),
            jones: self.jones.invert_variable(),
            // the Conway polynomial of a mirror is ∇(-z), with only
            // powers of parity components - 1
            alexander: if self.components.is_multiple_of(2) { -&self.alexander } else { self.alexander.clone() },
            components: self.components,
        }
    }

    /// The lesser of the fingerprint and its mirror, a key invariant under
    /// mirroring.
    pub fn mirror_key(&self) -> Fingerprint {
        let m = self.mirror();
        if m < *self {
            m
        } else {
            self.clone()
        }
    }
}

pub fn mirror_fingerprint(f: &Fingerprint) -> Fingerprint {
    f.mirror()
}

pub fn check_budget(d: &ClassicalDiagram, budget: usize) -> Result<(), InvariantError> {
    if d.n() > budget {
        Err(InvariantError::Budget { crossings: d.n(), budget })
    } else {
        Ok(())
    }
}

pub fn kauffman_bracket(d: &ClassicalDiagram) -> Result<Poly1, InvariantError> {
    check_budget(d, DEFAULT_CROSSING_BUDGET)?;
    Ok(bracket::kauffman_bracket(d))
}

pub fn jones(d: &ClassicalDiagram) -> Result<Poly1, InvariantError> {
    check_budget(d, DEFAULT_CROSSING_BUDGET)?;
    Ok(bracket::jones_from_bracket(d))
}

pub fn homfly(d: &ClassicalDiagram) -> Result<Poly2, InvariantError> {
    check_budget(d, DEFAULT_CROSSING_BUDGET)?;
    Ok(homfly::homfly(d))
}

pub fn alexander(d: &ClassicalDiagram) -> Result<Poly1, InvariantError> {
    Ok(homfly::alexander_from_homfly(&homfly(d)?))
}

/// Fingerprint of a diagram. HOMFLY-PT comes from the skein engine, Jones
/// from the bracket state sum and Alexander from the HOMFLY-PT
/// specialization at `v = 1`.
pub fn fingerprint_with(engine: &mut HomflyEngine, d: &ClassicalDiagram) -> Result<Fingerprint, InvariantError> {
    check_budget(d, DEFAULT_CROSSING_BUDGET)?;
    let h = engine.compute(d);
    Ok(Fingerprint {
        alexander: homfly::alexander_from_homfly(&h),
        jones: bracket::jones_from_bracket(d),
        homfly: h,
        components: d.components(),
    })
}

pub fn fingerprint(d: &ClassicalDiagram) -> Result<Fingerprint, InvariantError> {
    fingerprint_with(&mut HomflyEngine::new(), d)
}

/// Fingerprint for knots only; links are rejected.
pub fn knot_fingerprint(d: &ClassicalDiagram) -> Result<Fingerprint, InvariantError> {
    let c = d.components();
    if c != 1 {
        return Err(InvariantError::NotAKnot(c));
    }
    fingerprint(d)
}
