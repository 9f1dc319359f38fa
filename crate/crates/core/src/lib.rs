//! Finitely presented groups, coset enumeration and hyperbolic geometry
//! for branched double covers of twist-roll spun knots.

pub mod abelian;
pub mod enumeration;
pub mod error;
pub mod hypgeom;
pub mod presentation;
pub mod smith;
pub mod topology;
pub mod word;

pub use abelian::{abelianization, AbelianInvariants};
pub use enumeration::{Certificate, Claim, CosetTable};
pub use error::{Error, Result};
pub use presentation::Presentation;
pub use word::{commutator, Word};
