//! Exact commutative algebra over prime fields: Groebner bases, Koszul
//! complexes, Tor/Ext, depth and grade invariants, and the classification
//! layer built on depth-bounded functions over finite prime tables.

pub mod complex;
pub mod depth;
pub mod error;
pub mod field;
pub mod freemod;
pub mod groebner;
pub mod homalg;
pub mod module;
pub mod monomial;
pub mod parser;
pub mod poly;
pub mod ring;
pub mod session;
pub mod torpairs;

pub use complex::{ChainComplex, Grading};
pub use depth::{DepthProfile, DepthVerdict, ExtendedNat, PrimeEntry, PrimeTable};
pub use error::{Error, Result};
pub use field::PrimeField;
pub use freemod::{FreeModuleMap, Vector};
pub use groebner::{GroebnerBasis, Limits, ResolutionPrefix};
pub use module::PresentedModule;
pub use monomial::{Monomial, MonomialOrder, OrderKind};
pub use poly::{PolyRing, Polynomial};
pub use ring::{Ideal, QuotientRing};
pub use session::{Config, OutputFormat, Session};
pub use torpairs::{GeneratorSpec, PhiFilter, PhiFunction, SubsetChain, Verdict};
