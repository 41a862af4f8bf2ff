//! Factor languages of infinite words, bifix codes inside them, and the
//! subgroups of the free group those codes generate.

pub mod alphabet;
pub mod code;
pub mod decode;
pub mod enumerate;
pub mod error;
pub mod extension;
pub mod factors;
pub mod free_group;
pub mod io;
pub mod lab;
pub mod morphism;
pub mod returns;
pub mod stallings;
pub mod transform;

pub use alphabet::{Alphabet, Letter, Word};
pub use code::BifixCode;
pub use error::{Error, Result};
pub use factors::{ComplexityProfile, FactorSet};
pub use morphism::Morphism;
