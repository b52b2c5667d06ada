//! Exact arithmetic: prime and extension fields, cyclotomic integers and the
//! reduction maps used for block distribution.

pub mod cyclotomic;
pub mod extfield;
pub mod fp;
pub mod primes;

pub use cyclotomic::{cyclotomic_polynomial, Cyclotomic, EigenvalueMultiset};
pub use extfield::{residue_field_embedding, ExtElem, ExtField, ResidueEmbedding};
pub use fp::{Fp, Poly};
pub use primes::{find_dixon_prime, primitive_nth_root};
