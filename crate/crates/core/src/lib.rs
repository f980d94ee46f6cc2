//! Quadratic characters, prime-ideal norm sieves and prime atlases for the
//! rings of integers of quadratic fields.
//!
//! ```
//! use quadprime::{FieldParams, sieve_norms_odd};
//!
//! let gauss = FieldParams::new(-1).unwrap();
//! let norms = sieve_norms_odd(&gauss, 50).unwrap();
//! assert_eq!(
//!     norms.iter().collect::<Vec<_>>(),
//!     [2, 5, 9, 13, 17, 21, 29, 33, 37, 41, 49]
//! );
//! ```

pub mod arithmetic;
pub mod atlas;
pub mod character;
pub mod cli;
pub mod error;
pub mod field;
pub mod ideals;
pub mod sieve;
pub mod verify;

pub use arithmetic::{factorize, is_prime, kronecker, squarefree_reduce, Factorization};
pub use atlas::{
    classify_point, enumerate_atlas, region_max_norm, render_svg, render_text, Atlas, PointClass, Region, RenderConfig,
};
pub use character::{build_character, odd_character, CharacterTable};
pub use error::{Error, Result};
pub use field::{ufd_candidate_real, FieldParams, RingElement};
pub use ideals::{
    conjugate_ideal, contains, find_default_ideal, ideal_display_class, validate_ideal, IdealClass, IdealSpec,
};
pub use sieve::{
    classify_prime, is_prime_norm, sieve_norms, sieve_norms_odd, starting_set, NormSet, SplitType, StartingSet,
};
