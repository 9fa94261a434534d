//! Exact computation with possibly degenerate rational maps of the
//! projective line.
//!
//! A point of `P^{2d+1}` is a pair of degree-`d` binary forms. Such a pair
//! factors uniquely as a hole polynomial times a reduced map; the crate
//! extracts holes and depths, iterates and composes maps without cancelling
//! common factors, classifies GIT (semi)stability from depth data, and
//! builds one-parameter degenerations whose exact `t -> 0` limits certify
//! that a conjugacy class lies in the indeterminacy locus of an iterate map.
//!
//! ```
//! use ratdyn::cli::parse_map;
//! use ratdyn::git::{classify, Verdict};
//!
//! let f = parse_map("(X-Y)^2*Y*[-X:Y]").unwrap();
//! assert_eq!(classify(&f).verdict, Verdict::Stable);
//! ```

pub mod cli;
pub mod degeneration;
pub mod dynamics;
pub mod error;
pub mod exactalg;
pub mod git;
pub mod projmap;

pub use error::Error;
