//! Exact lattice algebra of sigma-fields on finite probability spaces.
//!
//! A complete sub-sigma-field of a finite probability space is determined by
//! the partition it induces on the positive-mass outcomes. This crate models
//! that correspondence directly: [`SigmaField`] is a canonical partition of
//! the support, and every operation (lattice meet/join, independence, the
//! partial sum `plus`, conditional expectation, complements) is computed in
//! exact rational arithmetic. No floating point is used anywhere.
//!
//! The main pieces:
//!
//! * [`space`]: probability spaces, events, random variables, products.
//! * [`sigma`]: sigma-fields as canonical support partitions.
//! * [`lattice`]: meet, join, independence, the partial operation `plus`.
//! * [`condexp`]: conditional expectation operators as rational matrices.
//! * [`complements`]: independent complements, two-sided complements,
//!   innovation sequences.
//! * [`laws`]: distributivity laws and related implications as checkable
//!   reports, plus a registry for driving them generically.
//! * [`search`]: seeded randomized falsification with greedy shrinking.
//! * [`catalog`]: pinned example instances with machine-checked facts.
//!
//! ```
//! use sigma_lattice::space::ProbSpace;
//! use sigma_lattice::sigma::SigmaField;
//! use sigma_lattice::lattice::{meet, join, independent};
//!
//! // Two fair coins: xi1 is the first toss, xi1*xi2 the product of both.
//! let sp = ProbSpace::uniform(&["++", "+-", "-+", "--"]).unwrap();
//! let x = SigmaField::from_blocks(&sp, &[vec![0, 1], vec![2, 3]]).unwrap();
//! let y = SigmaField::from_blocks(&sp, &[vec![0, 3], vec![1, 2]]).unwrap();
//! assert!(independent(&x, &y).unwrap());
//! assert!(meet(&x, &y).unwrap().is_trivial());
//! assert!(join(&x, &y).unwrap().is_discrete());
//! ```

pub mod catalog;
pub mod complements;
pub mod condexp;
pub mod error;
pub mod lattice;
pub mod laws;
pub mod partition;
pub mod rational;
pub mod report;
pub mod search;
pub mod sigma;
pub mod space;

pub use error::{Error, Result};
pub use rational::Rational;
pub use sigma::SigmaField;
pub use space::{Event, ProbSpace, RandomVariable, SpaceRef};
