//! Independence polynomials of bounded-degree hypergraphs.
//!
//! The crate computes hypergraph independence polynomials exactly and
//! numerically, builds the self-avoiding-walk style hypertrees whose
//! partition functions are divisible by the original one, certifies
//! zero-free regions of the complex fugacity plane by sampling, and
//! analyses the fixed points of the univariate tree recursion
//! `f(z) = lambda * (1 - (z/(1+z))^b)^d` to locate the maximal zero-free
//! disk for uniform linear hypertrees.

pub mod bigfloat;
pub mod dynamics;
pub mod error;
pub mod expnum;
pub mod fptas;
pub mod gen;
pub mod hypergraph;
pub mod partition;
pub mod poly;
pub mod regions;
pub mod roots;
pub mod sphere;
pub mod weitz;
pub mod zeros;

pub use error::{Error, Result};
pub use hypergraph::Hypergraph;
