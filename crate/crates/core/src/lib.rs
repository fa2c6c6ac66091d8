//! Exact construction, counting and certification of diamond-extremal
//! tournaments, skew-conference Seidel matrices and FF₄ hypergraphs.
//!
//! A *diamond* is a 4-vertex tournament made of a 3-cycle and one vertex
//! that beats all of it or loses to all of it. The number of diamonds of a
//! tournament is tied to the fourth characteristic-polynomial coefficient
//! of its Seidel matrix `S = A - Aᵀ` by `σ₄ = 8δ + C(n,4)`; the modules
//! below compute both sides exactly and cross-check them.

pub mod constructions;
pub mod error;
pub mod field;
pub mod formats;
pub mod hypergraph;
pub mod search;
pub mod spectral;
pub mod tournament;

pub use error::{Error, Result};
pub use hypergraph::Hypergraph4;
pub use spectral::{CharPoly, SeidelMatrix};
pub use tournament::{ArcFlip, Tournament};
