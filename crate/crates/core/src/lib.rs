//! Subset sum, knapsack and bounded submonoid membership in finitely
//! generated groups.
//!
//! Free and hyperbolic groups are handled by building an automaton for
//! the instance, completing it with relator loops and saturating it with
//! ε-foldings; an ε-edge from the initial to a final state certifies a
//! solution and its price gives the optimum. Free abelian and Heisenberg
//! groups use ball enumeration, `BS(n, ±n)` a power-edge saturation.

pub mod automata;
pub mod error;
pub mod mikhailova;
pub mod oracles;
pub mod presentation;
pub mod reductions;
pub mod solve;
pub mod special;
pub mod word;

pub use error::{Error, Result};
pub use presentation::Presentation;
pub use word::{Alphabet, CyclicDecomposition, Letter, Word};
