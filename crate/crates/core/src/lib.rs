pub mod error;
pub mod evolve;
pub mod factors;
pub mod graph;
pub mod oracle;
pub mod rational;
mod stream;
pub mod toughness;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
pub use rational::RationalValue;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/toughness.md")]
    mod toughness {}
    #[doc = include_str!("../../../book/src/factors.md")]
    mod factors {}
    #[doc = include_str!("../../../book/src/solver.md")]
    mod solver {}
    #[doc = include_str!("../../../book/src/oracles.md")]
    mod oracles {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
