pub mod error;
pub mod fano;
pub mod matroids;
pub mod numkernel;
pub mod polyhedra;
pub mod prevariety;
pub mod regression;
pub mod toriclib;
pub mod troplin;

pub use error::{Error, Result};

// The guide's code blocks run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/overview.md")]
    pub struct Overview;
    #[doc = include_str!("../../../book/src/numbers.md")]
    pub struct Numbers;
    #[doc = include_str!("../../../book/src/polyhedra.md")]
    pub struct Polyhedra;
    #[doc = include_str!("../../../book/src/prevariety.md")]
    pub struct Prevariety;
    #[doc = include_str!("../../../book/src/matroids.md")]
    pub struct Matroids;
    #[doc = include_str!("../../../book/src/linear_spaces.md")]
    pub struct LinearSpaces;
    #[doc = include_str!("../../../book/src/fano.md")]
    pub struct Fano;
    #[doc = include_str!("../../../book/src/planes.md")]
    pub struct Planes;
    #[doc = include_str!("../../../book/src/toric.md")]
    pub struct Toric;
    #[doc = include_str!("../../../book/src/cli.md")]
    pub struct Cli;
}
