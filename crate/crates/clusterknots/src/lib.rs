pub mod alexander;
pub mod braid;
pub mod cluster;
pub mod error;
pub mod invariant;
pub mod matrix;
pub mod qcluster;
pub mod quiver;
pub mod scalar;
pub mod weyl;
pub mod cli;

#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/scalars.md")]
    pub mod scalars {}
    #[doc = include_str!("../../../book/src/quivers.md")]
    pub mod quivers {}
    #[doc = include_str!("../../../book/src/cluster.md")]
    pub mod cluster {}
    #[doc = include_str!("../../../book/src/alexander.md")]
    pub mod alexander {}
    #[doc = include_str!("../../../book/src/weyl.md")]
    pub mod weyl {}
    #[doc = include_str!("../../../book/src/quantum.md")]
    pub mod quantum {}
    #[doc = include_str!("../../../book/src/invariant.md")]
    pub mod invariant {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
