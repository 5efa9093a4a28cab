pub mod cubic_model;
pub mod fano_charts;
pub mod lattice;
pub mod polyring;
pub mod singclass;

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/polynomials.md")]
pub mod polynomials_chapter {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/singularities.md")]
pub mod singularities_chapter {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cubics.md")]
pub mod cubics_chapter {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/lines.md")]
pub mod lines_chapter {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/lattices.md")]
pub mod lattices_chapter {}

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
pub mod readme {}
