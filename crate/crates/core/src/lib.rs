//! Dynamics of Newton's method on real quintics.
//!
//! Bring-Jerrard quintics reduce to the family `f_c(x) = x^5 - c x + 1`.
//! On the band `0 < c < c0` the Newton map of `f_c` has a rich bifurcation
//! structure. This crate codes it symbolically and measures its entropy with
//! kneading determinants and Markov partitions.

pub mod cli;
pub mod kneading;
pub mod markov;
pub mod newton;
pub mod poly;
pub mod reduction;
pub mod symbolic;
