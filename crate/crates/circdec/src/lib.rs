//! Workbench for cyclic and quasi-cyclic LDPC codes.
//!
//! The library constructs circulant parity-check matrices from finite
//! geometries (`geometry`) and from parity-check polynomials of cyclic codes
//! (`cyclic`), decomposes them into block-circulant and CPM arrays
//! (`circulant`), characterizes the descendant codes algebraically (`cyclic`),
//! enumerates trapping sets on the Tanner graph (`tanner`) and measures
//! decoder performance over a simulated AWGN channel (`decode`). All algebra
//! lives in `gf`, which also provides the bit-packed GF(2) linear-algebra
//! oracle used to cross-check every rank and null-space claim.

pub mod alist;
pub mod circulant;
pub mod cyclic;
pub mod decode;
pub mod geometry;
pub mod gf;
pub mod tanner;
