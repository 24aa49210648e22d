//! Incidence coalgebras of layered combinatorial structures, exactly.
//!
//! Finite posets, finite sets, rooted forests, and signature-decorated
//! forests each assemble into a simplicial groupoid whose simplices are
//! layerings. This crate materializes those groupoids up to a size
//! bound, identifies objects by canonical keys with exact automorphism
//! counts, and computes the induced coalgebra structure over exact
//! rationals: coproducts by sub-decomposition counting, the convolution
//! algebra of functionals, and Möbius functions both by alternating-sum
//! inversion over nondegenerate layerings and in closed form.
//!
//! The simplicial side is executable rather than assumed: checkers in
//! [`simplicial`] verify the decomposition-space pullback squares, the
//! Segal and completeness conditions, and culf maps at the level of
//! homotopy cardinalities, and [`bicomodule`] builds the two-variable
//! layered-pair structure — abacus map, modified top face, extra
//! pointings — whose coactions feed a generalised Rota identity for the
//! Möbius function of finite posets. Every verified square lands in a
//! [`report::CheckReport`] entry, pass or fail, with a witness class
//! when there is one.
//!
//! The crate is `no_std` (with `alloc`) and dependency-free; results
//! are deterministic, with every list sorted by canonical key.

#![no_std]
// index loops over bitmask rows are the dominant idiom here; the
// iterator forms obscure the (i, j) relation symmetry
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod rational;
pub mod groupoid;
pub mod poset;
pub mod layered;
pub mod forest;
pub mod ptree;
pub mod report;
pub mod obj;
pub mod simplicial;
pub mod coalgebra;
pub mod bicomodule;
