//! k maximally diverse solutions for problems whose solution families are
//! represented by the ideals of a poset.
//!
//! A family is given by a [`framework::PosetDag`] and a
//! [`framework::ReductionMap`]. Diverse k-tuples are computed as minimum
//! k-potentials, either through a minimum-cost flow ([`mcf_backend`]) or a
//! minimum s-t cut in a layered graph ([`cut_backend`]).

pub mod convex;
pub mod cut_backend;
pub mod driver;
pub mod error;
pub mod flow;
pub mod lattice;
pub mod framework;
pub mod io;
pub mod mcf_backend;
pub mod mincut;
pub mod oracle;
pub mod ringfamily;
pub mod stable_matching;

pub use error::{Error, Result};
