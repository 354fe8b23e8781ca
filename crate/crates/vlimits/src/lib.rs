//! Exact combinatorics of stable limits of line bundles on nodal curves.
//!
//! A nodal curve enters as its dual graph with positive integer edge lengths
//! and an integral edge twisting. From that data the crate computes, in exact
//! integer and rational arithmetic throughout:
//!
//! - the cochain complex, Laplacian, cycle space and lattice data of the
//!   graph ([`graph`]);
//! - chip-firing on subdivided graphs: admissible divisors, canonical
//!   extensions, firing moves and pullbacks ([`chipfire`]);
//! - floor-slope cochains and the spanning subgraph of integral edges, the
//!   engine that names every stable limit ([`slopes`]);
//! - the quadratic form, Voronoi cells and twisted mixed tilings of the
//!   degree-zero space ([`tilings`]);
//! - the cell complex of the infinite chain arrangement: orbit points and
//!   their cycle equations, torus symmetry, the census of stable-limit cells
//!   and their degeneration poset ([`toric`]);
//! - regeneration bookkeeping: chain indices, limit divisors, twist recovery
//!   and the transport identities tying chip-firing to slopes ([`regen`]).
//!
//! The `examples/` directory has one runnable program per capability; the
//! thin `vlimits` binary exposes the same functionality on files.

pub mod chipfire;
pub mod cli;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod oracle;
pub mod regen;
pub mod slopes;
pub mod tilings;
pub mod toric;
pub mod verify;
