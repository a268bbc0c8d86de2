//! Equivariant cohomology of Hamiltonian torus actions with isolated
//! fixed points, computed from fixed-point combinatorics in exact
//! rational arithmetic.
//!
//! The input is a list of fixed points together with the strata fixed
//! by codimension-1 subtori (two-spheres and 4-dimensional components
//! with their tangent weight data). Each polynomial degree yields a
//! linear constraint system over the rationals: congruences modulo the
//! stratum direction form, and divisibility conditions coming from
//! localization on the 4-dimensional strata. Solving degree by degree
//! gives bases of the cohomology, its Hilbert series, and ordinary
//! Betti numbers.
//!
//! See the `examples/` directory for runnable entry points, or the
//! `gkm` binary for the command-line interface.

pub mod cohomology;
pub mod constraints;
pub mod corpus;
pub mod exactalg;
pub mod model;
pub mod report;
