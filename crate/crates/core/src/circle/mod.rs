//! Two ways of cutting up the unit interval: Jutila's averaged short intervals around
//! fractions with moduli from a prescribed set, and the classical Farey dissection.

pub mod farey;
pub mod jutila;

pub use farey::{check_partition, farey_dissect, major_arc_quadrature, FareyArc, PartitionReport};
pub use jutila::{
    build_moduli_set, jutila_constant, jutila_indicator, jutila_l2_error, jutila_mass, ModuliSet,
};
