//! Seeded instance generators.

pub mod reduction;
pub mod representation;
pub mod rng;

pub use reduction::{
    enumerate_instances, nonbetweenness_to_graph, random_instance, NonBetweennessInstance,
};
pub use representation::{
    banded_representation, random_representation, representation_to_graph, Coord, Triangle,
    TriangleRepresentation,
};
