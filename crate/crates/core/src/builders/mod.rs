//! Constructors for surfaces, products, mapping tori, doubles, towers and
//! presentation complexes, plus the example corpus.

pub mod corpus;
pub mod cw2;
pub mod gluing;
pub mod product;

pub use cw2::{disjoint_union, fox_complex, sphere, surface, Cw2, Edge, BOUNDARY};
pub use gluing::{double, level_label, tower, tower_report, Tower, TowerReport};
pub use product::{mapping_torus, product_with_interval, MonodromySpec};
