//! Orders in complex cubic fields, their lattices and module classes.

mod classes;
mod field;
pub mod lattice;
mod order;
pub mod search;

pub use classes::{
    class_number, class_number_via_conductor, counts, is_isomorphic, isomorphism_witness, minkowski_index_bound,
    module_classes, multiplier_ring, reduced_superlattices, unit_exponent, unit_regulator, LatticeClass, OLattice,
    MINKOWSKI,
};
pub use field::{CubicField, Elem, RatMat};
pub use lattice::Lattice;
pub use order::{
    conductor, maximal_order, maximal_over, order_from_poly, orders_between, overorders, stable_lattices_between,
    CubicOrder,
};

#[cfg(test)]
mod tests;
