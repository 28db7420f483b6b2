//! Finite groups, their normal-subgroup lattices, the functor
//! `Q(G, N) = preimage of (G/N)'` and the star forests it induces.

pub mod abelian;
pub mod bsgs;
pub mod catalog;
pub mod classes;
pub mod cli;
pub mod element;
pub mod error;
pub mod field;
pub mod functor;
pub mod graph;
pub mod group;
pub mod hom;
pub mod invariants;
pub mod io;
pub mod lattice;
pub mod matrix;
pub mod perm;
pub mod signature;
pub mod subgroup;

pub use catalog::{parse_group_spec, realize, Atom, CatalogError, GroupSpec};
pub use element::Element;
pub use error::{AlgebraError, GroupError, Result};
pub use field::{FieldElement, FiniteField};
pub use functor::{check_functoriality, q_of, q_oracle, q_subgroup};
pub use graph::{
    automorphism_edge_action, build_graph, edge_stabilizer_check, h1_edge_check, property_r, star_decomposition,
    Automorphism, PropertyRGraph, PropertyRVariant, PropertyRVerdict,
};
pub use group::Group;
pub use hom::{make_homomorphism, quotient_group, Homomorphism, PairMorphism};
pub use io::{emit_dot, emit_json, read_json, GraphDocument};
pub use lattice::{normal_subgroups, NormalLattice};
pub use matrix::Matrix;
pub use perm::Permutation;
pub use signature::{parse_signature, StarSignature};
pub use subgroup::Subgroup;
