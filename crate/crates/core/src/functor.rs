//! The functor `Q(G, N)`: the preimage in `G` of the derived subgroup of `G/N`.
//!
//! Two routes are provided. [`q_of`] uses `(G/N)' = G'N/N`, so the preimage is
//! the join `G' ∨ N`, located in the lattice from orders alone. [`q_oracle`]
//! builds the quotient, takes its derived subgroup and pulls it back.

use crate::error::Result;
use crate::group::Group;
use crate::hom::{quotient_group, PairMorphism};
use crate::lattice::NormalLattice;
use crate::subgroup::{derived_subgroup, join, Subgroup};

/// `Q(G, N)` as a subgroup, computed as `⟨G' ∪ N⟩`.
pub fn q_subgroup(g: &Group, n: &Subgroup) -> Result<Subgroup> {
    join(g, &derived_subgroup(g), n)
}

/// Vertex of `Q(G, N_i)` via the lattice join with the derived subgroup.
pub fn q_of(lattice: &NormalLattice, i: usize) -> Result<usize> {
    lattice.join_nodes(lattice.derived_index(), i)
}

/// Vertex of `Q(G, N_i)` via quotient, derived subgroup and preimage.
pub fn q_oracle(lattice: &NormalLattice, i: usize) -> Result<usize> {
    let g = lattice.group();
    let (quotient, projection) = quotient_group(g, lattice.node(i))?;
    let derived = derived_subgroup(&quotient);
    let preimage = projection.preimage_of_subgroup(&derived)?;
    lattice.find_node(&preimage)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorialityCheck {
    pub holds: bool,
    /// Element of `Q(G1, N1)` whose image escapes `Q(G2, N2)`.
    pub witness: Option<u32>,
}

/// Checks `f(Q(G1, N1)) ⊆ Q(G2, N2)` element by element.
pub fn check_functoriality(m: &PairMorphism) -> Result<FunctorialityCheck> {
    let f = m.hom();
    let q1 = q_subgroup(f.domain(), m.source())?;
    let q2 = q_subgroup(f.codomain(), m.target())?;
    let witness = q1.iter().find(|&x| !q2.contains(f.apply(x)));
    Ok(FunctorialityCheck {
        holds: witness.is_none(),
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::Element;
    use crate::hom::Homomorphism;
    use crate::lattice::normal_subgroups;
    use crate::perm::Permutation;
    use std::sync::Arc;

    fn perm(deg: usize, cycles: &[&[u32]]) -> Element {
        Element::Perm(Permutation::from_cycles(deg, cycles).unwrap())
    }

    fn sym(n: usize) -> Arc<Group> {
        let cycle: Vec<u32> = (0..n as u32).collect();
        Group::generate(&[perm(n, &[&[0, 1]]), perm(n, &[&cycle])]).unwrap()
    }

    #[test]
    fn s3_values() {
        let l = normal_subgroups(&sym(3));
        assert_eq!(q_of(&l, 0).unwrap(), 1);
        assert_eq!(q_of(&l, l.whole_index()).unwrap(), l.whole_index());
        for i in 0..l.len() {
            assert_eq!(q_of(&l, i).unwrap(), q_oracle(&l, i).unwrap());
        }
    }

    #[test]
    fn s4_v4_maps_to_a4() {
        let l = normal_subgroups(&sym(4));
        // nodes: {e}, V4, A4, S4
        assert_eq!(q_of(&l, 1).unwrap(), 2);
        assert_eq!(q_oracle(&l, 1).unwrap(), 2);
    }

    #[test]
    fn a5_oracle() {
        let a5 = Group::generate(&[perm(5, &[&[0, 1, 2]]), perm(5, &[&[0, 1, 2, 3, 4]])]).unwrap();
        let l = normal_subgroups(&a5);
        assert_eq!(q_oracle(&l, 0).unwrap(), l.whole_index());
        assert_eq!(q_oracle(&l, l.whole_index()).unwrap(), l.whole_index());
    }

    #[test]
    fn identity_morphism_is_functorial() {
        let g = sym(4);
        let l = normal_subgroups(&g);
        for n in l.nodes() {
            let m = PairMorphism::new(Homomorphism::identity(&g), n.clone(), n.clone()).unwrap();
            assert!(check_functoriality(&m).unwrap().holds);
        }
    }
}
