use propr::bsgs::StabilizerChain;
use propr::catalog::{catalog_atoms, realize_atom, Atom};
use propr::{Element, Permutation};

fn permutation_atoms() -> Vec<Atom> {
    catalog_atoms(800)
        .into_iter()
        .filter(|a| {
            matches!(
                a,
                Atom::Dihedral(_) | Atom::Symmetric(_) | Atom::Alternating(_) | Atom::Quaternion8
            )
        })
        .step_by(2)
        .take(20)
        .collect()
}

#[test]
fn chain_order_and_membership_match_enumeration() {
    let atoms = permutation_atoms();
    assert_eq!(atoms.len(), 20);
    for atom in atoms {
        let g = realize_atom(atom).unwrap();
        let gens: Vec<Permutation> = g
            .generators()
            .iter()
            .map(|&x| g.element(x).as_perm().unwrap().clone())
            .collect();
        let chain = StabilizerChain::new(&gens);
        assert_eq!(chain.order(), g.order() as u128, "{atom}");
        for e in g.elements() {
            assert!(chain.contains(e.as_perm().unwrap()), "{atom}");
        }
        let degree = gens[0].degree();
        if degree >= 2 {
            let t = Permutation::from_cycles(degree, &[&[0, 1]]).unwrap();
            let inside = g.index_of(&Element::Perm(t.clone())).is_some();
            assert_eq!(chain.contains(&t), inside, "{atom}");
        }
    }
}
