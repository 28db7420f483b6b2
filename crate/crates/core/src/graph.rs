//! The Property R graph `T_G`: one vertex per normal subgroup, with the single
//! out-edge `N -> Q(G, N)`.

use std::fmt;
use std::sync::Arc;

use crate::abelian::abelian_invariants;
use crate::error::{GroupError, Result};
use crate::functor::q_of;
use crate::group::Group;
use crate::hom::{make_homomorphism, quotient_group, Homomorphism};
use crate::lattice::{normal_subgroups, NormalLattice};
use crate::signature::StarSignature;
use crate::subgroup::{derived_subgroup, map_members};

#[derive(Debug)]
pub struct PropertyRGraph {
    lattice: NormalLattice,
    out_edge: Vec<usize>,
    self_loop: Vec<bool>,
}

pub fn build_graph(g: &Arc<Group>) -> Result<PropertyRGraph> {
    PropertyRGraph::from_lattice(normal_subgroups(g))
}

impl PropertyRGraph {
    pub fn from_lattice(lattice: NormalLattice) -> Result<PropertyRGraph> {
        let out_edge = (0..lattice.len())
            .map(|i| q_of(&lattice, i))
            .collect::<Result<Vec<_>>>()?;
        let self_loop = out_edge.iter().enumerate().map(|(i, &j)| i == j).collect();
        Ok(PropertyRGraph {
            lattice,
            out_edge,
            self_loop,
        })
    }

    pub fn lattice(&self) -> &NormalLattice {
        &self.lattice
    }

    pub fn group(&self) -> &Arc<Group> {
        self.lattice.group()
    }

    pub fn len(&self) -> usize {
        self.out_edge.len()
    }

    pub fn is_empty(&self) -> bool {
        self.out_edge.is_empty()
    }

    pub fn out_edge(&self, i: usize) -> usize {
        self.out_edge[i]
    }

    pub fn out_edges(&self) -> &[usize] {
        &self.out_edge
    }

    pub fn self_loop(&self, i: usize) -> bool {
        self.self_loop[i]
    }

    /// All edges `(i, out_edge[i])`, loops included.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out_edge.iter().copied().enumerate()
    }

    pub fn in_edges(&self, c: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges().filter(move |&(i, j)| j == c && i != c).map(|(i, _)| i)
    }
}

/// Reads off the star forest, checking that every non-loop vertex is a leaf
/// pointing at a looped center.
pub fn star_decomposition(t: &PropertyRGraph) -> Result<StarSignature> {
    let n = t.len();
    let mut leaves = vec![0i64; n];
    for (i, j) in t.edges() {
        if i == j {
            continue;
        }
        if !t.self_loop(j) {
            return Err(GroupError::Invariant(format!(
                "path {i} -> {j} -> {} in graph",
                t.out_edge(j)
            )));
        }
        leaves[j] += 1;
    }
    let sizes = (0..n).filter(|&c| t.self_loop(c)).map(|c| leaves[c]).collect();
    Ok(StarSignature::new(sizes))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum PropertyRVariant {
    /// No proper normal subgroup, the trivial one included, has a perfect quotient.
    #[default]
    Strict,
    /// As strict, but only nontrivial proper normal subgroups count.
    Weak,
}

impl fmt::Display for PropertyRVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PropertyRVariant::Strict => "strict",
            PropertyRVariant::Weak => "weak",
        })
    }
}

impl std::str::FromStr for PropertyRVariant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "strict" => Ok(PropertyRVariant::Strict),
            "weak" => Ok(PropertyRVariant::Weak),
            other => Err(format!(
                "unknown Property R variant '{other}' (expected strict or weak)"
            )),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PropertyRVerdict {
    pub holds: bool,
    /// Vertex of a proper normal subgroup with perfect quotient, on failure.
    pub witness: Option<usize>,
}

/// A proper `N` has `G/N` perfect exactly when `N -> G` is a non-loop edge.
pub fn property_r(t: &PropertyRGraph, variant: PropertyRVariant) -> PropertyRVerdict {
    let l = t.lattice();
    let whole = l.whole_index();
    let witness = t
        .in_edges(whole)
        .find(|&i| variant == PropertyRVariant::Strict || i != l.trivial_index());
    PropertyRVerdict {
        holds: witness.is_none(),
        witness,
    }
}

#[derive(Clone, Debug)]
pub struct Automorphism {
    hom: Homomorphism,
    inner: Option<u32>,
}

impl Automorphism {
    /// Automorphism sending the i-th generator of `g` to `images[i]`.
    pub fn from_images(g: &Arc<Group>, images: &[u32]) -> Result<Automorphism> {
        let hom = make_homomorphism(g, g, images)?;
        if !hom.is_bijective() {
            return Err(GroupError::NotBijective);
        }
        Ok(Automorphism { hom, inner: None })
    }

    /// `x -> c x c^-1`.
    pub fn inner(g: &Arc<Group>, c: u32) -> Automorphism {
        let graph = g.indices().map(|x| g.conj(c, x)).collect();
        Automorphism {
            hom: Homomorphism::from_graph(g, g, graph),
            inner: Some(c),
        }
    }

    pub fn identity(g: &Arc<Group>) -> Automorphism {
        Automorphism {
            hom: Homomorphism::identity(g),
            inner: Some(g.identity()),
        }
    }

    pub fn hom(&self) -> &Homomorphism {
        &self.hom
    }

    pub fn conjugator(&self) -> Option<u32> {
        self.inner
    }

    pub fn apply(&self, x: u32) -> u32 {
        self.hom.apply(x)
    }

    /// Lattice vertex of `φ(N_i)`.
    pub fn image_vertex(&self, l: &NormalLattice, i: usize) -> Result<usize> {
        if self.hom.domain().id() != l.group().id() {
            return Err(GroupError::ParentMismatch);
        }
        let members = map_members(l.node(i), self.hom.graph(), l.group().order());
        l.find_members(&members)
            .ok_or_else(|| GroupError::Invariant(format!("image of vertex {i} is not a lattice vertex")))
    }
}

/// Image of the edge `i -> out_edge[i]` under `φ`, checked to be an edge.
pub fn automorphism_edge_action(phi: &Automorphism, t: &PropertyRGraph, i: usize) -> Result<(usize, usize)> {
    let l = t.lattice();
    let a = phi.image_vertex(l, i)?;
    let b = phi.image_vertex(l, t.out_edge(i))?;
    if t.out_edge(a) != b {
        return Err(GroupError::Invariant(format!(
            "automorphism sends edge {i} -> {} to non-edge {a} -> {b}",
            t.out_edge(i)
        )));
    }
    Ok((a, b))
}

/// For each `φ`: `φ` fixes the edge at `i` iff it fixes `N_i`.
pub fn edge_stabilizer_check(auts: &[Automorphism], t: &PropertyRGraph, i: usize) -> Result<bool> {
    let l = t.lattice();
    let j = t.out_edge(i);
    for phi in auts {
        let fixes_source = phi.image_vertex(l, i)? == i;
        let fixes_edge = fixes_source && phi.image_vertex(l, j)? == j;
        if fixes_source != fixes_edge {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Compares the invariants of `H1(G/a)` and `G/b` for the edge `a -> b`.
pub fn h1_edge_check(t: &PropertyRGraph, a: usize) -> Result<bool> {
    let g = t.group();
    let l = t.lattice();
    let b = t.out_edge(a);
    let (qa, _) = quotient_group(g, l.node(a))?;
    let (h1, _) = quotient_group(&qa, &derived_subgroup(&qa))?;
    let (qb, _) = quotient_group(g, l.node(b))?;
    if !qb.is_abelian() {
        return Ok(false);
    }
    Ok(abelian_invariants(&h1)? == abelian_invariants(&qb)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::Element;
    use crate::perm::Permutation;

    fn perm(deg: usize, cycles: &[&[u32]]) -> Element {
        Element::Perm(Permutation::from_cycles(deg, cycles).unwrap())
    }

    fn sym(n: usize) -> Arc<Group> {
        let cycle: Vec<u32> = (0..n as u32).collect();
        Group::generate(&[perm(n, &[&[0, 1]]), perm(n, &[&cycle])]).unwrap()
    }

    fn a5() -> Arc<Group> {
        Group::generate(&[perm(5, &[&[0, 1, 2]]), perm(5, &[&[0, 1, 2, 3, 4]])]).unwrap()
    }

    #[test]
    fn c2_is_two_loops() {
        let g = Group::generate(&[perm(2, &[&[0, 1]])]).unwrap();
        let t = build_graph(&g).unwrap();
        assert_eq!(t.out_edges(), &[0, 1]);
        assert_eq!(star_decomposition(&t).unwrap(), StarSignature::new(vec![0, 0]));
    }

    #[test]
    fn s3_and_s4_shapes() {
        let t = build_graph(&sym(3)).unwrap();
        assert_eq!(t.out_edges(), &[1, 1, 2]);
        assert_eq!(star_decomposition(&t).unwrap().to_string(), "S0 S1");
        let t = build_graph(&sym(4)).unwrap();
        assert_eq!(t.out_edges(), &[2, 2, 2, 3]);
        assert_eq!(star_decomposition(&t).unwrap().to_string(), "S0 S2");
        assert!(property_r(&t, PropertyRVariant::Strict).holds);
    }

    #[test]
    fn a5_verdicts() {
        let t = build_graph(&a5()).unwrap();
        assert_eq!(t.out_edges(), &[1, 1]);
        assert_eq!(star_decomposition(&t).unwrap().to_string(), "S1");
        let strict = property_r(&t, PropertyRVariant::Strict);
        assert!(!strict.holds);
        assert_eq!(strict.witness, Some(0));
        assert!(property_r(&t, PropertyRVariant::Weak).holds);
    }

    #[test]
    fn h1_on_every_edge() {
        for g in [sym(3), sym(4), a5()] {
            let t = build_graph(&g).unwrap();
            for i in 0..t.len() {
                assert!(h1_edge_check(&t, i).unwrap(), "vertex {i}");
            }
        }
    }

    #[test]
    fn inner_automorphisms_fix_edges() {
        let g = sym(4);
        let t = build_graph(&g).unwrap();
        let auts: Vec<_> = g.indices().map(|c| Automorphism::inner(&g, c)).collect();
        for phi in &auts {
            for i in 0..t.len() {
                assert_eq!(automorphism_edge_action(phi, &t, i).unwrap(), (i, t.out_edge(i)));
            }
        }
        for i in 0..t.len() {
            assert!(edge_stabilizer_check(&auts, &t, i).unwrap());
        }
    }

    #[test]
    fn klein_swap() {
        let g = Group::generate(&[perm(4, &[&[0, 1]]), perm(4, &[&[2, 3]])]).unwrap();
        let gens = g.generators().to_vec();
        let swap = Automorphism::from_images(&g, &[gens[1], gens[0]]).unwrap();
        let t = build_graph(&g).unwrap();
        assert_eq!(t.len(), 5);
        let moved = (0..t.len())
            .filter(|&i| swap.image_vertex(t.lattice(), i).unwrap() != i)
            .count();
        assert_eq!(moved, 2);
        for i in 0..t.len() {
            automorphism_edge_action(&swap, &t, i).unwrap();
            assert!(edge_stabilizer_check(std::slice::from_ref(&swap), &t, i).unwrap());
        }
    }

    #[test]
    fn non_bijective_rejected() {
        let g = Group::generate(&[perm(4, &[&[0, 1]]), perm(4, &[&[2, 3]])]).unwrap();
        let gens = g.generators().to_vec();
        assert!(matches!(
            Automorphism::from_images(&g, &[gens[0], gens[0]]),
            Err(GroupError::NotBijective)
        ));
    }
}
