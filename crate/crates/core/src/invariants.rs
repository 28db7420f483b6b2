//! Machine checks of the structural claims about `T_G`.
//!
//! Each check returns the violations it found; an empty list means the claim
//! held on this group. Callers decide how to report them.

use std::fmt;

use crate::error::Result;
use crate::functor::{check_functoriality, q_oracle};
use crate::graph::{
    automorphism_edge_action, edge_stabilizer_check, h1_edge_check, star_decomposition, Automorphism, PropertyRGraph,
};
use crate::hom::{quotient_group, Homomorphism, PairMorphism};
use crate::lattice::NormalLattice;
use crate::subgroup::{is_normal, normal_closure};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub check: &'static str,
    pub vertex: Option<usize>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.vertex {
            Some(v) => write!(f, "{} at vertex {v}: {}", self.check, self.detail),
            None => write!(f, "{}: {}", self.check, self.detail),
        }
    }
}

fn violation(check: &'static str, vertex: Option<usize>, detail: impl Into<String>) -> Violation {
    Violation {
        check,
        vertex,
        detail: detail.into(),
    }
}

/// Lattice sanity: bounds, antisymmetry, normality, closure under joins.
pub fn check_lattice(t: &PropertyRGraph) -> Vec<Violation> {
    let l = t.lattice();
    let g = l.group();
    let mut out = Vec::new();
    if !l.node(l.trivial_index()).is_trivial() || l.node(l.whole_index()).order() != g.order() {
        out.push(violation("lattice", None, "bounds are not {e} and G"));
    }
    for i in 0..l.len() {
        if !is_normal(g, l.node(i)) {
            out.push(violation("lattice", Some(i), "node is not normal"));
        }
        if !g.order().is_multiple_of(l.node(i).order()) {
            out.push(violation("lattice", Some(i), "order does not divide |G|"));
        }
        for j in 0..i {
            if l.leq(i, j) && l.leq(j, i) {
                out.push(violation("lattice", Some(i), format!("equal to node {j}")));
            }
            if let Err(e) = l.join_nodes(i, j) {
                out.push(violation("lattice", Some(i), e.to_string()));
            }
        }
    }
    out
}

/// `q_of` against the quotient-based route at every vertex.
pub fn check_oracle(t: &PropertyRGraph) -> Vec<Violation> {
    let l = t.lattice();
    (0..l.len())
        .filter_map(|i| match q_oracle(l, i) {
            Ok(j) if j == t.out_edge(i) => None,
            Ok(j) => Some(violation(
                "oracle",
                Some(i),
                format!("q_of {} but oracle {j}", t.out_edge(i)),
            )),
            Err(e) => Some(violation("oracle", Some(i), e.to_string())),
        })
        .collect()
}

/// Star decomposition, its accounting, and the absence of `a -> b -> c`.
pub fn check_stars(t: &PropertyRGraph) -> Vec<Violation> {
    let l = t.lattice();
    let mut out = Vec::new();
    for (a, b) in t.edges() {
        let c = t.out_edge(b);
        if a != b && b != c && a != c {
            out.push(violation("stars", Some(a), format!("path {a} -> {b} -> {c}")));
        }
    }
    match star_decomposition(t) {
        Ok(sig) => {
            if sig.vertex_count() != l.len() as i64 {
                out.push(violation(
                    "stars",
                    None,
                    format!("{sig} covers {} of {} vertices", sig.vertex_count(), l.len()),
                ));
            }
            let above_derived = (0..l.len()).filter(|&i| l.leq(l.derived_index(), i)).count();
            if sig.star_count() != above_derived {
                out.push(violation(
                    "stars",
                    None,
                    format!(
                        "{} stars but {above_derived} normal subgroups contain G'",
                        sig.star_count()
                    ),
                ));
            }
        }
        Err(e) => out.push(violation("stars", None, e.to_string())),
    }
    out
}

/// Inclusion `N ⊆ Q(N)`, the three-way self-loop characterization and the
/// abelianization of every edge.
pub fn check_edges(t: &PropertyRGraph) -> Vec<Violation> {
    let l = t.lattice();
    let g = l.group();
    let mut out = Vec::new();
    for i in 0..l.len() {
        let j = t.out_edge(i);
        if !l.leq(i, j) {
            out.push(violation(
                "inclusion",
                Some(i),
                format!("not contained in Q = node {j}"),
            ));
        }
        let abelian = match quotient_group(g, l.node(i)) {
            Ok((q, _)) => q.is_abelian(),
            Err(e) => {
                out.push(violation("self-loop", Some(i), e.to_string()));
                continue;
            }
        };
        let contains_derived = l.leq(l.derived_index(), i);
        if t.self_loop(i) != abelian || abelian != contains_derived {
            out.push(violation(
                "self-loop",
                Some(i),
                format!(
                    "loop {} abelian quotient {abelian} contains G' {contains_derived}",
                    t.self_loop(i)
                ),
            ));
        }
        match h1_edge_check(t, i) {
            Ok(true) => {}
            Ok(false) => out.push(violation("h1", Some(i), format!("H1(G/N{i}) differs from G/N{j}"))),
            Err(e) => out.push(violation("h1", Some(i), e.to_string())),
        }
    }
    out
}

/// Edge action and edge stabilizers for the given automorphisms.
pub fn check_automorphisms(t: &PropertyRGraph, auts: &[Automorphism]) -> Vec<Violation> {
    let mut out = Vec::new();
    for i in 0..t.len() {
        for phi in auts {
            if let Err(e) = automorphism_edge_action(phi, t, i) {
                out.push(violation("automorphism", Some(i), e.to_string()));
            }
        }
        match edge_stabilizer_check(auts, t, i) {
            Ok(true) => {}
            Ok(false) => out.push(violation("stabilizer", Some(i), "edge and source stabilizers differ")),
            Err(e) => out.push(violation("stabilizer", Some(i), e.to_string())),
        }
    }
    out
}

/// Conjugation by each generator.
pub fn inner_automorphisms(t: &PropertyRGraph) -> Vec<Automorphism> {
    let g = t.group();
    g.generators().iter().map(|&c| Automorphism::inner(g, c)).collect()
}

/// Functoriality of `f` on every pair `(N, ncl(f(N)))` with `N` a node of
/// `domain_lattice`. Returns how many pair morphisms were checked.
pub fn check_morphism_family(f: &Homomorphism, domain_lattice: &NormalLattice) -> Result<(usize, Vec<Violation>)> {
    let mut out = Vec::new();
    let mut checked = 0;
    for (i, n1) in domain_lattice.nodes().iter().enumerate() {
        let image: Vec<u32> = f.image_of(n1)?.iter().collect();
        let n2 = normal_closure(f.codomain(), &image)?;
        let m = PairMorphism::new(f.clone(), n1.clone(), n2)?;
        let verdict = check_functoriality(&m)?;
        checked += 1;
        if !verdict.holds {
            out.push(violation(
                "functoriality",
                Some(i),
                format!("element {:?} of Q(G1,N1) escapes Q(G2,N2)", verdict.witness),
            ));
        }
    }
    Ok((checked, out))
}

/// Every check that needs nothing beyond the graph itself.
pub fn check_all(t: &PropertyRGraph) -> Vec<Violation> {
    let mut out = check_lattice(t);
    out.extend(check_oracle(t));
    out.extend(check_stars(t));
    out.extend(check_edges(t));
    out.extend(check_automorphisms(t, &inner_automorphisms(t)));
    let g = t.group();
    let mut families = vec![Homomorphism::identity(g)];
    for i in [t.lattice().derived_index(), t.lattice().whole_index()] {
        match quotient_group(g, t.lattice().node(i)) {
            Ok((_, proj)) => families.push(proj),
            Err(e) => out.push(violation("functoriality", Some(i), e.to_string())),
        }
    }
    for f in &families {
        match check_morphism_family(f, t.lattice()) {
            Ok((_, v)) => out.extend(v),
            Err(e) => out.push(violation("functoriality", None, e.to_string())),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{parse_group_spec, realize};
    use crate::graph::build_graph;

    #[test]
    fn small_groups_pass() {
        for spec in ["C1", "C6", "S3", "S4", "Q8", "D4", "A5", "C2xS3", "SL(2,3)"] {
            let g = realize(&parse_group_spec(spec).unwrap()).unwrap();
            let t = build_graph(&g).unwrap();
            let v = check_all(&t);
            assert!(v.is_empty(), "{spec}: {v:?}");
        }
    }
}
