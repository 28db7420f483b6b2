//! Homomorphisms, quotients and morphisms of pairs.

use std::collections::VecDeque;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};

use crate::element::{Coset, CosetSpace, Element};
use crate::error::{GroupError, Result};
use crate::group::Group;
use crate::subgroup::{is_normal, map_members, Subgroup};

/// A homomorphism with its full graph, domain index -> codomain index.
#[derive(Clone)]
pub struct Homomorphism {
    domain: Arc<Group>,
    codomain: Arc<Group>,
    images: Vec<u32>,
    graph: Vec<u32>,
}

impl std::fmt::Debug for Homomorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Homomorphism")
            .field("domain", &self.domain.order())
            .field("codomain", &self.codomain.order())
            .field("images", &self.images)
            .finish()
    }
}

const UNSET: u32 = u32::MAX;

/// Builds the map determined by generator images, checking well-definedness by
/// closing the set of pairs `(x, f(x))` under right multiplication by
/// `(generator, image)`.
pub fn make_homomorphism(domain: &Arc<Group>, codomain: &Arc<Group>, images: &[u32]) -> Result<Homomorphism> {
    let gens = domain.generators();
    if images.len() != gens.len() {
        return Err(GroupError::ImageCount {
            expected: gens.len(),
            got: images.len(),
        });
    }
    if images.iter().any(|&y| y as usize >= codomain.order()) {
        return Err(GroupError::NotAMember);
    }
    let mut graph = vec![UNSET; domain.order()];
    graph[domain.identity() as usize] = codomain.identity();
    let mut queue = VecDeque::from([domain.identity()]);
    while let Some(x) = queue.pop_front() {
        let fx = graph[x as usize];
        for (&g, &img) in gens.iter().zip(images) {
            let y = domain.mul(x, g);
            let fy = codomain.mul(fx, img);
            match graph[y as usize] {
                UNSET => {
                    graph[y as usize] = fy;
                    queue.push_back(y);
                }
                prev if prev != fy => return Err(GroupError::NotAHomomorphism { witness: y }),
                _ => {}
            }
        }
    }
    Ok(Homomorphism {
        domain: domain.clone(),
        codomain: codomain.clone(),
        images: images.to_vec(),
        graph,
    })
}

impl Homomorphism {
    /// Wraps a graph already known to be a homomorphism.
    pub(crate) fn from_graph(domain: &Arc<Group>, codomain: &Arc<Group>, graph: Vec<u32>) -> Homomorphism {
        Homomorphism {
            domain: domain.clone(),
            codomain: codomain.clone(),
            images: domain.generators().iter().map(|&x| graph[x as usize]).collect(),
            graph,
        }
    }

    pub fn identity(g: &Arc<Group>) -> Homomorphism {
        Homomorphism {
            domain: g.clone(),
            codomain: g.clone(),
            images: g.generators().to_vec(),
            graph: g.indices().collect(),
        }
    }

    pub fn domain(&self) -> &Arc<Group> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<Group> {
        &self.codomain
    }

    pub fn generator_images(&self) -> &[u32] {
        &self.images
    }

    pub fn graph(&self) -> &[u32] {
        &self.graph
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.graph[x as usize]
    }

    pub fn image(&self) -> Subgroup {
        let mut members = FixedBitSet::with_capacity(self.codomain.order());
        for &y in &self.graph {
            members.insert(y as usize);
        }
        Subgroup::from_members(&self.codomain, members).expect("image of a homomorphism is a subgroup")
    }

    /// `f(S)` for a subgroup `S` of the domain.
    pub fn image_of(&self, s: &Subgroup) -> Result<Subgroup> {
        if s.parent_id() != self.domain.id() {
            return Err(GroupError::ParentMismatch);
        }
        let members = map_members(s, &self.graph, self.codomain.order());
        Subgroup::from_members(&self.codomain, members)
    }

    /// `{x : f(x) ∈ S}`.
    pub fn preimage_of_subgroup(&self, s: &Subgroup) -> Result<Subgroup> {
        if s.parent_id() != self.codomain.id() {
            return Err(GroupError::ParentMismatch);
        }
        let mut members = FixedBitSet::with_capacity(self.domain.order());
        for (x, &y) in self.graph.iter().enumerate() {
            if s.contains(y) {
                members.insert(x);
            }
        }
        Subgroup::from_members(&self.domain, members)
    }

    pub fn kernel(&self) -> Subgroup {
        self.preimage_of_subgroup(&Subgroup::trivial(&self.codomain))
            .expect("trivial subgroup belongs to the codomain")
    }

    pub fn is_bijective(&self) -> bool {
        if self.domain.order() != self.codomain.order() {
            return false;
        }
        let mut hit = FixedBitSet::with_capacity(self.codomain.order());
        self.graph.iter().all(|&y| {
            let fresh = !hit.contains(y as usize);
            hit.insert(y as usize);
            fresh
        })
    }

    /// Checks `f(xy) = f(x) f(y)` on `samples` random pairs (all pairs when the
    /// domain is small enough). Returns the first failing pair.
    pub fn spot_check(&self, samples: usize, seed: u64) -> Option<(u32, u32)> {
        let d = &self.domain;
        let c = &self.codomain;
        let n = d.order() as u32;
        let ok = |x: u32, y: u32| self.apply(d.mul(x, y)) == c.mul(self.apply(x), self.apply(y));
        if (n as usize) * (n as usize) <= samples {
            for x in 0..n {
                for y in 0..n {
                    if !ok(x, y) {
                        return Some((x, y));
                    }
                }
            }
            return None;
        }
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        (0..samples)
            .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
            .find(|&(x, y)| !ok(x, y))
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &Homomorphism) -> Result<Homomorphism> {
        if g.domain.id() != self.codomain.id() {
            return Err(GroupError::ParentMismatch);
        }
        Ok(Homomorphism {
            domain: self.domain.clone(),
            codomain: g.codomain.clone(),
            images: self.images.iter().map(|&y| g.apply(y)).collect(),
            graph: self.graph.iter().map(|&y| g.apply(y)).collect(),
        })
    }
}

/// `G/N` with cosets represented by their minimal-encoding member, plus the
/// projection `g ↦ gN`.
pub fn quotient_group(g: &Arc<Group>, n: &Subgroup) -> Result<(Arc<Group>, Homomorphism)> {
    if n.parent_id() != g.id() {
        return Err(GroupError::ParentMismatch);
    }
    if !n.is_normal() && !is_normal(g, n) {
        return Err(GroupError::NotNormal);
    }
    let size = g.order();
    let mut coset_of = vec![UNSET; size];
    let mut reps = Vec::with_capacity(size / n.order());
    let members: Vec<u32> = n.iter().collect();
    for x in 0..size as u32 {
        if coset_of[x as usize] != UNSET {
            continue;
        }
        let c = reps.len() as u32;
        reps.push(x);
        for &m in &members {
            coset_of[g.mul(x, m) as usize] = c;
        }
    }
    let space = Arc::new(CosetSpace {
        parent: g.clone(),
        coset_of,
        reps,
    });
    let elements = space
        .reps
        .iter()
        .map(|&rep| {
            Element::Coset(Coset {
                space: space.clone(),
                rep,
            })
        })
        .collect();
    let generators: Vec<u32> = g.generators().iter().map(|&x| space.coset_of(x)).collect();
    let quotient = Group::from_coset_space(space.clone(), elements, generators.clone());
    let projection = Homomorphism {
        domain: g.clone(),
        codomain: quotient.clone(),
        images: generators,
        graph: space.coset_of.clone(),
    };
    Ok((quotient, projection))
}

/// A morphism `(G1, N1) → (G2, N2)` in the category of pairs.
#[derive(Clone, Debug)]
pub struct PairMorphism {
    hom: Homomorphism,
    n1: Subgroup,
    n2: Subgroup,
}

impl PairMorphism {
    pub fn new(hom: Homomorphism, n1: Subgroup, n2: Subgroup) -> Result<PairMorphism> {
        if n1.parent_id() != hom.domain.id() || n2.parent_id() != hom.codomain.id() {
            return Err(GroupError::ParentMismatch);
        }
        if !n1.is_normal() || !n2.is_normal() {
            return Err(GroupError::NotNormal);
        }
        if n1.iter().any(|x| !n2.contains(hom.apply(x))) {
            return Err(GroupError::NotAPairMorphism);
        }
        Ok(PairMorphism { hom, n1, n2 })
    }

    pub fn hom(&self) -> &Homomorphism {
        &self.hom
    }

    pub fn source(&self) -> &Subgroup {
        &self.n1
    }

    pub fn target(&self) -> &Subgroup {
        &self.n2
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::conjugacy_classes;
    use crate::perm::Permutation;
    use crate::subgroup::{derived_subgroup, normal_closure};

    fn perm(deg: usize, cycles: &[&[u32]]) -> Element {
        Element::Perm(Permutation::from_cycles(deg, cycles).unwrap())
    }

    fn sym(n: usize) -> Arc<Group> {
        let cycle: Vec<u32> = (0..n as u32).collect();
        Group::generate(&[perm(n, &[&[0, 1]]), perm(n, &[&cycle])]).unwrap()
    }

    fn c2() -> Arc<Group> {
        Group::generate(&[perm(2, &[&[0, 1]])]).unwrap()
    }

    #[test]
    fn identity_map() {
        let g = sym(4);
        let id = make_homomorphism(&g, &g, g.generators()).unwrap();
        assert!(id.kernel().is_trivial());
        assert!(id.is_bijective());
        assert_eq!(id.spot_check(1000, 1), None);
    }

    #[test]
    fn sign_map_and_bad_map() {
        let s3 = sym(3);
        let c2 = c2();
        let t = c2.generators()[0];
        // Transposition -> t, 3-cycle -> identity: the sign map.
        let sign = make_homomorphism(&s3, &c2, &[t, c2.identity()]).unwrap();
        assert_eq!(sign.kernel().order(), 3);
        assert_eq!(sign.image().order(), 2);
        // The 3-cycle cannot map to the nonidentity element.
        let err = make_homomorphism(&s3, &c2, &[t, t]).unwrap_err();
        assert!(matches!(err, GroupError::NotAHomomorphism { .. }));
    }

    #[test]
    fn quotient_orders() {
        let s4 = sym(4);
        let dt = s4.index_of(&perm(4, &[&[0, 1], &[2, 3]])).unwrap();
        let v4 = normal_closure(&s4, &[dt]).unwrap();
        let (q, proj) = quotient_group(&s4, &v4).unwrap();
        assert_eq!(q.order(), 6);
        assert_eq!(conjugacy_classes(&q).len(), 3);
        assert_eq!(proj.kernel(), v4);
        assert_eq!(proj.spot_check(1000, 2), None);

        let (q, _) = quotient_group(&s4, &Subgroup::whole(&s4)).unwrap();
        assert_eq!(q.order(), 1);
        let (q, proj) = quotient_group(&s4, &Subgroup::trivial(&s4)).unwrap();
        assert_eq!(q.order(), 24);
        assert!(proj.is_bijective());
        assert_eq!(derived_subgroup(&q).order(), 12);
    }

    #[test]
    fn quotient_rejects_non_normal() {
        let s3 = sym(3);
        let t = s3.index_of(&perm(3, &[&[0, 1]])).unwrap();
        let h = crate::subgroup::subgroup_generated(&s3, &[t]).unwrap();
        assert_eq!(quotient_group(&s3, &h).unwrap_err(), GroupError::NotNormal);
    }

    #[test]
    fn coset_representatives_are_minimal() {
        let s4 = sym(4);
        let a4 = derived_subgroup(&s4);
        let (q, proj) = quotient_group(&s4, &a4).unwrap();
        let space = q.coset_space().unwrap();
        for c in q.indices() {
            let rep = space.representative(c);
            let min = s4.indices().filter(|&x| proj.apply(x) == c).min().unwrap();
            assert_eq!(rep, min);
        }
    }

    #[test]
    fn preimage_cardinality() {
        let s4 = sym(4);
        let dt = s4.index_of(&perm(4, &[&[0, 1], &[2, 3]])).unwrap();
        let v4 = normal_closure(&s4, &[dt]).unwrap();
        let (q, proj) = quotient_group(&s4, &v4).unwrap();
        let qd = derived_subgroup(&q);
        let pre = proj.preimage_of_subgroup(&qd).unwrap();
        assert_eq!(pre.order(), proj.kernel().order() * qd.order());
        assert_eq!(pre.order(), 12);
    }

    #[test]
    fn pair_morphism_condition() {
        let s3 = sym(3);
        let c2 = c2();
        let t = c2.generators()[0];
        let sign = make_homomorphism(&s3, &c2, &[t, c2.identity()]).unwrap();
        let a3 = derived_subgroup(&s3);
        assert!(PairMorphism::new(sign.clone(), a3.clone(), Subgroup::trivial(&c2)).is_ok());
        assert_eq!(
            PairMorphism::new(sign, Subgroup::whole(&s3), Subgroup::trivial(&c2)).unwrap_err(),
            GroupError::NotAPairMorphism
        );
    }
}
