//! Subgroups as member bitsets over a parent's element indices.

use fixedbitset::FixedBitSet;

use crate::error::{GroupError, Result};
use crate::group::Group;

#[derive(Clone, Debug)]
pub struct Subgroup {
    parent_id: u64,
    members: FixedBitSet,
    order: usize,
    generators: Vec<u32>,
    normal: bool,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent_id == other.parent_id && self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    pub fn trivial(g: &Group) -> Subgroup {
        Closure::new(g).finish(true)
    }

    pub fn whole(g: &Group) -> Subgroup {
        let mut members = FixedBitSet::with_capacity(g.order());
        members.insert_range(..);
        Subgroup {
            parent_id: g.id(),
            members,
            order: g.order(),
            generators: g.generators().to_vec(),
            normal: true,
        }
    }

    /// Wraps a member set, verifying that it is a subgroup of `g`. A generating
    /// set is extracted greedily along the way.
    pub fn from_members(g: &Group, members: FixedBitSet) -> Result<Subgroup> {
        if members.len() != g.order() {
            return Err(GroupError::ParentMismatch);
        }
        if !members.contains(g.identity() as usize) {
            return Err(GroupError::NotASubgroup);
        }
        let mut c = Closure::new(g);
        for x in members.ones() {
            if !c.contains(x as u32) {
                c.add_generator(x as u32);
                if !c.members.is_subset(&members) {
                    return Err(GroupError::NotASubgroup);
                }
            }
        }
        let mut sub = c.finish(false);
        sub.normal = is_normal(g, &sub);
        Ok(sub)
    }

    pub fn parent_id(&self) -> u64 {
        self.parent_id
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn is_normal(&self) -> bool {
        self.normal
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.members.ones().map(|x| x as u32)
    }

    #[inline]
    pub fn contains(&self, x: u32) -> bool {
        self.members.contains(x as usize)
    }

    pub fn is_subset(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn intersection_order(&self, other: &Subgroup) -> usize {
        self.members.intersection_count(&other.members)
    }

    /// Lexicographic comparison of sorted member index lists, which is the same
    /// as comparing member encodings.
    pub fn cmp_members(&self, other: &Subgroup) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

/// Incremental subgroup closure (Dimino's method): the current subgroup is
/// always a union of right cosets of its predecessor.
pub(crate) struct Closure<'g> {
    g: &'g Group,
    members: FixedBitSet,
    list: Vec<u32>,
    gens: Vec<u32>,
}

impl<'g> Closure<'g> {
    pub(crate) fn new(g: &'g Group) -> Closure<'g> {
        let mut members = FixedBitSet::with_capacity(g.order());
        members.insert(g.identity() as usize);
        Closure {
            g,
            members,
            list: vec![g.identity()],
            gens: Vec::new(),
        }
    }

    pub(crate) fn from_subgroup(g: &'g Group, s: &Subgroup) -> Closure<'g> {
        Closure {
            g,
            members: s.members.clone(),
            list: s.iter().collect(),
            gens: s.generators.clone(),
        }
    }

    #[inline]
    pub(crate) fn contains(&self, x: u32) -> bool {
        self.members.contains(x as usize)
    }

    fn add_coset(&mut self, base_len: usize, t: u32) {
        for i in 0..base_len {
            let y = self.g.mul(self.list[i], t);
            self.members.insert(y as usize);
            self.list.push(y);
        }
    }

    /// Adds `x` to the generators. Returns false when `x` was already inside.
    pub(crate) fn add_generator(&mut self, x: u32) -> bool {
        if self.contains(x) {
            return false;
        }
        let base_len = self.list.len();
        self.gens.push(x);
        let mut reps = vec![self.g.identity(), x];
        self.add_coset(base_len, x);
        let mut i = 0;
        while i < reps.len() {
            let r = reps[i];
            for s in 0..self.gens.len() {
                let t = self.g.mul(r, self.gens[s]);
                if !self.contains(t) {
                    reps.push(t);
                    self.add_coset(base_len, t);
                }
            }
            i += 1;
        }
        true
    }

    /// Closes under conjugation by the parent's generators.
    pub(crate) fn normalize(&mut self) {
        let mut j = 0;
        while j < self.gens.len() {
            let x = self.gens[j];
            for &g in self.g.generators() {
                let c = self.g.conj(g, x);
                self.add_generator(c);
            }
            j += 1;
        }
    }

    pub(crate) fn finish(self, normal: bool) -> Subgroup {
        Subgroup {
            parent_id: self.g.id(),
            order: self.list.len(),
            members: self.members,
            generators: self.gens,
            normal,
        }
    }
}

fn check_members(g: &Group, seed: &[u32]) -> Result<()> {
    if seed.iter().any(|&x| x as usize >= g.order()) {
        return Err(GroupError::NotAMember);
    }
    Ok(())
}

fn check_parent(g: &Group, s: &Subgroup) -> Result<()> {
    if s.parent_id != g.id() {
        return Err(GroupError::ParentMismatch);
    }
    Ok(())
}

/// `⟨seed⟩` inside `g`.
pub fn subgroup_generated(g: &Group, seed: &[u32]) -> Result<Subgroup> {
    check_members(g, seed)?;
    let mut c = Closure::new(g);
    for &x in seed {
        c.add_generator(x);
    }
    let mut sub = c.finish(false);
    sub.normal = is_normal(g, &sub);
    Ok(sub)
}

/// Smallest normal subgroup containing `seed`.
pub fn normal_closure(g: &Group, seed: &[u32]) -> Result<Subgroup> {
    check_members(g, seed)?;
    let mut c = Closure::new(g);
    for &x in seed {
        c.add_generator(x);
    }
    c.normalize();
    Ok(c.finish(true))
}

/// Normality via conjugation of subgroup generators by parent generators.
pub fn is_normal(g: &Group, s: &Subgroup) -> bool {
    g.generators()
        .iter()
        .all(|&x| s.generators.iter().all(|&m| s.contains(g.conj(x, m))))
}

/// `⟨A ∪ B⟩`.
pub fn join(g: &Group, a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
    check_parent(g, a)?;
    check_parent(g, b)?;
    if b.is_subset(a) {
        return Ok(a.clone());
    }
    if a.is_subset(b) {
        return Ok(b.clone());
    }
    let mut c = Closure::from_subgroup(g, a);
    for &x in &b.generators {
        c.add_generator(x);
    }
    let both_normal = a.normal && b.normal;
    let mut sub = c.finish(both_normal);
    if !both_normal {
        sub.normal = is_normal(g, &sub);
    }
    Ok(sub)
}

/// The commutator subgroup, as the normal closure of commutators of generators.
pub fn derived_subgroup(g: &Group) -> Subgroup {
    let gens = g.generators();
    let mut seed = Vec::new();
    for (i, &a) in gens.iter().enumerate() {
        for &b in &gens[i + 1..] {
            let c = g.commutator(a, b);
            if c != g.identity() {
                seed.push(c);
            }
        }
    }
    normal_closure(g, &seed).expect("commutators are group elements")
}

/// Applies an index map to a subgroup of `g`, producing the image as a member set
/// over a group of size `target_order`.
pub(crate) fn map_members(s: &Subgroup, map: &[u32], target_order: usize) -> FixedBitSet {
    let mut out = FixedBitSet::with_capacity(target_order);
    for x in s.iter() {
        out.insert(map[x as usize] as usize);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::Element;
    use crate::perm::Permutation;
    use std::sync::Arc;

    fn perm(deg: usize, cycles: &[&[u32]]) -> Element {
        Element::Perm(Permutation::from_cycles(deg, cycles).unwrap())
    }

    fn sym(n: usize) -> Arc<Group> {
        let cycle: Vec<u32> = (0..n as u32).collect();
        Group::generate(&[perm(n, &[&[0, 1]]), perm(n, &[&cycle])]).unwrap()
    }

    fn idx(g: &Group, e: Element) -> u32 {
        g.index_of(&e).unwrap()
    }

    #[test]
    fn generated_subgroups_of_s3() {
        let g = sym(3);
        assert_eq!(subgroup_generated(&g, &[]).unwrap().order(), 1);
        let c3 = idx(&g, perm(3, &[&[0, 1, 2]]));
        let a3 = subgroup_generated(&g, &[c3]).unwrap();
        assert_eq!(a3.order(), 3);
        assert!(a3.is_normal());
        assert_eq!(subgroup_generated(&g, g.generators()).unwrap().order(), 6);
        let t = idx(&g, perm(3, &[&[0, 1]]));
        assert!(!subgroup_generated(&g, &[t]).unwrap().is_normal());
    }

    #[test]
    fn normal_closures() {
        let s3 = sym(3);
        let t = idx(&s3, perm(3, &[&[0, 1]]));
        assert_eq!(normal_closure(&s3, &[t]).unwrap().order(), 6);
        assert_eq!(normal_closure(&s3, &[s3.identity()]).unwrap().order(), 1);
        let s4 = sym(4);
        let dt = idx(&s4, perm(4, &[&[0, 1], &[2, 3]]));
        let v4 = normal_closure(&s4, &[dt]).unwrap();
        assert_eq!(v4.order(), 4);
        assert!(is_normal(&s4, &v4));
    }

    #[test]
    fn derived_subgroups() {
        assert_eq!(derived_subgroup(&sym(3)).order(), 3);
        assert_eq!(derived_subgroup(&sym(4)).order(), 12);
        let c6 = Group::generate(&[perm(6, &[&[0, 1, 2, 3, 4, 5]])]).unwrap();
        assert_eq!(derived_subgroup(&c6).order(), 1);
    }

    #[test]
    fn joins_in_s4() {
        let s4 = sym(4);
        let dt = idx(&s4, perm(4, &[&[0, 1], &[2, 3]]));
        let v4 = normal_closure(&s4, &[dt]).unwrap();
        let c = idx(&s4, perm(4, &[&[0, 1, 2]]));
        let c3 = subgroup_generated(&s4, &[c]).unwrap();
        let j = join(&s4, &v4, &c3).unwrap();
        assert_eq!(j.order(), 12);
        assert!(j.is_normal());
        let triv = Subgroup::trivial(&s4);
        assert_eq!(join(&s4, &v4, &triv).unwrap(), v4);
        assert_eq!(join(&s4, &v4, &v4).unwrap(), v4);
        let other = sym(3);
        assert_eq!(
            join(&s4, &v4, &Subgroup::trivial(&other)).unwrap_err(),
            GroupError::ParentMismatch
        );
    }

    #[test]
    fn from_members_validates() {
        let s3 = sym(3);
        let mut bad = FixedBitSet::with_capacity(6);
        bad.insert(s3.identity() as usize);
        bad.insert(idx(&s3, perm(3, &[&[0, 1, 2]])) as usize);
        assert_eq!(Subgroup::from_members(&s3, bad).unwrap_err(), GroupError::NotASubgroup);
        let whole = Subgroup::from_members(&s3, Subgroup::whole(&s3).members().clone()).unwrap();
        assert_eq!(whole.order(), 6);
        assert!(whole.is_normal());
    }

    #[test]
    fn out_of_range_seed() {
        let s3 = sym(3);
        assert_eq!(subgroup_generated(&s3, &[99]).unwrap_err(), GroupError::NotAMember);
    }
}
