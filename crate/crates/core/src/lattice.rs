//! The lattice of normal subgroups.

use std::collections::HashMap;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::classes::conjugacy_classes;
use crate::error::{GroupError, Result};
use crate::group::Group;
use crate::subgroup::{derived_subgroup, join, normal_closure, Subgroup};

pub struct NormalLattice {
    group: Arc<Group>,
    nodes: Vec<Subgroup>,
    leq: Vec<FixedBitSet>,
    index: HashMap<FixedBitSet, usize>,
    trivial: usize,
    whole: usize,
    derived: usize,
}

impl std::fmt::Debug for NormalLattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("NormalLattice")
            .field("group_order", &self.group.order())
            .field("orders", &self.nodes.iter().map(Subgroup::order).collect::<Vec<_>>())
            .finish()
    }
}

/// Working set used while closing the seeds under joins.
struct Builder<'g> {
    g: &'g Group,
    nodes: Vec<Subgroup>,
    index: HashMap<FixedBitSet, usize>,
    by_order: HashMap<usize, Vec<usize>>,
}

impl<'g> Builder<'g> {
    fn insert(&mut self, s: Subgroup) -> usize {
        if let Some(&i) = self.index.get(s.members()) {
            return i;
        }
        let i = self.nodes.len();
        self.index.insert(s.members().clone(), i);
        self.by_order.entry(s.order()).or_default().push(i);
        self.nodes.push(s);
        i
    }

    /// For normal A and B, |AB| = |A||B|/|A∩B|, so a known node containing both
    /// with that order is the join. Only unseen joins are built element-wise.
    fn join(&mut self, a: usize, b: usize) -> usize {
        let (na, nb) = (&self.nodes[a], &self.nodes[b]);
        if na.is_subset(nb) {
            return b;
        }
        if nb.is_subset(na) {
            return a;
        }
        let target = na.order() * nb.order() / na.intersection_order(nb);
        if let Some(cands) = self.by_order.get(&target) {
            for &c in cands {
                let nc = &self.nodes[c];
                if na.is_subset(nc) && nb.is_subset(nc) {
                    return c;
                }
            }
        }
        let j = join(self.g, na, nb).expect("nodes share the parent");
        debug_assert_eq!(j.order(), target);
        self.insert(j)
    }
}

/// All normal subgroups: normal closures of class representatives, closed under
/// pairwise joins. Every normal subgroup is the join of the normal closures of
/// its elements, so the fixed point is complete.
pub fn normal_subgroups(g: &Arc<Group>) -> NormalLattice {
    let mut b = Builder {
        g,
        nodes: Vec::new(),
        index: HashMap::new(),
        by_order: HashMap::new(),
    };
    b.insert(Subgroup::trivial(g));
    let classes = conjugacy_classes(g);
    let mut class_of = vec![0u32; g.order()];
    for (c, class) in classes.iter().enumerate() {
        for &x in &class.members {
            class_of[x as usize] = c as u32;
        }
    }
    // x and x^k with k prime to |x| have the same normal closure.
    let mut done = FixedBitSet::with_capacity(classes.len());
    done.insert(class_of[g.identity() as usize] as usize);
    for class in &classes {
        let x = class.representative;
        if done.contains(class_of[x as usize] as usize) {
            continue;
        }
        let ord = g.element_order(x);
        let mut y = x;
        for k in 1..ord {
            if gcd(k, ord) == 1 {
                done.insert(class_of[y as usize] as usize);
            }
            y = g.mul(y, x);
        }
        let ncl = normal_closure(g, &[x]).expect("representative is a member");
        b.insert(ncl);
    }
    let mut i = 0;
    while i < b.nodes.len() {
        for j in 0..i {
            b.join(i, j);
        }
        i += 1;
    }
    b.insert(Subgroup::whole(g));
    let derived = derived_subgroup(g);
    b.insert(derived.clone());
    NormalLattice::from_nodes(g.clone(), b.nodes, &derived)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl NormalLattice {
    /// Sorts nodes by (order, member list) and derives the inclusion matrix.
    pub(crate) fn from_nodes(group: Arc<Group>, mut nodes: Vec<Subgroup>, derived: &Subgroup) -> NormalLattice {
        nodes.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.cmp_members(b)));
        nodes.dedup();
        let n = nodes.len();
        let mut leq = Vec::with_capacity(n);
        for a in &nodes {
            let mut row = FixedBitSet::with_capacity(n);
            for (j, b) in nodes.iter().enumerate() {
                if a.order() <= b.order() && a.is_subset(b) {
                    row.insert(j);
                }
            }
            leq.push(row);
        }
        let index: HashMap<FixedBitSet, usize> = nodes
            .iter()
            .enumerate()
            .map(|(i, s)| (s.members().clone(), i))
            .collect();
        let trivial = 0;
        let whole = n - 1;
        let derived = index[derived.members()];
        NormalLattice {
            group,
            nodes,
            leq,
            index,
            trivial,
            whole,
            derived,
        }
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Subgroup] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &Subgroup {
        &self.nodes[i]
    }

    pub fn trivial_index(&self) -> usize {
        self.trivial
    }

    pub fn whole_index(&self) -> usize {
        self.whole
    }

    pub fn derived_index(&self) -> usize {
        self.derived
    }

    /// `leq(i, j)` iff node i ⊆ node j.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i].contains(j)
    }

    pub fn inclusion_order(&self) -> Vec<Vec<bool>> {
        (0..self.len())
            .map(|i| (0..self.len()).map(|j| self.leq(i, j)).collect())
            .collect()
    }

    /// Index of the node with exactly this member set. A miss means the lattice
    /// is incomplete, which is an invariant violation.
    pub fn find_node(&self, s: &Subgroup) -> Result<usize> {
        if s.parent_id() != self.group.id() {
            return Err(GroupError::ParentMismatch);
        }
        self.index
            .get(s.members())
            .copied()
            .ok_or_else(|| GroupError::Invariant(format!("subgroup of order {} missing from lattice", s.order())))
    }

    /// Node with exactly this member set, if any.
    pub fn find_members(&self, members: &FixedBitSet) -> Option<usize> {
        self.index.get(members).copied()
    }

    /// Join of two nodes, located in the lattice without building it when
    /// possible.
    pub fn join_nodes(&self, a: usize, b: usize) -> Result<usize> {
        if self.leq(a, b) {
            return Ok(b);
        }
        if self.leq(b, a) {
            return Ok(a);
        }
        let (na, nb) = (&self.nodes[a], &self.nodes[b]);
        let target = na.order() * nb.order() / na.intersection_order(nb);
        let upper = self.leq[a].intersection(&self.leq[b]);
        for c in upper {
            if self.nodes[c].order() == target {
                return Ok(c);
            }
        }
        Err(GroupError::Invariant(format!(
            "join of nodes {a} and {b} missing from lattice"
        )))
    }
}
