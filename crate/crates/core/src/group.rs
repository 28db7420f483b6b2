//! Finite groups with a fully enumerated element set.
//!
//! After enumeration the elements are sorted by canonical encoding, so element
//! indices order the same way encodings do. All higher-level algorithms work on
//! `u32` indices. Multiplication is served by one of four backends: a full
//! Cayley table for small groups, element arithmetic plus a hash lookup for
//! large ones, delegation to the parent group for quotients, and digit-wise
//! delegation to the factors for direct products.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

use indexmap::IndexSet;
use rustc_hash::FxBuildHasher;

use crate::element::{CosetSpace, Element};
use crate::error::{GroupError, Result};

/// Default element cap for enumeration.
pub const DEFAULT_MAX_ELEMENTS: usize = 5_000_000;

/// Groups up to this order get a full multiplication table.
pub const TABLE_MAX_ORDER: usize = 2048;
const _: () = assert!(TABLE_MAX_ORDER <= u16::MAX as usize + 1);

pub const CAP_ENV: &str = "PROPR_MAX_ELEMENTS";

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// The element cap, from `PROPR_MAX_ELEMENTS` when set.
pub fn element_cap() -> usize {
    std::env::var(CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_ELEMENTS)
}

type ElementSet = IndexSet<Element, FxBuildHasher>;

enum Backend {
    /// Entries fit in u16 because tables stop at `TABLE_MAX_ORDER`.
    Table(Box<[u16]>),
    Arithmetic,
    Quotient(Arc<CosetSpace>),
    /// Mixed-radix indices over the factors, first factor most significant.
    Product(Vec<Arc<Group>>),
}

pub struct Group {
    id: u64,
    elements: ElementSet,
    generators: Vec<u32>,
    identity: u32,
    backend: Backend,
    inverses: OnceLock<Vec<u32>>,
}

impl std::fmt::Debug for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Group")
            .field("id", &self.id)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

impl Group {
    /// Breadth-first closure of the generators with the default cap.
    pub fn generate(generators: &[Element]) -> Result<Arc<Group>> {
        Group::generate_with_cap(generators, element_cap())
    }

    pub fn generate_with_cap(generators: &[Element], cap: usize) -> Result<Arc<Group>> {
        let first = generators.first().ok_or(GroupError::NoGenerators)?;
        if generators.iter().any(|g| !g.compatible(first)) {
            return Err(GroupError::IncompatibleGenerators);
        }
        let mut set = ElementSet::default();
        set.insert(first.identity_like());
        // BFS tree: (parent index, generator) per discovered element.
        let mut tree: Vec<(u32, u32)> = vec![(u32::MAX, u32::MAX)];
        let mut right: Vec<Vec<u32>> = vec![Vec::new(); generators.len()];
        let mut i = 0;
        while i < set.len() {
            for (g, gen) in generators.iter().enumerate() {
                let prod = set[i].mul(gen);
                let (idx, fresh) = set.insert_full(prod);
                if fresh {
                    if set.len() > cap {
                        return Err(GroupError::CapExceeded { cap });
                    }
                    tree.push((i as u32, g as u32));
                }
                right[g].push(idx as u32);
            }
            i += 1;
        }

        let n = set.len();
        let mut order: Vec<u32> = (0..n as u32).collect();
        order.sort_unstable_by(|&a, &b| set[a as usize].cmp_compatible(&set[b as usize]));
        let mut new_of = vec![0u32; n];
        for (pos, &old) in order.iter().enumerate() {
            new_of[old as usize] = pos as u32;
        }

        let backend = if n <= TABLE_MAX_ORDER {
            // left[h][y] = h*y, from h*(p*g) = (h*p)*g along the BFS tree.
            let mut left = vec![vec![0u32; n]; generators.len()];
            for (h, col) in left.iter_mut().enumerate() {
                col[0] = right[h][0];
                for y in 1..n {
                    let (p, g) = tree[y];
                    col[y] = right[g as usize][col[p as usize] as usize];
                }
            }
            // Row of x = p*h is the row of p read through left multiplication by h.
            let left_new: Vec<Vec<u32>> = left
                .iter()
                .map(|col| {
                    let mut t = vec![0u32; n];
                    for (old, &img) in col.iter().enumerate() {
                        t[new_of[old] as usize] = new_of[img as usize];
                    }
                    t
                })
                .collect();
            drop(left);
            let mut table = vec![0u16; n * n].into_boxed_slice();
            let id = new_of[0] as usize;
            for (y, v) in table[id * n..(id + 1) * n].iter_mut().enumerate() {
                *v = y as u16;
            }
            for (x, &(p, h)) in tree.iter().enumerate().skip(1) {
                let (x, p) = (new_of[x] as usize, new_of[p as usize] as usize);
                let lh = &left_new[h as usize];
                let (dst, src) = if x > p {
                    let (lo, hi) = table.split_at_mut(x * n);
                    (&mut hi[..n], &lo[p * n..(p + 1) * n])
                } else {
                    let (lo, hi) = table.split_at_mut(p * n);
                    (&mut lo[x * n..(x + 1) * n], &hi[..n])
                };
                for (d, &l) in dst.iter_mut().zip(lh) {
                    *d = src[l as usize];
                }
            }
            Backend::Table(table)
        } else {
            Backend::Arithmetic
        };
        drop(right);

        let gen_idx: Vec<u32> = generators
            .iter()
            .map(|g| new_of[set.get_index_of(g).expect("generator reached by closure")])
            .collect();
        let mut slots: Vec<Option<Element>> = set.into_iter().map(Some).collect();
        let elements: ElementSet = order
            .iter()
            .map(|&old| slots[old as usize].take().expect("each element moved once"))
            .collect();
        let identity = new_of[0];

        Ok(Arc::new(Group {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            elements,
            generators: gen_idx,
            identity,
            backend,
            inverses: OnceLock::new(),
        }))
    }

    /// Direct product of `factors`, with elements as tuples. Tuple encodings
    /// concatenate fixed-width components, so the mixed-radix index (first
    /// factor most significant) is already encoding order.
    pub fn direct_product(factors: &[Arc<Group>]) -> Result<Arc<Group>> {
        if factors.is_empty() {
            return Err(GroupError::NoGenerators);
        }
        let cap = element_cap();
        let n = factors
            .iter()
            .try_fold(1usize, |acc, f| acc.checked_mul(f.order()).filter(|&m| m <= cap))
            .ok_or(GroupError::CapExceeded { cap })?;
        let mut strides = vec![1usize; factors.len()];
        for i in (0..factors.len() - 1).rev() {
            strides[i] = strides[i + 1] * factors[i + 1].order();
        }
        let mut elements = ElementSet::with_capacity_and_hasher(n, FxBuildHasher);
        let mut digits = vec![0u32; factors.len()];
        for _ in 0..n {
            let parts: Vec<Element> = factors
                .iter()
                .zip(&digits)
                .map(|(f, &d)| f.element(d).clone())
                .collect();
            elements.insert(Element::Tuple(parts.into_boxed_slice()));
            for (d, f) in digits.iter_mut().zip(factors).rev() {
                *d += 1;
                if (*d as usize) < f.order() {
                    break;
                }
                *d = 0;
            }
        }
        let base: usize = factors
            .iter()
            .zip(&strides)
            .map(|(f, &s)| f.identity() as usize * s)
            .sum();
        let mut generators = Vec::new();
        for ((f, &s), id) in factors
            .iter()
            .zip(&strides)
            .zip(factors.iter().map(|f| f.identity() as usize))
        {
            for &x in f.generators() {
                generators.push((base - id * s + x as usize * s) as u32);
            }
        }
        let backend = if n <= TABLE_MAX_ORDER {
            let first = &factors[0];
            let mut table: Vec<u16> = (0..first.order() as u32)
                .flat_map(|a| (0..first.order() as u32).map(move |b| first.mul(a, b) as u16))
                .collect();
            let mut m = first.order();
            for f in &factors[1..] {
                table = combine_tables(&table, m, f);
                m *= f.order();
            }
            Backend::Table(table.into_boxed_slice())
        } else {
            Backend::Product(factors.to_vec())
        };
        Ok(Arc::new(Group {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            elements,
            generators,
            identity: base as u32,
            backend,
            inverses: OnceLock::new(),
        }))
    }

    /// Assembles a quotient group whose elements are already known.
    pub(crate) fn from_coset_space(space: Arc<CosetSpace>, elements: ElementSet, generators: Vec<u32>) -> Arc<Group> {
        let identity = space.coset_of(space.parent.identity());
        Arc::new(Group {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            elements,
            generators,
            identity,
            backend: Backend::Quotient(space),
            inverses: OnceLock::new(),
        })
    }

    /// Unique identity of this group value, used to match subgroups to parents.
    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn element(&self, i: u32) -> &Element {
        &self.elements[i as usize]
    }

    pub fn elements(&self) -> impl ExactSizeIterator<Item = &Element> {
        self.elements.iter()
    }

    pub fn indices(&self) -> std::ops::Range<u32> {
        0..self.order() as u32
    }

    pub fn index_of(&self, e: &Element) -> Option<u32> {
        self.elements.get_index_of(e).map(|i| i as u32)
    }

    pub fn has_table(&self) -> bool {
        matches!(self.backend, Backend::Table(_))
    }

    /// Coset data when this group is a quotient.
    pub fn coset_space(&self) -> Option<&Arc<CosetSpace>> {
        match &self.backend {
            Backend::Quotient(s) => Some(s),
            _ => None,
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.backend {
            Backend::Table(t) => t[a as usize * self.elements.len() + b as usize] as u32,
            Backend::Arithmetic => {
                let prod = self.elements[a as usize].mul(&self.elements[b as usize]);
                self.elements.get_index_of(&prod).expect("group is closed") as u32
            }
            Backend::Quotient(s) => s.coset_of[s.parent.mul(s.reps[a as usize], s.reps[b as usize]) as usize],
            Backend::Product(factors) => {
                let (mut a, mut b) = (a, b);
                let (mut out, mut stride) = (0, 1);
                for f in factors.iter().rev() {
                    let m = f.order() as u32;
                    out += f.mul(a % m, b % m) * stride;
                    (a, b, stride) = (a / m, b / m, stride * m);
                }
                out
            }
        }
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inverses.get_or_init(|| self.compute_inverses())[a as usize]
    }

    fn compute_inverses(&self) -> Vec<u32> {
        let n = self.order();
        match &self.backend {
            Backend::Table(t) => (0..n)
                .map(|x| {
                    let row = &t[x * n..(x + 1) * n];
                    row.iter()
                        .position(|&v| v as u32 == self.identity)
                        .expect("inverse exists") as u32
                })
                .collect(),
            Backend::Arithmetic => self
                .elements
                .iter()
                .map(|e| self.elements.get_index_of(&e.inverse()).expect("group is closed") as u32)
                .collect(),
            Backend::Quotient(s) => s.reps.iter().map(|&r| s.coset_of[s.parent.inv(r) as usize]).collect(),
            Backend::Product(factors) => (0..n as u32)
                .map(|x| {
                    let (mut x, mut out, mut stride) = (x, 0, 1);
                    for f in factors.iter().rev() {
                        let m = f.order() as u32;
                        out += f.inv(x % m) * stride;
                        (x, stride) = (x / m, stride * m);
                    }
                    out
                })
                .collect(),
        }
    }

    /// `g x g⁻¹`.
    #[inline]
    pub fn conj(&self, g: u32, x: u32) -> u32 {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// `a b a⁻¹ b⁻¹`.
    pub fn commutator(&self, a: u32, b: u32) -> u32 {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn pow(&self, x: u32, mut e: u64) -> u32 {
        let mut result = self.identity;
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    /// Order of an element, found by trimming prime factors off the group order.
    pub fn element_order(&self, x: u32) -> u64 {
        let mut ord = self.order() as u64;
        for (p, _) in factorize(ord) {
            while ord.is_multiple_of(p) && self.pow(x, ord / p) == self.identity {
                ord /= p;
            }
        }
        ord
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter()
            .enumerate()
            .all(|(i, &a)| gens[i + 1..].iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }
}

/// Prime factorization by trial division, ascending primes.
/// Cayley table of `A x B` from the table of `A` (order `ma`) and `B`.
fn combine_tables(ta: &[u16], ma: usize, b: &Group) -> Vec<u16> {
    let mb = b.order();
    let tb: Vec<u16> = (0..mb as u32)
        .flat_map(|x| (0..mb as u32).map(move |y| b.mul(x, y) as u16))
        .collect();
    let n = ma * mb;
    let mut out = vec![0u16; n * n];
    for (row, dst) in out.chunks_exact_mut(n).enumerate() {
        let (a1, a2) = (row / mb, row % mb);
        let rb = &tb[a2 * mb..(a2 + 1) * mb];
        for (b1, block) in dst.chunks_exact_mut(mb).enumerate() {
            let r1 = ta[a1 * ma + b1] * mb as u16;
            for (d, &v) in block.iter_mut().zip(rb) {
                *d = r1 + v;
            }
        }
    }
    out
}

pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn perm(deg: usize, cycles: &[&[u32]]) -> Element {
        Element::Perm(Permutation::from_cycles(deg, cycles).unwrap())
    }

    #[test]
    fn s3_closure() {
        let g = Group::generate(&[perm(3, &[&[0, 1]]), perm(3, &[&[0, 1, 2]])]).unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        // Sorted by encoding, the identity permutation comes first.
        assert_eq!(g.identity(), 0);
    }

    #[test]
    fn trivial_generator() {
        let g = Group::generate(&[Element::Perm(Permutation::identity(4))]).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.is_abelian());
    }

    #[test]
    fn table_matches_arithmetic() {
        let g = Group::generate(&[perm(5, &[&[0, 1]]), perm(5, &[&[0, 1, 2, 3, 4]])]).unwrap();
        assert!(g.has_table());
        for a in g.indices() {
            for b in g.indices().step_by(7) {
                let direct = g.element(a).mul(g.element(b));
                assert_eq!(g.index_of(&direct), Some(g.mul(a, b)));
            }
            assert_eq!(g.mul(a, g.inv(a)), g.identity());
        }
    }

    #[test]
    fn elements_sorted_by_encoding() {
        let g = Group::generate(&[perm(4, &[&[0, 1]]), perm(4, &[&[0, 1, 2, 3]])]).unwrap();
        let codes: Vec<Vec<u8>> = g.elements().map(Element::encode).collect();
        assert!(codes.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn cap_is_enforced() {
        let gens = [perm(6, &[&[0, 1]]), perm(6, &[&[0, 1, 2, 3, 4, 5]])];
        assert_eq!(
            Group::generate_with_cap(&gens, 100).unwrap_err(),
            GroupError::CapExceeded { cap: 100 }
        );
    }

    #[test]
    fn incompatible_generators() {
        let err = Group::generate(&[perm(3, &[&[0, 1]]), perm(4, &[&[0, 1]])]).unwrap_err();
        assert_eq!(err, GroupError::IncompatibleGenerators);
        assert_eq!(Group::generate(&[]).unwrap_err(), GroupError::NoGenerators);
    }

    #[test]
    fn element_orders_in_s4() {
        let g = Group::generate(&[perm(4, &[&[0, 1]]), perm(4, &[&[0, 1, 2, 3]])]).unwrap();
        let mut counts = std::collections::BTreeMap::new();
        for x in g.indices() {
            *counts.entry(g.element_order(x)).or_insert(0) += 1;
        }
        let expected: std::collections::BTreeMap<u64, i32> = [(1, 1), (2, 9), (3, 8), (4, 6)].into_iter().collect();
        assert_eq!(counts, expected);
    }

    #[test]
    fn factorization() {
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(97), vec![(97, 1)]);
    }

    #[test]
    fn direct_product_matches_closure() {
        let s3 = Group::generate(&[perm(3, &[&[0, 1]]), perm(3, &[&[0, 1, 2]])]).unwrap();
        let c4 = Group::generate(&[perm(4, &[&[0, 1, 2, 3]])]).unwrap();
        let p = Group::direct_product(&[s3.clone(), c4.clone()]).unwrap();
        assert!(p.has_table());
        let tuple = |a: &Element, b: &Element| Element::Tuple(vec![a.clone(), b.clone()].into_boxed_slice());
        let (e3, e4) = (s3.element(s3.identity()), c4.element(c4.identity()));
        let mut gens: Vec<Element> = s3.generators().iter().map(|&x| tuple(s3.element(x), e4)).collect();
        gens.extend(c4.generators().iter().map(|&x| tuple(e3, c4.element(x))));
        let q = Group::generate(&gens).unwrap();
        assert_eq!(p.order(), 24);
        assert!(p.elements().eq(q.elements()));
        assert_eq!(p.identity(), q.identity());
        for a in p.indices() {
            assert_eq!(p.inv(a), q.inv(a));
            for b in p.indices() {
                assert_eq!(p.mul(a, b), q.mul(a, b));
            }
        }
        let gp: Vec<&Element> = p.generators().iter().map(|&x| p.element(x)).collect();
        assert!(gp.into_iter().eq(gens.iter()));
    }
}
