use fixedbitset::FixedBitSet;

use crate::group::Group;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    /// Member with the smallest canonical encoding.
    pub representative: u32,
    /// Members in ascending index order.
    pub members: Vec<u32>,
}

impl ConjugacyClass {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Orbits of conjugation by the generators, sorted by (size, representative).
pub fn conjugacy_classes(g: &Group) -> Vec<ConjugacyClass> {
    let n = g.order();
    let mut seen = FixedBitSet::with_capacity(n);
    let gens: Vec<(u32, u32)> = g.generators().iter().map(|&x| (x, g.inv(x))).collect();
    let mut classes = Vec::new();
    for start in 0..n as u32 {
        if seen.contains(start as usize) {
            continue;
        }
        seen.insert(start as usize);
        let mut orbit = vec![start];
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            for &(s, s_inv) in &gens {
                let y = g.mul(g.mul(s, x), s_inv);
                if !seen.contains(y as usize) {
                    seen.insert(y as usize);
                    orbit.push(y);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        // Scanning upward, `start` is the least unseen index, hence the minimum.
        classes.push(ConjugacyClass {
            representative: start,
            members: orbit,
        });
    }
    classes.sort_by_key(|c| (c.members.len(), c.representative));
    classes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::Element;
    use crate::perm::Permutation;

    fn perm(deg: usize, cycles: &[&[u32]]) -> Element {
        Element::Perm(Permutation::from_cycles(deg, cycles).unwrap())
    }

    /// Conjugation by every element, not just generators.
    fn brute_force_sizes(g: &Group) -> Vec<usize> {
        let mut seen = vec![false; g.order()];
        let mut sizes = Vec::new();
        for x in g.indices() {
            if seen[x as usize] {
                continue;
            }
            let mut size = 0;
            for h in g.indices() {
                let y = g.conj(h, x);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    size += 1;
                }
            }
            sizes.push(size);
        }
        sizes.sort_unstable();
        sizes
    }

    #[test]
    fn s3_classes() {
        let g = Group::generate(&[perm(3, &[&[0, 1]]), perm(3, &[&[0, 1, 2]])]).unwrap();
        let classes = conjugacy_classes(&g);
        let sizes: Vec<usize> = classes.iter().map(ConjugacyClass::len).collect();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert_eq!(sizes, brute_force_sizes(&g));
        assert_eq!(classes[0].representative, g.identity());
    }

    #[test]
    fn abelian_singletons() {
        let g = Group::generate(&[perm(7, &[&[0, 1, 2, 3, 4, 5, 6]])]).unwrap();
        let classes = conjugacy_classes(&g);
        assert_eq!(classes.len(), 7);
        assert!(classes.iter().all(|c| c.len() == 1));
    }

    #[test]
    fn sizes_divide_order() {
        let g = Group::generate(&[perm(5, &[&[0, 1]]), perm(5, &[&[0, 1, 2, 3, 4]])]).unwrap();
        let classes = conjugacy_classes(&g);
        assert_eq!(classes.iter().map(ConjugacyClass::len).sum::<usize>(), 120);
        assert!(classes.iter().all(|c| 120 % c.len() == 0));
        let mut sizes: Vec<usize> = classes.iter().map(ConjugacyClass::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, brute_force_sizes(&g));
        for c in &classes {
            assert_eq!(c.representative, *c.members.iter().min().unwrap());
        }
    }
}
