//! Invariant factors of finite abelian groups.

use std::collections::BTreeMap;

use crate::error::{GroupError, Result};
use crate::group::{factorize, Group};

/// Invariant factors `d1 | d2 | ... | dm` of an abelian group, ascending.
///
/// For each prime `p`, the counts `#{a : a^(p^i) = 1}` determine the partition
/// of the Sylow `p`-subgroup: the number of cyclic factors of order at least
/// `p^i` is the jump in the base-`p` logarithm of consecutive counts.
pub fn abelian_invariants(a: &Group) -> Result<Vec<u64>> {
    if !a.is_abelian() {
        return Err(GroupError::NotAbelian);
    }
    let order = a.order() as u64;
    if order == 1 {
        return Ok(Vec::new());
    }
    // Per prime: cyclic factor exponents, descending.
    let mut parts: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    let e_id = a.identity();
    for (p, e) in factorize(order) {
        // cur[x] = x^(p^i); count[i] = #{x : x^(p^i) = 1}.
        let pth: Vec<u32> = a.indices().map(|x| a.pow(x, p)).collect();
        let mut cur: Vec<u32> = a.indices().collect();
        let mut log_counts = Vec::with_capacity(e as usize + 1);
        for _ in 0..=e {
            let count = cur.iter().filter(|&&y| y == e_id).count() as u64;
            log_counts
                .push(exact_log(count, p).ok_or_else(|| {
                    GroupError::Invariant(format!("{p}-torsion count {count} is not a power of {p}"))
                })?);
            if count == p.pow(e) {
                break;
            }
            for y in cur.iter_mut() {
                *y = pth[*y as usize];
            }
        }
        // at_least[i] = number of cyclic factors of order >= p^(i+1)
        let at_least: Vec<u32> = log_counts.windows(2).map(|w| w[1] - w[0]).collect();
        let mut exps = Vec::new();
        for (i, &c) in at_least.iter().enumerate() {
            let next = at_least.get(i + 1).copied().unwrap_or(0);
            for _ in 0..(c - next) {
                exps.push(i as u32 + 1);
            }
        }
        exps.sort_unstable_by(|x, y| y.cmp(x));
        parts.insert(p, exps);
    }
    let width = parts.values().map(Vec::len).max().unwrap_or(0);
    // Largest factor combines the largest p-part of every prime, and so on.
    let mut factors: Vec<u64> = (0..width)
        .map(|i| {
            parts
                .iter()
                .map(|(&p, exps)| exps.get(i).map_or(1, |&e| p.pow(e)))
                .product()
        })
        .collect();
    factors.reverse();
    Ok(factors)
}

fn exact_log(mut n: u64, p: u64) -> Option<u32> {
    let mut k = 0;
    while n > 1 {
        if !n.is_multiple_of(p) {
            return None;
        }
        n /= p;
        k += 1;
    }
    Some(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::Element;
    use crate::perm::Permutation;

    fn cyclic_product(orders: &[u32]) -> std::sync::Arc<Group> {
        let degree: u32 = orders.iter().sum::<u32>().max(1);
        let mut start = 0;
        let mut gens = Vec::new();
        for &n in orders {
            let cycle: Vec<u32> = (start..start + n).collect();
            gens.push(Element::Perm(
                Permutation::from_cycles(degree as usize, &[&cycle]).unwrap(),
            ));
            start += n;
        }
        if gens.is_empty() {
            gens.push(Element::Perm(Permutation::identity(1)));
        }
        Group::generate(&gens).unwrap()
    }

    #[test]
    fn small_cases() {
        assert_eq!(abelian_invariants(&cyclic_product(&[])).unwrap(), Vec::<u64>::new());
        assert_eq!(abelian_invariants(&cyclic_product(&[6])).unwrap(), vec![6]);
        assert_eq!(abelian_invariants(&cyclic_product(&[2, 2])).unwrap(), vec![2, 2]);
        assert_eq!(abelian_invariants(&cyclic_product(&[2, 3])).unwrap(), vec![6]);
    }

    #[test]
    fn mixed_primes() {
        // 2-parts {4, 2}, 3-parts {9, 3}
        assert_eq!(abelian_invariants(&cyclic_product(&[4, 6, 9])).unwrap(), vec![6, 36]);
        assert_eq!(abelian_invariants(&cyclic_product(&[2, 2, 2])).unwrap(), vec![2, 2, 2]);
        assert_eq!(abelian_invariants(&cyclic_product(&[8, 4, 2])).unwrap(), vec![2, 4, 8]);
    }

    #[test]
    fn rejects_nonabelian() {
        let s3 = Group::generate(&[
            Element::Perm(Permutation::from_cycles(3, &[&[0, 1]]).unwrap()),
            Element::Perm(Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap()),
        ])
        .unwrap();
        assert_eq!(abelian_invariants(&s3).unwrap_err(), GroupError::NotAbelian);
    }
}
