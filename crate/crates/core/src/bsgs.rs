//! Stabilizer chains for permutation groups (Schreier–Sims).
//!
//! Gives order and membership without enumerating elements. Used as an
//! accelerator and cross-check for the dense engine on permutation groups.

use crate::perm::Permutation;

struct Level {
    point: u32,
    /// Strong generators first introduced at this level.
    gens: Vec<Permutation>,
    orbit: Vec<u32>,
    /// transversal[b] maps the base point to b.
    transversal: Vec<Option<Permutation>>,
}

pub struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabilizerChain {
    pub fn new(generators: &[Permutation]) -> StabilizerChain {
        let degree = generators.first().map_or(0, Permutation::degree);
        let mut chain = StabilizerChain {
            degree,
            levels: Vec::new(),
        };
        for g in generators {
            assert_eq!(g.degree(), degree, "generators of one degree");
            if let Some(residue) = chain.sift_from(0, g.clone()) {
                chain.add_strong_generator(residue.0, residue.1);
            }
        }
        chain.complete();
        chain
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        p.degree() == self.degree && self.sift_from(0, p.clone()).is_none()
    }

    fn add_strong_generator(&mut self, level: usize, g: Permutation) {
        if level == self.levels.len() {
            let point = (0..self.degree as u32)
                .find(|&x| g.apply(x) != x)
                .expect("residue is not the identity");
            self.levels.push(Level {
                point,
                gens: Vec::new(),
                orbit: Vec::new(),
                transversal: vec![None; self.degree],
            });
        }
        self.levels[level].gens.push(g);
    }

    /// Strips `g` through levels `start..`. Returns the level where it got stuck
    /// and the residue, or `None` if it sifts to the identity.
    fn sift_from(&self, start: usize, mut g: Permutation) -> Option<(usize, Permutation)> {
        for (j, level) in self.levels.iter().enumerate().skip(start) {
            let x = g.apply(level.point);
            match &level.transversal[x as usize] {
                Some(u) => g = u.inverse().compose_unchecked(&g),
                None => return Some((j, g)),
            }
        }
        (!g.is_identity()).then_some((self.levels.len(), g))
    }

    fn level_generators(&self, i: usize) -> Vec<Permutation> {
        self.levels[i..].iter().flat_map(|l| l.gens.iter().cloned()).collect()
    }

    fn rebuild_orbit(&mut self, i: usize) {
        let gens = self.level_generators(i);
        let level = &mut self.levels[i];
        level.transversal = vec![None; self.degree];
        level.transversal[level.point as usize] = Some(Permutation::identity(self.degree));
        level.orbit = vec![level.point];
        let mut k = 0;
        while k < level.orbit.len() {
            let b = level.orbit[k];
            let ub = level.transversal[b as usize]
                .clone()
                .expect("orbit point has a transversal");
            for s in &gens {
                let c = s.apply(b);
                if level.transversal[c as usize].is_none() {
                    level.transversal[c as usize] = Some(s.compose_unchecked(&ub));
                    level.orbit.push(c);
                }
            }
            k += 1;
        }
    }

    /// Processes levels bottom-up, sifting every Schreier generator; restarts
    /// whenever a new strong generator appears.
    fn complete(&mut self) {
        'outer: loop {
            for i in (0..self.levels.len()).rev() {
                self.rebuild_orbit(i);
            }
            for i in (0..self.levels.len()).rev() {
                let gens = self.level_generators(i);
                let orbit = self.levels[i].orbit.clone();
                for &b in &orbit {
                    let ub = self.levels[i].transversal[b as usize].clone().expect("orbit point");
                    for s in &gens {
                        let c = s.apply(b);
                        let uc = self.levels[i].transversal[c as usize]
                            .as_ref()
                            .expect("orbit is closed");
                        let h = uc.inverse().compose_unchecked(&s.compose_unchecked(&ub));
                        if let Some((j, residue)) = self.sift_from(i + 1, h) {
                            self.add_strong_generator(j, residue);
                            continue 'outer;
                        }
                    }
                }
            }
            break;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym_gens(n: usize) -> Vec<Permutation> {
        let cycle: Vec<u32> = (0..n as u32).collect();
        vec![
            Permutation::from_cycles(n, &[&[0, 1]]).unwrap(),
            Permutation::from_cycles(n, &[&cycle]).unwrap(),
        ]
    }

    #[test]
    fn symmetric_orders() {
        assert_eq!(StabilizerChain::new(&sym_gens(5)).order(), 120);
        assert_eq!(StabilizerChain::new(&sym_gens(8)).order(), 40320);
        assert_eq!(StabilizerChain::new(&sym_gens(10)).order(), 3_628_800);
    }

    #[test]
    fn alternating_a5() {
        let gens = vec![
            Permutation::from_cycles(5, &[&[0, 1, 2]]).unwrap(),
            Permutation::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap(),
        ];
        let chain = StabilizerChain::new(&gens);
        assert_eq!(chain.order(), 60);
        assert!(chain.contains(&Permutation::from_cycles(5, &[&[0, 1], &[2, 3]]).unwrap()));
        assert!(!chain.contains(&Permutation::from_cycles(5, &[&[0, 1]]).unwrap()));
    }

    #[test]
    fn trivial_group() {
        let chain = StabilizerChain::new(&[Permutation::identity(4)]);
        assert_eq!(chain.order(), 1);
        assert!(chain.base().is_empty());
    }
}
