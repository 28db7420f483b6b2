use std::fmt;

use crate::error::AlgebraError;

/// A permutation of `{0, ..., d-1}` stored as its image vector.
///
/// Composition follows the function convention: `a.compose(&b)` maps
/// `x` to `a(b(x))`, so `b` acts first. Group multiplication of permutation
/// elements is this composition.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u32]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Permutation {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Permutation, AlgebraError> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            let slot = seen
                .get_mut(i as usize)
                .ok_or_else(|| AlgebraError::NotAPermutation(format!("image {i} out of range")))?;
            if *slot {
                return Err(AlgebraError::NotAPermutation(format!("image {i} repeated")));
            }
            *slot = true;
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    /// Builds a permutation of the given degree from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Permutation, AlgebraError> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (pos, &x) in cycle.iter().enumerate() {
                let next = cycle[(pos + 1) % cycle.len()];
                if x as usize >= degree || next as usize >= degree {
                    return Err(AlgebraError::NotAPermutation(format!(
                        "point out of range for degree {degree}"
                    )));
                }
                if touched[x as usize] {
                    return Err(AlgebraError::NotAPermutation(format!("point {x} in two cycles")));
                }
                touched[x as usize] = true;
                images[x as usize] = next;
            }
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.images[x as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, AlgebraError> {
        if self.degree() != other.degree() {
            return Err(AlgebraError::DimensionMismatch(self.degree(), other.degree()));
        }
        Ok(self.compose_unchecked(other))
    }

    #[inline]
    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation {
            images: inv.into_boxed_slice(),
        }
    }

    /// Bytes per image in canonical encodings.
    pub fn encoding_width(&self) -> usize {
        match self.degree() {
            0..=256 => 1,
            257..=65536 => 2,
            _ => 4,
        }
    }

    pub(crate) fn encode_into(&self, out: &mut Vec<u8>) {
        match self.encoding_width() {
            1 => out.extend(self.images.iter().map(|&x| x as u8)),
            2 => self
                .images
                .iter()
                .for_each(|&x| out.extend_from_slice(&(x as u16).to_be_bytes())),
            _ => self
                .images
                .iter()
                .for_each(|&x| out.extend_from_slice(&x.to_be_bytes())),
        }
    }

    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x as u32);
                x = self.images[x] as usize;
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_convention_golden() {
        // a = (0 1), b = (1 2); a∘b applies b first.
        let a = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        let b = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        assert_eq!(a.compose(&b).unwrap().images(), &[1, 2, 0]);
        // The opposite convention would give [2, 0, 1].
        assert_eq!(b.compose(&a).unwrap().images(), &[2, 0, 1]);
    }

    #[test]
    fn inverse_and_identity() {
        let a = Permutation::from_images(vec![2, 0, 3, 1]).unwrap();
        let id = Permutation::identity(4);
        assert_eq!(a.compose(&a.inverse()).unwrap(), id);
        assert_eq!(a.compose(&id).unwrap(), a);
        assert_eq!(id.compose(&a).unwrap(), a);
    }

    #[test]
    fn degree_mismatch() {
        let a = Permutation::identity(3);
        let b = Permutation::identity(4);
        assert!(a.compose(&b).is_err());
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3]).is_err());
        assert!(Permutation::from_cycles(3, &[&[0, 1], &[1, 2]]).is_err());
    }

    #[test]
    fn display_cycles() {
        let a = Permutation::from_cycles(5, &[&[0, 3], &[1, 2, 4]]).unwrap();
        assert_eq!(a.to_string(), "(0 3)(1 2 4)");
        assert_eq!(Permutation::identity(3).to_string(), "()");
    }
}
