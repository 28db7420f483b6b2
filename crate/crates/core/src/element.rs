//! Opaque group elements with a canonical byte encoding.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::group::Group;
use crate::matrix::Matrix;
use crate::perm::Permutation;

pub const TAG_PERM: u8 = 1;
pub const TAG_MATRIX: u8 = 2;
pub const TAG_COSET: u8 = 3;
pub const TAG_TUPLE: u8 = 4;

/// Coset partition of a group by a normal subgroup.
pub struct CosetSpace {
    pub(crate) parent: Arc<Group>,
    /// Parent element index -> quotient element index.
    pub(crate) coset_of: Vec<u32>,
    /// Quotient element index -> parent index of the canonical representative.
    pub(crate) reps: Vec<u32>,
}

impl CosetSpace {
    pub fn parent(&self) -> &Arc<Group> {
        &self.parent
    }

    pub fn coset_of(&self, parent_index: u32) -> u32 {
        self.coset_of[parent_index as usize]
    }

    pub fn representative(&self, coset: u32) -> u32 {
        self.reps[coset as usize]
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    #[inline]
    fn canonical(&self, parent_index: u32) -> u32 {
        self.reps[self.coset_of[parent_index as usize] as usize]
    }
}

/// A coset `gN`, stored as the parent index of its minimal-encoding member.
#[derive(Clone)]
pub struct Coset {
    pub(crate) space: Arc<CosetSpace>,
    pub(crate) rep: u32,
}

impl Coset {
    pub fn representative(&self) -> &Element {
        self.space.parent.element(self.rep)
    }

    pub fn space(&self) -> &Arc<CosetSpace> {
        &self.space
    }
}

impl PartialEq for Coset {
    fn eq(&self, other: &Self) -> bool {
        self.rep == other.rep && Arc::ptr_eq(&self.space, &other.space)
    }
}

impl Eq for Coset {}

impl Hash for Coset {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rep.hash(state);
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Element {
    Perm(Permutation),
    Matrix(Matrix),
    Coset(Coset),
    Tuple(Box<[Element]>),
}

impl Element {
    pub fn tag(&self) -> u8 {
        match self {
            Element::Perm(_) => TAG_PERM,
            Element::Matrix(_) => TAG_MATRIX,
            Element::Coset(_) => TAG_COSET,
            Element::Tuple(_) => TAG_TUPLE,
        }
    }

    /// Same kind and shape, so that the two can be multiplied.
    pub fn compatible(&self, other: &Element) -> bool {
        match (self, other) {
            (Element::Perm(a), Element::Perm(b)) => a.degree() == b.degree(),
            (Element::Matrix(a), Element::Matrix(b)) => a.same_space(b),
            (Element::Coset(a), Element::Coset(b)) => Arc::ptr_eq(&a.space, &b.space),
            (Element::Tuple(a), Element::Tuple(b)) => {
                a.len() == b.len() && a.iter().zip(b.iter()).all(|(x, y)| x.compatible(y))
            }
            _ => false,
        }
    }

    /// Group product. Callers guarantee compatibility; see [`Element::compatible`].
    pub fn mul(&self, other: &Element) -> Element {
        match (self, other) {
            (Element::Perm(a), Element::Perm(b)) => Element::Perm(a.compose_unchecked(b)),
            (Element::Matrix(a), Element::Matrix(b)) => Element::Matrix(a.mul_unchecked(b)),
            (Element::Coset(a), Element::Coset(b)) => {
                let prod = a.space.parent.mul(a.rep, b.rep);
                Element::Coset(Coset {
                    space: a.space.clone(),
                    rep: a.space.canonical(prod),
                })
            }
            (Element::Tuple(a), Element::Tuple(b)) => {
                Element::Tuple(a.iter().zip(b.iter()).map(|(x, y)| x.mul(y)).collect())
            }
            _ => panic!("multiplying incompatible group elements"),
        }
    }

    pub fn inverse(&self) -> Element {
        match self {
            Element::Perm(a) => Element::Perm(a.inverse()),
            Element::Matrix(a) => Element::Matrix(a.inverse().expect("group elements are invertible")),
            Element::Coset(a) => {
                let inv = a.space.parent.inv(a.rep);
                Element::Coset(Coset {
                    space: a.space.clone(),
                    rep: a.space.canonical(inv),
                })
            }
            Element::Tuple(a) => Element::Tuple(a.iter().map(Element::inverse).collect()),
        }
    }

    /// The identity of the group this element lives in.
    pub fn identity_like(&self) -> Element {
        match self {
            Element::Perm(a) => Element::Perm(Permutation::identity(a.degree())),
            Element::Matrix(a) => {
                Element::Matrix(Matrix::identity(a.field(), a.dim()).expect("dimension already valid"))
            }
            Element::Coset(a) => Element::Coset(Coset {
                space: a.space.clone(),
                rep: a.space.canonical(a.space.parent.identity()),
            }),
            Element::Tuple(a) => Element::Tuple(a.iter().map(Element::identity_like).collect()),
        }
    }

    /// Canonical encoding: a kind tag followed by the payload.
    ///
    /// Permutations emit their image vector, matrices their row-major packed
    /// entries, cosets the encoding of the representative, tuples a component
    /// count followed by each component's encoding.
    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::new();
        self.encode_into(&mut out);
        out
    }

    pub fn encode_into(&self, out: &mut Vec<u8>) {
        out.push(self.tag());
        match self {
            Element::Perm(a) => a.encode_into(out),
            Element::Matrix(a) => a.encode_into(out),
            Element::Coset(a) => a.representative().encode_into(out),
            Element::Tuple(parts) => {
                out.push(parts.len() as u8);
                for p in parts.iter() {
                    p.encode_into(out);
                }
            }
        }
    }

    pub fn as_perm(&self) -> Option<&Permutation> {
        match self {
            Element::Perm(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_matrix(&self) -> Option<&Matrix> {
        match self {
            Element::Matrix(m) => Some(m),
            _ => None,
        }
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Element {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        if self.compatible(other) {
            self.cmp_compatible(other)
        } else {
            self.encode().cmp(&other.encode())
        }
    }
}

impl Element {
    /// Encoding order without building encodings. Compatible elements have
    /// fixed-width big-endian payloads of equal length, so comparing them
    /// field by field agrees with comparing the bytes.
    pub(crate) fn cmp_compatible(&self, other: &Element) -> std::cmp::Ordering {
        match (self, other) {
            (Element::Perm(a), Element::Perm(b)) => a.images().cmp(b.images()),
            (Element::Matrix(a), Element::Matrix(b)) => {
                let n = a.dim();
                (0..n)
                    .flat_map(|i| (0..n).map(move |j| (i, j)))
                    .map(|(i, j)| a.get(i, j).0.cmp(&b.get(i, j).0))
                    .find(|o| o.is_ne())
                    .unwrap_or(std::cmp::Ordering::Equal)
            }
            (Element::Coset(a), Element::Coset(b)) => a.representative().cmp_compatible(b.representative()),
            (Element::Tuple(a), Element::Tuple(b)) => a
                .iter()
                .zip(b.iter())
                .map(|(x, y)| x.cmp_compatible(y))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal),
            _ => unreachable!("compatible elements share a kind"),
        }
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Perm(p) => write!(f, "{p}"),
            Element::Matrix(m) => write!(f, "{m}"),
            Element::Coset(c) => write!(f, "{}N", c.representative()),
            Element::Tuple(parts) => {
                write!(f, "(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl From<Permutation> for Element {
    fn from(p: Permutation) -> Self {
        Element::Perm(p)
    }
}

impl From<Matrix> for Element {
    fn from(m: Matrix) -> Self {
        Element::Matrix(m)
    }
}
