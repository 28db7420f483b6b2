//! Named groups and the group-spec language.
//!
//! ```text
//! spec := atom ("x" atom)*
//! atom := NAME "(" INT ("," INT)* ")" | NAME INT | NAME
//! ```
//!
//! Names are case-insensitive: `C`, `D`, `S`, `A`, `Q8`, `GL`, `SL`, `PSL`.
//! `Dn` is the dihedral group of order `2n`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::element::Element;
use crate::error::{AlgebraError, GroupError};
use crate::field::{prime_power, FiniteField, MAX_FIELD_SIZE};
use crate::group::{element_cap, Group};
use crate::hom::quotient_group;
use crate::matrix::{Matrix, MAX_DIM};
use crate::perm::Permutation;
use crate::subgroup::Subgroup;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown group family '{name}' at {pos}")]
    UnknownFamily { pos: usize, name: String },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

impl From<AlgebraError> for CatalogError {
    fn from(e: AlgebraError) -> Self {
        CatalogError::Group(e.into())
    }
}

/// Variant order is the normal-form order of product factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    Cyclic(u32),
    Dihedral(u32),
    Symmetric(u32),
    Alternating(u32),
    Quaternion8,
    GL(u32, u32),
    SL(u32, u32),
    PSL(u32, u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupSpec {
    pub atoms: Vec<Atom>,
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Atom::Cyclic(n) => write!(f, "C{n}"),
            Atom::Dihedral(n) => write!(f, "D{n}"),
            Atom::Symmetric(n) => write!(f, "S{n}"),
            Atom::Alternating(n) => write!(f, "A{n}"),
            Atom::Quaternion8 => write!(f, "Q8"),
            Atom::GL(n, q) => write!(f, "GL({n},{q})"),
            Atom::SL(n, q) => write!(f, "SL({n},{q})"),
            Atom::PSL(n, q) => write!(f, "PSL({n},{q})"),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.atoms.iter().enumerate() {
            if i > 0 {
                f.write_str("x")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl FromStr for GroupSpec {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_group_spec(s)
    }
}

impl GroupSpec {
    pub fn atom(a: Atom) -> GroupSpec {
        GroupSpec { atoms: vec![a] }
    }

    /// Factors sorted; direct products commute up to isomorphism.
    pub fn normalized(&self) -> GroupSpec {
        let mut atoms = self.atoms.clone();
        atoms.sort_unstable();
        GroupSpec { atoms }
    }

    /// Order predicted from the factors, without realizing anything.
    pub fn order(&self) -> u128 {
        self.atoms.iter().map(Atom::order).product()
    }
}

fn factorial(n: u32) -> u128 {
    (1..=n as u128).product()
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn gl_order(n: u32, q: u32) -> u128 {
    let q = q as u128;
    let qn = q.pow(n);
    (0..n).map(|i| qn - q.pow(i)).product()
}

pub fn sl_order(n: u32, q: u32) -> u128 {
    gl_order(n, q) / (q as u128 - 1)
}

pub fn psl_order(n: u32, q: u32) -> u128 {
    sl_order(n, q) / gcd(n as u128, q as u128 - 1)
}

impl Atom {
    pub fn order(&self) -> u128 {
        match *self {
            Atom::Cyclic(n) => n as u128,
            Atom::Dihedral(n) => 2 * n as u128,
            Atom::Symmetric(n) => factorial(n),
            Atom::Alternating(n) => (factorial(n) / 2).max(1),
            Atom::Quaternion8 => 8,
            Atom::GL(n, q) => gl_order(n, q),
            Atom::SL(n, q) => sl_order(n, q),
            Atom::PSL(n, q) => psl_order(n, q),
        }
    }

    fn validate(&self) -> Result<(), CatalogError> {
        let bad = |msg: String| Err(CatalogError::InvalidParameters(msg));
        match *self {
            Atom::Cyclic(0) | Atom::Dihedral(0) | Atom::Symmetric(0) | Atom::Alternating(0) => {
                bad(format!("{self}: degree must be at least 1"))
            }
            Atom::GL(n, q) | Atom::SL(n, q) | Atom::PSL(n, q) => {
                if prime_power(q as u64).is_none() {
                    return bad(format!("{q} is not a prime power"));
                }
                if q as u64 > MAX_FIELD_SIZE {
                    return bad(format!("field size {q} exceeds {MAX_FIELD_SIZE}"));
                }
                if n == 0 || n as usize > MAX_DIM {
                    return bad(format!("matrix dimension {n} outside 1..={MAX_DIM}"));
                }
                if matches!(self, Atom::PSL(..)) && n < 2 {
                    return bad("PSL needs dimension at least 2".into());
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }
}

pub fn parse_group_spec(text: &str) -> Result<GroupSpec, CatalogError> {
    let mut p = SpecParser {
        src: text.as_bytes(),
        pos: 0,
    };
    let mut atoms = vec![p.atom()?];
    loop {
        p.skip_ws();
        match p.peek() {
            None => break,
            Some(b'x') | Some(b'X') | Some(b'*') => {
                p.pos += 1;
                atoms.push(p.atom()?);
            }
            Some(_) => return Err(p.error("expected 'x' or end of input")),
        }
    }
    Ok(GroupSpec { atoms })
}

struct SpecParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl SpecParser<'_> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn error(&self, msg: &str) -> CatalogError {
        CatalogError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn integer(&mut self) -> Result<u32, CatalogError> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| CatalogError::Syntax {
                pos: start,
                msg: "integer out of range".into(),
            })
    }

    fn atom(&mut self) -> Result<Atom, CatalogError> {
        self.skip_ws();
        let start = self.pos;
        // 'x' separates factors, so it never starts or continues a name.
        while matches!(self.peek(), Some(c) if c.is_ascii_alphabetic() && c != b'x' && c != b'X') {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected group name"));
        }
        let name = std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii")
            .to_ascii_uppercase();
        self.skip_ws();
        let params = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let mut v = vec![self.integer()?];
                loop {
                    self.skip_ws();
                    match self.peek() {
                        Some(b',') => {
                            self.pos += 1;
                            v.push(self.integer()?);
                        }
                        Some(b')') => {
                            self.pos += 1;
                            break;
                        }
                        _ => return Err(self.error("expected ',' or ')'")),
                    }
                }
                v
            }
            Some(c) if c.is_ascii_digit() => vec![self.integer()?],
            _ => Vec::new(),
        };
        let arity = |k: usize| -> Result<(), CatalogError> {
            if params.len() == k {
                Ok(())
            } else {
                Err(CatalogError::InvalidParameters(format!(
                    "{name} takes {k} parameter(s), got {}",
                    params.len()
                )))
            }
        };
        let atom = match name.as_str() {
            "C" => arity(1).map(|_| Atom::Cyclic(params[0]))?,
            "D" => arity(1).map(|_| Atom::Dihedral(params[0]))?,
            "S" => arity(1).map(|_| Atom::Symmetric(params[0]))?,
            "A" => arity(1).map(|_| Atom::Alternating(params[0]))?,
            "Q" => {
                arity(1)?;
                if params[0] != 8 {
                    return Err(CatalogError::InvalidParameters(format!(
                        "only Q8 is supported, got Q{}",
                        params[0]
                    )));
                }
                Atom::Quaternion8
            }
            "GL" => arity(2).map(|_| Atom::GL(params[0], params[1]))?,
            "SL" => arity(2).map(|_| Atom::SL(params[0], params[1]))?,
            "PSL" => arity(2).map(|_| Atom::PSL(params[0], params[1]))?,
            _ => return Err(CatalogError::UnknownFamily { pos: start, name }),
        };
        atom.validate()?;
        Ok(atom)
    }
}

fn perm(degree: usize, cycles: &[&[u32]]) -> Element {
    Element::Perm(Permutation::from_cycles(degree, cycles).expect("catalog cycles are valid"))
}

fn identity_perm(degree: usize) -> Element {
    Element::Perm(Permutation::identity(degree))
}

fn cycle(range: std::ops::Range<u32>) -> Vec<u32> {
    range.collect()
}

fn atom_generators(atom: Atom) -> Result<Vec<Element>, CatalogError> {
    Ok(match atom {
        Atom::Cyclic(1) => vec![identity_perm(1)],
        Atom::Cyclic(n) => vec![perm(n as usize, &[&cycle(0..n)])],
        Atom::Dihedral(1) => vec![perm(2, &[&[0, 1]])],
        Atom::Dihedral(2) => vec![perm(4, &[&[0, 1]]), perm(4, &[&[2, 3]])],
        Atom::Dihedral(n) => {
            let reflection: Vec<u32> = (0..n).map(|i| (n - i) % n).collect();
            vec![
                perm(n as usize, &[&cycle(0..n)]),
                Element::Perm(Permutation::from_images(reflection)?),
            ]
        }
        Atom::Symmetric(n) if n <= 1 => vec![identity_perm(1)],
        Atom::Symmetric(2) => vec![perm(2, &[&[0, 1]])],
        Atom::Symmetric(n) => vec![perm(n as usize, &[&[0, 1]]), perm(n as usize, &[&cycle(0..n)])],
        Atom::Alternating(n) if n <= 2 => vec![identity_perm(n.max(1) as usize)],
        Atom::Alternating(3) => vec![perm(3, &[&[0, 1, 2]])],
        Atom::Alternating(n) => {
            let long = if n % 2 == 1 { cycle(0..n) } else { cycle(1..n) };
            vec![perm(n as usize, &[&[0, 1, 2]]), perm(n as usize, &[&long])]
        }
        Atom::Quaternion8 => {
            // Points 0..8 are 1, -1, i, -i, j, -j, k, -k; left multiplication.
            let i = Permutation::from_images(vec![2, 3, 1, 0, 6, 7, 5, 4])?;
            let j = Permutation::from_images(vec![4, 5, 7, 6, 1, 0, 2, 3])?;
            vec![Element::Perm(i), Element::Perm(j)]
        }
        Atom::GL(n, q) => matrix_generators(n, q, true)?,
        Atom::SL(n, q) => matrix_generators(n, q, false)?,
        Atom::PSL(..) => unreachable!("PSL is realized as a quotient"),
    })
}

/// Transvections `I + a E_ij` for `a = ω^t`, `t < k`, plus `diag(ω, 1, …)` for GL.
fn matrix_generators(n: u32, q: u32, general: bool) -> Result<Vec<Element>, CatalogError> {
    let field = Arc::new(FiniteField::with_order(q as u64)?);
    let n = n as usize;
    let omega = field.primitive_element();
    let mut gens = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for t in 0..field.degree() {
                let mut m = Matrix::identity(&field, n)?;
                m.set(i, j, field.primitive_power(t as u64));
                gens.push(Element::Matrix(m));
            }
        }
    }
    if general {
        let mut d = Matrix::identity(&field, n)?;
        d.set(0, 0, omega);
        gens.push(Element::Matrix(d));
    }
    if gens.is_empty() {
        gens.push(Element::Matrix(Matrix::identity(&field, n)?));
    }
    Ok(gens)
}

fn check_order(atom: Atom, g: &Group) -> Result<(), CatalogError> {
    if g.order() as u128 != atom.order() {
        return Err(GroupError::Invariant(format!(
            "{atom} realized with order {}, expected {}",
            g.order(),
            atom.order()
        ))
        .into());
    }
    Ok(())
}

pub fn realize_atom(atom: Atom) -> Result<Arc<Group>, CatalogError> {
    realize_atom_with_cap(atom, element_cap())
}

pub fn realize_atom_with_cap(atom: Atom, cap: usize) -> Result<Arc<Group>, CatalogError> {
    atom.validate()?;
    let g = match atom {
        Atom::PSL(n, q) => {
            let sl = realize_atom_with_cap(Atom::SL(n, q), cap)?;
            let mut scalars = FixedBitSet::with_capacity(sl.order());
            for x in sl.indices() {
                if sl.element(x).as_matrix().is_some_and(Matrix::is_scalar) {
                    scalars.insert(x as usize);
                }
            }
            let center = Subgroup::from_members(&sl, scalars)?;
            quotient_group(&sl, &center)?.0
        }
        _ => Group::generate_with_cap(&atom_generators(atom)?, cap)?,
    };
    check_order(atom, &g)?;
    Ok(g)
}

/// Realizes the spec; products are built from their factor groups.
pub fn realize(spec: &GroupSpec) -> Result<Arc<Group>, CatalogError> {
    Realizer::new(0).realize(spec)
}

/// Realizes specs while keeping atom groups up to a given order, so a stream
/// of products does not rebuild the same factors.
pub struct Realizer {
    max_cached_order: u128,
    cap: usize,
    cache: HashMap<Atom, Arc<Group>>,
}

impl Realizer {
    pub fn new(max_cached_order: u128) -> Realizer {
        Realizer {
            max_cached_order,
            cap: element_cap(),
            cache: HashMap::new(),
        }
    }

    /// Replaces the element cap read from the environment.
    pub fn with_cap(mut self, cap: usize) -> Realizer {
        self.cap = cap;
        self
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    fn atom(&mut self, a: Atom) -> Result<Arc<Group>, CatalogError> {
        if let Some(g) = self.cache.get(&a) {
            return Ok(g.clone());
        }
        if a.order() > self.cap as u128 {
            return Err(GroupError::CapExceeded { cap: self.cap }.into());
        }
        let g = realize_atom_with_cap(a, self.cap)?;
        if a.order() <= self.max_cached_order {
            self.cache.insert(a, g.clone());
        }
        Ok(g)
    }

    pub fn realize(&mut self, spec: &GroupSpec) -> Result<Arc<Group>, CatalogError> {
        match spec.atoms.as_slice() {
            [] => Err(CatalogError::InvalidParameters("empty spec".into())),
            [a] => self.atom(*a),
            atoms => {
                let cap = self.cap;
                if spec.order() > cap as u128 {
                    return Err(GroupError::CapExceeded { cap }.into());
                }
                let factors = atoms.iter().map(|&a| self.atom(a)).collect::<Result<Vec<_>, _>>()?;
                let g = Group::direct_product(&factors)?;
                if g.order() as u128 != spec.order() {
                    return Err(GroupError::Invariant(format!("{spec} realized with order {}", g.order())).into());
                }
                Ok(g)
            }
        }
    }
}

/// Catalog atoms of order at most `max_order`, in normal-form order.
///
/// Small members that merely rename another family are left out: `D1`, `D2`,
/// `S1`, `S2`, `A1`..`A3` and one-dimensional matrix groups.
pub fn catalog_atoms(max_order: u128) -> Vec<Atom> {
    let mut atoms = Vec::new();
    let bounded = |n: u128| n.min(max_order) as u32;
    atoms.extend((1..=bounded(max_order)).map(Atom::Cyclic));
    atoms.extend((3..=bounded(max_order / 2)).map(Atom::Dihedral));
    atoms.extend((3..).map(Atom::Symmetric).take_while(|a| a.order() <= max_order));
    atoms.extend((4..).map(Atom::Alternating).take_while(|a| a.order() <= max_order));
    if max_order >= 8 {
        atoms.push(Atom::Quaternion8);
    }
    type Family = fn(u32, u32) -> Atom;
    let families: [Family; 3] = [Atom::GL, Atom::SL, Atom::PSL];
    for family in families {
        let mut found = Vec::new();
        for n in 2..=MAX_DIM as u32 {
            for q in 2..=MAX_FIELD_SIZE as u32 {
                if prime_power(q as u64).is_none() {
                    continue;
                }
                let a = family(n, q);
                if a.order() > max_order {
                    break;
                }
                found.push(a);
            }
        }
        found.sort_unstable();
        atoms.extend(found);
    }
    atoms
}

/// Every atom, then every product of 2..=`max_factors` nontrivial atoms, with
/// order at most `max_order`. Products are in normal form, so no spec repeats.
pub fn catalog_specs(max_order: u128, max_factors: usize) -> Vec<GroupSpec> {
    let atoms = catalog_atoms(max_order);
    let mut specs: Vec<GroupSpec> = atoms.iter().map(|&a| GroupSpec::atom(a)).collect();
    let nontrivial: Vec<Atom> = atoms.into_iter().filter(|a| a.order() > 1).collect();
    let mut frontier: Vec<(Vec<usize>, u128)> = (0..nontrivial.len())
        .map(|i| (vec![i], nontrivial[i].order()))
        .collect();
    for _ in 2..=max_factors {
        let mut next = Vec::new();
        for (idx, order) in &frontier {
            let last = *idx.last().expect("nonempty");
            for (j, a) in nontrivial.iter().enumerate().skip(last) {
                let o = order * a.order();
                if o > max_order {
                    continue;
                }
                let mut v = idx.clone();
                v.push(j);
                specs.push(GroupSpec {
                    atoms: v.iter().map(|&k| nontrivial[k]).collect(),
                });
                next.push((v, o));
            }
        }
        frontier = next;
    }
    specs
}

/// Atom groups up to this order stay cached while enumerating; their tables
/// total around 150 MB.
const ENUMERATE_CACHE_ORDER: u128 = 512;

/// Lazily realizes [`catalog_specs`], reusing factor groups across products.
pub fn catalog_enumerate(
    max_order: u128,
    max_factors: usize,
) -> impl Iterator<Item = (GroupSpec, Result<Arc<Group>, CatalogError>)> {
    let mut realizer = Realizer::new(max_order.min(ENUMERATE_CACHE_ORDER));
    catalog_specs(max_order, max_factors).into_iter().map(move |s| {
        let g = realizer.realize(&s);
        (s, g)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order_of(text: &str) -> usize {
        realize(&parse_group_spec(text).unwrap()).unwrap().order()
    }

    #[test]
    fn parses_examples() {
        assert_eq!(parse_group_spec("GL(2,7)").unwrap(), GroupSpec::atom(Atom::GL(2, 7)));
        assert_eq!(
            parse_group_spec("C2xC2").unwrap().atoms,
            vec![Atom::Cyclic(2), Atom::Cyclic(2)]
        );
        assert_eq!(
            parse_group_spec(" psl ( 2 , 7 ) ").unwrap(),
            GroupSpec::atom(Atom::PSL(2, 7))
        );
        assert_eq!(
            parse_group_spec("q8 x d(4)").unwrap().atoms,
            vec![Atom::Quaternion8, Atom::Dihedral(4)]
        );
        assert_eq!(parse_group_spec("S 3").unwrap(), GroupSpec::atom(Atom::Symmetric(3)));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_group_spec("GL(2,6)"),
            Err(CatalogError::InvalidParameters(_))
        ));
        assert!(matches!(
            parse_group_spec("Z5"),
            Err(CatalogError::UnknownFamily { pos: 0, .. })
        ));
        assert!(matches!(
            parse_group_spec("C2xF3"),
            Err(CatalogError::UnknownFamily { pos: 3, .. })
        ));
        assert!(matches!(
            parse_group_spec("C2 C3"),
            Err(CatalogError::Syntax { pos: 3, .. })
        ));
        assert!(matches!(parse_group_spec("GL(2,"), Err(CatalogError::Syntax { .. })));
        assert!(matches!(parse_group_spec("C"), Err(CatalogError::InvalidParameters(_))));
        assert!(matches!(
            parse_group_spec("PSL(1,5)"),
            Err(CatalogError::InvalidParameters(_))
        ));
        assert!(matches!(
            parse_group_spec("Q6"),
            Err(CatalogError::InvalidParameters(_))
        ));
        assert!(matches!(parse_group_spec(""), Err(CatalogError::Syntax { pos: 0, .. })));
    }

    #[test]
    fn display_round_trips() {
        for text in ["C2xC2", "GL(2,7)", "Q8xD4xA5", "PSL(3,4)", "S3"] {
            assert_eq!(parse_group_spec(text).unwrap().to_string(), text);
        }
    }

    #[test]
    fn small_orders() {
        assert_eq!(order_of("C1"), 1);
        assert_eq!(order_of("D1"), 2);
        assert_eq!(order_of("D2"), 4);
        assert_eq!(order_of("D5"), 10);
        assert_eq!(order_of("Q8"), 8);
        assert_eq!(order_of("A3"), 3);
        assert_eq!(order_of("A2"), 1);
        assert_eq!(order_of("C4xC6"), 24);
        for n in 1..=8u32 {
            assert_eq!(order_of(&format!("S{n}")) as u128, factorial(n));
            assert_eq!(order_of(&format!("A{n}")) as u128, (factorial(n) / 2).max(1));
        }
    }

    #[test]
    fn matrix_orders() {
        assert_eq!(order_of("GL(2,7)"), 2016);
        assert_eq!(order_of("GL(2,4)"), 180);
        assert_eq!(order_of("SL(2,9)"), 720);
        assert_eq!(order_of("PSL(2,5)"), 60);
        assert_eq!(order_of("PSL(2,7)"), 168);
        assert_eq!(order_of("GL(1,9)"), 8);
        assert_eq!(order_of("SL(1,5)"), 1);
        assert_eq!(order_of("GL(3,2)"), 168);
    }

    #[test]
    fn order_formulas_by_hand() {
        assert_eq!(gl_order(2, 7), 48 * 42);
        assert_eq!(gl_order(3, 4), 63 * 60 * 48);
        assert_eq!(psl_order(2, 7), 168);
        assert_eq!(psl_order(3, 4), 20160);
    }

    #[test]
    fn catalog_small() {
        assert_eq!(catalog_specs(1, 3), vec![GroupSpec::atom(Atom::Cyclic(1))]);
        let six: Vec<String> = catalog_specs(6, 3).iter().map(ToString::to_string).collect();
        for want in ["C1", "C2", "C3", "C4", "C5", "C6", "S3", "D3", "C2xC2", "C2xC3"] {
            assert!(six.contains(&want.to_string()), "{want} missing from {six:?}");
        }
        assert!(six.contains(&"GL(2,2)".to_string()));
        assert!(!six.contains(&"C3xC2".to_string()));
    }

    #[test]
    fn catalog_is_duplicate_free_and_normalized() {
        let specs = catalog_specs(200, 3);
        let mut seen = std::collections::HashSet::new();
        for s in &specs {
            assert!(seen.insert(s.clone()), "duplicate {s}");
            assert_eq!(s.normalized(), *s);
            assert!(s.order() <= 200);
        }
        assert!(specs.contains(&parse_group_spec("C2xC2xC2").unwrap()));
    }
}
