//! Prime and prime-power fields GF(p^k).
//!
//! Elements are packed as integers `c_0 + c_1 p + ... + c_{k-1} p^{k-1}` where
//! `c_i` is the coefficient of `x^i` in the polynomial representative. The
//! packed integer doubles as the canonical encoding of an element, so "smallest
//! encoding" and "smallest packed value" coincide.

use std::fmt;

use crate::error::AlgebraError;

/// Largest supported field size.
pub const MAX_FIELD_SIZE: u64 = 1 << 16;

/// A finite field element in packed form. Only meaningful together with the
/// [`FiniteField`] that produced it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }
}

pub struct FiniteField {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus, low degree first, length k + 1.
    modulus: Vec<u32>,
    primitive: FieldElement,
    exp: Vec<u32>,
    log: Vec<u32>,
    /// Full addition table when q is small enough.
    add_table: Option<Vec<u16>>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteField")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for FiniteField {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` into `(p, k)` with `q = p^k`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while !q.is_multiple_of(p) {
        p += 1;
    }
    if !is_prime(p) {
        return None;
    }
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p as u32, k))
}

// Dense polynomials over GF(p), low degree first, no trailing zeros.
fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = mod_inv(m[dm], p);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = (r[r.len() - 1] as u64 * lead_inv as u64 % p as u64) as u32;
        for (i, &mc) in m.iter().enumerate() {
            let sub = (c as u64 * mc as u64 % p as u64) as u32;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        poly_trim(&mut r);
    }
    r
}

fn mod_inv(a: u32, p: u32) -> u32 {
    mod_pow(a, p - 2, p)
}

fn mod_pow(mut b: u32, mut e: u32, p: u32) -> u32 {
    let mut r = 1u64 % p as u64;
    let mut b64 = b as u64 % p as u64;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b64 % p as u64;
        }
        b64 = b64 * b64 % p as u64;
        e >>= 1;
    }
    b = r as u32;
    b
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
fn is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut divisor = Vec::with_capacity(d + 1);
            let mut v = low;
            for _ in 0..d {
                divisor.push((v % p as u64) as u32);
                v /= p as u64;
            }
            divisor.push(1);
            if poly_rem(m, &divisor, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl FiniteField {
    /// Builds GF(p^k) with the lexicographically smallest monic irreducible
    /// modulus (coefficients compared constant term first).
    pub fn new(p: u32, k: u32) -> Result<FiniteField, AlgebraError> {
        if !is_prime(p as u64) {
            return Err(AlgebraError::NotPrime(p as u64));
        }
        if k < 1 {
            return Err(AlgebraError::BadDegree(k));
        }
        let q = (p as u64)
            .checked_pow(k)
            .filter(|&q| q <= MAX_FIELD_SIZE)
            .ok_or(AlgebraError::FieldTooLarge { p, k })?;
        let modulus = if k == 1 { vec![0, 1] } else { smallest_irreducible(p, k) };
        let mut field = FiniteField {
            p,
            k,
            q: q as u32,
            modulus,
            primitive: FieldElement::ONE,
            exp: Vec::new(),
            log: Vec::new(),
            add_table: None,
        };
        field.primitive = field.search_primitive();
        field.build_tables();
        Ok(field)
    }

    /// Field of size `q`, which must be a prime power.
    pub fn with_order(q: u64) -> Result<FiniteField, AlgebraError> {
        let (p, k) = prime_power(q).ok_or(AlgebraError::NotPrimePower(q))?;
        FiniteField::new(p, k)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        let mut v = a.0;
        (0..self.k)
            .map(|_| {
                let c = v % self.p;
                v /= self.p;
                c
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> FieldElement {
        let poly = poly_rem(coeffs, &self.modulus_for_reduction(), self.p);
        let mut v = 0u32;
        for &c in poly.iter().rev() {
            v = v * self.p + c % self.p;
        }
        FieldElement(v)
    }

    fn modulus_for_reduction(&self) -> Vec<u32> {
        if self.k == 1 {
            // x - 0 placeholder is not used for reduction; reduce constants mod p.
            vec![0, 1]
        } else {
            self.modulus.clone()
        }
    }

    /// Schoolbook polynomial product reduced by the modulus. Independent of the
    /// log tables; used to build them and as a cross-check.
    pub fn mul_reference(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.k == 1 {
            return FieldElement((a.0 as u64 * b.0 as u64 % self.p as u64) as u32);
        }
        let ca = self.coeffs(a);
        let cb = self.coeffs(b);
        let mut prod = vec![0u32; 2 * self.k as usize - 1];
        for (i, &x) in ca.iter().enumerate() {
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % self.p as u64) as u32;
            }
        }
        let r = poly_rem(&prod, &self.modulus, self.p);
        let mut v = 0u32;
        for &c in r.iter().rev() {
            v = v * self.p + c;
        }
        FieldElement(v)
    }

    fn search_primitive(&self) -> FieldElement {
        if self.q == 2 {
            return FieldElement::ONE;
        }
        let target = self.q - 1;
        for cand in 1..self.q {
            let g = FieldElement(cand);
            let mut x = g;
            let mut order = 1;
            while x != FieldElement::ONE {
                x = self.mul_reference(x, g);
                order += 1;
            }
            if order == target {
                return g;
            }
        }
        unreachable!("multiplicative group of a finite field is cyclic")
    }

    fn build_tables(&mut self) {
        let n = (self.q - 1) as usize;
        let mut exp = vec![0u32; n];
        let mut log = vec![0u32; self.q as usize];
        let mut x = FieldElement::ONE;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = x.0;
            log[x.0 as usize] = i as u32;
            x = self.mul_reference(x, self.primitive);
        }
        self.exp = exp;
        self.log = log;
        if self.k > 1 && self.q <= 256 {
            let q = self.q as usize;
            let mut table = vec![0u16; q * q];
            for a in 0..q {
                for b in 0..q {
                    table[a * q + b] = self.add_digits(a as u32, b as u32) as u16;
                }
            }
            self.add_table = Some(table);
        }
    }

    fn add_digits(&self, mut a: u32, mut b: u32) -> u32 {
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.k {
            let d = (a % self.p + b % self.p) % self.p;
            out += d * place;
            place *= self.p;
            a /= self.p;
            b /= self.p;
        }
        out
    }

    /// The smallest element whose multiplicative order is `q - 1`.
    pub fn primitive_element(&self) -> FieldElement {
        self.primitive
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.k == 1 {
            let s = a.0 + b.0;
            return FieldElement(if s >= self.p { s - self.p } else { s });
        }
        match &self.add_table {
            Some(t) => FieldElement(t[(a.0 * self.q + b.0) as usize] as u32),
            None => FieldElement(self.add_digits(a.0, b.0)),
        }
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.k == 1 {
            return FieldElement(if a.0 == 0 { 0 } else { self.p - a.0 });
        }
        let mut v = a.0;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.k {
            let d = v % self.p;
            out += ((self.p - d) % self.p) * place;
            place *= self.p;
            v /= self.p;
        }
        FieldElement(out)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let n = self.q - 1;
        let s = self.log[a.0 as usize] + self.log[b.0 as usize];
        FieldElement(self.exp[(if s >= n { s - n } else { s }) as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, AlgebraError> {
        if a.0 == 0 {
            return Err(AlgebraError::DivisionByZero);
        }
        let n = self.q - 1;
        Ok(FieldElement(self.exp[((n - self.log[a.0 as usize]) % n) as usize]))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.0 == 0 {
            return FieldElement::ZERO;
        }
        let n = (self.q - 1) as u64;
        let l = self.log[a.0 as usize] as u64 * (e % n) % n;
        FieldElement(self.exp[l as usize])
    }

    /// `primitive^t`.
    pub fn primitive_power(&self, t: u64) -> FieldElement {
        FieldElement(self.exp[(t % (self.q as u64 - 1)) as usize])
    }

    /// Bytes per element in canonical encodings.
    pub fn encoding_width(&self) -> usize {
        if self.q <= 256 {
            1
        } else {
            2
        }
    }
}

fn smallest_irreducible(p: u32, k: u32) -> Vec<u32> {
    let count = (p as u64).pow(k);
    for idx in 0..count {
        // The constant term is the most significant digit of the ordering.
        let mut coeffs = vec![0u32; k as usize + 1];
        let mut v = idx;
        for i in (0..k as usize).rev() {
            coeffs[i] = (v % p as u64) as u32;
            v /= p as u64;
        }
        coeffs[k as usize] = 1;
        if coeffs[0] != 0 && is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf7_arithmetic() {
        let f = FiniteField::new(7, 1).unwrap();
        assert_eq!(f.order(), 7);
        assert_eq!(f.mul(FieldElement(3), FieldElement(5)), FieldElement(1));
        assert_eq!(f.primitive_element(), FieldElement(3));
    }

    #[test]
    fn gf4_modulus_and_product() {
        let f = FiniteField::new(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        // x * (x + 1) = x^2 + x = 1
        let x = f.from_coeffs(&[0, 1]);
        let x1 = f.from_coeffs(&[1, 1]);
        assert_eq!(f.mul(x, x1), FieldElement::ONE);
    }

    #[test]
    fn unique_irreducible_quadratic_over_gf2() {
        // Brute force: x^2 + bx + c irreducible iff it has no root in GF(2).
        let irreducible: Vec<(u32, u32)> = (0..2)
            .flat_map(|c| (0..2).map(move |b| (c, b)))
            .filter(|&(c, b)| (0..2).all(|x| (x * x + b * x + c) % 2 != 0))
            .collect();
        assert_eq!(irreducible, vec![(1, 1)]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(FiniteField::new(4, 1), Err(AlgebraError::NotPrime(4))));
        assert!(matches!(FiniteField::new(3, 0), Err(AlgebraError::BadDegree(0))));
        assert!(FiniteField::new(2, 17).is_err());
    }

    #[test]
    fn primitive_elements() {
        assert_eq!(FiniteField::new(2, 1).unwrap().primitive_element(), FieldElement(1));
        assert_eq!(FiniteField::new(5, 1).unwrap().primitive_element(), FieldElement(2));
        assert_eq!(FiniteField::new(7, 1).unwrap().primitive_element(), FieldElement(3));
    }

    #[test]
    fn frobenius_fixes_every_element() {
        for &(p, k) in &[(2, 1), (2, 2), (2, 3), (3, 2), (5, 2), (2, 8), (7, 2), (13, 1)] {
            let f = FiniteField::new(p, k).unwrap();
            assert!(f.order() <= 256);
            for a in f.elements() {
                let mut x = FieldElement::ONE;
                for _ in 0..f.order() {
                    x = f.mul_reference(x, a);
                }
                assert_eq!(x, a, "a^q = a fails in GF({p}^{k})");
            }
        }
    }

    #[test]
    fn table_and_reference_products_agree() {
        for &(p, k) in &[(2, 4), (3, 3), (5, 2), (11, 1)] {
            let f = FiniteField::new(p, k).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul_reference(a, b));
                }
            }
        }
    }

    #[test]
    fn field_axioms_small() {
        let f = FiniteField::new(3, 2).unwrap();
        for a in f.elements() {
            assert_eq!(f.add(a, f.neg(a)), FieldElement::ZERO);
            if a != FieldElement::ZERO {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
            }
            for b in f.elements() {
                for c in f.elements() {
                    let lhs = f.mul(a, f.add(b, c));
                    let rhs = f.add(f.mul(a, b), f.mul(a, c));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(49), Some((7, 2)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(1024), Some((2, 10)));
    }
}
