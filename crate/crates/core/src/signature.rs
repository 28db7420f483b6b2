//! Star signatures: the multiset of looped-star sizes of a Property R graph.
//!
//! Canonical text lists sizes ascending with caret multiplicities, e.g.
//! `S0^4 S1`. The parser also accepts the factored product notation, where
//! juxtaposition is disjoint union and `(…)^n` repeats a product:
//! `(S0 S2)^2 = S0^2 S2^2`. `S-1` denotes an isolated point.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SignatureError {
    #[error("empty signature")]
    Empty,
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("negative exponent at {pos}")]
    NegativeExponent { pos: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StarSignature {
    /// Star sizes, ascending.
    sizes: Vec<i64>,
}

impl StarSignature {
    pub fn new(mut sizes: Vec<i64>) -> StarSignature {
        sizes.sort_unstable();
        StarSignature { sizes }
    }

    pub fn sizes(&self) -> &[i64] {
        &self.sizes
    }

    pub fn star_count(&self) -> usize {
        self.sizes.len()
    }

    /// Vertices in a graph with this signature: each star has `j + 1`.
    pub fn vertex_count(&self) -> i64 {
        self.sizes.iter().map(|j| j + 1).sum()
    }

    pub fn has_isolated_points(&self) -> bool {
        self.sizes.iter().any(|&j| j < 0)
    }

    pub fn multiplicities(&self) -> BTreeMap<i64, usize> {
        let mut m = BTreeMap::new();
        for &j in &self.sizes {
            *m.entry(j).or_insert(0) += 1;
        }
        m
    }
}

impl fmt::Display for StarSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (j, m)) in self.multiplicities().into_iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "S{j}")?;
            if m > 1 {
                write!(f, "^{m}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for StarSignature {
    type Err = SignatureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_signature(s)
    }
}

pub fn signature_to_string(s: &StarSignature) -> String {
    s.to_string()
}

pub fn parse_signature(text: &str) -> Result<StarSignature, SignatureError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    if p.at_end() {
        return Err(SignatureError::Empty);
    }
    let sizes = p.product()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error("unexpected character"));
    }
    if sizes.is_empty() {
        return Err(SignatureError::Empty);
    }
    Ok(StarSignature::new(sizes))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn error(&self, msg: &str) -> SignatureError {
        SignatureError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn product(&mut self) -> Result<Vec<i64>, SignatureError> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'S') | Some(b's') | Some(b'(') => out.extend(self.factor()?),
                _ => return Ok(out),
            }
        }
    }

    fn factor(&mut self) -> Result<Vec<i64>, SignatureError> {
        let base = self.primary()?;
        self.skip_ws();
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let at = self.pos;
        let exp = self.integer()?;
        if exp < 0 {
            return Err(SignatureError::NegativeExponent { pos: at });
        }
        Ok(std::iter::repeat_n(base, exp as usize).flatten().collect())
    }

    fn primary(&mut self) -> Result<Vec<i64>, SignatureError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.product()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'S') | Some(b's') => {
                self.pos += 1;
                if self.peek() == Some(b'_') {
                    self.pos += 1;
                }
                let braced = self.peek() == Some(b'{');
                if braced {
                    self.pos += 1;
                }
                let at = self.pos;
                let j = self.integer()?;
                if braced {
                    if self.peek() != Some(b'}') {
                        return Err(self.error("expected '}'"));
                    }
                    self.pos += 1;
                }
                if j < -1 {
                    return Err(SignatureError::Syntax {
                        pos: at,
                        msg: format!("star size {j} below -1"),
                    });
                }
                Ok(vec![j])
            }
            _ => Err(self.error("expected 'S' or '('")),
        }
    }

    fn integer(&mut self) -> Result<i64, SignatureError> {
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        let digits = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits {
            self.pos = start;
            return Err(self.error("expected integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii")
            .parse()
            .map_err(|_| SignatureError::Syntax {
                pos: start,
                msg: "integer out of range".into(),
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sig(v: &[i64]) -> StarSignature {
        StarSignature::new(v.to_vec())
    }

    #[test]
    fn factored_forms() {
        assert_eq!(parse_signature("(S0 S2)^2").unwrap(), sig(&[0, 0, 2, 2]));
        assert_eq!(parse_signature("S0^2 S2^2").unwrap(), sig(&[0, 0, 2, 2]));
        assert_eq!(
            parse_signature("(S0 S1 S2)^3").unwrap(),
            sig(&[0, 0, 0, 1, 1, 1, 2, 2, 2])
        );
        assert_eq!(parse_signature("S0 S2 (S1)^3").unwrap(), sig(&[0, 1, 1, 1, 2]));
        assert_eq!(parse_signature("S_{1}").unwrap(), sig(&[1]));
        assert_eq!(parse_signature("S-1 S3").unwrap(), sig(&[-1, 3]));
    }

    #[test]
    fn canonical_printing() {
        assert_eq!(sig(&[1]).to_string(), "S1");
        assert_eq!(sig(&[1, 0, 0, 0, 0]).to_string(), "S0^4 S1");
        assert_eq!(sig(&[2, 1, 0, 1, 1]).to_string(), "S0 S1^3 S2");
    }

    #[test]
    fn errors() {
        assert_eq!(parse_signature("   "), Err(SignatureError::Empty));
        assert_eq!(
            parse_signature("S0^-2"),
            Err(SignatureError::NegativeExponent { pos: 3 })
        );
        assert!(matches!(
            parse_signature("S0 T1"),
            Err(SignatureError::Syntax { pos: 3, .. })
        ));
        assert!(matches!(parse_signature("(S0"), Err(SignatureError::Syntax { .. })));
        assert!(matches!(parse_signature("S-2"), Err(SignatureError::Syntax { .. })));
        assert_eq!(parse_signature("(S1)^0"), Err(SignatureError::Empty));
    }

    #[test]
    fn accounting() {
        let s = sig(&[0, 0, 2, 2]);
        assert_eq!(s.vertex_count(), 8);
        assert_eq!(s.star_count(), 4);
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(sizes in proptest::collection::vec(-1i64..12, 1..20)) {
            let s = StarSignature::new(sizes);
            let text = s.to_string();
            prop_assert_eq!(parse_signature(&text).unwrap(), s.clone());
            prop_assert_eq!(parse_signature(&text).unwrap().to_string(), text);
        }

        #[test]
        fn factored_equals_expanded(sizes in proptest::collection::vec(0i64..6, 1..6), k in 1usize..4) {
            let inner: Vec<String> = sizes.iter().map(|j| format!("S{j}")).collect();
            let factored = format!("({})^{k}", inner.join(" "));
            let expanded: Vec<i64> = std::iter::repeat_n(sizes.clone(), k).flatten().collect();
            prop_assert_eq!(parse_signature(&factored).unwrap(), StarSignature::new(expanded));
        }
    }
}
