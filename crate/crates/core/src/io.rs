//! JSON algebra documents and the small expression language used on the
//! command line.
//!
//! Polynomials: sums of products of rationals and variables, where a variable
//! is `x<k>` (the `k`-th coordinate, 1-based) or a basis label, optionally
//! raised to a power: `x1*x2 - 1/2*x3`, `3*e1^2`.
//!
//! Bivectors: sums of `[c*] a^b` with `a, b` basis labels or `e<k>`:
//! `e1^e2 - 1/2*e2^e3`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exactalg::{parse_scalar, AltForm, Bivector, Poly, Scalar};
use crate::liecore::{LieAlgebra, SymplecticLieAlgebra};

/// One bracket `[e_i, e_j] = Σ coeffs[label] · e_label`, with 1-based `i < j`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BracketSpec {
    pub i: usize,
    pub j: usize,
    pub coeffs: BTreeMap<String, String>,
}

/// Input document describing a Lie algebra and optionally a 2-form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub name: String,
    pub dim: usize,
    pub basis: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<BracketSpec>,
    #[serde(default)]
    pub omega: Option<Vec<Vec<String>>>,
}

/// Parses and validates an algebra document.
pub fn parse_spec(text: &str) -> Result<AlgebraSpec, Error> {
    let spec: AlgebraSpec = serde_json::from_str(text).map_err(|e| Error::Parse(format!("line {} column {}: {e}", e.line(), e.column())))?;
    spec.validate()?;
    Ok(spec)
}

impl AlgebraSpec {
    fn validate(&self) -> Result<(), Error> {
        if self.basis.len() != self.dim {
            return Err(Error::Invalid(format!("basis has {} labels but dim is {}", self.basis.len(), self.dim)));
        }
        for (a, l) in self.basis.iter().enumerate() {
            if self.basis[..a].contains(l) {
                return Err(Error::Invalid(format!("basis[{a}]: duplicate label {l:?}")));
            }
        }
        for (b, br) in self.brackets.iter().enumerate() {
            if br.i == 0 || br.j == 0 || br.i > self.dim || br.j > self.dim {
                return Err(Error::Invalid(format!("brackets[{b}]: index out of range 1..={}", self.dim)));
            }
            if br.i >= br.j {
                return Err(Error::Invalid(format!("brackets[{b}]: need i < j, got i = {}, j = {}", br.i, br.j)));
            }
            for (label, c) in &br.coeffs {
                if !self.basis.contains(label) {
                    return Err(Error::Invalid(format!("brackets[{b}].coeffs: unknown label {label:?}")));
                }
                parse_scalar(c).map_err(|e| Error::Parse(format!("brackets[{b}].coeffs.{label}: {e}")))?;
            }
        }
        if let Some(m) = &self.omega {
            if m.len() != self.dim || m.iter().any(|row| row.len() != self.dim) {
                return Err(Error::Invalid(format!("omega must be a {0}×{0} matrix", self.dim)));
            }
            let w = self.omega_values()?;
            for i in 0..self.dim {
                for j in 0..self.dim {
                    if w[i][j] != -w[j][i].clone() {
                        return Err(Error::Invalid(format!("omega[{i}][{j}]: matrix is not antisymmetric")));
                    }
                }
            }
        }
        Ok(())
    }

    fn omega_values(&self) -> Result<Vec<Vec<Scalar>>, Error> {
        let m = self.omega.as_ref().ok_or_else(|| Error::Invalid("document has no omega".into()))?;
        m.iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, c)| parse_scalar(c).map_err(|e| Error::Parse(format!("omega[{i}][{j}]: {e}"))))
                    .collect()
            })
            .collect()
    }

    /// The Lie algebra, with the Jacobi identity checked.
    pub fn lie_algebra(&self) -> Result<LieAlgebra, Error> {
        self.validate()?;
        let brackets = self.brackets.iter().map(|br| {
            let mut v = vec![Scalar::zero(); self.dim];
            for (label, c) in &br.coeffs {
                let k = self.basis.iter().position(|l| l == label).expect("validated label");
                v[k] = parse_scalar(c).expect("validated rational");
            }
            (br.i - 1, br.j - 1, v)
        });
        LieAlgebra::new(self.name.clone(), self.basis.clone(), brackets.collect::<Vec<_>>())
    }

    pub fn has_omega(&self) -> bool {
        self.omega.is_some()
    }

    /// `ω` as a 2-form.
    pub fn omega(&self) -> Result<AltForm, Error> {
        Ok(AltForm::from_matrix(&self.omega_values()?))
    }

    pub fn symplectic(&self) -> Result<SymplecticLieAlgebra, Error> {
        SymplecticLieAlgebra::new(self.lie_algebra()?, self.omega()?)
    }

    /// The document describing `sg`.
    pub fn from_symplectic(sg: &SymplecticLieAlgebra) -> Self {
        let mut spec = Self::from_algebra(sg.algebra());
        spec.omega = Some(sg.omega_matrix().iter().map(|row| row.iter().map(ToString::to_string).collect()).collect());
        spec
    }

    pub fn from_algebra(g: &LieAlgebra) -> Self {
        let n = g.dim();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let coeffs: BTreeMap<String, String> = g
                    .bracket(i, j)
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (g.labels()[k].clone(), c.to_string()))
                    .collect();
                if !coeffs.is_empty() {
                    brackets.push(BracketSpec { i: i + 1, j: j + 1, coeffs });
                }
            }
        }
        AlgebraSpec { name: g.name().to_string(), dim: n, basis: g.labels().to_vec(), brackets, omega: None }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(Scalar),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
}

fn tokenize(text: &str) -> Result<Vec<Token>, Error> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '-' => {
                out.push(Token::Minus);
                i += 1;
            }
            '*' => {
                out.push(Token::Star);
                i += 1;
            }
            '^' | '∧' => {
                out.push(Token::Caret);
                i += 1;
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/') {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Token::Num(parse_scalar(&s).map_err(|e| Error::Parse(format!("at column {}: {e}", start + 1)))?));
            }
            a if a.is_alphabetic() || a == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?} at column {}", i + 1))),
        }
    }
    Ok(out)
}

fn resolve(name: &str, labels: &[String], prefix: char) -> Result<usize, Error> {
    if let Some(k) = labels.iter().position(|l| l == name) {
        return Ok(k);
    }
    if let Some(rest) = name.strip_prefix(prefix) {
        if let Ok(k) = rest.parse::<usize>() {
            if (1..=labels.len()).contains(&k) {
                return Ok(k - 1);
            }
        }
    }
    Err(Error::Parse(format!("unknown generator {name:?}")))
}

/// Splits a token stream into signed terms.
fn signed_terms(tokens: Vec<Token>) -> Result<Vec<(Scalar, Vec<Token>)>, Error> {
    let mut out = Vec::new();
    let mut sign = Scalar::one();
    let mut cur = Vec::new();
    let mut expect_term = true;
    for t in tokens {
        match t {
            Token::Plus | Token::Minus if cur.is_empty() && expect_term => {
                if t == Token::Minus {
                    sign = -sign;
                }
            }
            Token::Plus | Token::Minus => {
                out.push((sign, std::mem::take(&mut cur)));
                sign = if t == Token::Minus { -Scalar::one() } else { Scalar::one() };
                expect_term = true;
            }
            other => {
                cur.push(other);
                expect_term = false;
            }
        }
    }
    if cur.is_empty() {
        return Err(Error::Parse("expression ends without a term".into()));
    }
    out.push((sign, cur));
    Ok(out)
}

/// Parses a polynomial in `n = labels.len()` variables.
pub fn parse_poly(text: &str, labels: &[String]) -> Result<Poly, Error> {
    let n = labels.len();
    let mut out = Poly::zero(n);
    for (sign, term) in signed_terms(tokenize(text)?)? {
        let mut coeff = sign;
        let mut exp = vec![0u32; n];
        for factor in term.split(|t| *t == Token::Star) {
            match factor {
                [Token::Num(c)] => coeff *= c,
                [Token::Ident(v)] => exp[resolve(v, labels, 'x')?] += 1,
                [Token::Ident(v), Token::Caret, Token::Num(p)] if p.is_integer() && p >= &Scalar::zero() => {
                    let k: u32 = p.to_integer().try_into().map_err(|_| Error::Parse("exponent too large".into()))?;
                    exp[resolve(v, labels, 'x')?] += k;
                }
                _ => return Err(Error::Parse(format!("malformed factor in {text:?}"))),
            }
        }
        out.add_term(exp, &coeff);
    }
    Ok(out)
}

/// Parses a bivector on a space with the given basis labels.
pub fn parse_bivector(text: &str, labels: &[String]) -> Result<Bivector, Error> {
    let n = labels.len();
    let mut out = AltForm::zero(n, 2);
    for (sign, term) in signed_terms(tokenize(text)?)? {
        let (coeff, wedge) = match term.as_slice() {
            [Token::Num(c), Token::Star, rest @ ..] => (&sign * c, rest),
            rest => (sign.clone(), rest),
        };
        match wedge {
            [Token::Ident(a), Token::Caret, Token::Ident(b)] => {
                let (i, j) = (resolve(a, labels, 'e')?, resolve(b, labels, 'e')?);
                if i == j {
                    return Err(Error::Parse(format!("{a}^{b} vanishes identically")));
                }
                out.add_at(&[i, j], &coeff);
            }
            _ => return Err(Error::Parse(format!("expected terms like c*e1^e2 in {text:?}"))),
        }
    }
    Ok(out)
}

/// Canonical text for a bivector: `c * a^b` per nonzero `i < j`.
pub fn bivector_to_text(b: &Bivector, labels: &[String]) -> String {
    b.display_with(labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::q;

    fn labels(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("e{i}")).collect()
    }

    #[test]
    fn polynomial_expressions() {
        let p = parse_poly("x1*x2 - 1/2*x3", &labels(3)).unwrap();
        let mut expect = Poly::term(3, vec![1, 1, 0], q(1, 1));
        expect.add_term(vec![0, 0, 1], &q(-1, 2));
        assert_eq!(p, expect);
        assert_eq!(parse_poly("-e1^2 + 3", &labels(2)).unwrap(), {
            let mut e = Poly::term(2, vec![2, 0], q(-1, 1));
            e.add_term(vec![0, 0], &q(3, 1));
            e
        });
        assert!(parse_poly("x4", &labels(3)).is_err());
        assert!(parse_poly("x1 +", &labels(3)).is_err());
        assert!(parse_poly("0.5*x1", &labels(3)).is_err());
    }

    #[test]
    fn bivector_expressions() {
        let b = parse_bivector("e1^e2 - 1/2*e3^e2", &labels(3)).unwrap();
        assert_eq!(b.get(&[0, 1]), q(1, 1));
        assert_eq!(b.get(&[1, 2]), q(1, 2));
        assert!(parse_bivector("e1^e1", &labels(3)).is_err());
    }

    #[test]
    fn document_round_trip() {
        let sg = crate::catalog::n2();
        let spec = AlgebraSpec::from_symplectic(&sg);
        let text = serde_json::to_string(&spec).unwrap();
        let back = parse_spec(&text).unwrap();
        assert_eq!(back.symplectic().unwrap(), sg);
    }

    #[test]
    fn document_errors_name_their_location() {
        let bad = r#"{"name":"x","dim":2,"basis":["a","b"],"brackets":[{"i":2,"j":1,"coeffs":{"a":"1"}}]}"#;
        let e = parse_spec(bad).unwrap_err().to_string();
        assert!(e.contains("brackets[0]"), "{e}");
        let bad = r#"{"name":"x","dim":2,"basis":["a","b"],"omega":[["0","1"],["1","0"]]}"#;
        assert!(parse_spec(bad).unwrap_err().to_string().contains("antisymmetric"));
        let bad = r#"{"name":"x","dim":2,"basis":["a","b"],"brackets":[{"i":1,"j":2,"coeffs":{"a":"1/0"}}]}"#;
        assert!(matches!(parse_spec(bad), Err(Error::Parse(_))));
    }
}
