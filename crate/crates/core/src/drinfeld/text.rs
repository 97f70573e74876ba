use num_traits::Zero;

use super::twist::Twist;
use crate::enveloping::{Monomial, UTensor};
use crate::error::Error;
use crate::exactalg::{parse_scalar, HbarSeries};
use crate::liecore::LieAlgebra;

fn monomial_text(m: &Monomial, labels: &[String]) -> String {
    if m.is_empty() {
        "1".into()
    } else {
        m.iter().map(|&i| labels[i].as_str()).collect::<Vec<_>>().join("*")
    }
}

/// One line per term, `q * (m₁ ⊗ m₂) * ℏ^k`, sorted by `(k, m₁, m₂)`.
pub fn tensor_to_text(t: &UTensor, labels: &[String]) -> String {
    let mut rows: Vec<(usize, &Vec<Monomial>, String)> = Vec::new();
    for (key, c) in t.terms() {
        for (k, v) in c.coeffs().iter().enumerate() {
            if !v.is_zero() {
                rows.push((k, key, v.to_string()));
            }
        }
    }
    rows.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
    if rows.is_empty() {
        return "0\n".into();
    }
    let mut out = String::new();
    for (k, key, v) in rows {
        let legs: Vec<String> = key.iter().map(|m| monomial_text(m, labels)).collect();
        out.push_str(&format!("{v} * ({}) * ℏ^{k}\n", legs.join(" ⊗ ")));
    }
    out
}

pub fn twist_to_text(f: &Twist) -> String {
    tensor_to_text(f.value(), f.algebra().labels())
}

fn parse_monomial(s: &str, labels: &[String]) -> Result<Monomial, Error> {
    let s = s.trim();
    if s == "1" {
        return Ok(Vec::new());
    }
    let mut m = Vec::new();
    for part in s.split('*') {
        let part = part.trim();
        let i = labels.iter().position(|l| l == part).ok_or_else(|| Error::Parse(format!("unknown generator '{part}'")))?;
        m.push(i);
    }
    if m.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Parse(format!("monomial '{s}' is not in PBW order")));
    }
    Ok(m)
}

/// Inverse of [`twist_to_text`].
pub fn parse_twist_text(lie: &LieAlgebra, n: usize, text: &str) -> Result<Twist, Error> {
    let labels = lie.labels();
    let mut t = UTensor::zero(2, n);
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line == "0" {
            continue;
        }
        let err = |msg: &str| Error::Parse(format!("line {}: {msg}", lineno + 1));
        let open = line.find('(').ok_or_else(|| err("missing '('"))?;
        let close = line.rfind(')').ok_or_else(|| err("missing ')'"))?;
        let coeff = line[..open].trim().strip_suffix('*').ok_or_else(|| err("missing '*' after coefficient"))?;
        let c = parse_scalar(coeff.trim())?;
        let legs: Vec<&str> = line[open + 1..close].split('⊗').collect();
        if legs.len() != 2 {
            return Err(err("expected two tensor legs"));
        }
        let k: usize = line[close + 1..]
            .trim()
            .strip_prefix('*')
            .and_then(|r| r.trim().strip_prefix("ℏ^"))
            .and_then(|r| r.trim().parse().ok())
            .ok_or_else(|| err("expected '* ℏ^k'"))?;
        if k > n {
            return Err(err("ℏ power above the truncation order"));
        }
        let key = vec![parse_monomial(legs[0], labels)?, parse_monomial(legs[1], labels)?];
        t.add_term(key, &HbarSeries::monomial(c, k, n));
    }
    Twist::new(lie.clone(), t)
}
