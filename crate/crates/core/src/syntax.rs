//! Text syntax for multivectors: `3/2*u1^u3 - u2^u4`.
//!
//! Terms are `[coeff[*]]label^label^…`, joined by `+`/`-`. A bare coefficient
//! is a degree-0 term. Covector labels may carry a trailing `*` (`Z*`).

use num_traits::{One, Signed, Zero};

use crate::algebra::StratifiedLieAlgebra;
use crate::error::ParseError;
use crate::exterior::{Kind, Multi};
use crate::rational::{format_rational, parse_rational, Rational};

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if !f(c) {
                break;
            }
            self.pos += c.len_utf8();
        }
        &self.src[start..self.pos]
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.pos, msg)
    }
}

struct RawTerm {
    coeff: Rational,
    labels: Vec<(usize, String)>,
}

fn parse_raw(src: &str, allow_dual_marker: bool) -> Result<Vec<RawTerm>, ParseError> {
    let mut cur = Cursor { src, pos: 0 };
    let mut terms = Vec::new();
    let mut first = true;
    loop {
        cur.skip_ws();
        if cur.peek().is_none() {
            if first {
                return Err(cur.err("empty expression"));
            }
            break;
        }
        let negative = if cur.eat('-') {
            true
        } else if cur.eat('+') || first {
            false
        } else {
            return Err(cur.err("expected `+` or `-` between terms"));
        };
        first = false;
        cur.skip_ws();

        let mut coeff = Rational::one();
        let mut has_coeff = false;
        if cur.peek().is_some_and(|c| c.is_ascii_digit()) {
            let start = cur.pos;
            cur.take_while(|c| c.is_ascii_digit());
            if cur.eat('/') {
                cur.skip_ws();
                if !cur.peek().is_some_and(|c| c.is_ascii_digit()) {
                    return Err(cur.err("expected denominator after `/`"));
                }
                cur.take_while(|c| c.is_ascii_digit());
            }
            let text: String = src[start..cur.pos]
                .chars()
                .filter(|c| !c.is_whitespace())
                .collect();
            coeff = parse_rational(&text).map_err(|e| ParseError::new(start, e.message))?;
            has_coeff = true;
        }

        cur.skip_ws();
        let mut labels = Vec::new();
        let explicit_mul = has_coeff && cur.eat('*');
        cur.skip_ws();
        let starts_label = cur.peek().is_some_and(|c| c.is_alphabetic() || c == '_');
        if explicit_mul && !starts_label {
            return Err(cur.err("expected basis label after `*`"));
        }
        if !has_coeff && !starts_label {
            return Err(cur.err("expected coefficient or basis label"));
        }
        if starts_label {
            loop {
                cur.skip_ws();
                let start = cur.pos;
                let name = cur.take_while(|c| c.is_alphanumeric() || c == '_');
                if name.is_empty() {
                    return Err(cur.err("expected basis label"));
                }
                if allow_dual_marker && cur.peek() == Some('*') {
                    cur.pos += 1;
                }
                labels.push((start, name.to_string()));
                if !cur.eat('^') {
                    break;
                }
            }
        }
        if negative {
            coeff = -coeff;
        }
        terms.push(RawTerm { coeff, labels });
    }
    Ok(terms)
}

/// Parses an expression against the algebra's basis labels.
///
/// The degree is inferred from the terms. An expression whose terms all have
/// zero coefficients adopts `expected_degree` when given.
pub fn parse_multi<K: Kind>(
    alg: &StratifiedLieAlgebra,
    src: &str,
    expected_degree: Option<usize>,
) -> Result<Multi<K>, ParseError> {
    let raw = parse_raw(src, K::COVARIANT)?;
    let all_zero = raw.iter().all(|t| t.coeff.is_zero());
    let degree = if all_zero {
        expected_degree.unwrap_or(raw[0].labels.len())
    } else {
        raw.iter()
            .find(|t| !t.coeff.is_zero())
            .map(|t| t.labels.len())
            .unwrap_or(0)
    };
    let mut out = Multi::<K>::zero(alg.total_dim(), degree);
    for t in raw {
        if t.coeff.is_zero() {
            continue;
        }
        if t.labels.len() != degree {
            let at = t.labels.first().map(|l| l.0).unwrap_or(0);
            return Err(ParseError::new(
                at,
                format!(
                    "term has degree {} but expression has degree {}",
                    t.labels.len(),
                    degree
                ),
            ));
        }
        let mut indices = Vec::with_capacity(t.labels.len());
        for (at, name) in &t.labels {
            let idx = alg
                .index_of(name)
                .ok_or_else(|| ParseError::new(*at, format!("unknown basis label `{name}`")))?;
            indices.push(idx);
        }
        let blade = Multi::<K>::from_indices(alg.total_dim(), &indices).scaled(&t.coeff);
        out = out.add(&blade);
    }
    if let Some(k) = expected_degree {
        if k != degree {
            return Err(ParseError::new(
                0,
                format!("expression has degree {degree} but --degree {k} was given"),
            ));
        }
    }
    Ok(out)
}

/// Joins `(labels, coefficient)` terms as `c*a^b - d^e`; zero renders as `0`.
pub fn format_terms(terms: impl IntoIterator<Item = (Vec<String>, Rational)>) -> String {
    let mut out = String::new();
    for (labels, c) in terms {
        if c.is_zero() {
            continue;
        }
        let negative = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let blade = labels.join("^");
        if blade.is_empty() {
            out.push_str(&format_rational(&mag));
        } else if mag.is_one() {
            out.push_str(&blade);
        } else {
            out.push_str(&format_rational(&mag));
            out.push('*');
            out.push_str(&blade);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Text form of a multivector or multicovector. Covector labels get a `*` suffix.
pub fn format_multi<K: Kind>(alg: &StratifiedLieAlgebra, x: &Multi<K>) -> String {
    format_terms(x.terms().map(|(blade, c)| {
        let labels = blade
            .iter()
            .map(|&i| {
                if K::COVARIANT {
                    format!("{}*", alg.label(i))
                } else {
                    alg.label(i).to_string()
                }
            })
            .collect();
        (labels, c.clone())
    }))
}
