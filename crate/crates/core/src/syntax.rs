//! Text syntax for monomials (`x^3*y*z^2`) and integer polynomials
//! (`x^2 + y^3*z - 2*z^4`), with variable names supplied by the caller.

use crate::error::{Error, Result};
use crate::poly::SparsePolynomial;
use crate::ring::Monomial;

fn err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// Parse a comma-separated list of positive integers, e.g. `15,10,6`.
pub fn parse_weights(text: &str) -> Result<Vec<u64>> {
    text.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<u64>()
                .map_err(|_| err(format!("invalid weight `{t}`")))
        })
        .collect()
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor { s: s.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        text.parse()
            .map_err(|_| err(format!("expected a number at offset {start}")))
    }

    fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        if !self.s.get(start).is_some_and(|c| c.is_ascii_alphabetic() || *c == b'_') {
            return None;
        }
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).ok()
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }
}

/// One product of factors: returns coefficient and exponent vector.
fn term(cur: &mut Cursor<'_>, names: &[String]) -> Result<(i64, Vec<u64>)> {
    let mut coeff: i64 = 1;
    let mut exps = vec![0u64; names.len()];
    loop {
        match cur.peek() {
            Some(c) if c.is_ascii_digit() => {
                let k = i64::try_from(cur.number()?).map_err(|_| err("coefficient too large"))?;
                coeff = coeff.checked_mul(k).ok_or(Error::Overflow("parsed coefficient"))?;
            }
            Some(_) => {
                let pos = cur.pos;
                let name = cur
                    .ident()
                    .ok_or_else(|| err(format!("unexpected character at offset {pos}")))?;
                let i = names
                    .iter()
                    .position(|n| n == name)
                    .ok_or_else(|| err(format!("unknown variable `{name}`")))?;
                let e = if cur.eat(b'^') { cur.number()? } else { 1 };
                exps[i] = exps[i]
                    .checked_add(e)
                    .ok_or(Error::Overflow("parsed exponent"))?;
            }
            None => return Err(err("unexpected end of input")),
        }
        if !cur.eat(b'*') {
            return Ok((coeff, exps));
        }
    }
}

/// Parse a monomial such as `x^3*y*z^2` or `1`.
pub fn parse_monomial(text: &str, names: &[String]) -> Result<Monomial> {
    let mut cur = Cursor::new(text);
    let (coeff, exps) = term(&mut cur, names)?;
    if !cur.at_end() {
        return Err(err(format!("trailing input in monomial `{text}`")));
    }
    if coeff != 1 {
        return Err(err(format!("monomial `{text}` has a coefficient")));
    }
    Ok(Monomial::new(exps))
}

/// Parse a comma-separated list of monomials, e.g. `x, y, z`.
pub fn parse_monomial_list(text: &str, names: &[String]) -> Result<Vec<Monomial>> {
    text.split(',').map(|t| parse_monomial(t, names)).collect()
}

/// Parse an integer polynomial such as `x^2 + y^3*z - 3*z^4` or `0`.
pub fn parse_polynomial(text: &str, names: &[String]) -> Result<SparsePolynomial> {
    let mut cur = Cursor::new(text);
    let mut terms = Vec::new();
    let mut sign = if cur.eat(b'-') {
        -1
    } else {
        cur.eat(b'+');
        1
    };
    loop {
        let (c, e) = term(&mut cur, names)?;
        terms.push((Monomial::new(e), sign * c));
        if cur.eat(b'+') {
            sign = 1;
        } else if cur.eat(b'-') {
            sign = -1;
        } else if cur.at_end() {
            break;
        } else {
            return Err(err(format!("unexpected input at offset {}", cur.pos)));
        }
    }
    SparsePolynomial::from_terms(names.len(), terms)
}

/// Render a polynomial in the syntax accepted by [`parse_polynomial`],
/// largest term first under `order`.
pub fn format_polynomial(
    p: &SparsePolynomial,
    names: &[String],
    order: &crate::poly::TermOrder,
) -> String {
    let mut terms: Vec<_> = p.terms().collect();
    if terms.is_empty() {
        return "0".into();
    }
    terms.sort_by(|a, b| order.cmp(b.0, a.0));
    let mut out = String::new();
    for (i, (m, c)) in terms.into_iter().enumerate() {
        let neg = c < 0;
        let abs = c.unsigned_abs();
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if m.is_one() {
            out.push_str(&abs.to_string());
        } else if abs == 1 {
            out.push_str(&m.display(names).to_string());
        } else {
            out.push_str(&format!("{abs}*{}", m.display(names)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::TermOrder;
    use crate::ring::default_variable_names;
    use proptest::prelude::*;

    fn xyz() -> Vec<String> {
        default_variable_names(3)
    }

    #[test]
    fn monomials() {
        assert_eq!(parse_monomial("x^3*y*z^2", &xyz()).unwrap(), [3, 1, 2].into());
        assert_eq!(parse_monomial(" 1 ", &xyz()).unwrap(), [0, 0, 0].into());
        assert_eq!(parse_monomial("x*x", &xyz()).unwrap(), [2, 0, 0].into());
        assert!(parse_monomial("2*x", &xyz()).is_err());
        assert!(parse_monomial("q", &xyz()).is_err());
        assert!(parse_monomial("x^", &xyz()).is_err());
        assert!(parse_monomial("x y", &xyz()).is_err());
        assert_eq!(
            parse_monomial_list("x, y,z", &xyz()).unwrap(),
            vec![[1, 0, 0].into(), [0, 1, 0].into(), [0, 0, 1].into()]
        );
    }

    #[test]
    fn polynomials() {
        let p = parse_polynomial("x^2 + y^3*z + z^4", &xyz()).unwrap();
        assert_eq!(p.len(), 3);
        let q = parse_polynomial("-2*x*y + 3 - x*y", &xyz()).unwrap();
        let expected = SparsePolynomial::from_terms(3, [([1, 1, 0].into(), -3), ([0, 0, 0].into(), 3)]).unwrap();
        assert_eq!(q, expected);
        assert!(parse_polynomial("0", &xyz()).unwrap().is_zero());
        assert!(parse_polynomial("x +", &xyz()).is_err());
        let order = TermOrder::graded_lex(vec![2, 1, 1]).unwrap();
        assert_eq!(format_polynomial(&p, &xyz(), &order), "x^2 + y^3*z + z^4");
        assert_eq!(format_polynomial(&q, &xyz(), &order), "-3*x*y + 3");
    }

    #[test]
    fn weights() {
        assert_eq!(parse_weights("15,10, 6").unwrap(), vec![15, 10, 6]);
        assert!(parse_weights("1,,2").is_err());
        assert!(parse_weights("-1").is_err());
    }

    proptest! {
        #[test]
        fn polynomial_text_round_trip(ts in prop::collection::vec((-9i64..=9, prop::collection::vec(0u64..5, 3)), 0..6)) {
            let p = SparsePolynomial::from_terms(3, ts.into_iter().map(|(c, e)| (Monomial::new(e), c))).unwrap();
            let order = TermOrder::standard(3);
            let text = format_polynomial(&p, &xyz(), &order);
            prop_assert_eq!(parse_polynomial(&text, &xyz()).unwrap(), p);
        }
    }
}
