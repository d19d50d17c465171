//! Expression grammar for elements and tensors over a quiver.
//!
//! ```text
//! sum     ::= ['+'|'-'] term (('+'|'-') term)*
//! term    ::= product (('⊗' | '(x)') product)*
//! product ::= factor (['*'] factor)*
//! factor  ::= rational | 'e(' vertex ')' | arrow | 'D(' arrow ')'
//!           | 'inv(' arrow ')' | 'd(' arrow ')' | '(' sum ')'
//! ```
//!
//! A rational factor `c` stands for `c` times the unit. A `*` directly after an
//! identifier belongs to the identifier (as in `a*`) unless it is immediately
//! followed by the start of another factor, so `a*b` is a product while `a* b`
//! is `a*` times `b`. Printed output always spaces its products.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

use super::element::{fmt_q, Elem, Q};
use super::quiver::Quiver;
use super::tensor::Tensor;
use super::word::{Kind, Word};

struct Parser<'a> {
    q: &'a Quiver,
    s: Vec<char>,
    pos: usize,
}

fn is_ident(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        let mut line = 1;
        let mut col = 1;
        for &c in &self.s[..self.pos.min(self.s.len())] {
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        Err(Error::Parse { line, col, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn rest_starts(&mut self, lit: &str) -> bool {
        self.skip_ws();
        let l: Vec<char> = lit.chars().collect();
        self.s.len() >= self.pos + l.len() && self.s[self.pos..self.pos + l.len()] == l[..]
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected `{}`", c))
        }
    }

    fn at_tensor_sep(&mut self) -> bool {
        self.rest_starts("⊗") || self.rest_starts("(x)")
    }

    fn factor_start(c: char) -> bool {
        is_ident(c) || c == '('
    }

    fn sum(&mut self) -> Result<Tensor> {
        let mut total: Option<Tensor> = None;
        let mut first = true;
        loop {
            let neg = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    false
                }
                Some('-') | Some('−') => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            first = false;
            let mut t = self.term()?;
            if neg {
                t = -t;
            }
            match &mut total {
                None => total = Some(t),
                Some(acc) => {
                    if acc.arity() != t.arity() {
                        return self.err("terms have different tensor arity");
                    }
                    acc.add_scaled(&t, &Q::one());
                }
            }
        }
        Ok(total.expect("at least one term"))
    }

    fn term(&mut self) -> Result<Tensor> {
        let mut pieces = vec![self.product()?];
        while self.at_tensor_sep() {
            self.pos += if self.s[self.pos] == '⊗' { 1 } else { 3 };
            pieces.push(self.product()?);
        }
        let refs: Vec<&Elem> = pieces.iter().collect();
        Ok(Tensor::product(&refs))
    }

    fn product(&mut self) -> Result<Elem> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                Some(c) if Self::factor_start(c) && !self.at_tensor_sep() => {
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && is_ident(self.s[self.pos]) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an identifier");
        }
        let mut id: String = self.s[start..self.pos].iter().collect();
        // trailing stars belong to the id unless another factor follows at once
        while self.pos < self.s.len() && self.s[self.pos] == '*' {
            let next = self.s.get(self.pos + 1).copied();
            if next.is_some_and(Self::factor_start) {
                break;
            }
            id.push('*');
            self.pos += 1;
        }
        Ok(id)
    }

    fn arrow_arg(&mut self) -> Result<usize> {
        self.expect('(')?;
        let here = self.pos;
        let id = self.ident()?;
        let i = match self.q.arrow_index(&id) {
            Ok(i) => i,
            Err(_) => {
                self.pos = here;
                return self.err(format!("unknown arrow `{}`", id));
            }
        };
        self.expect(')')?;
        Ok(i)
    }

    fn rational(&mut self) -> Result<Q> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let n: BigInt = self.s[start..self.pos].iter().collect::<String>().parse().expect("digits");
        if self.pos < self.s.len() && self.s[self.pos] == '/' {
            self.pos += 1;
            let ds = self.pos;
            while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if ds == self.pos {
                return self.err("expected a denominator");
            }
            let d: BigInt = self.s[ds..self.pos].iter().collect::<String>().parse().expect("digits");
            if d.is_zero() {
                self.pos = ds;
                return self.err("zero denominator");
            }
            return Ok(Q::new(n, d));
        }
        Ok(Q::from_integer(n))
    }

    fn factor(&mut self) -> Result<Elem> {
        let c = match self.peek() {
            Some(c) => c,
            None => return self.err("unexpected end of input"),
        };
        if c == '(' {
            self.pos += 1;
            let t = self.sum()?;
            self.expect(')')?;
            return match t.to_elem() {
                Ok(e) => Ok(e),
                Err(_) => self.err("tensor inside parentheses"),
            };
        }
        if c.is_ascii_digit() {
            let r = self.rational()?;
            return Ok(Elem::one(self.q.n_vertices()).scale(&r));
        }
        if !is_ident(c) {
            return self.err(format!("unexpected `{}`", c));
        }
        let here = self.pos;
        let id = self.ident()?;
        let next_paren = self.s.get(self.pos) == Some(&'(');
        if next_paren {
            match id.as_str() {
                "e" => {
                    self.expect('(')?;
                    self.skip_ws();
                    let start = self.pos;
                    while self.pos < self.s.len() && self.s[self.pos] != ')' {
                        self.pos += 1;
                    }
                    let v: String = self.s[start..self.pos].iter().collect::<String>().trim().to_string();
                    let i = match self.q.vertex_index(&v) {
                        Ok(i) => i,
                        Err(_) => {
                            self.pos = start;
                            return self.err(format!("unknown vertex `{}`", v));
                        }
                    };
                    self.expect(')')?;
                    return Ok(Elem::idem(i));
                }
                "D" => return Ok(Elem::letter(self.q.letter(Kind::Derivation, self.arrow_arg()?))),
                "d" => return Ok(Elem::letter(self.q.letter(Kind::Differential, self.arrow_arg()?))),
                "inv" => {
                    let at = self.pos;
                    let i = self.arrow_arg()?;
                    if !self.q.has_inverse(i) {
                        self.pos = at;
                        return self.err(format!("no inverse declared for `{}`", self.q.arrow(i).id));
                    }
                    return Ok(Elem::letter(self.q.letter(Kind::Inverse, i)));
                }
                _ => {}
            }
        }
        match self.q.arrow_index(&id) {
            Ok(i) => Ok(Elem::letter(self.q.letter(Kind::Arrow, i))),
            Err(_) => {
                self.pos = here;
                self.err(format!("unknown arrow `{}`", id))
            }
        }
    }
}

fn run(q: &Quiver, text: &str) -> Result<Tensor> {
    let mut p = Parser { q, s: text.chars().collect(), pos: 0 };
    if p.peek().is_none() {
        return p.err("empty expression");
    }
    let t = p.sum()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(t)
}

/// Parses an element (no tensor signs).
pub fn parse_elem(q: &Quiver, text: &str) -> Result<Elem> {
    let t = run(q, text)?;
    t.to_elem().map_err(|_| Error::Parse { line: 1, col: 1, msg: "expected an element, found a tensor".into() })
}

/// Parses a tensor of the given arity; a zero expression takes that arity.
pub fn parse_tensor(q: &Quiver, text: &str, arity: usize) -> Result<Tensor> {
    let t = run(q, text)?;
    if t.is_zero() {
        return Ok(Tensor::zero(arity));
    }
    if t.arity() != arity {
        return Err(Error::Parse { line: 1, col: 1, msg: format!("expected arity {}, found {}", arity, t.arity()) });
    }
    Ok(t)
}

pub fn fmt_word(q: &Quiver, w: &Word) -> String {
    if w.is_idem() {
        return format!("e({})", q.vertices()[w.src()]);
    }
    let parts: Vec<String> = w
        .letters()
        .iter()
        .map(|l| {
            let id = &q.arrow(l.arrow as usize).id;
            match l.kind {
                Kind::Arrow => id.clone(),
                Kind::Inverse => format!("inv({})", id),
                Kind::Derivation => format!("D({})", id),
                Kind::Differential => format!("d({})", id),
            }
        })
        .collect();
    parts.join(" * ")
}

fn push_term(out: &mut String, c: &Q, body: String) {
    let neg = c < &Q::zero();
    let a = if neg { -c.clone() } else { c.clone() };
    if out.is_empty() {
        if neg {
            out.push_str("- ");
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    if !a.is_one() {
        out.push_str(&fmt_q(&a));
        out.push_str(" * ");
    }
    out.push_str(&body);
}

pub fn fmt_elem(q: &Quiver, x: &Elem) -> String {
    let mut out = String::new();
    for (w, c) in x.terms() {
        push_term(&mut out, c, fmt_word(q, w));
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

pub fn fmt_tensor(q: &Quiver, t: &Tensor) -> String {
    let mut out = String::new();
    for (ws, c) in t.terms() {
        let body: Vec<String> = ws.iter().map(|w| fmt_word(q, w)).collect();
        push_term(&mut out, c, body.join(" ⊗ "));
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2() -> Quiver {
        Quiver::new(&["1", "2"], &[("a", "1", "2")]).unwrap().double().unwrap().with_inverted(&["a"]).unwrap()
    }

    #[test]
    fn star_rule() {
        let q = p2();
        let a = Elem::letter(q.letter(Kind::Arrow, 0));
        let s = Elem::letter(q.letter(Kind::Arrow, 1));
        assert_eq!(parse_elem(&q, "a*").unwrap(), s);
        assert_eq!(parse_elem(&q, "a * a*").unwrap(), a.mul(&s));
        assert_eq!(parse_elem(&q, "a*a*").unwrap(), a.mul(&s));
        assert_eq!(parse_elem(&q, "a* a").unwrap(), s.mul(&a));
    }

    #[test]
    fn scalars_and_units() {
        let q = p2();
        let x = parse_elem(&q, "1/2 (e(1) + a a*) - 1/2 e(1)").unwrap();
        let a = Elem::letter(q.letter(Kind::Arrow, 0));
        let s = Elem::letter(q.letter(Kind::Arrow, 1));
        assert_eq!(x, a.mul(&s).scale(&super::super::element::rat(1, 2)));
    }

    #[test]
    fn tensors_and_letters() {
        let q = p2();
        let t = parse_tensor(&q, "D(a) ⊗ e(2) - inv(a) (x) a", 2).unwrap();
        assert_eq!(t.len(), 2);
        assert!(parse_tensor(&q, "0", 2).unwrap().is_zero());
        assert!(parse_tensor(&q, "a ⊗ a ⊗ a", 2).is_err());
    }

    #[test]
    fn errors_carry_positions() {
        let q = p2();
        match parse_elem(&q, "a +\n  b") {
            Err(Error::Parse { line, col, .. }) => assert_eq!((line, col), (2, 3)),
            other => panic!("{:?}", other),
        }
        let plain = Quiver::new(&["1", "2"], &[("a", "1", "2")]).unwrap().double().unwrap();
        assert!(parse_elem(&plain, "inv(a)").is_err());
    }

    #[test]
    fn print_parse_round_trip() {
        let q = p2();
        for s in ["0", "a * a* - 1/2 * e(1)", "inv(a) * a * D(a)", "- d(a) * a* + 3 * e(2)"] {
            let x = parse_elem(&q, s).unwrap();
            assert_eq!(parse_elem(&q, &fmt_elem(&q, &x)).unwrap(), x);
        }
        let t = parse_tensor(&q, "a ⊗ e(2) - 2/3 e(1) ⊗ a", 2).unwrap();
        assert_eq!(parse_tensor(&q, &fmt_tensor(&q, &t), 2).unwrap(), t);
    }
}
