//! Text and JSON input for algebra elements.
//!
//! Grammar (whitespace is free between tokens):
//!
//! ```text
//! sum     := ['+'|'-'] product (('+'|'-') product)*
//! product := postfix postfix*             juxtaposition multiplies
//! postfix := atom ('*' | '^' n)*          '*' is the adjoint, except right after a
//!                                          numeric literal, where it multiplies
//! atom    := number ['/' number] ['i'] | 'i' | 's' | 'u{elem}' | 'e[coset]' | '(' sum ')'
//! coset   := ['{elem}'] lattice           lattice terms joined by '∩', '&' or ','
//! term    := 'G' | NAME | 'phi' ['^' n] ['(' NAME ')']
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::Value;

use crate::algebra::{Algebra, AlgebraElement};
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::lattice::{BaseId, Coset, Lattice, Term};
use crate::scalar::{parse_rational, Scalar};

pub fn parse_expr(alg: &Algebra<'_>, text: &str) -> Result<AlgebraElement> {
    let mut p = Parser { alg, src: text, pos: 0 };
    let x = p.sum()?;
    p.ws();
    if p.pos < text.len() {
        return Err(p.err(format!("unexpected {:?}", p.rest().chars().next().unwrap_or(' '))));
    }
    Ok(x)
}

struct Parser<'a, 'g> {
    alg: &'a Algebra<'g>,
    src: &'a str,
    pos: usize,
}

enum Atom {
    Number(AlgebraElement),
    Other(AlgebraElement),
}

impl Parser<'_, '_> {
    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.into() }
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_digit() || "(usei".contains(c))
    }

    fn sum(&mut self) -> Result<AlgebraElement> {
        self.ws();
        let mut negate = false;
        if self.eat("-") {
            negate = true;
        } else {
            self.eat("+");
        }
        let mut acc = self.product()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            self.ws();
            if self.eat("+") {
                acc = acc.add(&self.product()?);
            } else if self.eat("-") {
                acc = acc.sub(&self.product()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<AlgebraElement> {
        self.ws();
        if !self.starts_atom() {
            return Err(self.err("expected a factor"));
        }
        let mut acc = self.postfix()?;
        loop {
            self.ws();
            if !self.starts_atom() {
                return Ok(acc);
            }
            let next = self.postfix()?;
            acc = self.alg.mul(&acc, &next);
        }
    }

    fn postfix(&mut self) -> Result<AlgebraElement> {
        let mut x = match self.atom()? {
            Atom::Number(c) => {
                self.ws();
                if self.eat("*") {
                    self.ws();
                    if !self.starts_atom() {
                        return Err(self.err("expected a factor after '*'"));
                    }
                }
                return Ok(c);
            }
            Atom::Other(x) => x,
        };
        loop {
            let save = self.pos;
            self.ws();
            if self.eat("*") {
                x = self.alg.adjoint(&x);
            } else if self.eat("^") {
                let at = self.pos;
                let k = u32::try_from(self.digits()?)
                    .ok()
                    .filter(|&k| k <= 64)
                    .ok_or(Error::Syntax { pos: at, msg: "power must be at most 64".into() })?;
                let mut p = self.alg.one();
                for _ in 0..k {
                    p = self.alg.mul(&p, &x);
                }
                x = p;
            } else {
                self.pos = save;
                return Ok(x);
            }
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        Ok(self.src[start..self.pos].parse().expect("ascii digits"))
    }

    fn atom(&mut self) -> Result<Atom> {
        self.ws();
        let alg = self.alg;
        let c = self.peek().ok_or_else(|| self.err("unexpected end of input"))?;
        if c.is_ascii_digit() {
            let num = self.digits()?;
            let mut r = BigRational::from_integer(num);
            if self.eat("/") {
                let den = self.digits()?;
                if den == BigInt::from(0) {
                    return Err(self.err("zero denominator"));
                }
                r /= BigRational::from_integer(den);
            }
            let s = if self.eat("i") { Scalar::new(BigRational::from_integer(0.into()), r) } else { Scalar::real(r) };
            return Ok(Atom::Number(alg.scalar(s)));
        }
        if self.eat("(") {
            let x = self.sum()?;
            self.ws();
            if !self.eat(")") {
                return Err(self.err("expected ')'"));
            }
            return Ok(Atom::Other(x));
        }
        if self.eat("u") {
            let g = self.element()?;
            return Ok(Atom::Other(alg.u(&g)));
        }
        if self.eat("e[") {
            let c = self.coset()?;
            return Ok(Atom::Other(alg.proj(&c)));
        }
        if self.eat("s") {
            return Ok(Atom::Other(alg.s()));
        }
        if self.eat("i") {
            return Ok(Atom::Number(alg.scalar(Scalar::i())));
        }
        Err(self.err(format!("unexpected {c:?}")))
    }

    fn element(&mut self) -> Result<GroupElement> {
        let start = self.pos;
        if !self.rest().starts_with('{') {
            return Err(self.err("expected '{'"));
        }
        let len = self.rest().find('}').ok_or_else(|| self.err("unclosed '{'"))? + 1;
        self.pos += len;
        self.alg.group().parse_element(&self.src[start..self.pos]).map_err(|e| Error::Syntax {
            pos: start,
            msg: match e {
                Error::Syntax { msg, .. } => msg,
                other => other.to_string(),
            },
        })
    }

    fn name(&mut self) -> Result<String> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a subgroup name"));
        }
        Ok(self.src[start..self.pos].to_string())
    }

    fn base(&mut self) -> Result<BaseId> {
        let at = self.pos;
        let name = self.name()?;
        self.alg
            .group()
            .base_by_name(&name)
            .ok_or(Error::Syntax { pos: at, msg: format!("unknown subgroup {name:?}") })
    }

    fn term(&mut self) -> Result<Term> {
        self.ws();
        if self.rest().starts_with("phi") {
            self.pos += 3;
            let n = if self.eat("^") {
                let at = self.pos;
                u32::try_from(self.digits()?).map_err(|_| Error::Syntax { pos: at, msg: "exponent too large".into() })?
            } else {
                1
            };
            self.ws();
            let base = if self.eat("(") {
                self.ws();
                let b = self.base()?;
                self.ws();
                if !self.eat(")") {
                    return Err(self.err("expected ')'"));
                }
                b
            } else {
                BaseId::G
            };
            return Ok(Term { n, base });
        }
        Ok(Term { n: 0, base: self.base()? })
    }

    fn coset(&mut self) -> Result<Coset> {
        let g = self.alg.group();
        self.ws();
        let rep = if self.rest().starts_with('{') { self.element()? } else { g.identity() };
        self.ws();
        let mut terms = Vec::new();
        if self.eat("]") {
            terms.push(Term { n: 0, base: BaseId::G });
        } else {
            loop {
                terms.push(self.term()?);
                self.ws();
                if self.eat("]") {
                    break;
                }
                if !(self.eat("∩") || self.eat("&") || self.eat(",")) {
                    return Err(self.err("expected ']' or a lattice separator"));
                }
            }
        }
        Ok(Coset::new(g, &rep, Lattice::canonical(g, terms)))
    }
}

/// Reads the JSON written for an [`AlgebraElement`], re-canonicalizing every label.
pub fn algebra_from_json(alg: &Algebra<'_>, v: &Value) -> Result<AlgebraElement> {
    let g = alg.group();
    let bad = |what: &str| Error::Config(format!("malformed algebra element JSON: {what}"));
    let items = v.as_array().ok_or_else(|| bad("expected an array"))?;
    let mut out = AlgebraElement::zero();
    for item in items {
        let m = item.get("monomial").ok_or_else(|| bad("missing monomial"))?;
        let nat = |key: &str| -> Result<u32> {
            m.get(key).and_then(Value::as_u64).and_then(|x| u32::try_from(x).ok()).ok_or_else(|| bad(key))
        };
        let a = g.element_from_json(m.get("a").ok_or_else(|| bad("a"))?)?;
        let b = g.element_from_json(m.get("b").ok_or_else(|| bad("b"))?)?;
        let terms = m
            .get("L")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("L"))?
            .iter()
            .map(|t| {
                let n = t.get("n").and_then(Value::as_u64).ok_or_else(|| bad("L.n"))?;
                let base = t.get("baseId").and_then(Value::as_u64).ok_or_else(|| bad("L.baseId"))?;
                if base as usize > g.bases().len() {
                    return Err(bad("L.baseId out of range"));
                }
                Ok(Term { n: n as u32, base: BaseId(base as u8) })
            })
            .collect::<Result<Vec<_>>>()?;
        let num = |key: &str| -> Result<BigRational> {
            parse_rational(item.get(key).and_then(Value::as_str).ok_or_else(|| bad(key))?)
        };
        let c = Scalar::new(num("re")?, num("im")?);
        let sub = Lattice::canonical(g, terms);
        let x = alg.from_raw(nat("n")?, &a, &Coset::subgroup(sub, g), &b, nat("m")?);
        out = out.add(&x.scale(&c));
    }
    Ok(out)
}
