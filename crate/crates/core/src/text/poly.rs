use crate::algebra::gf::{Fe, Gf};
use crate::algebra::poly::{Monomial, MultiPoly, PolyRing};
use crate::algebra::ring::Ring;
use crate::error::{Error, Result};

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
}

#[derive(Debug, PartialEq)]
enum Tok<'a> {
    Int(&'a str),
    Name(&'a str),
    Plus,
    Minus,
    Star,
    Caret,
    End,
}

impl<'a> Lexer<'a> {
    fn err(&self, msg: impl std::fmt::Display) -> Error {
        let ws = self.src[self.pos..].iter().take_while(|b| b.is_ascii_whitespace()).count();
        Error::parse(self.line, self.pos + ws + 1, msg)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Result<Tok<'a>> {
        let save = self.pos;
        let t = self.next();
        self.pos = save;
        t
    }

    fn next(&mut self) -> Result<Tok<'a>> {
        self.skip_ws();
        let Some(&c) = self.src.get(self.pos) else {
            return Ok(Tok::End);
        };
        let start = self.pos;
        let word = |lx: &mut Self, pred: fn(u8) -> bool| {
            while lx.pos < lx.src.len() && pred(lx.src[lx.pos]) {
                lx.pos += 1;
            }
            std::str::from_utf8(&lx.src[start..lx.pos]).expect("ascii run")
        };
        let tok = match c {
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'0'..=b'9' => return Ok(Tok::Int(word(self, |b| b.is_ascii_digit()))),
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                return Ok(Tok::Name(word(self, |b| b.is_ascii_alphanumeric() || b == b'_')));
            }
            _ => return Err(self.err(format!("unexpected character {:?}", self.rest_char()))),
        };
        self.pos += 1;
        Ok(tok)
    }

    fn rest_char(&self) -> char {
        String::from_utf8_lossy(&self.src[self.pos..]).chars().next().unwrap_or('?')
    }

    fn exponent(&mut self) -> Result<u64> {
        if self.peek()? != Tok::Caret {
            return Ok(1);
        }
        self.next()?;
        match self.next()? {
            Tok::Int(s) => s.parse().map_err(|_| self.err("exponent out of range")),
            _ => Err(self.err("expected an exponent")),
        }
    }
}

/// Parse `c*x1^a1*...*xn^an` terms joined by `+` or `-`.
///
/// Coefficients are integers reduced mod `p` or `g^k` for the generator of a
/// non-prime field; in that case `g` may not be a variable name.
pub fn parse_poly(ring: &PolyRing<Gf>, src: &str) -> Result<MultiPoly<Fe>> {
    parse_poly_at(ring, src, 1)
}

pub(crate) fn parse_poly_at(ring: &PolyRing<Gf>, src: &str, line: usize) -> Result<MultiPoly<Fe>> {
    let field = ring.base();
    let mut lx = Lexer { src: src.as_bytes(), pos: 0, line };
    let uses_g = !field.is_prime_field() && ring.var_index("g").is_none();
    let max_exp = u64::from(u16::MAX);
    let mut terms: Vec<(Monomial, Fe)> = Vec::new();
    let mut first = true;
    loop {
        let mut sign = false;
        match lx.peek()? {
            Tok::Plus if !first => {
                lx.next()?;
            }
            Tok::Minus => {
                lx.next()?;
                sign = true;
            }
            Tok::End if first => return Err(lx.err("empty polynomial")),
            _ if !first => return Err(lx.err("expected '+' or '-'")),
            _ => {}
        }
        first = false;
        let mut coeff = field.one();
        let mut exps = vec![0u32; ring.nvars()];
        loop {
            lx.skip_ws();
            let col = lx.pos;
            match lx.next()? {
                Tok::Int(s) => {
                    let n = s.bytes().fold(0u64, |acc, b| (acc * 10 + u64::from(b - b'0')) % field.p());
                    if lx.peek()? == Tok::Caret {
                        return Err(lx.err("exponents apply to variables and g only"));
                    }
                    coeff = field.mul(&coeff, &field.from_int(n as i64));
                }
                Tok::Name("g") if uses_g => {
                    let k = lx.exponent()?;
                    coeff = field.mul(&coeff, &field.gen_pow(k));
                }
                Tok::Name(name) => {
                    let v = ring.var_index(name).ok_or_else(|| Error::parse(line, col + 1, format!("unknown variable {name}")))?;
                    let k = lx.exponent()?;
                    let total = u64::from(exps[v]) + k;
                    if total > max_exp {
                        return Err(lx.err("exponent out of range"));
                    }
                    exps[v] = total as u32;
                }
                _ => return Err(Error::parse(line, col + 1, "expected a coefficient or variable")),
            }
            if lx.peek()? != Tok::Star {
                break;
            }
            lx.next()?;
        }
        if sign {
            coeff = field.neg(&coeff);
        }
        terms.push((Monomial(exps), coeff));
        if lx.peek()? == Tok::End {
            break;
        }
    }
    Ok(ring.from_terms(terms))
}
