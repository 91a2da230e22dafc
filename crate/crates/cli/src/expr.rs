//! Infix expressions over coordinates, generators, `i`, `h` and rational
//! literals, evaluated in a smash product.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := power (('*'|'/') power)*
//! power  := atom ['^' integer]
//! atom   := integer | name | '(' expr ')'
//! ```
//! Products are taken left to right in the chosen (deformed or undeformed)
//! smash product; division is only by scalars.

use twistoid::modalg::ModuleAlgebra;
use twistoid::{GaussRational, SmashElem, TruncSeries, Twist};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(String),
    Name(String),
    Sym(char),
}

fn lex(s: &str) -> Result<Vec<Tok>, String> {
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < cs.len() {
        let c = cs[k];
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let start = k;
            while k < cs.len() && cs[k].is_ascii_digit() {
                k += 1;
            }
            out.push(Tok::Int(cs[start..k].iter().collect()));
        } else if c.is_alphabetic() || c == '_' {
            let start = k;
            while k < cs.len() && (cs[k].is_alphanumeric() || cs[k] == '_') {
                k += 1;
            }
            out.push(Tok::Name(cs[start..k].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Sym(c));
            k += 1;
        } else {
            return Err(format!("unexpected character `{c}` at position {k}"));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    ma: &'a ModuleAlgebra,
    twist: Option<&'a Twist>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn constant(&self, c: TruncSeries) -> SmashElem {
        SmashElem::one(self.ma.dim(), self.ma.order()).scale(&c)
    }

    fn expr(&mut self) -> Result<SmashElem, String> {
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let mut acc = self.term()?;
        if neg {
            acc = acc.neg();
        }
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<SmashElem, String> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                let rhs = self.power()?;
                acc = self.ma.smash_mul(self.twist, &acc, &rhs);
            } else if self.eat('/') {
                let rhs = self.power()?;
                let c = scalar_part(&rhs, self.ma.dim()).ok_or("division by a non-scalar")?;
                let inv = c.invert().map_err(|_| "division by a series without constant term".to_string())?;
                acc = acc.scale(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<SmashElem, String> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let e = match self.toks.get(self.pos) {
            Some(Tok::Int(s)) => s.parse::<u32>().map_err(|_| format!("exponent `{s}` too large"))?,
            _ => return Err("expected an integer exponent after `^`".into()),
        };
        self.pos += 1;
        let mut acc = self.constant(TruncSeries::one(self.ma.order()));
        for _ in 0..e {
            acc = self.ma.smash_mul(self.twist, &acc, &base);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<SmashElem, String> {
        let n = self.ma.order();
        let tok = self.peek().cloned().ok_or("unexpected end of expression")?;
        self.pos += 1;
        match tok {
            Tok::Int(s) => {
                let c: GaussRational = s.parse().map_err(|_| format!("bad number `{s}`"))?;
                Ok(self.constant(TruncSeries::constant(c, n)))
            }
            Tok::Sym('(') => {
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err("missing `)`".into());
                }
                Ok(e)
            }
            Tok::Sym(c) => Err(format!("unexpected `{c}`")),
            Tok::Name(name) => {
                if let Some(mu) = self.ma.rep.coord_index(&name) {
                    return Ok(SmashElem::from_poly(&self.ma.coord(mu)));
                }
                if let Ok(g) = self.ma.bialg.gen(&name) {
                    return Ok(SmashElem::from_h(&g, self.ma.dim()));
                }
                match name.as_str() {
                    "i" => Ok(self.constant(TruncSeries::constant(GaussRational::i(), n))),
                    "h" => Ok(self.constant(TruncSeries::monomial(GaussRational::one(), 1, n))),
                    _ => Err(format!("unknown name `{name}`")),
                }
            }
        }
    }
}

/// The coefficient of `1⋊1` if `u` has no other terms.
fn scalar_part(u: &SmashElem, dim: usize) -> Option<TruncSeries> {
    let zero = vec![0u8; dim];
    if u.terms().all(|((m, w), _)| m.as_slice() == zero.as_slice() && w.is_empty()) {
        Some(u.coeff(&zero, &[]))
    } else {
        None
    }
}

/// Parses and evaluates `src` in `A⋊H` (`twist = None`) or `A_F⋊H^F`.
pub fn evaluate(src: &str, ma: &ModuleAlgebra, twist: Option<&Twist>) -> Result<SmashElem, String> {
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err("empty expression".into());
    }
    let mut p = Parser { toks, pos: 0, ma, twist };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(format!("unexpected trailing input at token {}", p.pos + 1));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use twistoid::preset;

    #[test]
    fn momentum_against_coordinate_is_delta() {
        let s = preset("trivial", Some(2)).unwrap();
        let p = evaluate("P1*x1 - x1*P1", &s.ma, None).unwrap();
        assert_eq!(p, SmashElem::one(2, 2));
        let z = evaluate("P1*x0 - x0*P1", &s.ma, None).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn scalars_and_powers() {
        let s = preset("trivial", Some(2)).unwrap();
        let a = evaluate("(x0 + x0)/2 - x0^1", &s.ma, None).unwrap();
        assert!(a.is_zero());
        let b = evaluate("-i*i", &s.ma, None).unwrap();
        assert_eq!(b, SmashElem::one(2, 2));
        let c = evaluate("h^3", &s.ma, None).unwrap();
        assert!(c.is_zero());
    }

    #[test]
    fn errors_are_reported() {
        let s = preset("trivial", Some(2)).unwrap();
        for bad in ["", "x0 +", "y7", "x0 / x1", "(x0", "x0 $ x1", "x0^P0"] {
            assert!(evaluate(bad, &s.ma, None).is_err(), "{bad}");
        }
    }
}
