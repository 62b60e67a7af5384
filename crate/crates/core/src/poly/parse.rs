use crate::arith::{Integer, Rational};
use crate::error::Result;
use crate::lexer::{Cursor, Tok};

use super::{Monomial, Poly, Ring};

/// Parses a polynomial over `ring`.
///
/// Grammar: `+ - * / ^` with the usual precedence, parentheses, integer
/// literals, and explicit `*` everywhere. `/` is allowed only by a nonzero
/// constant, which is how rational coefficients such as `1/2*x` are written.
pub fn parse_poly(text: &str, ring: &Ring) -> Result<Poly> {
    let mut cur = Cursor::new(text)?;
    let p = poly_expr(&mut cur, ring)?;
    if *cur.peek_tok() != Tok::Eof {
        return Err(cur.error(format!("unexpected {}", cur.peek_tok().describe())));
    }
    Ok(p)
}

pub(crate) fn poly_expr(cur: &mut Cursor, ring: &Ring) -> Result<Poly> {
    let mut acc = term(cur, ring)?;
    loop {
        if cur.eat(&Tok::Plus) {
            acc = &acc + &term(cur, ring)?;
        } else if cur.eat(&Tok::Minus) {
            acc = &acc - &term(cur, ring)?;
        } else {
            return Ok(acc);
        }
    }
}

fn term(cur: &mut Cursor, ring: &Ring) -> Result<Poly> {
    let mut acc = unary(cur, ring)?;
    loop {
        if cur.eat(&Tok::Star) {
            acc = &acc * &unary(cur, ring)?;
        } else if *cur.peek_tok() == Tok::Slash {
            let at = cur.next();
            let d = unary(cur, ring)?;
            let c = match d.constant_value() {
                Some(c) if !c.is_zero() => c,
                Some(_) => return Err(cur.error_at(&at, "division by zero")),
                None => return Err(cur.error_at(&at, "division by a non-constant polynomial")),
            };
            acc = acc.scale(&c.inv()?);
        } else {
            match cur.peek_tok() {
                Tok::Ident(_) | Tok::Int(_) | Tok::LParen => {
                    return Err(cur.error("implicit multiplication is not allowed; use `*`"))
                }
                _ => return Ok(acc),
            }
        }
    }
}

fn unary(cur: &mut Cursor, ring: &Ring) -> Result<Poly> {
    if cur.eat(&Tok::Minus) {
        return Ok(unary(cur, ring)?.neg());
    }
    if cur.eat(&Tok::Plus) {
        return unary(cur, ring);
    }
    power(cur, ring)
}

fn power(cur: &mut Cursor, ring: &Ring) -> Result<Poly> {
    let base = atom(cur, ring)?;
    if cur.eat(&Tok::Caret) {
        let t = cur.next();
        let k: u32 = match &t.tok {
            Tok::Int(s) => s
                .parse()
                .map_err(|_| cur.error_at(&t, format!("exponent `{s}` is too large")))?,
            other => {
                return Err(cur.error_at(
                    &t,
                    format!("expected a nonnegative integer exponent, found {}", other.describe()),
                ))
            }
        };
        return Ok(base.pow(k));
    }
    Ok(base)
}

fn atom(cur: &mut Cursor, ring: &Ring) -> Result<Poly> {
    let t = cur.next();
    match &t.tok {
        Tok::Int(s) => {
            let v: Integer = s.parse()?;
            Ok(Poly::constant(ring, Rational::from(v)))
        }
        Tok::Ident(name) => match ring.var_index(name) {
            Some(i) => Ok(Poly::monomial(ring, Rational::one(), Monomial::var(ring.nvars(), i))),
            None => Err(cur.error_at(&t, format!("unknown variable `{name}` in ring {ring}"))),
        },
        Tok::LParen => {
            let p = poly_expr(cur, ring)?;
            cur.expect(&Tok::RParen)?;
            Ok(p)
        }
        other => Err(cur.error_at(&t, format!("expected a polynomial, found {}", other.describe()))),
    }
}
