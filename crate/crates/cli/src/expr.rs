//! Numeric inputs: plain decimals or small closed-form expressions such as
//! `1/sqrt2`, `exp(-pi)`, `exp(-2pi)` or `exp(-pi*sqrt(2))`, evaluated at the
//! working precision so no digits are lost at the boundary.

use rrcf_core::{NumError, NumericContext, Real, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Op(char),
}

fn lex(src: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            // exponent only when followed by a digit, so `2e` stays `2 * e`
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    i = j;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            out.push(Tok::Num(chars[start..i].iter().collect()));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphabetic() {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect::<String>().to_ascii_lowercase()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(NumError::Parse(format!("unexpected character {c:?} in {src:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    ctx: &'a NumericContext,
    src: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn err(&self, what: &str) -> NumError {
        NumError::Parse(format!("{what} in {:?}", self.src))
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Real> {
        let mut v = self.term()?;
        loop {
            if self.eat('+') {
                v = v + self.term()?;
            } else if self.eat('-') {
                v = v - self.term()?;
            } else {
                return Ok(v);
            }
        }
    }

    fn term(&mut self) -> Result<Real> {
        let mut v = self.unary()?;
        loop {
            if self.eat('*') {
                v = v * self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                if d.is_zero() {
                    return Err(self.err("division by zero"));
                }
                v = v / d;
            } else if matches!(self.peek(), Some(Tok::Ident(_)) | Some(Tok::Op('('))) {
                // implicit product: `2pi`, `3sqrt(2)`
                v = v * self.power()?;
            } else {
                return Ok(v);
            }
        }
    }

    fn unary(&mut self) -> Result<Real> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Real> {
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.unary()?;
            if !base.is_positive() {
                return Err(self.err("power of a non-positive base"));
            }
            return Ok(base.powr(&e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Real> {
        match self.bump() {
            Some(Tok::Num(s)) => self.ctx.parse(&s),
            Some(Tok::Op('(')) => {
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("missing ')'"));
                }
                Ok(v)
            }
            Some(Tok::Ident(name)) => self.call(&name),
            _ => Err(self.err("expected a number")),
        }
    }

    fn call(&mut self, name: &str) -> Result<Real> {
        match name {
            "pi" => return Ok(self.ctx.pi()),
            "e" => return Ok(self.ctx.int(1).exp()),
            _ => {}
        }
        // `sqrt2` style: function applied to a bare number
        let arg = if self.eat('(') {
            let v = self.expr()?;
            if !self.eat(')') {
                return Err(self.err("missing ')'"));
            }
            v
        } else {
            self.power()?
        };
        match name {
            "sqrt" if !arg.is_negative() => Ok(arg.sqrt()),
            "cbrt" => Ok(arg.cbrt()),
            "exp" => Ok(arg.exp()),
            "ln" | "log" if arg.is_positive() => Ok(arg.ln()),
            "sqrt" | "ln" | "log" => Err(self.err(&format!("{name} of an out-of-range value"))),
            _ => Err(self.err(&format!("unknown function {name:?}"))),
        }
    }
}

/// Evaluates `src` at the context's precision.
pub fn evaluate(ctx: &NumericContext, src: &str) -> Result<Real> {
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err(NumError::Parse("empty input".into()));
    }
    let mut p = Parser { toks, pos: 0, ctx, src };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    v.finite("input")
}
