//! Parser for the guard and effect expressions of program files.
//!
//! ```text
//! guard := and ('||' and)*        and  := unit ('&&' unit)*
//! unit  := '!' unit | 'true' | 'false' | expr cmp expr | '(' guard ')'
//! expr  := term (('+' | '-') term)*  term := neg (('*' | '%') neg)*
//! neg   := '-' neg | int | ident | '(' expr ')'
//! ```

use hdalab_core::models::program::{CmpOp, Expr, Guard};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at offset {offset} in {input:?}")]
pub struct ExprError {
    pub input: String,
    pub offset: usize,
    pub message: String,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

type PResult<T> = Result<T, (usize, String)>;

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> &'a str {
        self.skip_ws();
        &self.src[self.pos..]
    }

    fn eat(&mut self, tok: &str) -> bool {
        if self.peek().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> PResult<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err((self.pos, format!("expected {tok:?}")))
        }
    }

    fn ident(&mut self) -> Option<&'a str> {
        let rest = self.peek();
        if !rest.starts_with(|c: char| c.is_ascii_alphabetic() || c == '_') {
            return None;
        }
        let len = rest.find(|c: char| !(c.is_ascii_alphanumeric() || c == '_')).unwrap_or(rest.len());
        self.pos += len;
        Some(&rest[..len])
    }

    fn int(&mut self) -> PResult<Option<i64>> {
        let rest = self.peek();
        let len = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        if len == 0 {
            return Ok(None);
        }
        let v = rest[..len].parse().map_err(|_| (self.pos, "integer out of range".to_string()))?;
        self.pos += len;
        Ok(Some(v))
    }

    fn guard(&mut self) -> PResult<Guard> {
        let mut items = vec![self.and()?];
        while self.eat("||") {
            items.push(self.and()?);
        }
        Ok(if items.len() == 1 { items.pop().expect("one item") } else { Guard::Or(items) })
    }

    fn and(&mut self) -> PResult<Guard> {
        let mut items = vec![self.unit()?];
        while self.eat("&&") {
            items.push(self.unit()?);
        }
        Ok(if items.len() == 1 { items.pop().expect("one item") } else { Guard::And(items) })
    }

    fn unit(&mut self) -> PResult<Guard> {
        if self.peek().starts_with("!=") {
            return Err((self.pos, "unexpected \"!=\"".into()));
        }
        if self.eat("!") {
            return Ok(Guard::Not(Box::new(self.unit()?)));
        }
        let start = self.pos;
        for (word, g) in [("true", Guard::True), ("false", Guard::Or(Vec::new()))] {
            if self.ident() == Some(word) {
                return Ok(g);
            }
            self.pos = start;
        }
        match self.comparison() {
            Ok(g) => Ok(g),
            Err(e) => {
                self.pos = start;
                if self.eat("(") {
                    let g = self.guard()?;
                    self.expect(")")?;
                    Ok(g)
                } else {
                    Err(e)
                }
            }
        }
    }

    fn comparison(&mut self) -> PResult<Guard> {
        let a = self.expr()?;
        let op = [("==", CmpOp::Eq), ("!=", CmpOp::Ne), ("<=", CmpOp::Le), (">=", CmpOp::Ge), ("<", CmpOp::Lt), (">", CmpOp::Gt)]
            .into_iter()
            .find(|(t, _)| self.eat(t))
            .map(|(_, op)| op)
            .ok_or((self.pos, "expected a comparison operator".to_string()))?;
        let b = self.expr()?;
        Ok(Guard::Cmp(a, op, b))
    }

    fn expr(&mut self) -> PResult<Expr> {
        let mut acc = self.term()?;
        loop {
            if self.eat("+") {
                acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.peek().starts_with('-') {
                self.pos += 1;
                acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> PResult<Expr> {
        let mut acc = self.neg()?;
        loop {
            if self.eat("*") {
                acc = Expr::Mul(Box::new(acc), Box::new(self.neg()?));
            } else if self.eat("%") {
                acc = Expr::Mod(Box::new(acc), Box::new(self.neg()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn neg(&mut self) -> PResult<Expr> {
        if self.eat("-") {
            if let Some(v) = self.int()? {
                return Ok(Expr::Const(-v));
            }
            return Ok(Expr::Neg(Box::new(self.neg()?)));
        }
        if let Some(v) = self.int()? {
            return Ok(Expr::Const(v));
        }
        if let Some(name) = self.ident() {
            return Ok(Expr::Var(name.to_string()));
        }
        if self.eat("(") {
            let e = self.expr()?;
            self.expect(")")?;
            return Ok(e);
        }
        Err((self.pos, "expected a number, a variable or \"(\"".into()))
    }

    fn finish<T>(mut self, r: PResult<T>) -> Result<T, ExprError> {
        let r = r.and_then(|v| if self.peek().is_empty() { Ok(v) } else { Err((self.pos, "unexpected trailing input".into())) });
        r.map_err(|(offset, message)| ExprError { input: self.src.to_string(), offset, message })
    }
}

pub fn parse_expr(src: &str) -> Result<Expr, ExprError> {
    let mut p = Parser { src, pos: 0 };
    let r = p.expr();
    p.finish(r)
}

pub fn parse_guard(src: &str) -> Result<Guard, ExprError> {
    let mut p = Parser { src, pos: 0 };
    let r = p.guard();
    p.finish(r)
}
