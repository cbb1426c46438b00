//! Recursive-descent parser for the textual expression form.

use num_complex::Complex64;

use super::HoloExpr;
use crate::error::{Error, Result};

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while let Some(ch) = self.src[self.pos..].chars().next() {
            if ch.is_whitespace() {
                self.pos += ch.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += c.len_utf8();
                Ok(())
            }
            Some(c) => self.err(format!("expected '{want}', found '{c}'")),
            None => self.err(format!("expected '{want}', found end of input")),
        }
    }

    fn ident(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..]
            .find(|c: char| !c.is_ascii_alphabetic())
            .unwrap_or(self.src.len() - start);
        if len == 0 {
            return self.err("expected a node name");
        }
        self.pos += len;
        Ok(&self.src[start..start + len])
    }

    fn number(&mut self) -> Result<f64> {
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..]
            .find(|c: char| !(c.is_ascii_alphanumeric() || matches!(c, '.' | '-' | '+')))
            .unwrap_or(self.src.len() - start);
        let text = &self.src[start..start + len];
        match text.parse::<f64>() {
            Ok(v) if v.is_finite() => {
                self.pos += len;
                Ok(v)
            }
            _ => self.err(format!("expected a finite number, found '{text}'")),
        }
    }

    fn comma(&mut self) -> Result<()> {
        self.expect(',')
    }

    fn expr(&mut self) -> Result<HoloExpr> {
        let start = self.pos;
        let name = self.ident()?;
        self.expect('(')?;
        let node = match name {
            "const" => {
                let re = self.number()?;
                self.comma()?;
                let im = self.number()?;
                HoloExpr::Const(Complex64::new(re, im))
            }
            "pshift" => {
                let sr = self.number()?;
                self.comma()?;
                let si = self.number()?;
                self.comma()?;
                let at = self.pos;
                let c = self.number()?;
                HoloExpr::power_shift(Complex64::new(sr, si), c).map_err(|e| Error::Parse {
                    offset: at,
                    message: e.to_string(),
                })?
            }
            "sum" | "prod" => {
                let mut items = vec![self.expr()?];
                while self.peek() == Some(',') {
                    self.comma()?;
                    items.push(self.expr()?);
                }
                if name == "sum" {
                    HoloExpr::Sum(items)
                } else {
                    HoloExpr::Product(items)
                }
            }
            "scale" => {
                let re = self.number()?;
                self.comma()?;
                let im = self.number()?;
                self.comma()?;
                HoloExpr::Scale(Complex64::new(re, im), Box::new(self.expr()?))
            }
            "dilate" => {
                let at = self.pos;
                let l = self.number()?;
                if l <= 0.0 {
                    self.pos = at;
                    return self.err("dilation factor must be positive");
                }
                self.comma()?;
                HoloExpr::Dilate(l, Box::new(self.expr()?))
            }
            other => {
                self.pos = start;
                return self.err(format!("unknown node '{other}'"));
            }
        };
        self.expect(')')?;
        Ok(node)
    }
}

pub(super) fn parse(text: &str) -> Result<HoloExpr> {
    let mut p = Parser { src: text, pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}
