//! Expression syntax: parsing, printing and evaluation.
//!
//! ```text
//! tensor   := sum ("(x)" sum)*
//! sum      := term (("+" | "-") term)*
//! term     := unary (("*" | "/\") unary)*
//! unary    := "-" unary | power
//! power    := atom ("^" exponent)?
//! atom     := NUMBER ("/" NUMBER)? | IDENT | "d" "(" tensor ")" | "d" power | "(" tensor ")"
//! exponent := "-"? NUMBER | IDENT | "(" intsum ")"
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ncalg::{Elem, Presentation, PresentationBuilder, Scalar, TensorElem, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntExpr {
    Lit(i64),
    Var(String),
    Neg(Box<IntExpr>),
    Add(Box<IntExpr>, Box<IntExpr>),
    Sub(Box<IntExpr>, Box<IntExpr>),
    Mul(Box<IntExpr>, Box<IntExpr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(BigRational),
    Sym(String),
    Pow(Box<Expr>, IntExpr),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Wedge(Box<Expr>, Box<Expr>),
    D(Box<Expr>),
    Tensor(Vec<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    D,
    Plus,
    Minus,
    Star,
    Wedge,
    Slash,
    Caret,
    LParen,
    RParen,
    TensorSep,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Num(src[start..i].parse().expect("digits"))));
                continue;
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let word = &src[start..i];
                out.push((start, if word == "d" { Tok::D } else { Tok::Ident(word.into()) }));
                continue;
            }
            '(' if src[i..].starts_with("(x)") => {
                out.push((start, Tok::TensorSep));
                i += 3;
                continue;
            }
            '/' if src[i..].starts_with("/\\") => {
                out.push((start, Tok::Wedge));
                i += 2;
                continue;
            }
            '+' => out.push((start, Tok::Plus)),
            '-' => out.push((start, Tok::Minus)),
            '*' => out.push((start, Tok::Star)),
            '/' => out.push((start, Tok::Slash)),
            '^' => out.push((start, Tok::Caret)),
            '(' => out.push((start, Tok::LParen)),
            ')' => out.push((start, Tok::RParen)),
            _ => return Err(Error::Syntax { pos: i, msg: format!("unexpected character `{c}`") }),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Syntax { pos: self.here(), msg: msg.into() })
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok, what: &str) -> Result<()> {
        if self.eat(t) {
            Ok(())
        } else {
            self.err(&format!("expected {what}"))
        }
    }

    fn tensor(&mut self) -> Result<Expr> {
        let first = self.sum()?;
        if self.peek() != Some(&Tok::TensorSep) {
            return Ok(first);
        }
        let mut parts = vec![first];
        while self.eat(&Tok::TensorSep) {
            parts.push(self.sum()?);
        }
        Ok(Expr::Tensor(parts))
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat(&Tok::Minus) {
                acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(&Tok::Star) {
                acc = Expr::Mul(Box::new(acc), Box::new(self.unary()?));
            } else if self.eat(&Tok::Wedge) {
                acc = Expr::Wedge(Box::new(acc), Box::new(self.unary()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat(&Tok::Minus) {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat(&Tok::Caret) {
            let e = self.exponent()?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                if self.eat(&Tok::Slash) {
                    let Some(Tok::Num(den)) = self.peek().cloned() else {
                        return self.err("expected denominator");
                    };
                    if den.is_zero() {
                        return self.err("zero denominator");
                    }
                    self.pos += 1;
                    return Ok(Expr::Num(BigRational::new(n, den)));
                }
                Ok(Expr::Num(BigRational::from_integer(n)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(Expr::Sym(name))
            }
            Some(Tok::D) => {
                self.pos += 1;
                if self.eat(&Tok::LParen) {
                    let inner = self.tensor()?;
                    self.expect(&Tok::RParen, "`)`")?;
                    Ok(Expr::D(Box::new(inner)))
                } else {
                    Ok(Expr::D(Box::new(self.power()?)))
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.tensor()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Some(t) => self.err(&format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }

    fn exponent(&mut self) -> Result<IntExpr> {
        match self.peek().cloned() {
            Some(Tok::Minus) => {
                self.pos += 1;
                match self.peek().cloned() {
                    Some(Tok::Num(n)) => {
                        self.pos += 1;
                        Ok(IntExpr::Lit(-self.small(&n)?))
                    }
                    _ => self.err("expected integer exponent"),
                }
            }
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(IntExpr::Lit(self.small(&n)?))
            }
            Some(Tok::Ident(v)) => {
                self.pos += 1;
                Ok(IntExpr::Var(v))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.int_sum()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(e)
            }
            _ => self.err("expected exponent"),
        }
    }

    fn small(&self, n: &BigInt) -> Result<i64> {
        n.to_i64().ok_or_else(|| Error::Syntax { pos: self.here(), msg: "exponent too large".into() })
    }

    fn int_sum(&mut self) -> Result<IntExpr> {
        let mut acc = self.int_term()?;
        loop {
            if self.eat(&Tok::Plus) {
                acc = IntExpr::Add(Box::new(acc), Box::new(self.int_term()?));
            } else if self.eat(&Tok::Minus) {
                acc = IntExpr::Sub(Box::new(acc), Box::new(self.int_term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn int_term(&mut self) -> Result<IntExpr> {
        let mut acc = self.int_unary()?;
        while self.eat(&Tok::Star) {
            acc = IntExpr::Mul(Box::new(acc), Box::new(self.int_unary()?));
        }
        Ok(acc)
    }

    fn int_unary(&mut self) -> Result<IntExpr> {
        match self.peek().cloned() {
            Some(Tok::Minus) => {
                self.pos += 1;
                if let Some(Tok::Num(n)) = self.peek().cloned() {
                    self.pos += 1;
                    return Ok(IntExpr::Lit(-self.small(&n)?));
                }
                Ok(IntExpr::Neg(Box::new(self.int_unary()?)))
            }
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(IntExpr::Lit(self.small(&n)?))
            }
            Some(Tok::Ident(v)) => {
                self.pos += 1;
                Ok(IntExpr::Var(v))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.int_sum()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(e)
            }
            _ => self.err("expected integer expression"),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr> {
    let mut p = Parser { toks: lex(src)?, pos: 0, end: src.len() };
    let e = p.tensor()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

pub fn parse_int(src: &str) -> Result<IntExpr> {
    let mut p = Parser { toks: lex(src)?, pos: 0, end: src.len() };
    let e = p.int_sum()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

impl IntExpr {
    pub fn eval(&self, vars: &BTreeMap<String, i64>) -> Result<i64> {
        Ok(match self {
            IntExpr::Lit(n) => *n,
            IntExpr::Var(v) => *vars.get(v).ok_or_else(|| Error::UnknownSymbol(v.clone()))?,
            IntExpr::Neg(a) => -a.eval(vars)?,
            IntExpr::Add(a, b) => a.eval(vars)? + b.eval(vars)?,
            IntExpr::Sub(a, b) => a.eval(vars)? - b.eval(vars)?,
            IntExpr::Mul(a, b) => a.eval(vars)? * b.eval(vars)?,
        })
    }

    fn prec(&self) -> u8 {
        match self {
            IntExpr::Add(..) | IntExpr::Sub(..) => 1,
            IntExpr::Mul(..) => 2,
            IntExpr::Neg(_) => 3,
            IntExpr::Lit(_) | IntExpr::Var(_) => 4,
        }
    }

    fn write(&self, out: &mut String, min: u8) {
        let paren = self.prec() < min;
        if paren {
            out.push('(');
        }
        match self {
            IntExpr::Lit(n) => out.push_str(&n.to_string()),
            IntExpr::Var(v) => out.push_str(v),
            IntExpr::Neg(a) => {
                out.push('-');
                if matches!(**a, IntExpr::Lit(_)) {
                    a.write(out, 5);
                } else {
                    a.write(out, 3);
                }
            }
            IntExpr::Add(a, b) | IntExpr::Sub(a, b) => {
                a.write(out, 1);
                out.push_str(if matches!(self, IntExpr::Add(..)) { " + " } else { " - " });
                b.write(out, 2);
            }
            IntExpr::Mul(a, b) => {
                a.write(out, 2);
                out.push('*');
                b.write(out, 3);
            }
        }
        if paren {
            out.push(')');
        }
    }

    fn write_exponent(&self, out: &mut String) {
        match self {
            IntExpr::Lit(_) | IntExpr::Var(_) => self.write(out, 0),
            _ => {
                out.push('(');
                self.write(out, 0);
                out.push(')');
            }
        }
    }
}

impl fmt::Display for IntExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.write(&mut s, 0);
        f.write_str(&s)
    }
}

impl Expr {
    fn prec(&self) -> u8 {
        match self {
            Expr::Tensor(_) => 0,
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Wedge(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Num(_) | Expr::Sym(_) | Expr::D(_) => 5,
        }
    }

    fn write(&self, out: &mut String, min: u8) {
        let paren = self.prec() < min;
        if paren {
            out.push('(');
        }
        match self {
            Expr::Num(r) => out.push_str(&r.to_string()),
            Expr::Sym(s) => out.push_str(s),
            Expr::Pow(b, e) => {
                let fraction = matches!(&**b, Expr::Num(r) if !r.is_integer());
                if fraction {
                    out.push('(');
                    b.write(out, 0);
                    out.push(')');
                } else {
                    b.write(out, 5);
                }
                out.push('^');
                e.write_exponent(out);
            }
            Expr::Neg(a) => {
                out.push('-');
                a.write(out, 3);
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                a.write(out, 1);
                out.push_str(if matches!(self, Expr::Add(..)) { " + " } else { " - " });
                b.write(out, 2);
            }
            Expr::Mul(a, b) | Expr::Wedge(a, b) => {
                a.write(out, 2);
                out.push_str(if matches!(self, Expr::Mul(..)) { "*" } else { "/\\" });
                b.write(out, 3);
            }
            Expr::D(a) => {
                out.push_str("d(");
                a.write(out, 0);
                out.push(')');
            }
            Expr::Tensor(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        out.push_str(" (x) ");
                    }
                    p.write(out, 1);
                }
            }
        }
        if paren {
            out.push(')');
        }
    }

    /// Symbols appearing anywhere in the expression.
    pub fn symbols(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols(&self, out: &mut Vec<String>) {
        match self {
            Expr::Num(_) => {}
            Expr::Sym(s) => out.push(s.clone()),
            Expr::Pow(a, _) | Expr::Neg(a) | Expr::D(a) => a.collect_symbols(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Wedge(a, b) => {
                a.collect_symbols(out);
                b.collect_symbols(out);
            }
            Expr::Tensor(ps) => ps.iter().for_each(|p| p.collect_symbols(out)),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.write(&mut s, 0);
        f.write_str(&s)
    }
}

pub fn print(e: &Expr) -> String {
    e.to_string()
}

/// Result of evaluating an expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Scalar(Scalar),
    Elem(Elem),
    Tensor(TensorElem),
}

impl Value {
    pub fn render(&self, param: &str) -> String {
        match self {
            Value::Scalar(s) => s.render(param),
            Value::Elem(e) => e.render(),
            Value::Tensor(t) => t.render(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Value::Scalar(s) => s.is_zero(),
            Value::Elem(e) => e.is_zero(),
            Value::Tensor(t) => t.is_zero(),
        }
    }

    pub fn into_elem(self, pres: &Arc<Presentation>) -> Result<Elem> {
        match self {
            Value::Scalar(s) => Ok(Elem::scalar(pres, s)),
            Value::Elem(e) => Ok(e),
            Value::Tensor(t) => t.to_elem(),
        }
    }

    pub fn into_tensor(self, factors: &[Arc<Presentation>]) -> Result<TensorElem> {
        match self {
            Value::Scalar(s) => Ok(TensorElem::scalar(factors, s)),
            Value::Elem(e) if factors.len() == 1 => Ok(TensorElem::from_elem(&e)),
            Value::Elem(_) => Err(Error::FactorMismatch("expected a tensor".into())),
            Value::Tensor(t) => Ok(t),
        }
    }
}

/// Evaluation environment: the presentation for plain terms, candidate
/// presentations for tensor factors, and integer variable bindings.
#[derive(Clone)]
pub struct Scope {
    pub base: Arc<Presentation>,
    pub spaces: Vec<Arc<Presentation>>,
    pub vars: BTreeMap<String, i64>,
    /// Named elements, usable wherever a generator of their presentation is.
    pub names: BTreeMap<String, Elem>,
}

impl Scope {
    pub fn new(base: &Arc<Presentation>) -> Self {
        Scope { base: base.clone(), spaces: vec![base.clone()], vars: BTreeMap::new(), names: BTreeMap::new() }
    }

    pub fn with_spaces(mut self, spaces: &[Arc<Presentation>]) -> Self {
        self.spaces = spaces.to_vec();
        self
    }

    pub fn with_var(mut self, name: &str, v: i64) -> Self {
        self.vars.insert(name.into(), v);
        self
    }

    pub fn with_names(mut self, names: &BTreeMap<String, Elem>) -> Self {
        self.names.extend(names.iter().map(|(k, v)| (k.clone(), v.clone())));
        self
    }

    fn in_pres(&self, pres: &Arc<Presentation>) -> Scope {
        Scope { base: pres.clone(), ..self.clone() }
    }

    fn knows(&self, p: &Arc<Presentation>, s: &str) -> bool {
        s == p.param()
            || p.index_of(s).is_some()
            || self.vars.contains_key(s)
            || self.names.get(s).is_some_and(|e| Arc::ptr_eq(e.pres(), p))
    }

    /// Presentation for factor `i` of an `n`-fold tensor: the first candidate
    /// space knowing every symbol, tried in order from position `i`.
    fn factor_space(&self, e: &Expr, i: usize, n: usize) -> Result<Arc<Presentation>> {
        if self.spaces.len() == n {
            return Ok(self.spaces[i].clone());
        }
        let syms = e.symbols();
        self.spaces
            .iter()
            .find(|p| syms.iter().all(|s| self.knows(p, s)))
            .cloned()
            .ok_or_else(|| Error::UnknownSymbol(syms.join(",")))
    }
}

fn num_scalar(r: &BigRational) -> Scalar {
    Scalar::from_rational(r.clone())
}

fn add_values(a: Value, b: Value, scope: &Scope) -> Result<Value> {
    Ok(match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x + y),
        (Value::Elem(x), Value::Elem(y)) => Value::Elem(x.try_add(&y)?),
        (Value::Scalar(s), Value::Elem(e)) | (Value::Elem(e), Value::Scalar(s)) => {
            let p = e.pres().clone();
            Value::Elem(e.try_add(&Elem::scalar(&p, s))?)
        }
        (Value::Tensor(x), Value::Tensor(y)) => Value::Tensor(x.try_add(&y)?),
        (Value::Tensor(t), Value::Scalar(s)) | (Value::Scalar(s), Value::Tensor(t)) => {
            let f = t.factors().to_vec();
            Value::Tensor(t.try_add(&TensorElem::scalar(&f, s))?)
        }
        _ => {
            let _ = scope;
            return Err(Error::FactorMismatch("cannot add a tensor and a plain element".into()));
        }
    })
}

fn mul_values(a: Value, b: Value) -> Result<Value> {
    Ok(match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x * y),
        (Value::Scalar(s), Value::Elem(e)) | (Value::Elem(e), Value::Scalar(s)) => Value::Elem(e.scale(&s)),
        (Value::Scalar(s), Value::Tensor(t)) | (Value::Tensor(t), Value::Scalar(s)) => Value::Tensor(t.scale(&s)),
        (Value::Elem(x), Value::Elem(y)) => Value::Elem(x.mul(&y)?),
        (Value::Tensor(x), Value::Tensor(y)) => Value::Tensor(x.mul(&y)?),
        _ => return Err(Error::FactorMismatch("cannot multiply a tensor and a plain element".into())),
    })
}

fn pow_value(v: Value, n: i64) -> Result<Value> {
    Ok(match v {
        Value::Scalar(s) => Value::Scalar(
            s.pow(n).ok_or_else(|| Error::NotInvertible(format!("({})^{n}", s)))?,
        ),
        Value::Elem(e) => Value::Elem(e.pow(n)?),
        Value::Tensor(t) => {
            if n < 0 {
                return Err(Error::ExponentDomain("negative power of a tensor".into()));
            }
            let mut acc = TensorElem::one(t.factors());
            for _ in 0..n {
                acc = acc.mul(&t)?;
            }
            Value::Tensor(acc)
        }
    })
}

pub fn eval(e: &Expr, scope: &Scope) -> Result<Value> {
    Ok(match e {
        Expr::Num(r) => Value::Scalar(num_scalar(r)),
        Expr::Sym(s) => {
            if s == scope.base.param() {
                Value::Scalar(Scalar::q_pow(1))
            } else if let Some(e) = scope.names.get(s).filter(|e| Arc::ptr_eq(e.pres(), &scope.base)) {
                Value::Elem(e.clone())
            } else {
                Value::Elem(Elem::gen(&scope.base, s)?)
            }
        }
        Expr::Pow(b, n) => pow_value(eval(b, scope)?, n.eval(&scope.vars)?)?,
        Expr::Neg(a) => mul_values(Value::Scalar(-Scalar::one()), eval(a, scope)?)?,
        Expr::Add(a, b) => add_values(eval(a, scope)?, eval(b, scope)?, scope)?,
        Expr::Sub(a, b) => {
            let nb = mul_values(Value::Scalar(-Scalar::one()), eval(b, scope)?)?;
            add_values(eval(a, scope)?, nb, scope)?
        }
        Expr::Mul(a, b) | Expr::Wedge(a, b) => mul_values(eval(a, scope)?, eval(b, scope)?)?,
        Expr::D(a) => match eval(a, scope)? {
            Value::Scalar(_) => Value::Scalar(Scalar::zero()),
            Value::Elem(x) => Value::Elem(x.d()?),
            Value::Tensor(t) => Value::Tensor(t.differential()?),
        },
        Expr::Tensor(parts) => {
            let n = parts.len();
            let mut factors = Vec::with_capacity(n);
            let mut coeff = Scalar::one();
            let mut elems = Vec::with_capacity(n);
            for (i, p) in parts.iter().enumerate() {
                let pres = scope.factor_space(p, i, n)?;
                match eval(p, &scope.in_pres(&pres))? {
                    Value::Scalar(s) => {
                        coeff = &coeff * &s;
                        elems.push(Elem::one(&pres));
                    }
                    Value::Elem(x) => elems.push(x),
                    Value::Tensor(_) => {
                        return Err(Error::FactorMismatch("nested tensor factor".into()))
                    }
                }
                factors.push(pres);
            }
            let refs: Vec<&Elem> = elems.iter().collect();
            Value::Tensor(TensorElem::pure(&refs).scale(&coeff))
        }
    })
}

/// Parses and evaluates against one presentation.
pub fn eval_str(src: &str, pres: &Arc<Presentation>) -> Result<Value> {
    eval(&parse(src)?, &Scope::new(pres))
}

pub fn eval_elem(src: &str, pres: &Arc<Presentation>) -> Result<Elem> {
    eval_str(src, pres)?.into_elem(pres)
}

/// Formal noncommutative polynomial: words without any rewriting.
pub type RawPoly = Vec<(Word, Scalar)>;

fn raw_mul(a: &RawPoly, b: &RawPoly) -> RawPoly {
    let mut out = Vec::new();
    for (wa, ca) in a {
        for (wb, cb) in b {
            let mut w = wa.clone();
            w.extend(wb.iter().cloned());
            out.push((w, ca * cb));
        }
    }
    out
}

fn raw_scale(a: RawPoly, c: &Scalar) -> RawPoly {
    a.into_iter().map(|(w, x)| (w, &x * c)).filter(|(_, x)| !x.is_zero()).collect()
}

/// Evaluates against a presentation under construction, keeping words as written.
pub fn eval_raw(e: &Expr, b: &PresentationBuilder, param: &str, vars: &BTreeMap<String, i64>) -> Result<RawPoly> {
    Ok(match e {
        Expr::Num(r) => vec![(Vec::new(), num_scalar(r))],
        Expr::Sym(s) if s == param => vec![(Vec::new(), Scalar::q_pow(1))],
        Expr::Sym(s) => {
            let g = b.index_of(s).ok_or_else(|| Error::UnknownSymbol(s.clone()))?;
            vec![(vec![(g, 1)], Scalar::one())]
        }
        Expr::Pow(base, n) => {
            let n = n.eval(vars)?;
            match &**base {
                Expr::Sym(s) if s == param => vec![(Vec::new(), Scalar::q_pow(n as i32))],
                Expr::Sym(s) => {
                    let g = b.index_of(s).ok_or_else(|| Error::UnknownSymbol(s.clone()))?;
                    if n < 0 && !b.generators()[g].invertible {
                        return Err(Error::ExponentDomain(format!("{s}^{n}")));
                    }
                    if n == 0 {
                        vec![(Vec::new(), Scalar::one())]
                    } else {
                        vec![(vec![(g, n as i32)], Scalar::one())]
                    }
                }
                other => {
                    if n < 0 {
                        return Err(Error::ExponentDomain("negative power of a compound".into()));
                    }
                    let x = eval_raw(other, b, param, vars)?;
                    let mut acc = vec![(Vec::new(), Scalar::one())];
                    for _ in 0..n {
                        acc = raw_mul(&acc, &x);
                    }
                    acc
                }
            }
        }
        Expr::Neg(a) => raw_scale(eval_raw(a, b, param, vars)?, &-Scalar::one()),
        Expr::Add(x, y) => {
            let mut v = eval_raw(x, b, param, vars)?;
            v.extend(eval_raw(y, b, param, vars)?);
            v
        }
        Expr::Sub(x, y) => {
            let mut v = eval_raw(x, b, param, vars)?;
            v.extend(raw_scale(eval_raw(y, b, param, vars)?, &-Scalar::one()));
            v
        }
        Expr::Mul(x, y) | Expr::Wedge(x, y) => raw_mul(&eval_raw(x, b, param, vars)?, &eval_raw(y, b, param, vars)?),
        Expr::D(_) | Expr::Tensor(_) => {
            return Err(Error::Other("differentials and tensors are not allowed here".into()))
        }
    })
}

/// Renders a rational as it would be parsed back.
pub fn rational_literal(r: &BigRational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Builds the expression `c*q^k` for a rational coefficient.
pub fn scalar_expr(c: &Scalar, param: &str) -> Expr {
    let mut acc: Option<Expr> = None;
    for (k, r) in c.terms() {
        let mag = r.abs();
        let mono = if k == 0 {
            Expr::Num(mag.clone())
        } else {
            let qk = if k == 1 {
                Expr::Sym(param.into())
            } else {
                Expr::Pow(Box::new(Expr::Sym(param.into())), IntExpr::Lit(k as i64))
            };
            if mag.is_one() {
                qk
            } else {
                Expr::Mul(Box::new(Expr::Num(mag.clone())), Box::new(qk))
            }
        };
        acc = Some(match (acc, r.is_negative()) {
            (None, false) => mono,
            (None, true) => Expr::Neg(Box::new(mono)),
            (Some(a), false) => Expr::Add(Box::new(a), Box::new(mono)),
            (Some(a), true) => Expr::Sub(Box::new(a), Box::new(mono)),
        });
    }
    acc.unwrap_or(Expr::Num(BigRational::zero()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let e = parse("a + b*c^2").unwrap();
        assert_eq!(e.to_string(), "a + b*c^2");
        let e = parse("(a + b)*c").unwrap();
        assert_eq!(e.to_string(), "(a + b)*c");
        let e = parse("a - (b - c)").unwrap();
        assert_eq!(e.to_string(), "a - (b - c)");
    }

    #[test]
    fn tensors_and_forms() {
        let e = parse("u^-1*d(u) (x) t").unwrap();
        assert!(matches!(e, Expr::Tensor(ref v) if v.len() == 2));
        let e = parse("(a (x) b) + q*(c (x) e)").unwrap();
        assert_eq!(e.to_string(), "(a (x) b) + q*(c (x) e)");
        let e = parse("d(u)/\\d(v)").unwrap();
        assert_eq!(e.to_string(), "d(u)/\\d(v)");
    }

    #[test]
    fn exponents() {
        let e = parse("t^(-n*k) + u^k + v^-3").unwrap();
        assert_eq!(e.to_string(), "t^(-n*k) + u^k + v^-3");
        assert_eq!(parse("(1/2)^2").unwrap().to_string(), "(1/2)^2");
        assert_eq!(parse_int("-(2)").unwrap(), IntExpr::Neg(Box::new(IntExpr::Lit(2))));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse("a + * b") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(parse("a $ b").is_err());
        assert!(parse("(a").is_err());
    }
}
