//! Terms over `+`, `·`, `α`, `0`, `1` and their evaluation on tables.
//!
//! Concrete syntax used by [`Term::parse`] and `Display`:
//! `x + y`, `x * y`, postfix `'` for α, constants `0` and `1`.
//! `'` binds tightest, then `*`, then `+`; both binary operators
//! associate to the left.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::algebra::{Element, FiniteAlgebra};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Zero,
    One,
    Add(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
    Alpha(Box<Term>),
}

pub type Env = BTreeMap<String, Element>;

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(self, rhs: Term) -> Term {
        Term::Add(Box::new(self), Box::new(rhs))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, rhs: Term) -> Term {
        Term::Mul(Box::new(self), Box::new(rhs))
    }

    pub fn alpha(self) -> Term {
        Term::Alpha(Box::new(self))
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Zero | Term::One => {}
            Term::Add(l, r) | Term::Mul(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
            Term::Alpha(t) => t.collect_vars(out),
        }
    }

    /// Substitutes terms for variables.
    pub fn substitute(&self, bindings: &BTreeMap<String, Term>) -> Term {
        match self {
            Term::Var(v) => bindings.get(v).cloned().unwrap_or_else(|| self.clone()),
            Term::Zero | Term::One => self.clone(),
            Term::Add(l, r) => l.substitute(bindings).add(r.substitute(bindings)),
            Term::Mul(l, r) => l.substitute(bindings).mul(r.substitute(bindings)),
            Term::Alpha(t) => t.substitute(bindings).alpha(),
        }
    }

    pub fn parse(src: &str) -> Result<Term> {
        let mut p = Parser {
            src: src.as_bytes(),
            pos: 0,
        };
        let t = p.sum()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(t)
    }

    /// Resolves variables against `vars` so the term can be evaluated by slot.
    pub fn compile(&self, vars: &[&str]) -> Result<CompiledTerm> {
        let mut code = Vec::new();
        self.emit(vars, &mut code)?;
        let depth = max_stack(&code);
        Ok(CompiledTerm { code, depth })
    }

    fn emit(&self, vars: &[&str], code: &mut Vec<Op>) -> Result<()> {
        match self {
            Term::Var(v) => {
                let slot = vars
                    .iter()
                    .position(|name| name == v)
                    .ok_or_else(|| Error::UnboundVariable(v.clone()))?;
                code.push(Op::Var(slot));
            }
            Term::Zero => code.push(Op::Zero),
            Term::One => code.push(Op::One),
            Term::Add(l, r) => {
                l.emit(vars, code)?;
                r.emit(vars, code)?;
                code.push(Op::Add);
            }
            Term::Mul(l, r) => {
                l.emit(vars, code)?;
                r.emit(vars, code)?;
                code.push(Op::Mul);
            }
            Term::Alpha(t) => {
                t.emit(vars, code)?;
                code.push(Op::Alpha);
            }
        }
        Ok(())
    }
}

/// Evaluates `t` by structural recursion over the tables of `alg`.
pub fn eval_term(alg: &FiniteAlgebra, t: &Term, env: &Env) -> Result<Element> {
    Ok(match t {
        Term::Var(v) => {
            let x = *env
                .get(v)
                .ok_or_else(|| Error::UnboundVariable(v.clone()))?;
            alg.check_element(x)?;
            x
        }
        Term::Zero => alg.zero(),
        Term::One => alg.one(),
        Term::Add(l, r) => alg.add(eval_term(alg, l, env)?, eval_term(alg, r, env)?),
        Term::Mul(l, r) => alg.mul(eval_term(alg, l, env)?, eval_term(alg, r, env)?),
        Term::Alpha(u) => alg.alpha(eval_term(alg, u, env)?),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Op {
    Var(usize),
    Zero,
    One,
    Add,
    Mul,
    Alpha,
}

fn max_stack(code: &[Op]) -> usize {
    let (mut depth, mut max) = (0usize, 0usize);
    for op in code {
        match op {
            Op::Var(_) | Op::Zero | Op::One => depth += 1,
            Op::Add | Op::Mul => depth -= 1,
            Op::Alpha => {}
        }
        max = max.max(depth);
    }
    max
}

/// Postfix form of a term with variables bound to argument slots.
#[derive(Clone, Debug)]
pub struct CompiledTerm {
    code: Vec<Op>,
    depth: usize,
}

impl CompiledTerm {
    pub fn eval(&self, alg: &FiniteAlgebra, args: &[Element]) -> Element {
        let mut stack: Vec<Element> = Vec::with_capacity(self.depth);
        for op in &self.code {
            match *op {
                Op::Var(i) => stack.push(args[i]),
                Op::Zero => stack.push(alg.zero()),
                Op::One => stack.push(alg.one()),
                Op::Add => {
                    let r = stack.pop().unwrap();
                    let l = stack.pop().unwrap();
                    stack.push(alg.add(l, r));
                }
                Op::Mul => {
                    let r = stack.pop().unwrap();
                    let l = stack.pop().unwrap();
                    stack.push(alg.mul(l, r));
                }
                Op::Alpha => {
                    let v = stack.pop().unwrap();
                    stack.push(alg.alpha(v));
                }
            }
        }
        stack.pop().unwrap()
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn prec(t: &Term) -> u8 {
            match t {
                Term::Add(..) => 0,
                Term::Mul(..) => 1,
                _ => 2,
            }
        }
        fn child(f: &mut fmt::Formatter<'_>, t: &Term, min: u8) -> fmt::Result {
            if prec(t) < min {
                write!(f, "({t})")
            } else {
                write!(f, "{t}")
            }
        }
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::Zero => write!(f, "0"),
            Term::One => write!(f, "1"),
            Term::Add(l, r) => {
                child(f, l, 0)?;
                write!(f, " + ")?;
                child(f, r, 1)
            }
            Term::Mul(l, r) => {
                child(f, l, 1)?;
                write!(f, "*")?;
                child(f, r, 2)
            }
            Term::Alpha(t) => {
                child(f, t, 2)?;
                write!(f, "'")
            }
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::TermSyntax {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<Term> {
        let mut t = self.product()?;
        while self.peek() == Some(b'+') {
            self.pos += 1;
            t = t.add(self.product()?);
        }
        Ok(t)
    }

    fn product(&mut self) -> Result<Term> {
        let mut t = self.postfix()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            t = t.mul(self.postfix()?);
        }
        Ok(t)
    }

    fn postfix(&mut self) -> Result<Term> {
        let mut t = self.atom()?;
        while self.peek() == Some(b'\'') {
            self.pos += 1;
            t = t.alpha();
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<Term> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let t = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(t)
            }
            Some(b'0') => {
                self.pos += 1;
                Ok(Term::Zero)
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(Term::One)
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Ok(Term::var(name))
            }
            _ => Err(self.error("expected a variable, constant or `(`")),
        }
    }
}
