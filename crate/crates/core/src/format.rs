//! The plain-text algebra file format.
//!
//! ```text
//! # the three-element Łukasiewicz chain
//! kind = luk-rs
//! size = 3
//! names = ["0", "h", "1"]
//! zero = 0
//! one = 2
//! plus = [[0, 1, 2], [1, 1, 2], [2, 2, 2]]
//! times = [[0, 0, 0], [0, 0, 1], [0, 1, 2]]
//! alpha = [2, 1, 0]
//! ```
//!
//! `kind` is one of `inrs` (the default), `luk-nrs`, `luk-rs` or `mv`; an
//! MV document replaces `one`, `plus`, `times`, `alpha` by `oplus` and
//! `neg`. Keys may appear in any order, whitespace and line breaks between
//! tokens are insignificant and `#` starts a comment. Map files used for
//! homomorphisms contain the single key `map`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::algebra::{Element, FiniteAlgebra};
use crate::axioms::Class;
use crate::error::{Error, Result};
use crate::mv::MvAlgebra;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Pos {
    line: usize,
    col: usize,
}

fn err(pos: Pos, message: impl Into<String>) -> Error {
    Error::Parse {
        line: pos.line,
        col: pos.col,
        message: message.into(),
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Word(String),
    Int(usize),
    Str(String),
    Eq,
    Open,
    Close,
    Comma,
}

fn tokenize(text: &str) -> Result<(Vec<(Tok, Pos)>, Pos)> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1, 1);
    macro_rules! bump {
        () => {{
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                col = 1;
            } else if c.is_some() {
                col += 1;
            }
            c
        }};
    }
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, col };
        match c {
            '#' => {
                while chars.peek().is_some_and(|&c| c != '\n') {
                    bump!();
                }
            }
            c if c.is_whitespace() => {
                bump!();
            }
            '=' | '[' | ']' | ',' => {
                bump!();
                out.push((
                    match c {
                        '=' => Tok::Eq,
                        '[' => Tok::Open,
                        ']' => Tok::Close,
                        _ => Tok::Comma,
                    },
                    pos,
                ));
            }
            '"' => {
                bump!();
                let mut s = String::new();
                loop {
                    match bump!() {
                        None | Some('\n') => return Err(err(pos, "unterminated string")),
                        Some('"') => break,
                        Some('\\') => match bump!() {
                            Some(e @ ('"' | '\\')) => s.push(e),
                            _ => return Err(err(pos, "invalid escape in string")),
                        },
                        Some(ch) => s.push(ch),
                    }
                }
                out.push((Tok::Str(s), pos));
            }
            c if c.is_ascii_digit() => {
                let mut s = String::new();
                while chars.peek().is_some_and(|c| c.is_ascii_digit()) {
                    s.push(bump!().unwrap());
                }
                let v = s
                    .parse()
                    .map_err(|_| err(pos, format!("integer `{s}` is too large")))?;
                out.push((Tok::Int(v), pos));
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut s = String::new();
                while chars
                    .peek()
                    .is_some_and(|&c| c.is_alphanumeric() || c == '_' || c == '-')
                {
                    s.push(bump!().unwrap());
                }
                out.push((Tok::Word(s), pos));
            }
            other => return Err(err(pos, format!("unexpected character `{other}`"))),
        }
    }
    Ok((out, Pos { line, col }))
}

#[derive(Clone, Debug)]
enum Value {
    Int(usize),
    Word(String),
    Str(String),
    List(Vec<(Value, Pos)>),
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    end: Pos,
}

impl Parser {
    fn peek(&self) -> Option<&(Tok, Pos)> {
        self.toks.get(self.at)
    }

    fn pos(&self) -> Pos {
        self.peek().map(|t| t.1).unwrap_or(self.end)
    }

    fn next(&mut self) -> Option<(Tok, Pos)> {
        let t = self.toks.get(self.at).cloned();
        self.at += 1;
        t
    }

    fn value(&mut self) -> Result<(Value, Pos)> {
        let pos = self.pos();
        match self.next() {
            Some((Tok::Int(v), p)) => Ok((Value::Int(v), p)),
            Some((Tok::Word(w), p)) => Ok((Value::Word(w), p)),
            Some((Tok::Str(s), p)) => Ok((Value::Str(s), p)),
            Some((Tok::Open, p)) => {
                let mut items = Vec::new();
                if matches!(self.peek(), Some((Tok::Close, _))) {
                    self.next();
                    return Ok((Value::List(items), p));
                }
                loop {
                    items.push(self.value()?);
                    let pos = self.pos();
                    match self.next() {
                        Some((Tok::Comma, _)) => {
                            if matches!(self.peek(), Some((Tok::Close, _))) {
                                self.next();
                                break;
                            }
                        }
                        Some((Tok::Close, _)) => break,
                        _ => return Err(err(pos, "expected `,` or `]`")),
                    }
                }
                Ok((Value::List(items), p))
            }
            _ => Err(err(pos, "expected a value")),
        }
    }

    fn entries(&mut self) -> Result<BTreeMap<String, (Value, Pos)>> {
        let mut out = BTreeMap::new();
        while let Some((tok, pos)) = self.next() {
            let Tok::Word(key) = tok else {
                return Err(err(pos, "expected a key"));
            };
            let eq_pos = self.pos();
            if !matches!(self.next(), Some((Tok::Eq, _))) {
                return Err(err(eq_pos, format!("expected `=` after `{key}`")));
            }
            let v = self.value()?;
            if out.insert(key.clone(), v).is_some() {
                return Err(err(pos, format!("duplicate key `{key}`")));
            }
        }
        Ok(out)
    }
}

struct Fields {
    map: BTreeMap<String, (Value, Pos)>,
    end: Pos,
}

impl Fields {
    fn take(&mut self, key: &str) -> Option<(Value, Pos)> {
        self.map.remove(key)
    }

    fn require(&mut self, key: &str) -> Result<(Value, Pos)> {
        self.take(key)
            .ok_or_else(|| err(self.end, format!("missing key `{key}`")))
    }

    fn reject_rest(&self) -> Result<()> {
        match self.map.iter().next() {
            Some((k, (_, pos))) => Err(err(*pos, format!("unknown key `{k}`"))),
            None => Ok(()),
        }
    }
}

fn int(v: &(Value, Pos), what: &str) -> Result<usize> {
    match v {
        (Value::Int(i), _) => Ok(*i),
        (_, pos) => Err(err(*pos, format!("`{what}` must be an integer"))),
    }
}

fn element(v: &(Value, Pos), what: &str, size: usize) -> Result<Element> {
    let i = int(v, what)?;
    if i >= size {
        return Err(err(v.1, format!("`{what}` = {i} is outside 0..{size}")));
    }
    Ok(i)
}

fn vector(v: &(Value, Pos), what: &str, size: usize) -> Result<Vec<Element>> {
    let (Value::List(items), pos) = v else {
        return Err(err(v.1, format!("`{what}` must be a list")));
    };
    if items.len() != size {
        return Err(err(
            *pos,
            format!("`{what}` has {} entries, expected {size}", items.len()),
        ));
    }
    items.iter().map(|it| element(it, what, size)).collect()
}

fn matrix(v: &(Value, Pos), what: &str, size: usize) -> Result<Vec<Vec<Element>>> {
    let (Value::List(rows), pos) = v else {
        return Err(err(v.1, format!("`{what}` must be a list of rows")));
    };
    if rows.len() != size {
        return Err(err(
            *pos,
            format!("`{what}` has {} rows, expected {size}", rows.len()),
        ));
    }
    rows.iter()
        .enumerate()
        .map(|(i, row)| match row {
            (Value::List(items), p) if items.len() != size => Err(err(
                *p,
                format!(
                    "`{what}` row {i} has {} entries, expected {size}",
                    items.len()
                ),
            )),
            _ => vector(row, &format!("{what}[{i}]"), size),
        })
        .collect()
}

fn names(v: &(Value, Pos), size: usize) -> Result<Vec<String>> {
    let (Value::List(items), pos) = v else {
        return Err(err(v.1, "`names` must be a list"));
    };
    if items.len() != size {
        return Err(err(
            *pos,
            format!("`names` has {} entries, expected {size}", items.len()),
        ));
    }
    let out: Vec<String> = items
        .iter()
        .map(|it| match it {
            (Value::Str(s) | Value::Word(s), _) => Ok(s.clone()),
            (Value::Int(i), _) => Ok(i.to_string()),
            (_, p) => Err(err(*p, "a name must be a string")),
        })
        .collect::<Result<_>>()?;
    for (i, n) in out.iter().enumerate() {
        if out[..i].contains(n) {
            return Err(err(items[i].1, format!("duplicate name `{n}`")));
        }
    }
    Ok(out)
}

fn fields(text: &str) -> Result<Fields> {
    let (toks, end) = tokenize(text)?;
    let mut p = Parser { toks, at: 0, end };
    let map = p.entries()?;
    Ok(Fields { map, end })
}

/// What a `kind` header announces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Algebra(Class),
    Mv,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Algebra {
        class: Class,
        algebra: FiniteAlgebra,
    },
    Mv(MvAlgebra),
}

pub fn parse(text: &str) -> Result<Document> {
    let mut f = fields(text)?;
    let kind = match f.take("kind") {
        None => Kind::Algebra(Class::Inrs),
        Some((Value::Word(w), pos)) if w == "mv" => {
            let _ = pos;
            Kind::Mv
        }
        Some((Value::Word(w), pos)) => Kind::Algebra(
            w.parse()
                .map_err(|_| err(pos, format!("unknown kind `{w}`")))?,
        ),
        Some((_, pos)) => return Err(err(pos, "`kind` must be a word")),
    };
    let size_v = f.require("size")?;
    let size = int(&size_v, "size")?;
    if size == 0 {
        return Err(err(size_v.1, "`size` must be positive"));
    }
    let names = f.take("names").map(|v| names(&v, size)).transpose()?;
    let zero = element(&f.require("zero")?, "zero", size)?;
    let doc = match kind {
        Kind::Mv => {
            let oplus = matrix(&f.require("oplus")?, "oplus", size)?;
            let neg = vector(&f.require("neg")?, "neg", size)?;
            f.reject_rest()?;
            let mv = MvAlgebra::new(oplus, neg, zero)?;
            Document::Mv(match names {
                Some(n) => mv.with_names(n)?,
                None => mv,
            })
        }
        Kind::Algebra(class) => {
            let one = element(&f.require("one")?, "one", size)?;
            let plus = matrix(&f.require("plus")?, "plus", size)?;
            let times = matrix(&f.require("times")?, "times", size)?;
            let alpha = vector(&f.require("alpha")?, "alpha", size)?;
            f.reject_rest()?;
            let alg = FiniteAlgebra::new(plus, times, alpha, zero, one)?;
            Document::Algebra {
                class,
                algebra: match names {
                    Some(n) => alg.with_names(n)?,
                    None => alg,
                },
            }
        }
    };
    Ok(doc)
}

/// Parses a document that must describe a near semiring.
pub fn parse_algebra(text: &str) -> Result<(Class, FiniteAlgebra)> {
    match parse(text)? {
        Document::Algebra { class, algebra } => Ok((class, algebra)),
        Document::Mv(_) => Err(Error::Usage(
            "expected a near semiring, found `kind = mv`".into(),
        )),
    }
}

pub fn parse_mv(text: &str) -> Result<MvAlgebra> {
    match parse(text)? {
        Document::Mv(mv) => Ok(mv),
        Document::Algebra { .. } => {
            Err(Error::Usage("expected an MV-algebra (`kind = mv`)".into()))
        }
    }
}

/// Parses `map = [..]`; entries are checked against `target_size`.
pub fn parse_map(text: &str, target_size: usize) -> Result<Vec<Element>> {
    let mut f = fields(text)?;
    let v = f.require("map")?;
    f.reject_rest()?;
    let (Value::List(items), _) = &v else {
        return Err(err(v.1, "`map` must be a list"));
    };
    items
        .iter()
        .map(|it| element(it, "map", target_size))
        .collect()
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn write_vector(out: &mut String, key: &str, v: &[Element]) {
    let items: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    let _ = writeln!(out, "{key} = [{}]", items.join(", "));
}

fn write_matrix(out: &mut String, key: &str, rows: &[Vec<Element>]) {
    let indent = " ".repeat(key.len() + 4);
    let _ = write!(out, "{key} = [");
    for (i, row) in rows.iter().enumerate() {
        let items: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        if i > 0 {
            let _ = write!(out, ",\n{indent}");
        }
        let _ = write!(out, "[{}]", items.join(", "));
    }
    out.push_str("]\n");
}

fn write_names(out: &mut String, names: Option<&[String]>) {
    if let Some(names) = names {
        let items: Vec<String> = names.iter().map(|n| quote(n)).collect();
        let _ = writeln!(out, "names = [{}]", items.join(", "));
    }
}

/// Canonical text of a near semiring document.
pub fn serialize_algebra(class: Class, alg: &FiniteAlgebra) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "kind = {class}");
    let _ = writeln!(out, "size = {}", alg.size());
    write_names(&mut out, alg.names());
    let _ = writeln!(out, "zero = {}", alg.zero());
    let _ = writeln!(out, "one = {}", alg.one());
    write_matrix(&mut out, "plus", &alg.plus_rows());
    write_matrix(&mut out, "times", &alg.times_rows());
    write_vector(&mut out, "alpha", alg.alpha_table());
    out
}

pub fn serialize_mv(mv: &MvAlgebra) -> String {
    let mut out = String::new();
    out.push_str("kind = mv\n");
    let _ = writeln!(out, "size = {}", mv.size());
    write_names(&mut out, mv.names());
    let _ = writeln!(out, "zero = {}", mv.zero());
    write_matrix(&mut out, "oplus", &mv.oplus_rows());
    write_vector(&mut out, "neg", mv.neg_table());
    out
}

pub fn serialize(doc: &Document) -> String {
    match doc {
        Document::Algebra { class, algebra } => serialize_algebra(*class, algebra),
        Document::Mv(mv) => serialize_mv(mv),
    }
}

pub fn serialize_map(map: &[Element]) -> String {
    let mut out = String::new();
    write_vector(&mut out, "map", map);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn l3_round_trip() {
        let text = serialize_algebra(Class::LukRs, &corpus::l3());
        assert!(text.contains("names = [\"0\", \"h\", \"1\"]\n"));
        let (class, alg) = parse_algebra(&text).unwrap();
        assert_eq!(class, Class::LukRs);
        assert_eq!(alg, corpus::l3());
        assert_eq!(serialize_algebra(class, &alg), text);
    }

    #[test]
    fn trivial_defaults_to_inrs() {
        let text = "size = 1\nzero = 0\none = 0\nplus = [[0]]\ntimes = [[0]]\nalpha = [0]\n";
        let (class, alg) = parse_algebra(text).unwrap();
        assert_eq!(class, Class::Inrs);
        assert_eq!(alg.size(), 1);
    }

    #[test]
    fn diagnostics_point_at_the_problem() {
        let text = "size = 2\nzero = 0\none = 1\nplus = [[0, 1],\n        [1, 1, 1]]\ntimes = [[0, 0], [0, 1]]\nalpha = [1, 0]\n";
        assert_eq!(
            parse(text).unwrap_err(),
            Error::Parse {
                line: 5,
                col: 9,
                message: "`plus` row 1 has 3 entries, expected 2".into()
            }
        );
        let missing = "size = 2\nzero = 0\none = 1\n";
        assert!(matches!(
            parse(missing),
            Err(Error::Parse { message, .. }) if message == "missing key `plus`"
        ));
        let range = "size = 2\nzero = 0\none = 1\nplus = [[0, 1], [1, 7]]\ntimes = [[0, 0], [0, 1]]\nalpha = [1, 0]";
        assert!(matches!(
            parse(range),
            Err(Error::Parse {
                line: 4,
                col: 21,
                ..
            })
        ));
        assert!(matches!(
            parse("size = 2 size = 3"),
            Err(Error::Parse {
                line: 1,
                col: 10,
                ..
            })
        ));
        assert!(matches!(
            parse("size = 1 @"),
            Err(Error::Parse {
                line: 1,
                col: 10,
                ..
            })
        ));
    }

    #[test]
    fn comments_and_layout_are_ignored() {
        let text = "# chain\nkind=luk-rs size=2 zero=0 one=1 # inline\nplus=[[0,1],[1,1],] times=[[0,0],[0,1]] alpha=[1,0]";
        let (_, alg) = parse_algebra(text).unwrap();
        assert!(alg.same_tables(&corpus::b2()));
    }

    #[test]
    fn mv_documents() {
        let mv = crate::mv::to_mv(&corpus::l3()).unwrap();
        let text = serialize_mv(&mv);
        assert!(text.starts_with("kind = mv\n"));
        assert_eq!(parse_mv(&text).unwrap(), mv);
        assert!(parse_algebra(&text).is_err());
    }

    #[test]
    fn maps() {
        assert_eq!(
            parse_map("map = [0, 2, 1, 3]", 4).unwrap(),
            vec![0, 2, 1, 3]
        );
        assert!(parse_map("map = [0, 4]", 4).is_err());
        assert_eq!(serialize_map(&[1, 0]), "map = [1, 0]\n");
    }
}
