//! Presentation files.
//!
//! ```text
//! field q;                      # optional: q or p=PRIME
//! bound 8;                      # optional default bound
//! hopf GL11 {
//!   even a inv, d inv;          # `weight N` may follow a name
//!   odd b, g;
//!   relations ...;              # optional, comma separated
//!   coproduct { a = a(x)a + b(x)g; ... }
//!   counit { a = 1; ... }
//!   antipode auto;              # or antipode { a = ...; ... }
//! }
//! sub Borel of GL11 { kill g; }
//! ```
//!
//! Expressions are sums of terms; a term is a coefficient times tensor slots
//! separated by `(x)`; a slot is a product of factors `name`, `name^k`,
//! integers, fractions `p/q` and parenthesized slot expressions.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::Error;

/// Ordered factors of one tensor slot.
pub type Slot = Vec<(String, i64)>;

/// A fully expanded expression: tensor slots ↦ coefficient. Factor order is
/// kept as written, so odd signs are resolved only when building elements.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RawExpr {
    pub terms: BTreeMap<Vec<Slot>, BigRational>,
}

impl RawExpr {
    pub fn constant(c: BigRational, slots: usize) -> RawExpr {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![Vec::new(); slots], c);
        }
        RawExpr { terms }
    }

    /// Number of tensor slots (1 for plain elements); 0 for the zero sum.
    pub fn slots(&self) -> usize {
        self.terms.keys().next().map(|k| k.len()).unwrap_or(0)
    }

    fn add(&mut self, other: &RawExpr, sign: &BigRational) {
        for (k, c) in &other.terms {
            let e = self.terms.entry(k.clone()).or_insert_with(BigRational::zero);
            *e += c * sign;
            if e.is_zero() {
                self.terms.remove(k);
            }
        }
    }

    /// Slot-wise product (same number of slots).
    fn mul(&self, other: &RawExpr) -> RawExpr {
        let mut out = RawExpr::default();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let k: Vec<Slot> = ka.iter().zip(kb).map(|(a, b)| a.iter().chain(b).cloned().collect()).collect();
                out.add(&RawExpr { terms: BTreeMap::from([(k, ca * cb)]) }, &BigRational::one());
            }
        }
        out
    }

    /// Concatenation of slots: self (x) other.
    fn tensor(&self, other: &RawExpr) -> RawExpr {
        let mut out = RawExpr::default();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let k: Vec<Slot> = ka.iter().chain(kb).cloned().collect();
                out.add(&RawExpr { terms: BTreeMap::from([(k, ca * cb)]) }, &BigRational::one());
            }
        }
        out
    }

    pub fn generators(&self) -> impl Iterator<Item = &str> {
        self.terms.keys().flat_map(|k| k.iter().flat_map(|s| s.iter().map(|(n, _)| n.as_str())))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenDecl {
    pub name: String,
    pub invertible: bool,
    pub weight: u32,
}

/// `name = expr;` with the position of `name`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clause {
    pub name: String,
    pub expr: RawExpr,
    pub pos: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Positioned {
    pub expr: RawExpr,
    pub pos: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfBlock {
    pub name: String,
    pub pos: (usize, usize),
    pub even: Vec<GenDecl>,
    pub odd: Vec<GenDecl>,
    pub relations: Vec<Positioned>,
    pub coproduct: Vec<Clause>,
    pub counit: Vec<Clause>,
    /// `None` for `antipode auto`.
    pub antipode: Option<Vec<Clause>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubBlock {
    pub name: String,
    pub parent: String,
    pub pos: (usize, usize),
    pub kill: Vec<Positioned>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PresentationFile {
    pub field: Option<String>,
    pub bound: Option<u32>,
    pub hopfs: Vec<HopfBlock>,
    pub subs: Vec<SubBlock>,
}

impl PresentationFile {
    pub fn hopf(&self, name: &str) -> Option<&HopfBlock> {
        self.hopfs.iter().find(|h| h.name == name)
    }

    pub fn sub(&self, name: &str) -> Option<&SubBlock> {
        self.subs.iter().find(|s| s.name == name)
    }
}

const KEYWORDS: &[&str] = &[
    "hopf", "sub", "of", "even", "odd", "inv", "weight", "relations", "coproduct", "counit", "antipode", "auto", "kill",
    "field", "bound",
];

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
    Tensor,
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, Error> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c == '(' && chars.get(i + 1) == Some(&'x') && chars.get(i + 2) == Some(&')') {
            out.push(Token { tok: Tok::Tensor, line: l0, col: c0 });
            i += 3;
            col += 3;
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - start;
            out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), line: l0, col: c0 });
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            col += i - start;
            let s: String = chars[start..i].iter().collect();
            out.push(Token { tok: Tok::Int(s.parse().unwrap()), line: l0, col: c0 });
            continue;
        }
        if "{};,=+-*^/()".contains(c) {
            out.push(Token { tok: Tok::Sym(c), line: l0, col: c0 });
            i += 1;
            col += 1;
            continue;
        }
        return Err(Error::Parse { line: l0, col: c0, msg: format!("unexpected character '{c}'") });
    }
    out.push(Token { tok: Tok::Eof, line, col });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.at]
    }

    fn pos(&self) -> (usize, usize) {
        (self.peek().line, self.peek().col)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, Error> {
        let t = self.peek();
        Err(Error::Parse { line: t.line, col: t.col, msg: msg.into() })
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn is_sym(&self, c: char) -> bool {
        self.peek().tok == Tok::Sym(c)
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(s) if s == kw)
    }

    fn expect_sym(&mut self, c: char) -> Result<(), Error> {
        if self.is_sym(c) {
            self.next();
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn expect_kw(&mut self, kw: &str) -> Result<(), Error> {
        if self.is_kw(kw) {
            self.next();
            Ok(())
        } else {
            self.err(format!("expected '{kw}'"))
        }
    }

    fn name(&mut self) -> Result<String, Error> {
        match &self.peek().tok {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                let s = s.clone();
                self.next();
                Ok(s)
            }
            Tok::Ident(s) => self.err(format!("'{s}' is a keyword, not a name")),
            _ => self.err("expected a name"),
        }
    }

    fn int(&mut self) -> Result<BigInt, Error> {
        match &self.peek().tok {
            Tok::Int(n) => {
                let n = n.clone();
                self.next();
                Ok(n)
            }
            _ => self.err("expected an integer"),
        }
    }

    fn file(&mut self) -> Result<PresentationFile, Error> {
        let mut f = PresentationFile::default();
        loop {
            if self.peek().tok == Tok::Eof {
                break;
            }
            if self.is_kw("field") {
                self.next();
                let mut s = match &self.peek().tok {
                    Tok::Ident(s) => s.clone(),
                    _ => return self.err("expected 'q' or 'p=PRIME'"),
                };
                self.next();
                if self.is_sym('=') {
                    self.next();
                    s = format!("{s}={}", self.int()?);
                }
                f.field = Some(s);
                self.expect_sym(';')?;
            } else if self.is_kw("bound") {
                self.next();
                let (line, col) = self.pos();
                let n = self.int()?;
                f.bound = Some(u32::try_from(n).map_err(|_| Error::Parse { line, col, msg: "bound out of range".into() })?);
                self.expect_sym(';')?;
            } else if self.is_kw("hopf") {
                let h = self.hopf()?;
                if f.hopf(&h.name).is_some() || f.sub(&h.name).is_some() {
                    return Err(Error::Parse { line: h.pos.0, col: h.pos.1, msg: format!("duplicate name '{}'", h.name) });
                }
                f.hopfs.push(h);
            } else if self.is_kw("sub") {
                let s = self.sub()?;
                if f.hopf(&s.name).is_some() || f.sub(&s.name).is_some() {
                    return Err(Error::Parse { line: s.pos.0, col: s.pos.1, msg: format!("duplicate name '{}'", s.name) });
                }
                if f.hopf(&s.parent).is_none() {
                    return Err(Error::Parse { line: s.pos.0, col: s.pos.1, msg: format!("unknown hopf block '{}'", s.parent) });
                }
                f.subs.push(s);
            } else {
                return self.err("expected 'hopf', 'sub', 'field' or 'bound'");
            }
        }
        Ok(f)
    }

    fn gen_list(&mut self, allow_inv: bool, taken: &[GenDecl]) -> Result<Vec<GenDecl>, Error> {
        let mut out: Vec<GenDecl> = Vec::new();
        loop {
            let (line, col) = self.pos();
            let name = self.name()?;
            if taken.iter().chain(&out).any(|g| g.name == name) {
                return Err(Error::Parse { line, col, msg: format!("duplicate generator '{name}'") });
            }
            let mut g = GenDecl { name, invertible: false, weight: 1 };
            loop {
                if self.is_kw("inv") {
                    if !allow_inv {
                        return self.err("only even generators can be invertible");
                    }
                    self.next();
                    g.invertible = true;
                } else if self.is_kw("weight") {
                    self.next();
                    let w = self.int()?;
                    g.weight = match u32::try_from(w) {
                        Ok(w) if w > 0 => w,
                        _ => return self.err("weights are positive integers"),
                    };
                } else {
                    break;
                }
            }
            out.push(g);
            if self.is_sym(',') {
                self.next();
            } else {
                break;
            }
        }
        self.expect_sym(';')?;
        Ok(out)
    }

    fn clauses(&mut self) -> Result<Vec<Clause>, Error> {
        self.expect_sym('{')?;
        let mut out = Vec::new();
        while !self.is_sym('}') {
            let pos = self.pos();
            let name = self.name()?;
            self.expect_sym('=')?;
            let expr = self.expr()?;
            self.expect_sym(';')?;
            out.push(Clause { name, expr, pos });
        }
        self.next();
        Ok(out)
    }

    fn expr_list(&mut self) -> Result<Vec<Positioned>, Error> {
        let mut out = Vec::new();
        loop {
            let pos = self.pos();
            let expr = self.expr()?;
            out.push(Positioned { expr, pos });
            if self.is_sym(',') {
                self.next();
            } else {
                break;
            }
        }
        self.expect_sym(';')?;
        Ok(out)
    }

    fn hopf(&mut self) -> Result<HopfBlock, Error> {
        let pos = self.pos();
        self.expect_kw("hopf")?;
        let name = self.name()?;
        self.expect_sym('{')?;
        let mut h = HopfBlock {
            name,
            pos,
            even: Vec::new(),
            odd: Vec::new(),
            relations: Vec::new(),
            coproduct: Vec::new(),
            counit: Vec::new(),
            antipode: None,
        };
        let mut seen_antipode = false;
        while !self.is_sym('}') {
            if self.is_kw("even") {
                self.next();
                let taken: Vec<GenDecl> = h.even.iter().chain(&h.odd).cloned().collect();
                h.even.extend(self.gen_list(true, &taken)?);
            } else if self.is_kw("odd") {
                self.next();
                let taken: Vec<GenDecl> = h.even.iter().chain(&h.odd).cloned().collect();
                h.odd.extend(self.gen_list(false, &taken)?);
            } else if self.is_kw("relations") {
                self.next();
                h.relations.extend(self.expr_list()?);
            } else if self.is_kw("coproduct") {
                self.next();
                h.coproduct.extend(self.clauses()?);
            } else if self.is_kw("counit") {
                self.next();
                h.counit.extend(self.clauses()?);
            } else if self.is_kw("antipode") {
                if seen_antipode {
                    return self.err("antipode given twice");
                }
                seen_antipode = true;
                self.next();
                if self.is_kw("auto") {
                    self.next();
                    if self.is_sym(';') {
                        self.next();
                    }
                } else {
                    h.antipode = Some(self.clauses()?);
                }
            } else {
                return self.err("expected 'even', 'odd', 'relations', 'coproduct', 'counit', 'antipode' or '}'");
            }
        }
        self.next();
        if !seen_antipode {
            return Err(Error::Parse { line: pos.0, col: pos.1, msg: format!("hopf block '{}' has no antipode clause", h.name) });
        }
        Ok(h)
    }

    fn sub(&mut self) -> Result<SubBlock, Error> {
        let pos = self.pos();
        self.expect_kw("sub")?;
        let name = self.name()?;
        self.expect_kw("of")?;
        let parent = self.name()?;
        self.expect_sym('{')?;
        let mut kill = Vec::new();
        while !self.is_sym('}') {
            self.expect_kw("kill")?;
            kill.extend(self.expr_list()?);
        }
        self.next();
        Ok(SubBlock { name, parent, pos, kill })
    }

    /// expr := ['-'] term (('+'|'-') term)*
    fn expr(&mut self) -> Result<RawExpr, Error> {
        let mut sign = BigRational::one();
        if self.is_sym('-') {
            self.next();
            sign = -sign;
        } else if self.is_sym('+') {
            self.next();
        }
        let mut acc = RawExpr::default();
        let first = self.term()?;
        let slots = first.slots();
        acc.add(&first, &sign);
        loop {
            let pos = self.pos();
            let s = if self.is_sym('+') {
                BigRational::one()
            } else if self.is_sym('-') {
                -BigRational::one()
            } else {
                break;
            };
            self.next();
            let t = self.term()?;
            if slots != 0 && t.slots() != 0 && t.slots() != slots {
                return Err(Error::Parse { line: pos.0, col: pos.1, msg: "terms have different numbers of tensor factors".into() });
            }
            acc.add(&t, &s);
        }
        Ok(acc)
    }

    /// term := slot ('(x)' slot)*
    fn term(&mut self) -> Result<RawExpr, Error> {
        let mut t = self.slot()?;
        while self.peek().tok == Tok::Tensor {
            self.next();
            let s = self.slot()?;
            t = t.tensor(&s);
        }
        Ok(t)
    }

    /// slot := factor ('*' factor)*
    fn slot(&mut self) -> Result<RawExpr, Error> {
        let mut t = self.factor()?;
        while self.is_sym('*') {
            self.next();
            let f = self.factor()?;
            t = t.mul(&f);
        }
        Ok(t)
    }

    fn factor(&mut self) -> Result<RawExpr, Error> {
        match self.peek().tok.clone() {
            Tok::Ident(_) => {
                let name = self.name()?;
                let mut exp: i64 = 1;
                if self.is_sym('^') {
                    self.next();
                    let neg = if self.is_sym('-') {
                        self.next();
                        true
                    } else {
                        false
                    };
                    let n = self.int()?;
                    let n = i64::try_from(n).map_err(|_| Error::Parse { line: 0, col: 0, msg: "exponent too large".into() })?;
                    exp = if neg { -n } else { n };
                }
                if exp == 0 {
                    return Ok(RawExpr::constant(BigRational::one(), 1));
                }
                Ok(RawExpr { terms: BTreeMap::from([(vec![vec![(name, exp)]], BigRational::one())]) })
            }
            Tok::Int(n) => {
                self.next();
                let mut q = BigRational::from_integer(n);
                if self.is_sym('/') {
                    self.next();
                    let d = self.int()?;
                    if d.is_zero() {
                        return self.err("division by zero");
                    }
                    q /= BigRational::from_integer(d);
                }
                Ok(RawExpr::constant(q, 1))
            }
            Tok::Sym('(') => {
                self.next();
                let pos = self.pos();
                let e = self.expr()?;
                if e.slots() > 1 {
                    return Err(Error::Parse { line: pos.0, col: pos.1, msg: "tensor products cannot be parenthesized".into() });
                }
                self.expect_sym(')')?;
                if e.terms.is_empty() {
                    return Ok(RawExpr::default());
                }
                Ok(e)
            }
            _ => self.err("expected a generator, a number or '('"),
        }
    }
}

pub fn parse_presentation(text: &str) -> Result<PresentationFile, Error> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0 };
    p.file()
}

/// Parses a standalone expression (for `--chart` and tests).
pub fn parse_expr(text: &str) -> Result<RawExpr, Error> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0 };
    let e = p.expr()?;
    if p.peek().tok != Tok::Eof {
        return p.err("unexpected input after expression");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tensor_token_and_signs() {
        let e = parse_expr("a(x)a + b(x)g - 2*a").unwrap_err();
        assert!(matches!(e, Error::Parse { .. }));
        let e = parse_expr("a(x)a + b(x)g").unwrap();
        assert_eq!(e.slots(), 2);
        assert_eq!(e.terms.len(), 2);
    }

    #[test]
    fn expansion_keeps_factor_order() {
        let e = parse_expr("(b + g)*(b - g)").unwrap();
        // b*b - b*g + g*b - g*g, no simplification of odd products
        assert_eq!(e.terms.len(), 4);
    }

    #[test]
    fn error_positions() {
        let text = "hopf G {\n  even t inv;\n  coproduct { t = t(x)t; }\n  counit { t = 1 }\n  antipode auto;\n}";
        match parse_presentation(text) {
            Err(Error::Parse { line, col, .. }) => assert_eq!((line, col), (4, 18)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn keywords_are_not_names() {
        assert!(parse_presentation("hopf G { even inv; }").is_err());
    }
}
