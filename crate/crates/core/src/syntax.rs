//! Text grammar for fields, automorphisms, groups, polynomials, points,
//! matrices and whole sessions.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_arith::{
    fmt_rational, Automorphism, Field, FieldElement, GaloisGroup, GenBox, Interval, Rational,
    Tower, TowerField, Q,
};
use crate::multipoly::{MultiPoly, QPoly, TPoly, Vars};

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(Rational),
    Ident(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Sym(char),
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// Decimal or integer literal as an exact rational.
pub fn parse_number(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b.trim()),
        None => (false, s),
    };
    let q = if let Some((n, d)) = body.split_once('/') {
        let n = parse_number(n)?;
        let d = parse_number(d)?;
        if d.is_zero() {
            return Err(parse_err("zero denominator"));
        }
        n / d
    } else if let Some((a, b)) = body.split_once('.') {
        if a.is_empty() && b.is_empty() {
            return Err(parse_err(format!("bad number {s}")));
        }
        let digits = format!("{a}{b}");
        let n: BigInt = digits.parse().map_err(|_| parse_err(format!("bad number {s}")))?;
        Rational::new(n, BigInt::from(10).pow(b.len() as u32))
    } else {
        let n: BigInt = body.parse().map_err(|_| parse_err(format!("bad number {s}")))?;
        Rational::from_integer(n)
    };
    Ok(if neg { -q } else { q })
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || (c == '.' && cs.get(i + 1).is_some_and(|d| d.is_ascii_digit())) {
            let st = i;
            while i < cs.len() && (cs[i].is_ascii_digit() || cs[i] == '.') {
                i += 1;
            }
            let t: String = cs[st..i].iter().collect();
            out.push(Tok::Num(parse_number(&t)?));
        } else if c.is_alphabetic() || c == '_' {
            let st = i;
            while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(cs[st..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(parse_err(format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
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

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Num(q)) if q.is_integer() => {
                    self.pos += 1;
                    let e: u32 = q
                        .numer()
                        .try_into()
                        .map_err(|_| parse_err("exponent out of range"))?;
                    Ok(Expr::Pow(Box::new(base), e))
                }
                _ => Err(parse_err("exponent must be a nonnegative integer")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(q)) => {
                self.pos += 1;
                Ok(Expr::Num(q))
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(Expr::Ident(s))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(parse_err("missing ')'"));
                }
                Ok(e)
            }
            Some(t) => Err(parse_err(format!("unexpected token {t:?}"))),
            None => Err(parse_err("unexpected end of expression")),
        }
    }
}

pub fn parse_expr(text: &str) -> Result<Expr> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(parse_err("empty expression"));
    }
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(parse_err(format!("trailing input in '{text}'")));
    }
    Ok(e)
}

/// Evaluates `e` in the ring of `template`, resolving identifiers with
/// `resolve`. Division is allowed by nonzero constants only.
pub fn eval_expr<F: Field>(
    e: &Expr,
    template: &MultiPoly<F>,
    resolve: &dyn Fn(&str) -> Option<MultiPoly<F>>,
) -> Result<MultiPoly<F>> {
    Ok(match e {
        Expr::Num(q) => template.constant_like(template.field().from_rational(q)),
        Expr::Ident(s) => resolve(s).ok_or_else(|| parse_err(format!("unknown name '{s}'")))?,
        Expr::Neg(a) => eval_expr(a, template, resolve)?.neg(),
        Expr::Add(a, b) => eval_expr(a, template, resolve)?.try_add(&eval_expr(b, template, resolve)?)?,
        Expr::Sub(a, b) => eval_expr(a, template, resolve)?.try_sub(&eval_expr(b, template, resolve)?)?,
        Expr::Mul(a, b) => eval_expr(a, template, resolve)?.try_mul(&eval_expr(b, template, resolve)?)?,
        Expr::Div(a, b) => {
            let d = eval_expr(b, template, resolve)?;
            if !d.is_constant() {
                return Err(parse_err("division by a non-constant"));
            }
            let c = d.constant_term();
            let inv = template.field().inv(&c).ok_or(Error::DivisionByZero)?;
            eval_expr(a, template, resolve)?.scale(&inv)
        }
        Expr::Pow(a, k) => eval_expr(a, template, resolve)?.pow(*k),
    })
}

fn var_resolver<'a, F: Field>(
    vars: &'a Vars,
    template: &'a MultiPoly<F>,
) -> impl Fn(&str) -> Option<MultiPoly<F>> + 'a {
    move |s| vars.iter().position(|v| v == s).map(|i| template.var_like(i))
}

pub fn parse_qpoly(text: &str, vars: &Vars) -> Result<QPoly> {
    let t = QPoly::zero(Q, vars.clone());
    let r = var_resolver(vars, &t);
    eval_expr(&parse_expr(text)?, &t, &r)
}

/// Polynomial over a tower; generator names denote field constants.
pub fn parse_tpoly(text: &str, vars: &Vars, tower: &Tower) -> Result<TPoly> {
    let t = TPoly::zero(tower.clone(), vars.clone());
    let r = |s: &str| -> Option<TPoly> {
        if let Some(i) = vars.iter().position(|v| v == s) {
            return Some(t.var_like(i));
        }
        tower.generator_index(s).map(|g| t.constant_like(tower.generator_coords(g)))
    };
    eval_expr(&parse_expr(text)?, &t, &r)
}

pub fn parse_element(text: &str, tower: &Tower) -> Result<FieldElement> {
    let vars: Vars = Arc::new(vec![]);
    let p = parse_tpoly(text, &vars, tower)?;
    Ok(FieldElement::from_coords(tower, p.constant_term()))
}

fn parse_interval(s: &str) -> Result<Interval> {
    let s = s.trim();
    let inner = s
        .strip_prefix('[')
        .and_then(|x| x.strip_suffix(']'))
        .ok_or_else(|| parse_err(format!("bad interval '{s}'")))?;
    let (a, b) = inner.split_once(',').ok_or_else(|| parse_err(format!("bad interval '{s}'")))?;
    Ok(Interval::new(parse_number(a)?, parse_number(b)?))
}

/// `[lo,hi]` for a real root or `[a,b]+[c,d]i` for a complex one.
pub fn parse_box(s: &str) -> Result<GenBox> {
    let s = s.trim();
    if let Some(body) = s.strip_suffix('i') {
        let k = body.find("]+[").ok_or_else(|| parse_err(format!("bad complex box '{s}'")))?;
        let re = parse_interval(&body[..=k])?;
        let im = parse_interval(&body[k + 2..])?;
        if !(re.lo.is_zero() && re.hi.is_zero()) {
            return Err(Error::Invalid(format!(
                "complex box '{s}': only purely imaginary roots (real part [0,0]) are supported"
            )));
        }
        Ok(GenBox::Imaginary(im))
    } else {
        Ok(GenBox::Real(parse_interval(s)?))
    }
}

/// `Q` or `Q(a : a^4 - 2 in [1.18,1.20]; i : i^2 + 1 in [0,0]+[0.9,1.1]i)`.
pub fn parse_field(text: &str) -> Result<Tower> {
    let text = text.trim();
    let mut t = TowerField::rationals();
    if text == "Q" {
        return Ok(t);
    }
    let body = text
        .strip_prefix("Q(")
        .and_then(|x| x.strip_suffix(')'))
        .ok_or_else(|| parse_err(format!("bad field '{text}'")))?;
    for clause in body.split(';') {
        let (name, rest) =
            clause.split_once(':').ok_or_else(|| parse_err(format!("bad generator '{clause}'")))?;
        let name = name.trim();
        if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
            return Err(parse_err(format!("bad generator name '{name}'")));
        }
        let (poly, emb) = match rest.split_once(" in ") {
            Some((p, b)) => (p, Some(parse_box(b)?)),
            None => (rest, None),
        };
        let vars: Vars = Arc::new(vec![name.to_string()]);
        let p = parse_tpoly(poly, &vars, &t)?;
        let coeffs: Vec<FieldElement> = (0..=p.degree_in(0))
            .map(|k| {
                FieldElement::from_coords(&t, p.coeff(&crate::multipoly::Monomial(vec![k])))
            })
            .collect();
        t = t.extend(name, &coeffs, emb)?;
    }
    Ok(t)
}

/// `s10 : a -> i*a, i -> i`
pub fn parse_auto(text: &str, tower: &Tower) -> Result<(String, Automorphism)> {
    let (name, body) =
        text.split_once(':').ok_or_else(|| parse_err(format!("bad automorphism '{text}'")))?;
    let name = name.trim().to_string();
    let mut images: Vec<Option<FieldElement>> = vec![None; tower.num_generators()];
    for part in body.split(',') {
        if part.trim().is_empty() {
            continue;
        }
        let (g, img) =
            part.split_once("->").ok_or_else(|| parse_err(format!("bad image '{part}'")))?;
        let gi = tower
            .generator_index(g.trim())
            .ok_or_else(|| parse_err(format!("unknown generator '{}'", g.trim())))?;
        images[gi] = Some(parse_element(img, tower)?);
    }
    let images: Vec<FieldElement> = images
        .into_iter()
        .enumerate()
        .map(|(i, x)| x.unwrap_or_else(|| FieldElement::generator(tower, i)))
        .collect();
    Ok((name, Automorphism::new(tower, images)?))
}

fn split_top_commas(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        if c == ',' && depth == 0 {
            out.push(cur.trim().to_string());
            cur.clear();
        } else {
            cur.push(c);
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

pub fn parse_matrix(text: &str) -> Result<Vec<Vec<Rational>>> {
    let t = text.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|x| x.strip_suffix(']'))
        .ok_or_else(|| parse_err(format!("bad matrix '{t}'")))?;
    let mut rows = Vec::new();
    for r in split_top_commas(inner) {
        let body = r
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .ok_or_else(|| parse_err(format!("bad matrix row '{r}'")))?;
        rows.push(split_top_commas(body).iter().map(|x| parse_number(x)).collect::<Result<Vec<_>>>()?);
    }
    if rows.windows(2).any(|w| w[0].len() != w[1].len()) {
        return Err(Error::Shape("ragged matrix".into()));
    }
    Ok(rows)
}

pub fn fmt_matrix(m: &[Vec<Rational>]) -> String {
    let rows: Vec<String> = m
        .iter()
        .map(|r| format!("[{}]", r.iter().map(fmt_rational).collect::<Vec<_>>().join(",")))
        .collect();
    format!("[{}]", rows.join(","))
}

/// How a group was declared.
#[derive(Debug, Clone, PartialEq)]
pub enum GroupDecl {
    List(Vec<String>),
    Generated(Vec<String>),
}

#[derive(Debug, Clone)]
pub struct Session {
    pub field_text: Option<String>,
    pub tower: Tower,
    pub vars: Vars,
    pub autos: Vec<(String, Automorphism, String)>,
    pub groups: Vec<(String, GaloisGroup, GroupDecl)>,
    pub polys: Vec<(String, TPoly)>,
    pub points: Vec<(String, Vec<FieldElement>)>,
    pub matrices: Vec<(String, Vec<Vec<Rational>>)>,
    pub options: BTreeMap<String, String>,
}

fn x_index(name: &str) -> Option<usize> {
    name.strip_prefix('x').and_then(|d| d.parse::<usize>().ok()).filter(|&k| k >= 1)
}

fn max_x_index(e: &Expr) -> usize {
    match e {
        Expr::Num(_) => 0,
        Expr::Ident(s) => x_index(s).unwrap_or(0),
        Expr::Neg(a) | Expr::Pow(a, _) => max_x_index(a),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
            max_x_index(a).max(max_x_index(b))
        }
    }
}

fn binding(rest: &str, what: &str) -> Result<(String, String)> {
    let (n, v) = rest.split_once('=').ok_or_else(|| parse_err(format!("{what}: missing '='")))?;
    let n = n.trim();
    if n.is_empty() || !n.chars().all(|c| c.is_alphanumeric() || c == '_') {
        return Err(parse_err(format!("{what}: bad name '{n}'")));
    }
    Ok((n.to_string(), v.trim().to_string()))
}

impl Session {
    pub fn empty() -> Session {
        Session {
            field_text: None,
            tower: TowerField::rationals(),
            vars: crate::multipoly::xvars(1),
            autos: vec![],
            groups: vec![],
            polys: vec![],
            points: vec![],
            matrices: vec![],
            options: BTreeMap::new(),
        }
    }

    /// Parses a session: one declaration per line; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Session> {
        let mut s = Session::empty();
        let lines: Vec<(usize, String)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim().to_string()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        let mut names = std::collections::BTreeSet::new();
        let mut claim = |n: &str, line: usize| -> Result<()> {
            if !names.insert(n.to_string()) {
                return Err(parse_err(format!("line {line}: duplicate name '{n}'")));
            }
            Ok(())
        };
        // variables first: explicit option or the largest xk in use
        let mut nvars = 0usize;
        let mut explicit_vars: Option<Vec<String>> = None;
        for (_, l) in &lines {
            if let Some(rest) = l.strip_prefix("option ") {
                let (k, v) = rest.trim().split_once(' ').unwrap_or((rest.trim(), ""));
                if k == "vars" {
                    let v = v.trim();
                    if let Ok(n) = v.parse::<usize>() {
                        nvars = nvars.max(n);
                    } else {
                        explicit_vars = Some(v.split(',').map(|x| x.trim().to_string()).collect());
                    }
                }
            } else if let Some(rest) = l.strip_prefix("poly ") {
                if let Ok((_, v)) = binding(rest, "poly") {
                    if let Ok(e) = parse_expr(&v) {
                        nvars = nvars.max(max_x_index(&e));
                    }
                }
            }
        }
        s.vars = match explicit_vars {
            Some(v) => Arc::new(v),
            None => crate::multipoly::xvars(nvars.max(1)),
        };
        for (ln, l) in &lines {
            let ctx = |e: Error| match e {
                Error::Parse(m) => Error::Parse(format!("line {ln}: {m}")),
                other => other,
            };
            let (kw, rest) = l.split_once(' ').unwrap_or((l.as_str(), ""));
            match kw {
                "field" => {
                    if s.field_text.is_some() {
                        return Err(parse_err(format!("line {ln}: second field declaration")));
                    }
                    s.tower = parse_field(rest).map_err(ctx)?;
                    s.field_text = Some(s.tower.describe());
                }
                "auto" => {
                    let (n, a) = parse_auto(rest, &s.tower).map_err(ctx)?;
                    claim(&n, *ln)?;
                    let body = rest.split_once(':').unwrap().1.trim().to_string();
                    s.autos.push((n, a, body));
                }
                "group" | "subgroup" => {
                    let (n, v) = binding(rest, "group").map_err(ctx)?;
                    claim(&n, *ln)?;
                    let galois = kw == "group";
                    let (decl, names) = if let Some(inner) =
                        v.strip_prefix("generated(").and_then(|x| x.strip_suffix(')'))
                    {
                        let ns = split_top_commas(inner);
                        (GroupDecl::Generated(ns.clone()), ns)
                    } else {
                        let ns = split_top_commas(&v);
                        (GroupDecl::List(ns.clone()), ns)
                    };
                    let mut elems = Vec::new();
                    for nm in &names {
                        let a = s
                            .autos
                            .iter()
                            .find(|(an, _, _)| an == nm)
                            .ok_or_else(|| parse_err(format!("line {ln}: unknown automorphism '{nm}'")))?;
                        elems.push(a.1.clone());
                    }
                    let g = match &decl {
                        GroupDecl::List(_) => GaloisGroup::verify_named(elems, names.clone(), galois)?,
                        GroupDecl::Generated(_) => GaloisGroup::generated_by(&elems, galois)?,
                    };
                    s.groups.push((n, g, decl));
                }
                "poly" => {
                    let (n, v) = binding(rest, "poly").map_err(ctx)?;
                    claim(&n, *ln)?;
                    let t = TPoly::zero(s.tower.clone(), s.vars.clone());
                    let polys = &s.polys;
                    let tower = &s.tower;
                    let vars = &s.vars;
                    let r = |id: &str| -> Option<TPoly> {
                        if let Some(i) = vars.iter().position(|v| v == id) {
                            return Some(t.var_like(i));
                        }
                        if let Some(g) = tower.generator_index(id) {
                            return Some(t.constant_like(tower.generator_coords(g)));
                        }
                        polys.iter().find(|(pn, _)| pn == id).map(|(_, p)| p.clone())
                    };
                    let p = eval_expr(&parse_expr(&v).map_err(ctx)?, &t, &r).map_err(ctx)?;
                    s.polys.push((n, p));
                }
                "point" => {
                    let (n, v) = binding(rest, "point").map_err(ctx)?;
                    claim(&n, *ln)?;
                    let inner = v
                        .strip_prefix('(')
                        .and_then(|x| x.strip_suffix(')'))
                        .ok_or_else(|| parse_err(format!("line {ln}: point must be '(e, ...)'")))?;
                    let coords = split_top_commas(inner)
                        .iter()
                        .map(|e| parse_element(e, &s.tower))
                        .collect::<Result<Vec<_>>>()
                        .map_err(ctx)?;
                    s.points.push((n, coords));
                }
                "matrix" => {
                    let (n, v) = binding(rest, "matrix").map_err(ctx)?;
                    claim(&n, *ln)?;
                    s.matrices.push((n, parse_matrix(&v).map_err(ctx)?));
                }
                "option" => {
                    let (k, v) = rest.trim().split_once(' ').unwrap_or((rest.trim(), ""));
                    s.options.insert(k.to_string(), v.trim().to_string());
                }
                _ => return Err(parse_err(format!("line {ln}: unknown declaration '{kw}'"))),
            }
        }
        Ok(s)
    }

    pub fn poly(&self, name: &str) -> Result<&TPoly> {
        self.polys
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, p)| p)
            .ok_or_else(|| Error::Invalid(format!("no polynomial named '{name}'")))
    }

    pub fn point(&self, name: &str) -> Result<&[FieldElement]> {
        self.points
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, p)| p.as_slice())
            .ok_or_else(|| Error::Invalid(format!("no point named '{name}'")))
    }

    pub fn matrix(&self, name: &str) -> Result<&[Vec<Rational>]> {
        self.matrices
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, p)| p.as_slice())
            .ok_or_else(|| Error::Invalid(format!("no matrix named '{name}'")))
    }

    pub fn group(&self, name: Option<&str>) -> Result<GaloisGroup> {
        match name {
            Some(n) => self
                .groups
                .iter()
                .find(|(g, _, _)| g == n)
                .map(|(_, g, _)| g.clone())
                .ok_or_else(|| Error::Invalid(format!("no group named '{n}'"))),
            None => Ok(self
                .groups
                .first()
                .map(|(_, g, _)| g.clone())
                .unwrap_or_else(|| GaloisGroup::trivial(&self.tower))),
        }
    }

    pub fn option(&self, key: &str) -> Option<&str> {
        self.options.get(key).map(|s| s.as_str())
    }

    /// Canonical text; parsing it reproduces the session.
    pub fn to_text(&self) -> String {
        let mut out = Vec::new();
        if self.field_text.is_some() {
            out.push(format!("field {}", self.tower.describe()));
        }
        for (k, v) in &self.options {
            out.push(format!("option {k} {v}"));
        }
        for (n, _, body) in &self.autos {
            out.push(format!("auto {n} : {body}"));
        }
        for (n, _, decl) in &self.groups {
            match decl {
                GroupDecl::List(ns) => out.push(format!("group {n} = {}", ns.join(", "))),
                GroupDecl::Generated(ns) => {
                    out.push(format!("group {n} = generated({})", ns.join(", ")))
                }
            }
        }
        for (n, p) in &self.polys {
            out.push(format!("poly {n} = {}", p.to_text()));
        }
        for (n, p) in &self.points {
            let cs: Vec<String> = p.iter().map(|x| x.to_string()).collect();
            out.push(format!("point {n} = ({})", cs.join(", ")));
        }
        for (n, m) in &self.matrices {
            out.push(format!("matrix {n} = {}", fmt_matrix(m)));
        }
        out.join("\n") + "\n"
    }
}

/// Polynomial over ℚ when the tower coefficients are rational.
pub fn rational_or_err(p: &TPoly) -> Result<QPoly> {
    p.to_rational().ok_or_else(|| Error::NotRational(p.to_text()))
}

pub fn one_q() -> Rational {
    Rational::one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::xvars;

    #[test]
    fn numbers() {
        assert_eq!(parse_number("1.18").unwrap(), Rational::new(118.into(), 100.into()));
        assert_eq!(parse_number("-3/4").unwrap(), Rational::new((-3).into(), 4.into()));
    }

    #[test]
    fn polynomial_round_trip() {
        let v = xvars(3);
        for s in ["x1^4 - 4*x1^2*x2^2 + 8*x1*x2*x3^2 + 4*x2^4 - 2*x3^4", "-1/2*x1 + 3", "0"] {
            assert_eq!(parse_qpoly(s, &v).unwrap().to_text(), s);
        }
    }

    #[test]
    fn field_and_automorphism() {
        let t = parse_field("Q(a : a^4 - 2 in [1.18,1.20]; i : i^2 + 1 in [0,0]+[0.9,1.1]i)").unwrap();
        assert_eq!(t.dim(), 8);
        let (_, s) = parse_auto("s10 : a -> i*a, i -> i", &t).unwrap();
        let a = parse_element("a^2", &t).unwrap();
        assert_eq!(s.apply(&a).unwrap(), parse_element("-a^2", &t).unwrap());
        assert_eq!(parse_field(&format!("{}", t.describe())).unwrap().describe(), t.describe());
    }
}
