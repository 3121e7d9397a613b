use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::{fmt_rational, rat, CoeffDisplay, Field, Rational, Q};
use super::interval::Interval;
use super::linalg::{solve, Span};
use crate::error::{Error, Result};
use crate::multipoly::UniPoly;

/// Declared embedding of one generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GenBox {
    /// A real root inside the interval.
    Real(Interval),
    /// A purely imaginary root `i·y` with `y` inside the interval.
    Imaginary(Interval),
}

#[derive(Debug, Clone)]
pub(crate) struct RefBox {
    imaginary: bool,
    iv: Interval,
    /// Sign of the bisection test function at `iv.lo`.
    sign_lo: i8,
}

/// Working copy of refined generator boxes.
#[derive(Debug, Clone)]
pub struct Boxes(pub(crate) Vec<RefBox>);

impl Boxes {
    pub fn interval(&self, i: usize) -> &Interval {
        &self.0[i].iv
    }
}

/// A finite extension of ℚ given by a chain of monic minimal polynomials.
///
/// Elements are stored densely in the monomial basis `γ₁^e₁ ⋯ γ_k^e_k`,
/// `e_i < d_i`, with index `Σ e_i·stride_i` where `stride_1 = 1`.
pub struct TowerField {
    names: Vec<String>,
    degrees: Vec<usize>,
    strides: Vec<usize>,
    /// `minpolys[i][j]`: coefficient of `t^j` (j < d_i) as sub-tower coordinates.
    minpolys: Vec<Vec<Vec<Rational>>>,
    declared: Vec<Option<GenBox>>,
    refined: Option<Boxes>,
    imaginary: Vec<bool>,
    warnings: Vec<String>,
}

impl fmt::Debug for TowerField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TowerField({})", self.describe())
    }
}

impl PartialEq for TowerField {
    fn eq(&self, o: &Self) -> bool {
        self.names == o.names && self.minpolys == o.minpolys && self.declared == o.declared
    }
}

impl TowerField {
    /// The trivial tower ℚ.
    pub fn rationals() -> Arc<TowerField> {
        Arc::new(TowerField {
            names: vec![],
            degrees: vec![],
            strides: vec![1],
            minpolys: vec![],
            declared: vec![],
            refined: Some(Boxes(vec![])),
            imaginary: vec![],
            warnings: vec![],
        })
    }

    /// Adjoins a root of `Σ coeffs[j] t^j` (coefficients in `self`, leading
    /// coefficient nonzero, degree at least 2).
    pub fn extend(
        self: &Arc<Self>,
        name: &str,
        coeffs: &[FieldElement],
        embedding: Option<GenBox>,
    ) -> Result<Arc<TowerField>> {
        if self.names.iter().any(|n| n == name) {
            return Err(Error::InvalidTower(format!("duplicate generator {name}")));
        }
        if coeffs.len() < 3 {
            return Err(Error::InvalidTower(format!(
                "minimal polynomial of {name} must have degree at least 2"
            )));
        }
        for c in coeffs {
            if !self.same(&c.field) {
                return Err(Error::FieldMismatch);
            }
        }
        let lead = coeffs.last().unwrap();
        if lead.is_zero() {
            return Err(Error::InvalidTower("leading coefficient is zero".into()));
        }
        let lead_inv = lead.inv()?;
        let d = coeffs.len() - 1;
        let mono: Vec<Vec<Rational>> =
            coeffs[..d].iter().map(|c| c.mul(&lead_inv).coords).collect();
        let level = self.names.len();
        let mut warnings = self.warnings.clone();
        if level == 0 {
            let mut cs: Vec<Rational> = mono.iter().map(|c| c[0].clone()).collect();
            cs.push(Rational::one());
            let p = UniPoly::new(Q, cs);
            let fac = crate::multipoly::factor::univariate_factor_q(&p);
            if fac.factors.len() != 1 || fac.factors[0].1 != 1 {
                return Err(Error::InvalidTower(format!(
                    "minimal polynomial of {name} is reducible over Q"
                )));
            }
        } else {
            warnings.push(format!("irreducibility of the minimal polynomial of {name} is assumed"));
        }
        let mut names = self.names.clone();
        names.push(name.to_string());
        let mut degrees = self.degrees.clone();
        degrees.push(d);
        let mut strides = self.strides.clone();
        strides.push(strides[level] * d);
        let mut minpolys = self.minpolys.clone();
        minpolys.push(mono);
        let mut declared = self.declared.clone();
        declared.push(embedding.clone());
        let mut imaginary = self.imaginary.clone();
        imaginary.push(matches!(embedding, Some(GenBox::Imaginary(_))));
        let mut t = TowerField {
            names,
            degrees,
            strides,
            minpolys,
            declared,
            refined: None,
            imaginary,
            warnings,
        };
        match (&self.refined, embedding) {
            (Some(prev), Some(b)) => {
                let rb = t.validate_box(level, &b, prev)?;
                let mut boxes = prev.clone();
                boxes.0.push(rb);
                let target = Rational::new(BigInt::one(), BigInt::one() << 40);
                for _ in 0..200 {
                    if boxes.0[level].iv.width() < target {
                        break;
                    }
                    t.bisect(level, &mut boxes);
                }
                t.refined = Some(boxes);
            }
            (None, Some(_)) => {
                return Err(Error::InvalidTower(format!(
                    "{name} has an embedding but a lower generator does not"
                )));
            }
            (_, None) => {
                if t.declared.iter().any(|b| b.is_some()) {
                    t.warnings.push(format!("{name} has no embedding; signs unavailable"));
                }
            }
        }
        Ok(Arc::new(t))
    }

    pub fn dim(&self) -> usize {
        *self.strides.last().unwrap()
    }

    pub fn num_generators(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn declared_embedding(&self, i: usize) -> Option<&GenBox> {
        self.declared[i].as_ref()
    }

    pub fn has_embedding(&self) -> bool {
        self.refined.is_some()
    }

    pub fn is_imaginary_generator(&self, i: usize) -> bool {
        self.imaginary[i]
    }

    /// Minimal polynomial coefficients of generator `i` (monic, low to high,
    /// leading 1 omitted) as sub-tower coordinates.
    pub fn minpoly_coords(&self, i: usize) -> &[Vec<Rational>] {
        &self.minpolys[i]
    }

    /// Index of a generator `i` with `i² + 1 = 0`, if any.
    pub fn imaginary_unit(&self) -> Option<usize> {
        (0..self.names.len()).find(|&j| {
            self.imaginary[j] && {
                let c = &self.minpolys[j][0];
                c[0].is_one() && c[1..].iter().all(|x| x.is_zero())
            }
        })
    }

    pub fn same(&self, other: &TowerField) -> bool {
        std::ptr::eq(self, other) || self == other
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn exponents(&self, idx: usize) -> Vec<usize> {
        (0..self.names.len()).map(|j| (idx / self.strides[j]) % self.degrees[j]).collect()
    }

    pub fn index_of(&self, exps: &[usize]) -> usize {
        exps.iter().zip(&self.strides).map(|(e, s)| e * s).sum()
    }

    fn parity(&self, idx: usize) -> usize {
        self.exponents(idx)
            .iter()
            .zip(&self.imaginary)
            .filter(|(_, &im)| im)
            .map(|(e, _)| *e)
            .sum()
    }

    /// True when the coordinates describe a real number under the embedding.
    pub fn coords_are_real(&self, c: &[Rational]) -> bool {
        c.iter().enumerate().all(|(i, x)| x.is_zero() || self.parity(i) % 2 == 0)
    }

    /// Splits coordinates into even and odd parts with respect to the
    /// imaginary generators (fixed and negated by complex conjugation).
    pub fn parity_split(&self, c: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let mut even = c.to_vec();
        let mut odd = c.to_vec();
        for (i, _) in c.iter().enumerate() {
            if self.parity(i) % 2 == 0 {
                odd[i] = Rational::zero();
            } else {
                even[i] = Rational::zero();
            }
        }
        (even, odd)
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> = (0..self.names.len())
            .map(|i| {
                let mut s = format!("{} : {}", self.names[i], self.minpoly_text(i));
                if let Some(b) = &self.declared[i] {
                    match b {
                        GenBox::Real(iv) => {
                            s.push_str(&format!(
                                " in [{},{}]",
                                fmt_rational(&iv.lo),
                                fmt_rational(&iv.hi)
                            ));
                        }
                        GenBox::Imaginary(iv) => {
                            s.push_str(&format!(
                                " in [0,0]+[{},{}]i",
                                fmt_rational(&iv.lo),
                                fmt_rational(&iv.hi)
                            ));
                        }
                    }
                }
                s
            })
            .collect();
        format!("Q({})", parts.join("; "))
    }

    fn minpoly_text(&self, i: usize) -> String {
        let sub = self.sub_tower_view(i);
        let name = &self.names[i];
        let d = self.degrees[i];
        let mut terms = vec![format!("{name}^{d}")];
        for j in (0..d).rev() {
            let c = &self.minpolys[i][j];
            if c.iter().all(|x| x.is_zero()) {
                continue;
            }
            let disp = sub.coeff_display_coords(c);
            let mon = match j {
                0 => String::new(),
                1 => name.clone(),
                _ => format!("{name}^{j}"),
            };
            let body = if mon.is_empty() {
                if disp.needs_parens {
                    format!("({})", disp.magnitude)
                } else {
                    disp.magnitude.clone()
                }
            } else if disp.magnitude == "1" {
                mon
            } else if disp.needs_parens {
                format!("({})*{mon}", disp.magnitude)
            } else {
                format!("{}*{mon}", disp.magnitude)
            };
            terms.push(format!("{} {}", if disp.negative { "-" } else { "+" }, body));
        }
        terms.join(" ")
    }

    /// Formatting helper restricted to the first `level` generators.
    fn sub_tower_view(&self, level: usize) -> SubView<'_> {
        SubView { t: self, level }
    }

    // ---- arithmetic on coordinates ----

    pub fn zero_coords(&self) -> Vec<Rational> {
        vec![Rational::zero(); self.dim()]
    }

    pub fn one_coords(&self) -> Vec<Rational> {
        let mut v = self.zero_coords();
        v[0] = Rational::one();
        v
    }

    pub fn rational_coords(&self, q: &Rational) -> Vec<Rational> {
        let mut v = self.zero_coords();
        v[0] = q.clone();
        v
    }

    pub fn generator_coords(&self, i: usize) -> Vec<Rational> {
        let mut v = self.zero_coords();
        v[self.strides[i]] = Rational::one();
        v
    }

    /// Pads sub-tower coordinates to full length.
    pub fn embed_coords(&self, c: &[Rational]) -> Vec<Rational> {
        let mut v = c.to_vec();
        v.resize(self.dim(), Rational::zero());
        v
    }

    pub fn add_coords(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub_coords(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn mul_coords(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        self.mul_level(self.names.len(), a, b)
    }

    fn mul_level(&self, level: usize, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        if level == 0 {
            return vec![&a[0] * &b[0]];
        }
        let az = a.iter().all(|x| x.is_zero());
        if az || b.iter().all(|x| x.is_zero()) {
            return vec![Rational::zero(); a.len()];
        }
        let d = self.degrees[level - 1];
        let s = self.strides[level - 1];
        let chunk = |v: &[Rational], j: usize| -> Vec<Rational> { v[j * s..(j + 1) * s].to_vec() };
        let is_zero = |v: &[Rational]| v.iter().all(|x| x.is_zero());
        let ac: Vec<Vec<Rational>> = (0..d).map(|j| chunk(a, j)).collect();
        let bc: Vec<Vec<Rational>> = (0..d).map(|j| chunk(b, j)).collect();
        let mut prod: Vec<Vec<Rational>> = vec![vec![Rational::zero(); s]; 2 * d - 1];
        for i in 0..d {
            if is_zero(&ac[i]) {
                continue;
            }
            for j in 0..d {
                if is_zero(&bc[j]) {
                    continue;
                }
                let p = self.mul_level(level - 1, &ac[i], &bc[j]);
                for (x, y) in prod[i + j].iter_mut().zip(p) {
                    *x += y;
                }
            }
        }
        let m = &self.minpolys[level - 1];
        for top in (d..2 * d - 1).rev() {
            if is_zero(&prod[top]) {
                continue;
            }
            let c = std::mem::take(&mut prod[top]);
            for j in 0..d {
                if is_zero(&m[j]) {
                    continue;
                }
                let p = self.mul_level(level - 1, &c, &m[j]);
                for (x, y) in prod[top - d + j].iter_mut().zip(p) {
                    *x -= y;
                }
            }
            prod[top] = vec![Rational::zero(); s];
        }
        prod.truncate(d);
        prod.into_iter().flatten().collect()
    }

    /// Inverse by solving the multiplication-by-`a` linear system.
    pub fn inv_coords(&self, a: &[Rational]) -> Option<Vec<Rational>> {
        if a.iter().all(|x| x.is_zero()) {
            return None;
        }
        let n = self.dim();
        if n == 1 {
            return Some(vec![a[0].recip()]);
        }
        let cols: Vec<Vec<Rational>> = (0..n)
            .map(|j| {
                let mut e = self.zero_coords();
                e[j] = Rational::one();
                self.mul_coords(a, &e)
            })
            .collect();
        let m: Vec<Vec<Rational>> =
            (0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect();
        solve(&Q, &m, &self.one_coords(), n)
    }

    pub fn pow_coords(&self, a: &[Rational], mut e: u32) -> Vec<Rational> {
        let mut base = a.to_vec();
        let mut acc = self.one_coords();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_coords(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul_coords(&base, &base);
            }
        }
        acc
    }

    pub fn fmt_coords(&self, c: &[Rational]) -> String {
        self.sub_tower_view(self.names.len()).fmt(c)
    }

    pub fn coeff_display_coords(&self, c: &[Rational]) -> CoeffDisplay {
        self.sub_tower_view(self.names.len()).coeff_display_coords(c)
    }

    // ---- embedding ----

    fn validate_box(&self, level: usize, b: &GenBox, prev: &Boxes) -> Result<RefBox> {
        let m = &self.minpolys[level];
        for c in m {
            if !self.coords_are_real(&self.embed_coords(c)) {
                return Err(Error::InvalidTower(format!(
                    "embedding of {} needs real minimal-polynomial coefficients",
                    self.names[level]
                )));
            }
        }
        let mut boxes = prev.clone();
        match b {
            GenBox::Real(iv) => {
                if iv.lo == iv.hi {
                    return Err(Error::InvalidTower("degenerate isolating interval".into()));
                }
                let slo = self.sign_at_retry(level, false, &iv.lo, &mut boxes);
                let shi = self.sign_at_retry(level, false, &iv.hi, &mut boxes);
                let (Some(slo), Some(shi)) = (slo, shi) else {
                    return Err(Error::InvalidTower("cannot decide endpoint signs".into()));
                };
                if slo == 0 || shi == 0 || slo == shi {
                    return Err(Error::InvalidTower(format!(
                        "interval for {} does not bracket a sign change",
                        self.names[level]
                    )));
                }
                let unique = if level == 0 || m.iter().all(|c| c[1..].iter().all(|x| x.is_zero())) {
                    let mut cs: Vec<Rational> = m.iter().map(|c| c[0].clone()).collect();
                    cs.push(Rational::one());
                    let p = UniPoly::new(Q, cs);
                    crate::multipoly::sturm::count_real_roots_q(&p, &iv.lo, &iv.hi) == 1
                } else {
                    let mut ok = false;
                    for _ in 0..30 {
                        if let Some(s) = self.derivative_sign_on(level, iv, &boxes) {
                            ok = s != 0;
                            break;
                        }
                        self.refine_below(level, &mut boxes, 4);
                    }
                    ok
                };
                if !unique {
                    return Err(Error::InvalidTower(format!(
                        "interval for {} does not isolate a single root",
                        self.names[level]
                    )));
                }
                Ok(RefBox { imaginary: false, iv: iv.clone(), sign_lo: slo })
            }
            GenBox::Imaginary(iv) => {
                if self.degrees[level] != 2 || m[1].iter().any(|x| !x.is_zero()) {
                    return Err(Error::InvalidTower(format!(
                        "complex embedding of {} requires a minimal polynomial t^2 + c",
                        self.names[level]
                    )));
                }
                if iv.lo.is_negative() || iv.lo == iv.hi {
                    return Err(Error::InvalidTower("imaginary box must lie in y >= 0".into()));
                }
                let c = &m[0];
                let mut csign = None;
                for _ in 0..60 {
                    csign = self.eval_real(c, &boxes).sign();
                    if csign.is_some() {
                        break;
                    }
                    self.refine_below(level, &mut boxes, 4);
                }
                if csign != Some(1) {
                    return Err(Error::InvalidTower(format!(
                        "{} is not purely imaginary",
                        self.names[level]
                    )));
                }
                let slo = self.sign_at_retry(level, true, &iv.lo, &mut boxes);
                let shi = self.sign_at_retry(level, true, &iv.hi, &mut boxes);
                if slo != Some(-1) || shi != Some(1) {
                    return Err(Error::InvalidTower(format!(
                        "box for {} does not isolate its root",
                        self.names[level]
                    )));
                }
                Ok(RefBox { imaginary: true, iv: iv.clone(), sign_lo: -1 })
            }
        }
    }

    /// Sign of the bisection function of generator `level` at `p`: the
    /// minimal polynomial for real generators, `p² − c` for imaginary ones.
    fn sign_at(&self, level: usize, imaginary: bool, p: &Rational, boxes: &Boxes) -> Option<i8> {
        let m = &self.minpolys[level];
        if imaginary {
            let c = self.eval_real(&m[0], boxes);
            return Interval::point(p * p).sub(&c).sign();
        }
        let d = self.degrees[level];
        let mut acc = Interval::point(num_traits::pow(p.clone(), d));
        let mut pw = Rational::one();
        for c in m.iter() {
            if !c.iter().all(|x| x.is_zero()) {
                acc = acc.add(&self.eval_real(c, boxes).scale(&pw));
            }
            pw *= p;
        }
        acc.sign()
    }

    fn sign_at_retry(
        &self,
        level: usize,
        imaginary: bool,
        p: &Rational,
        boxes: &mut Boxes,
    ) -> Option<i8> {
        for _ in 0..60 {
            if let Some(s) = self.sign_at(level, imaginary, p, boxes) {
                return Some(s);
            }
            if level == 0 {
                return None;
            }
            self.refine_below(level, boxes, 4);
        }
        None
    }

    fn derivative_sign_on(&self, level: usize, iv: &Interval, boxes: &Boxes) -> Option<i8> {
        let m = &self.minpolys[level];
        let d = self.degrees[level];
        let mut acc = iv.pow((d - 1) as u32).scale(&rat(d as i64));
        for (j, c) in m.iter().enumerate().skip(1) {
            if c.iter().all(|x| x.is_zero()) {
                continue;
            }
            let term = self.eval_real(c, boxes).mul(&iv.pow((j - 1) as u32)).scale(&rat(j as i64));
            acc = acc.add(&term);
        }
        acc.sign()
    }

    fn refine_below(&self, level: usize, boxes: &mut Boxes, steps: usize) {
        for l in 0..level {
            for _ in 0..steps {
                self.bisect(l, boxes);
            }
        }
    }

    /// One bisection step on the box of generator `level`.
    pub(crate) fn bisect(&self, level: usize, boxes: &mut Boxes) {
        let (imag, lo, hi, slo) = {
            let b = &boxes.0[level];
            (b.imaginary, b.iv.lo.clone(), b.iv.hi.clone(), b.sign_lo)
        };
        if lo == hi {
            return;
        }
        let w = &hi - &lo;
        let fracs = [(1, 2), (3, 8), (5, 8), (1, 4), (3, 4)];
        for attempt in 0..40 {
            let (n, dn) = fracs[attempt % fracs.len()];
            let p = &lo + &w * Rational::new(n.into(), dn.into());
            let mut sign = None;
            for _ in 0..8 {
                sign = self.sign_at(level, imag, &p, boxes);
                if sign.is_some() || level == 0 {
                    break;
                }
                self.refine_below(level, boxes, 2);
            }
            match sign {
                Some(0) => {
                    boxes.0[level].iv = Interval::point(p);
                    return;
                }
                Some(s) if s == slo => {
                    boxes.0[level].iv.lo = p;
                    return;
                }
                Some(_) => {
                    boxes.0[level].iv.hi = p;
                    return;
                }
                None => continue,
            }
        }
    }

    /// Real and imaginary interval enclosures of an element.
    pub(crate) fn eval_complex(&self, c: &[Rational], boxes: &Boxes) -> (Interval, Interval) {
        let k = self.strides.iter().position(|&s| s == c.len()).expect("coordinate length");
        let mut pows: Vec<Vec<Interval>> = Vec::with_capacity(k);
        for j in 0..k {
            let mut v = vec![Interval::point(Rational::one())];
            for e in 1..self.degrees[j] {
                let next = v[e - 1].mul(&boxes.0[j].iv);
                v.push(next);
            }
            pows.push(v);
        }
        let mut re = Interval::zero();
        let mut im = Interval::zero();
        for (idx, x) in c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let mut mag = Interval::point(x.clone());
            let mut parity = 0;
            for j in 0..k {
                let e = (idx / self.strides[j]) % self.degrees[j];
                if e > 0 {
                    mag = mag.mul(&pows[j][e]);
                    if self.imaginary[j] {
                        parity += e;
                    }
                }
            }
            match parity % 4 {
                0 => re = re.add(&mag),
                1 => im = im.add(&mag),
                2 => re = re.sub(&mag),
                _ => im = im.sub(&mag),
            }
        }
        (re, im)
    }

    pub(crate) fn eval_real(&self, c: &[Rational], boxes: &Boxes) -> Interval {
        self.eval_complex(c, boxes).0
    }

    /// Refined boxes from construction, or an error when some generator has
    /// no embedding.
    pub fn boxes(&self) -> Result<Boxes> {
        self.refined
            .clone()
            .ok_or_else(|| Error::NoEmbedding(self.describe()))
    }

    /// Refines every box once.
    pub fn refine(&self, boxes: &mut Boxes, steps: usize) {
        for l in 0..self.names.len() {
            for _ in 0..steps {
                self.bisect(l, boxes);
            }
        }
    }

    /// Boxes refined until each has width below `2^-bits`.
    pub fn boxes_to_precision(&self, bits: u32) -> Result<Boxes> {
        let mut b = self.boxes()?;
        let target = Rational::new(BigInt::one(), BigInt::one() << bits);
        for l in 0..self.names.len() {
            let mut guard = 0;
            while b.0[l].iv.width() >= target && guard < 4 * bits as usize + 200 {
                self.bisect(l, &mut b);
                guard += 1;
            }
        }
        Ok(b)
    }

    /// Exact sign of a real element.
    pub fn sign_coords(&self, c: &[Rational]) -> Result<i8> {
        if c.iter().all(|x| x.is_zero()) {
            return Ok(0);
        }
        if !self.coords_are_real(c) {
            return Err(Error::NonReal);
        }
        if c[1..].iter().all(|x| x.is_zero()) {
            return Ok(if c[0].is_positive() { 1 } else { -1 });
        }
        let mut boxes = self.boxes()?;
        loop {
            if let Some(s) = self.eval_real(c, &boxes).sign() {
                if s != 0 {
                    return Ok(s);
                }
            }
            self.refine(&mut boxes, 4);
        }
    }

    /// Complex conjugation restricted to the tower (fixes real generators,
    /// negates imaginary ones).
    pub fn complex_conjugation(self: &Arc<Self>) -> Result<Automorphism> {
        if self.refined.is_none() {
            return Err(Error::NoEmbedding(self.describe()));
        }
        let images = (0..self.names.len())
            .map(|i| {
                let g = FieldElement::generator(self, i);
                if self.imaginary[i] {
                    g.neg()
                } else {
                    g
                }
            })
            .collect();
        Automorphism::new(self, images)
    }
}

struct SubView<'a> {
    t: &'a TowerField,
    level: usize,
}

impl SubView<'_> {
    fn terms(&self, c: &[Rational]) -> Vec<(Vec<usize>, Rational)> {
        let t = self.t;
        let mut v: Vec<(Vec<usize>, Rational)> = c
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| {
                let e: Vec<usize> =
                    (0..self.level).map(|j| (i / t.strides[j]) % t.degrees[j]).collect();
                (e, x.clone())
            })
            .collect();
        v.sort_by(|a, b| b.0.cmp(&a.0));
        v
    }

    fn mono(&self, e: &[usize]) -> String {
        let parts: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(j, &k)| {
                if k == 1 {
                    self.t.names[j].clone()
                } else {
                    format!("{}^{}", self.t.names[j], k)
                }
            })
            .collect();
        parts.join("*")
    }

    fn term_body(&self, e: &[usize], q: &Rational) -> String {
        let m = self.mono(e);
        if m.is_empty() {
            fmt_rational(q)
        } else if q.is_one() {
            m
        } else {
            format!("{}*{}", fmt_rational(q), m)
        }
    }

    fn fmt(&self, c: &[Rational]) -> String {
        let terms = self.terms(c);
        if terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (e, q)) in terms.iter().enumerate() {
            let body = self.term_body(e, &q.abs());
            if k == 0 {
                if q.is_negative() {
                    s.push('-');
                }
                s.push_str(&body);
            } else {
                s.push_str(if q.is_negative() { " - " } else { " + " });
                s.push_str(&body);
            }
        }
        s
    }

    fn coeff_display_coords(&self, c: &[Rational]) -> CoeffDisplay {
        let terms = self.terms(c);
        if terms.len() == 1 {
            let (e, q) = &terms[0];
            CoeffDisplay {
                negative: q.is_negative(),
                magnitude: self.term_body(e, &q.abs()),
                needs_parens: false,
            }
        } else {
            CoeffDisplay { negative: false, magnitude: self.fmt(c), needs_parens: terms.len() > 1 }
        }
    }
}

impl Field for Arc<TowerField> {
    type Elem = Vec<Rational>;

    fn zero(&self) -> Vec<Rational> {
        self.zero_coords()
    }
    fn one(&self) -> Vec<Rational> {
        self.one_coords()
    }
    fn is_zero(&self, a: &Vec<Rational>) -> bool {
        a.iter().all(|x| x.is_zero())
    }
    fn is_one(&self, a: &Vec<Rational>) -> bool {
        a[0].is_one() && a[1..].iter().all(|x| x.is_zero())
    }
    fn add(&self, a: &Vec<Rational>, b: &Vec<Rational>) -> Vec<Rational> {
        self.add_coords(a, b)
    }
    fn sub(&self, a: &Vec<Rational>, b: &Vec<Rational>) -> Vec<Rational> {
        self.sub_coords(a, b)
    }
    fn neg(&self, a: &Vec<Rational>) -> Vec<Rational> {
        a.iter().map(|x| -x).collect()
    }
    fn mul(&self, a: &Vec<Rational>, b: &Vec<Rational>) -> Vec<Rational> {
        if b[1..].iter().all(|x| x.is_zero()) {
            return a.iter().map(|x| x * &b[0]).collect();
        }
        if a[1..].iter().all(|x| x.is_zero()) {
            return b.iter().map(|x| x * &a[0]).collect();
        }
        self.mul_coords(a, b)
    }
    fn inv(&self, a: &Vec<Rational>) -> Option<Vec<Rational>> {
        if a[1..].iter().all(|x| x.is_zero()) {
            if a[0].is_zero() {
                return None;
            }
            return Some(self.rational_coords(&a[0].recip()));
        }
        self.inv_coords(a)
    }
    fn from_rational(&self, q: &Rational) -> Vec<Rational> {
        self.rational_coords(q)
    }
    fn to_rational(&self, a: &Vec<Rational>) -> Option<Rational> {
        if a[1..].iter().all(|x| x.is_zero()) {
            Some(a[0].clone())
        } else {
            None
        }
    }
    fn scale(&self, a: &Vec<Rational>, q: &Rational) -> Vec<Rational> {
        a.iter().map(|x| x * q).collect()
    }
    fn same_field(&self, other: &Self) -> bool {
        self.same(other)
    }
    fn degree(&self) -> usize {
        self.dim()
    }
    fn fmt_elem(&self, a: &Vec<Rational>) -> String {
        self.fmt_coords(a)
    }
    fn coeff_display(&self, a: &Vec<Rational>) -> CoeffDisplay {
        self.coeff_display_coords(a)
    }
    fn denominator_lcm(&self, a: &Vec<Rational>) -> BigInt {
        a.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }
}

/// An element of a tower field.
#[derive(Clone)]
pub struct FieldElement {
    field: Arc<TowerField>,
    coords: Vec<Rational>,
}

impl PartialEq for FieldElement {
    fn eq(&self, o: &Self) -> bool {
        self.field.same(&o.field) && self.coords == o.coords
    }
}

impl Eq for FieldElement {}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.fmt_coords(&self.coords))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.fmt_coords(&self.coords))
    }
}

impl FieldElement {
    pub fn from_coords(field: &Arc<TowerField>, coords: Vec<Rational>) -> Self {
        assert_eq!(coords.len(), field.dim(), "coordinate length");
        FieldElement { field: field.clone(), coords }
    }

    pub fn from_rational(field: &Arc<TowerField>, q: Rational) -> Self {
        FieldElement { field: field.clone(), coords: field.rational_coords(&q) }
    }

    pub fn from_int(field: &Arc<TowerField>, n: i64) -> Self {
        Self::from_rational(field, rat(n))
    }

    pub fn zero(field: &Arc<TowerField>) -> Self {
        FieldElement { field: field.clone(), coords: field.zero_coords() }
    }

    pub fn one(field: &Arc<TowerField>) -> Self {
        FieldElement { field: field.clone(), coords: field.one_coords() }
    }

    pub fn generator(field: &Arc<TowerField>, i: usize) -> Self {
        FieldElement { field: field.clone(), coords: field.generator_coords(i) }
    }

    pub fn by_name(field: &Arc<TowerField>, name: &str) -> Option<Self> {
        field.generator_index(name).map(|i| Self::generator(field, i))
    }

    pub fn field(&self) -> &Arc<TowerField> {
        &self.field
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.coords
    }

    /// Nonzero coordinates keyed by basis exponents.
    pub fn terms(&self) -> Vec<(Vec<usize>, Rational)> {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (self.field.exponents(i), x.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|x| x.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.field.is_one(&self.coords)
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.field.to_rational(&self.coords)
    }

    pub fn is_real(&self) -> bool {
        self.field.coords_are_real(&self.coords)
    }

    fn check(&self, o: &FieldElement) -> Result<()> {
        if self.field.same(&o.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn try_add(&self, o: &FieldElement) -> Result<FieldElement> {
        self.check(o)?;
        Ok(FieldElement { field: self.field.clone(), coords: self.field.add_coords(&self.coords, &o.coords) })
    }

    pub fn try_sub(&self, o: &FieldElement) -> Result<FieldElement> {
        self.check(o)?;
        Ok(FieldElement { field: self.field.clone(), coords: self.field.sub_coords(&self.coords, &o.coords) })
    }

    /// Product in canonical form.
    pub fn try_mul(&self, o: &FieldElement) -> Result<FieldElement> {
        self.check(o)?;
        Ok(FieldElement { field: self.field.clone(), coords: Field::mul(&self.field, &self.coords, &o.coords) })
    }

    pub fn add(&self, o: &FieldElement) -> FieldElement {
        self.try_add(o).expect("field mismatch")
    }

    pub fn sub(&self, o: &FieldElement) -> FieldElement {
        self.try_sub(o).expect("field mismatch")
    }

    pub fn mul(&self, o: &FieldElement) -> FieldElement {
        self.try_mul(o).expect("field mismatch")
    }

    pub fn neg(&self) -> FieldElement {
        FieldElement { field: self.field.clone(), coords: self.coords.iter().map(|x| -x).collect() }
    }

    pub fn scale(&self, q: &Rational) -> FieldElement {
        FieldElement { field: self.field.clone(), coords: self.coords.iter().map(|x| x * q).collect() }
    }

    pub fn pow(&self, e: u32) -> FieldElement {
        FieldElement { field: self.field.clone(), coords: self.field.pow_coords(&self.coords, e) }
    }

    /// Multiplicative inverse via the multiplication-by-x linear system.
    pub fn inv(&self) -> Result<FieldElement> {
        Field::inv(&self.field, &self.coords)
            .map(|coords| FieldElement { field: self.field.clone(), coords })
            .ok_or(Error::DivisionByZero)
    }

    pub fn div(&self, o: &FieldElement) -> Result<FieldElement> {
        self.try_mul(&o.inv()?)
    }

    /// Exact sign of a real element under the declared embedding.
    pub fn sign(&self) -> Result<i8> {
        self.field.sign_coords(&self.coords)
    }

    /// Interval enclosures of real and imaginary parts, refined until both
    /// have width below `2^-bits`.
    pub fn enclosure(&self, bits: u32) -> Result<(Interval, Interval)> {
        let mut boxes = self.field.boxes()?;
        let target = Rational::new(BigInt::one(), BigInt::one() << bits);
        loop {
            let (re, im) = self.field.eval_complex(&self.coords, &boxes);
            if re.width() < target && im.width() < target {
                return Ok((re, im));
            }
            self.field.refine(&mut boxes, 8);
        }
    }

    /// Least-degree monic annihilating polynomial over ℚ.
    pub fn minimal_polynomial(&self) -> UniPoly<Q> {
        let n = self.field.dim();
        let mut span = Span::new(Q, n);
        let mut p = FieldElement::one(&self.field);
        loop {
            match span.insert(&p.coords) {
                Ok(()) => p = p.mul(self),
                Err(combo) => {
                    let mut cs: Vec<Rational> = combo.into_iter().map(|c| -c).collect();
                    cs.push(Rational::one());
                    return UniPoly::new(Q, cs);
                }
            }
        }
    }

    /// Complex conjugate under the declared embedding.
    pub fn conj(&self) -> Result<FieldElement> {
        let c = self.field.complex_conjugation()?;
        c.apply(self)
    }
}

impl<'a> Add for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, o: &'a FieldElement) -> FieldElement {
        FieldElement::add(self, o)
    }
}

impl<'a> Sub for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, o: &'a FieldElement) -> FieldElement {
        FieldElement::sub(self, o)
    }
}

impl<'a> Mul for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, o: &'a FieldElement) -> FieldElement {
        FieldElement::mul(self, o)
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::neg(self)
    }
}

pub fn fe_mul(x: &FieldElement, y: &FieldElement) -> Result<FieldElement> {
    x.try_mul(y)
}

pub fn fe_inv(x: &FieldElement) -> Result<FieldElement> {
    x.inv()
}

pub fn fe_sign(x: &FieldElement) -> Result<i8> {
    x.sign()
}

pub fn minimal_polynomial(x: &FieldElement) -> UniPoly<Q> {
    x.minimal_polynomial()
}

/// A field automorphism given by the images of the generators.
#[derive(Clone)]
pub struct Automorphism {
    field: Arc<TowerField>,
    images: Vec<FieldElement>,
    /// Column `j` is the image of basis element `j`.
    matrix: Vec<Vec<Rational>>,
}

impl fmt::Debug for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .field
            .names
            .iter()
            .zip(&self.images)
            .map(|(n, im)| format!("{n} -> {im}"))
            .collect();
        write!(f, "Automorphism({})", parts.join(", "))
    }
}

impl PartialEq for Automorphism {
    fn eq(&self, o: &Self) -> bool {
        self.field.same(&o.field) && self.images == o.images
    }
}

impl Automorphism {
    /// Verifies that each image is a root of the image of its minimal
    /// polynomial.
    pub fn new(field: &Arc<TowerField>, images: Vec<FieldElement>) -> Result<Self> {
        let k = field.num_generators();
        if images.len() != k {
            return Err(Error::InvalidAutomorphism(format!(
                "expected {k} generator images, got {}",
                images.len()
            )));
        }
        for im in &images {
            if !im.field.same(field) {
                return Err(Error::FieldMismatch);
            }
        }
        let n = field.dim();
        let mut matrix: Vec<Vec<Rational>> = vec![field.one_coords()];
        for i in 0..k {
            let s = field.strides[i];
            let apply_partial = |c: &[Rational]| -> Vec<Rational> {
                let mut out = field.zero_coords();
                for (j, x) in c.iter().enumerate().take(s) {
                    if !x.is_zero() {
                        for (o, y) in out.iter_mut().zip(&matrix[j]) {
                            *o += x * y;
                        }
                    }
                }
                out
            };
            let img = &images[i].coords;
            let d = field.degrees[i];
            let mut acc = field.pow_coords(img, d as u32);
            let mut pw = field.one_coords();
            for j in 0..d {
                let cj = apply_partial(&field.minpolys[i][j]);
                acc = field.add_coords(&acc, &Field::mul(field, &cj, &pw));
                pw = Field::mul(field, &pw, img);
            }
            if acc.iter().any(|x| !x.is_zero()) {
                return Err(Error::InvalidAutomorphism(format!(
                    "image of {} is not a root of its conjugate minimal polynomial",
                    field.names[i]
                )));
            }
            let mut powers = vec![field.one_coords()];
            for e in 1..d {
                let next = Field::mul(field, &powers[e - 1], img);
                powers.push(next);
            }
            let mut next = Vec::with_capacity(s * d);
            for p in powers.iter() {
                for col in matrix.iter().take(s) {
                    next.push(Field::mul(field, col, p));
                }
            }
            matrix = next;
        }
        debug_assert_eq!(matrix.len(), n);
        Ok(Automorphism { field: field.clone(), images, matrix })
    }

    pub fn identity(field: &Arc<TowerField>) -> Self {
        let images = (0..field.num_generators()).map(|i| FieldElement::generator(field, i)).collect();
        Automorphism::new(field, images).expect("identity")
    }

    pub fn field(&self) -> &Arc<TowerField> {
        &self.field
    }

    pub fn images(&self) -> &[FieldElement] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, im)| im.coords == self.field.generator_coords(i))
    }

    pub fn apply_coords(&self, c: &[Rational]) -> Vec<Rational> {
        let mut out = self.field.zero_coords();
        for (j, x) in c.iter().enumerate() {
            if !x.is_zero() {
                for (o, y) in out.iter_mut().zip(&self.matrix[j]) {
                    if !y.is_zero() {
                        *o += x * y;
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, x: &FieldElement) -> Result<FieldElement> {
        if !x.field.same(&self.field) {
            return Err(Error::FieldMismatch);
        }
        Ok(FieldElement { field: self.field.clone(), coords: self.apply_coords(&x.coords) })
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Automorphism) -> Result<Automorphism> {
        if !self.field.same(&other.field) {
            return Err(Error::FieldMismatch);
        }
        let images = other
            .images
            .iter()
            .map(|im| self.apply(im))
            .collect::<Result<Vec<_>>>()?;
        Automorphism::new(&self.field, images)
    }
}

pub fn apply_automorphism(s: &Automorphism, x: &FieldElement) -> Result<FieldElement> {
    s.apply(x)
}

/// A verified finite group of automorphisms of one tower.
#[derive(Clone, Debug)]
pub struct GaloisGroup {
    field: Arc<TowerField>,
    elements: Vec<Automorphism>,
    names: Vec<String>,
}

impl GaloisGroup {
    /// Checks identity, closure and distinctness; with `galois`, also that
    /// the order equals the degree of the tower.
    pub fn verify(elements: Vec<Automorphism>, galois: bool) -> Result<GaloisGroup> {
        let n = elements.len();
        let names = (0..n).map(|i| format!("s{i}")).collect();
        Self::verify_named(elements, names, galois)
    }

    pub fn verify_named(
        elements: Vec<Automorphism>,
        names: Vec<String>,
        galois: bool,
    ) -> Result<GaloisGroup> {
        let Some(first) = elements.first() else {
            return Err(Error::InvalidGroup("empty".into()));
        };
        let field = first.field.clone();
        if elements.iter().any(|s| !s.field.same(&field)) {
            return Err(Error::FieldMismatch);
        }
        if !elements.iter().any(|s| s.is_identity()) {
            return Err(Error::InvalidGroup("identity missing".into()));
        }
        for i in 0..elements.len() {
            for j in 0..i {
                if elements[i] == elements[j] {
                    return Err(Error::InvalidGroup(format!(
                        "elements {} and {} coincide",
                        names[j], names[i]
                    )));
                }
            }
        }
        for a in &elements {
            for b in &elements {
                let c = a.compose(b)?;
                if !elements.iter().any(|e| *e == c) {
                    return Err(Error::InvalidGroup("not closed under composition".into()));
                }
            }
        }
        if galois && elements.len() != field.dim() {
            return Err(Error::InvalidGroup(format!(
                "order {} differs from degree {}",
                elements.len(),
                field.dim()
            )));
        }
        Ok(GaloisGroup { field, elements, names })
    }

    /// The group generated by the given automorphisms.
    pub fn generated_by(gens: &[Automorphism], galois: bool) -> Result<GaloisGroup> {
        let Some(first) = gens.first() else {
            return Err(Error::InvalidGroup("no generators".into()));
        };
        let mut elems = vec![Automorphism::identity(&first.field)];
        let mut frontier = elems.clone();
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = g.compose(&x)?;
                if !elems.iter().any(|e| *e == y) {
                    elems.push(y.clone());
                    frontier.push(y);
                    if elems.len() > 4096 {
                        return Err(Error::Budget("group order above 4096".into()));
                    }
                }
            }
        }
        Self::verify(elems, galois)
    }

    pub fn trivial(field: &Arc<TowerField>) -> GaloisGroup {
        GaloisGroup {
            field: field.clone(),
            elements: vec![Automorphism::identity(field)],
            names: vec!["id".into()],
        }
    }

    pub fn field(&self) -> &Arc<TowerField> {
        &self.field
    }

    pub fn elements(&self) -> &[Automorphism] {
        &self.elements
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity_index(&self) -> usize {
        self.elements.iter().position(|s| s.is_identity()).unwrap()
    }
}

pub fn verify_galois_group(candidate: Vec<Automorphism>, galois: bool) -> Result<GaloisGroup> {
    GaloisGroup::verify(candidate, galois)
}
