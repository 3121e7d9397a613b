use std::sync::Arc;

use super::linear::linear_rref;
use crate::error::{Error, Result};
use crate::exact_arith::{FieldElement, Rational, Tower};
use crate::galois_completion::ConjugateSystem;
use crate::multipoly::{TPoly, Vars};

/// `f = a + i·b` with `a`, `b` real. Needs a generator `i` with `i² = −1`.
pub fn split_real_imag(f: &TPoly) -> Result<(TPoly, TPoly)> {
    let t = f.tower();
    let (even, odd) = parts(f);
    if odd.is_zero() {
        return Ok((even, odd));
    }
    let k = t.imaginary_unit().ok_or(Error::NoImaginaryUnit)?;
    let minus_i = FieldElement::generator(t, k).neg();
    Ok((even, odd.scale(&minus_i.into_coords())))
}

fn parts(f: &TPoly) -> (TPoly, TPoly) {
    let t = f.tower();
    let mut even = f.zero_like();
    let mut odd = f.zero_like();
    for (m, c) in f.terms() {
        let (e, o) = t.parity_split(c);
        even.add_term(m.clone(), e);
        odd.add_term(m.clone(), o);
    }
    (even, odd)
}

/// Real polynomials whose common real zeros are the real zeros of `f`:
/// `[f]` for real `f`, otherwise the real part and a real multiple of the
/// imaginary part.
pub fn real_trace(f: &TPoly) -> Vec<TPoly> {
    let t = f.tower();
    let (even, odd) = parts(f);
    if odd.is_zero() {
        return vec![even];
    }
    let k = t
        .imaginary_unit()
        .or_else(|| (0..t.num_generators()).find(|&j| t.is_imaginary_generator(j)))
        .expect("non-real coefficient without imaginary generator");
    let g = FieldElement::generator(t, k);
    let g = if Some(k) == t.imaginary_unit() { g.neg() } else { g };
    let b = odd.scale(&g.into_coords());
    let mut out = Vec::new();
    if !even.is_zero() {
        out.push(even);
    }
    out.push(b);
    out
}

/// Real systems `𝔞^R` in doubled variables.
#[derive(Debug, Clone, PartialEq)]
pub struct UnderlyingReal {
    pub vars: Vars,
    /// `(a_k, b_k)` with `g_k(x + i·y) = a_k + i·b_k`.
    pub pairs: Vec<(TPoly, TPoly)>,
}

impl UnderlyingReal {
    pub fn generators(&self) -> Vec<TPoly> {
        let mut out = Vec::new();
        for (a, b) in &self.pairs {
            for p in [a, b] {
                if !p.is_zero() && !out.contains(p) {
                    out.push(p.clone());
                }
            }
        }
        out
    }
}

fn doubled_names(vars: &[String]) -> Vec<String> {
    let re = |v: &String| match v.strip_prefix('z') {
        Some(rest) => format!("x{rest}"),
        None => v.clone(),
    };
    let im = |v: &String| match v.strip_prefix('z').or_else(|| v.strip_prefix('x')) {
        Some(rest) => format!("y{rest}"),
        None => format!("{v}_im"),
    };
    let mut out: Vec<String> = vars.iter().map(re).collect();
    out.extend(vars.iter().map(im));
    out
}

/// Substitutes `z_j = x_j + i·y_j` and splits each generator.
pub fn underlying_real_structure(gens: &[TPoly]) -> Result<UnderlyingReal> {
    let Some(first) = gens.first() else {
        return Err(Error::Invalid("no generators".into()));
    };
    let t: &Tower = first.tower();
    let k = t.imaginary_unit().ok_or(Error::NoImaginaryUnit)?;
    let n = first.nvars();
    let names = doubled_names(first.vars());
    let mut seen = std::collections::BTreeSet::new();
    if !names.iter().all(|s| seen.insert(s.clone())) {
        return Err(Error::Invalid("doubled variable names collide".into()));
    }
    let vars: Vars = Arc::new(names);
    let template = TPoly::zero(t.clone(), vars.clone());
    let i = FieldElement::generator(t, k).into_coords();
    let images: Vec<TPoly> = (0..n)
        .map(|j| template.var_like(j).try_add(&template.var_like(n + j).scale(&i)))
        .collect::<Result<_>>()?;
    let mut pairs = Vec::with_capacity(gens.len());
    for g in gens {
        if !g.same_ring(first) {
            return Err(Error::RingMismatch);
        }
        pairs.push(split_real_imag(&g.compose(&images)?)?);
    }
    Ok(UnderlyingReal { vars, pairs })
}

/// One real system `Z^σ ∩ Rⁿ` with the σ producing it.
#[derive(Debug, Clone, PartialEq)]
pub struct RealEntry {
    pub sigmas: Vec<String>,
    /// `(a, b)` with `g^σ = a + i·b`, one pair per generator.
    pub pairs: Vec<(TPoly, TPoly)>,
    /// Canonical real generators: reduced echelon form when linear.
    pub system: Vec<TPoly>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RealSystem {
    pub entries: Vec<RealEntry>,
}

impl RealSystem {
    pub fn to_text(&self) -> Vec<String> {
        self.entries
            .iter()
            .map(|e| {
                let sys: Vec<String> = e.system.iter().map(|p| p.to_text()).collect();
                format!("{}: [{}]", e.sigmas.join(", "), sys.join(", "))
            })
            .collect()
    }
}

fn canonical_system(pairs: &[(TPoly, TPoly)]) -> Result<Vec<TPoly>> {
    let mut gens: Vec<TPoly> = Vec::new();
    for (a, b) in pairs {
        for p in [a, b] {
            if !p.is_zero() {
                gens.push(p.clone());
            }
        }
    }
    if gens.iter().all(|p| p.total_degree().unwrap_or(0) <= 1) {
        return Ok(match linear_rref(&gens)? {
            Some(s) => s,
            None => vec![gens[0].one_like()],
        });
    }
    let mut out: Vec<TPoly> = Vec::new();
    for p in gens {
        let p = p.monic_lex();
        if !out.contains(&p) {
            out.push(p);
        }
    }
    Ok(out)
}

/// Per-σ real pair systems of a conjugate system, merged when their real
/// generators coincide.
pub fn real_galois_completion(cs: &ConjugateSystem) -> Result<RealSystem> {
    let names = cs.group.names();
    let mut entries: Vec<RealEntry> = Vec::new();
    for (idx, sys) in cs.distinct() {
        let pairs = sys.iter().map(split_real_imag).collect::<Result<Vec<_>>>()?;
        let system = canonical_system(&pairs)?;
        let sigmas: Vec<String> = idx.iter().map(|&k| names[k].clone()).collect();
        match entries.iter_mut().find(|e| e.system == system) {
            Some(e) => e.sigmas.extend(sigmas),
            None => entries.push(RealEntry { sigmas, pairs, system }),
        }
    }
    Ok(RealSystem { entries })
}

pub(crate) fn rational_point(t: &Tower, p: &[Rational]) -> Vec<FieldElement> {
    p.iter().map(|q| FieldElement::from_rational(t, q.clone())).collect()
}
