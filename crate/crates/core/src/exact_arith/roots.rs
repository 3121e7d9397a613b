use std::sync::Arc;

use super::field::{Rational, Q};
use super::numeric::{complex_roots, integer_relation_candidates, interval_mid_fixed, CFixed};
use super::tower::{FieldElement, TowerField};
use crate::error::Result;
use crate::multipoly::factor::univariate_factor_q;
use crate::multipoly::UniPoly;

/// Default working precision for numeric fitting, in bits (≈128 digits).
pub const DEFAULT_PRECISION_BITS: u32 = 430;

/// Numeric values of the monomial basis of `field` to `prec` bits.
pub fn basis_values(field: &Arc<TowerField>, prec: u32) -> Result<Vec<CFixed>> {
    let boxes = field.boxes_to_precision(prec + 24)?;
    let n = field.dim();
    let mut out = Vec::with_capacity(n);
    for idx in 0..n {
        let mut c = field.zero_coords();
        c[idx] = Rational::from_integer(1.into());
        let (re, im) = field.eval_complex(&c, &boxes);
        out.push(CFixed { re: interval_mid_fixed(&re, prec), im: interval_mid_fixed(&im, prec) });
    }
    Ok(out)
}

/// Exactly verified element of `field` whose numeric value is close to
/// `value`, accepted by `accept`.
pub fn fit_value<P: Fn(&FieldElement) -> bool>(
    field: &Arc<TowerField>,
    value: &CFixed,
    basis: &[CFixed],
    prec: u32,
    accept: P,
) -> Option<FieldElement> {
    for c in integer_relation_candidates(value, basis, prec) {
        let x = FieldElement::from_coords(field, c);
        if accept(&x) {
            return Some(x);
        }
    }
    None
}

/// Outcome of a root search in a tower.
#[derive(Debug, Clone, PartialEq)]
pub enum RootsInField {
    /// All roots of `f` lying in the field.
    Complete(Vec<FieldElement>),
    /// Some roots could neither be fitted nor excluded.
    Unknown { found: Vec<FieldElement>, note: String },
}

impl RootsInField {
    pub fn roots(&self) -> &[FieldElement] {
        match self {
            RootsInField::Complete(r) => r,
            RootsInField::Unknown { found, .. } => found,
        }
    }
}

/// Roots of `f` in `field`: numeric roots fitted into the basis and verified
/// exactly. Irreducible factors whose degree does not divide the field
/// degree are excluded without numerics.
pub fn roots_in_field(f: &UniPoly<Q>, field: &Arc<TowerField>) -> Result<RootsInField> {
    roots_in_field_prec(f, field, DEFAULT_PRECISION_BITS)
}

pub fn roots_in_field_prec(
    f: &UniPoly<Q>,
    field: &Arc<TowerField>,
    prec: u32,
) -> Result<RootsInField> {
    let fac = univariate_factor_q(f);
    let dim = field.dim();
    let mut found: Vec<FieldElement> = Vec::new();
    let mut unknown: Vec<String> = Vec::new();
    let mut basis: Option<Vec<CFixed>> = None;
    for (p, _) in &fac.factors {
        let m = p.degree().unwrap_or(0);
        if m == 0 || dim % m != 0 {
            continue;
        }
        if m == 1 {
            let c = -&p.coeffs()[0] / &p.coeffs()[1];
            found.push(FieldElement::from_rational(field, c));
            continue;
        }
        if basis.is_none() {
            basis = Some(basis_values(field, prec)?);
        }
        let b = basis.as_ref().unwrap();
        let Some(nums) = complex_roots(p, prec) else {
            unknown.push(format!("numeric roots of {} not separated", p.to_text("t")));
            continue;
        };
        let mut here = Vec::new();
        for z in nums {
            let hit = fit_value(field, &z, b, prec, |x| {
                p.eval_tower(x).is_zero() && !here.contains(x)
            });
            if let Some(x) = hit {
                here.push(x);
            }
        }
        if !here.is_empty() && here.len() < m {
            unknown.push(format!(
                "{} of {} roots of {} fitted",
                here.len(),
                m,
                p.to_text("t")
            ));
        } else if here.is_empty() {
            unknown.push(format!("no root of {} fitted at {} bits", p.to_text("t"), prec));
        }
        found.extend(here);
    }
    if unknown.is_empty() {
        Ok(RootsInField::Complete(found))
    } else {
        Ok(RootsInField::Unknown { found, note: unknown.join("; ") })
    }
}

impl UniPoly<Q> {
    /// Exact value at a tower element.
    pub fn eval_tower(&self, x: &FieldElement) -> FieldElement {
        let mut acc = FieldElement::zero(x.field());
        for c in self.coeffs().iter().rev() {
            acc = acc.mul(x).add(&FieldElement::from_rational(x.field(), c.clone()));
        }
        acc
    }
}
