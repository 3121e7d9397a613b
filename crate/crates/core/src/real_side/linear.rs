use crate::error::{Error, Result};
use crate::exact_arith::{FieldElement, Tower};
use crate::multipoly::{Monomial, TPoly};

/// Rows `[c₁, …, cₙ, c₀]` of the affine forms `Σ cⱼxⱼ + c₀`.
fn to_rows(system: &[TPoly], t: &Tower, n: usize) -> Result<Vec<Vec<FieldElement>>> {
    let mut rows = Vec::with_capacity(system.len());
    for p in system {
        let mut row = vec![FieldElement::zero(t); n + 1];
        for (m, c) in p.terms() {
            let c = FieldElement::from_coords(t, c.clone());
            match m.degree() {
                0 => row[n] = c,
                1 => row[m.0.iter().position(|&e| e == 1).unwrap()] = c,
                _ => return Err(Error::Invalid(format!("nonlinear form {p}"))),
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Reduced row echelon form; returns the nonzero rows and whether the
/// system is consistent.
fn rref(mut rows: Vec<Vec<FieldElement>>, n: usize) -> Result<(Vec<Vec<FieldElement>>, bool)> {
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][col].inv()?;
        rows[r] = rows[r].iter().map(|x| x.mul(&inv)).collect();
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                let pivot = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot) {
                    *x = x.sub(&f.mul(y));
                }
            }
        }
        r += 1;
    }
    let consistent = rows[r..].iter().all(|row| row[n].is_zero());
    rows.truncate(r);
    Ok((rows, consistent))
}

fn from_row(row: &[FieldElement], template: &TPoly) -> TPoly {
    let n = template.nvars();
    let mut p = template.zero_like();
    for (j, c) in row[..n].iter().enumerate() {
        if !c.is_zero() {
            p.add_term(Monomial::var(n, j), c.coords().to_vec());
        }
    }
    if !row[n].is_zero() {
        p.add_term(Monomial::one(n), row[n].coords().to_vec());
    }
    p
}

/// Canonical generators of a linear system (reduced echelon form), or
/// `None` when it is inconsistent.
pub fn linear_rref(system: &[TPoly]) -> Result<Option<Vec<TPoly>>> {
    let Some(first) = system.first() else { return Ok(Some(vec![])) };
    let n = first.nvars();
    let (rows, ok) = rref(to_rows(system, first.tower(), n)?, n)?;
    if !ok {
        return Ok(None);
    }
    Ok(Some(rows.iter().map(|r| from_row(r, first)).collect()))
}

/// Real dimension of the zero set of a system of affine forms with real
/// coefficients: `n − rank`, or −1 when inconsistent.
pub fn real_dim_linear(system: &[TPoly], n: usize) -> Result<i64> {
    let Some(first) = system.first() else { return Ok(n as i64) };
    let t = first.tower();
    for p in system {
        if p.nvars() != n {
            return Err(Error::Shape(format!("form in {} variables, expected {n}", p.nvars())));
        }
        if !p.terms().all(|(_, c)| t.coords_are_real(c)) {
            return Err(Error::NonReal);
        }
    }
    let (rows, ok) = rref(to_rows(system, t, n)?, n)?;
    Ok(if ok { n as i64 - rows.len() as i64 } else { -1 })
}
