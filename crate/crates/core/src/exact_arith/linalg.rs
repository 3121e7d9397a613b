//! Exact Gaussian elimination over any coefficient field.

use super::field::Field;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(f: &F, m: &mut Vec<Vec<F::Elem>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row >= m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !f.is_zero(&m[r][col])) else {
            continue;
        };
        m.swap(row, p);
        let inv = f.inv(&m[row][col]).expect("nonzero pivot");
        for c in col..ncols {
            m[row][c] = f.mul(&m[row][c], &inv);
        }
        for r in 0..m.len() {
            if r != row && !f.is_zero(&m[r][col]) {
                let factor = m[r][col].clone();
                for c in col..ncols {
                    let t = f.mul(&factor, &m[row][c]);
                    m[r][c] = f.sub(&m[r][c], &t);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank<F: Field>(f: &F, m: &[Vec<F::Elem>], ncols: usize) -> usize {
    let mut w = m.to_vec();
    rref(f, &mut w, ncols).len()
}

/// Basis of the right kernel `{v : m v = 0}`.
pub fn kernel<F: Field>(f: &F, m: &[Vec<F::Elem>], ncols: usize) -> Vec<Vec<F::Elem>> {
    let mut w = m.to_vec();
    let pivots = rref(f, &mut w, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::new();
    for &fc in &free {
        let mut v = vec![f.zero(); ncols];
        v[fc] = f.one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(&w[r][fc]);
        }
        basis.push(v);
    }
    basis
}

/// Some solution of `m x = rhs`, or `None` if inconsistent.
pub fn solve<F: Field>(
    f: &F,
    m: &[Vec<F::Elem>],
    rhs: &[F::Elem],
    ncols: usize,
) -> Option<Vec<F::Elem>> {
    let mut w: Vec<Vec<F::Elem>> = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = rref(f, &mut w, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![f.zero(); ncols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = w[r][ncols].clone();
    }
    Some(x)
}

/// Incrementally maintained span of vectors, remembering how each echelon
/// row is built from the inserted vectors.
#[derive(Debug, Clone)]
pub struct Span<F: Field> {
    field: F,
    dim: usize,
    rows: Vec<(usize, Vec<F::Elem>, Vec<F::Elem>)>,
    count: usize,
}

impl<F: Field> Span<F> {
    pub fn new(field: F, dim: usize) -> Self {
        Span { field, dim, rows: Vec::new(), count: 0 }
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Writes `v` as a combination of the inserted vectors if possible.
    pub fn express(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let (res, combo) = self.reduce(v);
        if res.iter().all(|x| self.field.is_zero(x)) {
            Some(combo.into_iter().map(|c| self.field.neg(&c)).collect())
        } else {
            None
        }
    }

    /// Residual of `v` and the combination `c` with `residual = v + Σ c_j v_j`.
    fn reduce(&self, v: &[F::Elem]) -> (Vec<F::Elem>, Vec<F::Elem>) {
        let f = &self.field;
        let mut res = v.to_vec();
        let mut combo = vec![f.zero(); self.count];
        for (pc, row, rc) in &self.rows {
            if f.is_zero(&res[*pc]) {
                continue;
            }
            let factor = res[*pc].clone();
            for c in 0..self.dim {
                if !f.is_zero(&row[c]) {
                    let t = f.mul(&factor, &row[c]);
                    res[c] = f.sub(&res[c], &t);
                }
            }
            for (j, x) in rc.iter().enumerate() {
                if !f.is_zero(x) {
                    let t = f.mul(&factor, x);
                    combo[j] = f.sub(&combo[j], &t);
                }
            }
        }
        (res, combo)
    }

    /// Inserts `v`; returns `Err(combination)` with `v = Σ c_j v_j` when `v`
    /// is already in the span (it is then not inserted).
    pub fn insert(&mut self, v: &[F::Elem]) -> Result<(), Vec<F::Elem>> {
        let f = self.field.clone();
        let (mut res, mut combo) = self.reduce(v);
        let Some(pc) = res.iter().position(|x| !f.is_zero(x)) else {
            return Err(combo.into_iter().map(|c| f.neg(&c)).collect());
        };
        combo.push(f.one());
        self.count += 1;
        for (_, _, rc) in self.rows.iter_mut() {
            rc.push(f.zero());
        }
        let inv = f.inv(&res[pc]).expect("nonzero");
        for x in res.iter_mut() {
            *x = f.mul(x, &inv);
        }
        for x in combo.iter_mut() {
            *x = f.mul(x, &inv);
        }
        for (opc, row, rc) in self.rows.iter_mut() {
            let _ = opc;
            if !f.is_zero(&row[pc]) {
                let factor = row[pc].clone();
                for c in 0..self.dim {
                    let t = f.mul(&factor, &res[c]);
                    row[c] = f.sub(&row[c], &t);
                }
                for (j, x) in combo.iter().enumerate() {
                    let t = f.mul(&factor, x);
                    rc[j] = f.sub(&rc[j], &t);
                }
            }
        }
        self.rows.push((pc, res, combo));
        Ok(())
    }
}
