use num_traits::Signed;

use super::sampling::grid_values;
use crate::exact_arith::Rational;
use crate::multipoly::factor::univariate_factor_q;
use crate::multipoly::{QPoly, TPoly};

/// `max(|numerator|, denominator)`.
pub fn rational_height(q: &Rational) -> u64 {
    let n = q.numer().abs();
    let d = q.denom().clone();
    let m = if n > d { n } else { d };
    u64::try_from(m).unwrap_or(u64::MAX)
}

/// Rational common zeros of height at most `height`. Coordinates are fixed
/// one at a time; a polynomial left in a single free variable is solved
/// through its linear factors, other variables run through the grid. The
/// flag is false when `max_nodes` substitutions did not suffice.
pub fn rational_zeros(system: &[TPoly], height: u64, max_nodes: usize) -> (Vec<Vec<Rational>>, bool) {
    let Some(first) = system.first() else { return (vec![], true) };
    let n = first.nvars();
    let mut polys: Vec<QPoly> = Vec::new();
    for p in system {
        polys.extend(p.coefficient_components().into_iter().filter(|c| !c.is_zero()));
    }
    let mut search = Search { height, grid: grid_values(height), nodes: 0, max_nodes, out: Vec::new(), complete: true };
    let start: Vec<Option<Rational>> = vec![None; n];
    search.run(polys, start);
    (search.out, search.complete)
}

struct Search {
    height: u64,
    grid: Vec<Rational>,
    nodes: usize,
    max_nodes: usize,
    out: Vec<Vec<Rational>>,
    complete: bool,
}

impl Search {
    fn run(&mut self, polys: Vec<QPoly>, point: Vec<Option<Rational>>) {
        if polys.iter().any(|p| p.is_constant() && !p.is_zero()) {
            return;
        }
        let polys: Vec<QPoly> = polys.into_iter().filter(|p| !p.is_zero()).collect();
        let Some(free) = point.iter().position(|x| x.is_none()) else {
            self.out.push(point.into_iter().map(|x| x.unwrap()).collect());
            return;
        };
        // a polynomial in one variable fixes that variable
        let uni = polys.iter().find_map(|p| {
            let vs: Vec<usize> = (0..p.nvars()).filter(|&i| p.involves(i)).collect();
            (vs.len() == 1).then(|| (vs[0], p))
        });
        let (var, candidates) = match uni {
            Some((v, p)) => (v, self.rational_roots(p, v)),
            None => (free, self.grid.clone()),
        };
        for c in candidates {
            if self.nodes >= self.max_nodes {
                self.complete = false;
                return;
            }
            self.nodes += 1;
            let next: Vec<QPoly> = polys.iter().map(|p| p.substitute(var, &c)).collect();
            let mut pt = point.clone();
            pt[var] = Some(c);
            self.run(next, pt);
        }
    }

    fn rational_roots(&self, p: &QPoly, v: usize) -> Vec<Rational> {
        let u = p.to_univariate(v).unwrap();
        let mut out = Vec::new();
        for (f, _) in univariate_factor_q(&u).factors {
            if f.degree() == Some(1) {
                let c = f.coeffs();
                let r = -(&c[0] / &c[1]);
                if rational_height(&r) <= self.height {
                    out.push(r);
                }
            }
        }
        out.sort();
        out
    }
}
