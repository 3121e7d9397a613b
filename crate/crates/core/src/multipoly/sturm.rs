use crate::exact_arith::{Field, Rational, Q};
use num_traits::{Signed, Zero};

use super::UniPoly;

pub fn sturm_sequence<F: Field>(p: &UniPoly<F>) -> Vec<UniPoly<F>> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let r = seq[n - 2].rem(&seq[n - 1]).neg();
        if r.is_zero() {
            break;
        }
        seq.push(r);
    }
    seq
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut v = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            v += 1;
        }
        last = s;
    }
    v
}

fn sign_q(x: &Rational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Number of distinct real roots of `p` in the half-open interval `(a, b]`.
pub fn count_real_roots_q(p: &UniPoly<Q>, a: &Rational, b: &Rational) -> usize {
    if p.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let seq = sturm_sequence(&p.squarefree());
    let va = variations(seq.iter().map(|q| sign_q(&q.eval(a))));
    let vb = variations(seq.iter().map(|q| sign_q(&q.eval(b))));
    va.saturating_sub(vb)
}

/// Number of distinct real roots of `p`, given an exact sign oracle for
/// coefficients (which must be real).
pub fn real_root_count<F: Field, S: Fn(&F::Elem) -> i8>(p: &UniPoly<F>, sign: S) -> usize {
    let Some(d) = p.degree() else { return 0 };
    if d == 0 {
        return 0;
    }
    let seq = sturm_sequence(&p.squarefree());
    let at_pos = seq.iter().map(|q| sign(q.leading().unwrap()));
    let at_neg = seq.iter().map(|q| {
        let s = sign(q.leading().unwrap());
        if q.degree().unwrap() % 2 == 1 {
            -s
        } else {
            s
        }
    });
    variations(at_neg).saturating_sub(variations(at_pos))
}

pub fn real_root_count_q(p: &UniPoly<Q>) -> usize {
    real_root_count(p, sign_q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rat;

    #[test]
    fn counts() {
        let p = UniPoly::new(Q, vec![rat(1), rat(0), rat(1)]);
        assert_eq!(real_root_count_q(&p), 0);
        let p = UniPoly::new(Q, vec![rat(2), rat(0), rat(-4), rat(0), rat(1)]);
        assert_eq!(real_root_count_q(&p), 4);
        assert_eq!(count_real_roots_q(&p, &rat(0), &rat(2)), 2);
    }
}
