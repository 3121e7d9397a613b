//! Real-field side: real and imaginary parts, real Galois completions,
//! K-geometric and K-reliable verdicts, bad sets and underlying real
//! structures.

mod linear;
mod points;
mod sampling;
mod split;
mod verdicts;

pub use linear::{linear_rref, real_dim_linear};
pub use points::{rational_height, rational_zeros};
pub use sampling::{find_sign_change, grid_values, sos_decomposition, SamplingBudget, SosCertificate};
pub use split::{
    real_galois_completion, real_trace, split_real_imag, underlying_real_structure, RealEntry, RealSystem,
    UnderlyingReal,
};
pub use verdicts::{
    bad_set, defined_over_k_verdict, factor_over_q, k_geometric_verdict, k_reliable_verdict,
    rational_points_in_conjugates, real_dimension_of_factor, real_dimension_of_system, verify_product, BadSet,
    RealDim,
};

use std::fmt;

use crate::exact_arith::{fmt_rational, FieldElement, Rational};
use crate::multipoly::{QPoly, TPoly, UniPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Proven,
    Refuted,
    Unknown,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Proven => "Proven",
            Outcome::Refuted => "Refuted",
            Outcome::Unknown => "Unknown",
        })
    }
}

/// One piece of a certificate.
#[derive(Debug, Clone, PartialEq)]
pub enum Evidence {
    /// `factor` is positive at `positive` and negative at `negative`.
    SignChange { factor: TPoly, positive: Vec<Rational>, negative: Vec<Rational> },
    /// `factor²` divides `poly`.
    Repeated { poly: QPoly, factor: QPoly },
    /// Number of distinct real roots of `factor`, a polynomial in `var` only.
    RealRoots { factor: TPoly, var: usize, count: usize },
    /// `factor = Σ dₖ·ℓₖ² + constant` with every `dₖ > 0`.
    SumOfSquares { factor: TPoly, cert: SosCertificate },
    /// Real zero set of `source` is cut out by the linear `system` and has
    /// dimension `dim` (−1 when empty).
    LinearTrace { source: Vec<TPoly>, system: Vec<TPoly>, dim: i64 },
    /// Complex dimension of a σ-system over the tower.
    ComplexDimension { label: String, dim: i64 },
    /// Rank of a gradient matrix at a point.
    Rank { point: Vec<FieldElement>, rank: usize },
    /// Radical membership `poly ∈ √(ideal)`.
    RadicalMembership { poly: TPoly, ideal: Vec<TPoly>, holds: bool },
    /// Two samples with the same image.
    Collision { first: Vec<FieldElement>, second: Vec<FieldElement> },
    /// A tangent vector sent to zero.
    Kernel { point: Vec<FieldElement>, vector: Vec<FieldElement> },
    /// Exhausted budget.
    Budget(String),
    Note(String),
}

fn fmt_point(p: &[Rational]) -> String {
    format!("({})", p.iter().map(fmt_rational).collect::<Vec<_>>().join(", "))
}

fn fmt_elems(p: &[FieldElement]) -> String {
    format!("({})", p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
}

fn fmt_list(ps: &[TPoly]) -> String {
    format!("[{}]", ps.iter().map(|p| p.to_text()).collect::<Vec<_>>().join(", "))
}

impl fmt::Display for Evidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Evidence::SignChange { factor, positive, negative } => write!(
                f,
                "sign change of {}: positive at {}, negative at {}",
                factor,
                fmt_point(positive),
                fmt_point(negative)
            ),
            Evidence::Repeated { poly, factor } => write!(f, "({factor})^2 divides {poly}"),
            Evidence::RealRoots { factor, count, .. } => write!(f, "{factor} has {count} real roots (Sturm)"),
            Evidence::SumOfSquares { factor, cert } => write!(f, "{factor} = {}", cert.to_text()),
            Evidence::LinearTrace { source, system, dim } => {
                write!(f, "real zeros of {} = zeros of {}, dimension {dim}", fmt_list(source), fmt_list(system))
            }
            Evidence::ComplexDimension { label, dim } => write!(f, "complex dimension of {label} is {dim}"),
            Evidence::Rank { point, rank } => write!(f, "rank {rank} at {}", fmt_elems(point)),
            Evidence::RadicalMembership { poly, ideal, holds } => {
                let rel = if *holds { "in" } else { "not in" };
                write!(f, "{poly} {rel} radical of {}", fmt_list(ideal))
            }
            Evidence::Collision { first, second } => {
                write!(f, "{} and {} have the same image", fmt_elems(first), fmt_elems(second))
            }
            Evidence::Kernel { point, vector } => {
                write!(f, "tangent vector {} at {} is sent to 0", fmt_elems(vector), fmt_elems(point))
            }
            Evidence::Budget(s) => write!(f, "budget: {s}"),
            Evidence::Note(s) => f.write_str(s),
        }
    }
}

impl Evidence {
    /// Exact re-check of the self-contained certificate kinds.
    pub fn recheck(&self) -> bool {
        match self {
            Evidence::SignChange { factor, positive, negative } => {
                let t = factor.tower();
                let at = |p: &[Rational]| {
                    let pt: Vec<FieldElement> = p.iter().map(|q| FieldElement::from_rational(t, q.clone())).collect();
                    factor.evaluate_at(&pt).and_then(|v| v.sign())
                };
                matches!((at(positive), at(negative)), (Ok(1), Ok(-1)))
            }
            Evidence::Repeated { poly, factor } => {
                !factor.is_constant() && poly.divexact(&(factor * factor)).is_ok()
            }
            Evidence::RealRoots { factor, var, count } => match factor.to_univariate(*var) {
                Some(u) if (0..factor.nvars()).all(|i| i == *var || !factor.involves(i)) => {
                    real_roots_tower(&u) == *count
                }
                _ => false,
            },
            Evidence::SumOfSquares { factor, cert } => cert.recheck(factor),
            Evidence::LinearTrace { system, dim, .. } => {
                let n = system.first().map(|p| p.nvars());
                match n {
                    Some(n) => real_dim_linear(system, n).map(|d| d == *dim).unwrap_or(false),
                    None => true,
                }
            }
            _ => true,
        }
    }
}

/// Number of distinct real roots of a univariate polynomial with real
/// tower coefficients.
pub fn real_roots_tower(u: &UniPoly<crate::exact_arith::Tower>) -> usize {
    let t = u.field().clone();
    crate::multipoly::sturm::real_root_count(u, |c| t.sign_coords(c).unwrap_or(0))
}

/// Outcome with its certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub outcome: Outcome,
    pub certificate: Vec<Evidence>,
}

impl Verdict {
    pub fn new(outcome: Outcome, certificate: Vec<Evidence>) -> Self {
        Verdict { outcome, certificate }
    }

    pub fn proven(certificate: Vec<Evidence>) -> Self {
        Verdict::new(Outcome::Proven, certificate)
    }

    pub fn refuted(certificate: Vec<Evidence>) -> Self {
        Verdict::new(Outcome::Refuted, certificate)
    }

    pub fn unknown(note: impl Into<String>) -> Self {
        Verdict::new(Outcome::Unknown, vec![Evidence::Budget(note.into())])
    }

    pub fn is_proven(&self) -> bool {
        self.outcome == Outcome::Proven
    }

    pub fn is_refuted(&self) -> bool {
        self.outcome == Outcome::Refuted
    }

    /// Re-verifies every certificate item exactly.
    pub fn recheck(&self) -> bool {
        self.certificate.iter().all(|e| e.recheck())
    }

    pub fn to_text(&self) -> String {
        let mut s = self.outcome.to_string();
        for e in &self.certificate {
            s.push_str("\n  ");
            s.push_str(&e.to_string());
        }
        s
    }
}

#[cfg(test)]
mod tests;
