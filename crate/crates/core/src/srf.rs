//! Short rational functions: signed sums of `coeff * z^v / prod_j (1 - z^{beta_j})`.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::cone::FDInstance;
use crate::error::{Error, Result};
use crate::lattice::IntVector;
use crate::numeric::{Integer, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SRFTerm {
    pub sign: i8,
    pub coeff: Rational,
    pub numer_exp: IntVector,
    pub denom_exps: Vec<IntVector>,
}

impl SRFTerm {
    pub fn dim(&self) -> usize {
        self.numer_exp.len()
    }

    /// `sign * coeff` as a single rational.
    pub fn signed_coeff(&self) -> Rational {
        if self.sign < 0 {
            -self.coeff.clone()
        } else {
            self.coeff.clone()
        }
    }

    fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.numer_exp
            .cmp(&other.numer_exp)
            .then_with(|| self.denom_exps.cmp(&other.denom_exps))
            .then_with(|| self.sign.cmp(&other.sign))
            .then_with(|| self.coeff.cmp(&other.coeff))
    }
}

fn fmt_vec(v: &[Integer]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(","))
}

impl fmt::Display for SRFTerm {
    /// `SIGN*COEFF * z^[v] / prod (1 - z^[b1])(1 - z^[b2])...`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.sign < 0 { "-1" } else { "+1" };
        write!(
            f,
            "{sign}*{} * z^{} / prod ",
            self.coeff,
            fmt_vec(&self.numer_exp)
        )?;
        if self.denom_exps.is_empty() {
            return write!(f, "1");
        }
        for beta in &self.denom_exps {
            write!(f, "(1 - z^{})", fmt_vec(beta))?;
        }
        Ok(())
    }
}

/// A sum of [`SRFTerm`]s over a common set of variables, kept in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Srf {
    dim: usize,
    terms: Vec<SRFTerm>,
}

impl Srf {
    pub fn new(dim: usize, terms: Vec<SRFTerm>) -> Self {
        for t in &terms {
            assert_eq!(t.dim(), dim, "term dimension mismatch");
            assert!(
                t.denom_exps.iter().all(|b| b.len() == dim),
                "term dimension mismatch"
            );
        }
        let mut srf = Srf { dim, terms };
        srf.terms.sort_by(SRFTerm::canonical_cmp);
        srf
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[SRFTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Concatenation of the two sums.
    pub fn concat(&self, other: &Srf) -> Srf {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Srf::new(self.dim, terms)
    }

    pub fn push(&mut self, term: SRFTerm) {
        assert_eq!(term.dim(), self.dim, "term dimension mismatch");
        let pos = self
            .terms
            .partition_point(|t| t.canonical_cmp(&term) != Ordering::Greater);
        self.terms.insert(pos, term);
    }

    /// Every distinct denominator exponent across all terms.
    pub fn denominator_exponents(&self) -> Vec<&IntVector> {
        let mut all: Vec<&IntVector> = self
            .terms
            .iter()
            .flat_map(|t| t.denom_exps.iter())
            .collect();
        all.sort();
        all.dedup();
        all
    }

    /// Substitutes `z_k = 1`, dropping that variable.
    ///
    /// Fails with `DegenerateDenominator` if some denominator exponent is supported on `k` alone.
    pub fn set_to_one(&self, k: usize) -> Result<Srf> {
        assert!(k < self.dim, "variable index out of range");
        let drop = |v: &IntVector| -> IntVector {
            v.iter()
                .enumerate()
                .filter(|&(i, _)| i != k)
                .map(|(_, x)| x.clone())
                .collect()
        };
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let denom_exps: Vec<IntVector> = t.denom_exps.iter().map(drop).collect();
            if let Some(j) = denom_exps.iter().position(|b| b.iter().all(Zero::is_zero)) {
                return Err(Error::DegenerateDenominator(j));
            }
            terms.push(SRFTerm {
                sign: t.sign,
                coeff: t.coeff.clone(),
                numer_exp: drop(&t.numer_exp),
                denom_exps,
            });
        }
        Ok(Srf::new(self.dim - 1, terms))
    }

    /// One term per line, in canonical order.
    pub fn dump(&self) -> String {
        self.terms.iter().map(|t| format!("{t}\n")).collect()
    }
}

impl fmt::Display for Srf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.dump())
    }
}

/// `-(1/b) / ((1 - z_1) ... (1 - z_d))` over the variables `z_0, ..., z_d`; `z_0` does not occur.
pub fn correction_term(inst: &FDInstance) -> SRFTerm {
    let d = inst.d();
    assert!(d >= 1, "correction term needs d >= 1");
    let denom_exps = (1..=d)
        .map(|j| {
            let mut e = vec![Integer::zero(); d + 1];
            e[j] = Integer::one();
            e
        })
        .collect();
    SRFTerm {
        sign: -1,
        coeff: Rational::new(Integer::one(), inst.b().clone()),
        numer_exp: vec![Integer::zero(); d + 1],
        denom_exps,
    }
}

fn monomial_at(exp: &[Integer], point: &[Rational]) -> Option<Rational> {
    let mut acc = Rational::one();
    for (e, x) in exp.iter().zip(point) {
        if e.is_zero() {
            continue;
        }
        if x.is_zero() {
            if e.is_negative() {
                return None;
            }
            return Some(Rational::zero());
        }
        let e = e.to_i32().expect("exponent too large for exact evaluation");
        acc *= Pow::pow(x, e);
    }
    Some(acc)
}

/// Exact value of the sum at a rational point.
pub fn eval_at(f: &Srf, point: &[Rational]) -> Result<Rational> {
    assert_eq!(point.len(), f.dim(), "point dimension mismatch");
    let mut total = Rational::zero();
    for (ti, term) in f.terms.iter().enumerate() {
        let mut value = monomial_at(&term.numer_exp, point).ok_or(Error::PoleAtPoint {
            term: ti,
            factor: 0,
        })?;
        for (fi, beta) in term.denom_exps.iter().enumerate() {
            let pole = Error::PoleAtPoint {
                term: ti,
                factor: fi + 1,
            };
            let factor = Rational::one() - monomial_at(beta, point).ok_or(pole.clone())?;
            if factor.is_zero() {
                return Err(pole);
            }
            value /= factor;
        }
        total += value * term.signed_coeff();
    }
    Ok(total)
}

/// Builds a point from small fractions.
pub fn point(coords: &[(i64, i64)]) -> Vec<Rational> {
    coords
        .iter()
        .map(|&(p, q)| crate::numeric::rat(p, q))
        .collect()
}
