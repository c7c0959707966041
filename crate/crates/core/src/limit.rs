//! Value of a short rational function at `z = (1, ..., 1)`.
//!
//! Every variable is specialized along a curve `z_j = (1+t)^{c_j}` with an integer direction
//! `c` that keeps all denominators `1 - (1+t)^{<c,beta>}` nonzero. Each such factor has a simple
//! zero at `t = 0`, so a term with `k` denominator factors has a pole of order at most `k`.
//! Summing the truncated Laurent expansions, the polar part must cancel and the constant
//! coefficient is the limit.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{dot, IntVector};
use crate::numeric::{Integer, Rational};
use crate::srf::{SRFTerm, Srf};

/// Truncated Laurent series `sum_{i} coeffs[i] t^{valuation + i}`, known up to and including
/// `t^{valuation + coeffs.len() - 1}`.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    valuation: i64,
    coeffs: Vec<Rational>,
}

impl LaurentSeries {
    /// Leading zeros are stripped, shrinking the known range accordingly.
    pub fn new(valuation: i64, coeffs: Vec<Rational>) -> Self {
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            // identically zero within precision
            return LaurentSeries {
                valuation: valuation + coeffs.len() as i64,
                coeffs: Vec::new(),
            };
        }
        LaurentSeries {
            valuation: valuation + lead as i64,
            coeffs: coeffs[lead..].to_vec(),
        }
    }

    /// Zero series known up to `t^{precision - 1}`.
    pub fn zero(precision: i64) -> Self {
        LaurentSeries {
            valuation: precision,
            coeffs: Vec::new(),
        }
    }

    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    /// First exponent whose coefficient is not known.
    pub fn precision(&self) -> i64 {
        self.valuation + self.coeffs.len() as i64
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `t^k`; panics if `k` is beyond the known range.
    pub fn coeff(&self, k: i64) -> Rational {
        assert!(
            k < self.precision(),
            "coefficient of t^{k} is beyond the truncation"
        );
        if k < self.valuation {
            return Rational::zero();
        }
        self.coeffs[(k - self.valuation) as usize].clone()
    }

    /// Drops every coefficient from `t^precision` on.
    pub fn truncate(&self, precision: i64) -> Self {
        if precision >= self.precision() {
            return self.clone();
        }
        let keep = (precision - self.valuation).max(0) as usize;
        LaurentSeries::new(self.valuation, self.coeffs[..keep].to_vec())
            .with_precision_at_least(precision)
    }

    fn with_precision_at_least(mut self, precision: i64) -> Self {
        if self.coeffs.is_empty() {
            self.valuation = self.valuation.min(precision);
        }
        self
    }

    pub fn add(&self, other: &Self) -> Self {
        let prec = self.precision().min(other.precision());
        let lo = self.valuation.min(other.valuation).min(prec);
        let coeffs = (lo..prec).map(|k| self.coeff(k) + other.coeff(k)).collect();
        LaurentSeries::new(lo, coeffs).with_precision_at_least(prec)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            let prec = (self.valuation + other.precision()).min(other.valuation + self.precision());
            return LaurentSeries::zero(prec);
        }
        let len = self.coeffs.len().min(other.coeffs.len());
        let mut out = vec![Rational::zero(); len];
        for (i, a) in self.coeffs.iter().take(len).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(len - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        LaurentSeries::new(self.valuation + other.valuation, out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return LaurentSeries::zero(self.precision());
        }
        LaurentSeries {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiplicative inverse with the same relative precision; the series must be nonzero.
    pub fn inverse(&self) -> Self {
        assert!(!self.is_zero(), "cannot invert a zero series");
        let n = self.coeffs.len();
        let lead_inv = self.coeffs[0].recip();
        let mut inv = vec![Rational::zero(); n];
        inv[0] = lead_inv.clone();
        for k in 1..n {
            let s = (1..=k).fold(Rational::zero(), |acc, j| {
                acc + &self.coeffs[j] * &inv[k - j]
            });
            inv[k] = -s * &lead_inv;
        }
        LaurentSeries::new(-self.valuation, inv)
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries {
            valuation: self.valuation + k,
            coeffs: self.coeffs.clone(),
        }
    }
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            write!(f, "{c}*t^{} + ", self.valuation + i as i64)?;
        }
        write!(f, "O(t^{})", self.precision())
    }
}

/// `(1+t)^n` up to and including `t^order`, with generalized binomial coefficients.
pub fn binom_series(n: &Integer, order: usize) -> LaurentSeries {
    let n = Rational::from_integer(n.clone());
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut c = Rational::one();
    for k in 0..=order {
        coeffs.push(c.clone());
        let kk = Rational::from_integer(Integer::from(k));
        c = c * (&n - &kk) / (kk + Rational::one());
    }
    LaurentSeries::new(0, coeffs)
}

/// Integer direction `c` with `<c, beta> != 0` for every denominator exponent `beta` of an SRF.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Direction(pub IntVector);

fn is_valid_direction(c: &[Integer], f: &Srf) -> bool {
    f.denominator_exponents()
        .iter()
        .all(|beta| !dot(c, beta).is_zero())
}

fn primes() -> impl Iterator<Item = u64> {
    (2u64..).filter(|&p| (2..).take_while(|q| q * q <= p).all(|q| p % q != 0))
}

/// Valid directions of the form `(1, r, r^2, ..., r^{D-1})` for `r` running over the primes,
/// in order.
pub fn valid_directions(f: &Srf) -> impl Iterator<Item = Direction> + '_ {
    let dim = f.dim();
    primes()
        .map(move |r| {
            let r = Integer::from(r);
            let mut c = Vec::with_capacity(dim);
            let mut p = Integer::one();
            for _ in 0..dim {
                c.push(p.clone());
                p *= &r;
            }
            c
        })
        .filter(move |c| is_valid_direction(c, f))
        .map(Direction)
}

/// First valid direction. Each `beta != 0` rules out at most `D - 1` values of `r` (roots of a
/// nonzero polynomial), so the search terminates.
pub fn generic_direction(f: &Srf) -> Direction {
    assert!(
        f.terms()
            .iter()
            .all(|t| t.denom_exps.iter().all(|b| b.iter().any(|x| !x.is_zero()))),
        "denominator exponents must be nonzero"
    );
    valid_directions(f)
        .next()
        .expect("the prime search always terminates")
}

/// Expansion of one term along `z = (1+t)^c`, known up to and including `t^0`.
pub fn term_series(term: &SRFTerm, c: &Direction) -> LaurentSeries {
    let k = term.denom_exps.len();
    let numer = binom_series(&dot(&c.0, &term.numer_exp), k);
    let mut acc = numer;
    for beta in &term.denom_exps {
        let m = dot(&c.0, beta);
        assert!(!m.is_zero(), "direction is not generic for this term");
        // (1 - (1+t)^m) / t = -(m + C(m,2) t + ...)
        let b = binom_series(&m, k + 1);
        let reg: Vec<Rational> = (1..=k as i64 + 1).map(|i| -b.coeff(i)).collect();
        let reg = LaurentSeries::new(0, reg);
        acc = acc.mul(&reg.inverse());
    }
    acc.shift(-(k as i64))
        .scale(&term.signed_coeff())
        .truncate(1)
}

/// Sum of all term expansions along `c`, truncated after `t^0`.
pub fn srf_series(f: &Srf, c: &Direction) -> LaurentSeries {
    f.terms()
        .iter()
        .map(|t| term_series(t, c))
        .fold(LaurentSeries::zero(1), |acc, s| acc.add(&s))
}

/// Limit along a fixed direction, checking that every negative-order coefficient vanishes.
pub fn limit_at_one_along(f: &Srf, c: &Direction) -> Result<Rational> {
    let s = srf_series(f, c);
    for k in s.valuation()..0 {
        let v = s.coeff(k);
        if !v.is_zero() {
            return Err(Error::CancellationFailure {
                order: k,
                value: v.to_string(),
            });
        }
    }
    Ok(s.coeff(0))
}

/// `lim_{z -> 1} f(z)`.
pub fn limit_at_one(f: &Srf) -> Result<Rational> {
    limit_at_one_along(f, &generic_direction(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, rat};

    fn iv(v: &[i64]) -> IntVector {
        v.iter().map(|&x| int(x)).collect()
    }

    fn term(sign: i8, coeff: Rational, numer: &[i64], denoms: &[&[i64]]) -> SRFTerm {
        SRFTerm {
            sign,
            coeff,
            numer_exp: iv(numer),
            denom_exps: denoms.iter().map(|d| iv(d)).collect(),
        }
    }

    fn coeffs(s: &LaurentSeries) -> Vec<Rational> {
        (s.valuation()..s.precision()).map(|k| s.coeff(k)).collect()
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(
            coeffs(&binom_series(&int(2), 2)),
            vec![rat(1, 1), rat(2, 1), rat(1, 1)]
        );
        assert_eq!(
            coeffs(&binom_series(&int(-1), 2)),
            vec![rat(1, 1), rat(-1, 1), rat(1, 1)]
        );
        assert_eq!(
            coeffs(&binom_series(&int(7), 3)),
            vec![rat(1, 1), rat(7, 1), rat(21, 1), rat(35, 1)]
        );
        let s = binom_series(&int(2), 4);
        assert_eq!(s.coeff(3), rat(0, 1));
        assert_eq!(s.precision(), 5);
    }

    #[test]
    fn binomial_inverse_pair() {
        for n in [-7i64, -1, 0, 3, 12, 1_000_000_007] {
            let p = binom_series(&int(n), 5).mul(&binom_series(&int(-n), 5));
            assert_eq!(
                coeffs(&p),
                vec![
                    rat(1, 1),
                    rat(0, 1),
                    rat(0, 1),
                    rat(0, 1),
                    rat(0, 1),
                    rat(0, 1)
                ]
            );
        }
    }

    #[test]
    fn direction_examples() {
        let f = Srf::new(2, vec![term(1, rat(1, 1), &[0, 0], &[&[1, 0], &[0, 1]])]);
        assert_eq!(generic_direction(&f), Direction(iv(&[1, 2])));

        let f = Srf::new(
            2,
            vec![
                term(1, rat(1, 1), &[0, 0], &[&[1, 0], &[0, 1]]),
                term(1, rat(1, 1), &[0, 0], &[&[1, -1]]),
            ],
        );
        assert!(!is_valid_direction(&iv(&[1, 1]), &f));
        assert_eq!(generic_direction(&f), Direction(iv(&[1, 2])));

        // (1,-2) kills r = 2, so r = 3 is next
        let f = Srf::new(2, vec![term(1, rat(1, 1), &[0, 0], &[&[2, -1]])]);
        let mut it = valid_directions(&f);
        assert_eq!(it.next(), Some(Direction(iv(&[1, 3]))));
        assert_eq!(it.next(), Some(Direction(iv(&[1, 5]))));
    }

    #[test]
    fn term_series_closed_forms() {
        let c = Direction(iv(&[1]));
        // 2/(1-(1+t)^2) = -1/t + 1/2 - t/4 + ...
        let s = term_series(&term(1, rat(2, 1), &[0], &[&[2]]), &c);
        assert_eq!(s.valuation(), -1);
        assert_eq!(s.coeff(-1), rat(-1, 1));
        assert_eq!(s.coeff(0), rat(1, 2));
        // -1/(1-(1+t)) = 1/t
        let s2 = term_series(&term(-1, rat(1, 1), &[0], &[&[1]]), &c);
        assert_eq!(coeffs(&s2), vec![rat(1, 1), rat(0, 1)]);
        let sum = s.add(&s2);
        assert_eq!(sum.coeff(-1), rat(0, 1));
        assert_eq!(sum.coeff(0), rat(1, 2));

        let m = term_series(&term(1, rat(1, 1), &[3], &[]), &c);
        assert_eq!(m.coeff(0), rat(1, 1));
    }

    #[test]
    fn limit_examples() {
        let f = Srf::new(
            1,
            vec![
                term(1, rat(2, 1), &[0], &[&[2]]),
                term(-1, rat(1, 1), &[0], &[&[1]]),
            ],
        );
        assert_eq!(limit_at_one(&f).unwrap(), rat(1, 2));

        let f = Srf::new(
            1,
            vec![
                term(1, rat(1, 1), &[0], &[&[1]]),
                term(-1, rat(1, 1), &[0], &[&[1]]),
            ],
        );
        assert_eq!(limit_at_one(&f).unwrap(), rat(0, 1));

        let f = Srf::new(1, vec![term(1, rat(1, 1), &[0], &[&[1]])]);
        assert!(matches!(
            limit_at_one(&f),
            Err(Error::CancellationFailure { order: -1, .. })
        ));
    }

    #[test]
    fn limit_two_variables() {
        // z1/(1-z1) - 1/(1-z1) = -1
        let f = Srf::new(
            2,
            vec![
                term(1, rat(1, 1), &[1, 0], &[&[1, 0]]),
                term(-1, rat(1, 1), &[0, 0], &[&[1, 0]]),
            ],
        );
        assert_eq!(limit_at_one(&f).unwrap(), rat(-1, 1));
        // same term with its denominator factors listed in a different order
        let g = Srf::new(
            2,
            vec![
                term(1, rat(1, 1), &[0, 0], &[&[1, 0], &[0, 1]]),
                term(-1, rat(1, 1), &[0, 0], &[&[0, 1], &[1, 0]]),
            ],
        );
        assert_eq!(limit_at_one(&g).unwrap(), rat(0, 1));
    }

    #[test]
    fn series_arithmetic() {
        let a = LaurentSeries::new(-1, vec![rat(1, 2), rat(3, 1), rat(-1, 3), rat(2, 1)]);
        let b = LaurentSeries::new(0, vec![rat(2, 1), rat(0, 1), rat(5, 7), rat(1, 1)]);
        let c = LaurentSeries::new(1, vec![rat(-1, 1), rat(4, 1), rat(1, 1), rat(9, 2)]);
        assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        assert_eq!(
            a.mul(&a.inverse()),
            LaurentSeries::new(0, vec![rat(1, 1), rat(0, 1), rat(0, 1), rat(0, 1)])
        );
        assert_eq!(a.add(&b), b.add(&a));
    }
}
