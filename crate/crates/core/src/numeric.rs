//! Exact integers, rationals, and univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Integer = BigInt;
/// Always normalized: lowest terms, positive denominator.
pub type Rational = BigRational;

pub fn int(x: i64) -> Integer {
    Integer::from(x)
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(Integer::from(num), Integer::from(den))
}

pub fn rat_int(x: &Integer) -> Rational {
    Rational::from_integer(x.clone())
}

/// Extended Euclid. Returns `(g, u, v)` with `g = gcd(x, y) >= 0` and `u*x + v*y = g`.
pub fn gcd_ext(x: &Integer, y: &Integer) -> (Integer, Integer, Integer) {
    let (mut r0, mut r1) = (x.clone(), y.clone());
    let (mut s0, mut s1) = (Integer::one(), Integer::zero());
    let (mut t0, mut t1) = (Integer::zero(), Integer::one());
    while !r1.is_zero() {
        let q = r0.div_floor(&r1);
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let s2 = &s0 - &q * &s1;
        s0 = std::mem::replace(&mut s1, s2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.is_negative() {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Inverse of `x` modulo `m`, in `[1, m-1]`.
pub fn mod_inverse(x: &Integer, m: &Integer) -> Result<Integer> {
    if *m < int(2) {
        return Err(Error::BadDimension(format!(
            "modulus {m} must be at least 2"
        )));
    }
    let (g, u, _) = gcd_ext(x, m);
    if !g.is_one() {
        return Err(Error::NotCoprime(x.to_string(), m.to_string()));
    }
    Ok(u.mod_floor(m))
}

pub fn ceil(q: &Rational) -> Integer {
    q.ceil().to_integer()
}

/// Euler's totient by trial division.
pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Moebius function by trial division.
pub fn mobius(mut n: u64) -> i64 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Dense polynomial over the rationals; `coeffs[i]` is the coefficient of `x^i`.
/// No trailing zeros, so the zero polynomial has an empty coefficient list.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

impl RatPoly {
    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c, 1)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) => self.scale(&lc.recip()),
            None => Self::zero(),
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let show_coeff = !mag.is_one() || i == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }
}

/// Euclidean division: `f = q*g + r` with `deg r < deg g`.
pub fn poly_divmod(f: &RatPoly, g: &RatPoly) -> Result<(RatPoly, RatPoly)> {
    let dg = g.degree().ok_or(Error::DivisionByZeroPoly)?;
    let lc_inv = g.coeffs[dg].recip();
    let mut rem = f.coeffs.clone();
    if rem.len() <= dg {
        return Ok((RatPoly::zero(), f.clone()));
    }
    let mut quot = vec![Rational::zero(); rem.len() - dg];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + dg] * &lc_inv;
        if c.is_zero() {
            continue;
        }
        for (j, gc) in g.coeffs.iter().enumerate() {
            if !gc.is_zero() {
                rem[k + j] -= &c * gc;
            }
        }
        quot[k] = c;
    }
    rem.truncate(dg);
    Ok((RatPoly::new(quot), RatPoly::new(rem)))
}

/// Extended Euclid over `Q[x]`: `(gcd, u, v)` with `u*f + v*g = gcd` and `gcd` monic.
/// For `f = g = 0` everything is zero.
pub fn poly_ext_gcd(f: &RatPoly, g: &RatPoly) -> (RatPoly, RatPoly, RatPoly) {
    let (mut r0, mut r1) = (f.clone(), g.clone());
    let (mut s0, mut s1) = (RatPoly::one(), RatPoly::zero());
    let (mut t0, mut t1) = (RatPoly::zero(), RatPoly::one());
    while !r1.is_zero() {
        let (q, r2) = poly_divmod(&r0, &r1).expect("r1 is nonzero");
        r0 = std::mem::replace(&mut r1, r2);
        let s2 = &s0 - &(&q * &s1);
        s0 = std::mem::replace(&mut s1, s2);
        let t2 = &t0 - &(&q * &t1);
        t0 = std::mem::replace(&mut t1, t2);
    }
    match r0.leading().cloned() {
        Some(lc) => {
            let inv = lc.recip();
            (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
        }
        None => (RatPoly::zero(), RatPoly::zero(), RatPoly::zero()),
    }
}

/// The `b`-th cyclotomic polynomial, obtained by dividing `x^b - 1` by `Phi_m` for every
/// proper divisor `m` of `b`.
pub fn cyclotomic(b: u64) -> RatPoly {
    assert!(b >= 1, "cyclotomic index must be positive");
    let ints = cyclotomic_int(b);
    RatPoly::new(
        ints.iter()
            .map(|c| Rational::from_integer(Integer::from(*c)))
            .collect(),
    )
}

/// Integer coefficients of `Phi_b`, low degree first.
///
/// All divisions are by monic integer polynomials and exact, so everything stays in `i128`.
fn cyclotomic_int(b: u64) -> Vec<i128> {
    let divs = divisors(b);
    let mut table: Vec<(u64, Vec<i128>)> = Vec::with_capacity(divs.len());
    for &m in &divs {
        let mut p = vec![0i128; m as usize + 1];
        p[0] = -1;
        p[m as usize] = 1;
        for (e, phi_e) in &table {
            if m % e == 0 {
                p = exact_div_monic(&p, phi_e);
            }
        }
        table.push((m, p));
    }
    table.pop().expect("b has at least one divisor").1
}

fn exact_div_monic(f: &[i128], g: &[i128]) -> Vec<i128> {
    let dg = g.len() - 1;
    debug_assert_eq!(g[dg], 1);
    let support: Vec<(usize, i128)> = g[..dg]
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0)
        .map(|(i, c)| (i, *c))
        .collect();
    let mut rem = f.to_vec();
    let mut quot = vec![0i128; f.len() - dg];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dg];
        if c == 0 {
            continue;
        }
        for &(j, gc) in &support {
            rem[k + j] -= c * gc;
        }
        quot[k] = c;
    }
    debug_assert!(rem[..dg].iter().all(|c| *c == 0), "division must be exact");
    quot
}
