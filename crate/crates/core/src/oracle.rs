//! Reference evaluators that sum over the roots of unity directly.
//!
//! Both cost at least linear time in `b` and exist only to cross-check the cone pipeline.

use std::ops::{AddAssign, Mul, SubAssign};
use std::sync::Arc;

use num_complex::Complex64;
use num_integer::Integer as _;
use num_traits::{One, ToPrimitive, Zero};

use crate::cone::FDInstance;
use crate::error::{Error, Result};
use crate::numeric::{
    cyclotomic, divisors, mobius, mod_inverse, poly_divmod, poly_ext_gcd, Integer, RatPoly,
    Rational,
};

/// Largest `b` accepted by [`cyclo_eval`] unless a different bound is given.
pub const DEFAULT_CYCLO_BOUND: u64 = 100_000;
/// Largest `b` accepted by [`float_eval`].
pub const FLOAT_BOUND: u64 = 10_000_000;

/// Element of `Q[x]/(Phi_b)`, i.e. a polynomial in `xi_b` of degree below `phi(b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloElement {
    poly: RatPoly,
    b: u64,
    modulus: Arc<RatPoly>,
}

/// Shared `Phi_b` for building field elements.
#[derive(Clone, Debug)]
pub struct CycloField {
    b: u64,
    modulus: Arc<RatPoly>,
}

impl CycloField {
    pub fn new(b: u64) -> Self {
        CycloField {
            b,
            modulus: Arc::new(cyclotomic(b)),
        }
    }

    pub fn modulus(&self) -> &RatPoly {
        &self.modulus
    }

    pub fn element(&self, p: &RatPoly) -> CycloElement {
        let (_, r) = poly_divmod(p, &self.modulus).expect("Phi_b is nonzero");
        CycloElement {
            poly: r,
            b: self.b,
            modulus: Arc::clone(&self.modulus),
        }
    }

    /// `xi_b^k`, with `k` reduced mod `b` first.
    pub fn xi_pow(&self, k: u64) -> CycloElement {
        self.element(&RatPoly::monomial(Rational::one(), (k % self.b) as usize))
    }

    pub fn one(&self) -> CycloElement {
        self.element(&RatPoly::one())
    }

    pub fn zero(&self) -> CycloElement {
        self.element(&RatPoly::zero())
    }
}

impl CycloElement {
    pub fn poly(&self) -> &RatPoly {
        &self.poly
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    fn wrap(&self, p: RatPoly) -> CycloElement {
        let (_, r) = poly_divmod(&p, &self.modulus).expect("Phi_b is nonzero");
        CycloElement {
            poly: r,
            b: self.b,
            modulus: Arc::clone(&self.modulus),
        }
    }

    pub fn add(&self, other: &CycloElement) -> CycloElement {
        self.wrap(&self.poly + &other.poly)
    }

    pub fn sub(&self, other: &CycloElement) -> CycloElement {
        self.wrap(&self.poly - &other.poly)
    }

    pub fn mul(&self, other: &CycloElement) -> CycloElement {
        self.wrap(&self.poly * &other.poly)
    }

    pub fn scale(&self, c: &Rational) -> CycloElement {
        self.wrap(self.poly.scale(c))
    }

    /// Inverse via the extended Euclidean algorithm against `Phi_b`; `None` for zero.
    pub fn inv(&self) -> Option<CycloElement> {
        if self.poly.is_zero() {
            return None;
        }
        let (g, u, _) = poly_ext_gcd(&self.poly, &self.modulus);
        debug_assert_eq!(g, RatPoly::one(), "Phi_b is irreducible");
        Some(self.wrap(u))
    }

    /// The value if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.poly.degree() {
            None => Some(Rational::zero()),
            Some(0) => Some(self.poly.coeff(0)),
            Some(_) => None,
        }
    }
}

fn check_bound(b: &Integer, bound: u64) -> Result<u64> {
    match b.to_u64() {
        Some(v) if v <= bound => Ok(v),
        _ => Err(Error::BoundExceeded {
            b: b.to_string(),
            bound: bound.to_string(),
        }),
    }
}

fn residue(x: &Integer, b: u64) -> u64 {
    x.mod_floor(&Integer::from(b))
        .to_u64()
        .expect("residue fits in u64")
}

fn check_coprime(inst: &FDInstance) -> Result<()> {
    for aj in inst.a() {
        if !aj.gcd(inst.b()).is_one() {
            return Err(Error::NotCoprime(aj.to_string(), inst.b().to_string()));
        }
    }
    Ok(())
}

/// Exact value of the sum in the cyclotomic field, with the default bound on `b`.
pub fn cyclo_eval(inst: &FDInstance) -> Result<Rational> {
    cyclo_eval_bounded(inst, DEFAULT_CYCLO_BOUND)
}

/// Exact value of the sum in `Q[x]/(Phi_b)`.
///
/// For `y = x^m` with `b` not dividing `m`, `(1 - y) * sum_{i<b} i y^i = -b` in the field, so
/// `1/(1 - x^m) = -(1/b) P_m` with the integer polynomial `P_m = sum_i i x^{mi mod b}`. The
/// summand for `k` is the image of `sigma_k(F)`, `F = x^n prod_j P_{a_j}`, under
/// `Z[x]/(x^b - 1) -> Q[x]/(Phi_b)`, where `sigma_k : x -> x^k`.
///
/// `F` is built in `Z[x]/(x^b - 1)` with `O(b)` work per factor. The orbit sum
/// `G = sum_k sigma_k(F)` has coefficients depending only on `gcd(j, b)`, and the classes
/// `sum_{gcd(j,b)=e} x^j` reduce modulo `Phi_b` to the constants `mu(b/e)`, so `G` lands in `Q`
/// without an explicit polynomial reduction.
pub fn cyclo_eval_bounded(inst: &FDInstance, bound: u64) -> Result<Rational> {
    check_coprime(inst)?;
    let b = check_bound(inst.b(), bound)?;
    let d = inst.d() as u32;
    let n = residue(inst.n(), b);
    let a: Vec<u64> = inst.a().iter().map(|x| residue(x, b)).collect();

    // |coefficients| of F sum to at most (b^2/2)^d; the orbit sum adds a factor of b^2
    let magnitude = 2.0 * (b as f64).ln() + f64::from(d) * ((b as f64).powi(2) / 2.0).ln();
    let constant = if magnitude < 120.0 * std::f64::consts::LN_2 {
        Integer::from(orbit_constant::<i128>(n, &a, b))
    } else {
        orbit_constant::<Integer>(n, &a, b)
    };
    let bb = Integer::from(b);
    let value = Rational::new(constant, bb.pow(d + 1));
    Ok(if d % 2 == 1 { -value } else { value })
}

trait Ring:
    Clone + Zero + From<i64> + for<'x> AddAssign<&'x Self> + for<'x> SubAssign<&'x Self>
where
    for<'x> &'x Self: Mul<&'x Self, Output = Self>,
{
}

impl Ring for i128 {}
impl Ring for Integer {}

/// `sigma_k(f)` in `Z[x]/(x^b - 1)`, i.e. coefficient `i` moves to `k i mod b`.
fn substitute<T: Ring>(f: &[T], k: u64) -> Vec<T>
where
    for<'x> &'x T: Mul<&'x T, Output = T>,
{
    let b = f.len() as u64;
    let mut out = vec![T::zero(); f.len()];
    for (i, c) in f.iter().enumerate() {
        out[((i as u128 * k as u128) % b as u128) as usize] = c.clone();
    }
    out
}

/// `h * P_1` in `Z[x]/(x^b - 1)`, from `(1 - x) P_1 = S - b` with `S = sum_i x^i`.
fn times_p1<T: Ring>(h: &[T]) -> Vec<T>
where
    for<'x> &'x T: Mul<&'x T, Output = T>,
{
    let b = h.len();
    let total = h.iter().fold(T::zero(), |mut acc, c| {
        acc += c;
        acc
    });
    let bt = T::from(b as i64);
    let mut g = Vec::with_capacity(b);
    let mut g0 = T::zero();
    for i in 1..b {
        g0 += &(&T::from(i as i64) * &h[b - i]);
    }
    g.push(g0);
    for k in 1..b {
        let mut next = g[k - 1].clone();
        next += &total;
        next -= &(&bt * &h[k]);
        g.push(next);
    }
    g
}

/// Constant `G(xi_b)` of the orbit sum of `x^n prod_j P_{a_j}`.
fn orbit_constant<T: Ring>(n: u64, a: &[u64], b: u64) -> T
where
    for<'x> &'x T: Mul<&'x T, Output = T>,
{
    let bu = b as usize;
    let mut f = vec![T::zero(); bu];
    f[n as usize] = T::from(1);
    let bi = Integer::from(b);
    for &aj in a {
        // f * P_a = sigma_a(sigma_{a^{-1}}(f) * P_1)
        let inv = mod_inverse(&Integer::from(aj), &bi)
            .expect("a_j is coprime to b")
            .to_u64()
            .expect("residue fits in u64");
        f = substitute(&times_p1(&substitute(&f, inv)), aj);
    }
    // h[e] = sum of f_i over gcd(i, b) = e, indexed by divisor
    let divs = divisors(b);
    let pos = |e: u64| divs.binary_search(&e).expect("gcd(i, b) divides b");
    let mut h = vec![T::zero(); divs.len()];
    for (i, c) in f.iter().enumerate() {
        h[pos(num_integer::gcd(i as u64, b))] += c;
    }
    // G_j = sum_{e | gcd(j,b)} e h_e, minus the k = 0 orbit element at j = 0
    let mut total = T::zero();
    for (idx, &e) in divs.iter().enumerate() {
        let mu = mobius(b / e);
        if mu == 0 {
            continue;
        }
        let mut c = T::zero();
        for (jdx, &e2) in divs[..=idx].iter().enumerate() {
            if e % e2 == 0 {
                c += &(&T::from(e2 as i64) * &h[jdx]);
            }
        }
        if e == b {
            for fi in &f {
                c -= fi;
            }
        }
        let term = &T::from(mu) * &c;
        total += &term;
    }
    total
}

/// Term-by-term evaluation: each `1 - xi^{k a_j}` is inverted with the extended Euclidean
/// algorithm. Quadratic in `b` per term, so only practical for small `b`.
pub fn cyclo_eval_direct(inst: &FDInstance) -> Result<Rational> {
    check_coprime(inst)?;
    let b = check_bound(inst.b(), 2_000)?;
    let field = CycloField::new(b);
    let n = residue(inst.n(), b);
    let mut total = field.zero();
    for k in 1..b {
        let mut term = field.xi_pow((k as u128 * n as u128 % b as u128) as u64);
        for aj in inst.a() {
            let e = (k as u128 * residue(aj, b) as u128 % b as u128) as u64;
            let factor = field.one().sub(&field.xi_pow(e));
            let inv = factor
                .inv()
                .expect("1 - xi^{k a_j} is nonzero when gcd(a_j, b) = 1");
            term = term.mul(&inv);
        }
        total = total.add(&term);
    }
    let total = total.scale(&Rational::new(Integer::one(), Integer::from(b)));
    total
        .as_rational()
        .ok_or(Error::NonRationalResult(total.poly().degree().unwrap_or(0)))
}

/// Double-precision complex summation.
pub fn float_eval(inst: &FDInstance) -> Result<f64> {
    check_coprime(inst)?;
    let b = check_bound(inst.b(), FLOAT_BOUND)?;
    let n = residue(inst.n(), b);
    let a: Vec<u64> = inst.a().iter().map(|x| residue(x, b)).collect();
    let root = |e: u64| {
        let theta = std::f64::consts::TAU * (e as f64) / (b as f64);
        Complex64::new(theta.cos(), theta.sin())
    };
    let one = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 1..b {
        let mut term = root(((k as u128 * n as u128) % b as u128) as u64);
        for &aj in &a {
            term /= one - root(((k as u128 * aj as u128) % b as u128) as u64);
        }
        sum += term;
    }
    let value = sum / (b as f64);
    if value.im.abs() >= 1e-6 * (1.0 + value.re.abs()) {
        return Err(Error::ImaginaryResidual {
            real: value.re,
            imag: value.im,
        });
    }
    Ok(value.re)
}
