//! Exact linear algebra over the integer lattice.
//!
//! Matrices are small (dimension at most 7 or so) but entries grow quickly, so everything is
//! `BigInt`/`BigRational` and no floating-point Gram-Schmidt is ever used.

use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numeric::{int, mod_inverse, rat, rat_int, Integer, Rational};

pub type IntVector = Vec<Integer>;
pub type RatVector = Vec<Rational>;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Integer>,
}

#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Integer>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        IntMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::new(rows, cols, vec![Integer::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Integer::one();
        }
        m
    }

    pub fn from_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let data = rows
            .iter()
            .flat_map(|row| {
                assert_eq!(row.len(), c, "ragged rows");
                row.iter().map(|&x| int(x))
            })
            .collect();
        Self::new(r, c, data)
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[IntVector]) -> Self {
        let cols = columns.len();
        let rows = columns.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows, cols);
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "columns of unequal length");
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn column(&self, j: usize) -> IntVector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<IntVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row(&self, i: usize) -> IntVector {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn set_column(&mut self, j: usize, col: &[Integer]) {
        assert_eq!(col.len(), self.rows);
        for (i, x) in col.iter().enumerate() {
            self[(i, j)] = x.clone();
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * &rhs[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Integer]) -> IntVector {
        assert_eq!(self.cols, v.len(), "dimension mismatch in product");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    pub fn mul_rat_vec(&self, v: &[Rational]) -> RatVector {
        assert_eq!(self.cols, v.len(), "dimension mismatch in product");
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| rat_int(&self[(i, j)]) * &v[j])
                    .fold(Rational::zero(), |acc, x| acc + x)
            })
            .collect()
    }

    pub fn to_rational(&self) -> RatMatrix {
        RatMatrix::new(
            self.rows,
            self.cols,
            self.data.iter().map(rat_int).collect(),
        )
    }

    /// Swaps columns `i` and `j`.
    pub fn swap_columns(&mut self, i: usize, j: usize) {
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = Integer;
    fn index(&self, (i, j): (usize, usize)) -> &Integer {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Integer {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        RatMatrix { rows, cols, data }
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![Rational::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = Rational::one();
        }
        Self::new(n, n, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> RatVector {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> RatVector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn mul(&self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut data = vec![Rational::zero(); self.rows * rhs.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    data[i * rhs.cols + j] += a * &rhs[(k, j)];
                }
            }
        }
        RatMatrix::new(self.rows, rhs.cols, data)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> RatVector {
        assert_eq!(self.cols, v.len(), "dimension mismatch in product");
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| &self[(i, j)] * &v[j])
                    .fold(Rational::zero(), |acc, x| acc + x)
            })
            .collect()
    }

    /// `Some` when every entry is an integer.
    pub fn to_integer(&self) -> Option<IntMatrix> {
        self.data
            .iter()
            .map(|x| x.is_integer().then(|| x.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(|data| IntMatrix::new(self.rows, self.cols, data))
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

pub fn dot(u: &[Integer], v: &[Integer]) -> Integer {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

fn dot_rat(u: &[Rational], v: &[Rational]) -> Rational {
    u.iter()
        .zip(v)
        .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
}

/// Divides out the gcd of the entries; the zero vector is returned unchanged.
pub fn primitive(v: &[Integer]) -> IntVector {
    let g = v.iter().fold(Integer::zero(), |g, x| g.gcd(x));
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Smallest positive multiple of `v` with integer entries, made primitive.
pub fn clear_to_primitive(v: &[Rational]) -> IntVector {
    let l = v.iter().fold(Integer::one(), |l, x| l.lcm(x.denom()));
    let scaled: IntVector = v.iter().map(|x| (x * rat_int(&l)).to_integer()).collect();
    primitive(&scaled)
}

/// Determinant by fraction-free (Bareiss) elimination with row pivoting.
pub fn determinant(m: &IntMatrix) -> Result<Integer> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    if n == 0 {
        return Ok(Integer::one());
    }
    let mut a: Vec<Vec<Integer>> = (0..n).map(|i| m.row(i)).collect();
    let mut sign = Integer::one();
    let mut prev = Integer::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    sign = -sign;
                }
                None => return Ok(Integer::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    Ok(sign * &a[n - 1][n - 1])
}

/// Exact inverse by Gauss-Jordan elimination over the rationals.
pub fn inverse_rational(m: &IntMatrix) -> Result<RatMatrix> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rational> = m.row(i).iter().map(rat_int).collect();
            row.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            row
        })
        .collect();
    for k in 0..n {
        let p = (k..n)
            .find(|&i| !a[i][k].is_zero())
            .ok_or(Error::Singular)?;
        a.swap(k, p);
        let inv = a[k][k].recip();
        for x in a[k].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[k].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == k || row[k].is_zero() {
                continue;
            }
            let f = row[k].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * p;
            }
        }
    }
    let data = a
        .into_iter()
        .flat_map(|row| row.into_iter().skip(n))
        .collect();
    let inv = RatMatrix::new(n, n, data);
    assert!(
        m.to_rational().mul(&inv) == RatMatrix::identity(n),
        "inverse check failed"
    );
    Ok(inv)
}

/// Gram-Schmidt data of a column basis: `mu[i][j]` for `j < i` and squared norms `bb[i]`.
struct GramSchmidt {
    mu: Vec<Vec<Rational>>,
    bb: Vec<Rational>,
}

fn gram_schmidt(basis: &[IntVector]) -> GramSchmidt {
    let n = basis.len();
    let rb: Vec<RatVector> = basis
        .iter()
        .map(|v| v.iter().map(rat_int).collect())
        .collect();
    let mut star: Vec<RatVector> = Vec::with_capacity(n);
    let mut mu = vec![vec![Rational::zero(); n]; n];
    let mut bb = Vec::with_capacity(n);
    for i in 0..n {
        let mut v = rb[i].clone();
        for j in 0..i {
            if bb[j] == Rational::zero() {
                continue;
            }
            let m: Rational = dot_rat(&rb[i], &star[j]) / &bb[j];
            for (x, s) in v.iter_mut().zip(&star[j]) {
                *x -= &m * s;
            }
            mu[i][j] = m;
        }
        mu[i][i] = Rational::one();
        bb.push(dot_rat(&v, &v));
        star.push(v);
    }
    GramSchmidt { mu, bb }
}

fn round_rat(x: &Rational) -> Integer {
    (x + rat(1, 2)).floor().to_integer()
}

/// LLL reduction of the columns of `basis` with `delta = 3/4`.
///
/// Returns `(reduced, transform)` with `reduced = basis * transform` and `transform` unimodular.
pub fn lll_reduce(basis: &IntMatrix) -> Result<(IntMatrix, IntMatrix)> {
    let n = basis.cols();
    let mut b = basis.columns();
    let mut t = IntMatrix::identity(n).columns();
    if n == 0 {
        return Ok((basis.clone(), IntMatrix::identity(0)));
    }
    let delta = rat(3, 4);
    let mut gs = gram_schmidt(&b);
    if gs.bb.iter().any(Zero::is_zero) {
        return Err(Error::DependentColumns);
    }
    let mut k = 1;
    while k < n {
        for j in (0..k).rev() {
            let q = round_rat(&gs.mu[k][j]);
            if q.is_zero() {
                continue;
            }
            let (bj, tj) = (b[j].clone(), t[j].clone());
            for (x, y) in b[k].iter_mut().zip(&bj) {
                *x -= &q * y;
            }
            for (x, y) in t[k].iter_mut().zip(&tj) {
                *x -= &q * y;
            }
            let qr = rat_int(&q);
            for l in 0..=j {
                let d = &qr * &gs.mu[j][l];
                gs.mu[k][l] -= d;
            }
        }
        let lhs = gs.bb[k].clone();
        let m = &gs.mu[k][k - 1];
        let rhs = (&delta - m * m) * &gs.bb[k - 1];
        if lhs >= rhs {
            k += 1;
        } else {
            b.swap(k, k - 1);
            t.swap(k, k - 1);
            gs = gram_schmidt(&b);
            k = (k - 1).max(1);
        }
    }
    Ok((IntMatrix::from_columns(&b), IntMatrix::from_columns(&t)))
}

/// Checks size reduction and the Lovász condition with `delta = 3/4`, exactly.
pub fn is_lll_reduced(basis: &IntMatrix) -> bool {
    let b = basis.columns();
    let gs = gram_schmidt(&b);
    let half = rat(1, 2);
    let size_reduced = (0..b.len()).all(|i| (0..i).all(|j| gs.mu[i][j].abs() <= half));
    let lovasz = (1..b.len()).all(|k| {
        let m = &gs.mu[k][k - 1];
        gs.bb[k] >= (rat(3, 4) - m * m) * &gs.bb[k - 1]
    });
    size_reduced && lovasz
}

fn max_abs(v: &[Rational]) -> Rational {
    v.iter()
        .map(Signed::abs)
        .max()
        .unwrap_or_else(Rational::zero)
}

/// Visits every vector of `[-k, k]^dim` in lexicographic order.
fn for_each_in_box(dim: usize, k: i64, mut f: impl FnMut(&[i64])) {
    let mut c = vec![-k; dim];
    loop {
        f(&c);
        let mut i = dim;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if c[i] < k {
                c[i] += 1;
                break;
            }
            c[i] = -k;
        }
    }
}

/// Finds an integer vector `w` whose coordinates `alpha = U^{-1} w` in the basis `U`
/// satisfy `max |alpha_j| < 1`, with at least one `alpha_j > 0`.
///
/// Candidates are small integer combinations of an LLL-reduced basis of the lattice
/// `U^{-1} Z^D` (scaled by `index` to make it integral). If no candidate in the `[-2,2]^D` box
/// qualifies, the box grows until one does; Minkowski's theorem guarantees a vector with
/// `max |alpha_j| <= index^{-1/D}`.
pub fn short_nonneg_combination(u: &IntMatrix, index: &Integer) -> Result<(IntVector, RatVector)> {
    let dim = u.rows();
    assert!(u.is_square(), "generator matrix must be square");
    assert!(*index >= int(2), "short vector search needs index >= 2");
    let u_inv = inverse_rational(u)?;
    let idx = rat_int(index);
    let scaled = RatMatrix::new(
        dim,
        dim,
        (0..dim)
            .flat_map(|i| (0..dim).map(move |j| (i, j)))
            .map(|(i, j)| &u_inv[(i, j)] * &idx)
            .collect(),
    );
    let a = scaled.to_integer().expect("index * U^{-1} is integral");
    let (reduced, transform) = lll_reduce(&a)?;

    let mut best: Option<(Rational, Vec<i64>)> = None;
    let mut radius = 2;
    loop {
        for_each_in_box(dim, radius, |c| {
            if c.iter().all(|x| *x == 0) {
                return;
            }
            let cv: IntVector = c.iter().map(|&x| int(x)).collect();
            let alpha_scaled = reduced.mul_vec(&cv);
            let m = alpha_scaled
                .iter()
                .map(Signed::abs)
                .max()
                .expect("dim >= 1");
            let m = Rational::new(m, index.clone());
            if best.as_ref().is_none_or(|(bm, _)| m < *bm) {
                best = Some((m, c.to_vec()));
            }
        });
        if let Some((m, _)) = &best {
            if *m < Rational::one() {
                break;
            }
        }
        radius += 1;
    }
    let (_, c) = best.expect("search box is nonempty");
    let cv: IntVector = c.iter().map(|&x| int(x)).collect();
    let mut w = transform.mul_vec(&cv);
    let mut alpha: RatVector = reduced
        .mul_vec(&cv)
        .iter()
        .map(|x| Rational::new(x.clone(), index.clone()))
        .collect();
    if !alpha.iter().any(Signed::is_positive) {
        w.iter_mut().for_each(|x| *x = -x.clone());
        alpha.iter_mut().for_each(|x| *x = -x.clone());
    }
    let g = w.iter().fold(Integer::zero(), |g, x| g.gcd(x));
    if g > Integer::one() {
        let gr = rat_int(&g);
        w.iter_mut().for_each(|x| *x = &*x / &g);
        alpha.iter_mut().for_each(|x| *x = &*x / &gr);
    }
    let w_rat: RatVector = w.iter().map(rat_int).collect();
    assert_eq!(u.mul_rat_vec(&alpha), w_rat, "U * alpha must equal w");
    assert!(
        max_abs(&alpha) < Rational::one(),
        "short vector must have max|alpha| < 1"
    );
    Ok((w, alpha))
}

/// Column basis of `{ m in Z^d : sum_j a_j m_j = 0 (mod b) }`.
///
/// First column `b e_1`; column `j >= 2` is `e_j - (a_j a_1^{-1} mod b) e_1`.
pub fn congruence_lattice_basis(a: &[Integer], b: &Integer) -> Result<IntMatrix> {
    let d = a.len();
    if d == 0 {
        return Err(Error::BadDimension(
            "congruence lattice needs d >= 1".into(),
        ));
    }
    if *b < int(2) {
        return Err(Error::BadDimension(format!(
            "modulus {b} must be at least 2"
        )));
    }
    for aj in a {
        if !aj.gcd(b).is_one() {
            return Err(Error::NotCoprime(aj.to_string(), b.to_string()));
        }
    }
    let a1_inv = mod_inverse(&a[0], b)?;
    let mut m = IntMatrix::zeros(d, d);
    m[(0, 0)] = b.clone();
    for j in 1..d {
        m[(0, j)] = -((&a[j] * &a1_inv).mod_floor(b));
        m[(j, j)] = Integer::one();
    }
    Ok(m)
}
