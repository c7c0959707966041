//! From an input triple to a full-dimensional rational simplicial cone.
//!
//! The constant term with the slack variable `z_0` enumerates the lattice points of the cone
//! with vertex `v = (-n/b, 0, ..., 0)` and generator columns
//!
//! ```text
//!     H = [ -a_1 -a_2 ... -a_d ]
//!         [   b    0  ...   0  ]
//!         [   0    b  ...   0  ]
//!         [          ...       ]
//!         [   0    0  ...   b  ]
//! ```
//!
//! That cone has only `d` generators in `R^{d+1}`. Its lattice points are `v + H t` with
//! `t = (B s + m0) / b`, where `B` is a basis of the congruence lattice
//! `{m : a.m = 0 mod b}` and `m0` a particular solution of `a.m = -n mod b`. In the `s`
//! coordinates the cone is full-dimensional: apex `-B^{-1} m0`, generators the columns of
//! `B^{-1}`. The affine map `s -> x0 + M s` sends `s` back to the exponent of `z`.

use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{
    clear_to_primitive, congruence_lattice_basis, determinant, inverse_rational, IntMatrix,
    IntVector, RatVector,
};
use crate::numeric::{mod_inverse, rat_int, Integer, Rational};

/// A validated input `(n, a, b)`: `b >= 2`, `d >= 1`, every `a_j >= 1` coprime to `b`.
///
/// `n` is kept as given; [`FDInstance::n_reduced`] gives the residue in `[0, b-1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FDInstance {
    n: Integer,
    a: Vec<Integer>,
    b: Integer,
}

impl FDInstance {
    /// Use [`crate::validate`] for structured error reporting.
    pub(crate) fn new_unchecked(n: Integer, a: Vec<Integer>, b: Integer) -> Self {
        FDInstance { n, a, b }
    }

    pub fn n(&self) -> &Integer {
        &self.n
    }

    pub fn n_reduced(&self) -> Integer {
        self.n.mod_floor(&self.b)
    }

    pub fn a(&self) -> &[Integer] {
        &self.a
    }

    pub fn b(&self) -> &Integer {
        &self.b
    }

    pub fn d(&self) -> usize {
        self.a.len()
    }

    /// The same sum with a different `n`.
    pub fn with_n(&self, n: Integer) -> Self {
        FDInstance { n, ..self.clone() }
    }

    /// The same sum with the entries of `a` permuted or replaced.
    pub fn with_a(&self, a: Vec<Integer>) -> Self {
        FDInstance { a, ..self.clone() }
    }
}

impl fmt::Display for FDInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a: Vec<String> = self.a.iter().map(ToString::to_string).collect();
        write!(f, "s_{}({};{})", self.n, a.join(","), self.b)
    }
}

/// Shifted closed cone `apex + generators * R^D_{>=0}` carrying a multiplicity sign.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplicialCone {
    pub apex: RatVector,
    /// Columns are the generators; each is primitive.
    pub generators: IntMatrix,
    pub sign: i8,
}

impl SimplicialCone {
    pub fn new(apex: RatVector, generators: IntMatrix, sign: i8) -> Self {
        debug_assert!(sign == 1 || sign == -1);
        debug_assert_eq!(apex.len(), generators.rows());
        SimplicialCone {
            apex,
            generators,
            sign,
        }
    }

    pub fn dim(&self) -> usize {
        self.generators.rows()
    }

    /// `|det(generators)|`, the number of lattice points in the half-open fundamental parallelepiped.
    pub fn index(&self) -> Integer {
        determinant(&self.generators)
            .expect("cone generators are square")
            .abs()
    }

    pub fn is_unimodular(&self) -> bool {
        self.index().is_one()
    }

    /// Closed-cone membership of a point.
    pub fn contains(&self, p: &[Integer]) -> bool {
        let inv = inverse_rational(&self.generators).expect("cone generators are nonsingular");
        let shifted: RatVector = p
            .iter()
            .zip(&self.apex)
            .map(|(x, a)| rat_int(x) - a)
            .collect();
        inv.mul_vec(&shifted).iter().all(|c| !c.is_negative())
    }
}

/// Affine map `s -> offset + linear * s` from cone lattice points to `z` exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentMap {
    pub offset: IntVector,
    pub linear: IntMatrix,
}

impl ExponentMap {
    pub fn identity(dim: usize) -> Self {
        ExponentMap {
            offset: vec![Integer::zero(); dim],
            linear: IntMatrix::identity(dim),
        }
    }

    pub fn apply(&self, s: &[Integer]) -> IntVector {
        self.linear
            .mul_vec(s)
            .into_iter()
            .zip(&self.offset)
            .map(|(x, o)| x + o)
            .collect()
    }

    pub fn apply_linear(&self, g: &[Integer]) -> IntVector {
        self.linear.mul_vec(g)
    }
}

/// `m0 = ((-n a_1^{-1}) mod b) e_1`, a solution of `a.m0 = -n (mod b)` with entries in `[0, b-1]`.
pub fn particular_solution(a: &[Integer], b: &Integer, n: &Integer) -> Result<IntVector> {
    if a.is_empty() {
        return Err(Error::BadDimension("a must be nonempty".into()));
    }
    let inv = mod_inverse(&a[0], b)?;
    let mut m0 = vec![Integer::zero(); a.len()];
    m0[0] = (-n * inv).mod_floor(b);
    Ok(m0)
}

/// Vertex `v` and generator matrix `H` of the slack-variable cone in `R^{d+1}`.
pub fn source_cone(inst: &FDInstance) -> (RatVector, IntMatrix) {
    let d = inst.d();
    let mut v = vec![Rational::zero(); d + 1];
    v[0] = -Rational::new(inst.n_reduced(), inst.b().clone());
    (v, slack_generators(inst.a(), inst.b()))
}

fn slack_generators(a: &[Integer], b: &Integer) -> IntMatrix {
    let d = a.len();
    let mut h = IntMatrix::zeros(d + 1, d);
    for (j, aj) in a.iter().enumerate() {
        h[(0, j)] = -aj;
        h[(j + 1, j)] = b.clone();
    }
    h
}

/// Full-dimensional cone over `Z^d` and exponent map whose lattice-point generating function is
/// the slack-variable constant term.
pub fn build_cone(inst: &FDInstance) -> Result<(SimplicialCone, ExponentMap)> {
    let d = inst.d();
    if d == 0 {
        return Err(Error::BadDimension("d must be at least 1".into()));
    }
    let b = inst.b();
    let n = inst.n_reduced();
    let basis = congruence_lattice_basis(inst.a(), b)?;
    let m0 = particular_solution(inst.a(), b, &n)?;
    let basis_inv = inverse_rational(&basis)?;

    let m0_rat: RatVector = m0.iter().map(rat_int).collect();
    let apex: RatVector = basis_inv.mul_vec(&m0_rat).into_iter().map(|x| -x).collect();
    let gens: Vec<IntVector> = (0..d)
        .map(|j| clear_to_primitive(&basis_inv.column(j)))
        .collect();
    let generators = IntMatrix::from_columns(&gens);

    let (v, h) = source_cone(inst);
    let b_rat = rat_int(b);
    let offset: Vec<Rational> = h
        .mul_rat_vec(&m0_rat)
        .iter()
        .zip(&v)
        .map(|(x, vi)| vi + x / &b_rat)
        .collect();
    let offset: IntVector = offset
        .iter()
        .map(|x| {
            assert!(x.is_integer(), "exponent offset must be integral");
            x.to_integer()
        })
        .collect();
    let hb = h.mul(&basis);
    let mut linear = IntMatrix::zeros(d + 1, d);
    for i in 0..=d {
        for j in 0..d {
            let (q, r) = hb[(i, j)].div_rem(b);
            assert!(r.is_zero(), "exponent map must be integral");
            linear[(i, j)] = q;
        }
    }
    debug_assert_eq!(determinant(&basis).map(|x| x.abs()), Ok(b.clone()));
    Ok((
        SimplicialCone::new(apex, generators, 1),
        ExponentMap { offset, linear },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, rat};

    fn iv(v: &[i64]) -> IntVector {
        v.iter().map(|&x| int(x)).collect()
    }

    fn inst(n: i64, a: &[i64], b: i64) -> FDInstance {
        FDInstance::new_unchecked(int(n), iv(a), int(b))
    }

    #[test]
    fn particular_solution_examples() {
        assert_eq!(
            particular_solution(&iv(&[4, 3, 5]), &int(7), &int(4)).unwrap(),
            iv(&[6, 0, 0])
        );
        assert_eq!(
            particular_solution(&iv(&[1]), &int(5), &int(0)).unwrap(),
            iv(&[0])
        );
        assert_eq!(
            particular_solution(&iv(&[3, 2]), &int(5), &int(7)).unwrap(),
            iv(&[1, 0])
        );
        assert!(matches!(
            particular_solution(&iv(&[2, 1]), &int(4), &int(1)),
            Err(Error::NotCoprime(..))
        ));
    }

    #[test]
    fn source_cone_of_example() {
        let (v, h) = source_cone(&inst(4, &[4, 3, 5], 7));
        assert_eq!(v, vec![rat(-4, 7), rat(0, 1), rat(0, 1), rat(0, 1)]);
        assert_eq!(
            h.columns(),
            vec![iv(&[-4, 7, 0, 0]), iv(&[-3, 0, 7, 0]), iv(&[-5, 0, 0, 7])]
        );
    }

    #[test]
    fn build_cone_trivial_cases() {
        let (cone, emap) = build_cone(&inst(0, &[1], 2)).unwrap();
        assert_eq!(cone.apex, vec![rat(0, 1)]);
        assert_eq!(cone.generators, IntMatrix::from_rows(&[&[1]]));
        assert_eq!(emap.offset, iv(&[0, 0]));
        assert_eq!(emap.linear.column(0), iv(&[-1, 2]));

        let (cone, emap) = build_cone(&inst(1, &[1], 2)).unwrap();
        assert_eq!(cone.apex, vec![rat(-1, 2)]);
        assert_eq!(emap.offset, iv(&[-1, 1]));
    }

    #[test]
    fn build_cone_example_instance() {
        let i = inst(4, &[4, 3, 5], 7);
        let (cone, emap) = build_cone(&i).unwrap();
        assert_eq!(cone.dim(), 3);
        assert_eq!(cone.sign, 1);
        // every generator maps to a nonzero exponent direction
        for g in cone.generators.columns() {
            assert!(emap.apply_linear(&g).iter().any(|x| !x.is_zero()));
        }
        // generators are the primitive columns of B^{-1}
        let basis = congruence_lattice_basis(i.a(), i.b()).unwrap();
        let inv = inverse_rational(&basis).unwrap();
        for j in 0..3 {
            assert_eq!(
                cone.generators.column(j),
                clear_to_primitive(&inv.column(j))
            );
        }
    }

    #[test]
    fn n_is_reduced_modulo_b() {
        let a = build_cone(&inst(4, &[4, 3, 5], 7)).unwrap();
        let b = build_cone(&inst(11, &[4, 3, 5], 7)).unwrap();
        let c = build_cone(&inst(-3, &[4, 3, 5], 7)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(inst(-3, &[4], 7).to_string(), "s_-3(4;7)");
    }
}
