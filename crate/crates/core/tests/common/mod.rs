#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use fdsum::barvinok::{unimodular_term, SignedConeList};
use fdsum::lattice::{determinant, inverse_rational, primitive, IntMatrix, IntVector, RatVector};
use fdsum::numeric::{ceil, int, rat};
use fdsum::srf::eval_at;
use fdsum::{validate, ExponentMap, FDInstance, Integer, Rational, SimplicialCone, Srf};
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

pub const PRIMES: [i64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

pub fn is_prime(n: i64) -> bool {
    n >= 2 && (2..).take_while(|p| p * p <= n).all(|p| n % p != 0)
}

pub fn coprime_entry<R: Rng>(rng: &mut R, b: i64, max: i64) -> i64 {
    loop {
        let x = rng.gen_range(1..=max);
        if num_integer::gcd(x, b) == 1 {
            return x;
        }
    }
}

/// `b` in `[2, b_max]`, alternating between primes and composites.
pub fn random_instance<R: Rng>(rng: &mut R, i: usize, b_max: i64, a_max: i64) -> FDInstance {
    let want_prime = i.is_multiple_of(2);
    let b = loop {
        let b = rng.gen_range(2..=b_max);
        if is_prime(b) == want_prime {
            break b;
        }
    };
    let d = rng.gen_range(1..=3usize);
    let a: Vec<i64> = (0..d).map(|_| coprime_entry(rng, b, a_max)).collect();
    let n = rng.gen_range(-b..=2 * b);
    validate(n, &a, b).expect("generated instance is valid")
}

/// Full-dimensional cone with primitive generators in `[-20, 20]`, index at most `max_index`,
/// and a rational apex with denominators at most 10.
pub fn random_cone<R: Rng>(rng: &mut R, dim: usize, max_index: i64) -> SimplicialCone {
    loop {
        let cols: Vec<IntVector> = (0..dim)
            .map(|_| {
                let v: IntVector = (0..dim).map(|_| int(rng.gen_range(-20..=20))).collect();
                primitive(&v)
            })
            .collect();
        if cols.iter().any(|c| c.iter().all(Zero::is_zero)) {
            continue;
        }
        let g = IntMatrix::from_columns(&cols);
        let det = determinant(&g).unwrap().abs();
        if det.is_zero() || det > int(max_index) {
            continue;
        }
        let apex: RatVector = (0..dim)
            .map(|_| {
                let q = rng.gen_range(1..=10i64);
                rat(rng.gen_range(-5 * q..=5 * q), q)
            })
            .collect();
        return SimplicialCone::new(apex, g, 1);
    }
}

fn frac(q: &Rational) -> Rational {
    q - Rational::from_integer(q.floor().to_integer())
}

/// Lattice points `apex + G lambda` with `lambda` in `[0, 1)^D`, found by walking the group
/// `G^{-1} Z^D / Z^D`.
pub fn parallelepiped_points(cone: &SimplicialCone) -> Vec<IntVector> {
    let inv = inverse_rational(&cone.generators).unwrap();
    let dim = cone.dim();
    let steps: Vec<RatVector> = (0..dim)
        .map(|j| inv.column(j).iter().map(frac).collect())
        .collect();
    let apex_coords = inv.mul_vec(&cone.apex);
    let start: RatVector = vec![Rational::zero(); dim];
    let mut seen: HashSet<RatVector> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(mu) = queue.pop_front() {
        for s in &steps {
            let next: RatVector = mu.iter().zip(s).map(|(x, y)| frac(&(x + y))).collect();
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    assert_eq!(
        int(seen.len() as i64),
        cone.index(),
        "group order equals the index"
    );
    seen.into_iter()
        .map(|mu| {
            let lambda: RatVector = mu
                .iter()
                .zip(&apex_coords)
                .map(|(m, a)| frac(&(m - a)))
                .collect();
            let p = cone.generators.to_rational().mul_vec(&lambda);
            p.iter()
                .zip(&cone.apex)
                .map(|(x, a)| {
                    let v = x + a;
                    assert!(v.is_integer(), "parallelepiped point must be integral");
                    v.to_integer()
                })
                .collect()
        })
        .collect()
}

fn monomial(exp: &[Integer], z: &[Rational]) -> Rational {
    exp.iter().zip(z).fold(Rational::one(), |acc, (e, x)| {
        let e = e.to_i32().expect("small exponent");
        acc * num_traits::Pow::pow(x, e)
    })
}

/// Generating function of the closed cone at `z`, summed over its fundamental parallelepiped.
pub fn cone_gf_at(cone: &SimplicialCone, z: &[Rational]) -> Rational {
    let numer = parallelepiped_points(cone)
        .iter()
        .fold(Rational::zero(), |acc, p| acc + monomial(p, z));
    let denom = cone
        .generators
        .columns()
        .iter()
        .fold(Rational::one(), |acc, g| {
            acc * (Rational::one() - monomial(g, z))
        });
    numer / denom
}

/// Signed sum of the unimodular generating functions at `z`.
pub fn decomposition_gf_at(list: &SignedConeList, z: &[Rational]) -> Rational {
    let dim = z.len();
    let emap = ExponentMap::identity(dim);
    let terms = list
        .cones
        .iter()
        .map(|c| unimodular_term(c, &emap).unwrap())
        .collect();
    eval_at(&Srf::new(dim, terms), z).unwrap()
}

/// Points `p_i / q_i` built from distinct primes, so no nonzero monomial equals 1.
pub fn prime_points(dim: usize, count: usize) -> Vec<Vec<Rational>> {
    (0..count)
        .map(|k| {
            (0..dim)
                .map(|i| {
                    let j = 2 * (k * dim + i);
                    rat(PRIMES[j % PRIMES.len()], PRIMES[(j + 1) % PRIMES.len()])
                })
                .collect()
        })
        .collect()
}

/// Integer half-space description `A p >= t` of a closed cone.
struct Halfspaces {
    a: Vec<Vec<i64>>,
    t: Vec<i64>,
}

impl Halfspaces {
    fn new(cone: &SimplicialCone) -> Self {
        let inv = inverse_rational(&cone.generators).unwrap();
        let dim = cone.dim();
        let mut a = Vec::with_capacity(dim);
        let mut t = Vec::with_capacity(dim);
        for i in 0..dim {
            let row = inv.row(i);
            let l = row.iter().fold(Integer::one(), |l, x| l.lcm(x.denom()));
            let lr = Rational::from_integer(l);
            let ints: Vec<i64> = row
                .iter()
                .map(|x| (x * &lr).to_integer().to_i64().unwrap())
                .collect();
            let th: Rational = row
                .iter()
                .zip(&cone.apex)
                .map(|(x, y)| x * y)
                .sum::<Rational>()
                * &lr;
            a.push(ints);
            t.push(ceil(&th).to_i64().unwrap());
        }
        Halfspaces { a, t }
    }

    fn contains(&self, p: &[i64]) -> bool {
        self.a
            .iter()
            .zip(&self.t)
            .all(|(row, t)| row.iter().zip(p).map(|(x, y)| x * y).sum::<i64>() >= *t)
    }
}

/// First lattice point in the `(2r+1)^D` box around the apex where the signed count of
/// decomposition cones differs from the indicator of the original cone, with both values.
pub fn box_count_mismatch(
    cone: &SimplicialCone,
    list: &SignedConeList,
    r: i64,
) -> Option<(Vec<i64>, i64, i64)> {
    let orig = Halfspaces::new(cone);
    let parts: Vec<(Halfspaces, i64)> = list
        .cones
        .iter()
        .map(|c| (Halfspaces::new(c), i64::from(c.sign)))
        .collect();
    let center: Vec<i64> = cone
        .apex
        .iter()
        .map(|q| q.round().to_integer().to_i64().unwrap())
        .collect();
    let dim = center.len();
    let mut offs = vec![-r; dim];
    loop {
        let p: Vec<i64> = center.iter().zip(&offs).map(|(c, o)| c + o).collect();
        let want = i64::from(orig.contains(&p));
        let got: i64 = parts
            .iter()
            .filter(|(h, _)| h.contains(&p))
            .map(|(_, s)| s)
            .sum();
        if want != got {
            return Some((p, got, want));
        }
        let mut k = 0;
        while k < dim && offs[k] == r {
            offs[k] = -r;
            k += 1;
        }
        if k == dim {
            return None;
        }
        offs[k] += 1;
    }
}
