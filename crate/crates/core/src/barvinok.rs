//! Signed decomposition of a simplicial cone into unimodular cones.
//!
//! The decomposition runs on the dual cone. A dual cone of index `N >= 2` with generators
//! `u_1..u_D` is split with a short lattice vector `w = sum_j alpha_j u_j`, `max |alpha_j| < 1`,
//! into the cones `K_j = cone(u_1, .., w, .., u_D)` (`w` in slot `j`) with sign `sgn(alpha_j)`.
//! The identity `[K] = sum_j sgn(alpha_j) [K_j]` holds up to lower-dimensional cones as long as
//! not every `alpha_j` is negative. Dualizing turns those lower-dimensional cones into cones
//! containing lines, whose generating functions vanish, so they are simply dropped.

use num_traits::{One, Signed, Zero};

use crate::cone::{ExponentMap, SimplicialCone};
use crate::error::{Error, Result};
use crate::lattice::{
    clear_to_primitive, determinant, inverse_rational, short_nonneg_combination, IntMatrix,
    IntVector, RatVector,
};
use crate::numeric::{ceil, Integer, Rational};
use crate::srf::SRFTerm;

/// Unimodular cones with signs, in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedConeList {
    pub cones: Vec<SimplicialCone>,
    pub stats: DecompositionStats,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DecompositionStats {
    /// Nodes visited in the dual recursion, including the root.
    pub nodes: usize,
    pub max_depth: usize,
    /// Cones before cancellation of identical cones with opposite signs.
    pub emitted: usize,
}

impl SignedConeList {
    pub fn len(&self) -> usize {
        self.cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }
}

/// Dual cone: generators are the primitive columns of `(G^{-1})^T`. Apex and sign are kept.
pub fn dualize(cone: &SimplicialCone) -> Result<SimplicialCone> {
    let inv = inverse_rational(&cone.generators)?;
    let cols: Vec<IntVector> = (0..inv.rows())
        .map(|i| clear_to_primitive(&inv.row(i)))
        .collect();
    Ok(SimplicialCone::new(
        cone.apex.clone(),
        IntMatrix::from_columns(&cols),
        cone.sign,
    ))
}

fn canonical_generators(g: &IntMatrix) -> IntMatrix {
    let mut cols = g.columns();
    cols.sort();
    IntMatrix::from_columns(&cols)
}

/// Sorts cones and removes pairs of identical cones with opposite signs.
fn canonicalize(mut cones: Vec<SimplicialCone>) -> Vec<SimplicialCone> {
    for c in &mut cones {
        c.generators = canonical_generators(&c.generators);
    }
    cones.sort_by(|a, b| a.generators.cmp(&b.generators).then(a.sign.cmp(&b.sign)));
    let mut out: Vec<SimplicialCone> = Vec::with_capacity(cones.len());
    let mut i = 0;
    while i < cones.len() {
        let mut j = i;
        let mut net = 0i64;
        while j < cones.len() && cones[j].generators == cones[i].generators {
            net += i64::from(cones[j].sign);
            j += 1;
        }
        let sign = if net > 0 { 1 } else { -1 };
        for _ in 0..net.unsigned_abs() {
            let mut c = cones[i].clone();
            c.sign = sign;
            out.push(c);
        }
        i = j;
    }
    out
}

/// Barvinok decomposition of a full-dimensional cone, on the dual side.
pub fn decompose_unimodular(cone: &SimplicialCone) -> Result<SignedConeList> {
    let mut stats = DecompositionStats {
        nodes: 1,
        ..Default::default()
    };
    if cone.is_unimodular() {
        stats.emitted = 1;
        return Ok(SignedConeList {
            cones: vec![cone.clone()],
            stats,
        });
    }
    let dual = dualize(cone)?;
    let mut stack: Vec<(IntMatrix, i8, usize)> = vec![(dual.generators, cone.sign, 0)];
    let mut leaves: Vec<(IntMatrix, i8)> = Vec::new();
    while let Some((gens, sign, depth)) = stack.pop() {
        stats.max_depth = stats.max_depth.max(depth);
        let index = determinant(&gens)?.abs();
        if index.is_zero() {
            return Err(Error::Singular);
        }
        if index.is_one() {
            leaves.push((gens, sign));
            continue;
        }
        let (w, alpha) = short_nonneg_combination(&gens, &index)?;
        for (j, a) in alpha.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let mut child = gens.clone();
            child.set_column(j, &w);
            let child_index = determinant(&child)?.abs();
            assert!(child_index < index, "child index must decrease");
            debug_assert_eq!(
                Rational::from_integer(child_index.clone()),
                a.abs() * Rational::from_integer(index.clone())
            );
            let child_sign = if a.is_negative() { -sign } else { sign };
            stats.nodes += 1;
            stack.push((child, child_sign, depth + 1));
        }
    }
    stats.emitted = leaves.len();
    let mut cones = Vec::with_capacity(leaves.len());
    for (gens, sign) in leaves {
        let primal = dualize(&SimplicialCone::new(cone.apex.clone(), gens, sign))?;
        assert!(
            primal.is_unimodular(),
            "dual of a unimodular cone must be unimodular"
        );
        cones.push(primal);
    }
    Ok(SignedConeList {
        cones: canonicalize(cones),
        stats,
    })
}

/// Generating-function term of a shifted closed unimodular cone pushed through `emap`.
///
/// With the apex written as `sum_j alpha_j g_j`, the lattice points of the cone are
/// `w + N g_1 + ... + N g_D` where `w = sum_j ceil(alpha_j) g_j`.
pub fn unimodular_term(cone: &SimplicialCone, emap: &ExponentMap) -> Result<SRFTerm> {
    let inv = inverse_rational(&cone.generators)?;
    let alpha: RatVector = inv.mul_vec(&cone.apex);
    let ceilings: IntVector = alpha.iter().map(ceil).collect();
    let w = cone.generators.mul_vec(&ceilings);
    let mut denom_exps = Vec::with_capacity(cone.dim());
    for (j, g) in cone.generators.columns().iter().enumerate() {
        let beta = emap.apply_linear(g);
        if beta.iter().all(Zero::is_zero) {
            return Err(Error::DegenerateDenominator(j));
        }
        denom_exps.push(beta);
    }
    Ok(SRFTerm {
        sign: cone.sign,
        coeff: Rational::one(),
        numer_exp: emap.apply(&w),
        denom_exps,
    })
}

/// The fundamental lattice point `sum_j ceil(alpha_j) g_j` of a unimodular cone.
pub fn fundamental_point(cone: &SimplicialCone) -> Result<IntVector> {
    let inv = inverse_rational(&cone.generators)?;
    let ceilings: Vec<Integer> = inv.mul_vec(&cone.apex).iter().map(ceil).collect();
    Ok(cone.generators.mul_vec(&ceilings))
}
