//! Validation, method dispatch and result bookkeeping.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_integer::Integer as _;
use num_traits::{One, Signed};

use crate::barvinok::{decompose_unimodular, unimodular_term, DecompositionStats};
use crate::cone::{build_cone, FDInstance};
use crate::error::{Error, InstanceError, Result};
use crate::limit::{limit_at_one_along, valid_directions};
use crate::numeric::{Integer, Rational};
use crate::oracle::{cyclo_eval, float_eval};
use crate::srf::{correction_term, Srf};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Barvinok,
    Cyclotomic,
    Float,
    /// Barvinok and cyclotomic, failing on disagreement.
    Both,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Barvinok => "barvinok",
            Method::Cyclotomic => "cyclotomic",
            Method::Float => "float",
            Method::Both => "both",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "barvinok" => Ok(Method::Barvinok),
            "cyclotomic" => Ok(Method::Cyclotomic),
            "float" => Ok(Method::Float),
            "both" => Ok(Method::Both),
            other => Err(format!("unknown method '{other}'")),
        }
    }
}

/// Exact result, or the floating-point estimate for [`Method::Float`].
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Exact(Rational),
    Approx(f64),
}

impl Value {
    pub fn exact(&self) -> Option<&Rational> {
        match self {
            Value::Exact(q) => Some(q),
            Value::Approx(_) => None,
        }
    }
}

impl fmt::Display for Value {
    /// `num/den` for exact values (`k` for integers), decimal for estimates.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(q) => write!(f, "{q}"),
            Value::Approx(x) => write!(f, "{x}"),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PhaseTimings {
    pub cone_build: Duration,
    pub decomposition: Duration,
    pub specialization: Duration,
}

#[derive(Clone, Debug)]
pub struct FDResult {
    pub instance: FDInstance,
    pub value: Value,
    pub method: Method,
    /// Barvinok path only.
    pub unimodular_cone_count: Option<usize>,
    pub stats: Option<DecompositionStats>,
    pub elapsed: Duration,
    pub timings: PhaseTimings,
    /// Full short rational function including the correction term, when requested.
    pub decomposition: Option<Srf>,
}

#[derive(Clone, Debug, Default)]
pub struct PipelineOptions {
    pub keep_decomposition: bool,
    /// Use the `k`-th valid specialization direction (0 = the first).
    pub direction_rank: usize,
    /// Flips the sign of the first unimodular cone. Mutation testing only.
    #[doc(hidden)]
    pub flip_first_sign: bool,
}

/// Checks the side conditions and builds an instance. `n` may be any integer.
pub fn validate<N, A, B>(n: N, a: &[A], b: B) -> Result<FDInstance, InstanceError>
where
    N: Into<Integer>,
    A: Clone + Into<Integer>,
    B: Into<Integer>,
{
    let b: Integer = b.into();
    if b <= Integer::one() {
        return Err(InstanceError::BMustExceedOne(b.to_string()));
    }
    if a.is_empty() {
        return Err(InstanceError::EmptyA);
    }
    let a: Vec<Integer> = a.iter().cloned().map(Into::into).collect();
    for (j, aj) in a.iter().enumerate() {
        if !aj.is_positive() {
            return Err(InstanceError::NonPositiveA {
                index: j + 1,
                value: aj.to_string(),
            });
        }
        let g = aj.gcd(&b);
        if !g.is_one() {
            return Err(InstanceError::NotCoprime {
                index: j + 1,
                value: aj.to_string(),
                b: b.to_string(),
                gcd: g.to_string(),
            });
        }
    }
    Ok(FDInstance::new_unchecked(n.into(), a, b))
}

/// Output of the cone pipeline before the limit is taken.
#[derive(Clone, Debug)]
pub struct PipelineSrf {
    /// Generating function of the slack-variable cone, one term per unimodular cone.
    pub cone_terms: Srf,
    /// `cone_terms` plus the correction term.
    pub full: Srf,
    pub stats: DecompositionStats,
    pub cone_count: usize,
    pub cone_build: Duration,
    pub decomposition: Duration,
}

/// Builds the cone, decomposes it and collects the short rational function.
pub fn pipeline_srf(inst: &FDInstance, opts: &PipelineOptions) -> Result<PipelineSrf> {
    let t0 = Instant::now();
    let (cone, emap) = build_cone(inst)?;
    let cone_build = t0.elapsed();

    let t1 = Instant::now();
    let list = decompose_unimodular(&cone)?;
    let mut terms = list
        .cones
        .iter()
        .map(|c| unimodular_term(c, &emap))
        .collect::<Result<Vec<_>>>()?;
    if opts.flip_first_sign {
        if let Some(t) = terms.first_mut() {
            t.sign = -t.sign;
        }
    }
    let dim = inst.d() + 1;
    let cone_terms = Srf::new(dim, terms);
    let mut full = cone_terms.clone();
    full.push(correction_term(inst));
    let decomposition = t1.elapsed();
    Ok(PipelineSrf {
        cone_terms,
        full,
        cone_count: list.len(),
        stats: list.stats,
        cone_build,
        decomposition,
    })
}

fn barvinok(inst: &FDInstance, opts: &PipelineOptions) -> Result<FDResult> {
    let start = Instant::now();
    let p = pipeline_srf(inst, opts)?;
    let t2 = Instant::now();
    let reduced = p.full.set_to_one(0)?;
    let direction = valid_directions(&reduced)
        .nth(opts.direction_rank)
        .expect("valid directions are infinite");
    let value = limit_at_one_along(&reduced, &direction)?;
    let specialization = t2.elapsed();
    Ok(FDResult {
        instance: inst.clone(),
        value: Value::Exact(value),
        method: Method::Barvinok,
        unimodular_cone_count: Some(p.cone_count),
        stats: Some(p.stats),
        elapsed: start.elapsed(),
        timings: PhaseTimings {
            cone_build: p.cone_build,
            decomposition: p.decomposition,
            specialization,
        },
        decomposition: opts.keep_decomposition.then_some(p.full),
    })
}

fn simple(inst: &FDInstance, method: Method, value: Value, elapsed: Duration) -> FDResult {
    FDResult {
        instance: inst.clone(),
        value,
        method,
        unimodular_cone_count: None,
        stats: None,
        elapsed,
        timings: PhaseTimings::default(),
        decomposition: None,
    }
}

/// Evaluates `s_n(a; b)` with the requested method.
pub fn compute(inst: &FDInstance, method: Method) -> Result<FDResult> {
    compute_with(inst, method, &PipelineOptions::default())
}

pub fn compute_with(inst: &FDInstance, method: Method, opts: &PipelineOptions) -> Result<FDResult> {
    let start = Instant::now();
    match method {
        Method::Barvinok => barvinok(inst, opts),
        Method::Cyclotomic => {
            let v = cyclo_eval(inst)?;
            Ok(simple(inst, method, Value::Exact(v), start.elapsed()))
        }
        Method::Float => {
            let v = float_eval(inst)?;
            Ok(simple(inst, method, Value::Approx(v), start.elapsed()))
        }
        Method::Both => {
            let mut res = barvinok(inst, opts)?;
            let cyclo = cyclo_eval(inst)?;
            let fast = res.value.exact().expect("barvinok is exact");
            if *fast != cyclo {
                return Err(Error::MethodMismatch {
                    barvinok: fast.to_string(),
                    cyclotomic: cyclo.to_string(),
                });
            }
            res.method = Method::Both;
            res.elapsed = start.elapsed();
            Ok(res)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;

    #[test]
    fn validate_examples() {
        let inst = validate(4, &[4, 3, 5], 7).unwrap();
        assert_eq!(inst.to_string(), "s_4(4,3,5;7)");
        assert!(matches!(
            validate(0, &[2], 4),
            Err(InstanceError::NotCoprime { index: 1, .. })
        ));
        assert_eq!(validate(5, &[] as &[i64], 7), Err(InstanceError::EmptyA));
        assert!(matches!(
            validate(0, &[1], 1),
            Err(InstanceError::BMustExceedOne(_))
        ));
        assert!(matches!(
            validate(0, &[1, 0], 5),
            Err(InstanceError::NonPositiveA { index: 2, .. })
        ));
        let msg = validate(0, &[2], 4).unwrap_err().to_string();
        assert!(msg.contains("gcd(2,4) = 2"), "{msg}");
    }

    #[test]
    fn compute_examples() {
        let inst = validate(4, &[4, 3, 5], 7).unwrap();
        let r = compute(&inst, Method::Barvinok).unwrap();
        assert_eq!(r.value, Value::Exact(rat(1, 7)));
        assert!(r.unimodular_cone_count.unwrap() >= 1);

        let r = compute(&validate(11, &[4, 3, 5], 7).unwrap(), Method::Barvinok).unwrap();
        assert_eq!(r.value, Value::Exact(rat(1, 7)));

        let inst = validate(3, &[2, 5], 9).unwrap();
        let fast = compute(&inst, Method::Barvinok).unwrap();
        let slow = compute(&inst, Method::Cyclotomic).unwrap();
        assert_eq!(fast.value, slow.value);
        assert!(compute(&inst, Method::Both).is_ok());
    }

    #[test]
    fn mutation_is_caught() {
        let inst = validate(4, &[4, 3, 5], 7).unwrap();
        let opts = PipelineOptions {
            flip_first_sign: true,
            ..Default::default()
        };
        match compute_with(&inst, Method::Both, &opts) {
            Err(Error::MethodMismatch { .. }) | Err(Error::CancellationFailure { .. }) => {}
            other => panic!("mutation not detected: {other:?}"),
        }
    }
}
