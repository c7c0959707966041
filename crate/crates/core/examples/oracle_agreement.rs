//! Random instances through the cone pipeline and both root-of-unity oracles.
//!
//! cargo run --release --example oracle_agreement -- [count] [seed]

use fdsum::{compute, validate, Method};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), fdsum::Error> {
    let mut args = std::env::args().skip(1);
    let count: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(20);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut agree = 0;
    for _ in 0..count {
        let b = rng.gen_range(2..=500i64);
        let d = rng.gen_range(1..=3);
        let a: Vec<i64> = (0..d)
            .map(|_| loop {
                let x = rng.gen_range(1..=10_000i64);
                if num_integer::gcd(x, b) == 1 {
                    break x;
                }
            })
            .collect();
        let inst = validate(rng.gen_range(-b..=2 * b), &a, b)?;

        let fast = compute(&inst, Method::Barvinok)?.value;
        let exact = compute(&inst, Method::Cyclotomic)?.value;
        let approx = compute(&inst, Method::Float)?.value;
        let same = fast == exact;
        agree += usize::from(same);
        let x = fast.exact().and_then(|q| q.to_f64()).unwrap_or(f64::NAN);
        println!(
            "{inst:<28} {fast:>24}  float {approx:<22} |diff| {:.1e}  {}",
            (x - approx_f64(&approx)).abs(),
            if same { "ok" } else { "MISMATCH" }
        );
    }
    println!("{agree}/{count} exact agreements");
    Ok(())
}

fn approx_f64(v: &fdsum::Value) -> f64 {
    match v {
        fdsum::Value::Approx(x) => *x,
        fdsum::Value::Exact(q) => q.to_f64().unwrap_or(f64::NAN),
    }
}
