//! Running time against b: nearly flat for the cone pipeline, linear for the cyclotomic sum.
//!
//! cargo run --release --example scaling

use std::time::Instant;

use fdsum::{compute, validate, Method};

fn main() -> Result<(), fdsum::Error> {
    let a = [3i64, 7, 11];
    println!(
        "{:>16} {:>12} {:>12} {:>8}",
        "b", "barvinok", "cyclotomic", "cones"
    );
    for e in [3u32, 4, 5, 6, 9, 12, 15, 18] {
        let b = 10i64.pow(e);
        let inst = validate(4, &a, b)?;
        let t = Instant::now();
        let r = compute(&inst, Method::Barvinok)?;
        let fast = t.elapsed();
        let slow = if e <= 5 {
            let t = Instant::now();
            let c = compute(&inst, Method::Cyclotomic)?;
            assert_eq!(c.value, r.value);
            format!("{:.2?}", t.elapsed())
        } else {
            "-".to_string()
        };
        println!(
            "{b:>16} {:>12} {slow:>12} {:>8}",
            format!("{fast:.2?}"),
            r.unimodular_cone_count.unwrap_or(0)
        );
    }
    Ok(())
}
