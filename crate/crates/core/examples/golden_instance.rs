//! `s_4(4,3,5;7)` through every evaluator, plus the short rational function behind it.
//!
//! cargo run --example golden_instance

use fdsum::{compute, compute_with, validate, Method, PipelineOptions};

fn main() -> Result<(), fdsum::Error> {
    let inst = validate(4, &[4, 3, 5], 7)?;

    for method in [
        Method::Barvinok,
        Method::Cyclotomic,
        Method::Float,
        Method::Both,
    ] {
        let r = compute(&inst, method)?;
        println!(
            "{:<10} {} = {}  ({:.2?})",
            method.name(),
            inst,
            r.value,
            r.elapsed
        );
    }

    let opts = PipelineOptions {
        keep_decomposition: true,
        ..Default::default()
    };
    let r = compute_with(&inst, Method::Barvinok, &opts)?;
    let stats = r.stats.expect("barvinok path");
    println!(
        "\n{} unimodular cones ({} recursion nodes, depth {})",
        r.unimodular_cone_count.unwrap_or(0),
        stats.nodes,
        stats.max_depth
    );
    print!("{}", r.decomposition.expect("requested").dump());
    Ok(())
}
