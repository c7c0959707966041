//! From an instance to its cone, then the signed unimodular cones of that cone.
//!
//! cargo run --example cone_decomposition -- [n] [a1,a2,...] [b]

use fdsum::barvinok::{decompose_unimodular, fundamental_point, unimodular_term};
use fdsum::cone::source_cone;
use fdsum::{build_cone, validate, Rational};

fn show(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let n: i64 = args.next().map_or(Ok(4), |s| s.parse())?;
    let a: Vec<i64> = match args.next() {
        Some(s) => s.split(',').map(str::parse).collect::<Result<_, _>>()?,
        None => vec![4, 3, 5],
    };
    let b: i64 = args.next().map_or(Ok(7), |s| s.parse())?;
    let inst = validate(n, &a, b)?;

    let (v, h) = source_cone(&inst);
    println!("{inst}: vertex {}", show(&v));
    println!("generators (columns):\n{h:?}");

    let (cone, emap) = build_cone(&inst)?;
    println!(
        "full-dimensional cone: apex {}, index {}",
        show(&cone.apex),
        cone.index()
    );
    println!("generators (columns):\n{:?}", cone.generators);
    println!("exponent map: offset {:?}\n{:?}", emap.offset, emap.linear);

    let list = decompose_unimodular(&cone)?;
    println!(
        "\n{} unimodular cones ({} nodes, depth {}, {} before cancellation)",
        list.len(),
        list.stats.nodes,
        list.stats.max_depth,
        list.stats.emitted
    );
    for c in &list.cones {
        let w = fundamental_point(c)?;
        let term = unimodular_term(c, &emap)?;
        println!("{:+} {:?}  point {:?}", c.sign, c.generators.columns(), w);
        println!("   {term}");
    }
    Ok(())
}
