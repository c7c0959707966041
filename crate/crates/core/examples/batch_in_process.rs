//! The batch front end on in-memory input, as JSON lines and as CSV.

use fdsum::cli::{run_batch, RecordFormat};
use fdsum::Method;

fn main() {
    let input = "# n; a; b\n4; 4,3,5; 7\n-1; 2,9; 11\n0; 2; 4\n7; 1,1,1,1; 5\n";
    let mut out = std::io::stdout();
    let mut err = std::io::stderr();
    let code = run_batch(
        input,
        RecordFormat::Jsonl,
        Method::Barvinok,
        &mut out,
        &mut err,
    );
    println!("exit {code}\n");
    let code = run_batch(
        input,
        RecordFormat::Csv,
        Method::Cyclotomic,
        &mut out,
        &mut err,
    );
    println!("exit {code}");
}
