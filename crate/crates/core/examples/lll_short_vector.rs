//! LLL reduction and the short vector that drives one Barvinok step.

use fdsum::lattice::{
    determinant, is_lll_reduced, lll_reduce, short_nonneg_combination, IntMatrix,
};

fn main() -> Result<(), fdsum::Error> {
    let basis = IntMatrix::from_rows(&[&[1, 0, 0], &[0, 1, 0], &[1233, 4087, 10007]]);
    let (reduced, transform) = lll_reduce(&basis)?;
    println!("basis (columns):\n{basis:?}\nreduced:\n{reduced:?}\ntransform:\n{transform:?}");
    println!("reduced: {}", is_lll_reduced(&reduced));

    let u = IntMatrix::from_rows(&[&[1, 0, 0], &[0, 1, 0], &[3, 7, 40]]);
    let index = determinant(&u)?;
    let (w, alpha) = short_nonneg_combination(&u, &index)?;
    let alpha: Vec<String> = alpha.iter().map(ToString::to_string).collect();
    println!(
        "\ncone of index {index}: w = {w:?}, coordinates ({})",
        alpha.join(", ")
    );
    Ok(())
}
