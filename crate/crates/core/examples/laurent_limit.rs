//! Limit of a short rational function at z = 1 by the substitution z_j = (1+t)^{c_j}.
//!
//! Each term of (1/(1-x) + 1/(1-x^-1)) (1/(1-y) + 1/(1-y^-1)) has a pole at (1,1),
//! but the sum is identically 1.

use fdsum::limit::{limit_at_one_along, srf_series, valid_directions};
use fdsum::numeric::{int, rat};
use fdsum::{SRFTerm, Srf};

fn term(sign: i8, numer: [i64; 2], denoms: &[[i64; 2]]) -> SRFTerm {
    SRFTerm {
        sign,
        coeff: rat(1, 1),
        numer_exp: numer.iter().map(|&x| int(x)).collect(),
        denom_exps: denoms
            .iter()
            .map(|d| d.iter().map(|&x| int(x)).collect())
            .collect(),
    }
}

fn main() -> Result<(), fdsum::Error> {
    let f = Srf::new(
        2,
        vec![
            term(1, [0, 0], &[[1, 0], [0, 1]]),
            term(1, [0, 0], &[[-1, 0], [0, 1]]),
            term(1, [0, 0], &[[1, 0], [0, -1]]),
            term(1, [0, 0], &[[-1, 0], [0, -1]]),
        ],
    );
    print!("{}", f.dump());
    for c in valid_directions(&f).take(3) {
        let series = srf_series(&f, &c);
        let value = limit_at_one_along(&f, &c)?;
        println!("direction {:?}: {series:?}  ->  {value}", c.0);
    }
    Ok(())
}
