//! The exact identity det M_N(a) = G^N F^ det(I + K)_N, checked for an even
//! symbol in every realization and for a non-even symbol.

use th_szego::identities::{verify_bogc_even, verify_bogc_general, EXACT_TOL};
use th_szego::{fredholm_det, FourierSymbol, Realization};

fn main() -> th_szego::Result<()> {
    let a = FourierSymbol::from_real(&[(-1, 0.3), (1, 0.3)]).exp()?;
    for r in Realization::BASIC {
        for n in [1, 4, 16] {
            let rep = verify_bogc_even(&a, n, r, EXACT_TOL)?;
            println!(
                "even    {r:>3} N = {n:>2}: rel_err {:.2e}  truncation {:?}  {}",
                rep.rel_err,
                rep.params.truncation,
                if rep.passed() { "ok" } else { "FAIL" }
            );
        }
    }
    let f = fredholm_det(&a, Realization::IV, 8, 1e-14)?;
    println!(
        "det(I + K) at N = 8 (IV): {:.15} using {} extra rows",
        f.value.re, f.truncation
    );

    let b = FourierSymbol::from_real(&[(-1, 0.5), (1, 0.3)]).exp()?;
    for n in [2, 4, 8] {
        let rep = verify_bogc_general(&b, n, Realization::I, 1e-9)?;
        println!("general   I N = {n:>2}: rel_err {:.2e}", rep.rel_err);
    }
    Ok(())
}
