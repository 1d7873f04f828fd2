//! Monte Carlo over CUE and SO(2n) against the Toeplitz and Toeplitz+Hankel
//! determinants of the linear-statistic symbol.

use th_szego::ensemble::{probe_oplus_normalization, sample_cue, verify_cue_identity};
use th_szego::FourierSymbol;

fn main() -> th_szego::Result<()> {
    let f = FourierSymbol::from_real(&[(-1, 1.0), (1, 1.0)]);
    let s = sample_cue(6, 1)?;
    println!(
        "one CUE(6) draw: {:?}",
        s.angles
            .iter()
            .map(|x| format!("{x:.3}"))
            .collect::<Vec<_>>()
    );

    let rep = verify_cue_identity(&f, 0.5, 6, 50_000, 7)?;
    println!(
        "CUE n = 6: MC {:.5} vs det {:.5}, stderr {:.1e}: {}",
        rep.lhs.to_complex(),
        rep.rhs.to_complex(),
        rep.params.stderr.unwrap_or(f64::NAN),
        if rep.passed() {
            "within 4 stderr"
        } else {
            "outside 4 stderr"
        }
    );

    let probe = probe_oplus_normalization(&f, 0.3, 4, 50_000, 7)?;
    for r in &probe.reports {
        println!(
            "SO(8) {:<17} det {:.5}  MC {:.5}  {}",
            r.params.normalization.unwrap().to_string(),
            r.rhs.to_complex(),
            r.lhs.to_complex(),
            if r.passed() { "match" } else { "no match" }
        );
    }
    Ok(())
}
