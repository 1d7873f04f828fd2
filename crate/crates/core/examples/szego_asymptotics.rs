//! det M_N(a) / (G^N E^) -> 1: in double precision the error reaches
//! round-off by N = 8; at 1024 bits the super-exponential decay is visible.

use th_szego::identities::verify_szego;
use th_szego::multiprec::verify_szego_log;
use th_szego::{FourierSymbol, Realization};

fn main() -> th_szego::Result<()> {
    let b = FourierSymbol::from_real(&[(-2, 0.05), (0, 0.2), (1, 0.1)]);
    let a = b.exp()?;
    let n_list = [4, 8, 16, 32];
    for r in Realization::BASIC {
        let lo = verify_szego(&a, r, &n_list, 1e-8)?;
        let hi = verify_szego_log(&b, r, &n_list, 1e-8, 1024)?;
        let fmt = |s: &th_szego::identities::SzegoScan| -> String {
            s.reports
                .iter()
                .map(|x| format!("{:9.1e}", x.rel_err))
                .collect::<Vec<_>>()
                .join(" ")
        };
        println!(
            "{r:>4} f64      {}  strictly decreasing: {}",
            fmt(&lo),
            lo.strictly_decreasing
        );
        println!(
            "     1024-bit {}  strictly decreasing: {}",
            fmt(&hi),
            hi.strictly_decreasing
        );
    }
    Ok(())
}
