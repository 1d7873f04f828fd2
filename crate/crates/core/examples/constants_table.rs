//! The limit constants for each realization, and the quadratic dependence of
//! log E^ on lambda for a = exp(i lambda f).

use th_szego::constants::log_e_hat_fit;
use th_szego::{szego_constants, trace_m_minus_t, FourierSymbol, Realization};

fn main() -> th_szego::Result<()> {
    let b = FourierSymbol::from_real(&[(-2, 0.05), (0, 0.2), (1, 0.1)]);
    let a = b.exp()?;
    println!("real,G,E,F,F_hat,E_hat,tr(M(b)-T(b))");
    for r in Realization::BASIC {
        let k = szego_constants(&a, r)?;
        let f_hat = k.f_hat.map(|z| format!("{:.9}", z.re)).unwrap_or_default();
        println!(
            "{r},{:.9},{:.9},{:.9},{f_hat},{:.9},{:.3}",
            k.g.re,
            k.e.re,
            k.f.re,
            k.e_hat.re,
            trace_m_minus_t(&b, r)?.re
        );
    }
    let f = FourierSymbol::from_real(&[(-1, 1.0), (1, 1.0)]);
    for r in Realization::BASIC {
        let c = log_e_hat_fit(&f, r, &[0.0, 0.1, -0.1, 0.2, -0.2, 0.3])?;
        println!(
            "{r:>3}: log E^ = {:.3} + {:.3} l + {:.3} l^2 + ({:.1e}) l^3",
            c[0],
            c[1],
            c[2],
            c[3].norm()
        );
    }
    Ok(())
}
