//! The operator M generated by a perturbation vector x: the basic
//! realizations as special cases, the kernel row support and the
//! compatibility relation.

use th_szego::generalm::{
    check_compatibility, k_of_tn, m_general_section, rows_vanish_from, PerturbationVector,
};
use th_szego::{m_section, Complex64, FourierSymbol, Realization};

fn main() -> th_szego::Result<()> {
    let p = FourierSymbol::from_real(&[(-2, 0.2), (-1, 0.7), (0, 1.0), (1, 0.7), (2, 0.2)]);
    for (x, r) in [
        (PerturbationVector::unit(0, 1.0), Realization::I),
        (PerturbationVector::unit(0, -1.0), Realization::II),
        (PerturbationVector::zero(), Realization::III),
        (PerturbationVector::unit(1, 1.0), Realization::IV),
    ] {
        let diff = m_general_section(&x, &p, 16)?.max_abs_diff(&m_section(&p, 16, r))?;
        println!(
            "x = {:<28} matches {r:>3}: max diff {diff:.1e}",
            x.to_json()
        );
    }

    let x = PerturbationVector::new(vec![
        Complex64::new(0.4, 0.1),
        Complex64::new(-0.2, 0.3),
        Complex64::new(0.1, 0.0),
    ]);
    for n in [1, 3, 8] {
        let k = k_of_tn(&x, n, 24)?;
        println!(
            "K(t^{n}) rows vanish from row {n}: {}",
            rows_vanish_from(&k, n)
        );
    }
    let a = FourierSymbol::from_real(&[(-2, 0.1), (-1, 0.4), (0, 1.0)]);
    let b = FourierSymbol::from_real(&[(-1, 0.5), (0, 0.2), (1, 0.5)]);
    let c = FourierSymbol::from_real(&[(-3, 0.1), (0, 1.0), (3, 0.1)]);
    let dev = check_compatibility(&x, &a, &b, &c, 64)?;
    println!("M(abc) vs M(a) M(b) M(c) at N = 64: max deviation {dev:.1e}");
    Ok(())
}
