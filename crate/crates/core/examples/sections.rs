//! Finite sections of T(a), H(a), the four realizations of M(a), the shifted
//! and the SO(2n) sections, with their determinants.

use th_szego::{
    det_lu, m_section, oplus_section, shifted_section, toeplitz_section, FourierSymbol,
    Realization, Sign,
};

fn main() -> th_szego::Result<()> {
    let a = FourierSymbol::from_real(&[(-1, 0.3), (1, 0.3)]).exp()?;
    let n = 5;
    println!("T_5(a):\n{}", toeplitz_section(&a, n).to_csv());
    for r in Realization::BASIC {
        let m = m_section(&a, n, r);
        let d = det_lu(&m)?;
        println!(
            "{r:>4}: M[0][0] = {:.6}, det = {:.9}",
            m[(0, 0)].re,
            d.to_complex().re
        );
    }
    for (k, sign) in [(-2, Sign::Plus), (-3, Sign::Minus), (2, Sign::Plus)] {
        let d = det_lu(&shifted_section(&a, 10, k, sign))?;
        println!(
            "T(a) {sign} H(a t^{k}), N = 10: det = {:.6e} (zero flag {})",
            d.to_complex().re,
            d.zero_flag
        );
    }
    let d = det_lu(&oplus_section(&a, 6)?)?;
    println!("det(a_(j-k) + a_(j+k)), N = 6: {:.9}", d.to_complex().re);
    Ok(())
}
