//! det P_N (T(a) +- H(a t^k)) P_N against its closed-form prediction, with
//! the probe between the two index conventions for E_1.

use th_szego::identities::{predict_shifted, probe_convention, ShiftedCase};
use th_szego::{case_constants, FourierSymbol, IndexConvention, Sign};

fn main() -> th_szego::Result<()> {
    let a = FourierSymbol::from_real(&[(-1, 0.5), (1, 0.3)]).exp()?;
    let n = 48;
    for (k, sign) in [
        (-2, Sign::Plus),
        (-2, Sign::Minus),
        (-3, Sign::Minus),
        (-1, Sign::Plus),
        (-4, Sign::Plus),
    ] {
        let case = ShiftedCase::classify(k, sign, n)?;
        let probe = probe_convention(&a, k, sign, n, 1e-7)?;
        let errs: Vec<String> = probe
            .reports
            .iter()
            .map(|r| format!("{}: {:.1e}", r.params.convention.unwrap(), r.rel_err))
            .collect();
        println!(
            "k = {k:>2} sign {sign}  {case:?}  [{}]  matching {:?}",
            errs.join(", "),
            probe.matching
        );
    }
    for (k, sign) in [(2, Sign::Plus), (1, Sign::Minus)] {
        let rep = predict_shifted(&a, k, sign, 10, IndexConvention::FromN0, 1e-7)?;
        println!(
            "k = {k:>2} sign {sign}  exact zero: {}  ({})",
            rep.lhs.zero_flag, rep.notes
        );
    }
    let cc = case_constants(&a, IndexConvention::FromN0)?;
    println!(
        "E1+ = {:.6}, E1- = {:.6}, E2 = {:.6}, E3 = {:.6}",
        cc.e1_plus, cc.e1_minus, cc.e2, cc.e3
    );
    Ok(())
}
