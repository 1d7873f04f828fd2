//! Laurent-polynomial arithmetic, exp/log and the two factorizations.

use th_szego::{parse_symbol_spec, Complex64, FourierSymbol};

fn show(name: &str, a: &FourierSymbol) {
    let terms: Vec<String> = a
        .iter()
        .map(|(n, z)| format!("{n}:{:.6}{:+.6}i", z.re, z.im))
        .collect();
    println!("{name:<12} [{}]", terms.join(", "));
}

fn main() -> th_szego::Result<()> {
    let b = FourierSymbol::from_real(&[(-1, 0.5), (1, 0.3)]);
    let a = b.exp()?;
    show("b", &b);
    println!(
        "a = exp(b) has {} coefficients in [{}, {}]",
        a.len(),
        a.lo(),
        a.hi()
    );
    println!("winding number of a: {}", a.winding_number()?);

    let back = a.log()?;
    let err = (&back - &b)
        .iter()
        .map(|(_, z)| z.norm())
        .fold(0.0, f64::max);
    println!("max |log exp b - b| = {err:.2e}");

    let f = a.factor_minus_even()?;
    println!(
        "a = a_minus a_zero, [a_minus]_0 = {:.3}",
        f.a_minus.coeff(0)
    );
    show("log a_zero", &f.log_zero);

    let even = FourierSymbol::from_real(&[(-1, 0.3), (1, 0.3)]).exp()?;
    let g = even.factor_even_plus()?;
    println!(
        "even a = a_plus a_plus~, [a_plus]_0 = {:.6}",
        g.a_plus.coeff(0)
    );

    let t = FourierSymbol::monomial(1, Complex64::new(1.0, 0.0));
    show(
        "(t + 1/t)^2",
        &(&t + &t.flip()).multiply(&(&t + &t.flip()))?,
    );

    let spec = r#"{"form":"log-coeffs","entries":{"1":[0.3,0],"-1":[0.3,0]}}"#;
    let parsed = parse_symbol_spec(spec)?;
    println!(
        "parsed spec: {} coefficients, round trip {}",
        parsed.len(),
        parsed.to_spec_json()
    );
    Ok(())
}
