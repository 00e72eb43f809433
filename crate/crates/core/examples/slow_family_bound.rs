//! One `I1` cycle barely moves `H(ε)`: the relative drop of `S²` stays
//! below `17ε`.

use cyclic_jacobi::adversarial::{auto_precision, verify_slow_sweep};
use cyclic_jacobi::{BigFloat, Scalar};

fn main() -> cyclic_jacobi::Result<()> {
    for eps in ["1e-6", "1e-8", "1e-10"] {
        let p = auto_precision(eps.parse().expect("literal"));
        let report = verify_slow_sweep(&BigFloat::parse(p, eps)?)?;
        println!(
            "eps={eps:<6} digits={:<3} constant={:.6} pass={}",
            p.decimal_digits(),
            report.check("observed_constant").expect("check").value,
            report.pass
        );
    }
    Ok(())
}
