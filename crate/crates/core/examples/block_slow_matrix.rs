//! Block matrices of order 5, 6 and 8 that keep `S` above `(1-ε) S(A)` for a
//! whole cycle, with every rotation outside the leading block trivial.

use cyclic_jacobi::adversarial::{auto_precision, leading_eps, slow_matrix_general, verify_slow_general};
use cyclic_jacobi::{BigFloat, Scalar};

fn main() -> cyclic_jacobi::Result<()> {
    for eps in ["1e-2", "1e-3"] {
        let p = auto_precision(leading_eps(&eps.parse::<f64>().expect("literal"))?);
        let e = BigFloat::parse(p, eps)?;
        for n in [5, 6, 8] {
            let (_, ordering) = slow_matrix_general(&e, n)?;
            let report = verify_slow_general(&e, n, false)?;
            println!("eps={eps} n={n} pass={} ratio={}", report.pass, &report.values["ratio"][..24]);
            if n == 5 {
                println!("  ordering {ordering}");
            }
        }
    }
    Ok(())
}
