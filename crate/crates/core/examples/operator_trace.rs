//! Trace of the two-rotation operator on `H(1e-6)` at 60 digits, followed by
//! the worst deviation of each identity.

use cyclic_jacobi::adversarial::slow_matrix_h;
use cyclic_jacobi::analysis::{identity_suite, trace_t_run};
use cyclic_jacobi::{BigFloat, Precision, Scalar};

fn main() -> cyclic_jacobi::Result<()> {
    let eps = BigFloat::parse(Precision::big(60)?, "1e-6")?;
    let trace = trace_t_run(&slow_matrix_h(&eps)?, 6)?;
    print!("{}", trace.to_csv());
    println!();
    for o in identity_suite(&trace) {
        println!("{:<10} {:>10.3e}  {}", o.name, o.worst, if o.pass() { "ok" } else { "FAIL" });
    }
    Ok(())
}
