//! Two `I1` cycles on random patterned matrices, with the identity suite run
//! along every trace. Pass a trial count as the first argument.

use cyclic_jacobi::analysis::theorems::verify_theorem_main;
use cyclic_jacobi::Precision;

fn main() -> cyclic_jacobi::Result<()> {
    let trials = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(20_000);
    let jobs = std::thread::available_parallelism().map_or(1, |n| n.get());
    let report = verify_theorem_main::<f64>(trials, 7, Precision::Hardware64, jobs)?;
    print!("{}", report.to_text());
    Ok(())
}
