//! Diagonalizes a 6x6 matrix with the row-wise cyclic strategy in binary64
//! and at 50 digits.

use cyclic_jacobi::kernel::{default_tolerance, solve};
use cyclic_jacobi::strategy::{ordering_serial_rowwise, CyclicStrategy};
use cyclic_jacobi::{BigFloat, Precision, Scalar, SymMatrix};

fn run<T: Scalar>(p: Precision) -> cyclic_jacobi::Result<()> {
    let a = SymMatrix::<T>::from_upper(6, p, |r, s| {
        let (r, s) = (r as f64, s as f64);
        T::from_f64(p, if r == s { r + 1.0 } else { 1.0 / (1.0 + r + s) })
    })?;
    let strategy = CyclicStrategy::new(ordering_serial_rowwise(6)?)?;
    let sol = solve(&a, &strategy, &default_tolerance(&a), 30)?;
    println!("[{p}] cycles={} off_norm={}", sol.cycles, sol.off_norm.to_sci_string());
    println!("  orthogonality defect {:.2e}", sol.vectors.orthogonality_defect());
    for (k, e) in sol.sorted_eigenvalues().iter().enumerate() {
        println!("  lambda_{} = {e}", k + 1);
    }
    Ok(())
}

fn main() -> cyclic_jacobi::Result<()> {
    run::<f64>(Precision::Hardware64)?;
    run::<BigFloat>(Precision::big(50)?)
}
