//! `I2` on `A` and `I1` on `PᵀAP` produce conjugate iterates, for `P`
//! swapping indices 1,2 or 3,4.

use cyclic_jacobi::kernel::run_steps;
use cyclic_jacobi::matrix::conjugate_signed_perm;
use cyclic_jacobi::strategy::{ordering_i1, ordering_i2, parallel_step_matrix, permutationally_equivalent, CyclicStrategy};
use cyclic_jacobi::{Precision, SignedPermutation, SymMatrix};

fn main() -> cyclic_jacobi::Result<()> {
    let hw = Precision::Hardware64;
    let a = SymMatrix::<f64>::from_f64_rows(
        hw,
        &[&[2.0, 0.3, -0.7, 0.1], &[0.3, -1.0, 0.5, 0.9], &[-0.7, 0.5, 0.4, -0.2], &[0.1, 0.9, -0.2, 1.5]],
    )?;
    let (i1, i2) = (ordering_i1(), ordering_i2());
    println!("parallel-step matrix of I1\n{}", parallel_step_matrix(&i1)?);
    for (name, i, j) in [("P12", 1, 2), ("P34", 3, 4)] {
        let p = SignedPermutation::transposition(4, i, j)?;
        println!("{name}: step matrices conjugate = {}", permutationally_equivalent(&i1, &i2, &p)?);
        let pa = conjugate_signed_perm(&a, &p)?;
        for r in 1..=3 {
            let x = run_steps(&a, &CyclicStrategy::i2(), 2 * r)?;
            let y = run_steps(&pa, &CyclicStrategy::i1(), 2 * r)?;
            let dev = y.max_abs_diff(&conjugate_signed_perm(&x, &p)?)?;
            println!("  r={r}  max deviation {dev:.3e}");
        }
    }
    Ok(())
}
