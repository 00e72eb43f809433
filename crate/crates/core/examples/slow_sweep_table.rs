//! Off-norms of the worked example over the first eight `I1` steps, printed
//! to fifty decimals at 100-digit precision.

use cyclic_jacobi::adversarial::reproduce_example_table;
use cyclic_jacobi::{BigFloat, Precision};

fn main() -> cyclic_jacobi::Result<()> {
    let table = reproduce_example_table::<BigFloat>(Precision::big(100)?)?;
    print!("{}", table.to_text());
    Ok(())
}
