//! The six parallel orderings of order 4, their shift classes, strategy
//! matrices and the equivalence relations between the two representatives.

use cyclic_jacobi::strategy::{
    enumerate_parallel_orderings, equivalent, ordering_i1, ordering_i2, shift_classes, strategy_matrix,
    weakly_equivalent,
};

fn main() -> cyclic_jacobi::Result<()> {
    let all = enumerate_parallel_orderings(4)?;
    for (k, class) in shift_classes(&all).iter().enumerate() {
        println!("class {k}:");
        for &i in class {
            println!("  {}", all[i]);
        }
    }
    let (i1, i2) = (ordering_i1(), ordering_i2());
    println!("\nI1\n{}", strategy_matrix(&i1)?);
    println!("I2\n{}", strategy_matrix(&i2)?);
    println!("I1 ~ I2: {}", equivalent(&i1, &i2)?);
    println!("I1 w~ I2: {}", weakly_equivalent(&i1, &i2)?);
    Ok(())
}
