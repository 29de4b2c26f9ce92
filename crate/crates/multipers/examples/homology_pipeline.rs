//! From a bifiltered complex to its persistence module.
//!
//! Run with `cargo run --example homology_pipeline`.

use multipers::complex::{build_persistence_module, homology_at, MultifilteredComplex};
use multipers::field::Field;

const BIFILTRATION: &str = "\
# three vertices at the origin; edges split across the two axes;
# the triangle fills once both parameters reach 2
dim 2
simplex 0 @ (0 0)
simplex 1 @ (0 0)
simplex 2 @ (0 0)
simplex 0 1 @ (1 0)
simplex 1 2 @ (0 1)
simplex 0 2 @ (1 1)
simplex 0 1 2 @ (2 2)
";

fn main() -> multipers::Result<()> {
    let field = Field::fp(2)?;
    let complex = MultifilteredComplex::parse(BIFILTRATION)?;
    println!(
        "parsed {} simplices, stabilization bound {}",
        complex.len(),
        complex.stabilization_bound()
    );

    for l in 0..2 {
        let m = build_persistence_module(&complex, l, field)?;
        m.check_commutativity()?;
        println!("\nH_{l} dimensions on the grid (rows = first axis):");
        let bound = m.bound().coords().to_vec();
        for x in 0..=bound[0] {
            let row: Vec<String> = (0..=bound[1])
                .map(|y| {
                    m.dim_at(&multipers::Degree::new(vec![x, y]))
                        .to_string()
                })
                .collect();
            println!("  x1={x}: {}", row.join(" "));
        }
    }

    // Individual Betti numbers are available without building the module.
    let u = multipers::Degree::new(vec![1, 1]);
    let h1 = homology_at(&complex, &u, 1, field)?;
    println!("\ndim H_1 at {u} = {} (the square closes a loop)", h1.dim);
    Ok(())
}
