//! One-parameter persistence: barcodes, the rank invariant, and the two
//! directions of their equivalence.
//!
//! Run with `cargo run --example barcode_and_rank`.

use multipers::complex::{build_persistence_module, MultifilteredComplex};
use multipers::field::Field;
use multipers::invariants::{
    barcode, barcode_from_rank, rank_from_barcode, rank_invariant, Death,
};
use multipers::Degree;

const FILTRATION: &str = "\
dim 1
simplex 0 @ (0)
simplex 1 @ (0)
simplex 2 @ (0)
simplex 0 1 @ (1)
simplex 0 2 @ (1)
simplex 1 2 @ (1)
simplex 0 1 2 @ (3)
";

fn main() -> multipers::Result<()> {
    let field = Field::fp(5)?;
    let complex = MultifilteredComplex::parse(FILTRATION)?;
    let module = build_persistence_module(&complex, 1, field)?;

    let bars = barcode(&module)?;
    println!("H_1 barcode of the hollow-then-filled triangle:");
    for (birth, death, count) in bars.iter() {
        let death = match death {
            Death::Finite(d) => d.to_string(),
            Death::Infinite => "inf".into(),
        };
        println!("  [{birth}, {death}) x{count}");
    }

    let rho = rank_invariant(&module);
    println!("\nrank invariant (u -> v: rank, dim at u):");
    for ((u, v), (rank, dim)) in rho.table() {
        println!("  {u} -> {v}: {rank} (dim {dim})");
    }

    // The two invariants determine each other in one parameter.
    let len = module.bound().coords()[0];
    assert_eq!(rank_from_barcode(&bars, len), rho);
    assert_eq!(barcode_from_rank(&rho)?, bars);
    println!("\nbarcode -> rank and rank -> barcode round-trip exactly");

    // Queries beyond the box clamp to the stabilized values.
    let far = Degree::new(vec![40]);
    println!(
        "rank(1 -> 40) = {:?} (clamped to the box)",
        rho.query(&Degree::new(vec![1]), &far)
    );
    Ok(())
}
