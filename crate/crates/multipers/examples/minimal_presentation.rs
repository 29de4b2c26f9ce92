//! Minimal presentations: the type pair (xi0, xi1) of a bigraded module.
//!
//! The module here is the staircase submodule of F[x1, x2] generated by
//! x1^3, x1^2 x2, x1 x2^2, x2^3, realized as the degree-0 homology of a
//! single vertex with a multi-critical entry antichain. Its minimal
//! presentation has four generators and three relations.
//!
//! Run with `cargo run --example minimal_presentation`.

use multipers::complex::{build_persistence_module, MultifilteredComplex};
use multipers::field::Field;
use multipers::io::{format_multiset_text, presentation_to_doc};
use multipers::presentation::minimal_presentation;

fn main() -> multipers::Result<()> {
    let field = Field::fp(2)?;
    let complex =
        MultifilteredComplex::parse("dim 2\nsimplex 0 @ (3 0) | (2 1) | (1 2) | (0 3)\n")?;
    let module = build_persistence_module(&complex, 0, field)?;
    let pres = minimal_presentation(&module)?;

    println!("xi0 = {}", format_multiset_text(&pres.xi0));
    println!("xi1 = {}", format_multiset_text(&pres.xi1));
    println!("relations:");
    for (degree, vector) in &pres.relations {
        let coeffs: Vec<String> = vector.iter().map(|s| s.to_string()).collect();
        println!("  at {degree}: ({})", coeffs.join(", "));
    }

    // The same data as the machine-readable document used by the CLI.
    let json = serde_json::to_string_pretty(&presentation_to_doc(&pres))?;
    println!("\nJSON document:\n{json}");
    Ok(())
}
