//! The tensor-condition: why quotienting by an arbitrary submodule does not
//! preserve the generator type, and how the condition repairs it.
//!
//! Inside F(xi0) with xi0 = {(1):1, (2):1}, the submodules
//!   L = <(x, 0), (0, x)>   and   N = <(x^2, 0), (0, 1)>
//! both have type {(2):1, (3):1}, but only L satisfies the tensor-condition:
//! the quotient by L keeps xi0 as its generator type, the quotient by N
//! collapses to F[x]/<x^2>(1).
//!
//! Run with `cargo run --example tensor_condition`.

use multipers::field::Field;
use multipers::grading::{FreeModule, Multiset};
use multipers::io::format_multiset_text;
use multipers::module::quotient_on_grid;
use multipers::presentation::{minimal_presentation, tensor_condition};
use multipers::Degree;

fn main() -> multipers::Result<()> {
    let field = Field::fp(2)?;
    let xi0 = Multiset::from_coords(&[(&[1], 1), (&[2], 1)]);
    let free = FreeModule::new(xi0.clone());
    let d = |k: u32| Degree::new(vec![k]);

    // Coordinates are per generator slot; (x, 0) at degree 2 is (1, 0).
    let l = vec![
        (d(2), vec![field.one(), field.zero()]),
        (d(3), vec![field.zero(), field.one()]),
    ];
    let n = vec![
        (d(3), vec![field.one(), field.zero()]),
        (d(2), vec![field.zero(), field.one()]),
    ];

    for (name, gens) in [("L", &l), ("N", &n)] {
        let holds = tensor_condition(gens, &xi0)?;
        println!("tensor-condition for {name}: {holds}");
        let quotient = quotient_on_grid(field, &free, gens, d(4))?;
        let dims: Vec<usize> = (0..=4).map(|u| quotient.dim_at(&d(u))).collect();
        let pres = minimal_presentation(&quotient)?;
        println!(
            "  F(xi0)/{name}: dims {dims:?}, xi0 = {}, xi1 = {}",
            format_multiset_text(&pres.xi0),
            format_multiset_text(&pres.xi1),
        );
    }

    println!(
        "\nonly the quotient by L reports xi0 = {}; quotienting by N \
         produces a module generated at degree 1 alone",
        format_multiset_text(&xi0)
    );
    Ok(())
}
