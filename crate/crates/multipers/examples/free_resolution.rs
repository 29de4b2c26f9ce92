//! Iterated free hulls: minimal free resolutions, step by step.
//!
//! Run with `cargo run --example free_resolution`.

use multipers::field::Field;
use multipers::grading::{FreeModule, Multiset};
use multipers::io::format_multiset_text;
use multipers::module::{submodule_on_grid, PersistenceModule};
use multipers::presentation::{free_hull, kernel_module, resolve};
use multipers::{Degree, Scalar};

fn main() -> multipers::Result<()> {
    let field = Field::fp(2)?;
    let d = |c: &[u32]| Degree::new(c.to_vec());

    // The staircase ideal <x^3, x^2y, xy^2, y^3> in F[x, y].
    let ambient = FreeModule::new(Multiset::from_coords(&[(&[0, 0], 1)]));
    let gens: Vec<(Degree, Vec<Scalar>)> = [[3u32, 0], [2, 1], [1, 2], [0, 3]]
        .iter()
        .map(|c| (d(c), vec![field.one()]))
        .collect();
    let ideal = submodule_on_grid(field, &ambient, &gens, d(&[4, 4]))?.module;

    println!("resolution types of the staircase ideal:");
    for (i, xi) in resolve(&ideal, 4)?.iter().enumerate() {
        println!("  xi{i} = {}", format_multiset_text(xi));
    }
    println!("the kernel after one hull is free: the resolution stops there");

    // The pieces behind one resolution step.
    let hull = free_hull(&ideal)?;
    let kernel = kernel_module(&hull, &ideal)?;
    println!("\nkernel dimensions along the first syzygy degrees:");
    for v in [[3u32, 1], [2, 2], [1, 3], [4, 4]] {
        let v = d(&v);
        println!("  dim K at {v} = {}", kernel.module.dim_at(&v));
    }

    // In one parameter every kernel is already free, so two steps suffice.
    let bars = [(0u32, Some(2u32)), (1, Some(4)), (3, None)];
    let one_param = PersistenceModule::interval_sum(field, 5, &bars)?;
    println!("\nresolution types of an interval sum on [0, 5]:");
    for (i, xi) in resolve(&one_param, 4)?.iter().enumerate() {
        println!("  xi{i} = {}", format_multiset_text(xi));
    }
    Ok(())
}
