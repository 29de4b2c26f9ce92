//! The automorphism groups of free graded modules as block-patterned
//! matrix groups: which blocks must vanish, membership testing, and group
//! orders over small prime fields.
//!
//! Run with `cargo run --example gl_block_patterns`.

use multipers::field::Field;
use multipers::grading::{block_pattern, is_in_gl_leq, Multiset};
use multipers::matrix::DenseMatrix;
use multipers::moduli::{gl_leq_elements, gl_leq_order};

fn describe(name: &str, xi0: &Multiset) {
    let pattern = block_pattern(xi0);
    println!("{name}:");
    let degrees: Vec<String> = pattern.degrees().iter().map(|d| d.to_string()).collect();
    println!("  degrees {}", degrees.join(", "));
    println!("  block sizes {:?}", pattern.block_sizes());
    println!("  zero blocks {:?} (0-based row/column block indices)", pattern.zero_blocks());
    for q in [2u32, 3, 5] {
        println!("  |GL_<= (F_{q})| = {}", gl_leq_order(q, xi0));
    }
}

fn main() -> multipers::Result<()> {
    // Upper triangular 2x2: one generator at 1, one at 2.
    let upper = Multiset::from_coords(&[(&[1], 1), (&[2], 1)]);
    describe("xi0 = {(1):1, (2):1}", &upper);

    // The 5x5 pattern with degrees 1 (x2), 2, 3 (x2).
    let five = Multiset::from_coords(&[(&[1], 2), (&[2], 1), (&[3], 2)]);
    describe("xi0 = {(1):2, (2):1, (3):2}", &five);

    // A single degree: the full general linear group.
    let full = Multiset::from_coords(&[(&[2, 2], 3)]);
    describe("xi0 = {(2 2):3}", &full);

    // Incomparable degrees: block diagonal.
    let diag = Multiset::from_coords(&[(&[1, 0], 1), (&[0, 1], 2)]);
    describe("xi0 = {(1 0):1, (0 1):2}", &diag);

    // Membership testing over F_5.
    let field = Field::fp(5)?;
    let pattern = block_pattern(&upper);
    let inside = DenseMatrix::from_i64_rows(field, &[&[2, 3], &[0, 4]]);
    let outside = DenseMatrix::from_i64_rows(field, &[&[2, 3], &[1, 4]]);
    println!(
        "\nover F_5: [[2,3],[0,4]] in GL_<=? {}; [[2,3],[1,4]]? {}",
        is_in_gl_leq(&inside, &pattern)?,
        is_in_gl_leq(&outside, &pattern)?
    );

    // Explicit enumeration agrees with the closed order formula.
    let elements = gl_leq_elements(2, &five)?;
    println!(
        "enumerated |GL_<=(F_2)| for the 5x5 pattern: {} (formula {})",
        elements.len(),
        gl_leq_order(2, &five)
    );
    Ok(())
}
