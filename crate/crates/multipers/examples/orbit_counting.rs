//! Why no discrete complete invariant exists beyond one parameter: the
//! moduli of modules with two generators at the origin and four relations
//! along the staircase grows with the field.
//!
//! Framed families for this type pair are quadruples of lines in F^2, acted
//! on by GL_2. Quadruples of pairwise distinct lines fall into exactly
//! q - 2 orbits (one per cross ratio), so the number of isomorphism classes
//! depends on the field: no single countable value set can classify them.
//!
//! Run with `cargo run --example orbit_counting`.

use multipers::grading::Multiset;
use multipers::io::orbit_report_to_doc;
use multipers::moduli::{cross_ratio_orbits, orbit_count};

fn main() -> multipers::Result<()> {
    let xi0 = Multiset::from_coords(&[(&[0, 0], 2)]);
    let xi1 = Multiset::from_coords(&[
        (&[3, 0], 1),
        (&[2, 1], 1),
        (&[1, 2], 1),
        (&[0, 3], 1),
    ]);

    println!("framed-family orbits for the staircase type pair:");
    for q in [2u32, 3, 5, 7] {
        let report = orbit_count(q, &xi0, &xi1)?;
        println!(
            "  q = {q}: {} families, {} orbits, {} with pairwise distinct lines (q - 2 = {})",
            report.total_points,
            report.orbit_count,
            report.distinct_line_orbits.unwrap(),
            q.saturating_sub(2),
        );
    }

    // The same count straight from quadruples of distinct lines.
    println!("\ncross-ratio classes of distinct line quadruples:");
    for q in [2u32, 3, 5, 7, 11] {
        println!("  q = {q}: {}", cross_ratio_orbits(q)?);
    }

    // The JSON shape emitted by the `orbits` subcommand.
    let doc = orbit_report_to_doc(3, &orbit_count(3, &xi0, &xi1)?);
    println!("\nq = 3 report: {}", serde_json::to_string(&doc)?);
    Ok(())
}
