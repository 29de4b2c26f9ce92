//! Relation families: the degree-wise subspace data of a submodule, its
//! verification, framing into Grassmannian coordinates, and the way back.
//!
//! Run with `cargo run --example relation_families`.

use std::collections::BTreeMap;

use multipers::family::{
    frame_family, submodule_from_family, unframe_family, verify_framed_family,
    verify_relation_family, RelationFamily,
};
use multipers::field::Field;
use multipers::grading::Multiset;
use multipers::Degree;

fn main() -> multipers::Result<()> {
    let field = Field::fp(2)?;
    // Five generator slots at degrees 1, 1, 2, 3, 3 and four relation slots
    // at degrees 2, 3, 4, 4.
    let xi0 = Multiset::from_coords(&[(&[1], 2), (&[2], 1), (&[3], 2)]);
    let xi1 = Multiset::from_coords(&[(&[2], 1), (&[3], 1), (&[4], 2)]);
    let d = |k: u32| Degree::new(vec![k]);
    let unit = |i: usize| {
        let mut e = vec![field.zero(); 5];
        e[i] = field.one();
        e
    };

    let mut spaces = BTreeMap::new();
    spaces.insert(d(2), vec![unit(0)]);
    spaces.insert(d(3), vec![unit(0), unit(1)]);
    spaces.insert(d(4), vec![unit(0), unit(1), unit(2), unit(3)]);
    let family = RelationFamily::new(field, xi0, xi1, spaces)?;

    let report = verify_relation_family(&family);
    println!("relation family valid: {}", report.ok());

    // A minimal generating set of the spanned submodule, one vector per
    // xi1 slot.
    println!("minimal generators of the spanned submodule:");
    for (degree, vector) in submodule_from_family(&family)? {
        let coords: Vec<String> = vector.iter().map(|s| s.to_string()).collect();
        println!("  at {degree}: ({})", coords.join(", "));
    }

    // Framing lands in a product of Grassmannians; on the coordinate
    // representation it is canonicalization, and it round-trips.
    let framed = frame_family(&family)?;
    println!("framed family valid: {}", verify_framed_family(&framed).ok());
    for (degree, basis) in framed.spaces() {
        println!("  tau_{degree}(L_{degree}) has dimension {}", basis.len());
    }
    assert_eq!(unframe_family(&framed)?, family);
    println!("unframe(frame(family)) == family");

    // Breaking the projection condition is caught with a witness degree.
    let mut broken_spaces = family.spaces().clone();
    broken_spaces.insert(d(2), vec![unit(2)]);
    let broken = RelationFamily::new(
        field,
        family.xi0().clone(),
        family.xi1().clone(),
        broken_spaces,
    )?;
    let report = verify_relation_family(&broken);
    let failure = report.first_failure().expect("must fail");
    println!(
        "broken family: condition {} fails at {} ({})",
        failure.condition, failure.degree, failure.detail
    );
    Ok(())
}
