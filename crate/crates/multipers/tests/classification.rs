//! Cross-module properties of the classification machinery: the type pair,
//! group closure, equivariance of framing, and the incompleteness witness.

mod common;

use std::collections::BTreeMap;

use common::*;
use rand::prelude::*;

use multipers::family::{
    family_from_generators, frame_family, submodule_from_family, verify_framed_family,
    FramedFamily,
};
use multipers::field::{Field, Scalar};
use multipers::grading::{block_pattern, is_in_gl_leq, FreeModule, Multiset};
use multipers::invariants::{rank_from_barcode, type_invariant, Barcode, Death};
use multipers::moduli::{enumerate_framed_families, gl_leq_elements, gl_leq_order};
use multipers::module::{quotient_module, submodule_on_grid};
use multipers::presentation::minimal_generators;

/// The one-parameter submodules L = <(x,0),(0,x)> and N = <(x^2,0),(0,1)>
/// of F({(1,1),(2,1)}) share the type {(2,1),(3,1)}.
#[test]
fn l_and_n_submodules_share_their_type() {
    let field = Field::fp(2).unwrap();
    let xi0 = Multiset::from_coords(&[(&[1], 1), (&[2], 1)]);
    let free = FreeModule::new(xi0);
    let expected = Multiset::from_coords(&[(&[2], 1), (&[3], 1)]);
    let l = vec![
        (d(&[2]), vec![field.one(), field.zero()]),
        (d(&[3]), vec![field.zero(), field.one()]),
    ];
    let n = vec![
        (d(&[3]), vec![field.one(), field.zero()]),
        (d(&[2]), vec![field.zero(), field.one()]),
    ];
    for gens in [l, n] {
        let sub = submodule_on_grid(field, &free, &gens, d(&[3])).unwrap();
        assert_eq!(minimal_generators(&sub.module).xi, expected);
    }
}

/// The two-parameter incompleteness witness: the quotients by
/// L = <(x^3,0),(x^2y,0),(xy^2,0),(y^3,0)> and
/// N = <(x^3,x^3),(x^2y,0),(xy^2,0),(0,y^3)> share the type pair but are
/// distinguished by their dimension at (3,3) and by exhaustive GL matching
/// of their relation families over F_2.
#[test]
fn type_pair_is_incomplete_in_two_parameters() {
    let field = Field::fp(2).unwrap();
    let (xi0, xi1) = counterexample_xis();
    let free = FreeModule::new(xi0.clone());
    let one = || field.one();
    let zero = || field.zero();
    let l: Vec<_> = [[3u32, 0], [2, 1], [1, 2], [0, 3]]
        .iter()
        .map(|c| (d(c), vec![one(), zero()]))
        .collect();
    let n = vec![
        (d(&[3, 0]), vec![one(), one()]),
        (d(&[2, 1]), vec![one(), zero()]),
        (d(&[1, 2]), vec![one(), zero()]),
        (d(&[0, 3]), vec![zero(), one()]),
    ];

    let ql = quotient_module(field, &free, &l).unwrap();
    let qn = quotient_module(field, &free, &n).unwrap();
    let tl = type_invariant(&ql).unwrap();
    let tn = type_invariant(&qn).unwrap();
    assert_eq!(tl, (xi0.clone(), xi1.clone()));
    assert_eq!(tl, tn, "the type pair cannot tell the quotients apart");

    // The modules themselves differ: L leaves a torsion-free line at (3,3).
    assert_eq!(ql.dim_at(&d(&[3, 3])), 1);
    assert_eq!(qn.dim_at(&d(&[3, 3])), 0);

    // And no graded automorphism matches the relation families: the orbits
    // of their framed families under all of GL_2(F_2) are disjoint.
    let fam_l = frame_family(&family_from_generators(field, &xi0, &xi1, &l).unwrap()).unwrap();
    let fam_n = frame_family(&family_from_generators(field, &xi0, &xi1, &n).unwrap()).unwrap();
    for g in gl_leq_elements(2, &xi0).unwrap() {
        assert_ne!(fam_l.transform(&g).unwrap(), fam_n);
    }
}

/// Products and inverses of matrices passing the block-pattern membership
/// test pass it again: `GL_<=` is a subgroup.
#[test]
fn gl_leq_is_closed_under_product_and_inverse() {
    let xi0 = Multiset::from_coords(&[(&[1], 2), (&[2], 1), (&[3], 2)]);
    let pattern = block_pattern(&xi0);
    let elements = gl_leq_elements(2, &xi0).unwrap();
    assert_eq!(elements.len() as u128, gl_leq_order(2, &xi0));
    let mut rng = rng(0xC105);
    for _ in 0..50 {
        let a = &elements[rng.gen_range(0..elements.len())];
        let b = &elements[rng.gen_range(0..elements.len())];
        let prod = a.matmul(b).unwrap();
        assert!(is_in_gl_leq(&prod, &pattern).unwrap());
        let inv = a.inverse().unwrap();
        assert!(is_in_gl_leq(&inv, &pattern).unwrap());
    }
}

/// Framing is equivariant: framing the transformed family equals
/// transforming the framed family, for GL_<= matrices.
#[test]
fn framing_is_equivariant() {
    let mut rng = rng(0xE0_07);
    for trial in 0..25 {
        let field = if trial % 2 == 0 {
            Field::fp(2).unwrap()
        } else {
            Field::fp(3).unwrap()
        };
        let rf = random_relation_family(&mut rng, field);
        let q = match field {
            Field::Fp(p) => p,
            Field::Q => unreachable!(),
        };
        // A random word in the group generators.
        let gens = multipers::moduli::gl_leq_generators(q, &rf.xi0).unwrap();
        let m0 = rf.family.free_module().rank();
        let mut g = multipers::matrix::DenseMatrix::identity(field, m0);
        if !gens.is_empty() {
            for _ in 0..rng.gen_range(1..=6) {
                g = g.matmul(&gens[rng.gen_range(0..gens.len())]).unwrap();
            }
        }
        let moved_then_framed = frame_family(&rf.family.transform(&g).unwrap()).unwrap();
        let framed_then_moved = frame_family(&rf.family).unwrap().transform(&g).unwrap();
        assert_eq!(moved_then_framed, framed_then_moved);
        assert!(verify_framed_family(&moved_then_framed).ok());
    }
}

/// One representative per GL-orbit of the counterexample's framed families
/// maps through unframe -> submodule -> quotient to a module with the
/// expected type pair, and representatives of distinct orbits are never
/// matched by any group element: the orbit set realizes the classification
/// at F_2 scale.
#[test]
fn orbit_representatives_classify_the_quotients() {
    let field = Field::fp(2).unwrap();
    let (xi0, xi1) = counterexample_xis();
    let families = enumerate_framed_families(2, &xi0, &xi1).unwrap();
    let group = gl_leq_elements(2, &xi0).unwrap();

    // Orbit partition by brute force over the full group.
    let mut orbit_of: BTreeMap<usize, usize> = BTreeMap::new();
    let key = |f: &FramedFamily| -> Vec<Vec<Vec<Scalar>>> {
        f.spaces().values().cloned().collect()
    };
    let index: std::collections::HashMap<Vec<Vec<Vec<Scalar>>>, usize> = families
        .iter()
        .enumerate()
        .map(|(i, f)| (key(f), i))
        .collect();
    let mut reps: Vec<usize> = Vec::new();
    for i in 0..families.len() {
        if orbit_of.contains_key(&i) {
            continue;
        }
        let rep = reps.len();
        reps.push(i);
        for g in &group {
            let j = index[&key(&families[i].transform(g).unwrap())];
            orbit_of.insert(j, rep);
        }
    }
    assert_eq!(reps.len(), 14); // the golden orbit total at q = 2

    // Distinct orbits are never matched by a group element.
    for (a, &i) in reps.iter().enumerate() {
        for &j in reps.iter().skip(a + 1) {
            for g in &group {
                assert_ne!(families[i].transform(g).unwrap(), families[j]);
            }
        }
    }

    // Every representative descends to a quotient of the expected type.
    let free = FreeModule::new(xi0.clone());
    for &i in &reps {
        let fam = multipers::family::unframe_family(&families[i]).unwrap();
        let gens = submodule_from_family(&fam).unwrap();
        let q = quotient_module(field, &free, &gens).unwrap();
        assert_eq!(type_invariant(&q).unwrap(), (xi0.clone(), xi1.clone()));
    }
}

/// Distinct barcodes have distinct rank invariants: completeness in one
/// parameter, sampled.
#[test]
fn distinct_barcodes_have_distinct_rank_tables() {
    let mut rng = rng(0xBA2C0DE);
    let len = 9;
    for _ in 0..60 {
        let a = Barcode::from_bars(random_barcode(&mut rng, len, 5).into_iter().map(
            |(b, t)| (b, t.map_or(Death::Infinite, Death::Finite)),
        ));
        let b = Barcode::from_bars(random_barcode(&mut rng, len, 5).into_iter().map(
            |(b, t)| (b, t.map_or(Death::Infinite, Death::Finite)),
        ));
        if a != b {
            assert_ne!(rank_from_barcode(&a, len), rank_from_barcode(&b, len));
        }
    }
}
