//! Shared fixtures and random generators for the integration suites.

#![allow(dead_code)]

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use multipers::complex::MultifilteredComplex;
use multipers::family::{family_from_generators, RelationFamily};
use multipers::field::{Field, Scalar};
use multipers::grading::{Degree, FreeModule, Multiset};
use multipers::matrix::DenseMatrix;
use multipers::module::{submodule_on_grid, PersistenceModule};
use multipers::presentation::minimal_generators;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn d(coords: &[u32]) -> Degree {
    Degree::new(coords.to_vec())
}

/// Hollow triangle with vertices at 0 and edges at 1; filled at `fill`.
pub fn triangle_filtration(fill: Option<u32>) -> MultifilteredComplex {
    let mut simplices: Vec<(Vec<usize>, Vec<Degree>)> = vec![
        (vec![0], vec![d(&[0])]),
        (vec![1], vec![d(&[0])]),
        (vec![2], vec![d(&[0])]),
        (vec![0, 1], vec![d(&[1])]),
        (vec![0, 2], vec![d(&[1])]),
        (vec![1, 2], vec![d(&[1])]),
    ];
    if let Some(t) = fill {
        simplices.push((vec![0, 1, 2], vec![d(&[t])]));
    }
    MultifilteredComplex::new(1, simplices).unwrap()
}

/// The monomial ideal <x^3, x^2 y, x y^2, y^3> inside F[x, y] as a grid
/// module on the box (4, 4).
pub fn monomial_ideal_module(field: Field) -> PersistenceModule {
    let ambient = FreeModule::new(Multiset::from_coords(&[(&[0, 0], 1)]));
    let gens: Vec<(Degree, Vec<Scalar>)> = [[3u32, 0], [2, 1], [1, 2], [0, 3]]
        .iter()
        .map(|c| (d(c), vec![field.one()]))
        .collect();
    submodule_on_grid(field, &ambient, &gens, d(&[4, 4]))
        .unwrap()
        .module
}

/// The counterexample type pair: two generators at the origin and four
/// relation degrees on the diagonal of total degree 3.
pub fn counterexample_xis() -> (Multiset, Multiset) {
    (
        Multiset::from_coords(&[(&[0, 0], 2)]),
        Multiset::from_coords(&[(&[3, 0], 1), (&[2, 1], 1), (&[1, 2], 1), (&[0, 3], 1)]),
    )
}

/// A random valid bifiltration with at most `max_simplices` simplices and
/// entry degrees inside `bound`. Simplices enter no earlier than their
/// faces; a few entries are multi-critical antichains.
pub fn random_bifiltration(rng: &mut ChaCha8Rng, max_simplices: usize, bound: [u32; 2]) -> MultifilteredComplex {
    let rand_deg = |rng: &mut ChaCha8Rng, lo: [u32; 2]| -> Degree {
        Degree::new(vec![
            rng.gen_range(lo[0]..=bound[0]),
            rng.gen_range(lo[1]..=bound[1]),
        ])
    };
    let n_vertices = rng.gen_range(3..=6.min(max_simplices));
    let mut simplices: Vec<(Vec<usize>, Vec<Degree>)> = Vec::new();
    for v in 0..n_vertices {
        simplices.push((vec![v], vec![rand_deg(rng, [0, 0])]));
    }
    let entry_join = |simplices: &[(Vec<usize>, Vec<Degree>)], verts: &[usize]| -> Degree {
        // Any entry degree of each face works as a lower bound; use the
        // componentwise join of the first entries.
        let mut lo = Degree::new(vec![0, 0]);
        for (vs, entries) in simplices {
            if vs.iter().all(|v| verts.contains(v)) {
                lo = lo.join(&entries[0]);
            }
        }
        lo
    };
    // Edges.
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for a in 0..n_vertices {
        for b in (a + 1)..n_vertices {
            edges.push((a, b));
        }
    }
    edges.shuffle(rng);
    let edge_budget = rng.gen_range(0..=edges.len().min(max_simplices.saturating_sub(n_vertices)));
    let mut present_edges = Vec::new();
    for &(a, b) in edges.iter().take(edge_budget) {
        let lo = entry_join(&simplices, &[a, b]);
        let first = rand_deg(rng, [lo.coords()[0], lo.coords()[1]]);
        let mut entries = vec![first.clone()];
        // Sometimes add an incomparable second entry.
        if rng.gen_bool(0.2) {
            for _ in 0..4 {
                let second = rand_deg(rng, [lo.coords()[0], lo.coords()[1]]);
                if !second.leq(&first) && !first.leq(&second) {
                    entries.push(second);
                    break;
                }
            }
        }
        simplices.push((vec![a, b], entries));
        present_edges.push((a, b));
    }
    // Triangles on fully present boundaries.
    let remaining = max_simplices.saturating_sub(simplices.len());
    let mut triangles = Vec::new();
    for a in 0..n_vertices {
        for b in (a + 1)..n_vertices {
            for c in (b + 1)..n_vertices {
                let all_edges = [(a, b), (a, c), (b, c)]
                    .iter()
                    .all(|e| present_edges.contains(e));
                if all_edges {
                    triangles.push([a, b, c]);
                }
            }
        }
    }
    triangles.shuffle(rng);
    for t in triangles.into_iter().take(remaining) {
        // The triangle must dominate one entry of each of its edges; the
        // join of the first entries does.
        let mut lo = Degree::new(vec![0, 0]);
        for (vs, entries) in &simplices {
            if vs.len() == 2 && vs.iter().all(|v| t.contains(v)) {
                lo = lo.join(&entries[0]);
            }
        }
        let deg = rand_deg(rng, [lo.coords()[0], lo.coords()[1]]);
        simplices.push((t.to_vec(), vec![deg]));
    }
    MultifilteredComplex::new(2, simplices).unwrap()
}

/// A completely random one-parameter module: arbitrary dimensions and step
/// matrices on the box `[0, len]`.
pub fn random_one_param_module(
    rng: &mut ChaCha8Rng,
    field: Field,
    len: u32,
    max_dim: usize,
) -> PersistenceModule {
    let dims: Vec<usize> = (0..=len).map(|_| rng.gen_range(0..=max_dim)).collect();
    let p = match field {
        Field::Fp(p) => p as i64,
        Field::Q => 7,
    };
    let mut steps: Vec<Vec<Option<DenseMatrix>>> = Vec::new();
    for u in 0..=len as usize {
        if u == len as usize {
            steps.push(vec![None]);
            continue;
        }
        let (rows, cols) = (dims[u + 1], dims[u]);
        let mut m = DenseMatrix::zero(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, field.from_i64(rng.gen_range(0..p)));
            }
        }
        steps.push(vec![Some(m)]);
    }
    PersistenceModule::new(field, Degree::new(vec![len]), dims, steps).unwrap()
}

/// A random barcode on `[0, len]` with at most `max_bars` bars.
pub fn random_barcode(rng: &mut ChaCha8Rng, len: u32, max_bars: usize) -> Vec<(u32, Option<u32>)> {
    let count = rng.gen_range(0..=max_bars);
    (0..count)
        .map(|_| {
            let birth = rng.gen_range(0..=len.saturating_sub(1));
            if rng.gen_bool(0.25) {
                (birth, None)
            } else {
                (birth, Some(rng.gen_range(birth + 1..=len)))
            }
        })
        .collect()
}

/// A random valid relation family, by construction: a random `xi0`, random
/// homogeneous generators supported strictly below their degrees (so the
/// tensor-condition holds), the generated submodule's actual type `xi1`,
/// and the submodule's degree-wise slices.
pub struct RandomFamily {
    pub family: RelationFamily,
    pub generators: Vec<(Degree, Vec<Scalar>)>,
    pub xi0: Multiset,
    pub xi1: Multiset,
}

pub fn random_relation_family(rng: &mut ChaCha8Rng, field: Field) -> RandomFamily {
    let n = rng.gen_range(1..=2usize);
    loop {
        // Random xi0 with m0 <= 5.
        let distinct = rng.gen_range(1..=3usize);
        let mut xi0 = Multiset::new();
        for _ in 0..distinct {
            let coords: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=2u32)).collect();
            xi0.insert(Degree::new(coords), rng.gen_range(1..=2usize));
        }
        if xi0.total() > 5 {
            continue;
        }
        let free = FreeModule::new(xi0.clone());
        let m0 = free.rank();
        let p = match field {
            Field::Fp(p) => p as i64,
            Field::Q => 5,
        };
        // Random homogeneous generators with support strictly below their
        // degree.
        let count = rng.gen_range(1..=3usize);
        let mut generators: Vec<(Degree, Vec<Scalar>)> = Vec::new();
        for _ in 0..count {
            let base = free.slot_degrees()[rng.gen_range(0..m0)].clone();
            let mut coords: Vec<u32> = base.coords().to_vec();
            let mut bumped = false;
            for c in coords.iter_mut() {
                let off = rng.gen_range(0..=2u32);
                if off > 0 {
                    bumped = true;
                }
                *c += off;
            }
            if !bumped {
                coords[rng.gen_range(0..n)] += 1;
            }
            let deg = Degree::new(coords);
            let mut vec = vec![field.zero(); m0];
            let mut nonzero = false;
            for (s, slot_deg) in free.slot_degrees().iter().enumerate() {
                if slot_deg.lt(&deg) {
                    let c = field.from_i64(rng.gen_range(0..p));
                    if !field.is_zero(&c) {
                        nonzero = true;
                    }
                    vec[s] = c;
                }
            }
            if !nonzero {
                // Force a nonzero coordinate on some strictly lower slot.
                match (0..m0).find(|&s| free.slot_degrees()[s].lt(&deg)) {
                    Some(s) => vec[s] = field.one(),
                    None => continue,
                }
            }
            generators.push((deg, vec));
        }
        if generators.is_empty() {
            continue;
        }
        // The actual type of the generated submodule.
        let mut bound = free.slot_degrees()[0].clone();
        for s in free.slot_degrees() {
            bound = bound.join(s);
        }
        for (g, _) in &generators {
            bound = bound.join(g);
        }
        let sub = submodule_on_grid(field, &free, &generators, bound).unwrap();
        let xi1 = minimal_generators(&sub.module).xi;
        if xi1.is_empty() {
            continue;
        }
        let family = family_from_generators(field, &xi0, &xi1, &generators).unwrap();
        // Slices of a tensor-condition submodule can still miss the
        // family dimension condition when shifts of distinct generators
        // collide below a higher minimal generator; those submodules do not
        // correspond to relation families, so resample.
        if !multipers::family::verify_relation_family(&family).ok() {
            continue;
        }
        return RandomFamily {
            family,
            generators,
            xi0,
            xi1,
        };
    }
}
