//! Minimal generators, free hulls, and minimal presentations.
//!
//! Everything is computed degree-wise on the grid. The multiplicity of a
//! degree `v` among the minimal generators of `M` is
//! `dim M_v - dim(sum of incoming step images)`; generator lifts are chosen
//! by greedy standard-basis completion of the incoming image (lowest
//! coordinate index wins ties), which makes every output canonical.
//!
//! All operations assume a valid module: commuting squares inside the box
//! and a box large enough that the module is constant beyond it. Modules
//! produced by this crate's builders satisfy both.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::field::{Field, Scalar};
use crate::grading::{Degree, FreeModule, Multiset};
use crate::matrix::{greedy_completion, solve_in_span, DenseMatrix};
use crate::module::PersistenceModule;

/// Minimal homogeneous generators of a grid module: the type multiset and,
/// per degree, lift vectors in the module's own coordinates at that degree.
pub struct MinimalGenerators {
    pub xi: Multiset,
    pub lifts: BTreeMap<Degree, Vec<Vec<Scalar>>>,
}

fn unit(field: Field, dim: usize, i: usize) -> Vec<Scalar> {
    let mut e = vec![field.zero(); dim];
    e[i] = field.one();
    e
}

/// Columns of every step arriving at `v`, as vectors in `M_v`.
fn incoming_images(m: &PersistenceModule, v: &Degree) -> Vec<Vec<Scalar>> {
    let mut cols = Vec::new();
    for axis in 0..m.n() {
        if let Some(src) = v.minus_unit(axis) {
            let step = m.step(&src, axis).expect("inside the box");
            for j in 0..step.cols() {
                cols.push(step.col(j));
            }
        }
    }
    cols
}

/// Degree-wise graded Nakayama: generators at `v` form a basis of the
/// cokernel of the incoming steps.
pub fn minimal_generators(m: &PersistenceModule) -> MinimalGenerators {
    let field = m.field();
    let mut xi = Multiset::new();
    let mut lifts = BTreeMap::new();
    for v in m.grid().points() {
        let dim = m.dim_at(&v);
        if dim == 0 {
            continue;
        }
        let incoming = incoming_images(m, &v);
        let candidates: Vec<Vec<Scalar>> = (0..dim).map(|i| unit(field, dim, i)).collect();
        let chosen = greedy_completion(field, &incoming, &candidates, dim);
        if !chosen.is_empty() {
            xi.insert(v.clone(), chosen.len());
            lifts.insert(
                v.clone(),
                chosen.into_iter().map(|i| unit(field, dim, i)).collect(),
            );
        }
    }
    MinimalGenerators { xi, lifts }
}

/// A free hull `p0: F(xi0) -> M` evaluated on the grid: per point, the
/// matrix of `p0` with one column per generator slot (structurally zero on
/// slots not alive at the point).
pub struct FreeHull {
    pub free: FreeModule,
    /// Indexed by `grid.index(v)`; shape `dim M_v` x `m0`.
    pub maps: Vec<DenseMatrix>,
}

pub fn free_hull(m: &PersistenceModule) -> Result<FreeHull> {
    let field = m.field();
    let gens = minimal_generators(m);
    let free = FreeModule::new(gens.xi.clone());
    // Slot order of FreeModule is lex-by-degree with multiplicity slots
    // consecutive, matching iteration over the BTreeMap of lifts.
    let mut slot_lifts: Vec<(Degree, Vec<Scalar>)> = Vec::with_capacity(free.rank());
    for (deg, vecs) in &gens.lifts {
        for v in vecs {
            slot_lifts.push((deg.clone(), v.clone()));
        }
    }
    debug_assert_eq!(slot_lifts.len(), free.rank());
    let grid = m.grid();
    let mut maps = Vec::with_capacity(grid.len());
    for v in grid.points() {
        let mut mat = DenseMatrix::zero(field, m.dim_at(&v), free.rank());
        for (s, (w, lift)) in slot_lifts.iter().enumerate() {
            if !w.leq(&v) {
                continue;
            }
            let img = m.pushforward(w, &v, lift)?;
            for (r, c) in img.iter().enumerate() {
                mat.set(r, s, c.clone());
            }
        }
        maps.push(mat);
    }
    Ok(FreeHull { free, maps })
}

/// `K0 = ker(p0)` as a grid module, together with the canonical kernel basis
/// at every point in the coordinates of the ambient free module.
pub struct KernelModule {
    pub module: PersistenceModule,
    /// Indexed by `grid.index(v)`; vectors of length `m0`.
    pub bases: Vec<Vec<Vec<Scalar>>>,
}

pub fn kernel_module(hull: &FreeHull, m: &PersistenceModule) -> Result<KernelModule> {
    let field = m.field();
    let grid = m.grid();
    let m0 = hull.free.rank();
    let points = grid.points();
    let mut bases: Vec<Vec<Vec<Scalar>>> = vec![Vec::new(); grid.len()];
    let mut dims = vec![0usize; grid.len()];
    for v in &points {
        let vi = grid.index(v);
        let alive = hull.free.alive(v);
        // Restrict p0 to alive slots; dead columns are structural zeros and
        // must not contribute kernel vectors.
        let p0 = &hull.maps[vi];
        let mut restricted = DenseMatrix::zero(field, p0.rows(), alive.len());
        for (j, &slot) in alive.iter().enumerate() {
            for i in 0..p0.rows() {
                restricted.set(i, j, p0.get(i, slot).clone());
            }
        }
        assert_eq!(
            restricted.rank(),
            m.dim_at(v),
            "free hull map is not surjective at {v}: internal bug"
        );
        let kernel = restricted.kernel_basis();
        dims[vi] = kernel.len();
        bases[vi] = kernel
            .into_iter()
            .map(|kv| {
                let mut full = vec![field.zero(); m0];
                for (j, &slot) in alive.iter().enumerate() {
                    full[slot] = kv[j].clone();
                }
                full
            })
            .collect();
    }
    let mut steps = vec![Vec::new(); grid.len()];
    for v in &points {
        let vi = grid.index(v);
        let mut per_axis = Vec::with_capacity(grid.n());
        for axis in 0..grid.n() {
            let target = v.plus_unit(axis);
            if !grid.contains(&target) {
                per_axis.push(None);
                continue;
            }
            let ti = grid.index(&target);
            let mut mat = DenseMatrix::zero(field, dims[ti], dims[vi]);
            for (col, kv) in bases[vi].iter().enumerate() {
                // The monomial shift is the identity on coordinates, and the
                // shifted vector stays in the kernel because p0 is graded.
                let coeffs = solve_in_span(field, &bases[ti], kv)?
                    .expect("shifted kernel vector stays in the kernel");
                for (row, c) in coeffs.iter().enumerate() {
                    mat.set(row, col, c.clone());
                }
            }
            per_axis.push(Some(mat));
        }
        steps[vi] = per_axis;
    }
    Ok(KernelModule {
        module: PersistenceModule::new(field, grid.bound().clone(), dims, steps)?,
        bases,
    })
}

/// A minimal free presentation: the type pair `(xi0, xi1)` and one
/// homogeneous relation vector per `xi1` slot, in the coordinates of
/// `F(xi0)`.
#[derive(Clone, PartialEq, Debug)]
pub struct Presentation {
    pub field: Field,
    pub xi0: Multiset,
    pub xi1: Multiset,
    pub relations: Vec<(Degree, Vec<Scalar>)>,
}

impl Presentation {
    pub fn free_module(&self) -> FreeModule {
        FreeModule::new(self.xi0.clone())
    }

    /// Checks the structural invariants: the relation degrees enumerate
    /// `xi1`, every vector is valid at its degree, and the tensor-condition
    /// holds against `xi0`.
    pub fn validate(&self) -> Result<()> {
        let free = self.free_module();
        let mut degs = Multiset::new();
        for (d, v) in &self.relations {
            free.check_vector(self.field, d, v)?;
            degs.insert(d.clone(), 1);
        }
        if degs != self.xi1 {
            return Err(crate::error::Error::Invalid(
                "relation degrees do not enumerate xi1".into(),
            ));
        }
        if !tensor_condition(&self.relations, &self.xi0)? {
            return Err(crate::error::Error::Invalid(
                "relations violate the tensor-condition".into(),
            ));
        }
        Ok(())
    }
}

/// Computes the minimal presentation `(xi0, xi1, relations)` of a grid
/// module: a free hull, its kernel, and canonical lifts of the kernel's
/// minimal generators back into `F(xi0)`.
pub fn minimal_presentation(m: &PersistenceModule) -> Result<Presentation> {
    let field = m.field();
    let hull = free_hull(m)?;
    let ker = kernel_module(&hull, m)?;
    let kgens = minimal_generators(&ker.module);
    let grid = m.grid();
    let mut relations = Vec::new();
    for (deg, lifts) in &kgens.lifts {
        let basis = &ker.bases[grid.index(deg)];
        for coords in lifts {
            let mut rel = vec![field.zero(); hull.free.rank()];
            for (j, c) in coords.iter().enumerate() {
                if field.is_zero(c) {
                    continue;
                }
                for (slot, b) in basis[j].iter().enumerate() {
                    rel[slot] = field.add(&rel[slot], &field.mul(c, b));
                }
            }
            relations.push((deg.clone(), rel));
        }
    }
    let pres = Presentation {
        field,
        xi0: hull.free.xi().clone(),
        xi1: kgens.xi,
        relations,
    };
    debug_assert!(pres.validate().is_ok());
    Ok(pres)
}

/// The tensor-condition for the submodule generated by homogeneous vectors
/// inside `F(xi0)`: the induced map `F (x) L -> F (x) F(xi0)` vanishes.
///
/// Degree-wise this says every slice `L_v` projects to zero on the degree-`v`
/// generator block. Shifts of generators from strictly lower degrees never
/// reach that block, so only generators sitting exactly at a degree of `xi0`
/// can violate it.
pub fn tensor_condition(
    generators: &[(Degree, Vec<Scalar>)],
    xi0: &Multiset,
) -> Result<bool> {
    let free = FreeModule::new(xi0.clone());
    // Validate before deciding; malformed vectors are errors, not `false`.
    for (d, v) in generators {
        // Field is irrelevant for the structural check; infer zero-ness
        // entrywise against both scalar kinds.
        if v.len() != free.rank() {
            return Err(crate::error::Error::InvalidVector(format!(
                "generator at {d} has length {}, expected {}",
                v.len(),
                free.rank()
            )));
        }
    }
    for (d, v) in generators {
        for (slot, coeff) in v.iter().enumerate() {
            let slot_deg = &free.slot_degrees()[slot];
            let zero = match coeff {
                Scalar::Fp(x) => *x == 0,
                Scalar::Q(r) => num_traits::Zero::is_zero(r),
            };
            if zero {
                continue;
            }
            if !slot_deg.leq(d) {
                return Err(crate::error::Error::InvalidVector(format!(
                    "generator at {d} has a nonzero coefficient on slot {slot} of degree {slot_deg}"
                )));
            }
            if slot_deg == d {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Types of the iterated free hulls `xi0, xi1, xi2, ...` of a minimal graded
/// free resolution, truncated after `max_steps` hulls or as soon as a kernel
/// vanishes (the zero kernel contributes no multiset).
pub fn resolve(m: &PersistenceModule, max_steps: usize) -> Result<Vec<Multiset>> {
    assert!(max_steps >= 1);
    let mut out = Vec::new();
    let mut current = m.clone();
    for _ in 0..=max_steps {
        let hull = free_hull(&current)?;
        out.push(hull.free.xi().clone());
        if out.len() > max_steps {
            break;
        }
        let ker = kernel_module(&hull, &current)?;
        if ker.module.is_zero() {
            break;
        }
        current = ker.module;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::{
        free_module_on_default_box, quotient_module, quotient_on_grid, submodule_on_grid,
    };
    use crate::module::PersistenceModule as PM;

    fn d(coords: &[u32]) -> Degree {
        Degree::new(coords.to_vec())
    }

    fn f2() -> Field {
        Field::fp(2).unwrap()
    }

    /// The running example: the monomial ideal <x^3, x^2 y, x y^2, y^3>
    /// inside F[x, y], as a submodule of the rank-1 free module at the
    /// origin, evaluated on the box (4, 4).
    fn monomial_ideal_module(field: Field) -> PM {
        let ambient = FreeModule::new(Multiset::from_coords(&[(&[0, 0], 1)]));
        let gens: Vec<(Degree, Vec<Scalar>)> = [[3, 0], [2, 1], [1, 2], [0, 3]]
            .iter()
            .map(|c| (d(c), vec![field.one()]))
            .collect();
        submodule_on_grid(field, &ambient, &gens, d(&[4, 4]))
            .unwrap()
            .module
    }

    #[test]
    fn generators_of_a_free_module_are_its_type() {
        let xi = Multiset::from_coords(&[(&[1, 0], 1), (&[0, 2], 2)]);
        let m = free_module_on_default_box(f2(), &xi);
        let gens = minimal_generators(&m);
        assert_eq!(gens.xi, xi);
    }

    #[test]
    fn generators_of_the_monomial_ideal() {
        let m = monomial_ideal_module(f2());
        let gens = minimal_generators(&m);
        let expected =
            Multiset::from_coords(&[(&[3, 0], 1), (&[2, 1], 1), (&[1, 2], 1), (&[0, 3], 1)]);
        assert_eq!(gens.xi, expected);
    }

    #[test]
    fn generators_of_the_zero_module() {
        let m = PM::zero(f2(), 2);
        assert!(minimal_generators(&m).xi.is_empty());
        let pres = minimal_presentation(&m).unwrap();
        assert!(pres.xi0.is_empty());
        assert!(pres.xi1.is_empty());
    }

    #[test]
    fn free_hull_of_interval_module() {
        // F[x]/<x^2>(1) on the box [0,4] has type {(1,1)}.
        let field = f2();
        let m = PM::interval_sum(field, 4, &[(1, Some(3))]).unwrap();
        let hull = free_hull(&m).unwrap();
        assert_eq!(hull.free.xi(), &Multiset::from_coords(&[(&[1], 1)]));
    }

    #[test]
    fn free_hull_maps_are_surjective_on_monomial_ideal() {
        let m = monomial_ideal_module(f2());
        let hull = free_hull(&m).unwrap();
        for v in m.grid().points() {
            assert_eq!(hull.maps[m.grid().index(&v)].rank(), m.dim_at(&v));
        }
    }

    #[test]
    fn kernel_of_free_module_vanishes() {
        let xi = Multiset::from_coords(&[(&[1], 1), (&[2], 1)]);
        let m = free_module_on_default_box(f2(), &xi);
        let hull = free_hull(&m).unwrap();
        let ker = kernel_module(&hull, &m).unwrap();
        assert!(ker.module.is_zero());
    }

    #[test]
    fn kernel_dims_of_two_line_quotient() {
        // M = F(xi0)/<(x,0),(0,x)> over xi0 = {(1,1),(2,1)}: the kernel of
        // its free hull has dimensions 0, 1, 2 at degrees 1, 2, 3.
        let field = f2();
        let free = FreeModule::new(Multiset::from_coords(&[(&[1], 1), (&[2], 1)]));
        let gens = vec![
            (d(&[2]), vec![field.one(), field.zero()]),
            (d(&[3]), vec![field.zero(), field.one()]),
        ];
        let m = quotient_module(field, &free, &gens).unwrap();
        let hull = free_hull(&m).unwrap();
        let ker = kernel_module(&hull, &m).unwrap();
        let dims: Vec<usize> = (1..=3).map(|u| ker.module.dim_at(&d(&[u]))).collect();
        assert_eq!(dims, vec![0, 1, 2]);
    }

    #[test]
    fn kernel_dim_of_monomial_ideal_at_3_1() {
        let m = monomial_ideal_module(f2());
        let hull = free_hull(&m).unwrap();
        let ker = kernel_module(&hull, &m).unwrap();
        // dim F(xi0)_(3,1) = 2 (generators (3,0) and (2,1) alive), dim M = 1.
        assert_eq!(ker.module.dim_at(&d(&[3, 1])), 1);
    }

    #[test]
    fn presentation_of_two_line_quotient() {
        let field = f2();
        let free = FreeModule::new(Multiset::from_coords(&[(&[1], 1), (&[2], 1)]));
        let gens = vec![
            (d(&[2]), vec![field.one(), field.zero()]),
            (d(&[3]), vec![field.zero(), field.one()]),
        ];
        let m = quotient_module(field, &free, &gens).unwrap();
        let pres = minimal_presentation(&m).unwrap();
        assert_eq!(pres.xi0, Multiset::from_coords(&[(&[1], 1), (&[2], 1)]));
        assert_eq!(pres.xi1, Multiset::from_coords(&[(&[2], 1), (&[3], 1)]));
    }

    #[test]
    fn presentation_of_monomial_ideal() {
        for field in [f2(), Field::fp(5).unwrap(), Field::Q] {
            let m = monomial_ideal_module(field);
            let pres = minimal_presentation(&m).unwrap();
            assert_eq!(
                pres.xi0,
                Multiset::from_coords(&[(&[3, 0], 1), (&[2, 1], 1), (&[1, 2], 1), (&[0, 3], 1)])
            );
            assert_eq!(
                pres.xi1,
                Multiset::from_coords(&[(&[3, 1], 1), (&[2, 2], 1), (&[1, 3], 1)])
            );
            pres.validate().unwrap();
        }
    }

    #[test]
    fn tensor_condition_examples() {
        let field = f2();
        let xi0 = Multiset::from_coords(&[(&[1], 1), (&[2], 1)]);
        // L = <(x,0),(0,x)>: generators at degrees 2, 3.
        let l = vec![
            (d(&[2]), vec![field.one(), field.zero()]),
            (d(&[3]), vec![field.zero(), field.one()]),
        ];
        assert!(tensor_condition(&l, &xi0).unwrap());
        // N = <(x^2,0),(0,1)>: the degree-2 generator hits the degree-2 slot.
        let n = vec![
            (d(&[3]), vec![field.one(), field.zero()]),
            (d(&[2]), vec![field.zero(), field.one()]),
        ];
        assert!(!tensor_condition(&n, &xi0).unwrap());
        // Dominating relation degrees always pass.
        let xi0 = Multiset::from_coords(&[(&[0, 0], 2)]);
        let dom = vec![
            (d(&[3, 0]), vec![field.one(), field.zero()]),
            (d(&[0, 3]), vec![field.one(), field.one()]),
        ];
        assert!(tensor_condition(&dom, &xi0).unwrap());
        // Malformed vector (nonzero on a dead slot) is an error.
        let xi0 = Multiset::from_coords(&[(&[1], 1), (&[2], 1)]);
        let bad = vec![(d(&[1]), vec![field.zero(), field.one()])];
        assert!(tensor_condition(&bad, &xi0).is_err());
    }

    #[test]
    fn breaking_the_tensor_condition_changes_the_type() {
        // Quotient by N = <(x^2,0),(0,1)> is isomorphic to F[x]/<x^2>(1),
        // whose type {(1,1)} differs from xi0.
        let field = f2();
        let free = FreeModule::new(Multiset::from_coords(&[(&[1], 1), (&[2], 1)]));
        let n = vec![
            (d(&[3]), vec![field.one(), field.zero()]),
            (d(&[2]), vec![field.zero(), field.one()]),
        ];
        let q = quotient_on_grid(field, &free, &n, d(&[4])).unwrap();
        let dims: Vec<usize> = (0..=4).map(|u| q.dim_at(&d(&[u]))).collect();
        assert_eq!(dims, vec![0, 1, 1, 0, 0]);
        let pres = minimal_presentation(&q).unwrap();
        assert_eq!(pres.xi0, Multiset::from_coords(&[(&[1], 1)]));
        assert_ne!(pres.xi0, free.xi().clone());
    }

    #[test]
    fn resolve_free_module_stops_immediately() {
        let xi = Multiset::from_coords(&[(&[1], 1), (&[2], 1)]);
        let m = free_module_on_default_box(f2(), &xi);
        assert_eq!(resolve(&m, 3).unwrap(), vec![xi]);
    }

    #[test]
    fn resolve_monomial_ideal_has_length_one() {
        // The kernel of the first hull is free: second syzygies vanish.
        let m = monomial_ideal_module(f2());
        let steps = resolve(&m, 3).unwrap();
        assert_eq!(steps.len(), 2);
        assert_eq!(steps[0].total(), 4);
        assert_eq!(steps[1].total(), 3);
    }

    #[test]
    fn resolve_in_one_parameter_terminates_after_xi1() {
        let field = f2();
        let m = PM::interval_sum(field, 5, &[(0, Some(2)), (1, Some(4)), (3, None)]).unwrap();
        let steps = resolve(&m, 5).unwrap();
        assert!(steps.len() <= 2, "one-parameter kernels are free");
    }

    #[test]
    fn nakayama_multiplicities_match_cokernel_dimensions() {
        let m = monomial_ideal_module(f2());
        let gens = minimal_generators(&m);
        for v in m.grid().points() {
            let incoming = incoming_images(&m, &v);
            let expected = m.dim_at(&v)
                - crate::matrix::span_dim(m.field(), &incoming, m.dim_at(&v));
            assert_eq!(gens.xi.multiplicity(&v), expected);
        }
    }
}
