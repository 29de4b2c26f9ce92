//! Relation families and framed relation families.
//!
//! A relation family packages a type-`xi1` submodule of `F(xi0)` satisfying
//! the tensor-condition as the tuple of its graded slices at the degrees of
//! `xi1`; a framed family is its image under the coordinate embeddings into
//! `F^{m0}`, landing in a product of Grassmannians. Since vectors are stored
//! in the coordinate representation throughout, framing is canonicalization:
//! both types keep their subspaces as canonical RREF basis matrices, so two
//! families are equal iff their subspaces are.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::grading::{Degree, FreeModule, Multiset};
use crate::matrix::{greedy_completion, rref_basis, solve_in_span, span_dim, DenseMatrix};

/// Subspace data shared by both family flavours.
#[derive(Clone, PartialEq, Eq, Debug)]
struct FamilyData {
    field: Field,
    xi0: Multiset,
    xi1: Multiset,
    free: FreeModule,
    /// Keys are exactly the support of `xi1`; values are RREF bases of
    /// subspaces of `F^{m0}`.
    spaces: BTreeMap<Degree, Vec<Vec<Scalar>>>,
}

fn build_data(
    field: Field,
    xi0: Multiset,
    xi1: Multiset,
    spaces: BTreeMap<Degree, Vec<Vec<Scalar>>>,
) -> Result<FamilyData> {
    let free = FreeModule::new(xi0.clone());
    let m0 = free.rank();
    let keys: Vec<&Degree> = spaces.keys().collect();
    let support: Vec<&Degree> = xi1.support().collect();
    if keys != support {
        return Err(Error::InvalidFamily(
            "spaces must be indexed by exactly the degrees of xi1".into(),
        ));
    }
    let mut canonical = BTreeMap::new();
    for (w, basis) in spaces {
        for v in &basis {
            if v.len() != m0 {
                return Err(Error::InvalidFamily(format!(
                    "basis vector at {w} has length {}, expected {m0}",
                    v.len()
                )));
            }
            for c in v {
                if !field.owns(c) {
                    return Err(Error::MixedField);
                }
            }
        }
        if span_dim(field, &basis, m0) != basis.len() {
            return Err(Error::InvalidFamily(format!(
                "basis matrix at {w} has dependent rows"
            )));
        }
        canonical.insert(w, rref_basis(field, &basis, m0));
    }
    Ok(FamilyData {
        field,
        xi0,
        xi1,
        free,
        spaces: canonical,
    })
}

/// One failed family condition, with its witness degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyFailure {
    pub condition: usize,
    pub degree: Degree,
    pub detail: String,
}

/// Outcome of a family verification; failures are ordered by witness degree
/// (lexicographically), then by condition number.
#[derive(Clone, Debug, Default)]
pub struct FamilyReport {
    pub failures: Vec<FamilyFailure>,
}

impl FamilyReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn first_failure(&self) -> Option<&FamilyFailure> {
        self.failures.first()
    }
}

/// An `F`-relation family with respect to `(xi0, xi1)`: one subspace of the
/// graded slice `F(xi0)_w` per degree `w` of `xi1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RelationFamily {
    data: FamilyData,
}

/// A framed `F`-relation family: one point of the Grassmannian
/// `G(delta1(w), m0)` per degree `w` of `xi1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FramedFamily {
    data: FamilyData,
}

macro_rules! family_accessors {
    () => {
        pub fn field(&self) -> Field {
            self.data.field
        }

        pub fn xi0(&self) -> &Multiset {
            &self.data.xi0
        }

        pub fn xi1(&self) -> &Multiset {
            &self.data.xi1
        }

        pub fn free_module(&self) -> &FreeModule {
            &self.data.free
        }

        /// The canonical RREF basis of the subspace at `w`.
        pub fn space(&self, w: &Degree) -> &[Vec<Scalar>] {
            &self.data.spaces[w]
        }

        pub fn spaces(&self) -> &BTreeMap<Degree, Vec<Vec<Scalar>>> {
            &self.data.spaces
        }

        /// Left multiplication by a transformation matrix, re-canonicalized.
        pub fn transform(&self, g: &DenseMatrix) -> Result<Self> {
            let field = self.data.field;
            let m0 = self.data.free.rank();
            if g.rows() != m0 || g.cols() != m0 {
                return Err(Error::DimensionMismatch(format!(
                    "{}x{} matrix acting on subspaces of F^{m0}",
                    g.rows(),
                    g.cols()
                )));
            }
            let mut spaces = BTreeMap::new();
            for (w, basis) in &self.data.spaces {
                let moved: Vec<Vec<Scalar>> = basis
                    .iter()
                    .map(|v| g.mul_vec(v))
                    .collect::<Result<_>>()?;
                spaces.insert(w.clone(), rref_basis(field, &moved, m0));
            }
            Ok(Self {
                data: FamilyData {
                    spaces,
                    ..self.data.clone()
                },
            })
        }
    };
}

impl RelationFamily {
    /// Builds a family from basis matrices. Dependent rows are rejected;
    /// the five defining conditions are checked by
    /// [`verify_relation_family`], not here.
    pub fn new(
        field: Field,
        xi0: Multiset,
        xi1: Multiset,
        spaces: BTreeMap<Degree, Vec<Vec<Scalar>>>,
    ) -> Result<Self> {
        Ok(RelationFamily {
            data: build_data(field, xi0, xi1, spaces)?,
        })
    }

    family_accessors!();
}

impl FramedFamily {
    /// Builds a framed family from basis matrices; the subspace at `w` must
    /// have dimension `delta1(w) = dim F(xi1)_w` exactly.
    pub fn new(
        field: Field,
        xi0: Multiset,
        xi1: Multiset,
        spaces: BTreeMap<Degree, Vec<Vec<Scalar>>>,
    ) -> Result<Self> {
        let data = build_data(field, xi0, xi1, spaces)?;
        for (w, basis) in &data.spaces {
            let delta = data.xi1.graded_dim(w);
            if basis.len() != delta {
                return Err(Error::InvalidFamily(format!(
                    "subspace at {w} has dimension {}, expected delta1 = {delta}",
                    basis.len()
                )));
            }
        }
        Ok(FramedFamily { data })
    }

    family_accessors!();
}

/// Degrees of `xi1` strictly below `w`.
fn lower_degrees<'a>(xi1: &'a Multiset, w: &'a Degree) -> Vec<&'a Degree> {
    xi1.support().filter(|v| (*v).lt(w)).collect()
}

/// Checks the five relation-family conditions, degree by degree in
/// lexicographic order: (1) subspace of the graded slice, (2) dimension
/// `delta1(w)`, (3) shift-nesting into larger degrees, (4) zero projection
/// onto coinciding generator blocks, (5) the quotient by the incoming
/// shifts has dimension `mu1(w)`.
pub fn verify_relation_family(fam: &RelationFamily) -> FamilyReport {
    let field = fam.field();
    let free = fam.free_module();
    let m0 = free.rank();
    let mut failures = Vec::new();
    for (w, basis) in fam.spaces() {
        // 1: the vectors must be legal coordinates at w.
        for v in basis {
            if let Err(e) = free.check_vector(field, w, v) {
                failures.push(FamilyFailure {
                    condition: 1,
                    degree: w.clone(),
                    detail: e.to_string(),
                });
                break;
            }
        }
        // 2: dim L_w = delta1(w).
        let delta = fam.xi1().graded_dim(w);
        if basis.len() != delta {
            failures.push(FamilyFailure {
                condition: 2,
                degree: w.clone(),
                detail: format!("dim L_w = {}, delta1(w) = {delta}", basis.len()),
            });
        }
        // 3: x^{w-v} L_v inside L_w (the shift is the identity on coordinates).
        for v in lower_degrees(fam.xi1(), w) {
            let nested = fam.space(v).iter().all(|x| {
                solve_in_span(field, basis, x)
                    .map(|r| r.is_some())
                    .unwrap_or(false)
            });
            if !nested {
                failures.push(FamilyFailure {
                    condition: 3,
                    degree: w.clone(),
                    detail: format!("shift of L_{v} is not contained in L_{w}"),
                });
                break;
            }
        }
        // 4: projection onto the degree-w generator block vanishes.
        if fam.xi0().contains_degree(w) {
            let dirty = basis.iter().any(|x| {
                free.project_onto_degree_block(w, x)
                    .iter()
                    .any(|c| !field.is_zero(c))
            });
            if dirty {
                failures.push(FamilyFailure {
                    condition: 4,
                    degree: w.clone(),
                    detail: "projection onto the coinciding generator block is nonzero".into(),
                });
            }
        }
        // 5: dim(L_w / sum of incoming shifts) = mu1(w).
        let incoming: Vec<Vec<Scalar>> = lower_degrees(fam.xi1(), w)
            .iter()
            .flat_map(|v| fam.space(v).iter().cloned())
            .collect();
        let quotient_dim = basis.len().saturating_sub(span_dim(field, &incoming, m0));
        let mu = fam.xi1().multiplicity(w);
        if quotient_dim != mu {
            failures.push(FamilyFailure {
                condition: 5,
                degree: w.clone(),
                detail: format!("quotient dimension {quotient_dim}, mu1(w) = {mu}"),
            });
        }
    }
    FamilyReport { failures }
}

/// Checks the three framed-family conditions, degree by degree: (1) zero
/// projection onto every generator block of a degree not strictly below `w`,
/// (2) nesting, (3) quotient dimension `mu1(w)`.
pub fn verify_framed_family(fam: &FramedFamily) -> FamilyReport {
    let field = fam.field();
    let free = fam.free_module();
    let m0 = free.rank();
    let mut failures = Vec::new();
    for (w, basis) in fam.spaces() {
        // 1: support only on slots of degree strictly below w.
        let dirty = basis.iter().any(|x| {
            (0..m0).any(|slot| {
                !free.slot_degrees()[slot].lt(w) && !field.is_zero(&x[slot])
            })
        });
        if dirty {
            failures.push(FamilyFailure {
                condition: 1,
                degree: w.clone(),
                detail: "projection onto a generator block not strictly below w is nonzero"
                    .into(),
            });
        }
        // 2: L_v inside L_w for v strictly below w.
        for v in lower_degrees(fam.xi1(), w) {
            let nested = fam.space(v).iter().all(|x| {
                solve_in_span(field, basis, x)
                    .map(|r| r.is_some())
                    .unwrap_or(false)
            });
            if !nested {
                failures.push(FamilyFailure {
                    condition: 2,
                    degree: w.clone(),
                    detail: format!("L_{v} is not contained in L_{w}"),
                });
                break;
            }
        }
        // 3: quotient dimension mu1(w).
        let incoming: Vec<Vec<Scalar>> = lower_degrees(fam.xi1(), w)
            .iter()
            .flat_map(|v| fam.space(v).iter().cloned())
            .collect();
        let quotient_dim = basis.len().saturating_sub(span_dim(field, &incoming, m0));
        let mu = fam.xi1().multiplicity(w);
        if quotient_dim != mu {
            failures.push(FamilyFailure {
                condition: 3,
                degree: w.clone(),
                detail: format!("quotient dimension {quotient_dim}, mu1(w) = {mu}"),
            });
        }
    }
    FamilyReport { failures }
}

fn require_valid(report: &FamilyReport) -> Result<()> {
    match report.first_failure() {
        None => Ok(()),
        Some(f) => Err(Error::InvalidFamily(format!(
            "condition {} fails at {}: {}",
            f.condition, f.degree, f.detail
        ))),
    }
}

/// The coordinate embedding of a valid relation family: subspace data is
/// unchanged (it is already stored in coordinates), reinterpreted as a
/// point of the product of Grassmannians.
pub fn frame_family(fam: &RelationFamily) -> Result<FramedFamily> {
    require_valid(&verify_relation_family(fam))?;
    FramedFamily::new(
        fam.field(),
        fam.xi0().clone(),
        fam.xi1().clone(),
        fam.spaces().clone(),
    )
}

/// The inverse of [`frame_family`] on valid framed families.
pub fn unframe_family(fam: &FramedFamily) -> Result<RelationFamily> {
    require_valid(&verify_framed_family(fam))?;
    RelationFamily::new(
        fam.field(),
        fam.xi0().clone(),
        fam.xi1().clone(),
        fam.spaces().clone(),
    )
}

/// A minimal homogeneous generating set of the submodule spanned by a valid
/// relation family: scanning degrees upward, each `L_w` contributes the
/// basis vectors that enlarge the span of the incoming shifts (exactly
/// `mu1(w)` of them).
pub fn submodule_from_family(fam: &RelationFamily) -> Result<Vec<(Degree, Vec<Scalar>)>> {
    require_valid(&verify_relation_family(fam))?;
    let field = fam.field();
    let m0 = fam.free_module().rank();
    let mut generators = Vec::new();
    for (w, basis) in fam.spaces() {
        let incoming: Vec<Vec<Scalar>> = lower_degrees(fam.xi1(), w)
            .iter()
            .flat_map(|v| fam.space(v).iter().cloned())
            .collect();
        let chosen = greedy_completion(field, &incoming, basis, m0);
        debug_assert_eq!(chosen.len(), fam.xi1().multiplicity(w));
        for i in chosen {
            generators.push((w.clone(), basis[i].clone()));
        }
    }
    Ok(generators)
}

/// The slices of a homogeneous submodule of `F(xi0)` at the degrees of its
/// type: the relation family of a submodule given by generators whose type
/// is `xi1`.
pub fn family_from_generators(
    field: Field,
    xi0: &Multiset,
    xi1: &Multiset,
    generators: &[(Degree, Vec<Scalar>)],
) -> Result<RelationFamily> {
    let free = FreeModule::new(xi0.clone());
    let m0 = free.rank();
    let mut spaces = BTreeMap::new();
    for w in xi1.support() {
        let slice: Vec<Vec<Scalar>> = generators
            .iter()
            .filter(|(d, _)| d.leq(w))
            .map(|(_, v)| v.clone())
            .collect();
        spaces.insert(w.clone(), rref_basis(field, &slice, m0));
    }
    RelationFamily::new(field, xi0.clone(), xi1.clone(), spaces)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(coords: &[u32]) -> Degree {
        Degree::new(coords.to_vec())
    }

    fn f2() -> Field {
        Field::fp(2).unwrap()
    }

    fn unit(field: Field, dim: usize, i: usize) -> Vec<Scalar> {
        let mut e = vec![field.zero(); dim];
        e[i] = field.one();
        e
    }

    /// The worked one-parameter family: xi0 with degrees 1,1,2,3,3 and
    /// xi1 with degrees 2,3,4,4; L_2 = <e1>, L_3 = <e1,e2>, L_4 = <e1..e4>.
    fn worked_family(field: Field) -> RelationFamily {
        let xi0 = Multiset::from_coords(&[(&[1], 2), (&[2], 1), (&[3], 2)]);
        let xi1 = Multiset::from_coords(&[(&[2], 1), (&[3], 1), (&[4], 2)]);
        let mut spaces = BTreeMap::new();
        spaces.insert(d(&[2]), vec![unit(field, 5, 0)]);
        spaces.insert(d(&[3]), vec![unit(field, 5, 0), unit(field, 5, 1)]);
        spaces.insert(
            d(&[4]),
            (0..4).map(|i| unit(field, 5, i)).collect(),
        );
        RelationFamily::new(field, xi0, xi1, spaces).unwrap()
    }

    /// The counterexample shape: two generators at the origin, four lines.
    fn counterexample_family(field: Field, lines: [[i64; 2]; 4]) -> RelationFamily {
        let xi0 = Multiset::from_coords(&[(&[0, 0], 2)]);
        let xi1 = Multiset::from_coords(&[
            (&[3, 0], 1),
            (&[2, 1], 1),
            (&[1, 2], 1),
            (&[0, 3], 1),
        ]);
        let degs = [d(&[0, 3]), d(&[1, 2]), d(&[2, 1]), d(&[3, 0])];
        let mut spaces = BTreeMap::new();
        for (deg, line) in degs.iter().zip(lines) {
            spaces.insert(
                deg.clone(),
                vec![vec![field.from_i64(line[0]), field.from_i64(line[1])]],
            );
        }
        RelationFamily::new(field, xi0, xi1, spaces).unwrap()
    }

    #[test]
    fn worked_family_is_valid() {
        let report = verify_relation_family(&worked_family(f2()));
        assert!(report.ok(), "{:?}", report.failures);
    }

    #[test]
    fn breaking_the_projection_reports_condition_4() {
        // Replace L_2 by the degree-2 slot line: condition 4 fails at degree
        // 2 before the nesting failure at degree 3 is reached.
        let field = f2();
        let fam = worked_family(field);
        let mut spaces = fam.spaces().clone();
        spaces.insert(d(&[2]), vec![unit(field, 5, 2)]);
        let broken =
            RelationFamily::new(field, fam.xi0().clone(), fam.xi1().clone(), spaces).unwrap();
        let report = verify_relation_family(&broken);
        assert!(!report.ok());
        let first = report.first_failure().unwrap();
        assert_eq!(first.condition, 4);
        assert_eq!(first.degree, d(&[2]));
    }

    #[test]
    fn counterexample_family_is_valid_with_trivial_conditions() {
        let fam = counterexample_family(f2(), [[1, 0], [1, 0], [1, 0], [1, 0]]);
        assert!(verify_relation_family(&fam).ok());
        let framed = frame_family(&fam).unwrap();
        assert!(verify_framed_family(&framed).ok());
    }

    #[test]
    fn dependent_rows_are_rejected_before_checks() {
        let field = f2();
        let xi0 = Multiset::from_coords(&[(&[0], 2)]);
        let xi1 = Multiset::from_coords(&[(&[1], 1)]);
        let mut spaces = BTreeMap::new();
        spaces.insert(d(&[1]), vec![unit(field, 2, 0), unit(field, 2, 0)]);
        assert!(matches!(
            RelationFamily::new(field, xi0, xi1, spaces),
            Err(Error::InvalidFamily(_))
        ));
    }

    #[test]
    fn framed_family_rejects_wrong_dimension() {
        let field = f2();
        let xi0 = Multiset::from_coords(&[(&[0, 0], 2)]);
        let xi1 = Multiset::from_coords(&[(&[1, 1], 1)]);
        let mut spaces = BTreeMap::new();
        spaces.insert(d(&[1, 1]), vec![unit(field, 2, 0), unit(field, 2, 1)]);
        assert!(matches!(
            FramedFamily::new(field, xi0, xi1, spaces),
            Err(Error::InvalidFamily(_))
        ));
    }

    #[test]
    fn frame_of_worked_family_is_the_identity_on_coordinates() {
        let fam = worked_family(f2());
        let framed = frame_family(&fam).unwrap();
        assert_eq!(framed.spaces(), fam.spaces());
        assert!(verify_framed_family(&framed).ok());
        let back = unframe_family(&framed).unwrap();
        assert_eq!(back, fam);
    }

    #[test]
    fn framed_nesting_violation_is_condition_2() {
        let field = f2();
        let xi0 = Multiset::from_coords(&[(&[0], 3)]);
        let xi1 = Multiset::from_coords(&[(&[1], 1), (&[2], 1)]);
        let mut spaces = BTreeMap::new();
        spaces.insert(d(&[1]), vec![unit(field, 3, 0)]);
        spaces.insert(d(&[2]), vec![unit(field, 3, 1), unit(field, 3, 2)]);
        // Dimensions are right, but L_1 = <e1> is not inside L_2 = <e2,e3>.
        let fam = FramedFamily::new(field, xi0, xi1, spaces).unwrap();
        let report = verify_framed_family(&fam);
        let first = report.first_failure().unwrap();
        assert_eq!(first.condition, 2);
        assert_eq!(first.degree, d(&[2]));
    }

    #[test]
    fn submodule_from_worked_family_has_type_xi1() {
        let fam = worked_family(f2());
        let gens = submodule_from_family(&fam).unwrap();
        let by_degree = Multiset::from_pairs(gens.iter().map(|(d, _)| (d.clone(), 1))).unwrap();
        assert_eq!(&by_degree, fam.xi1());
    }

    #[test]
    fn staircase_family_yields_the_monomial_generators() {
        // All four spaces are the first coordinate line: the generator list
        // is one first-slot vector per staircase degree.
        let field = f2();
        let fam = counterexample_family(field, [[1, 0], [1, 0], [1, 0], [1, 0]]);
        let gens = submodule_from_family(&fam).unwrap();
        assert_eq!(gens.len(), 4);
        for (deg, vec) in &gens {
            assert!(fam.xi1().contains_degree(deg));
            assert_eq!(vec, &vec![field.one(), field.zero()]);
        }
    }

    #[test]
    fn empty_family_yields_zero_submodule() {
        let field = f2();
        let xi0 = Multiset::from_coords(&[(&[0], 1)]);
        let fam =
            RelationFamily::new(field, xi0, Multiset::new(), BTreeMap::new()).unwrap();
        assert!(verify_relation_family(&fam).ok());
        assert!(submodule_from_family(&fam).unwrap().is_empty());
    }

    #[test]
    fn colliding_shifts_fail_condition_2() {
        // L = <(x,0),(y,0),(0,xy)> inside A2^2 satisfies the tensor-condition
        // and has type {(1,0),(0,1),(1,1)}, but its slice at (1,1) has
        // dimension 2 while delta1((1,1)) = 3: the shifts of the two lower
        // generators collide at the join. Its slice tuple is therefore NOT a
        // relation family, and condition 2 must flag it.
        let field = f2();
        let xi0 = Multiset::from_coords(&[(&[0, 0], 2)]);
        let free = crate::grading::FreeModule::new(xi0.clone());
        let gens = vec![
            (d(&[1, 0]), vec![field.one(), field.zero()]),
            (d(&[0, 1]), vec![field.one(), field.zero()]),
            (d(&[1, 1]), vec![field.zero(), field.one()]),
        ];
        assert!(crate::presentation::tensor_condition(&gens, &xi0).unwrap());
        let sub =
            crate::module::submodule_on_grid(field, &free, &gens, d(&[2, 2])).unwrap();
        assert_eq!(sub.module.dim_at(&d(&[1, 1])), 2);
        let xi1 = crate::presentation::minimal_generators(&sub.module).xi;
        assert_eq!(
            xi1,
            Multiset::from_coords(&[(&[1, 0], 1), (&[0, 1], 1), (&[1, 1], 1)])
        );
        // Both routes agree on the type: the kernel of the quotient's free
        // hull is L again.
        let q = crate::module::quotient_module(field, &free, &gens).unwrap();
        let pres = crate::presentation::minimal_presentation(&q).unwrap();
        assert_eq!(pres.xi0, xi0);
        assert_eq!(pres.xi1, xi1);

        let fam = family_from_generators(field, &xi0, &xi1, &gens).unwrap();
        let report = verify_relation_family(&fam);
        let first = report.first_failure().unwrap();
        assert_eq!(first.condition, 2);
        assert_eq!(first.degree, d(&[1, 1]));
    }

    #[test]
    fn transform_by_gl_matrix_preserves_validity() {
        let field = Field::fp(3).unwrap();
        let fam = counterexample_family(field, [[1, 0], [0, 1], [1, 1], [1, 2]]);
        let g = DenseMatrix::from_i64_rows(field, &[&[1, 1], &[2, 1]]);
        assert!(g.is_invertible());
        let moved = frame_family(&fam).unwrap().transform(&g).unwrap();
        assert!(verify_framed_family(&moved).ok());
    }
}
