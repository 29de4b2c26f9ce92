//! Finite-grid persistence modules.
//!
//! A finitely generated `n`-graded module is represented by its restriction
//! to the box `[0, b_1] x ... x [0, b_n]`: one vector-space dimension per
//! grid point and one matrix per unit step. For modules coming from a
//! stabilizing filtration the box is the componentwise join of all entry
//! degrees, and everything beyond it is determined (the steps out of the box
//! are isomorphisms), so the restriction loses nothing.

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::grading::{Degree, FreeModule, Multiset};
use crate::matrix::{rref_basis, solve_in_span, DenseMatrix};

/// The integer box `{u : 0 ⪯ u ⪯ bound}` with lexicographic point iteration
/// (a linear extension of the product order, so iteration visits every point
/// after all points below it).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GridBox {
    bound: Degree,
    strides: Vec<usize>,
    len: usize,
}

impl GridBox {
    pub fn new(bound: Degree) -> Self {
        let extents: Vec<usize> = bound.coords().iter().map(|&c| c as usize + 1).collect();
        let mut strides = vec![1usize; extents.len()];
        for i in (0..extents.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * extents[i + 1];
        }
        let len = extents.iter().product();
        GridBox {
            bound,
            strides,
            len,
        }
    }

    pub fn bound(&self) -> &Degree {
        &self.bound
    }

    pub fn n(&self) -> usize {
        self.bound.n()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, u: &Degree) -> bool {
        u.n() == self.n() && u.leq(&self.bound)
    }

    pub fn index(&self, u: &Degree) -> usize {
        debug_assert!(self.contains(u));
        u.coords()
            .iter()
            .zip(&self.strides)
            .map(|(&c, &s)| c as usize * s)
            .sum()
    }

    /// All grid points in lexicographic order.
    pub fn points(&self) -> Vec<Degree> {
        let n = self.n();
        let mut out = Vec::with_capacity(self.len);
        let mut cur = vec![0u32; n];
        loop {
            out.push(Degree::new(cur.clone()));
            let mut axis = n;
            while axis > 0 {
                axis -= 1;
                if cur[axis] < self.bound.coords()[axis] {
                    cur[axis] += 1;
                    for c in cur.iter_mut().skip(axis + 1) {
                        *c = 0;
                    }
                    break;
                }
                if axis == 0 {
                    return out;
                }
            }
        }
    }

    /// Clamps a degree componentwise into the box.
    pub fn clamp(&self, u: &Degree) -> Degree {
        Degree::new(
            u.coords()
                .iter()
                .zip(self.bound.coords())
                .map(|(&c, &b)| c.min(b))
                .collect(),
        )
    }
}

/// A persistence module on a grid box: per-point dimensions plus unit-step
/// matrices, all over one coefficient field. Immutable once built.
#[derive(Clone, PartialEq, Debug)]
pub struct PersistenceModule {
    field: Field,
    grid: GridBox,
    dims: Vec<usize>,
    /// `steps[point][axis]`, `None` when `u + e_axis` leaves the box.
    steps: Vec<Vec<Option<DenseMatrix>>>,
}

impl PersistenceModule {
    pub fn new(
        field: Field,
        bound: Degree,
        dims: Vec<usize>,
        steps: Vec<Vec<Option<DenseMatrix>>>,
    ) -> Result<Self> {
        let grid = GridBox::new(bound);
        if dims.len() != grid.len() || steps.len() != grid.len() {
            return Err(Error::DimensionMismatch(
                "grid data does not cover the box".into(),
            ));
        }
        let n = grid.n();
        for u in grid.points() {
            let ui = grid.index(&u);
            if steps[ui].len() != n {
                return Err(Error::DimensionMismatch(
                    "one step slot per axis is required".into(),
                ));
            }
            for axis in 0..n {
                let target = u.plus_unit(axis);
                match (&steps[ui][axis], grid.contains(&target)) {
                    (Some(m), true) => {
                        if m.field() != field {
                            return Err(Error::MixedField);
                        }
                        if m.rows() != dims[grid.index(&target)] || m.cols() != dims[ui] {
                            return Err(Error::DimensionMismatch(format!(
                                "step at {u} along axis {axis} has shape {}x{}, expected {}x{}",
                                m.rows(),
                                m.cols(),
                                dims[grid.index(&target)],
                                dims[ui]
                            )));
                        }
                    }
                    (None, false) => {}
                    (Some(_), false) => {
                        return Err(Error::DimensionMismatch(format!(
                            "step at {u} along axis {axis} leaves the box"
                        )))
                    }
                    (None, true) => {
                        return Err(Error::DimensionMismatch(format!(
                            "missing step at {u} along axis {axis}"
                        )))
                    }
                }
            }
        }
        Ok(PersistenceModule {
            field,
            grid,
            dims,
            steps,
        })
    }

    pub fn zero(field: Field, n: usize) -> Self {
        let bound = Degree::zero(n);
        PersistenceModule::new(field, bound, vec![0], vec![vec![None; n]]).expect("zero module")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn n(&self) -> usize {
        self.grid.n()
    }

    pub fn grid(&self) -> &GridBox {
        &self.grid
    }

    pub fn bound(&self) -> &Degree {
        self.grid.bound()
    }

    pub fn dim_at(&self, u: &Degree) -> usize {
        self.dims[self.grid.index(u)]
    }

    pub fn step(&self, u: &Degree, axis: usize) -> Option<&DenseMatrix> {
        self.steps[self.grid.index(u)][axis].as_ref()
    }

    /// Is the module zero at every grid point?
    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// Pushes a vector at `from` to `to` along axis-by-axis composition;
    /// well-defined by commutativity.
    pub fn pushforward(&self, from: &Degree, to: &Degree, vec: &[Scalar]) -> Result<Vec<Scalar>> {
        if !from.leq(to) {
            return Err(Error::Invalid(format!(
                "pushforward from {from} to {to}: source is not below target"
            )));
        }
        if !self.grid.contains(to) {
            return Err(Error::OutsideBox(to.clone()));
        }
        let mut cur = from.clone();
        let mut v = vec.to_vec();
        for axis in 0..self.n() {
            while cur.coords()[axis] < to.coords()[axis] {
                let m = self.step(&cur, axis).expect("inside the box");
                v = m.mul_vec(&v)?;
                cur = cur.plus_unit(axis);
            }
        }
        Ok(v)
    }

    /// The composite matrix `M_from -> M_to`.
    pub fn composite(&self, from: &Degree, to: &Degree) -> Result<DenseMatrix> {
        let mut m = DenseMatrix::identity(self.field, self.dim_at(from));
        let mut cur = from.clone();
        if !from.leq(to) || !self.grid.contains(to) {
            return Err(Error::Invalid(format!(
                "composite from {from} to {to} is not defined"
            )));
        }
        for axis in 0..self.n() {
            while cur.coords()[axis] < to.coords()[axis] {
                let step = self.step(&cur, axis).expect("inside the box");
                m = step.matmul(&m)?;
                cur = cur.plus_unit(axis);
            }
        }
        Ok(m)
    }

    /// Exhaustively checks every commuting square inside the box.
    pub fn check_commutativity(&self) -> Result<()> {
        let n = self.n();
        for u in self.grid.points() {
            for i in 0..n {
                for j in (i + 1)..n {
                    let (Some(si), Some(sj)) = (self.step(&u, i), self.step(&u, j)) else {
                        continue;
                    };
                    let ui = u.plus_unit(i);
                    let uj = u.plus_unit(j);
                    if !self.grid.contains(&ui.plus_unit(j)) {
                        continue;
                    }
                    let via_i = self.step(&ui, j).expect("inside").matmul(si)?;
                    let via_j = self.step(&uj, i).expect("inside").matmul(sj)?;
                    if via_i != via_j {
                        return Err(Error::Invalid(format!(
                            "square at {u} (axes {i},{j}) does not commute"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Module of the free module `F(xi)` restricted to a box: dimensions are
    /// the graded dimensions and every step is the inclusion of alive slots.
    pub fn of_free_module(field: Field, free: &FreeModule, bound: Degree) -> Self {
        let grid = GridBox::new(bound.clone());
        let points = grid.points();
        let mut dims = vec![0usize; grid.len()];
        for u in &points {
            dims[grid.index(u)] = free.graded_dim(u);
        }
        let mut steps = vec![Vec::new(); grid.len()];
        for u in &points {
            let src = free.alive(u);
            let mut per_axis = Vec::with_capacity(grid.n());
            for axis in 0..grid.n() {
                let target = u.plus_unit(axis);
                if !grid.contains(&target) {
                    per_axis.push(None);
                    continue;
                }
                let dst = free.alive(&target);
                let mut m = DenseMatrix::zero(field, dst.len(), src.len());
                for (col, slot) in src.iter().enumerate() {
                    let row = dst.iter().position(|s| s == slot).expect("alive upward");
                    m.set(row, col, field.one());
                }
                per_axis.push(Some(m));
            }
            steps[grid.index(u)] = per_axis;
        }
        PersistenceModule::new(field, bound, dims, steps).expect("free module grid")
    }

    /// Direct sum of interval modules on the one-parameter box `[0, len]`.
    /// A `None` death means the bar never dies.
    pub fn interval_sum(field: Field, len: u32, bars: &[(u32, Option<u32>)]) -> Result<Self> {
        for &(b, d) in bars {
            if let Some(d) = d {
                if b >= d {
                    return Err(Error::Invalid(format!("bar [{b},{d}) is empty")));
                }
            }
        }
        let alive = |u: u32| -> Vec<usize> {
            bars.iter()
                .enumerate()
                .filter(|(_, &(b, d))| b <= u && d.map_or(true, |d| u < d))
                .map(|(i, _)| i)
                .collect()
        };
        let bound = Degree::new(vec![len]);
        let grid = GridBox::new(bound.clone());
        let mut dims = vec![0usize; grid.len()];
        let mut steps = vec![vec![None]; grid.len()];
        for u in 0..=len {
            let here = alive(u);
            dims[u as usize] = here.len();
            if u < len {
                let next = alive(u + 1);
                let mut m = DenseMatrix::zero(field, next.len(), here.len());
                for (col, bar) in here.iter().enumerate() {
                    if let Some(row) = next.iter().position(|b| b == bar) {
                        m.set(row, col, field.one());
                    }
                }
                steps[u as usize] = vec![Some(m)];
            }
        }
        PersistenceModule::new(field, bound, dims, steps)
    }
}

/// A graded submodule `L` of a free module, evaluated on a grid: the module
/// data plus, per grid point, the canonical RREF basis of the slice `L_v`
/// in the coordinate representation of the ambient free module.
pub struct SubmoduleOnGrid {
    pub module: PersistenceModule,
    /// Indexed by `module.grid().index(v)`; vectors of length `m0`.
    pub bases: Vec<Vec<Vec<Scalar>>>,
}

/// Evaluates the submodule of `free` generated by homogeneous `generators`
/// on the box. Each graded piece is the span of the single-monomial shifts
/// of the generators into that degree, which in coordinates is the span of
/// the generator tuples themselves.
pub fn submodule_on_grid(
    field: Field,
    free: &FreeModule,
    generators: &[(Degree, Vec<Scalar>)],
    bound: Degree,
) -> Result<SubmoduleOnGrid> {
    for (d, v) in generators {
        free.check_vector(field, d, v)?;
    }
    let m0 = free.rank();
    let grid = GridBox::new(bound.clone());
    let points = grid.points();
    let mut bases: Vec<Vec<Vec<Scalar>>> = vec![Vec::new(); grid.len()];
    let mut dims = vec![0usize; grid.len()];
    for u in &points {
        let vecs: Vec<Vec<Scalar>> = generators
            .iter()
            .filter(|(d, _)| d.leq(u))
            .map(|(_, v)| v.clone())
            .collect();
        let basis = rref_basis(field, &vecs, m0);
        dims[grid.index(u)] = basis.len();
        bases[grid.index(u)] = basis;
    }
    let mut steps = vec![Vec::new(); grid.len()];
    for u in &points {
        let ui = grid.index(u);
        let mut per_axis = Vec::with_capacity(grid.n());
        for axis in 0..grid.n() {
            let target = u.plus_unit(axis);
            if !grid.contains(&target) {
                per_axis.push(None);
                continue;
            }
            let ti = grid.index(&target);
            let mut m = DenseMatrix::zero(field, dims[ti], dims[ui]);
            for (col, vec) in bases[ui].iter().enumerate() {
                // The shift is the identity on coordinates.
                let coeffs = solve_in_span(field, &bases[ti], vec)?
                    .expect("shifted slice vector stays in the submodule");
                for (row, c) in coeffs.iter().enumerate() {
                    m.set(row, col, c.clone());
                }
            }
            per_axis.push(Some(m));
        }
        steps[ui] = per_axis;
    }
    Ok(SubmoduleOnGrid {
        module: PersistenceModule::new(field, bound, dims, steps)?,
        bases,
    })
}

/// The quotient `F(xi0)/L` on a box, where `L` is generated by the given
/// homogeneous vectors. Coset representatives are the alive generator slots
/// not absorbed into `L`, chosen greedily in slot order.
pub fn quotient_on_grid(
    field: Field,
    free: &FreeModule,
    generators: &[(Degree, Vec<Scalar>)],
    bound: Degree,
) -> Result<PersistenceModule> {
    for (d, v) in generators {
        free.check_vector(field, d, v)?;
    }
    let m0 = free.rank();
    let grid = GridBox::new(bound.clone());
    let points = grid.points();

    // Per point: the submodule slice basis and the representative slots.
    let mut slice: Vec<Vec<Vec<Scalar>>> = vec![Vec::new(); grid.len()];
    let mut reps: Vec<Vec<usize>> = vec![Vec::new(); grid.len()];
    let mut dims = vec![0usize; grid.len()];
    for u in &points {
        let ui = grid.index(u);
        let vecs: Vec<Vec<Scalar>> = generators
            .iter()
            .filter(|(d, _)| d.leq(u))
            .map(|(_, v)| v.clone())
            .collect();
        let basis = rref_basis(field, &vecs, m0);
        let mut span = basis.clone();
        let mut rank = span.len();
        let mut chosen = Vec::new();
        for slot in free.alive(u) {
            let mut e = vec![field.zero(); m0];
            e[slot] = field.one();
            span.push(e);
            let new_rank = crate::matrix::span_dim(field, &span, m0);
            if new_rank > rank {
                rank = new_rank;
                chosen.push(slot);
            } else {
                span.pop();
            }
        }
        dims[ui] = chosen.len();
        slice[ui] = basis;
        reps[ui] = chosen;
    }

    let unit = |slot: usize| -> Vec<Scalar> {
        let mut e = vec![field.zero(); m0];
        e[slot] = field.one();
        e
    };

    let mut steps = vec![Vec::new(); grid.len()];
    for u in &points {
        let ui = grid.index(u);
        let mut per_axis = Vec::with_capacity(grid.n());
        for axis in 0..grid.n() {
            let target = u.plus_unit(axis);
            if !grid.contains(&target) {
                per_axis.push(None);
                continue;
            }
            let ti = grid.index(&target);
            // Solve against [representatives | L-slice] at the target; the
            // representative coefficients are the induced quotient map.
            let mut spanning: Vec<Vec<Scalar>> = reps[ti].iter().map(|&s| unit(s)).collect();
            let rep_count = spanning.len();
            spanning.extend(slice[ti].iter().cloned());
            let mut m = DenseMatrix::zero(field, dims[ti], dims[ui]);
            for (col, &slot) in reps[ui].iter().enumerate() {
                let coeffs = solve_in_span(field, &spanning, &unit(slot))?
                    .expect("representatives and L span every alive slot");
                for row in 0..rep_count {
                    m.set(row, col, coeffs[row].clone());
                }
            }
            per_axis.push(Some(m));
        }
        steps[ui] = per_axis;
    }
    PersistenceModule::new(field, bound, dims, steps)
}

/// The default quotient box: the join of all generator-slot degrees of the
/// ambient free module and all relation degrees. The quotient is constant
/// beyond it.
pub fn default_quotient_bound(free: &FreeModule, generators: &[(Degree, Vec<Scalar>)]) -> Degree {
    let n = free
        .xi()
        .dim()
        .or_else(|| generators.first().map(|(d, _)| d.n()))
        .unwrap_or(1);
    let mut bound = Degree::zero(n);
    for d in free.slot_degrees() {
        bound = bound.join(d);
    }
    for (d, _) in generators {
        bound = bound.join(d);
    }
    bound
}

/// `F(xi0)/L` with the box defaulted per [`default_quotient_bound`].
pub fn quotient_module(
    field: Field,
    free: &FreeModule,
    generators: &[(Degree, Vec<Scalar>)],
) -> Result<PersistenceModule> {
    let bound = default_quotient_bound(free, generators);
    quotient_on_grid(field, free, generators, bound)
}

/// Builds the module of `F(xi)` itself (no relations) on the default box.
pub fn free_module_on_default_box(field: Field, xi: &Multiset) -> PersistenceModule {
    let free = FreeModule::new(xi.clone());
    let bound = xi
        .join()
        .unwrap_or_else(|| Degree::zero(xi.dim().unwrap_or(1)));
    PersistenceModule::of_free_module(field, &free, bound)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(coords: &[u32]) -> Degree {
        Degree::new(coords.to_vec())
    }

    #[test]
    fn grid_iteration_is_lexicographic_and_indexed() {
        let grid = GridBox::new(d(&[2, 1]));
        let pts = grid.points();
        assert_eq!(pts.len(), 6);
        assert_eq!(pts[0], d(&[0, 0]));
        assert_eq!(pts[1], d(&[0, 1]));
        assert_eq!(pts[2], d(&[1, 0]));
        for (i, p) in pts.iter().enumerate() {
            assert_eq!(grid.index(p), i);
        }
    }

    #[test]
    fn free_module_grid_has_identity_like_steps() {
        let field = Field::fp(2).unwrap();
        let xi = Multiset::from_coords(&[(&[1], 1), (&[2], 1)]);
        let free = FreeModule::new(xi);
        let m = PersistenceModule::of_free_module(field, &free, d(&[3]));
        assert_eq!(m.dim_at(&d(&[0])), 0);
        assert_eq!(m.dim_at(&d(&[1])), 1);
        assert_eq!(m.dim_at(&d(&[2])), 2);
        assert_eq!(m.dim_at(&d(&[3])), 2);
        let s = m.step(&d(&[2]), 0).unwrap();
        assert_eq!(s, &DenseMatrix::identity(field, 2));
        m.check_commutativity().unwrap();
    }

    #[test]
    fn interval_sum_dims_and_steps() {
        let field = Field::fp(5).unwrap();
        let m = PersistenceModule::interval_sum(field, 4, &[(1, Some(3)), (0, None)]).unwrap();
        let dims: Vec<usize> = (0..=4).map(|u| m.dim_at(&d(&[u]))).collect();
        assert_eq!(dims, vec![1, 2, 2, 1, 1]);
        // The step 2 -> 3 kills the [1,3) bar but keeps the immortal one.
        let s = m.step(&d(&[2]), 0).unwrap();
        assert_eq!(s.rank(), 1);
        assert!(PersistenceModule::interval_sum(field, 4, &[(3, Some(3))]).is_err());
    }

    #[test]
    fn quotient_of_two_shifted_lines() {
        // F(xi0)/<(x,0),(0,x)> over xi0 = {(1,1),(2,1)}: dims 1,1,0 at 1,2,3.
        let field = Field::fp(2).unwrap();
        let free = FreeModule::new(Multiset::from_coords(&[(&[1], 1), (&[2], 1)]));
        let gens = vec![
            (d(&[2]), vec![field.one(), field.zero()]),
            (d(&[3]), vec![field.zero(), field.one()]),
        ];
        let q = quotient_module(field, &free, &gens).unwrap();
        assert_eq!(q.bound(), &d(&[3]));
        let dims: Vec<usize> = (0..=3).map(|u| q.dim_at(&d(&[u]))).collect();
        assert_eq!(dims, vec![0, 1, 1, 0]);
    }

    #[test]
    fn quotient_with_no_generators_is_free() {
        let field = Field::fp(3).unwrap();
        let xi = Multiset::from_coords(&[(&[1, 0], 1), (&[0, 1], 1)]);
        let free = FreeModule::new(xi.clone());
        let q = quotient_module(field, &free, &[]).unwrap();
        let f = PersistenceModule::of_free_module(field, &free, d(&[1, 1]));
        for u in q.grid().points() {
            assert_eq!(q.dim_at(&u), f.dim_at(&u));
        }
    }

    #[test]
    fn submodule_slice_dimensions() {
        // L = <(x,0),(0,x)> inside F({(1,1),(2,1)}): dims 0,1,2 at degrees 1,2,3.
        let field = Field::fp(2).unwrap();
        let free = FreeModule::new(Multiset::from_coords(&[(&[1], 1), (&[2], 1)]));
        let gens = vec![
            (d(&[2]), vec![field.one(), field.zero()]),
            (d(&[3]), vec![field.zero(), field.one()]),
        ];
        let sub = submodule_on_grid(field, &free, &gens, d(&[3])).unwrap();
        let dims: Vec<usize> = (0..=3).map(|u| sub.module.dim_at(&d(&[u]))).collect();
        assert_eq!(dims, vec![0, 0, 1, 2]);
        sub.module.check_commutativity().unwrap();
    }

    #[test]
    fn pushforward_composes_steps() {
        let field = Field::fp(5).unwrap();
        let m = PersistenceModule::interval_sum(field, 3, &[(0, Some(2))]).unwrap();
        let v = vec![field.one()];
        assert_eq!(m.pushforward(&d(&[0]), &d(&[1]), &v).unwrap(), v);
        assert_eq!(m.pushforward(&d(&[0]), &d(&[2]), &v).unwrap(), Vec::<Scalar>::new());
        assert!(m.pushforward(&d(&[2]), &d(&[1]), &v).is_err());
    }
}
