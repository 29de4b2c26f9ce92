//! Multifiltered simplicial complexes and their per-grade homology.
//!
//! The text format, one simplex per line:
//!
//! ```text
//! # hollow triangle, edges one step after the vertices
//! dim 1
//! simplex 0 @ (0)
//! simplex 1 @ (0)
//! simplex 2 @ (0)
//! simplex 0 1 @ (1)
//! simplex 0 2 @ (1)
//! simplex 1 2 @ (1)
//! ```
//!
//! A simplex may carry several entry degrees separated by `|` (a nonempty
//! antichain); it is present at `u` as soon as one of them is below `u`.
//! Comments start with `#`. Faces must be present and must never enter later
//! than a coface.

use std::collections::HashMap;

use crate::error::{Error, ParseErrorKind, Result};
use crate::field::{Field, Scalar};
use crate::grading::Degree;
use crate::matrix::{greedy_completion, rref_basis, solve_in_span, DenseMatrix};
use crate::module::{GridBox, PersistenceModule};

#[derive(Clone, Debug)]
struct SimplexEntry {
    vertices: Vec<usize>,
    entries: Vec<Degree>,
}

/// A finite `n`-filtered simplicial complex with multi-critical entry sets.
#[derive(Clone, Debug)]
pub struct MultifilteredComplex {
    n: usize,
    simplices: Vec<SimplexEntry>,
    index: HashMap<Vec<usize>, usize>,
}

impl MultifilteredComplex {
    /// Validates and builds a complex from `(vertices, entry degrees)` pairs.
    /// Vertices may come unsorted; duplicates within a simplex are rejected.
    pub fn new(n: usize, simplices: Vec<(Vec<usize>, Vec<Degree>)>) -> Result<Self> {
        Self::build(n, simplices).map_err(|(idx, kind)| {
            Error::Invalid(format!("simplex #{idx}: {kind}"))
        })
    }

    fn build(
        n: usize,
        simplices: Vec<(Vec<usize>, Vec<Degree>)>,
    ) -> std::result::Result<Self, (usize, ParseErrorKind)> {
        if n == 0 {
            return Err((0, ParseErrorKind::Syntax("grading dimension must be >= 1".into())));
        }
        let mut entries = Vec::with_capacity(simplices.len());
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        for (i, (mut vertices, degrees)) in simplices.into_iter().enumerate() {
            vertices.sort_unstable();
            if vertices.is_empty() {
                return Err((i, ParseErrorKind::Syntax("empty vertex list".into())));
            }
            if vertices.windows(2).any(|w| w[0] == w[1]) {
                return Err((
                    i,
                    ParseErrorKind::Syntax(format!("repeated vertex in {vertices:?}")),
                ));
            }
            if degrees.is_empty() {
                return Err((i, ParseErrorKind::Syntax("empty entry set".into())));
            }
            for d in &degrees {
                if d.n() != n {
                    return Err((
                        i,
                        ParseErrorKind::Syntax(format!(
                            "degree {d} has {} coordinates, expected {n}",
                            d.n()
                        )),
                    ));
                }
            }
            for (a, da) in degrees.iter().enumerate() {
                for db in degrees.iter().skip(a + 1) {
                    if da.leq(db) || db.leq(da) {
                        return Err((
                            i,
                            ParseErrorKind::NonAntichain(format!("{da} and {db} are comparable")),
                        ));
                    }
                }
            }
            if index.insert(vertices.clone(), i).is_some() {
                return Err((
                    i,
                    ParseErrorKind::Syntax(format!("duplicate simplex {vertices:?}")),
                ));
            }
            entries.push(SimplexEntry {
                vertices,
                entries: degrees,
            });
        }
        // Faces present, entering no later than their cofaces.
        for i in 0..entries.len() {
            if entries[i].vertices.len() < 2 {
                continue;
            }
            for skip in 0..entries[i].vertices.len() {
                let mut face = entries[i].vertices.clone();
                face.remove(skip);
                let Some(&fi) = index.get(&face) else {
                    return Err((
                        i,
                        ParseErrorKind::MissingFace(format!(
                            "face {face:?} of {:?} is not in the complex",
                            entries[i].vertices
                        )),
                    ));
                };
                for u in &entries[i].entries {
                    if !entries[fi].entries.iter().any(|w| w.leq(u)) {
                        return Err((
                            i,
                            ParseErrorKind::Monotonicity(format!(
                                "{:?} enters at {u} before its face {face:?}",
                                entries[i].vertices
                            )),
                        ));
                    }
                }
            }
        }
        Ok(MultifilteredComplex {
            n,
            simplices: entries,
            index,
        })
    }

    /// Parses the filtration text format; every failure carries a line number.
    pub fn parse(text: &str) -> Result<Self> {
        let mut dim: Option<(usize, usize)> = None; // (n, line)
        let mut simplices: Vec<(Vec<usize>, Vec<Degree>)> = Vec::new();
        let mut lines_of: Vec<usize> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let syntax = |msg: String| Error::Parse {
                line,
                kind: ParseErrorKind::Syntax(msg),
            };
            if dim.is_none() {
                let mut it = content.split_whitespace();
                if it.next() != Some("dim") {
                    return Err(syntax("expected header `dim n`".into()));
                }
                let n: usize = it
                    .next()
                    .ok_or_else(|| syntax("missing grading dimension".into()))?
                    .parse()
                    .map_err(|_| syntax("grading dimension must be an integer".into()))?;
                if n == 0 {
                    return Err(syntax("grading dimension must be >= 1".into()));
                }
                if it.next().is_some() {
                    return Err(syntax("trailing tokens after `dim n`".into()));
                }
                dim = Some((n, line));
                continue;
            }
            let (n, _) = dim.unwrap();
            let rest = content
                .strip_prefix("simplex")
                .ok_or_else(|| syntax("expected `simplex ... @ (...)`".into()))?;
            let (verts_part, degrees_part) = rest
                .split_once('@')
                .ok_or_else(|| syntax("missing `@` separator".into()))?;
            let vertices: Vec<usize> = verts_part
                .split_whitespace()
                .map(|t| {
                    t.parse()
                        .map_err(|_| syntax(format!("bad vertex `{t}`")))
                })
                .collect::<Result<_>>()?;
            if vertices.is_empty() {
                return Err(syntax("simplex with no vertices".into()));
            }
            let mut degrees = Vec::new();
            for group in degrees_part.split('|') {
                let group = group.trim();
                let inner = group
                    .strip_prefix('(')
                    .and_then(|g| g.strip_suffix(')'))
                    .ok_or_else(|| syntax(format!("degree `{group}` is not parenthesized")))?;
                let coords: Vec<u32> = inner
                    .split_whitespace()
                    .map(|t| {
                        t.parse()
                            .map_err(|_| syntax(format!("bad coordinate `{t}`")))
                    })
                    .collect::<Result<_>>()?;
                if coords.len() != n {
                    return Err(syntax(format!(
                        "degree has {} coordinates, expected {n}",
                        coords.len()
                    )));
                }
                degrees.push(Degree::new(coords));
            }
            simplices.push((vertices, degrees));
            lines_of.push(line);
        }
        let Some((n, _)) = dim else {
            return Err(Error::Parse {
                line: text.lines().count().max(1),
                kind: ParseErrorKind::Syntax("missing `dim n` header".into()),
            });
        };
        Self::build(n, simplices).map_err(|(idx, kind)| Error::Parse {
            line: lines_of[idx],
            kind,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn vertices_of(&self, i: usize) -> &[usize] {
        &self.simplices[i].vertices
    }

    pub fn entry_set(&self, i: usize) -> &[Degree] {
        &self.simplices[i].entries
    }

    /// Componentwise join of all entry degrees; the filtration is constant
    /// beyond this degree. Zero for the empty complex.
    pub fn stabilization_bound(&self) -> Degree {
        let mut bound = Degree::zero(self.n);
        for s in &self.simplices {
            for d in &s.entries {
                bound = bound.join(d);
            }
        }
        bound
    }

    /// `true` iff simplex `i` is present at `u`.
    pub fn present_at(&self, i: usize, u: &Degree) -> bool {
        self.simplices[i].entries.iter().any(|e| e.leq(u))
    }

    /// Indices of the simplices of `X_u`, in input order.
    pub fn complex_at(&self, u: &Degree) -> Vec<usize> {
        (0..self.simplices.len())
            .filter(|&i| self.present_at(i, u))
            .collect()
    }

    /// Indices of the `k`-simplices of `X_u`, in input order.
    fn simplices_at(&self, u: &Degree, k: usize) -> Vec<usize> {
        (0..self.simplices.len())
            .filter(|&i| self.simplices[i].vertices.len() == k + 1 && self.present_at(i, u))
            .collect()
    }

    /// The boundary matrix of `X_u` from `l`-chains to `(l-1)`-chains, with
    /// alternating signs over ascending vertex order. Columns follow
    /// `simplices_at(u, l)`.
    fn boundary_matrix(&self, field: Field, u: &Degree, l: usize) -> DenseMatrix {
        let cols = self.simplices_at(u, l);
        if l == 0 {
            return DenseMatrix::zero(field, 0, cols.len());
        }
        let rows = self.simplices_at(u, l - 1);
        let row_of: HashMap<usize, usize> =
            rows.iter().enumerate().map(|(r, &s)| (s, r)).collect();
        let mut m = DenseMatrix::zero(field, rows.len(), cols.len());
        for (c, &sidx) in cols.iter().enumerate() {
            let verts = &self.simplices[sidx].vertices;
            for skip in 0..verts.len() {
                let mut face = verts.clone();
                face.remove(skip);
                let fidx = self.index[&face];
                let r = row_of[&fidx];
                let sign = if skip % 2 == 0 { 1 } else { -1 };
                m.set(r, c, field.from_i64(sign));
            }
        }
        m
    }
}

/// Cycle representatives of `H_l(X_u; F)` in the chain coordinates of
/// `l_simplices` (which lists the complex's simplex indices, in input order).
pub struct HomologyBasis {
    pub dim: usize,
    pub l_simplices: Vec<usize>,
    pub cycle_reps: Vec<Vec<Scalar>>,
    boundary_basis: Vec<Vec<Scalar>>,
}

/// Computes `H_l(X_u; F)` with canonical cycle representatives: the RREF
/// kernel basis of the boundary map, greedily completed against the image of
/// the next boundary map.
pub fn homology_at(
    complex: &MultifilteredComplex,
    u: &Degree,
    l: usize,
    field: Field,
) -> Result<HomologyBasis> {
    if u.n() != complex.n() {
        return Err(Error::DimensionMismatch(format!(
            "degree {u} in an {}-filtered complex",
            complex.n()
        )));
    }
    let l_simplices = complex.simplices_at(u, l);
    let chain_dim = l_simplices.len();
    let d_l = complex.boundary_matrix(field, u, l);
    let cycles = d_l.kernel_basis();
    let d_up = complex.boundary_matrix(field, u, l + 1);
    let boundary_cols: Vec<Vec<Scalar>> = (0..d_up.cols()).map(|j| d_up.col(j)).collect();
    let boundary_basis = rref_basis(field, &boundary_cols, chain_dim);
    let chosen = greedy_completion(field, &boundary_basis, &cycles, chain_dim);
    let cycle_reps: Vec<Vec<Scalar>> = chosen.into_iter().map(|i| cycles[i].clone()).collect();
    Ok(HomologyBasis {
        dim: cycle_reps.len(),
        l_simplices,
        cycle_reps,
        boundary_basis,
    })
}

/// Builds the degree-`l` homology persistence module of the filtration on
/// its stabilization box. Step matrices express the pushed-forward cycle
/// representatives of the source in the homology basis of the target, with
/// the target's boundary space appended for the membership solve.
pub fn build_persistence_module(
    complex: &MultifilteredComplex,
    l: usize,
    field: Field,
) -> Result<PersistenceModule> {
    let bound = complex.stabilization_bound();
    let grid = GridBox::new(bound.clone());
    let points = grid.points();
    let mut data: Vec<HomologyBasis> = Vec::with_capacity(points.len());
    for u in &points {
        data.push(homology_at(complex, u, l, field)?);
    }
    let dims: Vec<usize> = data.iter().map(|h| h.dim).collect();
    let mut steps = vec![Vec::new(); points.len()];
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
            let src = &data[ui];
            let dst = &data[ti];
            let pos_in_dst: HashMap<usize, usize> = dst
                .l_simplices
                .iter()
                .enumerate()
                .map(|(p, &s)| (s, p))
                .collect();
            let mut spanning: Vec<Vec<Scalar>> = dst.cycle_reps.clone();
            spanning.extend(dst.boundary_basis.iter().cloned());
            let mut m = DenseMatrix::zero(field, dst.dim, src.dim);
            for (col, rep) in src.cycle_reps.iter().enumerate() {
                // Reindex the cycle into the target's chain coordinates.
                let mut pushed = vec![field.zero(); dst.l_simplices.len()];
                for (p, &s) in src.l_simplices.iter().enumerate() {
                    pushed[pos_in_dst[&s]] = rep[p].clone();
                }
                let coeffs = solve_in_span(field, &spanning, &pushed)?
                    .expect("pushed cycle is a cycle of the target");
                for row in 0..dst.dim {
                    m.set(row, col, coeffs[row].clone());
                }
            }
            per_axis.push(Some(m));
        }
        steps[ui] = per_axis;
    }
    PersistenceModule::new(field, bound, dims, steps)
}
