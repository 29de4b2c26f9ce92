//! Degrees in `N^n` with the product partial order, finite multisets of
//! degrees, free graded modules, and the block pattern cut out by the
//! incomparability of generator degrees.
//!
//! A homogeneous vector of the free module over `xi` at degree `v` is stored
//! as a full length-`m0` coefficient tuple: slot `s` holds the coefficient of
//! the monomial shifting generator `s` from its degree up to `v`, and slots of
//! generators whose degree is not below `v` must be structurally zero. Under
//! this representation the coordinate embedding into `F^{m0}` is the identity
//! and shifting a vector upward does not change its coordinates.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::DenseMatrix;

/// A point of `N^n`. `Ord` is lexicographic, which is a linear extension of
/// the product order [`Degree::leq`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Degree(Vec<u32>);

impl Degree {
    /// Panics on an empty coordinate list; the ambient dimension is >= 1.
    pub fn new(coords: Vec<u32>) -> Self {
        assert!(!coords.is_empty(), "degree in N^0");
        Degree(coords)
    }

    pub fn zero(n: usize) -> Self {
        Degree::new(vec![0; n])
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    /// The product partial order: `self <= other` componentwise.
    /// Panics when the dimensions disagree; callers validate `n` at the edges.
    pub fn leq(&self, other: &Degree) -> bool {
        assert_eq!(self.n(), other.n(), "degree dimension mismatch");
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Strict order: `self ⪯ other` and `self != other`.
    pub fn lt(&self, other: &Degree) -> bool {
        self.leq(other) && self != other
    }

    pub fn join(&self, other: &Degree) -> Degree {
        assert_eq!(self.n(), other.n(), "degree dimension mismatch");
        Degree(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    /// `self + e_axis`.
    pub fn plus_unit(&self, axis: usize) -> Degree {
        let mut c = self.0.clone();
        c[axis] += 1;
        Degree(c)
    }

    /// `self - e_axis`, when the coordinate is positive.
    pub fn minus_unit(&self, axis: usize) -> Option<Degree> {
        if self.0[axis] == 0 {
            return None;
        }
        let mut c = self.0.clone();
        c[axis] -= 1;
        Some(Degree(c))
    }
}

impl std::fmt::Display for Degree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A finite multiset `xi = (V, mu)` of degrees with multiplicities >= 1,
/// indexing the generators of a free graded module.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Multiset {
    entries: BTreeMap<Degree, usize>,
}

impl Multiset {
    pub fn new() -> Self {
        Multiset::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Degree, usize)>) -> Result<Self> {
        let mut ms = Multiset::new();
        for (d, m) in pairs {
            if m == 0 {
                return Err(Error::Invalid(format!("multiplicity 0 at degree {d}")));
            }
            if let Some(first) = ms.entries.keys().next() {
                if first.n() != d.n() {
                    return Err(Error::DimensionMismatch(
                        "multiset degrees of different dimensions".into(),
                    ));
                }
            }
            *ms.entries.entry(d).or_insert(0) += m;
        }
        Ok(ms)
    }

    /// Convenience constructor from coordinate literals.
    pub fn from_coords(pairs: &[(&[u32], usize)]) -> Self {
        Self::from_pairs(
            pairs
                .iter()
                .map(|(c, m)| (Degree::new(c.to_vec()), *m)),
        )
        .expect("valid multiset literal")
    }

    pub fn insert(&mut self, d: Degree, mult: usize) {
        assert!(mult >= 1);
        *self.entries.entry(d).or_insert(0) += mult;
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of distinct degrees `|V|`.
    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    /// Total size `m0 = sum mu(v)` counted with multiplicity.
    pub fn total(&self) -> usize {
        self.entries.values().sum()
    }

    pub fn multiplicity(&self, d: &Degree) -> usize {
        self.entries.get(d).copied().unwrap_or(0)
    }

    pub fn contains_degree(&self, d: &Degree) -> bool {
        self.entries.contains_key(d)
    }

    /// Distinct degrees in lexicographic order.
    pub fn support(&self) -> impl Iterator<Item = &Degree> {
        self.entries.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Degree, usize)> {
        self.entries.iter().map(|(d, &m)| (d, m))
    }

    /// Ambient dimension, when nonempty.
    pub fn dim(&self) -> Option<usize> {
        self.entries.keys().next().map(Degree::n)
    }

    /// `self` dominates `other`: every degree of `self` is strictly above
    /// every degree of `other`. Vacuously true when `self` is empty.
    pub fn dominates(&self, other: &Multiset) -> bool {
        self.support()
            .all(|v| other.support().all(|w| w.lt(v)))
    }

    /// `dim F(xi)_v = sum of mu(w) over w ⪯ v`.
    pub fn graded_dim(&self, v: &Degree) -> usize {
        self.iter()
            .filter(|(w, _)| w.leq(v))
            .map(|(_, m)| m)
            .sum()
    }

    /// Componentwise join of the support, or `None` when empty.
    pub fn join(&self) -> Option<Degree> {
        self.support().cloned().reduce(|a, b| a.join(&b))
    }
}

/// The free graded module over a multiset, with the canonical generator
/// enumeration: degrees sorted lexicographically, multiplicity slots
/// consecutive. The enumeration is fixed for the lifetime of the value.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FreeModule {
    xi: Multiset,
    slots: Vec<Degree>,
}

impl FreeModule {
    pub fn new(xi: Multiset) -> Self {
        let mut slots = Vec::with_capacity(xi.total());
        for (d, m) in xi.iter() {
            for _ in 0..m {
                slots.push(d.clone());
            }
        }
        FreeModule { xi, slots }
    }

    pub fn xi(&self) -> &Multiset {
        &self.xi
    }

    /// `m0`, the number of generator slots.
    pub fn rank(&self) -> usize {
        self.slots.len()
    }

    pub fn slot_degrees(&self) -> &[Degree] {
        &self.slots
    }

    /// Indices of generators alive at `v` (degree ⪯ v), in slot order.
    pub fn alive(&self, v: &Degree) -> Vec<usize> {
        (0..self.slots.len())
            .filter(|&s| self.slots[s].leq(v))
            .collect()
    }

    pub fn graded_dim(&self, v: &Degree) -> usize {
        self.xi.graded_dim(v)
    }

    /// Validates that `coeffs` is a legal coordinate tuple at degree `v`:
    /// length `m0` and structurally zero on every slot not alive at `v`.
    pub fn check_vector(&self, field: Field, v: &Degree, coeffs: &[Scalar]) -> Result<()> {
        if coeffs.len() != self.rank() {
            return Err(Error::InvalidVector(format!(
                "length {} but the free module has {} slots",
                coeffs.len(),
                self.rank()
            )));
        }
        for (s, c) in coeffs.iter().enumerate() {
            if !field.owns(c) {
                return Err(Error::MixedField);
            }
            if !self.slots[s].leq(v) && !field.is_zero(c) {
                return Err(Error::InvalidVector(format!(
                    "nonzero coefficient on slot {s} (degree {}) which is not alive at {v}",
                    self.slots[s]
                )));
            }
        }
        Ok(())
    }

    /// The coordinate embedding `tau_v` into `F^{m0}`. On this representation
    /// it is the identity once the validity predicate holds.
    pub fn tau_embed(&self, field: Field, v: &Degree, coeffs: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check_vector(field, v, coeffs)?;
        Ok(coeffs.to_vec())
    }

    /// Multiplication by the monomial `x^{to-from}`: injective, and the
    /// identity on coordinate tuples. Errors when `from ⪯ to` fails or the
    /// input is not a valid vector at `from`.
    pub fn shift_vector(
        &self,
        field: Field,
        from: &Degree,
        to: &Degree,
        coeffs: &[Scalar],
    ) -> Result<Vec<Scalar>> {
        if !from.leq(to) {
            return Err(Error::Invalid(format!(
                "cannot shift from {from} to {to}: source degree is not below target"
            )));
        }
        self.check_vector(field, from, coeffs)?;
        Ok(coeffs.to_vec())
    }

    /// Projection onto the degree-`v` generator block: the coordinates of
    /// slots whose degree equals `v` exactly.
    pub fn project_onto_degree_block(&self, v: &Degree, coeffs: &[Scalar]) -> Vec<Scalar> {
        (0..self.rank())
            .filter(|&s| &self.slots[s] == v)
            .map(|s| coeffs[s].clone())
            .collect()
    }
}

/// The zero-block pattern `Z(xi0)` of graded automorphisms of `F(xi0)`:
/// block `(i, j)` (degree `v_i` rows, degree `v_j` columns) must vanish
/// exactly when `v_i` is not below `v_j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BlockPattern {
    degrees: Vec<Degree>,
    sizes: Vec<usize>,
    offsets: Vec<usize>,
    zero_blocks: BTreeSet<(usize, usize)>,
}

impl BlockPattern {
    /// Distinct generator degrees `v_1, ..., v_{s0}` in enumeration order
    /// (0-based indices).
    pub fn degrees(&self) -> &[Degree] {
        &self.degrees
    }

    pub fn block_sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Pairs `(i, j)` with `v_i` not below `v_j` (0-based).
    pub fn zero_blocks(&self) -> &BTreeSet<(usize, usize)> {
        &self.zero_blocks
    }

    /// Total matrix size `m0`.
    pub fn size(&self) -> usize {
        self.offsets.last().map_or(0, |o| o + self.sizes[self.sizes.len() - 1])
    }

    /// Slot ranges of block row `i` / block column `j`.
    pub fn block_range(&self, i: usize) -> std::ops::Range<usize> {
        self.offsets[i]..self.offsets[i] + self.sizes[i]
    }

    /// `true` iff matrix entry `(r, c)` is allowed to be nonzero.
    pub fn entry_allowed(&self, r: usize, c: usize) -> bool {
        let bi = self.block_of(r);
        let bj = self.block_of(c);
        !self.zero_blocks.contains(&(bi, bj))
    }

    fn block_of(&self, slot: usize) -> usize {
        match self.offsets.binary_search(&slot) {
            Ok(i) => i,
            Err(i) => i - 1,
        }
    }
}

/// Computes `Z(xi0)` over the canonical enumeration of distinct degrees.
pub fn block_pattern(xi0: &Multiset) -> BlockPattern {
    let degrees: Vec<Degree> = xi0.support().cloned().collect();
    let sizes: Vec<usize> = degrees.iter().map(|d| xi0.multiplicity(d)).collect();
    let mut offsets = Vec::with_capacity(sizes.len());
    let mut acc = 0;
    for s in &sizes {
        offsets.push(acc);
        acc += s;
    }
    let mut zero_blocks = BTreeSet::new();
    for (i, vi) in degrees.iter().enumerate() {
        for (j, vj) in degrees.iter().enumerate() {
            if !vi.leq(vj) {
                zero_blocks.insert((i, j));
            }
        }
    }
    BlockPattern {
        degrees,
        sizes,
        offsets,
        zero_blocks,
    }
}

/// `true` iff `m` is invertible and every `Z(xi0)` block vanishes, i.e. `m`
/// is the transformation matrix of a graded automorphism of `F(xi0)`.
pub fn is_in_gl_leq(m: &DenseMatrix, pattern: &BlockPattern) -> Result<bool> {
    let m0 = pattern.size();
    if m.rows() != m0 || m.cols() != m0 {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix against a pattern of size {m0}",
            m.rows(),
            m.cols()
        )));
    }
    let f = m.field();
    for &(i, j) in pattern.zero_blocks() {
        for r in pattern.block_range(i) {
            for c in pattern.block_range(j) {
                if !f.is_zero(m.get(r, c)) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(m.is_invertible())
}
