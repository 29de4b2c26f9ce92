//! Discrete invariants: the type pair, the rank invariant, and (in one
//! parameter) the barcode, together with the two directions of the
//! barcode / rank-invariant equivalence.
//!
//! `barcode` extracts intervals by the classical column-reduction sweep over
//! the step matrices, not by inverting ranks; `barcode_from_rank` inverts the
//! rank table. The two routes are independent and cross-checked by tests.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::grading::{Degree, Multiset};
use crate::matrix::greedy_completion;
use crate::module::PersistenceModule;
use crate::presentation::minimal_presentation;

/// The rank invariant restricted to the box: for every pair `u ⪯ v` of grid
/// points, the rank of the composite step and the dimension at `u`. Values
/// outside the box are answered by clamping, which is exact for modules that
/// stabilize at their box.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RankInvariant {
    n: usize,
    bound: Degree,
    table: BTreeMap<(Degree, Degree), (usize, usize)>,
}

impl RankInvariant {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bound(&self) -> &Degree {
        &self.bound
    }

    pub fn table(&self) -> &BTreeMap<(Degree, Degree), (usize, usize)> {
        &self.table
    }

    /// `(rank(M_u -> M_v), dim M_u)`, clamping both degrees into the box.
    pub fn query(&self, u: &Degree, v: &Degree) -> (usize, usize) {
        let grid = crate::module::GridBox::new(self.bound.clone());
        let cu = grid.clamp(u);
        let cv = grid.clamp(v);
        self.table[&(cu, cv)]
    }

    pub fn dim_at(&self, u: &Degree) -> usize {
        self.query(u, u).1
    }
}

/// Computes the full rank table on the box. Composites are accumulated along
/// lexicographic sweeps, which is path-independent by commutativity.
pub fn rank_invariant(m: &PersistenceModule) -> RankInvariant {
    let grid = m.grid();
    let points = grid.points();
    let mut table = BTreeMap::new();
    for u in &points {
        // Composite matrices from u to every v above it, filled in lex order.
        let mut comps: BTreeMap<Degree, crate::matrix::DenseMatrix> = BTreeMap::new();
        comps.insert(
            u.clone(),
            crate::matrix::DenseMatrix::identity(m.field(), m.dim_at(u)),
        );
        let dim_u = m.dim_at(u);
        for v in &points {
            if !u.leq(v) {
                continue;
            }
            if v != u {
                let (axis, prev) = (0..grid.n())
                    .find_map(|a| {
                        if v.coords()[a] > u.coords()[a] {
                            v.minus_unit(a).map(|p| (a, p))
                        } else {
                            None
                        }
                    })
                    .expect("v is strictly above u");
                let step = m.step(&prev, axis).expect("inside the box");
                let comp = step.matmul(&comps[&prev]).expect("matching shapes");
                comps.insert(v.clone(), comp);
            }
            table.insert((u.clone(), v.clone()), (comps[v].rank(), dim_u));
        }
    }
    RankInvariant {
        n: m.n(),
        bound: m.bound().clone(),
        table,
    }
}

/// A bar death: finite end or immortal. Ordered with `Infinite` last.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Death {
    Finite(u32),
    Infinite,
}

/// A multiset of bars `[birth, death)` with `birth < death`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Barcode {
    bars: BTreeMap<(u32, Death), usize>,
}

impl Barcode {
    pub fn new() -> Self {
        Barcode::default()
    }

    pub fn add(&mut self, birth: u32, death: Death, count: usize) {
        if count == 0 {
            return;
        }
        if let Death::Finite(d) = death {
            assert!(birth < d, "empty bar [{birth},{d})");
        }
        *self.bars.entry((birth, death)).or_insert(0) += count;
    }

    pub fn from_bars(bars: impl IntoIterator<Item = (u32, Death)>) -> Self {
        let mut b = Barcode::new();
        for (birth, death) in bars {
            b.add(birth, death, 1);
        }
        b
    }

    /// Bars with multiplicities, sorted by (birth, death).
    pub fn iter(&self) -> impl Iterator<Item = (u32, Death, usize)> + '_ {
        self.bars.iter().map(|(&(b, d), &m)| (b, d, m))
    }

    pub fn total(&self) -> usize {
        self.bars.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bars.is_empty()
    }

    /// Number of bars containing the closed interval `[u, v]`.
    pub fn count_containing(&self, u: u32, v: u32) -> usize {
        self.iter()
            .filter(|&(b, d, _)| {
                b <= u
                    && match d {
                        Death::Finite(t) => v < t,
                        Death::Infinite => true,
                    }
            })
            .map(|(_, _, m)| m)
            .sum()
    }

    /// The multisets of birth points and of finite death points.
    pub fn endpoint_types(&self) -> (Multiset, Multiset) {
        let mut births = Multiset::new();
        let mut deaths = Multiset::new();
        for (b, d, m) in self.iter() {
            births.insert(Degree::new(vec![b]), m);
            if let Death::Finite(t) = d {
                deaths.insert(Degree::new(vec![t]), m);
            }
        }
        (births, deaths)
    }
}

/// The type pair `(xi0, xi1)`: degrees and multiplicities of the minimal
/// generators of `M` and of the minimal generators of the kernel of its
/// free hull.
pub fn type_invariant(m: &PersistenceModule) -> Result<(Multiset, Multiset)> {
    let pres = minimal_presentation(m)?;
    Ok((pres.xi0, pres.xi1))
}

/// Interval decomposition of a one-parameter grid module by the standard
/// left-to-right reduction: alive bars carry a basis of the current space;
/// at each step the canonical kernel basis of the image matrix selects, per
/// kernel vector, the youngest alive bar in its support to die. Bars still
/// alive at the end of the box are reported as immortal.
pub fn barcode(m: &PersistenceModule) -> Result<Barcode> {
    if m.n() != 1 {
        return Err(Error::NotOneParameter(m.n()));
    }
    let field = m.field();
    let len = m.bound().coords()[0];
    let at = |u: u32| Degree::new(vec![u]);

    struct Alive {
        birth: u32,
        vec: Vec<crate::field::Scalar>,
    }
    let unit = |dim: usize, i: usize| {
        let mut e = vec![field.zero(); dim];
        e[i] = field.one();
        e
    };

    let mut bars = Barcode::new();
    let mut alive: Vec<Alive> = (0..m.dim_at(&at(0)))
        .map(|i| Alive {
            birth: 0,
            vec: unit(m.dim_at(&at(0)), i),
        })
        .collect();
    for u in 0..len {
        let step = m.step(&at(u), 0).expect("inside the box");
        let dim_next = m.dim_at(&at(u + 1));
        let images: Vec<Vec<crate::field::Scalar>> = alive
            .iter()
            .map(|a| step.mul_vec(&a.vec).expect("basis vector"))
            .collect();
        let img_matrix = crate::matrix::DenseMatrix::from_cols(field, &images, dim_next)
            .expect("images share the target dimension");
        // Free columns of the image matrix are exactly the bars to kill:
        // the canonical kernel vector of free column f is supported on f and
        // earlier pivots, so f is the youngest bar in a dying combination.
        let red = img_matrix.rref();
        let pivot_set: std::collections::BTreeSet<usize> =
            red.pivot_cols.iter().copied().collect();
        let mut survivors = Vec::new();
        for (i, a) in alive.into_iter().enumerate() {
            if pivot_set.contains(&i) {
                survivors.push(Alive {
                    birth: a.birth,
                    vec: images[i].clone(),
                });
            } else {
                bars.add(a.birth, Death::Finite(u + 1), 1);
            }
        }
        // Newborns complete the surviving images to a basis of the target.
        let base: Vec<Vec<crate::field::Scalar>> =
            survivors.iter().map(|a| a.vec.clone()).collect();
        let candidates: Vec<Vec<crate::field::Scalar>> =
            (0..dim_next).map(|i| unit(dim_next, i)).collect();
        for i in greedy_completion(field, &base, &candidates, dim_next) {
            survivors.push(Alive {
                birth: u + 1,
                vec: unit(dim_next, i),
            });
        }
        alive = survivors;
    }
    for a in alive {
        bars.add(a.birth, Death::Infinite, 1);
    }
    Ok(bars)
}

/// The rank table a barcode induces on the box `[0, len]`:
/// `rank(u, v) = #bars containing [u, v]`, `dim(u) = #bars containing u`.
pub fn rank_from_barcode(bars: &Barcode, len: u32) -> RankInvariant {
    let mut table = BTreeMap::new();
    for u in 0..=len {
        let dim_u = bars.count_containing(u, u);
        for v in u..=len {
            table.insert(
                (Degree::new(vec![u]), Degree::new(vec![v])),
                (bars.count_containing(u, v), dim_u),
            );
        }
    }
    RankInvariant {
        n: 1,
        bound: Degree::new(vec![len]),
        table,
    }
}

/// Inverts a one-parameter rank table into the unique barcode realizing it.
///
/// For birth `b`, `alive(b, v) = rank(b, v) - rank(b-1, v)` counts the bars
/// born exactly at `b` still alive at `v`; successive differences of that
/// count give the deaths. Any negative intermediate count means no barcode
/// realizes the table, and the offending inequality is reported.
pub fn barcode_from_rank(rank: &RankInvariant) -> Result<Barcode> {
    if rank.n != 1 {
        return Err(Error::NotOneParameter(rank.n));
    }
    let len = rank.bound.coords()[0];
    let at = |u: u32| Degree::new(vec![u]);
    let r = |u: u32, v: u32| rank.table[&(at(u), at(v))].0;

    for u in 0..=len {
        let (ruu, dim_u) = rank.table[&(at(u), at(u))];
        if ruu != dim_u {
            return Err(Error::InconsistentRank(format!(
                "rank({u},{u}) = {ruu} differs from dim = {dim_u}"
            )));
        }
        for v in u..len {
            if r(u, v + 1) > r(u, v) {
                return Err(Error::InconsistentRank(format!(
                    "rank({u},{}) > rank({u},{v})",
                    v + 1
                )));
            }
        }
    }

    let alive = |b: u32, v: u32| -> Result<usize> {
        let total = r(b, v);
        let older = if b == 0 { 0 } else { r(b - 1, v) };
        if older > total {
            return Err(Error::InconsistentRank(format!(
                "rank({},{v}) > rank({b},{v})",
                b as i64 - 1
            )));
        }
        Ok(total - older)
    };

    let mut bars = Barcode::new();
    for b in 0..=len {
        for d in (b + 1)..=len {
            let before = alive(b, d - 1)?;
            let after = alive(b, d)?;
            if after > before {
                return Err(Error::InconsistentRank(format!(
                    "bars born at {b} alive at {d} exceed those alive at {}",
                    d - 1
                )));
            }
            bars.add(b, Death::Finite(d), before - after);
        }
        bars.add(b, Death::Infinite, alive(b, len)?);
    }
    Ok(bars)
}
