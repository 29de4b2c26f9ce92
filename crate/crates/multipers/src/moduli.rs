//! Brute force over small prime fields: Grassmannian point enumeration,
//! framed-family enumeration, the group `GL_<=(xi0)(F_q)`, orbit counting,
//! and the cross-ratio count behind the four-lines counterexample.
//!
//! All enumerations sit behind a hard guard of 10^7 objects and fail with a
//! guard error beyond it.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::family::FramedFamily;
use crate::field::{Field, Scalar};
use crate::grading::{block_pattern, Degree, FreeModule, Multiset};
use crate::matrix::DenseMatrix;

/// Hard ceiling on enumerated points, families, and group elements.
pub const ENUMERATION_GUARD: u128 = 10_000_000;

/// A point of the Grassmannian `G(d, m)` over `F_q`: the unique reduced
/// row echelon basis matrix of a `d`-dimensional subspace of `F_q^m`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GrassmannPoint {
    pub d: usize,
    pub m: usize,
    /// `d` rows of length `m`, in RREF with strictly increasing pivots.
    pub basis: Vec<Vec<Scalar>>,
}

/// The Gaussian binomial `[m choose d]_q` by the product formula. Saturates
/// on overflow, which only matters for inputs far past the enumeration
/// guard.
pub fn gaussian_binomial(q: u128, m: usize, d: usize) -> u128 {
    if d > m {
        return 0;
    }
    let pow = |e: usize| q.checked_pow(e as u32).unwrap_or(u128::MAX);
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..d {
        num = num.saturating_mul(pow(m - i) - 1);
        den = den.saturating_mul(pow(i + 1) - 1);
    }
    num / den
}

fn combinations(m: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(d);
    fn rec(start: usize, m: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for j in start..m {
            cur.push(j);
            rec(j + 1, m, d, cur, out);
            cur.pop();
        }
    }
    rec(0, m, d, &mut cur, &mut out);
    out
}

/// Iterates all length-`count` tuples of field elements in odometer order.
fn for_each_assignment(field: Field, count: usize, mut f: impl FnMut(&[Scalar])) {
    let elements = field.elements();
    let q = elements.len();
    let mut digits = vec![0usize; count];
    loop {
        let tuple: Vec<Scalar> = digits.iter().map(|&d| elements[d].clone()).collect();
        f(&tuple);
        let mut i = count;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < q {
                break;
            }
            digits[i] = 0;
            if i == 0 {
                return;
            }
        }
    }
}

/// Enumerates `G(d, m)` over `F_q` as canonical RREF matrices, one per pivot
/// column set, without duplicates.
pub fn grassmann_points(q: u32, d: usize, m: usize) -> Result<Vec<GrassmannPoint>> {
    let field = Field::fp(q)?;
    if d > m {
        return Ok(Vec::new());
    }
    let count = gaussian_binomial(q as u128, m, d);
    if count > ENUMERATION_GUARD {
        return Err(Error::GuardExceeded(format!(
            "G({d},{m}) over F_{q} has {count} points"
        )));
    }
    let mut out = Vec::with_capacity(count as usize);
    for pivots in combinations(m, d) {
        // Free positions: to the right of the row's pivot, off other pivots.
        let mut free_pos = Vec::new();
        for (row, &p) in pivots.iter().enumerate() {
            for col in (p + 1)..m {
                if !pivots.contains(&col) {
                    free_pos.push((row, col));
                }
            }
        }
        for_each_assignment(field, free_pos.len(), |vals| {
            let mut basis = vec![vec![field.zero(); m]; d];
            for (row, &p) in pivots.iter().enumerate() {
                basis[row][p] = field.one();
            }
            for ((row, col), v) in free_pos.iter().zip(vals) {
                basis[*row][*col] = v.clone();
            }
            out.push(GrassmannPoint { d, m, basis });
        });
    }
    debug_assert_eq!(out.len() as u128, count);
    Ok(out)
}

/// All elements of `GL_<=(xi0)` over `F_q`: invertible matrices whose
/// `Z(xi0)` blocks vanish.
pub fn gl_leq_elements(q: u32, xi0: &Multiset) -> Result<Vec<DenseMatrix>> {
    let field = Field::fp(q)?;
    let pattern = block_pattern(xi0);
    let m0 = pattern.size();
    let mut allowed = Vec::new();
    for r in 0..m0 {
        for c in 0..m0 {
            if pattern.entry_allowed(r, c) {
                allowed.push((r, c));
            }
        }
    }
    let total = (q as u128).checked_pow(allowed.len() as u32);
    match total {
        Some(t) if t <= ENUMERATION_GUARD => {}
        _ => {
            return Err(Error::GuardExceeded(format!(
                "q^{} assignments for the GL pattern",
                allowed.len()
            )))
        }
    }
    let mut out = Vec::new();
    for_each_assignment(field, allowed.len(), |vals| {
        let mut m = DenseMatrix::zero(field, m0, m0);
        for ((r, c), v) in allowed.iter().zip(vals) {
            m.set(*r, *c, v.clone());
        }
        if m.is_invertible() {
            out.push(m);
        }
    });
    Ok(out)
}

/// `|GL_<=(xi0)(F_q)|` by the closed formula: the product of the block
/// `GL_mu` orders times `q` to the number of allowed off-diagonal entries.
pub fn gl_leq_order(q: u32, xi0: &Multiset) -> u128 {
    let pattern = block_pattern(xi0);
    let q = q as u128;
    let mut order = 1u128;
    for (i, &size) in pattern.block_sizes().iter().enumerate() {
        for k in 0..size {
            order *= q.pow(size as u32) - q.pow(k as u32);
        }
        for (j, &other) in pattern.block_sizes().iter().enumerate() {
            if i != j && !pattern.zero_blocks().contains(&(i, j)) {
                order *= q.pow((size * other) as u32);
            }
        }
    }
    order
}

fn primitive_root(q: u32) -> Option<u64> {
    if q == 2 {
        return None;
    }
    let phi = (q - 1) as u64;
    let mut factors = Vec::new();
    let mut rest = phi;
    let mut p = 2u64;
    while p * p <= rest {
        if rest % p == 0 {
            factors.push(p);
            while rest % p == 0 {
                rest /= p;
            }
        }
        p += 1;
    }
    if rest > 1 {
        factors.push(rest);
    }
    let pow_mod = |mut base: u64, mut exp: u64| -> u64 {
        let m = q as u64;
        let mut acc = 1u64;
        base %= m;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            exp >>= 1;
        }
        acc
    };
    (2..q as u64).find(|&g| factors.iter().all(|&f| pow_mod(g, phi / f) != 1))
}

/// A generating set of `GL_<=(xi0)(F_q)`: the transvections `I + E_{rc}` at
/// every allowed off-diagonal entry, plus one diagonal scaling by a
/// primitive root per generator-degree block.
pub fn gl_leq_generators(q: u32, xi0: &Multiset) -> Result<Vec<DenseMatrix>> {
    let field = Field::fp(q)?;
    let pattern = block_pattern(xi0);
    let m0 = pattern.size();
    let mut gens = Vec::new();
    for r in 0..m0 {
        for c in 0..m0 {
            if r != c && pattern.entry_allowed(r, c) {
                let mut t = DenseMatrix::identity(field, m0);
                t.set(r, c, field.one());
                gens.push(t);
            }
        }
    }
    if let Some(g) = primitive_root(q) {
        for i in 0..pattern.block_sizes().len() {
            let slot = pattern.block_range(i).start;
            let mut s = DenseMatrix::identity(field, m0);
            s.set(slot, slot, Scalar::Fp(g));
            gens.push(s);
        }
    }
    Ok(gens)
}

/// All framed families over `F_q` with respect to `(xi0, xi1)`: the product
/// of the Grassmannians cut down by the three framed conditions. Condition 1
/// is built in by enumerating subspaces supported on the slots strictly
/// below each degree.
pub fn enumerate_framed_families(
    q: u32,
    xi0: &Multiset,
    xi1: &Multiset,
) -> Result<Vec<FramedFamily>> {
    let field = Field::fp(q)?;
    let free = FreeModule::new(xi0.clone());
    let m0 = free.rank();
    let degrees: Vec<Degree> = xi1.support().cloned().collect();

    let mut per_degree: Vec<Vec<Vec<Vec<Scalar>>>> = Vec::new();
    let mut product: u128 = 1;
    for w in &degrees {
        let strict: Vec<usize> = (0..m0)
            .filter(|&s| free.slot_degrees()[s].lt(w))
            .collect();
        let delta = xi1.graded_dim(w);
        if delta > strict.len() {
            return Ok(Vec::new());
        }
        let points = grassmann_points(q, delta, strict.len())?;
        product = product.saturating_mul(points.len() as u128);
        if product > ENUMERATION_GUARD {
            return Err(Error::GuardExceeded(format!(
                "framed-family product over {} degrees",
                degrees.len()
            )));
        }
        let embedded: Vec<Vec<Vec<Scalar>>> = points
            .into_iter()
            .map(|p| {
                p.basis
                    .into_iter()
                    .map(|row| {
                        let mut full = vec![field.zero(); m0];
                        for (k, &slot) in strict.iter().enumerate() {
                            full[slot] = row[k].clone();
                        }
                        full
                    })
                    .collect()
            })
            .collect();
        per_degree.push(embedded);
    }

    let mut families = Vec::new();
    let mut choice = vec![0usize; degrees.len()];
    loop {
        let mut spaces = BTreeMap::new();
        for (k, w) in degrees.iter().enumerate() {
            spaces.insert(w.clone(), per_degree[k][choice[k]].clone());
        }
        let fam = FramedFamily::new(field, xi0.clone(), xi1.clone(), spaces)?;
        if crate::family::verify_framed_family(&fam).ok() {
            families.push(fam);
        }
        // Odometer over the per-degree choices.
        let mut i = degrees.len();
        loop {
            if i == 0 {
                return Ok(families);
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < per_degree[i].len() {
                break;
            }
            choice[i] = 0;
            if i == 0 {
                return Ok(families);
            }
        }
    }
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Result of an orbit enumeration of framed families under `GL_<=`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrbitReport {
    pub total_points: usize,
    pub orbit_count: usize,
    /// Orbit size -> number of orbits of that size.
    pub orbit_sizes: BTreeMap<usize, usize>,
    /// Orbits of tuples of pairwise distinct lines; only meaningful (Some)
    /// when every subspace in the family is one-dimensional.
    pub distinct_line_orbits: Option<usize>,
}

type FamilyKey = Vec<(Degree, Vec<Vec<Scalar>>)>;

fn family_key(f: &FramedFamily) -> FamilyKey {
    f.spaces()
        .iter()
        .map(|(d, b)| (d.clone(), b.clone()))
        .collect()
}

/// Orbits of the left-multiplication action of `GL_<=(xi0)(F_q)` on the
/// framed families: union-find over the edges induced by a generating set
/// of the group, with every moved subspace re-canonicalized by RREF.
pub fn orbit_count(q: u32, xi0: &Multiset, xi1: &Multiset) -> Result<OrbitReport> {
    let families = enumerate_framed_families(q, xi0, xi1)?;
    let all_lines = xi1.support().all(|w| xi1.graded_dim(w) == 1);
    let total = families.len();
    let mut index: HashMap<FamilyKey, usize> = HashMap::with_capacity(total);
    for (i, f) in families.iter().enumerate() {
        index.insert(family_key(f), i);
    }
    let generators = gl_leq_generators(q, xi0)?;
    let mut dsu = Dsu::new(total);
    for (i, fam) in families.iter().enumerate() {
        for g in &generators {
            let moved = fam.transform(g)?;
            let j = *index
                .get(&family_key(&moved))
                .expect("the action preserves the framed conditions");
            dsu.union(i, j);
        }
    }
    let mut members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..total {
        members.entry(dsu.find(i)).or_default().push(i);
    }
    let mut orbit_sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for orbit in members.values() {
        *orbit_sizes.entry(orbit.len()).or_insert(0) += 1;
    }
    let distinct_line_orbits = all_lines.then(|| {
        members
            .values()
            .filter(|orbit| {
                let f = &families[orbit[0]];
                let spaces: Vec<&Vec<Vec<Scalar>>> = f.spaces().values().collect();
                spaces
                    .iter()
                    .enumerate()
                    .all(|(a, x)| spaces.iter().skip(a + 1).all(|y| x != y))
            })
            .count()
    });
    Ok(OrbitReport {
        total_points: total,
        orbit_count: members.len(),
        orbit_sizes,
        distinct_line_orbits,
    })
}

/// Number of `GL_2(F_q)` orbits of quadruples of pairwise distinct lines in
/// `F_q^2`, by brute force over the action graph.
pub fn cross_ratio_orbits(q: u32) -> Result<usize> {
    let lines = grassmann_points(q, 1, 2)?;
    let count = lines.len();
    if count < 4 {
        return Ok(0);
    }
    let total = (count as u128).pow(4);
    if total > ENUMERATION_GUARD {
        return Err(Error::GuardExceeded(format!(
            "{total} line quadruples over F_{q}"
        )));
    }
    let field = Field::fp(q)?;
    let line_index: HashMap<Vec<Scalar>, usize> = lines
        .iter()
        .enumerate()
        .map(|(i, p)| (p.basis[0].clone(), i))
        .collect();
    // Quadruples of pairwise distinct line indices, densely indexed.
    let mut quad_index: HashMap<[usize; 4], usize> = HashMap::new();
    let mut quads: Vec<[usize; 4]> = Vec::new();
    for a in 0..count {
        for b in 0..count {
            for c in 0..count {
                for e in 0..count {
                    let t = [a, b, c, e];
                    let distinct = (0..4).all(|i| (i + 1..4).all(|j| t[i] != t[j]));
                    if distinct {
                        quad_index.insert(t, quads.len());
                        quads.push(t);
                    }
                }
            }
        }
    }
    let full_gl = Multiset::from_coords(&[(&[0], 2)]);
    let generators = gl_leq_generators(q, &full_gl)?;
    let mut dsu = Dsu::new(quads.len());
    for (qi, quad) in quads.iter().enumerate() {
        for g in &generators {
            let mut moved = [0usize; 4];
            for (k, &li) in quad.iter().enumerate() {
                let v = g.mul_vec(&lines[li].basis[0])?;
                let canon = crate::matrix::rref_basis(field, &[v], 2);
                moved[k] = line_index[&canon[0]];
            }
            dsu.union(qi, quad_index[&moved]);
        }
    }
    let mut roots: Vec<usize> = (0..quads.len()).map(|i| dsu.find(i)).collect();
    roots.sort_unstable();
    roots.dedup();
    Ok(roots.len())
}
