//! Weyl-group machinery: exact integer matrices acting on the cocharacter
//! lattice, the permutation action on the (finite) set of roots, breadth-first
//! group closure, and orbit/stabilizer computations with Schreier generators.
//!
//! Matrix entries use checked `i64` arithmetic: Weyl elements of the
//! supported ranks have tiny entries, and any overflow is reported as an
//! error rather than silently wrapped.  Enumerations refuse to grow past
//! configurable caps.
//!
//! Every enumeration takes an [`ExecMode`]: `Parallel` fans the frontier
//! expansion out over rayon (when the `parallel` feature is on), `Sequential`
//! runs single-threaded.  Results are deterministic in both modes because
//! candidate batches are merged in frontier order.

use crate::lattice::{Int, IntMatrix, IntVec, Rat, RatVec};
use crate::root_datum::RootDatum;
use crate::{Error, Result};
use num::traits::{Signed, ToPrimitive};
use std::collections::{HashMap, HashSet};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How to drive the breadth-first enumerations.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ExecMode {
    Sequential,
    /// Fan frontier expansion out over a thread pool.  Without the
    /// `parallel` feature this silently degrades to sequential execution.
    Parallel,
}

impl Default for ExecMode {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            ExecMode::Parallel
        } else {
            ExecMode::Sequential
        }
    }
}

/// Below this frontier size the parallel mode stays on one thread; the
/// batches are too small to amortize the fan-out.
#[cfg(feature = "parallel")]
const PAR_THRESHOLD: usize = 256;

/// Map `f` over `items`, parallel or not, preserving order either way.
pub(crate) fn run_map<T, R, F>(mode: ExecMode, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match mode {
        ExecMode::Sequential => items.iter().map(f).collect(),
        ExecMode::Parallel => {
            #[cfg(feature = "parallel")]
            {
                if items.len() >= PAR_THRESHOLD {
                    return items.par_iter().map(f).collect();
                }
                items.iter().map(f).collect()
            }
            #[cfg(not(feature = "parallel"))]
            {
                items.iter().map(f).collect()
            }
        }
    }
}

/// A square integer matrix acting on the cocharacter lattice `Z^n`
/// (columns are images of basis vectors; vectors act by `v -> M v`).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LatticeMatrix {
    n: usize,
    a: Vec<i64>,
}

impl LatticeMatrix {
    pub fn identity(n: usize) -> Self {
        let mut a = vec![0i64; n * n];
        for i in 0..n {
            a[i * n + i] = 1;
        }
        LatticeMatrix { n, a }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        let mut a = Vec::with_capacity(n * n);
        for row in rows {
            assert_eq!(row.len(), n, "square matrix expected");
            a.extend_from_slice(row);
        }
        LatticeMatrix { n, a }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.a[i * self.n + j]
    }

    pub fn is_identity(&self) -> bool {
        self == &LatticeMatrix::identity(self.n)
    }

    /// The simple reflection `s_i = 1 - coroot_i (x) root_i`.
    pub fn simple_reflection(datum: &RootDatum, i: usize) -> Result<LatticeMatrix> {
        let n = datum.lattice_rank();
        let coroot = datum.coroot(i);
        let root = datum.simple_root(i);
        let mut m = LatticeMatrix::identity(n);
        for k in 0..n {
            for l in 0..n {
                let sub = (&coroot[k] * &root[l])
                    .to_i64()
                    .ok_or(Error::Overflow)?;
                m.a[k * n + l] = m.a[k * n + l].checked_sub(sub).ok_or(Error::Overflow)?;
            }
        }
        Ok(m)
    }

    /// Matrix product with checked arithmetic.
    pub fn mul(&self, other: &LatticeMatrix) -> Result<LatticeMatrix> {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let mut a = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                let s = self.a[i * n + k];
                if s == 0 {
                    continue;
                }
                for j in 0..n {
                    let prod = s.checked_mul(other.a[k * n + j]).ok_or(Error::Overflow)?;
                    a[i * n + j] = a[i * n + j].checked_add(prod).ok_or(Error::Overflow)?;
                }
            }
        }
        Ok(LatticeMatrix { n, a })
    }

    /// Exact inverse (the matrix must be invertible over the integers).
    pub fn inverse(&self) -> Result<LatticeMatrix> {
        let m = self.to_int_matrix();
        let inv = crate::lattice::int_inverse(&m)
            .ok_or_else(|| Error::InvalidRootDatum("matrix is not unimodular".into()))?;
        LatticeMatrix::try_from_int_matrix(&inv)
    }

    pub fn to_int_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zero(self.n, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.set(i, j, Int::from(self.a[i * self.n + j]));
            }
        }
        m
    }

    pub fn try_from_int_matrix(m: &IntMatrix) -> Result<LatticeMatrix> {
        assert_eq!(m.rows(), m.cols(), "square matrix expected");
        let n = m.rows();
        let mut a = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                a[i * n + j] = m.get(i, j).to_i64().ok_or(Error::Overflow)?;
            }
        }
        Ok(LatticeMatrix { n, a })
    }

    /// Apply to a lattice vector.
    pub fn mul_vec_int(&self, v: &[Int]) -> IntVec {
        assert_eq!(v.len(), self.n, "dimension mismatch");
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| Int::from(self.a[i * self.n + j]) * &v[j])
                    .sum()
            })
            .collect()
    }

    /// Apply to a rational vector.
    pub fn mul_vec_rat(&self, v: &[Rat]) -> RatVec {
        assert_eq!(v.len(), self.n, "dimension mismatch");
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| Rat::from_integer(Int::from(self.a[i * self.n + j])) * &v[j])
                    .sum()
            })
            .collect()
    }

    /// Apply to a machine-integer vector with checked arithmetic.
    pub fn mul_vec_i64(&self, v: &[i64]) -> Result<Vec<i64>> {
        assert_eq!(v.len(), self.n, "dimension mismatch");
        let mut out = vec![0i64; self.n];
        for i in 0..self.n {
            let mut s = 0i64;
            for j in 0..self.n {
                let prod = self.a[i * self.n + j].checked_mul(v[j]).ok_or(Error::Overflow)?;
                s = s.checked_add(prod).ok_or(Error::Overflow)?;
            }
            out[i] = s;
        }
        Ok(out)
    }

    /// Image of a covector under the element with THIS matrix as its
    /// inverse: `(w . beta)(v) = beta(w^{-1} v)`, i.e. `beta -> beta * w^{-1}`.
    /// Pass `w^{-1}` as `self`.
    pub fn covector_through(&self, beta: &[Int]) -> IntVec {
        assert_eq!(beta.len(), self.n, "dimension mismatch");
        (0..self.n)
            .map(|l| {
                (0..self.n)
                    .map(|k| &beta[k] * Int::from(self.a[k * self.n + l]))
                    .sum()
            })
            .collect()
    }

    /// Compact hash key; errors if an entry exceeds 16 bits (far beyond any
    /// Weyl element of the supported ranks).
    pub fn key(&self) -> Result<Box<[i16]>> {
        self.a
            .iter()
            .map(|&e| i16::try_from(e).map_err(|_| Error::Overflow))
            .collect::<std::result::Result<Vec<i16>, Error>>()
            .map(Vec::into_boxed_slice)
    }
}

/// Simple reflections of a datum, in node order.
pub fn simple_reflections(datum: &RootDatum) -> Result<Vec<LatticeMatrix>> {
    (0..datum.num_simple_roots())
        .map(|i| LatticeMatrix::simple_reflection(datum, i))
        .collect()
}

/// A group of lattice matrices grown incrementally by breadth-first closure.
///
/// Generators can be added one at a time; each addition closes the group
/// again, reusing everything already enumerated.  The element list is in a
/// deterministic order for a given sequence of additions.
pub struct GroupClosure {
    n: usize,
    cap: u128,
    mode: ExecMode,
    gens: Vec<LatticeMatrix>,
    elements: Vec<LatticeMatrix>,
    seen: HashSet<Box<[i16]>>,
}

impl GroupClosure {
    pub fn new(n: usize, cap: u128, mode: ExecMode) -> Result<Self> {
        let id = LatticeMatrix::identity(n);
        let mut seen = HashSet::new();
        seen.insert(id.key()?);
        Ok(GroupClosure { n, cap, mode, gens: Vec::new(), elements: vec![id], seen })
    }

    pub fn order(&self) -> u128 {
        self.elements.len() as u128
    }

    pub fn elements(&self) -> &[LatticeMatrix] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<LatticeMatrix> {
        self.elements
    }

    /// The generators that were actually kept (each one enlarged the group
    /// when it was added); they generate the whole closure.
    pub fn generators(&self) -> &[LatticeMatrix] {
        &self.gens
    }

    pub fn contains(&self, m: &LatticeMatrix) -> Result<bool> {
        Ok(self.seen.contains(&m.key()?))
    }

    /// Add a generator and re-close.  No-op if the element is already in
    /// the group.
    pub fn add_generator(&mut self, g: LatticeMatrix) -> Result<()> {
        assert_eq!(g.dim(), self.n, "dimension mismatch");
        if self.contains(&g)? {
            return Ok(());
        }
        self.gens.push(g.clone());
        // Seed the worklist with (old elements) * g; everything older is
        // already closed under the older generators.
        let mut frontier: Vec<LatticeMatrix> = Vec::new();
        let seeds = run_map(self.mode, &self.elements, |e| e.mul(&g));
        for s in seeds {
            let s = s?;
            if self.seen.insert(s.key()?) {
                frontier.push(s);
            }
        }
        while !frontier.is_empty() {
            if self.elements.len() as u128 + frontier.len() as u128 > self.cap {
                return Err(Error::WeylCap {
                    order: self.elements.len() as u128 + frontier.len() as u128,
                    cap: self.cap,
                });
            }
            let gens = &self.gens;
            let batches = run_map(self.mode, &frontier, |e| {
                gens.iter().map(|h| e.mul(h)).collect::<Result<Vec<_>>>()
            });
            self.elements.append(&mut frontier);
            for batch in batches {
                for m in batch? {
                    if self.seen.insert(m.key()?) {
                        frontier.push(m);
                    }
                }
            }
        }
        Ok(())
    }
}

/// Enumerate all Weyl group elements as lattice matrices.
///
/// Refuses (with [`Error::WeylCap`]) when the classification formula says
/// the order exceeds `cap`, before doing any work.
pub fn enumerate_weyl(datum: &RootDatum, cap: u128, mode: ExecMode) -> Result<Vec<LatticeMatrix>> {
    let order = datum.weyl_order();
    if order > cap {
        return Err(Error::WeylCap { order, cap });
    }
    let mut closure = GroupClosure::new(datum.lattice_rank(), cap, mode)?;
    for s in simple_reflections(datum)? {
        closure.add_generator(s)?;
    }
    Ok(closure.into_elements())
}

/// Order of the Weyl group by counting the orbit of a regular vector.
///
/// This is an independent check on the classification formula: a vector
/// pairing strictly positively with every simple root has trivial
/// stabilizer, so its orbit size is the group order.
pub fn weyl_order_by_orbit(datum: &RootDatum, cap: u128, mode: ExecMode) -> Result<u128> {
    let order = datum.weyl_order();
    if order > cap {
        return Err(Error::WeylCap { order, cap });
    }
    let r = datum.num_simple_roots();
    if r == 0 {
        return Ok(1);
    }
    // Regular vector: solve <alpha_i, v> = 1 and clear denominators.
    let ones = vec![Rat::from_integer(Int::from(1)); r];
    let v = crate::lattice::solve_rational(datum.root_matrix(), &ones)
        .expect("pairing matrix has full row rank");
    let lcm: Int = v.iter().fold(Int::from(1), |acc, x| {
        num::integer::lcm(acc, x.denom().clone())
    });
    let v0: Vec<i64> = v
        .iter()
        .map(|x| {
            (x.numer() * &lcm / x.denom())
                .to_i64()
                .expect("regular vector fits machine integers")
        })
        .collect();
    for i in 0..r {
        let pairing = crate::lattice::dot(
            &datum.simple_root(i),
            &v0.iter().map(|&e| Int::from(e)).collect::<Vec<_>>(),
        );
        assert!(pairing.is_positive(), "vector not regular");
    }

    let gens = simple_reflections(datum)?;
    let mut seen: HashSet<Box<[i64]>> = HashSet::new();
    seen.insert(v0.clone().into_boxed_slice());
    let mut frontier: Vec<Vec<i64>> = vec![v0];
    let mut count: u128 = 1;
    while !frontier.is_empty() {
        let batches = run_map(mode, &frontier, |v| {
            gens.iter().map(|g| g.mul_vec_i64(v)).collect::<Result<Vec<_>>>()
        });
        let mut next = Vec::new();
        for batch in batches {
            for w in batch? {
                if !seen.contains(w.as_slice()) {
                    seen.insert(w.clone().into_boxed_slice());
                    count += 1;
                    if count > cap {
                        return Err(Error::WeylCap { order: count, cap });
                    }
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    Ok(count)
}

/// The set of all roots with the simple reflections as permutations of it.
pub struct RootAction {
    /// All root covectors, in the deterministic order of
    /// [`RootDatum::all_roots`], as machine integers.
    pub covectors: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, u16>,
    /// `gen_perms[i][rho]` is the index of `s_i(root rho)`.
    pub gen_perms: Vec<Vec<u16>>,
}

impl RootAction {
    pub fn new(datum: &RootDatum) -> Result<RootAction> {
        let roots = datum.all_roots();
        if roots.len() > u16::MAX as usize {
            return Err(Error::OrbitCap { cap: u16::MAX as usize });
        }
        let covectors: Vec<Vec<i64>> = roots
            .iter()
            .map(|root| {
                root.covector
                    .iter()
                    .map(|e| e.to_i64().ok_or(Error::Overflow))
                    .collect::<Result<Vec<i64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let mut index = HashMap::new();
        for (k, c) in covectors.iter().enumerate() {
            index.insert(c.clone(), k as u16);
        }
        let r = datum.num_simple_roots();
        let mut gen_perms = Vec::with_capacity(r);
        for i in 0..r {
            let alpha: Vec<i64> = datum
                .simple_root(i)
                .iter()
                .map(|e| e.to_i64().ok_or(Error::Overflow))
                .collect::<Result<Vec<_>>>()?;
            let coroot: Vec<i64> = datum
                .coroot(i)
                .iter()
                .map(|e| e.to_i64().ok_or(Error::Overflow))
                .collect::<Result<Vec<_>>>()?;
            let mut perm = Vec::with_capacity(covectors.len());
            for c in &covectors {
                let mut pairing = 0i64;
                for (a, b) in c.iter().zip(&coroot) {
                    pairing = pairing
                        .checked_add(a.checked_mul(*b).ok_or(Error::Overflow)?)
                        .ok_or(Error::Overflow)?;
                }
                let image: Vec<i64> = c
                    .iter()
                    .zip(&alpha)
                    .map(|(b, a)| {
                        pairing
                            .checked_mul(*a)
                            .and_then(|p| b.checked_sub(p))
                            .ok_or(Error::Overflow)
                    })
                    .collect::<Result<Vec<_>>>()?;
                let target = *index
                    .get(&image)
                    .expect("reflection permutes the root set");
                perm.push(target);
            }
            gen_perms.push(perm);
        }
        Ok(RootAction { covectors, index, gen_perms })
    }

    pub fn num_roots(&self) -> usize {
        self.covectors.len()
    }

    /// Index of a root given as a covector.
    pub fn index_of(&self, covector: &[Int]) -> Option<u16> {
        let small: Option<Vec<i64>> = covector.iter().map(|e| e.to_i64()).collect();
        small.and_then(|c| self.index.get(&c).copied())
    }

    /// Apply generator `g` to a sorted set of root indices.
    fn apply_to_set(&self, g: usize, set: &[u16]) -> Box<[u16]> {
        let perm = &self.gen_perms[g];
        let mut image: Vec<u16> = set.iter().map(|&x| perm[x as usize]).collect();
        image.sort_unstable();
        image.into_boxed_slice()
    }
}

/// Orbit of a set of roots under the Weyl group, with the BFS tree kept for
/// transversal words.
pub struct SetOrbit {
    points: Vec<Box<[u16]>>,
    ids: HashMap<Box<[u16]>, u32>,
    /// `(parent id, generator)` per point; the base point has no entry.
    parents: Vec<Option<(u32, u8)>>,
}

impl SetOrbit {
    pub fn size(&self) -> usize {
        self.points.len()
    }

    /// Generator word mapping the base point to point `id` (in application
    /// order: first generator applied first).
    fn word_to(&self, id: u32) -> Vec<u8> {
        let mut word = Vec::new();
        let mut cur = id;
        while let Some((p, g)) = self.parents[cur as usize] {
            word.push(g);
            cur = p;
        }
        word.reverse();
        word
    }
}

/// Breadth-first orbit of `base` under the root permutations.
pub fn set_orbit(
    action: &RootAction,
    base: Vec<u16>,
    orbit_cap: usize,
    mode: ExecMode,
) -> Result<SetOrbit> {
    let mut sorted = base;
    sorted.sort_unstable();
    let base: Box<[u16]> = sorted.into_boxed_slice();
    let ngens = action.gen_perms.len();
    let mut ids = HashMap::new();
    ids.insert(base.clone(), 0u32);
    let mut points = vec![base];
    let mut parents: Vec<Option<(u32, u8)>> = vec![None];
    let mut frontier: Vec<u32> = vec![0];
    while !frontier.is_empty() {
        let points_ref = &points;
        let batches = run_map(mode, &frontier, |&pid| {
            (0..ngens)
                .map(|g| action.apply_to_set(g, &points_ref[pid as usize]))
                .collect::<Vec<_>>()
        });
        let mut next = Vec::new();
        for (k, batch) in batches.into_iter().enumerate() {
            let pid = frontier[k];
            for (g, image) in batch.into_iter().enumerate() {
                if !ids.contains_key(&image) {
                    let id = points.len() as u32;
                    if points.len() >= orbit_cap {
                        return Err(Error::OrbitCap { cap: orbit_cap });
                    }
                    ids.insert(image.clone(), id);
                    points.push(image);
                    parents.push(Some((pid, g as u8)));
                    next.push(id);
                }
            }
        }
        frontier = next;
    }
    Ok(SetOrbit { points, ids, parents })
}

/// Setwise stabilizer of a set of roots, by orbit counting plus Schreier
/// generators.
///
/// `group_order` must be the order of the full group (from the
/// classification formula); the stabilizer order is `group_order / orbit`,
/// and enumeration of the stabilizer is refused when it exceeds `stab_cap`.
/// Returns the orbit size, the full element list of the stabilizer, and
/// the kept Schreier generators (which generate it).
pub fn setwise_stabilizer(
    datum: &RootDatum,
    action: &RootAction,
    base: Vec<u16>,
    group_order: u128,
    orbit_cap: usize,
    stab_cap: u128,
    mode: ExecMode,
) -> Result<(usize, Vec<LatticeMatrix>, Vec<LatticeMatrix>)> {
    let orbit = set_orbit(action, base, orbit_cap, mode)?;
    let orbit_size = orbit.size();
    assert_eq!(
        group_order % orbit_size as u128,
        0,
        "orbit size must divide the group order"
    );
    let stab_order = group_order / orbit_size as u128;
    if stab_order > stab_cap {
        return Err(Error::WeylCap { order: stab_order, cap: stab_cap });
    }

    let gens = simple_reflections(datum)?;
    let n = datum.lattice_rank();
    let mut closure = GroupClosure::new(n, stab_cap, mode)?;

    // Transversal matrices on demand: w(point) maps the base point to it.
    let word_mat = |id: u32| -> Result<LatticeMatrix> {
        let mut m = LatticeMatrix::identity(n);
        for &g in &orbit.word_to(id) {
            m = gens[g as usize].mul(&m)?;
        }
        Ok(m)
    };
    let word_mat_inv = |id: u32| -> Result<LatticeMatrix> {
        // The generators are involutions, so the inverse of s_k ... s_1 is
        // s_1 ... s_k: multiply in application order on the right.
        let mut m = LatticeMatrix::identity(n);
        for &g in &orbit.word_to(id) {
            m = m.mul(&gens[g as usize])?;
        }
        Ok(m)
    };

    'scan: for pid in 0..orbit.points.len() as u32 {
        if closure.order() == stab_order {
            break 'scan;
        }
        let point = orbit.points[pid as usize].clone();
        for g in 0..gens.len() {
            let image = action.apply_to_set(g, &point);
            let tid = orbit.ids[&image];
            if orbit.parents[tid as usize] == Some((pid, g as u8)) {
                continue; // tree edge: Schreier generator is the identity
            }
            // u_T^{-1} s_g u_S stabilizes the base point.
            let schreier = word_mat_inv(tid)?
                .mul(&gens[g])?
                .mul(&word_mat(pid)?)?;
            if !closure.contains(&schreier)? {
                closure.add_generator(schreier)?;
                if closure.order() == stab_order {
                    break 'scan;
                }
            }
        }
    }

    assert_eq!(
        closure.order(),
        stab_order,
        "Schreier generators must generate the full stabilizer"
    );
    let generators = closure.generators().to_vec();
    Ok((orbit_size, closure.into_elements(), generators))
}
