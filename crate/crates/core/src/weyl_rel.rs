//! The relative Weyl group of a Levi and its Coxeter-type identification.
//!
//! For a standard parabolic with Levi node set `J`, the relative Weyl group
//! is realized concretely as the setwise stabilizer of the Levi's simple
//! roots inside the full Weyl group; it is a complement to the Levi's own
//! Weyl group inside the normalizer.  The group acts on the free part of
//! the degree quotient, and on that lattice it is (for the reductions
//! produced here) a faithful reflection group; its type is identified from
//! the reflection data.
//!
//! On the B/C naming: `W(B_k)` and `W(C_k)` are the same Coxeter group, so
//! the letter is a convention about the crystallographic realization, not
//! an invariant of the group -- indeed the two half-spin degree classes of
//! an even orthogonal datum are exchanged by the fork-swapping automorphism
//! and therefore have isomorphic relative Weyl actions.  The rule used here
//! is canonical in the action on the degree lattice: among the reflection
//! coroots, the orthogonal-frame class (the class of size `k`) is compared
//! to the other class under the averaged invariant form; a strictly shorter
//! frame gives the letter C, a strictly longer one the letter B.  Rank two
//! is genuinely self-dual and is reported as C.

use crate::lattice::{int_inverse, smith_normal_form, IntMatrix, IntVec};
use crate::parabolic::{w_fixes_minimal_degree, MinimalReduction};
use crate::root_datum::RootDatum;
use crate::slope::Parabolic;
use crate::weyl::{setwise_stabilizer, ExecMode, GroupClosure, LatticeMatrix, RootAction};
use crate::{Error, Result};
use num::traits::Zero;
use std::collections::{BTreeMap, HashSet};

/// Default ceiling for set-orbit enumeration.
pub const DEFAULT_ORBIT_CAP: usize = 1_000_000;
/// Default ceiling for group enumeration (stabilizers and closures).
pub const DEFAULT_GROUP_CAP: u128 = 10_000_000;

/// One irreducible factor of the identified reflection group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterComponent {
    pub family: char,
    pub rank: usize,
    pub order: u128,
    pub reflections: usize,
}

impl CoxeterComponent {
    pub fn label(&self) -> String {
        format!("{}{}", self.family, self.rank)
    }
}

/// The identified type of the relative Weyl group acting on the free part
/// of the degree quotient.
#[derive(Clone, Debug)]
pub struct CoxeterId {
    /// Irreducible factors, sorted by letter then rank.
    pub components: Vec<CoxeterComponent>,
    /// Product label such as `"A1 x C3"`; `"1"` for the trivial group.
    pub label: String,
    /// Order of the image of the group in its action on the free quotient.
    pub image_order: u128,
    /// Whether the action on the free quotient is faithful.
    pub faithful: bool,
    /// Whether the image is generated by its reflections (the identified
    /// components then account for the whole group).
    pub generated_by_reflections: bool,
}

/// The relative Weyl group of the Levi of a parabolic.
#[derive(Clone, Debug)]
pub struct RelativeWeylGroup {
    pub parabolic: Parabolic,
    /// Order of the group (= index of the set orbit in the Weyl group).
    pub order: u128,
    /// Size of the Weyl orbit of the Levi's simple-root set.
    pub orbit_size: usize,
    /// The elements, as matrices on the cocharacter lattice.
    pub elements: Vec<LatticeMatrix>,
    /// A generating subset of `elements` (kept Schreier generators).
    pub generators: Vec<LatticeMatrix>,
    pub coxeter: CoxeterId,
}

fn trivial_coxeter() -> CoxeterId {
    CoxeterId {
        components: vec![],
        label: "1".to_string(),
        image_order: 1,
        faithful: true,
        generated_by_reflections: true,
    }
}

/// Compute the relative Weyl group of the Levi with node set `p`:
/// enumerate the Weyl orbit of the set of Levi simple roots, extract the
/// setwise stabilizer, and identify its action on the free degree quotient.
pub fn relative_weyl(
    datum: &RootDatum,
    p: &Parabolic,
    orbit_cap: usize,
    group_cap: u128,
    mode: ExecMode,
) -> Result<RelativeWeylGroup> {
    let n = datum.lattice_rank();
    if p.is_full(datum) {
        // The normalizer of the full group is itself: trivial quotient.
        return Ok(RelativeWeylGroup {
            parabolic: p.clone(),
            order: 1,
            orbit_size: 1,
            elements: vec![LatticeMatrix::identity(n)],
            generators: Vec::new(),
            coxeter: trivial_coxeter(),
        });
    }
    let action = RootAction::new(datum)?;
    let base: Vec<u16> = p
        .nodes()
        .map(|i| {
            action
                .index_of(&datum.simple_root(i))
                .expect("simple roots are roots")
        })
        .collect();
    let group_order = datum.weyl_order();
    let (orbit_size, elements, generators) =
        setwise_stabilizer(datum, &action, base, group_order, orbit_cap, group_cap, mode)?;
    let order = group_order / orbit_size as u128;
    let coxeter = identify_coxeter_type(datum, p, &elements, group_cap, mode)?;
    Ok(RelativeWeylGroup { parabolic: p.clone(), order, orbit_size, elements, generators, coxeter })
}

/// Projection onto the free part of the degree quotient, set up once per
/// parabolic (a Smith basis of the Levi coroot span) and applied to group
/// elements with machine integers so that large stabilizers stream fast.
pub struct QuotientMap {
    n: usize,
    rank: usize,
    free: usize,
    u: LatticeMatrix,
    u_inv: LatticeMatrix,
}

impl QuotientMap {
    pub fn new(datum: &RootDatum, p: &Parabolic) -> Result<Self> {
        let n = datum.lattice_rank();
        let cols: Vec<IntVec> = p.nodes().map(|i| datum.coroot(i)).collect();
        let rel = IntMatrix::from_cols(n, &cols);
        let snf = smith_normal_form(&rel);
        assert_eq!(snf.rank, p.len(), "Levi coroots must be independent");
        let u = LatticeMatrix::try_from_int_matrix(&snf.u)?;
        let u_inv_m = int_inverse(&snf.u).expect("Smith transform is unimodular");
        let u_inv = LatticeMatrix::try_from_int_matrix(&u_inv_m)?;
        Ok(QuotientMap { n, rank: snf.rank, free: n - snf.rank, u, u_inv })
    }

    pub fn free_rank(&self) -> usize {
        self.free
    }

    /// The matrix induced by `g` on the free quotient coordinates.
    pub fn apply(&self, g: &LatticeMatrix) -> Result<LatticeMatrix> {
        let m = self.u.mul(g)?.mul(&self.u_inv)?;
        // The coroot span maps to the leading coordinates, so the block
        // under the diagonal must vanish for any element preserving it.
        for i in self.rank..self.n {
            for j in 0..self.rank {
                assert_eq!(
                    m.get(i, j),
                    0,
                    "element does not preserve the Levi coroot span"
                );
            }
        }
        let rows: Vec<Vec<i64>> = (self.rank..self.n)
            .map(|i| (self.rank..self.n).map(|j| m.get(i, j)).collect())
            .collect();
        Ok(LatticeMatrix::from_rows(&rows))
    }
}

/// The matrices induced on the free part of the degree quotient by
/// lattice automorphisms preserving the span of the Levi coroots.
/// Returns the free rank together with one matrix per input element.
pub fn quotient_action(
    datum: &RootDatum,
    p: &Parabolic,
    elements: &[LatticeMatrix],
) -> Result<(usize, Vec<LatticeMatrix>)> {
    let q = QuotientMap::new(datum, p)?;
    let out: Vec<LatticeMatrix> =
        elements.iter().map(|g| q.apply(g)).collect::<Result<_>>()?;
    Ok((q.free_rank(), out))
}

/// Does the group act faithfully on the free degree quotient?
pub fn acts_faithfully_on_quotient(
    datum: &RootDatum,
    p: &Parabolic,
    elements: &[LatticeMatrix],
) -> Result<bool> {
    let q = QuotientMap::new(datum, p)?;
    let mut seen: HashSet<Box<[i16]>> = HashSet::with_capacity(elements.len());
    for g in elements {
        seen.insert(q.apply(g)?.key()?);
    }
    Ok(seen.len() == elements.len())
}

/// Does every element of the relative Weyl group fix the distinguished
/// degree class of the reduction?  The elements fixing the class form a
/// subgroup, so testing the kept generators decides the whole group; the
/// identity-only case has no generators and passes vacuously.
pub fn degree_invariance_condition(
    datum: &RootDatum,
    reduction: &MinimalReduction,
    rw: &RelativeWeylGroup,
) -> bool {
    rw.generators.iter().all(|w| w_fixes_minimal_degree(datum, reduction, w))
}

/// Order of the Weyl group of one irreducible type, by the classification.
fn type_order(family: char, rank: usize) -> u128 {
    let factorial = |k: usize| -> u128 { (1..=k as u128).product() };
    match family {
        'A' => factorial(rank + 1),
        'B' | 'C' => (1u128 << rank) * factorial(rank),
        'D' => (1u128 << (rank - 1)) * factorial(rank),
        'E' => match rank {
            6 => 51_840,
            7 => 2_903_040,
            _ => 696_729_600,
        },
        'F' => 1_152,
        'G' => 12,
        _ => unreachable!("unknown family letter"),
    }
}

/// Number of reflections of one irreducible type (= number of positive
/// roots of the corresponding system).
fn type_reflections(family: char, rank: usize) -> usize {
    match family {
        'A' => rank * (rank + 1) / 2,
        'B' | 'C' => rank * rank,
        'D' => rank * (rank - 1),
        'E' => match rank {
            6 => 36,
            7 => 63,
            _ => 120,
        },
        'F' => 24,
        'G' => 6,
        _ => unreachable!("unknown family letter"),
    }
}

/// Rank of an integer matrix given row-major, by fraction-free Gaussian
/// elimination over `i128` (exact; entries stay minor-sized).
fn rank_i64(rows: usize, cols: usize, data: &[i64]) -> usize {
    let mut a: Vec<i128> = data.iter().map(|&e| e as i128).collect();
    let mut rank = 0usize;
    let mut prev = 1i128;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| a[r * cols + c] != 0) else {
            continue;
        };
        if piv != rank {
            for cc in 0..cols {
                a.swap(piv * cols + cc, rank * cols + cc);
            }
        }
        let p = a[rank * cols + c];
        for r in rank + 1..rows {
            let f = a[r * cols + c];
            for cc in 0..cols {
                a[r * cols + cc] = (p * a[r * cols + cc] - f * a[rank * cols + cc]) / prev;
            }
        }
        prev = p;
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Divide out the content and make the first nonzero entry positive.
fn primitive_i64(mut v: Vec<i64>) -> Vec<i64> {
    let mut g: i64 = 0;
    for &e in &v {
        g = num::integer::gcd(g, e.abs());
    }
    if g > 1 {
        for e in &mut v {
            *e /= g;
        }
    }
    if v.iter().find(|&&e| e != 0).is_some_and(|&first| first < 0) {
        for e in &mut v {
            *e = -*e;
        }
    }
    v
}

/// If `m - 1` has rank one, return the primitive generator of its image
/// line; otherwise `None`.  In a finite group an element deviating from
/// the identity by rank one fixes a hyperplane pointwise and must be an
/// involution reflecting across it (a unipotent shear has infinite order).
fn reflection_coroot(m: &LatticeMatrix) -> Option<Vec<i64>> {
    let n = m.dim();
    let mut diff = vec![0i64; n * n];
    for i in 0..n {
        for j in 0..n {
            diff[i * n + j] = m.get(i, j) - i64::from(i == j);
        }
    }
    if rank_i64(n, n, &diff) != 1 {
        return None;
    }
    for j in 0..n {
        let col: Vec<i64> = (0..n).map(|i| diff[i * n + j]).collect();
        if col.iter().any(|&e| e != 0) {
            return Some(primitive_i64(col));
        }
    }
    unreachable!("a rank-one matrix has a nonzero column")
}

/// Identify the Coxeter type of the group on the free degree quotient.
pub fn identify_coxeter_type(
    datum: &RootDatum,
    p: &Parabolic,
    elements: &[LatticeMatrix],
    group_cap: u128,
    mode: ExecMode,
) -> Result<CoxeterId> {
    let q = QuotientMap::new(datum, p)?;
    let free = q.free_rank();
    if free == 0 {
        if elements.len() != 1 {
            return Err(Error::CoxeterIdentification(
                "nontrivial group on a rank-zero quotient".to_string(),
            ));
        }
        return Ok(trivial_coxeter());
    }

    // One streaming pass over the elements: count the distinct images,
    // accumulate the invariant form, and collect the distinct reflections.
    // The form is summed over all elements rather than the deduplicated
    // image; the kernel multiplicity is uniform across image classes, so
    // that scales the form by a constant and changes no orthogonality
    // relation or length ratio.
    let mut seen: HashSet<Box<[i16]>> = HashSet::with_capacity(elements.len());
    let mut form = vec![0i64; free * free];
    let mut reflections: Vec<(LatticeMatrix, Vec<i64>)> = Vec::new();
    for g in elements {
        let m = q.apply(g)?;
        for i in 0..free {
            for j in 0..free {
                let mut s = 0i64;
                for k in 0..free {
                    let prod =
                        m.get(k, i).checked_mul(m.get(k, j)).ok_or(Error::Overflow)?;
                    s = s.checked_add(prod).ok_or(Error::Overflow)?;
                }
                let cell = &mut form[i * free + j];
                *cell = cell.checked_add(s).ok_or(Error::Overflow)?;
            }
        }
        if seen.insert(m.key()?) {
            if let Some(coroot) = reflection_coroot(&m) {
                reflections.push((m, coroot));
            }
        }
    }
    let image_order = seen.len() as u128;
    drop(seen);
    let faithful = image_order == elements.len() as u128;
    if image_order == 1 {
        return Ok(CoxeterId { faithful, ..trivial_coxeter() });
    }

    let form_pairing = |a: &[i64], b: &[i64]| -> i128 {
        let mut acc = 0i128;
        for i in 0..free {
            for j in 0..free {
                acc += a[i] as i128 * form[i * free + j] as i128 * b[j] as i128;
            }
        }
        acc
    };

    // Split the reflections into irreducible components: connect two
    // reflections when their coroot lines are not orthogonal under the
    // invariant form.
    let mut component_of: Vec<Option<usize>> = vec![None; reflections.len()];
    let mut components: Vec<Vec<usize>> = Vec::new();
    for start in 0..reflections.len() {
        if component_of[start].is_some() {
            continue;
        }
        let id = components.len();
        let mut stack = vec![start];
        component_of[start] = Some(id);
        let mut members = vec![start];
        while let Some(a) = stack.pop() {
            for b in 0..reflections.len() {
                if component_of[b].is_some() {
                    continue;
                }
                if !form_pairing(&reflections[a].1, &reflections[b].1).is_zero() {
                    component_of[b] = Some(id);
                    stack.push(b);
                    members.push(b);
                }
            }
        }
        components.push(members);
    }

    let mut identified: Vec<CoxeterComponent> = Vec::new();
    let mut reflection_group_order: u128 = 1;
    for members in &components {
        let coroots: Vec<Vec<i64>> =
            members.iter().map(|&i| reflections[i].1.clone()).collect();
        // Coroots as columns of a free x count matrix.
        let mut span = vec![0i64; free * coroots.len()];
        for (j, v) in coroots.iter().enumerate() {
            for i in 0..free {
                span[i * coroots.len() + j] = v[i];
            }
        }
        let rank = rank_i64(free, coroots.len(), &span);
        let count = members.len();
        let mut closure = GroupClosure::new(free, group_cap, mode)?;
        for &i in members {
            if !closure.contains(&reflections[i].0)? {
                closure.add_generator(reflections[i].0.clone())?;
            }
        }
        let order = closure.order();
        reflection_group_order = reflection_group_order.saturating_mul(order);
        let family = classify_component(rank, order, count, &coroots, &form_pairing)?;
        identified.push(CoxeterComponent { family, rank, order, reflections: count });
    }
    identified.sort_by_key(|c| (c.family, c.rank));
    let generated_by_reflections = reflection_group_order == image_order;
    let label = if identified.is_empty() {
        "1".to_string()
    } else if generated_by_reflections {
        identified.iter().map(CoxeterComponent::label).collect::<Vec<_>>().join(" x ")
    } else {
        format!("non-reflection group of order {image_order}")
    };
    Ok(CoxeterId { components: identified, label, image_order, faithful, generated_by_reflections })
}

/// Match one irreducible reflection component against the classification,
/// given its rank, order, reflection count, and reflection coroots.
fn classify_component(
    rank: usize,
    order: u128,
    count: usize,
    coroots: &[Vec<i64>],
    form_pairing: &dyn Fn(&[i64], &[i64]) -> i128,
) -> Result<char> {
    let candidates: Vec<char> = ['A', 'B', 'D', 'E', 'F', 'G']
        .into_iter()
        .filter(|&f| match f {
            'A' => rank >= 1,
            'B' => rank >= 2,
            'D' => rank >= 4,
            'E' => (6..=8).contains(&rank),
            'F' => rank == 4,
            'G' => rank == 2,
            _ => false,
        })
        .filter(|&f| type_order(f, rank) == order && type_reflections(f, rank) == count)
        .collect();
    match candidates.as_slice() {
        ['A', ..] => Ok('A'),
        ['B'] => {
            // Separate the two coroot length classes under the invariant
            // form; the orthogonal-frame class has exactly `rank` members.
            let lengths: Vec<i128> =
                coroots.iter().map(|v| form_pairing(v, v)).collect();
            let mut classes: BTreeMap<i128, usize> = BTreeMap::new();
            for &l in &lengths {
                *classes.entry(l).or_insert(0) += 1;
            }
            if classes.len() != 2 || rank == 2 {
                // Rank two is self-dual; a single length class means the
                // lattice does not see the distinction either.
                return Ok('C');
            }
            let (frame_len, other_len) = {
                let mut frame = None;
                let mut other = None;
                for (&len, &cnt) in &classes {
                    if cnt == rank {
                        frame = Some(len);
                    } else {
                        other = Some(len);
                    }
                }
                match (frame, other) {
                    (Some(f), Some(o)) => (f, o),
                    _ => return Ok('C'),
                }
            };
            Ok(if frame_len < other_len { 'C' } else { 'B' })
        }
        ['D'] => Ok('D'),
        ['E'] => Ok('E'),
        ['F'] => Ok('F'),
        ['G'] => Ok('G'),
        [] => Err(Error::CoxeterIdentification(format!(
            "no irreducible type of rank {rank} with order {order} and {count} reflections"
        ))),
        many => Err(Error::CoxeterIdentification(format!(
            "ambiguous identification {many:?} at rank {rank}"
        ))),
    }
}
