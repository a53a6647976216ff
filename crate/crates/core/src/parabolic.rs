//! The minimal admissible parabolic reduction of a full-group degree.
//!
//! For a degree at the full group, solve the Cartan system `C s = (<alpha_j,
//! lift>)_j`.  The nodes where `s_j` is not an integer form the Levi of the
//! minimal parabolic admitting an admissible degree with the same slope and
//! class; subtracting the integral part of the correction from the lift
//! produces a distinguished degree at that parabolic.
//!
//! [`brute_force_minimal`] recomputes the same answer with no linear-algebra
//! shortcut: it tests every node subset for admissibility by solving an
//! integrality problem, confirms the admissible family is closed upward and
//! under intersection, and takes the intersection.  The two paths are kept
//! independent so each can check the other.

use crate::lattice::{
    dot, int_kernel_basis, smith_normal_form, solve_rational, to_rat_vec, Int, IntMatrix, IntVec,
    Rat, RatVec,
};
use crate::root_datum::RootDatum;
use crate::slope::{degree_quotient, slope, Degree, Parabolic, SlopeVector};
use crate::weyl::{run_map, ExecMode, LatticeMatrix};
use crate::{Error, Result};
use num::traits::{One, Zero};
use std::collections::BTreeSet;

/// Largest number of simple roots the exhaustive subset sweep will accept:
/// the sweep is exponential in this count.
pub const SUBSET_RANK_CAP: usize = 9;

/// The minimal admissible reduction of a full-group degree.
#[derive(Clone, Debug)]
pub struct MinimalReduction {
    /// The minimal parabolic (its Levi node set).
    pub parabolic: Parabolic,
    /// The distinguished degree at that parabolic, with a canonical lift.
    pub degree: Degree,
    /// Slope of the original full-group degree.
    pub g_slope: SlopeVector,
    /// Cartan-system coefficients for the canonical lift, one per node.
    pub s_coeffs: RatVec,
}

fn cartan_coefficients(datum: &RootDatum, lift: &[Int]) -> RatVec {
    let b: RatVec = (0..datum.num_simple_roots())
        .map(|j| Rat::from_integer(dot(&datum.simple_root(j), lift)))
        .collect();
    solve_rational(datum.cartan_matrix(), &b).expect("a Cartan matrix is invertible")
}

/// Compute the minimal admissible parabolic reduction of the degree with
/// the given full-group lift.
pub fn minimal_admissible(datum: &RootDatum, lift: &[Int]) -> Result<MinimalReduction> {
    let n = datum.lattice_rank();
    if lift.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: lift.len() });
    }
    let r = datum.num_simple_roots();
    let g_slope = slope(datum, &Degree::at_group(datum, lift.to_vec())?);
    if r == 0 {
        return Ok(MinimalReduction {
            parabolic: Parabolic::borel(),
            degree: Degree::new(datum, Parabolic::borel(), lift.to_vec())?,
            g_slope,
            s_coeffs: vec![],
        });
    }
    let s = cartan_coefficients(datum, lift);
    let nodes: BTreeSet<usize> = (0..r).filter(|&j| !s[j].is_integer()).collect();
    let parabolic = Parabolic::new(datum, nodes)?;
    // Remove the integral corrections: the result is an integral lift of
    // the distinguished degree at the minimal parabolic.
    let mut adjusted = lift.to_vec();
    for j in 0..r {
        if parabolic.contains(j) {
            continue;
        }
        let c = s[j].to_integer();
        let coroot = datum.coroot(j);
        for i in 0..n {
            adjusted[i] -= &c * &coroot[i];
        }
    }
    let canonical = degree_quotient(datum, &parabolic).canonical(&adjusted);
    let s_coeffs = cartan_coefficients(datum, &canonical);
    Ok(MinimalReduction {
        degree: Degree::new(datum, parabolic.clone(), canonical)?,
        parabolic,
        g_slope,
        s_coeffs,
    })
}

/// Is the node subset `mask` admissible for the given full-group slope
/// defect?  Solve for the unique rational combination of all coroots
/// (positive on the complement, negative on the subset) matching `rhs`; the
/// subset is admissible exactly when the complement coefficients land in
/// the integers.
fn subset_admissible(datum: &RootDatum, rhs: &[Rat], mask: u32) -> bool {
    let r = datum.num_simple_roots();
    let n = datum.lattice_rank();
    let complement: Vec<usize> = (0..r).filter(|&j| mask & (1 << j) == 0).collect();
    let inside: Vec<usize> = (0..r).filter(|&j| mask & (1 << j) != 0).collect();
    let mut cols: Vec<IntVec> = Vec::with_capacity(r);
    for &j in &complement {
        cols.push(datum.coroot(j));
    }
    for &i in &inside {
        cols.push(datum.coroot(i).iter().map(|e| -e).collect());
    }
    let a = IntMatrix::from_cols(n, &cols);
    let x = solve_rational(&a, rhs).expect("simple coroots span the slope defect");
    x[..complement.len()].iter().all(|c| c.is_integer())
}

/// Exhaustively determine the minimal admissible parabolic by sweeping all
/// node subsets, and confirm on the way that admissibility is closed
/// upward and under intersection.
pub fn brute_force_minimal(
    datum: &RootDatum,
    lift: &[Int],
    mode: ExecMode,
) -> Result<MinimalReduction> {
    let r = datum.num_simple_roots();
    if r > SUBSET_RANK_CAP {
        return Err(Error::SubsetRankCap { rank: r, cap: SUBSET_RANK_CAP });
    }
    let n = datum.lattice_rank();
    if lift.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: lift.len() });
    }
    let g_slope = slope(datum, &Degree::at_group(datum, lift.to_vec())?);
    let lift_rat = to_rat_vec(lift);
    let rhs: RatVec = g_slope.0.iter().zip(&lift_rat).map(|(a, b)| a - b).collect();

    let masks: Vec<u32> = (0..(1u32 << r)).collect();
    let admissible_flags = run_map(mode, &masks, |&mask| subset_admissible(datum, &rhs, mask));

    // Upward closure: adding a node never breaks admissibility.
    for mask in 0..(1u32 << r) {
        if !admissible_flags[mask as usize] {
            continue;
        }
        for j in 0..r {
            assert!(
                admissible_flags[(mask | (1 << j)) as usize],
                "admissible family not closed upward at mask {mask:b} + node {j}"
            );
        }
    }
    // Intersection closure.
    let admissible: Vec<u32> =
        masks.iter().copied().filter(|&m| admissible_flags[m as usize]).collect();
    for &a in &admissible {
        for &b in &admissible {
            assert!(
                admissible_flags[(a & b) as usize],
                "admissible family not closed under intersection"
            );
        }
    }
    let minimal = admissible.iter().fold((1u32 << r) - 1, |acc, &m| acc & m);
    assert!(admissible_flags[minimal as usize], "intersection of admissibles not admissible");

    let nodes: BTreeSet<usize> = (0..r).filter(|&j| minimal & (1 << j) != 0).collect();
    let parabolic = Parabolic::new(datum, nodes)?;
    // Rebuild the distinguished lift from the minimal subset's solution.
    let complement: Vec<usize> = (0..r).filter(|&j| minimal & (1 << j) == 0).collect();
    let inside: Vec<usize> = (0..r).filter(|&j| minimal & (1 << j) != 0).collect();
    let mut cols: Vec<IntVec> = Vec::with_capacity(r);
    for &j in &complement {
        cols.push(datum.coroot(j));
    }
    for &i in &inside {
        cols.push(datum.coroot(i).iter().map(|e| -e).collect());
    }
    let a = IntMatrix::from_cols(n, &cols);
    let x = solve_rational(&a, &rhs).expect("simple coroots span the slope defect");
    let mut adjusted = lift.to_vec();
    for (k, &j) in complement.iter().enumerate() {
        let c = x[k].to_integer();
        let coroot = datum.coroot(j);
        for i in 0..n {
            adjusted[i] += &c * &coroot[i];
        }
    }
    let canonical = degree_quotient(datum, &parabolic).canonical(&adjusted);
    let s_coeffs = cartan_coefficients(datum, &canonical);
    Ok(MinimalReduction {
        degree: Degree::new(datum, parabolic.clone(), canonical)?,
        parabolic,
        g_slope,
        s_coeffs,
    })
}

/// Certificate that the distinguished degree at a parabolic is the unique
/// admissible one there: the images of the complement coroots in the
/// degree quotient generate a torsion-free subgroup.
///
/// Torsion-freeness is decided by Smith normal form: present the subgroup
/// by the kernel of `[K | -R]` (complement coroots next to Levi coroots)
/// and check the complement block of that kernel has no invariant factor
/// bigger than one.
pub fn uniqueness_certificate(datum: &RootDatum, p: &Parabolic) -> bool {
    let n = datum.lattice_rank();
    let complement: Vec<usize> =
        (0..datum.num_simple_roots()).filter(|j| !p.contains(*j)).collect();
    if complement.is_empty() {
        return true;
    }
    let mut cols: Vec<IntVec> = Vec::new();
    for &j in &complement {
        cols.push(datum.coroot(j));
    }
    for i in p.nodes() {
        cols.push(datum.coroot(i).iter().map(|e| -e).collect());
    }
    let stacked = IntMatrix::from_cols(n, &cols);
    let kernel = int_kernel_basis(&stacked);
    if kernel.is_empty() {
        return true;
    }
    // Relations among the complement images: the complement block of each
    // kernel vector.
    let mut rel = IntMatrix::zero(complement.len(), kernel.len());
    for (c, vec) in kernel.iter().enumerate() {
        for rr in 0..complement.len() {
            rel.set(rr, c, vec[rr].clone());
        }
    }
    smith_normal_form(&rel)
        .invariant_factors()
        .iter()
        .all(|d| d.is_one())
}

/// Does `w` fix the distinguished degree of a minimal reduction, as a
/// class in the degree quotient?
pub fn w_fixes_minimal_degree(
    datum: &RootDatum,
    reduction: &MinimalReduction,
    w: &LatticeMatrix,
) -> bool {
    let quotient = degree_quotient(datum, &reduction.parabolic);
    let moved = w.mul_vec_int(&reduction.degree.lift);
    quotient.same_class(&moved, &reduction.degree.lift)
}

/// Node set of the minimal parabolic computed through fundamental weights
/// instead of the Cartan solve: pair each weight with the slope defect and
/// keep the nodes with non-integral pairing.  An independent route used to
/// cross-check [`minimal_admissible`].
pub fn minimal_nodes_via_weights(datum: &RootDatum, lift: &[Int]) -> Result<BTreeSet<usize>> {
    let g_slope = slope(datum, &Degree::at_group(datum, lift.to_vec())?);
    let lift_rat = to_rat_vec(lift);
    let defect: RatVec = g_slope.0.iter().zip(&lift_rat).map(|(a, b)| a - b).collect();
    let weights = datum.fundamental_weights();
    let mut nodes = BTreeSet::new();
    for (i, w) in weights.iter().enumerate() {
        let pairing: Rat = w
            .iter()
            .zip(&defect)
            .map(|(a, b)| a * b)
            .fold(Rat::zero(), |acc, t| acc + t);
        if !pairing.is_integer() {
            nodes.insert(i);
        }
    }
    Ok(nodes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::{Isogeny, SimpleType};

    fn gl6_lift(d: i64) -> IntVec {
        let mut lift = vec![Int::zero(); 6];
        lift[5] = Int::from(d);
        lift
    }

    fn nodes_of(p: &Parabolic) -> Vec<usize> {
        p.node_vec()
    }

    #[test]
    fn gl6_minimal_parabolics_by_degree() {
        // Frozen expectations for GL_6 across all degree classes mod 6.
        let datum = RootDatum::gl(6).unwrap();
        let expected: [(i64, &[usize]); 6] = [
            (0, &[]),
            (1, &[0, 1, 2, 3, 4]),
            (2, &[0, 1, 3, 4]),
            (3, &[0, 2, 4]),
            (4, &[0, 1, 3, 4]),
            (5, &[0, 1, 2, 3, 4]),
        ];
        for (d, nodes) in expected {
            let mr = minimal_admissible(&datum, &gl6_lift(d)).unwrap();
            assert_eq!(nodes_of(&mr.parabolic), nodes, "GL6 degree {d}");
            // The degree's own slope must reproduce the full-group slope.
            let phi = slope(&datum, &mr.degree);
            assert_eq!(phi, mr.g_slope, "GL6 degree {d} slope mismatch");
        }
    }

    #[test]
    fn gl6_degree_two_block_degrees() {
        // Degree 2: Levi GL_3 x GL_3, block degrees (1, 1).
        let datum = RootDatum::gl(6).unwrap();
        let mr = minimal_admissible(&datum, &gl6_lift(2)).unwrap();
        let lift = &mr.degree.lift;
        let block_one: Int = lift[0..3].iter().sum();
        let block_two: Int = lift[3..6].iter().sum();
        assert_eq!((block_one, block_two), (Int::one(), Int::one()));

        // Degree 3: Levi GL_2^3, block degrees (1, 1, 1).
        let mr = minimal_admissible(&datum, &gl6_lift(3)).unwrap();
        let lift = &mr.degree.lift;
        let sums: Vec<Int> =
            (0..3).map(|b| lift[2 * b..2 * b + 2].iter().sum()).collect();
        assert_eq!(sums, vec![Int::one(), Int::one(), Int::one()]);
    }

    #[test]
    fn gl6_cartan_coefficients_pattern() {
        // For GL_n degree d with lift d*e_n, s_i = -d*i/n (the partial
        // sums of the slope defect).
        let datum = RootDatum::gl(6).unwrap();
        let lift = gl6_lift(1);
        let b: Vec<Rat> = (0..5)
            .map(|j| Rat::from_integer(dot(&datum.simple_root(j), &lift)))
            .collect();
        let s = solve_rational(datum.cartan_matrix(), &b).unwrap();
        let expected: Vec<Rat> =
            (1..=5).map(|i| Rat::new(Int::from(-i), Int::from(6))).collect();
        assert_eq!(s, expected);
    }

    #[test]
    fn oracle_agrees_with_formula_gl6() {
        let datum = RootDatum::gl(6).unwrap();
        for d in 0..6 {
            let fast = minimal_admissible(&datum, &gl6_lift(d)).unwrap();
            let slow = brute_force_minimal(&datum, &gl6_lift(d), ExecMode::Sequential).unwrap();
            assert_eq!(fast.parabolic, slow.parabolic, "GL6 degree {d}");
            assert!(
                crate::slope::degrees_equal(&datum, &fast.degree, &slow.degree),
                "GL6 degree {d}: distinguished degrees differ"
            );
            assert_eq!(fast.degree.lift, slow.degree.lift, "canonical lifts differ");
        }
    }

    #[test]
    fn oracle_agrees_on_adjoint_types() {
        let cases = [
            (SimpleType::B, 3usize),
            (SimpleType::C, 3),
            (SimpleType::D, 4),
            (SimpleType::G, 2),
        ];
        for (family, rank) in cases {
            let datum = RootDatum::simple(family, rank, Isogeny::Adjoint).unwrap();
            for lift in crate::catalog::torsion_class_lifts(&datum) {
                let fast = minimal_admissible(&datum, &lift).unwrap();
                let slow = brute_force_minimal(&datum, &lift, ExecMode::Sequential).unwrap();
                assert_eq!(
                    fast.parabolic, slow.parabolic,
                    "{} lift {lift:?}",
                    datum.name()
                );
                assert_eq!(fast.degree.lift, slow.degree.lift);
            }
        }
    }

    #[test]
    fn weight_route_matches() {
        let datum = RootDatum::gl(6).unwrap();
        for d in 0..6 {
            let mr = minimal_admissible(&datum, &gl6_lift(d)).unwrap();
            let via_weights = minimal_nodes_via_weights(&datum, &gl6_lift(d)).unwrap();
            let direct: BTreeSet<usize> = mr.parabolic.nodes().collect();
            assert_eq!(direct, via_weights, "GL6 degree {d}");
        }
        let datum = RootDatum::simple(SimpleType::D, 5, Isogeny::Adjoint).unwrap();
        for lift in crate::catalog::torsion_class_lifts(&datum) {
            let mr = minimal_admissible(&datum, &lift).unwrap();
            let via_weights = minimal_nodes_via_weights(&datum, &lift).unwrap();
            let direct: BTreeSet<usize> = mr.parabolic.nodes().collect();
            assert_eq!(direct, via_weights);
        }
    }

    #[test]
    fn sc_data_have_trivial_reduction() {
        // Simply connected data have trivial degree group: the zero lift's
        // minimal parabolic is the Borel with the zero degree... in fact
        // every integral lift in the coroot lattice has integral s, so the
        // minimal parabolic is always empty.
        for family in [SimpleType::A, SimpleType::B, SimpleType::G] {
            let rank = match family {
                SimpleType::A => 3,
                SimpleType::B => 3,
                _ => 2,
            };
            let datum = RootDatum::simple(family, rank, Isogeny::SimplyConnected).unwrap();
            let mut lift = vec![Int::zero(); datum.lattice_rank()];
            lift[0] = Int::from(2);
            lift[rank - 1] = Int::from(-1);
            let mr = minimal_admissible(&datum, &lift).unwrap();
            assert!(mr.parabolic.is_empty(), "{}", datum.name());
        }
    }

    #[test]
    fn uniqueness_certificate_examples() {
        let datum = RootDatum::gl(6).unwrap();
        for d in 0..6 {
            let mr = minimal_admissible(&datum, &gl6_lift(d)).unwrap();
            assert!(
                uniqueness_certificate(&datum, &mr.parabolic),
                "GL6 degree {d} minimal parabolic should certify unique"
            );
        }
        // Full parabolic: no complement coroots at all, trivially unique.
        assert!(uniqueness_certificate(&datum, &Parabolic::full(&datum)));
    }

    #[test]
    fn certificate_holds_on_every_parabolic() {
        // Simple coroots are linearly independent, so the stacked matrix
        // [K | -R] has zero kernel and the generated subgroup is free.  The
        // certificate must therefore hold for *every* parabolic of a valid
        // datum -- that freeness is the reason the distinguished degree is
        // unique.  Sweep all parabolics of a few data of mixed isogeny.
        let data = [
            RootDatum::gl(4).unwrap(),
            RootDatum::simple(SimpleType::D, 4, Isogeny::Adjoint).unwrap(),
            RootDatum::simple(SimpleType::C, 3, Isogeny::SimplyConnected).unwrap(),
        ];
        for datum in &data {
            let r = datum.num_simple_roots();
            for mask in 0..(1u32 << r) {
                let nodes = (0..r).filter(|&j| mask & (1 << j) != 0);
                let p = Parabolic::new(datum, nodes).unwrap();
                assert!(
                    uniqueness_certificate(datum, &p),
                    "{} parabolic mask {mask:b}",
                    datum.name()
                );
            }
        }
    }

    #[test]
    fn certificate_mechanism_detects_torsion() {
        // The Smith-form torsion test itself must be able to say "no": feed
        // it a synthetic relation block where twice a generator is a
        // relation.  This exercises the same code path uniqueness relies
        // on, with data a valid root datum can never produce.
        let mut rel = IntMatrix::zero(2, 1);
        rel.set(0, 0, Int::from(2));
        let factors = smith_normal_form(&rel).invariant_factors();
        assert_eq!(factors, vec![Int::from(2)]);
        assert!(
            !factors.iter().all(|d| d.is_one()),
            "a doubled relation must register as torsion"
        );
    }
}
