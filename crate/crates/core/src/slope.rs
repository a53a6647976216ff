//! Slopes of topological degrees.
//!
//! A degree for a standard parabolic `P` lives in the quotient of the
//! cocharacter lattice by the span of the Levi's simple coroots.  Its
//! *slope* is the unique rational cocharacter in the coset of a lift that
//! pairs to zero with every Levi simple root: concretely, solve the Levi
//! Cartan system `C_P q = (<alpha_j, lift>)_j` and subtract `sum q_j
//! coroot_j`.  The result does not depend on the choice of lift, which is
//! what makes slope a function of the degree.

use crate::lattice::{
    dot_int_rat, int_kernel_basis, solve_rational, to_rat_vec, Int, IntMatrix, IntVec,
    QuotientLattice, Rat, RatVec,
};
use crate::root_datum::RootDatum;
use crate::weyl::LatticeMatrix;
use crate::{Error, Result};
use num::traits::Zero;
use std::collections::BTreeSet;

/// A standard parabolic, recorded by the node set of its Levi.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Parabolic {
    nodes: BTreeSet<usize>,
}

impl Parabolic {
    /// Parabolic with the given Levi nodes (checked against the datum).
    pub fn new<I: IntoIterator<Item = usize>>(datum: &RootDatum, nodes: I) -> Result<Parabolic> {
        let r = datum.num_simple_roots();
        let nodes: BTreeSet<usize> = nodes.into_iter().collect();
        for &i in &nodes {
            if i >= r {
                return Err(Error::NodeOutOfRange { index: i, rank: r });
            }
        }
        Ok(Parabolic { nodes })
    }

    /// The Borel: no Levi nodes.
    pub fn borel() -> Parabolic {
        Parabolic { nodes: BTreeSet::new() }
    }

    /// The full group as a parabolic of itself.
    pub fn full(datum: &RootDatum) -> Parabolic {
        Parabolic { nodes: (0..datum.num_simple_roots()).collect() }
    }

    pub fn nodes(&self) -> impl Iterator<Item = usize> + '_ {
        self.nodes.iter().copied()
    }

    pub fn node_vec(&self) -> Vec<usize> {
        self.nodes.iter().copied().collect()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.nodes.contains(&i)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn is_full(&self, datum: &RootDatum) -> bool {
        self.nodes.len() == datum.num_simple_roots()
    }

    pub fn is_subset_of(&self, other: &Parabolic) -> bool {
        self.nodes.is_subset(&other.nodes)
    }
}

/// A degree at a parabolic: an element of the degree quotient, stored as a
/// lift in the cocharacter lattice.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Degree {
    pub parabolic: Parabolic,
    pub lift: IntVec,
}

impl Degree {
    pub fn new(datum: &RootDatum, parabolic: Parabolic, lift: IntVec) -> Result<Degree> {
        if lift.len() != datum.lattice_rank() {
            return Err(Error::DimensionMismatch {
                expected: datum.lattice_rank(),
                got: lift.len(),
            });
        }
        Ok(Degree { parabolic, lift })
    }

    /// Degree at the full group.
    pub fn at_group(datum: &RootDatum, lift: IntVec) -> Result<Degree> {
        Degree::new(datum, Parabolic::full(datum), lift)
    }
}

/// The quotient lattice in which degrees at `p` live: cocharacters modulo
/// the span of the Levi coroots.
pub fn degree_quotient(datum: &RootDatum, p: &Parabolic) -> QuotientLattice {
    let cols: Vec<IntVec> = p.nodes().map(|i| datum.coroot(i)).collect();
    let rel = IntMatrix::from_cols(datum.lattice_rank(), &cols);
    QuotientLattice::new(datum.lattice_rank(), &rel)
}

/// Two degrees are equal when they share the parabolic and their lifts
/// agree modulo the Levi coroots.
pub fn degrees_equal(datum: &RootDatum, a: &Degree, b: &Degree) -> bool {
    a.parabolic == b.parabolic
        && degree_quotient(datum, &a.parabolic).same_class(&a.lift, &b.lift)
}

/// A rational cocharacter produced by the slope map.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SlopeVector(pub RatVec);

/// Slope of a degree.
pub fn slope(datum: &RootDatum, deg: &Degree) -> SlopeVector {
    slope_of_rational_lift(datum, &deg.parabolic, &to_rat_vec(&deg.lift))
}

/// Slope of a parabolic degree presented by a rational lift.
///
/// Used directly when composing slope maps, where the intermediate lift is
/// already rational.
pub fn slope_of_rational_lift(datum: &RootDatum, p: &Parabolic, lift: &[Rat]) -> SlopeVector {
    assert_eq!(lift.len(), datum.lattice_rank(), "lift of wrong dimension");
    let nodes = p.node_vec();
    if nodes.is_empty() {
        return SlopeVector(lift.to_vec());
    }
    let cartan_p = datum.cartan_matrix().submatrix(&nodes, &nodes);
    let b: RatVec = nodes
        .iter()
        .map(|&j| dot_int_rat(&datum.simple_root(j), lift))
        .collect();
    let q = solve_rational(&cartan_p, &b)
        .expect("a Levi Cartan matrix is invertible");
    let mut phi = lift.to_vec();
    for (k, &j) in nodes.iter().enumerate() {
        let coroot = datum.coroot(j);
        for i in 0..phi.len() {
            phi[i] -= &q[k] * Rat::from_integer(coroot[i].clone());
        }
    }
    SlopeVector(phi)
}

/// Dominance-cone order: `x <= y` when `y - x` is a nonnegative rational
/// combination of the simple coroots.
pub fn leq_pos_cone(datum: &RootDatum, x: &[Rat], y: &[Rat]) -> bool {
    assert_eq!(x.len(), y.len(), "comparing vectors of unequal dimension");
    let diff: RatVec = y.iter().zip(x).map(|(a, b)| a - b).collect();
    // Coroots are independent, so the coefficients (if any) are unique.
    match solve_rational(datum.coroot_matrix(), &diff) {
        None => false,
        Some(t) => t.iter().all(|c| c >= &Rat::zero()),
    }
}

/// Canonical representative of the class of a degree in the full-group
/// quotient (the component group of the moduli problem).
pub fn project_degree(datum: &RootDatum, deg: &Degree) -> IntVec {
    datum.pi1().canonical(&deg.lift)
}

/// Whether a degree at some parabolic is admissible for a full-group
/// degree: same class and the same slope.
pub fn is_admissible(datum: &RootDatum, deg: &Degree, target: &Degree) -> bool {
    assert!(
        target.parabolic.is_full(datum),
        "admissibility target must be a full-group degree"
    );
    let pi1 = datum.pi1();
    if !pi1.same_class(&deg.lift, &target.lift) {
        return false;
    }
    slope(datum, deg) == slope(datum, target)
}

/// Defining property of the slope, checked scalar by scalar: the slope and
/// the lift pair equally with every character vanishing on the Levi
/// coroots, and the slope itself pairs to zero with every Levi simple root.
pub fn check_slope_scalar(datum: &RootDatum, deg: &Degree) -> bool {
    let phi = slope(datum, deg).0;
    let lift = to_rat_vec(&deg.lift);
    for j in deg.parabolic.nodes() {
        if !dot_int_rat(&datum.simple_root(j), &phi).is_zero() {
            return false;
        }
    }
    // Basis of the characters vanishing on the Levi coroots: the integer
    // kernel of pairing-against-those-coroots.
    let cols: Vec<IntVec> = deg.parabolic.nodes().map(|i| datum.coroot(i)).collect();
    let pairing = IntMatrix::from_cols(datum.lattice_rank(), &cols).transpose();
    for lambda in int_kernel_basis(&pairing) {
        if dot_int_rat(&lambda, &phi) != dot_int_rat(&lambda, &lift) {
            return false;
        }
    }
    true
}

/// Compatibility of slopes along an inclusion of parabolics: for
/// `deg.parabolic` contained in `larger`, the slope at `larger` of the
/// pushed-forward degree equals the slope at `larger` of the intermediate
/// slope taken as a rational lift.
pub fn check_slope_proj(datum: &RootDatum, deg: &Degree, larger: &Parabolic) -> bool {
    assert!(
        deg.parabolic.is_subset_of(larger),
        "projection target must contain the degree's parabolic"
    );
    let direct = slope_of_rational_lift(datum, larger, &to_rat_vec(&deg.lift));
    let intermediate = slope(datum, deg).0;
    let composed = slope_of_rational_lift(datum, larger, &intermediate);
    direct == composed
}

/// The index sets along which a pair of parabolic reductions can be pushed
/// deeper: given `w` in the Weyl group, keep those nodes of `i1` hit by
/// `w`-images of `i2`-nodes, and symmetrically.
pub fn deeper_reduction_sets(
    datum: &RootDatum,
    w: &LatticeMatrix,
    i1: &Parabolic,
    i2: &Parabolic,
) -> Result<(Parabolic, Parabolic)> {
    let w_inv = w.inverse()?;
    let simple: Vec<IntVec> = (0..datum.num_simple_roots())
        .map(|i| datum.simple_root(i))
        .collect();
    let mut out1 = BTreeSet::new();
    let mut out2 = BTreeSet::new();
    for j in i2.nodes() {
        // w . alpha_j as a covector is alpha_j composed with w^{-1}.
        let image = w_inv.covector_through(&simple[j]);
        for i in i1.nodes() {
            if simple[i] == image {
                out1.insert(i);
                out2.insert(j);
            }
        }
    }
    Ok((
        Parabolic::new(datum, out1)?,
        Parabolic::new(datum, out2)?,
    ))
}

/// Pairing of a rational covector with a slope (convenience for reports).
pub fn pair_covector(covector: &[Int], phi: &SlopeVector) -> Rat {
    dot_int_rat(covector, &phi.0)
}
