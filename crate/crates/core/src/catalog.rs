//! Enumeration helpers for sweeps: families of root data and the degree
//! classes worth visiting for each.

use crate::lattice::{Int, IntVec};
use crate::root_datum::{Isogeny, RootDatum, SimpleType};
use crate::{Error, Result};
use num::traits::{ToPrimitive, Zero};

/// All simple types with at most `max_rank` simple roots, smallest ranks
/// first.  Low-rank coincidences are kept once under their conventional
/// letter: A starts at 1, B and C at 2, D at 4 (D_3 = A_3), E runs 6 to 8.
pub fn simple_types_up_to(max_rank: usize) -> Vec<(SimpleType, usize)> {
    let mut out = Vec::new();
    for rank in 1..=max_rank {
        for family in [
            SimpleType::A,
            SimpleType::B,
            SimpleType::C,
            SimpleType::D,
            SimpleType::E,
            SimpleType::F,
            SimpleType::G,
        ] {
            let lo = match family {
                SimpleType::A => 1,
                SimpleType::B | SimpleType::C => 2,
                SimpleType::D => 4,
                SimpleType::E => 6,
                SimpleType::F => 4,
                SimpleType::G => 2,
            };
            let hi = match family {
                SimpleType::E => 8,
                SimpleType::F => 4,
                SimpleType::G => 2,
                _ => usize::MAX,
            };
            if rank >= lo && rank <= hi {
                out.push((family, rank));
            }
        }
    }
    out
}

/// Every simple datum with at most `max_rank` simple roots, in both
/// isogeny forms (the two coincide only in lattice presentation, never in
/// behaviour, so both are kept).
pub fn sweep_data(max_rank: usize) -> Vec<RootDatum> {
    let mut out = Vec::new();
    for (family, rank) in simple_types_up_to(max_rank) {
        for isogeny in [Isogeny::SimplyConnected, Isogeny::Adjoint] {
            out.push(
                RootDatum::simple(family, rank, isogeny)
                    .expect("catalog enumerates only valid (family, rank) pairs"),
            );
        }
    }
    out
}

/// One lift per class of the component group, when that group is finite:
/// all integer combinations of the torsion generators with coefficients
/// below the corresponding invariant factors.  The zero class comes first.
///
/// Data with free classes (such as GL_n) have infinitely many classes; this
/// returns only the torsion classes, with free coordinates pinned to zero.
pub fn torsion_class_lifts(datum: &RootDatum) -> Vec<IntVec> {
    let pi1 = datum.pi1();
    let factors: Vec<u64> = pi1
        .torsion_invariants()
        .iter()
        .map(|d| d.to_u64().expect("component groups here are tiny"))
        .collect();
    let n = datum.lattice_rank();
    let gens: Vec<IntVec> =
        (0..factors.len()).map(|k| pi1.torsion_generator_lift(k)).collect();
    let mut out = Vec::new();
    let total: u64 = factors.iter().product();
    for mut code in 0..total {
        let mut lift = vec![Int::zero(); n];
        for (k, &d) in factors.iter().enumerate() {
            let c = code % d;
            code /= d;
            for i in 0..n {
                lift[i] += Int::from(c) * &gens[k][i];
            }
        }
        out.push(pi1.canonical(&lift));
    }
    out
}

/// The nonzero torsion classes only.
pub fn nonzero_torsion_class_lifts(datum: &RootDatum) -> Vec<IntVec> {
    let pi1 = datum.pi1();
    torsion_class_lifts(datum)
        .into_iter()
        .filter(|lift| !pi1.is_zero_class(lift))
        .collect()
}

/// A lift representing "degree k" for data whose component group has a
/// single natural generator: one torsion factor and no free part (adjoint
/// simple types other than D_even), or one free generator and no torsion.
/// Ambiguous component groups are an error.
pub fn canonical_degree_lift(datum: &RootDatum, k: i64) -> Result<IntVec> {
    let pi1 = datum.pi1();
    let torsion = pi1.torsion_invariants().len();
    let free = pi1.free_rank();
    let gen = match (torsion, free) {
        (0, 0) => return Ok(vec![Int::zero(); datum.lattice_rank()]),
        (1, 0) => pi1.torsion_generator_lift(0),
        (0, 1) => pi1.free_generator_lifts().remove(0),
        _ => {
            return Err(Error::InvalidRootDatum(format!(
                "component group of {} has no single natural generator",
                datum.name()
            )))
        }
    };
    let lift: IntVec = gen.iter().map(|g| Int::from(k) * g).collect();
    Ok(pi1.canonical(&lift))
}
