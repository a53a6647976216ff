//! Verification sweeps: every computed answer is re-derived by an
//! independent route (exhaustive search, closed forms, randomized laws) and
//! disagreements are reported as machine-readable failures.

use crate::table::{check_rows, computed_rows};
use crate::CliResult;
use levi_slope_core::catalog::{nonzero_torsion_class_lifts, sweep_data, torsion_class_lifts};
use levi_slope_core::lattice::{Int, IntVec};
use levi_slope_core::num::integer::gcd;
use levi_slope_core::num::traits::Zero;
use levi_slope_core::parabolic::{
    brute_force_minimal, minimal_admissible, minimal_nodes_via_weights, uniqueness_certificate,
    SUBSET_RANK_CAP,
};
use levi_slope_core::root_datum::{Isogeny, RootDatum, SimpleType};
use levi_slope_core::slope::{
    check_slope_proj, check_slope_scalar, leq_pos_cone, slope, Degree, Parabolic,
};
use levi_slope_core::stability::{stable_exists_minimal, type_a_degree_class};
use levi_slope_core::weyl::{enumerate_weyl, ExecMode};
use levi_slope_core::weyl_rel::{degree_invariance_condition, relative_weyl};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeSet;

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub sweep: String,
    pub datum: String,
    pub detail: String,
}

impl Failure {
    fn new(sweep: &str, datum: &RootDatum, detail: String) -> Failure {
        Failure { sweep: sweep.to_string(), datum: datum.name().to_string(), detail }
    }
}

#[derive(Serialize)]
pub struct SweepSummary {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
}

#[derive(Serialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub sweeps: Vec<SweepSummary>,
    pub failures: Vec<Failure>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

pub struct VerifyConfig {
    pub max_rank: usize,
    pub orbit_cap: usize,
    pub weyl_cap: u128,
    pub seed: u64,
    /// Randomized slope-law instances per datum and property.
    pub slope_iters: usize,
    /// Corrupt one computed answer before comparison, to prove the sweeps
    /// detect and report a genuine disagreement.
    pub inject_fault: bool,
    pub mode: ExecMode,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_rank: 5,
            orbit_cap: 4_000_000,
            weyl_cap: 10_000_000,
            seed: 12345,
            slope_iters: 8,
            inject_fault: false,
            mode: ExecMode::default(),
        }
    }
}

/// The degree lifts worth sweeping for a datum: every torsion class, and
/// for data with a free component group (GL_n) a range of multiples of the
/// free generator including negatives.
fn sweep_lifts(datum: &RootDatum) -> Vec<IntVec> {
    let pi1 = datum.pi1();
    if pi1.free_rank() == 0 {
        return torsion_class_lifts(datum);
    }
    let gens = pi1.free_generator_lifts();
    let n = datum.lattice_rank() as i64;
    let mut out = Vec::new();
    for d in -2..=n {
        let mut lift = vec![Int::zero(); datum.lattice_rank()];
        for g in &gens {
            for i in 0..lift.len() {
                lift[i] += Int::from(d) * &g[i];
            }
        }
        out.push(lift);
    }
    out
}

/// Simple data in both isogeny forms plus the GL family, capped by rank.
fn oracle_pool(max_rank: usize) -> Vec<RootDatum> {
    let rank_cap = max_rank.min(SUBSET_RANK_CAP);
    let mut pool = sweep_data(rank_cap);
    for n in 1..=rank_cap {
        pool.push(RootDatum::gl(n).expect("GL data are valid"));
    }
    pool
}

/// Minimal-parabolic oracle equivalence: the integrality criterion against
/// exhaustive search over all parabolics, plus the fundamental-weight
/// reformulation of the node set.
pub fn sweep_oracle(cfg: &VerifyConfig, failures: &mut Vec<Failure>) -> CliResult<usize> {
    const NAME: &str = "oracle_equivalence";
    let mut cases = 0;
    let mut fault = cfg.inject_fault;
    for datum in oracle_pool(cfg.max_rank) {
        for lift in sweep_lifts(&datum) {
            cases += 1;
            let fast = minimal_admissible(&datum, &lift)?;
            let slow = brute_force_minimal(&datum, &lift, cfg.mode)?;
            let mut fast_parabolic = fast.parabolic.clone();
            if fault && datum.num_simple_roots() > 0 {
                fault = false;
                // Corrupt the computed node set, then let the ordinary
                // comparison catch and report it.
                let mut nodes: BTreeSet<usize> = fast_parabolic.nodes().collect();
                if !nodes.remove(&0) {
                    nodes.insert(0);
                }
                fast_parabolic = Parabolic::new(&datum, nodes)?;
            }
            if fast_parabolic != slow.parabolic {
                failures.push(Failure::new(
                    NAME,
                    &datum,
                    format!(
                        "lift {lift:?}: minimal parabolic nodes {:?} disagree with exhaustive oracle {:?}",
                        crate::table::one_based(&fast_parabolic.node_vec()),
                        crate::table::one_based(&slow.parabolic.node_vec())
                    ),
                ));
                continue;
            }
            if !levi_slope_core::slope::degrees_equal(&datum, &fast.degree, &slow.degree) {
                failures.push(Failure::new(
                    NAME,
                    &datum,
                    format!(
                        "lift {lift:?}: canonical degree {:?} differs from oracle degree {:?}",
                        fast.degree.lift, slow.degree.lift
                    ),
                ));
            }
            let weight_nodes = minimal_nodes_via_weights(&datum, &lift)?;
            let fast_nodes: BTreeSet<usize> = fast.parabolic.nodes().collect();
            if weight_nodes != fast_nodes {
                failures.push(Failure::new(
                    NAME,
                    &datum,
                    format!(
                        "lift {lift:?}: weight-pairing nodes {:?} differ from {:?}",
                        crate::table::one_based(&weight_nodes.iter().copied().collect::<Vec<_>>()),
                        crate::table::one_based(&fast_nodes.iter().copied().collect::<Vec<_>>())
                    ),
                ));
            }
        }
    }
    Ok(cases)
}

/// The minimal parabolic is unique because distinct admissible parabolics
/// would intersect lower: certified lattice-theoretically for every
/// parabolic of every low-rank datum.
pub fn sweep_uniqueness(cfg: &VerifyConfig, failures: &mut Vec<Failure>) -> CliResult<usize> {
    const NAME: &str = "uniqueness_certificate";
    let mut cases = 0;
    for datum in sweep_data(cfg.max_rank.min(5)) {
        let r = datum.num_simple_roots();
        for mask in 0u32..(1 << r) {
            cases += 1;
            let nodes = (0..r).filter(|i| mask >> i & 1 == 1);
            let p = Parabolic::new(&datum, nodes)?;
            if !uniqueness_certificate(&datum, &p) {
                failures.push(Failure::new(
                    NAME,
                    &datum,
                    format!("certificate fails on nodes {:?}", p.node_vec()),
                ));
            }
        }
    }
    Ok(cases)
}

/// Relative Weyl groups over the nonzero classes: every element fixes the
/// distinguished degree, the action on the degree quotient is faithful,
/// and the identified reflection components account for the whole group.
pub fn sweep_invariance(cfg: &VerifyConfig, failures: &mut Vec<Failure>) -> CliResult<usize> {
    const NAME: &str = "invariance_faithfulness";
    let mut cases = 0;
    for (family, rank) in levi_slope_core::catalog::simple_types_up_to(cfg.max_rank) {
        let datum = RootDatum::simple(family, rank, Isogeny::Adjoint)?;
        for lift in nonzero_torsion_class_lifts(&datum) {
            cases += 1;
            let reduction = minimal_admissible(&datum, &lift)?;
            let rw = relative_weyl(
                &datum,
                &reduction.parabolic,
                cfg.orbit_cap,
                cfg.weyl_cap,
                cfg.mode,
            )?;
            if !degree_invariance_condition(&datum, &reduction, &rw) {
                failures.push(Failure::new(
                    NAME,
                    &datum,
                    format!("lift {lift:?}: an element moves the distinguished degree"),
                ));
            }
            if !rw.coxeter.faithful {
                failures.push(Failure::new(
                    NAME,
                    &datum,
                    format!("lift {lift:?}: action on the degree quotient is unfaithful"),
                ));
            }
            if !rw.coxeter.generated_by_reflections {
                failures.push(Failure::new(
                    NAME,
                    &datum,
                    format!("lift {lift:?}: image not generated by its reflections"),
                ));
            }
        }
    }
    Ok(cases)
}

/// Stability by two routes computed independently: the minimal parabolic
/// being the whole group, and (for type-A data) blockwise coprimality.
pub fn sweep_stability(cfg: &VerifyConfig, failures: &mut Vec<Failure>) -> CliResult<usize> {
    const NAME: &str = "stability_equivalence";
    let mut cases = 0;
    for datum in oracle_pool(cfg.max_rank) {
        let all_type_a =
            datum.components().iter().all(|c| c.family == SimpleType::A);
        for lift in sweep_lifts(&datum) {
            cases += 1;
            let minimal_route = stable_exists_minimal(&datum, &lift)?;
            if !all_type_a {
                continue;
            }
            let coprime_route = datum.components().iter().all(|comp| {
                let block = comp.rank as u64 + 1;
                gcd(type_a_degree_class(&datum, &comp.nodes, &lift), block) == 1
            });
            if coprime_route != minimal_route {
                failures.push(Failure::new(
                    NAME,
                    &datum,
                    format!(
                        "lift {lift:?}: coprimality says {coprime_route}, minimal parabolic says {minimal_route}"
                    ),
                ));
            }
        }
    }
    Ok(cases)
}

/// Case counts from the randomized slope-law sweep, split by property.
pub struct SlopeSweepStats {
    pub scalar: usize,
    pub projection: usize,
    pub order: usize,
    pub w_invariance: usize,
}

impl SlopeSweepStats {
    pub fn total(&self) -> usize {
        self.scalar + self.projection + self.order + self.w_invariance
    }
}

fn random_lift(rng: &mut ChaCha8Rng, n: usize) -> IntVec {
    (0..n).map(|_| Int::from(rng.gen_range(-5..=5i64))).collect()
}

/// Randomized slope laws: the defining scalar identities, projection
/// compatibility along parabolic chains, order preservation, and (at low
/// rank) invariance of full-group slopes under the whole Weyl group.
pub fn slope_sweep(
    data: &[RootDatum],
    iters: usize,
    seed: u64,
    mode: ExecMode,
    failures: &mut Vec<Failure>,
) -> CliResult<SlopeSweepStats> {
    const NAME: &str = "slope_properties";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stats =
        SlopeSweepStats { scalar: 0, projection: 0, order: 0, w_invariance: 0 };
    for datum in data {
        let r = datum.num_simple_roots();
        let n = datum.lattice_rank();
        for _ in 0..iters {
            let j_nodes: Vec<usize> = (0..r).filter(|_| rng.gen_bool(0.5)).collect();
            let p = Parabolic::new(datum, j_nodes)?;
            let lift = random_lift(&mut rng, n);
            let deg = Degree::new(datum, p.clone(), lift.clone())?;

            stats.scalar += 1;
            if !check_slope_scalar(datum, &deg) {
                failures.push(Failure::new(
                    NAME,
                    datum,
                    format!("scalar law fails at nodes {:?}, lift {lift:?}", p.node_vec()),
                ));
            }

            let larger_nodes: Vec<usize> =
                (0..r).filter(|&i| p.contains(i) || rng.gen_bool(0.5)).collect();
            let larger = Parabolic::new(datum, larger_nodes)?;
            stats.projection += 1;
            if !check_slope_proj(datum, &deg, &larger) {
                failures.push(Failure::new(
                    NAME,
                    datum,
                    format!(
                        "projection law fails from {:?} to {:?}, lift {lift:?}",
                        p.node_vec(),
                        larger.node_vec()
                    ),
                ));
            }

            // A nonnegative coroot combination added outside the Levi moves
            // the degree up; the slope must move up in the positive cone.
            let mut shifted = lift.clone();
            for i in (0..r).filter(|&i| !p.contains(i)) {
                let c = rng.gen_range(0..=3i64);
                let coroot = datum.coroot(i);
                for k in 0..n {
                    shifted[k] += Int::from(c) * &coroot[k];
                }
            }
            let deg_shifted = Degree::new(datum, p.clone(), shifted.clone())?;
            stats.order += 1;
            if !leq_pos_cone(datum, &slope(datum, &deg).0, &slope(datum, &deg_shifted).0) {
                failures.push(Failure::new(
                    NAME,
                    datum,
                    format!(
                        "order law fails at nodes {:?}: lifts {lift:?} <= {shifted:?}",
                        p.node_vec()
                    ),
                ));
            }
        }

        // Full Weyl enumeration stays cheap only at low rank.
        if r <= 3 && datum.weyl_order() <= 1024 {
            let elements = enumerate_weyl(datum, 1024, mode)?;
            for _ in 0..iters {
                let lift = random_lift(&mut rng, n);
                let phi = slope(datum, &Degree::at_group(datum, lift.clone())?).0;
                stats.w_invariance += 1;
                if !elements.iter().all(|w| w.mul_vec_rat(&phi) == phi) {
                    failures.push(Failure::new(
                        NAME,
                        datum,
                        format!("full-group slope of {lift:?} moves under the Weyl group"),
                    ));
                }
            }
        }
    }
    Ok(stats)
}

/// Data pool for the slope sweep: low-rank simple data in both isogeny
/// forms plus small GL factors.
pub fn slope_pool(max_rank: usize) -> Vec<RootDatum> {
    let mut pool = sweep_data(max_rank.min(6));
    for k in 1..=max_rank.min(6) {
        pool.push(RootDatum::gl(k).expect("GL data are valid"));
    }
    pool
}

/// The reference-table laws over every family the rank budget reaches.
pub fn sweep_table(cfg: &VerifyConfig, failures: &mut Vec<Failure>) -> CliResult<usize> {
    const NAME: &str = "table_laws";
    let families = [SimpleType::A, SimpleType::B, SimpleType::C, SimpleType::D, SimpleType::E];
    let rows = computed_rows(&families, cfg.max_rank, cfg.orbit_cap, cfg.weyl_cap, cfg.mode)?;
    let cases = rows.len();
    for mismatch in check_rows(&rows) {
        failures.push(Failure {
            sweep: NAME.to_string(),
            datum: mismatch.split(':').next().unwrap_or("").to_string(),
            detail: mismatch,
        });
    }
    Ok(cases)
}

/// Run every sweep and assemble the report.
pub fn run(cfg: &VerifyConfig) -> CliResult<VerifyReport> {
    let mut failures = Vec::new();
    let mut sweeps = Vec::new();
    let mut record = |name: &str, cases: usize, failures: &[Failure]| {
        let failed = failures.iter().filter(|f| f.sweep == name).count();
        sweeps.push(SweepSummary { name: name.to_string(), cases, failures: failed });
    };

    let cases = sweep_oracle(cfg, &mut failures)?;
    record("oracle_equivalence", cases, &failures);

    let cases = sweep_uniqueness(cfg, &mut failures)?;
    record("uniqueness_certificate", cases, &failures);

    let cases = sweep_invariance(cfg, &mut failures)?;
    record("invariance_faithfulness", cases, &failures);

    let cases = sweep_stability(cfg, &mut failures)?;
    record("stability_equivalence", cases, &failures);

    let stats = slope_sweep(
        &slope_pool(cfg.max_rank),
        cfg.slope_iters,
        cfg.seed,
        cfg.mode,
        &mut failures,
    )?;
    record("slope_properties", stats.total(), &failures);

    let cases = sweep_table(cfg, &mut failures)?;
    record("table_laws", cases, &failures);

    Ok(VerifyReport { schema: 1, sweeps, failures })
}
