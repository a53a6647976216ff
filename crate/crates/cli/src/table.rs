//! The Levi/relative-Weyl table over simple adjoint groups: computed rows,
//! the expected reference rows, and their comparison.
//!
//! Each row is one nonzero class of the component group of an adjoint
//! simple group (degree zero always reduces to the Borel and is omitted).
//! Simply connected forms have no nonzero classes, so adjoint forms carry
//! the whole table.

use crate::report::folded_label;
use crate::{CliError, CliResult};
use levi_slope_core::catalog::nonzero_torsion_class_lifts;
use levi_slope_core::lattice::Int;
use levi_slope_core::parabolic::minimal_admissible;
use levi_slope_core::root_datum::{components_label, Isogeny, RootDatum, SimpleType};
use levi_slope_core::weyl::ExecMode;
use levi_slope_core::num::integer::gcd;
use levi_slope_core::weyl_rel::relative_weyl;
use serde::Serialize;

#[derive(Clone, Serialize)]
pub struct TableRow {
    pub family: char,
    pub rank: usize,
    /// Torsion coordinates of the class in the component group.
    pub class: Vec<String>,
    /// Levi node set of the minimal parabolic (1-based Bourbaki numbering).
    pub levi_nodes: Vec<usize>,
    pub levi_type: String,
    /// Folded Coxeter label of the relative Weyl group (`B` merged into `C`;
    /// most degree-quotient actions do not distinguish the pair).
    pub weyl_type: String,
    /// Raw label before folding, as identified from the invariant form.
    pub weyl_type_raw: String,
    pub weyl_order: String,
}

/// Rank range of one family letter, clipped to `max_rank`.
fn rank_range(family: SimpleType, max_rank: usize) -> Vec<usize> {
    let (lo, hi) = match family {
        SimpleType::A => (1, usize::MAX),
        SimpleType::B | SimpleType::C => (2, usize::MAX),
        SimpleType::D => (4, usize::MAX),
        SimpleType::E => (6, 8),
        SimpleType::F => (4, 4),
        SimpleType::G => (2, 2),
    };
    (lo..=hi.min(max_rank)).collect()
}

pub fn parse_families(families: &str) -> CliResult<Vec<SimpleType>> {
    let mut out = Vec::new();
    for token in families.split(',') {
        let token = token.trim();
        let mut chars = token.chars();
        let (Some(letter), None) = (chars.next(), chars.next()) else {
            return Err(CliError::bad_input(format!(
                "families must be single letters, got {token:?}"
            )));
        };
        let family = SimpleType::from_letter(letter.to_ascii_uppercase())
            .ok_or_else(|| CliError::bad_input(format!("unknown family letter {letter:?}")))?;
        if !out.contains(&family) {
            out.push(family);
        }
    }
    Ok(out)
}

/// Shift a node set from internal 0-based indices to the 1-based Bourbaki
/// numbering used in all output.
pub(crate) fn one_based(nodes: &[usize]) -> Vec<usize> {
    nodes.iter().map(|&i| i + 1).collect()
}

/// Compute the table rows for the given families up to `max_rank`.
pub fn computed_rows(
    families: &[SimpleType],
    max_rank: usize,
    orbit_cap: usize,
    weyl_cap: u128,
    mode: ExecMode,
) -> CliResult<Vec<TableRow>> {
    let mut rows = Vec::new();
    for &family in families {
        for rank in rank_range(family, max_rank) {
            let datum = RootDatum::simple(family, rank, Isogeny::Adjoint)?;
            let pi1 = datum.pi1();
            for lift in nonzero_torsion_class_lifts(&datum) {
                let (torsion, _) = pi1.class_coordinates(&lift);
                let reduction = minimal_admissible(&datum, &lift)?;
                let nodes = reduction.parabolic.node_vec();
                let levi_type = components_label(&datum.classify_subset(&nodes)?);
                let rw =
                    relative_weyl(&datum, &reduction.parabolic, orbit_cap, weyl_cap, mode)?;
                rows.push(TableRow {
                    family: family.letter(),
                    rank,
                    class: torsion.iter().map(Int::to_string).collect(),
                    levi_nodes: one_based(&nodes),
                    levi_type,
                    weyl_type: folded_label(&rw.coxeter.components),
                    weyl_type_raw: rw.coxeter.label.clone(),
                    weyl_order: rw.order.to_string(),
                });
            }
        }
    }
    Ok(rows)
}

/// Format a label made of `count` copies of `A{rank}`; `"1"` when empty.
fn power_label(letter: char, rank: usize, count: usize) -> String {
    if count == 0 || rank == 0 {
        return "1".to_string();
    }
    vec![format!("{letter}{rank}"); count].join(" x ")
}

/// Fold a single family letter and rank to the stable comparison form:
/// `B` merges into `C`, and every rank-one factor is `A1`.
fn folded_factor(letter: char, rank: usize) -> String {
    if rank == 1 {
        "A1".to_string()
    } else if letter == 'B' {
        format!("C{rank}")
    } else {
        format!("{letter}{rank}")
    }
}

/// The expected `(levi_type, weyl_type)` multiset for one adjoint family
/// member — the reference table in closed form, one pair per nonzero class.
///
/// Families with trivial component group (E_8, F_4, G_2) return no pairs.
pub fn expected_pairs(family: SimpleType, rank: usize) -> Vec<(String, String)> {
    match family {
        SimpleType::A => {
            // The group is the projectivization of GL_{rank+1}; class d has
            // e = gcd(rank+1, d) blocks.
            let n = rank + 1;
            (1..n)
                .map(|d| {
                    let e = gcd(n, d);
                    let m = n / e;
                    let levi = if m >= 2 {
                        power_label('A', m - 1, e)
                    } else {
                        "1".to_string()
                    };
                    let weyl = if e >= 2 {
                        folded_factor('A', e - 1)
                    } else {
                        "1".to_string()
                    };
                    (levi, weyl)
                })
                .collect()
        }
        SimpleType::B => {
            // One nonzero class: Levi on the short node; the group permutes
            // and flips the remaining rank-1 coordinates.
            vec![("A1".to_string(), folded_factor('C', rank - 1))]
        }
        SimpleType::C => {
            // One nonzero class: Levi A_1 on every other node.
            let half = rank / 2;
            vec![(
                power_label('A', 1, rank - half),
                if half >= 1 { folded_factor('C', half) } else { "1".to_string() },
            )]
        }
        SimpleType::D => {
            let half = rank / 2;
            if rank.is_multiple_of(2) {
                // Component group of order four with three nonzero classes:
                // the two spin classes take Levi A_1^{rank/2}, the vector
                // class takes the fork pair A_1^2 and the full signed
                // permutation group on the remaining rank-2 coordinates.
                vec![
                    (power_label('A', 1, half), folded_factor('C', half)),
                    (power_label('A', 1, half), folded_factor('C', half)),
                    (power_label('A', 1, 2), folded_factor('C', rank - 2)),
                ]
            } else {
                // Cyclic component group of order four: the two generator
                // classes take Levi A_1^{(rank-3)/2} x A_3, the order-two
                // class again takes the fork pair.
                let spin_levi = if half >= 2 {
                    format!("{} x A3", power_label('A', 1, half - 1))
                } else {
                    "A3".to_string()
                };
                let spin_weyl = if half >= 2 {
                    folded_factor('C', half - 1)
                } else {
                    "1".to_string()
                };
                vec![
                    (spin_levi.clone(), spin_weyl.clone()),
                    (spin_levi, spin_weyl),
                    (power_label('A', 1, 2), folded_factor('C', rank - 2)),
                ]
            }
        }
        SimpleType::E => match rank {
            6 => vec![
                ("A2 x A2".to_string(), "G2".to_string()),
                ("A2 x A2".to_string(), "G2".to_string()),
            ],
            7 => vec![(power_label('A', 1, 3), "F4".to_string())],
            _ => Vec::new(),
        },
        SimpleType::F | SimpleType::G => Vec::new(),
    }
}

/// Compare computed rows against the expected pairs, per (family, rank), as
/// multisets — the labeling of the classes of an order-four component group
/// depends on the generator choice, so rows within one group may permute.
/// Returns a list of human-readable mismatches (empty when the table is
/// reproduced exactly).
pub fn check_rows(rows: &[TableRow]) -> Vec<String> {
    use std::collections::BTreeMap;
    let mut by_group: BTreeMap<(char, usize), Vec<(String, String)>> = BTreeMap::new();
    for row in rows {
        by_group
            .entry((row.family, row.rank))
            .or_default()
            .push((row.levi_type.clone(), row.weyl_type.clone()));
    }
    let mut mismatches = Vec::new();
    for ((letter, rank), mut got) in by_group {
        let family = SimpleType::from_letter(letter).expect("rows carry valid letters");
        let mut want = expected_pairs(family, rank);
        got.sort();
        want.sort();
        if got != want {
            mismatches.push(format!(
                "{letter}{rank}: computed {got:?}, expected {want:?}"
            ));
        }
    }
    mismatches
}

pub fn to_json(rows: &[TableRow]) -> String {
    #[derive(Serialize)]
    struct Doc<'a> {
        schema: u32,
        rows: &'a [TableRow],
    }
    let mut s = serde_json::to_string_pretty(&Doc { schema: 1, rows }).expect("rows serialize");
    s.push('\n');
    s
}

pub fn to_markdown(rows: &[TableRow]) -> String {
    let mut out = String::new();
    out.push_str("| group | class | Levi nodes | Levi type | relative Weyl | order |\n");
    out.push_str("|---|---|---|---|---|---|\n");
    for r in rows {
        out.push_str(&format!(
            "| {}{} | ({}) | {:?} | {} | {} | {} |\n",
            r.family,
            r.rank,
            r.class.join(","),
            r.levi_nodes,
            r.levi_type,
            r.weyl_type,
            r.weyl_order
        ));
    }
    out
}

pub fn to_latex(rows: &[TableRow]) -> String {
    let mut out = String::new();
    out.push_str("\\begin{tabular}{llllll}\n\\hline\n");
    out.push_str("group & class & Levi nodes & Levi & $W_{M,G}$ & order \\\\\n\\hline\n");
    for r in rows {
        out.push_str(&format!(
            "${}_{{{}}}$ & $({})$ & $\\{{{}\\}}$ & ${}$ & ${}$ & ${}$ \\\\\n",
            r.family,
            r.rank,
            r.class.join(","),
            r.levi_nodes
                .iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(","),
            crate::report::latex_type(&r.levi_type),
            crate::report::latex_type(&r.weyl_type),
            r.weyl_order
        ));
    }
    out.push_str("\\hline\n\\end{tabular}\n");
    out
}
