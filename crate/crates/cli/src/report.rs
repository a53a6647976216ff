//! Full analysis of one degree class, and its JSON/Markdown/LaTeX renderings.

use crate::{CliError, CliResult};
use levi_slope_core::lattice::{Int, IntVec};
use levi_slope_core::parabolic::{minimal_admissible, MinimalReduction};
use levi_slope_core::root_datum::{components_label, RootDatum};
use levi_slope_core::slope::{slope, Degree};
use levi_slope_core::stability::stability_verdict;
use levi_slope_core::weyl::ExecMode;
use levi_slope_core::weyl_rel::{
    degree_invariance_condition, relative_weyl, CoxeterComponent, RelativeWeylGroup,
};
use serde::Serialize;

#[derive(Serialize)]
pub struct Pi1Info {
    pub torsion_invariants: Vec<String>,
    pub free_rank: usize,
}

#[derive(Serialize)]
pub struct GroupInfo {
    pub name: String,
    pub lattice_rank: usize,
    pub num_simple_roots: usize,
    pub pi1: Pi1Info,
}

#[derive(Serialize)]
pub struct ClassInfo {
    /// Coordinates in the torsion factors of the component group.
    pub torsion: Vec<String>,
    /// Coordinates in the free factors.
    pub free: Vec<String>,
}

#[derive(Serialize)]
pub struct DegreeInfo {
    pub lift: Vec<i64>,
    pub class: ClassInfo,
}

#[derive(Serialize)]
pub struct MinimalParabolicInfo {
    /// Levi node set of the minimal admissible parabolic reduction, in
    /// 1-based Bourbaki numbering.
    pub nodes: Vec<usize>,
    /// Dynkin type of the Levi's semisimple part (`"1"` for the torus).
    pub levi_type: String,
    pub is_full_group: bool,
    /// Canonical lift of the distinguished degree at that parabolic.
    pub canonical_lift: Vec<i64>,
    /// For `GL_n`: per-block degrees of the Levi `GL_{n_1} x ... x GL_{n_k}`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gl_block_degrees: Option<Vec<i64>>,
}

#[derive(Serialize)]
pub struct WeylComponentInfo {
    pub family: char,
    pub rank: usize,
    pub order: String,
    pub reflections: usize,
}

#[derive(Serialize)]
pub struct RelativeWeylInfo {
    pub order: String,
    pub orbit_size: usize,
    /// Coxeter label of the action on the free degree quotient.
    pub label: String,
    /// The same label with each `B` factor renamed `C` (rank two and most
    /// lattice actions do not distinguish the pair; the folded form is the
    /// stable name).
    pub label_folded: String,
    pub components: Vec<WeylComponentInfo>,
    pub faithful: bool,
    pub generated_by_reflections: bool,
    /// Whether every element fixes the distinguished degree class.
    pub fixes_degree: bool,
}

#[derive(Serialize)]
pub struct TypeAFactorInfo {
    pub nodes: Vec<usize>,
    pub block_size: u64,
    pub degree_class: u64,
    pub coprime: bool,
}

#[derive(Serialize)]
pub struct StabilityInfo {
    pub exists_stable: bool,
    pub route_minimal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub route_type_a: Option<bool>,
    pub factors: Vec<TypeAFactorInfo>,
}

/// Everything the analysis computes for one degree class, in render order.
#[derive(Serialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub group: GroupInfo,
    pub degree: DegreeInfo,
    /// The slope of the class at the full group, entrywise as fractions.
    pub slope: Vec<String>,
    pub minimal_parabolic: MinimalParabolicInfo,
    pub relative_weyl: RelativeWeylInfo,
    pub stability: StabilityInfo,
    /// Wall time, present only when requested (kept out of the default
    /// output so repeated runs are byte-identical).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

fn int_to_i64(x: &Int) -> CliResult<i64> {
    i64::try_from(x).map_err(|_| CliError::failure("integer too large to report"))
}

fn ints_to_i64(v: &[Int]) -> CliResult<Vec<i64>> {
    v.iter().map(int_to_i64).collect()
}

/// Consecutive-coordinate block sums of a `GL_n` Levi lift: the nodes
/// partition `{0..n-1}` into runs, and each run of coordinates sums to the
/// degree of one `GL` block.
fn gl_block_degrees(n: usize, reduction: &MinimalReduction) -> CliResult<Vec<i64>> {
    let mut blocks = Vec::new();
    let mut current = Int::from(0);
    for i in 0..n {
        current += &reduction.degree.lift[i];
        let linked_next = i + 1 < n && reduction.parabolic.contains(i);
        if !linked_next {
            blocks.push(int_to_i64(&current)?);
            current = Int::from(0);
        }
    }
    Ok(blocks)
}

/// Fold `B` components to `C` and re-sort; the folded label is stable under
/// the frame-length convention used to split the two families.
pub fn folded_label(components: &[CoxeterComponent]) -> String {
    if components.is_empty() {
        return "1".to_string();
    }
    let mut parts: Vec<(char, usize)> = components
        .iter()
        .map(|c| (if c.family == 'B' { 'C' } else { c.family }, c.rank))
        .collect();
    parts.sort();
    parts
        .iter()
        .map(|(f, r)| format!("{f}{r}"))
        .collect::<Vec<_>>()
        .join(" x ")
}

/// Run the whole analysis for one group and lift.
pub fn analyze(
    datum: &RootDatum,
    lift: &IntVec,
    gl_rank: Option<usize>,
    orbit_cap: usize,
    weyl_cap: u128,
    mode: ExecMode,
    timed: bool,
) -> CliResult<AnalysisReport> {
    let start = std::time::Instant::now();
    let pi1 = datum.pi1();
    let (torsion, free) = pi1.class_coordinates(lift);

    let g_slope = slope(datum, &Degree::at_group(datum, lift.clone())?);
    let reduction = minimal_admissible(datum, lift)?;
    let rw: RelativeWeylGroup =
        relative_weyl(datum, &reduction.parabolic, orbit_cap, weyl_cap, mode)?;
    let fixes_degree = degree_invariance_condition(datum, &reduction, &rw);
    let verdict = stability_verdict(datum, lift)?;

    let nodes = reduction.parabolic.node_vec();
    let levi_type = components_label(&datum.classify_subset(&nodes)?);
    let block_degrees = match gl_rank {
        Some(n) => Some(gl_block_degrees(n, &reduction)?),
        None => None,
    };

    let report = AnalysisReport {
        schema: 1,
        group: GroupInfo {
            name: datum.name().to_string(),
            lattice_rank: datum.lattice_rank(),
            num_simple_roots: datum.num_simple_roots(),
            pi1: Pi1Info {
                torsion_invariants: pi1
                    .torsion_invariants()
                    .iter()
                    .map(Int::to_string)
                    .collect(),
                free_rank: pi1.free_rank(),
            },
        },
        degree: DegreeInfo {
            lift: ints_to_i64(lift)?,
            class: ClassInfo {
                torsion: torsion.iter().map(Int::to_string).collect(),
                free: free.iter().map(Int::to_string).collect(),
            },
        },
        slope: g_slope.0.iter().map(|q| q.to_string()).collect(),
        minimal_parabolic: MinimalParabolicInfo {
            nodes: crate::table::one_based(&nodes),
            levi_type,
            is_full_group: reduction.parabolic.is_full(datum),
            canonical_lift: ints_to_i64(&reduction.degree.lift)?,
            gl_block_degrees: block_degrees,
        },
        relative_weyl: RelativeWeylInfo {
            order: rw.order.to_string(),
            orbit_size: rw.orbit_size,
            label: rw.coxeter.label.clone(),
            label_folded: folded_label(&rw.coxeter.components),
            components: rw
                .coxeter
                .components
                .iter()
                .map(|c| WeylComponentInfo {
                    family: c.family,
                    rank: c.rank,
                    order: c.order.to_string(),
                    reflections: c.reflections,
                })
                .collect(),
            faithful: rw.coxeter.faithful,
            generated_by_reflections: rw.coxeter.generated_by_reflections,
            fixes_degree,
        },
        stability: StabilityInfo {
            exists_stable: verdict.exists_stable,
            route_minimal: verdict.route_minimal,
            route_type_a: verdict.route_type_a,
            factors: verdict
                .factors
                .iter()
                .map(|f| TypeAFactorInfo {
                    nodes: crate::table::one_based(&f.nodes),
                    block_size: f.block_size,
                    degree_class: f.degree_class,
                    coprime: f.coprime,
                })
                .collect(),
        },
        timing_ms: timed.then(|| start.elapsed().as_millis()),
    };
    Ok(report)
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let p = |out: &mut String, s: &str| {
            out.push_str(s);
            out.push('\n');
        };
        p(&mut out, &format!("# {}", self.group.name));
        p(&mut out, "");
        p(
            &mut out,
            &format!(
                "- lattice rank {}, {} simple roots; component group: torsion [{}], free rank {}",
                self.group.lattice_rank,
                self.group.num_simple_roots,
                self.group.pi1.torsion_invariants.join(", "),
                self.group.pi1.free_rank
            ),
        );
        p(
            &mut out,
            &format!(
                "- degree lift `{:?}`, class torsion ({}) free ({})",
                self.degree.lift,
                self.degree.class.torsion.join(", "),
                self.degree.class.free.join(", ")
            ),
        );
        p(&mut out, &format!("- slope: ({})", self.slope.join(", ")));
        p(&mut out, "");
        p(&mut out, "## Minimal parabolic reduction");
        p(&mut out, "");
        let mp = &self.minimal_parabolic;
        if mp.is_full_group {
            p(&mut out, "- the full group itself (no proper reduction)");
        } else {
            p(
                &mut out,
                &format!("- Levi nodes {:?}, type {}", mp.nodes, mp.levi_type),
            );
        }
        p(
            &mut out,
            &format!("- canonical degree lift `{:?}`", mp.canonical_lift),
        );
        if let Some(blocks) = &mp.gl_block_degrees {
            p(&mut out, &format!("- block degrees {blocks:?}"));
        }
        p(&mut out, "");
        p(&mut out, "## Relative Weyl group");
        p(&mut out, "");
        let rw = &self.relative_weyl;
        p(
            &mut out,
            &format!(
                "- order {}, type {} (folded: {})",
                rw.order, rw.label, rw.label_folded
            ),
        );
        p(
            &mut out,
            &format!(
                "- faithful on degree quotient: {}; generated by reflections: {}; fixes degree: {}",
                rw.faithful, rw.generated_by_reflections, rw.fixes_degree
            ),
        );
        p(&mut out, "");
        p(&mut out, "## Stability");
        p(&mut out, "");
        p(
            &mut out,
            &format!(
                "- stable objects exist: **{}**",
                self.stability.exists_stable
            ),
        );
        if let Some(tv) = self.stability.route_type_a {
            p(
                &mut out,
                &format!("- coprimality route agrees: {tv}"),
            );
            for f in &self.stability.factors {
                p(
                    &mut out,
                    &format!(
                        "  - block size {}, degree class {}, coprime: {}",
                        f.block_size, f.degree_class, f.coprime
                    ),
                );
            }
        }
        if let Some(ms) = self.timing_ms {
            p(&mut out, "");
            p(&mut out, &format!("_computed in {ms} ms_"));
        }
        out
    }

    pub fn to_latex(&self) -> String {
        let mut out = String::new();
        let esc = |s: &str| s.replace('_', "\\_");
        out.push_str("\\begin{tabular}{ll}\n");
        out.push_str("\\hline\n");
        out.push_str(&format!("group & ${}$ \\\\\n", esc(&self.group.name)));
        out.push_str(&format!(
            "degree lift & $({})$ \\\\\n",
            self.degree
                .lift
                .iter()
                .map(i64::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        ));
        out.push_str(&format!(
            "slope & $({})$ \\\\\n",
            self.slope
                .iter()
                .map(|q| latex_frac(q))
                .collect::<Vec<_>>()
                .join(", ")
        ));
        out.push_str(&format!(
            "Levi & ${}$ \\\\\n",
            latex_type(&self.minimal_parabolic.levi_type)
        ));
        out.push_str(&format!(
            "relative Weyl group & ${}$ (order ${}$) \\\\\n",
            latex_type(&self.relative_weyl.label),
            self.relative_weyl.order
        ));
        out.push_str(&format!(
            "stable objects & {} \\\\\n",
            if self.stability.exists_stable { "exist" } else { "none" }
        ));
        out.push_str("\\hline\n");
        out.push_str("\\end{tabular}\n");
        out
    }
}

/// `"p/q"` to `\frac{p}{q}`, integers unchanged.
fn latex_frac(q: &str) -> String {
    match q.split_once('/') {
        Some((num, den)) => format!("\\frac{{{num}}}{{{den}}}"),
        None => q.to_string(),
    }
}

/// `"A2 x A2"` to `A_{2} \times A_{2}`.
pub fn latex_type(label: &str) -> String {
    if label == "1" {
        return "1".to_string();
    }
    label
        .split(" x ")
        .map(|part| {
            let letter = &part[..1];
            let rank = &part[1..];
            format!("{letter}_{{{rank}}}")
        })
        .collect::<Vec<_>>()
        .join(" \\times ")
}
