//! Parsing of group and degree specifications from flags and JSON.

use crate::{CliError, CliResult};
use levi_slope_core::catalog::canonical_degree_lift;
use levi_slope_core::lattice::{Int, IntMatrix, IntVec};
use levi_slope_core::root_datum::{Isogeny, RootDatum, SimpleType};
use serde::Deserialize;
use std::path::Path;

/// A resolved group: the datum plus whether it is a plain `GL_n` (which
/// pins the `--degree k` convention to `k * e_n` and enables block-degree
/// reporting).
pub struct GroupSpec {
    pub datum: RootDatum,
    pub gl_rank: Option<usize>,
}

/// Parse a token like `B4` or `E7` into a simple type and rank.
pub fn parse_simple_token(token: &str) -> CliResult<(SimpleType, usize)> {
    let mut chars = token.chars();
    let letter = chars
        .next()
        .ok_or_else(|| CliError::bad_input("empty simple-type token"))?;
    let family = SimpleType::from_letter(letter.to_ascii_uppercase())
        .ok_or_else(|| CliError::bad_input(format!("unknown family letter {letter:?}")))?;
    let rank: usize = chars
        .as_str()
        .parse()
        .map_err(|_| CliError::bad_input(format!("bad rank in simple-type token {token:?}")))?;
    Ok((family, rank))
}

fn parse_isogeny(s: &str) -> CliResult<Isogeny> {
    match s {
        "adjoint" | "ad" => Ok(Isogeny::Adjoint),
        "simply_connected" | "sc" => Ok(Isogeny::SimplyConnected),
        other => Err(CliError::bad_input(format!(
            "unknown isogeny {other:?} (expected adjoint or simply_connected)"
        ))),
    }
}

/// One factor of a `--product` list: `GL<N>` or `<TYPE><RANK>[:<isogeny>]`
/// (isogeny defaults to adjoint).
fn parse_product_factor(token: &str) -> CliResult<RootDatum> {
    let token = token.trim();
    let upper = token.to_ascii_uppercase();
    if let Some(n) = upper.strip_prefix("GL") {
        let n: usize = n
            .parse()
            .map_err(|_| CliError::bad_input(format!("bad GL rank in factor {token:?}")))?;
        return Ok(RootDatum::gl(n)?);
    }
    let (head, isogeny) = match token.split_once(':') {
        Some((head, iso)) => (head, parse_isogeny(iso)?),
        None => (token, Isogeny::Adjoint),
    };
    let (family, rank) = parse_simple_token(head)?;
    Ok(RootDatum::simple(family, rank, isogeny)?)
}

/// Resolve the group selection flags into a datum.
pub fn resolve_group(
    gl: Option<usize>,
    simple: Option<&str>,
    isogeny: &str,
    product: Option<&str>,
    datum_json: Option<&Path>,
) -> CliResult<GroupSpec> {
    match (gl, simple, product, datum_json) {
        (Some(n), None, None, None) => {
            Ok(GroupSpec { datum: RootDatum::gl(n)?, gl_rank: Some(n) })
        }
        (None, Some(token), None, None) => {
            let (family, rank) = parse_simple_token(token)?;
            let datum = RootDatum::simple(family, rank, parse_isogeny(isogeny)?)?;
            Ok(GroupSpec { datum, gl_rank: None })
        }
        (None, None, Some(list), None) => {
            let mut factors = list
                .split(',')
                .map(parse_product_factor)
                .collect::<CliResult<Vec<_>>>()?;
            if factors.is_empty() {
                return Err(CliError::bad_input("empty product specification"));
            }
            let mut datum = factors.remove(0);
            for f in &factors {
                datum = RootDatum::product(&datum, f)?;
            }
            Ok(GroupSpec { datum, gl_rank: None })
        }
        (None, None, None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                CliError::bad_input(format!("cannot read {}: {e}", path.display()))
            })?;
            let schema: DatumSchema = serde_json::from_str(&text)
                .map_err(|e| CliError::bad_input(format!("bad datum JSON: {e}")))?;
            let datum = schema.build()?;
            let gl_rank = schema.plain_gl_rank();
            Ok(GroupSpec { datum, gl_rank })
        }
        _ => Err(CliError::bad_input(
            "exactly one of --gl, --simple, --product, --datum-json must be given",
        )),
    }
}

/// JSON description of a root datum.
///
/// ```json
/// { "builder": "simple", "type": "B", "rank": 4, "isogeny": "adjoint" }
/// { "builder": "gl", "n": 6 }
/// { "builder": "product", "factors": [ ... ] }
/// { "builder": "explicit", "coroots": [[..]], "roots": [[..]] }
/// ```
///
/// Explicit coroots are given as columns (one inner list per coroot) and
/// roots as rows (one inner list per root covector); both are validated
/// against all datum invariants before use.
#[derive(Deserialize)]
pub struct DatumSchema {
    pub builder: String,
    #[serde(rename = "type")]
    pub family: Option<String>,
    pub rank: Option<usize>,
    pub isogeny: Option<String>,
    pub n: Option<usize>,
    pub factors: Option<Vec<DatumSchema>>,
    pub coroots: Option<Vec<Vec<i64>>>,
    pub roots: Option<Vec<Vec<i64>>>,
}

impl DatumSchema {
    pub fn build(&self) -> CliResult<RootDatum> {
        match self.builder.as_str() {
            "simple" => {
                let family = self
                    .family
                    .as_deref()
                    .ok_or_else(|| CliError::bad_input("simple builder needs \"type\""))?;
                let rank = self
                    .rank
                    .ok_or_else(|| CliError::bad_input("simple builder needs \"rank\""))?;
                let isogeny = parse_isogeny(self.isogeny.as_deref().unwrap_or("adjoint"))?;
                let mut chars = family.chars();
                let letter = chars
                    .next()
                    .filter(|_| chars.next().is_none())
                    .ok_or_else(|| {
                        CliError::bad_input(format!("\"type\" must be a single letter, got {family:?}"))
                    })?;
                let family = SimpleType::from_letter(letter.to_ascii_uppercase())
                    .ok_or_else(|| CliError::bad_input(format!("unknown family {letter:?}")))?;
                Ok(RootDatum::simple(family, rank, isogeny)?)
            }
            "gl" => {
                let n = self
                    .n
                    .ok_or_else(|| CliError::bad_input("gl builder needs \"n\""))?;
                Ok(RootDatum::gl(n)?)
            }
            "product" => {
                let factors = self
                    .factors
                    .as_ref()
                    .ok_or_else(|| CliError::bad_input("product builder needs \"factors\""))?;
                if factors.is_empty() {
                    return Err(CliError::bad_input("product of zero factors"));
                }
                let mut datum = factors[0].build()?;
                for f in &factors[1..] {
                    datum = RootDatum::product(&datum, &f.build()?)?;
                }
                Ok(datum)
            }
            "explicit" => {
                let coroots = self
                    .coroots
                    .as_ref()
                    .ok_or_else(|| CliError::bad_input("explicit builder needs \"coroots\""))?;
                let roots = self
                    .roots
                    .as_ref()
                    .ok_or_else(|| CliError::bad_input("explicit builder needs \"roots\""))?;
                let n = coroots
                    .first()
                    .map(Vec::len)
                    .ok_or_else(|| CliError::bad_input("explicit datum has no coroots"))?;
                let cols: Vec<IntVec> = coroots
                    .iter()
                    .map(|c| c.iter().map(|&e| Int::from(e)).collect())
                    .collect();
                for c in &cols {
                    if c.len() != n {
                        return Err(CliError::bad_input("ragged coroot list"));
                    }
                }
                let coroot_matrix = IntMatrix::from_cols(n, &cols);
                let root_matrix = IntMatrix::from_rows(roots);
                Ok(RootDatum::new("explicit", coroot_matrix, root_matrix)?)
            }
            other => Err(CliError::bad_input(format!("unknown builder {other:?}"))),
        }
    }

    fn plain_gl_rank(&self) -> Option<usize> {
        if self.builder == "gl" {
            self.n
        } else {
            None
        }
    }
}

/// Resolve the degree flags into a lift vector.
pub fn resolve_degree(
    spec: &GroupSpec,
    degree_lift: Option<&str>,
    degree: Option<i64>,
) -> CliResult<IntVec> {
    match (degree_lift, degree) {
        (Some(csv), None) => {
            let lift: Vec<Int> = csv
                .split(',')
                .map(|tok| {
                    tok.trim()
                        .parse::<i64>()
                        .map(Int::from)
                        .map_err(|_| CliError::bad_input(format!("bad lift entry {tok:?}")))
                })
                .collect::<CliResult<_>>()?;
            if lift.len() != spec.datum.lattice_rank() {
                return Err(CliError::bad_input(format!(
                    "lift has {} entries but the lattice has rank {}",
                    lift.len(),
                    spec.datum.lattice_rank()
                )));
            }
            Ok(lift)
        }
        (None, Some(k)) => {
            if let Some(n) = spec.gl_rank {
                // Degree k of GL_n means the lift k * e_n.
                let mut lift = vec![Int::from(0); n];
                lift[n - 1] = Int::from(k);
                Ok(lift)
            } else {
                Ok(canonical_degree_lift(&spec.datum, k)?)
            }
        }
        _ => Err(CliError::bad_input(
            "exactly one of --degree-lift, --degree must be given",
        )),
    }
}
