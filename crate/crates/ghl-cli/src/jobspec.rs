//! Parsers for the command-line specifier mini-language: groups, coefficient
//! modules, degree ranges, and subgroup selections.

use std::fs;
use std::sync::Arc;

use ghl_core::coeffmod::{GModule, ModuleDto, Side};
use ghl_core::groups::FiniteGroup;

use crate::{usage, CliResult};

/// Parses a group specifier: `cyclic:N`, `dihedral:N`, `sym:N`, `klein4`,
/// `q8`, or `file:PATH` pointing at a JSON multiplication table.
pub fn parse_group(spec: &str) -> CliResult<Arc<FiniteGroup>> {
    let group = match spec.split_once(':') {
        None => match spec {
            "klein4" => FiniteGroup::klein4(),
            "q8" => FiniteGroup::quaternion8(),
            other => {
                return Err(usage(format!(
                    "unknown group '{other}'; expected cyclic:N, dihedral:N, sym:N, klein4, q8, or file:PATH"
                )))
            }
        },
        Some(("cyclic", n)) => FiniteGroup::cyclic(parse_size(n, "cyclic order")?),
        Some(("dihedral", n)) => FiniteGroup::dihedral(parse_size(n, "dihedral parameter")?),
        Some(("sym", n)) => {
            let n = parse_size(n, "symmetric rank")?;
            if n > 6 {
                return Err(usage(format!(
                    "sym:{n} has order {}!, far beyond what exact homology can touch; the limit is sym:6",
                    n
                )));
            }
            FiniteGroup::symmetric(n)
        }
        Some(("file", path)) => {
            let text = fs::read_to_string(path)
                .map_err(|e| usage(format!("cannot read group file '{path}': {e}")))?;
            serde_json::from_str::<FiniteGroup>(&text)
                .map_err(|e| usage(format!("invalid group file '{path}': {e}")))?
        }
        Some((kind, _)) => {
            return Err(usage(format!(
                "unknown group kind '{kind}'; expected cyclic, dihedral, sym, or file"
            )))
        }
    };
    Ok(Arc::new(group))
}

/// Parses a module specifier over an already-parsed group: `trivial:Z`,
/// `trivial:Z/N`, `regular`, `augideal`, or `file:PATH` with a serialized
/// module presentation.
pub fn parse_module(spec: &str, group: &Arc<FiniteGroup>) -> CliResult<GModule> {
    match spec {
        "trivial:Z" => return Ok(GModule::trivial_z(group.clone(), Side::Left)),
        "regular" => return Ok(GModule::regular(group.clone(), Side::Left)),
        "augideal" => return Ok(GModule::augmentation_ideal(group.clone(), Side::Left)),
        _ => {}
    }
    if let Some(rest) = spec.strip_prefix("trivial:Z/") {
        let m = parse_size(rest, "coefficient modulus")?;
        return Ok(GModule::trivial_zmod(group.clone(), m as u64, Side::Left));
    }
    if let Some(path) = spec.strip_prefix("file:") {
        let text = fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read module file '{path}': {e}")))?;
        let dto: ModuleDto = serde_json::from_str(&text)
            .map_err(|e| usage(format!("invalid module file '{path}': {e}")))?;
        return dto
            .into_module(group.clone())
            .map_err(|e| usage(format!("module file '{path}' does not fit the group: {e}")));
    }
    Err(usage(format!(
        "unknown module '{spec}'; expected trivial:Z, trivial:Z/N, regular, augideal, or file:PATH"
    )))
}

/// Parses an inclusive degree range `a..b`, or a single degree `n`.
pub fn parse_degrees(spec: &str) -> CliResult<(usize, usize)> {
    if let Some((lo, hi)) = spec.split_once("..") {
        let lo = parse_size(lo, "degree")?;
        let hi = parse_size(hi, "degree")?;
        if lo > hi {
            return Err(usage(format!("empty degree range '{spec}'")));
        }
        Ok((lo, hi))
    } else {
        let n = parse_size(spec, "degree")?;
        Ok((n, n))
    }
}

/// Parses a subgroup selection into an element list: `gen:I[,J,...]` (the
/// subgroup generated by those element indices), `trivial`, or `all`.
pub fn parse_subgroup(spec: &str, group: &FiniteGroup) -> CliResult<Vec<usize>> {
    match spec {
        "trivial" => return Ok(vec![group.identity()]),
        "all" => return Ok((0..group.order()).collect()),
        _ => {}
    }
    let Some(list) = spec.strip_prefix("gen:") else {
        return Err(usage(format!(
            "unknown subgroup '{spec}'; expected gen:I[,J,...], trivial, or all"
        )));
    };
    let mut gens = Vec::new();
    for part in list.split(',') {
        let i = parse_size(part, "subgroup generator index")?;
        if i >= group.order() {
            return Err(usage(format!(
                "subgroup generator index {i} is outside the group of order {}",
                group.order()
            )));
        }
        gens.push(i);
    }
    group
        .subgroup_closure(&gens)
        .map_err(|e| usage(format!("subgroup closure failed: {e}")))
}

fn parse_size(text: &str, what: &str) -> CliResult<usize> {
    let text = text.trim();
    text.parse::<usize>()
        .map_err(|_| usage(format!("invalid {what} '{text}'")))
        .and_then(|n| {
            if n == 0 && what.contains("order") {
                Err(usage(format!("{what} must be positive")))
            } else {
                Ok(n)
            }
        })
}
