//! Computation pipelines behind the CLI commands: cached per-degree
//! (co)homology, induced restriction/corestriction maps, and orientation
//! reports.

use std::sync::Arc;
use std::time::Instant;

use ghl_core::coeffmod::GModule;
use ghl_core::complexes::{
    skew_lattices, subcomplex_from_lattices, vanishing_skew_lattices, ChainMapOfFp, ComplexOfFp,
};
use ghl_core::exactlinalg::{FpHom, IntMatrix, Lattice};
use ghl_core::groups::FiniteGroup;
use ghl_core::homology::{theory_complex, BuildOptions, TheoryId};
use ghl_core::transfer::SubgroupContext;
use rayon::prelude::*;
use serde::Serialize;

use crate::cache::Cache;
use crate::records::ComputeRecord;
use crate::{failure, CliResult};

/// A fully parsed compute request: one theory over one module, a degree
/// window, and display names for the records.
pub struct ComputeJob {
    pub theory: TheoryId,
    pub group: Arc<FiniteGroup>,
    pub group_spec: String,
    pub module: GModule,
    pub module_spec: String,
    pub lo: usize,
    pub hi: usize,
    pub budget: usize,
}

/// Runs a compute job: consults the cache per degree, builds the theory's
/// complex once for whatever degrees are missing, and returns one record per
/// degree in ascending order. Freshly computed records are written back to
/// the cache, so a later identical request replays them verbatim.
pub fn compute_records(job: &ComputeJob, cache: &Cache) -> CliResult<Vec<ComputeRecord>> {
    let keys: Vec<(usize, String)> = (job.lo..=job.hi)
        .map(|n| (n, Cache::key(job.theory.as_str(), &job.group, &job.module, n)))
        .collect();
    let mut records = Vec::new();
    let mut missing = Vec::new();
    for (n, key) in &keys {
        match cache.get(key) {
            Some(hit) => records.push(hit),
            None => missing.push(*n),
        }
    }
    if !missing.is_empty() {
        let max_missing = *missing.iter().max().expect("nonempty");
        let opts = BuildOptions { budget: job.budget };
        let built = Instant::now();
        let complex = theory_complex(job.theory, &job.module, max_missing, &opts)
            .map_err(|e| failure(format!("building the {} complex failed: {e}", job.theory.as_str())))?;
        let build_ms = built.elapsed().as_millis();
        let fresh: Vec<CliResult<ComputeRecord>> = missing
            .par_iter()
            .map(|&n| {
                let started = Instant::now();
                let space = complex.homology_at(n).map_err(|e| {
                    failure(format!(
                        "{} at degree {n} failed: {e}",
                        job.theory.as_str()
                    ))
                })?;
                // The shared window construction is charged to the degree
                // that forced its size.
                let mut runtime_ms = started.elapsed().as_millis();
                if n == max_missing {
                    runtime_ms += build_ms;
                }
                Ok(ComputeRecord {
                    theory: job.theory.as_str().to_string(),
                    group: job.group_spec.clone(),
                    module: job.module_spec.clone(),
                    degree: n,
                    invariant_factors: space.group.invariant_factor_strings(),
                    runtime_ms,
                })
            })
            .collect();
        for record in fresh {
            let record = record?;
            let key = &keys
                .iter()
                .find(|(n, _)| *n == record.degree)
                .expect("computed degree was requested")
                .1;
            cache.put(key, &record);
            records.push(record);
        }
    }
    records.sort_by_key(|r| r.degree);
    Ok(records)
}

/// Which induced map the `transfer` command should report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransferMap {
    Res,
    Cores,
    CoresRes,
}

impl std::str::FromStr for TransferMap {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "res" => Ok(TransferMap::Res),
            "cores" => Ok(TransferMap::Cores),
            "cores-res" => Ok(TransferMap::CoresRes),
            other => Err(format!(
                "unknown map '{other}'; expected res, cores, or cores-res"
            )),
        }
    }
}

impl TransferMap {
    pub fn as_str(self) -> &'static str {
        match self {
            TransferMap::Res => "res",
            TransferMap::Cores => "cores",
            TransferMap::CoresRes => "cores-res",
        }
    }
}

/// JSON report for one induced restriction/corestriction map on cohomology.
#[derive(Serialize)]
pub struct TransferReport {
    pub theory: String,
    pub group: String,
    pub subgroup_elements: Vec<usize>,
    pub subgroup_order: usize,
    pub index: usize,
    pub module: String,
    pub map: String,
    pub degree: usize,
    pub source_invariant_factors: Vec<String>,
    pub target_invariant_factors: Vec<String>,
    /// Dense matrix of the induced map on cohomology classes, row-major,
    /// entries as decimal strings.
    pub matrix: Vec<Vec<String>>,
}

/// Computes the induced map of `map_kind` on degree-`degree` cohomology of
/// `theory` for the pair (group of `module`, subgroup), along with the
/// subgroup order and index. Restriction and corestriction act on function
/// cochains; for the symmetric and exterior theories they are restricted to
/// the skew / vanishing-skew subcomplexes they provably preserve.
pub fn induced_transfer(
    module: &GModule,
    subgroup_elements: &[usize],
    theory: TheoryId,
    map_kind: TransferMap,
    degree: usize,
    budget: usize,
) -> CliResult<(FpHom, usize, usize)> {
    let ctx = SubgroupContext::new(module, subgroup_elements)
        .map_err(|e| failure(format!("subgroup context failed: {e}")))?;
    let top = degree + 1;
    let g_fm = ctx
        .group_model(top, budget)
        .map_err(|e| failure(format!("building the big-group cochain model failed: {e}")))?;
    let h_fm = ctx
        .subgroup_model(top, budget)
        .map_err(|e| failure(format!("building the subgroup cochain model failed: {e}")))?;
    let degrees = top + 1;
    let raw_res: Vec<IntMatrix> = (0..degrees).map(|n| ctx.restriction_matrix(n)).collect();
    let raw_tr: Vec<IntMatrix> = (0..degrees).map(|n| ctx.transfer_matrix(n)).collect();

    // Cut both models down to the subcomplex the theory lives on, restricting
    // the cochain-level maps to the numerator lattices.
    let (g_complex, h_complex, res_mats, tr_mats) = match theory {
        TheoryId::ClassicalCohomology => (
            Arc::new(g_fm.complex().clone()),
            Arc::new(h_fm.complex().clone()),
            raw_res,
            raw_tr,
        ),
        TheoryId::SymCohomology | TheoryId::ExtCohomology => {
            let (g_latt, h_latt) = if theory == TheoryId::SymCohomology {
                (skew_lattices(&g_fm), skew_lattices(&h_fm))
            } else {
                (vanishing_skew_lattices(&g_fm), vanishing_skew_lattices(&h_fm))
            };
            let g_parts = subcomplex_from_lattices(g_fm.complex(), &g_latt)
                .map_err(|e| failure(format!("big-group subcomplex failed: {e}")))?;
            let h_parts = subcomplex_from_lattices(h_fm.complex(), &h_latt)
                .map_err(|e| failure(format!("subgroup subcomplex failed: {e}")))?;
            let res = restrict_maps(&raw_res, &g_parts.numerators, &h_parts.numerators)?;
            let tr = restrict_maps(&raw_tr, &h_parts.numerators, &g_parts.numerators)?;
            (
                Arc::new(g_parts.complex),
                Arc::new(h_parts.complex),
                res,
                tr,
            )
        }
        other => {
            return Err(crate::usage(format!(
                "restriction/corestriction is defined for the cochain theories \
                 (classical-cohomology, sym-cohomology, ext-cohomology), not {}",
                other.as_str()
            )))
        }
    };

    let induced = induced_transfer_map(&g_complex, &h_complex, &res_mats, &tr_mats, map_kind, degree)?;
    Ok((induced, ctx.subgroup().order(), ctx.index()))
}

/// JSON-ready report of one induced restriction/corestriction map.
#[allow(clippy::too_many_arguments)]
pub fn transfer_report(
    module: &GModule,
    subgroup_elements: &[usize],
    theory: TheoryId,
    map_kind: TransferMap,
    degree: usize,
    budget: usize,
    group_spec: &str,
    module_spec: &str,
) -> CliResult<TransferReport> {
    let (induced, subgroup_order, index) =
        induced_transfer(module, subgroup_elements, theory, map_kind, degree, budget)?;
    Ok(TransferReport {
        theory: theory.as_str().to_string(),
        group: group_spec.to_string(),
        subgroup_elements: subgroup_elements.to_vec(),
        subgroup_order,
        index,
        module: module_spec.to_string(),
        map: map_kind.as_str().to_string(),
        degree,
        source_invariant_factors: induced.source().invariant_factor_strings(),
        target_invariant_factors: induced.target().invariant_factor_strings(),
        matrix: dense_rows(induced.matrix()),
    })
}

/// Builds the requested induced map on degree-`n` cohomology from validated
/// cochain maps.
fn induced_transfer_map(
    g_complex: &Arc<ComplexOfFp>,
    h_complex: &Arc<ComplexOfFp>,
    res_mats: &[IntMatrix],
    tr_mats: &[IntMatrix],
    map_kind: TransferMap,
    n: usize,
) -> CliResult<FpHom> {
    let res = || {
        ChainMapOfFp::new(g_complex.clone(), h_complex.clone(), res_mats.to_vec())
            .map_err(|e| failure(format!("restriction does not commute with coboundaries: {e}")))
    };
    let tr = || {
        ChainMapOfFp::new(h_complex.clone(), g_complex.clone(), tr_mats.to_vec())
            .map_err(|e| failure(format!("corestriction does not commute with coboundaries: {e}")))
    };
    let on_h = |map: ChainMapOfFp| {
        map.induced_on_homology(n)
            .map_err(|e| failure(format!("induced map on degree {n} failed: {e}")))
    };
    match map_kind {
        TransferMap::Res => on_h(res()?),
        TransferMap::Cores => on_h(tr()?),
        TransferMap::CoresRes => {
            let res_h = on_h(res()?)?;
            let cores_h = on_h(tr()?)?;
            cores_h
                .compose(&res_h)
                .map_err(|e| failure(format!("composing cores with res failed: {e}")))
        }
    }
}

/// Restricts each cochain-level matrix to the numerator lattices of the two
/// subcomplexes, verifying containment along the way.
fn restrict_maps(
    raw: &[IntMatrix],
    source: &[Lattice],
    target: &[Lattice],
) -> CliResult<Vec<IntMatrix>> {
    raw.iter()
        .zip(source.iter().zip(target.iter()))
        .map(|(m, (src, tgt))| {
            tgt.express_matrix(&m.mul(&src.basis_matrix())).ok_or_else(|| {
                failure("cochain map does not preserve the theory's subcomplex".to_string())
            })
        })
        .collect()
}

/// Row-major dense rendering with decimal-string entries.
pub fn dense_rows(m: &IntMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.entry(i, j).to_string()).collect())
        .collect()
}

/// JSON report for the `orientation` command.
#[derive(Serialize)]
pub struct OrientationReport {
    pub group: String,
    pub oriented: bool,
    /// One row per element: label, element order, and the sign the
    /// right-multiplication permutation carries.
    pub sign_character: Vec<SignRow>,
}

#[derive(Serialize)]
pub struct SignRow {
    pub element: String,
    pub order: usize,
    pub sign: i8,
}

pub fn orientation_report(group: &Arc<FiniteGroup>, group_spec: &str) -> OrientationReport {
    let sign_character = (0..group.order())
        .map(|g| SignRow {
            element: group.label(g).to_string(),
            order: group.element_order(g),
            sign: group.cayley_sign(g),
        })
        .collect();
    OrientationReport {
        group: group_spec.to_string(),
        oriented: group.is_oriented(),
        sign_character,
    }
}
