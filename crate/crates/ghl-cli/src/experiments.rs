//! Exploratory tabulations. Both experiments print computed values next to
//! a reference column and assert nothing: their questions are open, so the
//! output is data, not a verdict.

use std::sync::Arc;

use ghl_core::coeffmod::{GModule, Side};
use ghl_core::exactlinalg::{preimage_lattice, subquotient, FpAbGroup, FpHom, IntMatrix, Lattice};
use ghl_core::groups::FiniteGroup;
use ghl_core::homology::{homology_groups, BuildOptions, TheoryId};
use num_bigint::BigInt;

use crate::records::describe_factors;
use crate::run::{dense_rows, induced_transfer, TransferMap};
use crate::{failure, usage, CliResult};

/// Which trivial coefficient module the cyclic tabulation runs over.
#[derive(Debug, Clone, Copy)]
pub enum CyclicCoefficients {
    Integers,
    Modular(u64),
}

impl CyclicCoefficients {
    pub fn parse(spec: &str) -> CliResult<CyclicCoefficients> {
        if spec == "trivial:Z" {
            return Ok(CyclicCoefficients::Integers);
        }
        if let Some(m) = spec.strip_prefix("trivial:Z/") {
            let m: u64 = m
                .parse()
                .map_err(|_| usage(format!("invalid coefficient modulus '{m}'")))?;
            if m == 0 {
                return Err(usage("coefficient modulus must be positive".into()));
            }
            return Ok(CyclicCoefficients::Modular(m));
        }
        Err(usage(format!(
            "conjecture-cyclic runs over trivial coefficients only (trivial:Z or trivial:Z/N), got '{spec}'"
        )))
    }

    fn module(self, group: Arc<FiniteGroup>) -> GModule {
        match self {
            CyclicCoefficients::Integers => GModule::trivial_z(group, Side::Left),
            CyclicCoefficients::Modular(m) => GModule::trivial_zmod(group, m, Side::Left),
        }
    }

    fn describe(self) -> String {
        match self {
            CyclicCoefficients::Integers => "trivial:Z".to_string(),
            CyclicCoefficients::Modular(m) => format!("trivial:Z/{m}"),
        }
    }
}

/// Tabulates the top nonvanishing exterior homology of cyclic groups,
/// `H_{n-1}^λ(Z_n, A)`, next to the closed forms conjectured for it: `A/2A`
/// when `n` is even and `ker(n: A → A)` when `n` is odd. The agreement
/// column reports what the numbers say; nothing is asserted.
pub fn conjecture_cyclic_table(
    max_n: usize,
    coeffs: CyclicCoefficients,
    budget: usize,
) -> CliResult<String> {
    if !(2..=12).contains(&max_n) {
        return Err(usage(format!(
            "conjecture-cyclic tabulates n in 2..=12; --max-n {max_n} is out of range"
        )));
    }
    let opts = BuildOptions { budget };
    let mut out = String::new();
    out.push_str(&format!(
        "exterior homology of cyclic groups at the top degree, A = {}\n",
        coeffs.describe()
    ));
    out.push_str("n   H_(n-1)^λ(Z_n, A)   conjectured          agree\n");
    for n in 2..=max_n {
        let group = Arc::new(FiniteGroup::cyclic(n));
        let module = coeffs.module(group);
        let computed = homology_groups(TheoryId::ExtHomology, &module, n - 1, &opts)
            .map_err(|e| failure(format!("exterior homology of Z_{n} failed: {e}")))?
            .pop()
            .expect("requested degree is present");
        let conjectured = if n % 2 == 0 {
            quotient_by_scaling(module.underlying(), 2)
        } else {
            kernel_of_scaling(module.underlying(), n as u64)
        };
        let conj_label = if n % 2 == 0 { "A/2A" } else { "ker(n·)" };
        let agree = computed.invariant_factor_strings() == conjectured.invariant_factor_strings();
        out.push_str(&format!(
            "{:<3} {:<19} {:<20} {}\n",
            n,
            describe_factors(&computed.invariant_factor_strings()),
            format!(
                "{} = {}",
                conj_label,
                describe_factors(&conjectured.invariant_factor_strings())
            ),
            if agree { "yes" } else { "no" },
        ));
    }
    Ok(out)
}

/// `A/cA` of a finitely presented abelian group.
fn quotient_by_scaling(a: &Arc<FpAbGroup>, c: u64) -> FpAbGroup {
    let gens = a.gens();
    let mut rels: Vec<_> = a.relations().basis().to_vec();
    for col in IntMatrix::identity(gens).scale(&BigInt::from(c)).columns() {
        rels.push(col.clone());
    }
    FpAbGroup::from_relation_lattice(
        Lattice::from_generators(gens, rels, a.annihilator()),
        a.annihilator(),
    )
}

/// `ker(c: A → A)` of a finitely presented abelian group.
fn kernel_of_scaling(a: &Arc<FpAbGroup>, c: u64) -> FpAbGroup {
    let gens = a.gens();
    let scale = IntMatrix::identity(gens).scale(&BigInt::from(c));
    let cycles = preimage_lattice(&scale, a.relations(), a.annihilator());
    let (group, _) = subquotient(&cycles, a.relations(), a.annihilator())
        .expect("relations sit inside the kernel preimage");
    group
}

/// Tabulates cores∘res against multiplication by the index `[G:H]` on one
/// cohomology group. For the classical theory the equality is a theorem (and
/// separately enforced by the verification suite); for the symmetric and
/// exterior theories it is an open question, so the verdict column is
/// informational only. Equality is tested modulo the target's relations —
/// the printed matrix alone cannot answer it.
pub fn cores_res_index_table(
    module: &GModule,
    subgroup_elements: &[usize],
    theory: TheoryId,
    degree: usize,
    budget: usize,
    group_spec: &str,
    module_spec: &str,
) -> CliResult<String> {
    let (composite, subgroup_order, index) = induced_transfer(
        module,
        subgroup_elements,
        theory,
        TransferMap::CoresRes,
        degree,
        budget,
    )?;
    let scaled = FpHom::scaling(composite.source().clone(), &BigInt::from(index));
    let mut out = String::new();
    out.push_str(&format!(
        "cores∘res on {} degree {degree}, {group_spec} over {module_spec}, subgroup of order {subgroup_order} (index {index})\n",
        theory.as_str()
    ));
    out.push_str(&format!(
        "cohomology group: {}\n",
        describe_factors(&composite.source().invariant_factor_strings())
    ));
    out.push_str("composite matrix on cohomology classes:\n");
    for row in &dense_rows(composite.matrix()) {
        out.push_str(&format!("  [{}]\n", row.join(", ")));
    }
    out.push_str(&format!(
        "matches multiplication by the index: {}\n",
        if composite.eq_mod(&scaled) { "yes" } else { "no" }
    ));
    Ok(out)
}
