//! Serialized views of a computation. Field order is part of the output
//! format, so golden files pin it.

use serde::Serialize;
use tck_core::betti::{check_theorem_bounds, check_threshold};
use tck_core::groebner::is_groebner_basis;
use tck_core::monomial::Monomial;
use tck_core::oracle::{verify_generator_set, OracleConfig, VerificationReport};
use tck_core::semigroup::{HerzogData, Semigroup};
use tck_core::tangent_cone::{
    mu_bound_check, tangent_cone_generators, Branch, GeneratorSet, HomogeneousCoeffs,
};

use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

pub const CSV_HEADER: &str = "n1,n2,n3,case,mu,s,beta0,beta1_in,beta2_in,gb_ok,oracle_ok,bounds_ok";

#[derive(Clone, Debug, Serialize)]
pub struct BinomialJson {
    pub plus: [u64; 3],
    pub minus: [u64; 3],
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessJson {
    pub form: String,
    pub provenance: String,
    pub vector: [i64; 3],
    /// Coordinates in the lattice basis `(w1, w2)`.
    pub coeffs: [i64; 2],
}

/// Output of `tck compute --json`.
#[derive(Clone, Debug, Serialize)]
pub struct ComputeJson {
    pub schema_version: u32,
    pub input: [i64; 3],
    pub scale: i64,
    pub semigroup: [i64; 3],
    pub width: i64,
    pub case: String,
    pub mu: usize,
    pub monomials: Vec<[u64; 3]>,
    pub binomial: Option<BinomialJson>,
    pub witnesses: Vec<WitnessJson>,
    pub pruned: Vec<String>,
    pub herzog: HerzogData,
    pub eta_epsilon: Option<[i64; 2]>,
    pub a_set: Vec<[i64; 2]>,
    pub b_set: Vec<[i64; 2]>,
    pub homogeneous: Option<HomogeneousCoeffs>,
    pub branch: Option<Branch>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationReport>,
}

fn exps(m: &Monomial) -> [u64; 3] {
    m.0
}

impl ComputeJson {
    pub fn new(input: [i64; 3], scale: i64, gs: &GeneratorSet, verification: Option<VerificationReport>) -> Self {
        let pairs = |v: &[tck_core::tangent_cone::IndexPair]| v.iter().map(|p| [p.first, p.second]).collect();
        ComputeJson {
            schema_version: SCHEMA_VERSION,
            input,
            scale,
            semigroup: gs.semigroup.generators(),
            width: gs.semigroup.width,
            case: gs.case_tag.to_string(),
            mu: gs.mu(),
            monomials: gs.monomials().iter().map(exps).collect(),
            binomial: gs.binomial().map(|b| BinomialJson {
                plus: exps(&b.plus),
                minus: exps(&b.minus),
            }),
            witnesses: gs
                .generators
                .iter()
                .map(|g| WitnessJson {
                    form: g.form.to_string(),
                    provenance: g.provenance.to_string(),
                    vector: g.witness.0,
                    coeffs: [g.coeffs.0, g.coeffs.1],
                })
                .collect(),
            pruned: gs.pruned.iter().map(|g| g.form.to_string()).collect(),
            herzog: gs.herzog,
            eta_epsilon: gs.eta_epsilon.map(|(e, f)| [e, f]),
            a_set: pairs(&gs.a_set),
            b_set: pairs(&gs.b_set),
            homogeneous: gs.homogeneous,
            branch: gs.branch,
            verification,
        }
    }
}

/// One sweep line. `oracle_ok` is `None` unless the oracle was run.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Row {
    pub n1: i64,
    pub n2: i64,
    pub n3: i64,
    pub case: String,
    pub mu: usize,
    pub s: i64,
    pub beta0: Option<usize>,
    pub beta1_in: Option<usize>,
    pub beta2_in: Option<usize>,
    pub gb_ok: bool,
    pub oracle_ok: Option<bool>,
    pub bounds_ok: bool,
}

#[derive(Serialize)]
struct RowJson<'a> {
    schema_version: u32,
    #[serde(flatten)]
    row: &'a Row,
}

impl Row {
    pub fn passed(&self) -> bool {
        self.gb_ok && self.bounds_ok && self.oracle_ok != Some(false)
    }

    pub fn to_csv(&self) -> String {
        fn opt<T: ToString>(v: Option<T>) -> String {
            v.map_or_else(|| "na".to_string(), |v| v.to_string())
        }
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            self.n1,
            self.n2,
            self.n3,
            self.case,
            self.mu,
            self.s,
            opt(self.beta0),
            opt(self.beta1_in),
            opt(self.beta2_in),
            self.gb_ok,
            opt(self.oracle_ok),
            self.bounds_ok
        )
    }

    pub fn to_jsonl(&self) -> String {
        serde_json::to_string(&RowJson {
            schema_version: SCHEMA_VERSION,
            row: self,
        })
        .expect("rows always serialize")
    }
}

/// Evaluates one semigroup. `input` is the triple as the user wrote it,
/// `s` its primitive form.
pub fn evaluate(input: [i64; 3], s: &Semigroup, oracle: Option<&OracleConfig>) -> Result<Row, CliError> {
    let gs = tangent_cone_generators(s)?;
    let (gb_ok, oracle_ok, bounds_ok, betti) = match oracle {
        Some(cfg) => {
            let r = verify_generator_set(s, &gs, cfg)?;
            let betti = r.theorem_bounds.as_ref().map(|t| t.betti.totals());
            (r.gb_certified && r.minimal, Some(r.prediction_matches_oracle), r.bounds_pass, betti)
        }
        None => {
            let gb_ok = is_groebner_basis(&gs.polynomials());
            let theorem = check_theorem_bounds(s, &gs).ok();
            let bounds_ok = mu_bound_check(s, &gs).passed()
                && theorem.as_ref().is_some_and(|t| t.passed())
                && check_threshold(s, &gs).ok;
            (gb_ok, None, bounds_ok, theorem.map(|t| t.betti.totals()))
        }
    };
    Ok(Row {
        n1: input[0],
        n2: input[1],
        n3: input[2],
        case: gs.case_tag.to_string(),
        mu: gs.mu(),
        s: s.width,
        beta0: betti.map(|b| b.0),
        beta1_in: betti.map(|b| b.1),
        beta2_in: betti.map(|b| b.2),
        gb_ok,
        oracle_ok,
        bounds_ok,
    })
}
