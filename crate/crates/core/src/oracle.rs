//! Brute-force ground truth for `I*`.
//!
//! The ideal of initial forms is generated by the initial forms of all
//! relations `a w1 + b w2`. The oracle enumerates these for `|a|, |b| <= N`,
//! keeps those of degree at most `D`, and compares the resulting ideal with a
//! predicted generating set by membership in both directions. None of the
//! case analysis of [`crate::tangent_cone`] is used here.

use std::collections::HashSet;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::betti::{check_theorem_bounds, check_threshold, TheoremBoundReport, ThresholdReport};
use crate::error::{GroebnerError, TangentConeError};
use crate::groebner::{buchberger, first_non_member, is_groebner_basis, ideal_member, Polynomial};
use crate::monomial::{binomial_of, initial_form, InitialForm, LatticeVector};
use crate::semigroup::{check_lattice_basis, CaseTag, Semigroup};
use crate::tangent_cone::{mu_bound_check, tangent_cone_generators, GeneratorSet, MuBoundReport};

pub const DEFAULT_COEFF_BOUND: i64 = 30;
/// Auto-raising `N` stops here; beyond it coverage is reported as uncertified.
pub const DEFAULT_COEFF_CEILING: i64 = 2000;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct OracleConfig {
    /// `N`: enumerate `|a|, |b| <= N`.
    pub coeff_bound: i64,
    /// `D`; `None` means twice the largest predicted generator degree.
    pub degree_cap: Option<u64>,
    /// Raise `N` until every relation with an initial form of degree `<= D`
    /// is enumerated, up to `coeff_ceiling`.
    pub auto_raise: bool,
    pub coeff_ceiling: i64,
    /// Also enumerate `(a, b)` with `gcd(a, b) > 1`.
    pub include_non_coprime: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            coeff_bound: DEFAULT_COEFF_BOUND,
            degree_cap: None,
            auto_raise: true,
            coeff_ceiling: DEFAULT_COEFF_CEILING,
            include_non_coprime: true,
        }
    }
}

/// Normalized initial forms of `a w1 + b w2` over `|a|, |b| <= coeff_bound`,
/// one vector per sign pair `+-v`, of degree at most `degree_cap`, without
/// duplicates and in a deterministic order.
pub fn enumerate_initial_forms(
    w1: &LatticeVector,
    w2: &LatticeVector,
    coeff_bound: i64,
    degree_cap: u64,
    include_non_coprime: bool,
) -> Vec<InitialForm> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for a in 0..=coeff_bound {
        let b_start = if a == 0 { 1 } else { -coeff_bound };
        for b in b_start..=coeff_bound {
            if !include_non_coprime && a.gcd(&b) != 1 {
                continue;
            }
            let v = LatticeVector::combine(a, w1, b, w2);
            let Ok(f) = binomial_of(&v) else { continue };
            let form = initial_form(&f).normalized();
            if form.degree() <= degree_cap && seen.insert(form) {
                out.push(form);
            }
        }
    }
    out.sort_by(|x, y| {
        x.degree()
            .cmp(&y.degree())
            .then_with(|| x.lead_term().cmp(&y.lead_term()))
            .then_with(|| format!("{x}").cmp(&format!("{y}")))
    });
    out
}

/// Coefficient bound that captures every relation whose initial form has
/// degree at most `degree`.
///
/// Such a relation has `|v|_1 <= degree (n1 + n3) / n1`, and Cramer's rule
/// gives `|a| <= |v| |w2| / |n|` and `|b| <= |v| |w1| / |n|`.
pub fn completeness_bound(s: &Semigroup, w1: &LatticeVector, w2: &LatticeVector, degree: u64) -> i64 {
    let norm = |v: [f64; 3]| v.iter().map(|c| c * c).sum::<f64>().sqrt();
    let as_f = |v: &LatticeVector| v.0.map(|c| c as f64);
    let n = norm(s.generators().map(|c| c as f64));
    let l1 = (degree as f64 * (s.n1 + s.n3) as f64 / s.n1 as f64).ceil();
    let a = l1 * norm(as_f(w2)) / n;
    let b = l1 * norm(as_f(w1)) / n;
    a.max(b).floor() as i64 + 1
}

/// Drops monomials divisible by another monomial of the list.
fn minimize(forms: &[InitialForm]) -> Vec<Polynomial> {
    let monomials: Vec<_> = forms
        .iter()
        .filter_map(|f| match f {
            InitialForm::Monomial(m) => Some(*m),
            InitialForm::Binomial(_) => None,
        })
        .collect();
    forms
        .iter()
        .filter(|f| match f {
            InitialForm::Monomial(m) => !monomials.iter().any(|o| o != m && o.divides(m)),
            InitialForm::Binomial(_) => true,
        })
        .map(Polynomial::from)
        .collect()
}

/// The two inclusions between the oracle ideal and a predicted ideal.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct OracleComparison {
    pub coeff_bound: i64,
    pub degree_cap: u64,
    /// `coeff_bound` reaches [`completeness_bound`] at `degree_cap`.
    pub coverage_certified: bool,
    pub oracle_forms: usize,
    /// Soundness: every oracle form lies in the predicted ideal.
    pub oracle_in_prediction: bool,
    /// Completeness: every predicted generator lies in the oracle ideal.
    pub prediction_in_oracle: bool,
    /// First oracle form outside the predicted ideal.
    pub missing: Option<String>,
    /// First predicted generator outside the oracle ideal.
    pub unsupported: Option<String>,
}

impl OracleComparison {
    pub fn matches(&self) -> bool {
        self.oracle_in_prediction && self.prediction_in_oracle
    }
}

/// Compares `predicted` with the oracle ideal of the lattice spanned by
/// `(w1, w2)`. `min_coeff_bound` is the largest witness coefficient, which
/// the enumeration is raised to cover.
pub fn compare_with_oracle(
    s: &Semigroup,
    w1: &LatticeVector,
    w2: &LatticeVector,
    predicted: &[Polynomial],
    min_coeff_bound: i64,
    cfg: &OracleConfig,
) -> Result<OracleComparison, TangentConeError> {
    check_lattice_basis(s, w1, w2)?;
    let max_degree = predicted.iter().map(Polynomial::degree).max().unwrap_or(0);
    let cap = cfg.degree_cap.unwrap_or(2 * max_degree).max(1);
    match compare_at(s, w1, w2, predicted, min_coeff_bound, cfg, cap) {
        Err(GroebnerError::CapTooSmall { .. } | GroebnerError::CapExceeded { .. }) => {
            Ok(compare_at(s, w1, w2, predicted, min_coeff_bound, cfg, 2 * cap)?)
        }
        other => Ok(other?),
    }
}

fn compare_at(
    s: &Semigroup,
    w1: &LatticeVector,
    w2: &LatticeVector,
    predicted: &[Polynomial],
    min_coeff_bound: i64,
    cfg: &OracleConfig,
    cap: u64,
) -> Result<OracleComparison, GroebnerError> {
    let needed = completeness_bound(s, w1, w2, cap);
    let mut coeff_bound = cfg.coeff_bound.max(min_coeff_bound);
    if cfg.auto_raise {
        coeff_bound = coeff_bound.max(needed.min(cfg.coeff_ceiling));
    }
    let forms = enumerate_initial_forms(w1, w2, coeff_bound, cap, cfg.include_non_coprime);
    let oracle = minimize(&forms);

    let gb_pred = buchberger(predicted, Some(cap))?;
    let missing = first_non_member(&oracle, &gb_pred)?;
    let gb_oracle = buchberger(&oracle, Some(cap))?;
    let unsupported = first_non_member(predicted, &gb_oracle)?;

    Ok(OracleComparison {
        coeff_bound,
        degree_cap: cap,
        coverage_certified: coeff_bound >= needed,
        oracle_forms: forms.len(),
        oracle_in_prediction: missing.is_none(),
        prediction_in_oracle: unsupported.is_none(),
        missing: missing.map(|i| oracle[i].to_string()),
        unsupported: unsupported.map(|i| predicted[i].to_string()),
    })
}

/// Everything checked about one semigroup.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub triple: (i64, i64, i64),
    pub case_tag: CaseTag,
    pub mu: usize,
    pub prediction_matches_oracle: bool,
    pub oracle: OracleComparison,
    /// Buchberger's criterion holds for the generators as given.
    pub gb_certified: bool,
    /// Elements the capped completion added; zero for a Groebner basis.
    pub gb_added: usize,
    /// No generator lies in the ideal of the others.
    pub minimal: bool,
    pub mu_bounds: MuBoundReport,
    pub theorem_bounds: Option<TheoremBoundReport>,
    pub threshold: ThresholdReport,
    pub bounds_pass: bool,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.prediction_matches_oracle && self.gb_certified && self.minimal && self.bounds_pass
    }
}

/// Whether dropping any single generator shrinks the ideal.
pub fn is_minimal_generating_set(gens: &[Polynomial]) -> Result<bool, GroebnerError> {
    for i in 0..gens.len() {
        let rest: Vec<Polynomial> = gens
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let gb = buchberger(&rest, Some(gens.iter().map(Polynomial::degree).max().unwrap_or(0)))?;
        if ideal_member(&gens[i], &gb)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Computes the predicted generators of `I*` and checks them against the
/// oracle, Buchberger's criterion, minimality and the numeric bounds.
pub fn verify_prediction(s: &Semigroup, cfg: &OracleConfig) -> Result<VerificationReport, TangentConeError> {
    let gs = tangent_cone_generators(s)?;
    verify_generator_set(s, &gs, cfg)
}

pub fn verify_generator_set(
    s: &Semigroup,
    gs: &GeneratorSet,
    cfg: &OracleConfig,
) -> Result<VerificationReport, TangentConeError> {
    let predicted = gs.polynomials();
    let (w1, w2) = gs.herzog.lattice_basis();
    let witness_bound = gs
        .generators
        .iter()
        .map(|g| g.coeffs.0.abs().max(g.coeffs.1.abs()))
        .max()
        .unwrap_or(0);
    let oracle = compare_with_oracle(s, &w1, &w2, &predicted, witness_bound, cfg)?;

    let mut notes = Vec::new();
    if let Some(m) = &oracle.missing {
        notes.push(format!("oracle form {m} is not in the predicted ideal"));
    }
    if let Some(u) = &oracle.unsupported {
        notes.push(format!("predicted generator {u} is not in the oracle ideal"));
    }
    if !oracle.coverage_certified {
        notes.push(format!(
            "enumeration bound {} below the completeness bound at degree {}",
            oracle.coeff_bound, oracle.degree_cap
        ));
    }
    if gs.zc3_supplemented() {
        notes.push("z^c3 kept alongside the g, h, p, q generators".to_string());
    }

    let gb_certified = is_groebner_basis(&predicted);
    let gb_added = buchberger(&predicted, Some(oracle.degree_cap))?.added_from_pairs;
    if !gb_certified {
        notes.push("generators fail Buchberger's criterion".to_string());
    }
    let minimal = is_minimal_generating_set(&predicted)?;
    if !minimal {
        notes.push("generating set is not minimal".to_string());
    }

    let mu_bounds = mu_bound_check(s, gs);
    let theorem_bounds = match check_theorem_bounds(s, gs) {
        Ok(r) => Some(r),
        Err(e) => {
            notes.push(format!("Betti bounds not evaluated: {e}"));
            None
        }
    };
    let threshold = check_threshold(s, gs);
    let bounds_pass =
        mu_bounds.passed() && theorem_bounds.as_ref().is_some_and(|t| t.passed()) && threshold.ok;

    Ok(VerificationReport {
        triple: s.triple(),
        case_tag: gs.case_tag,
        mu: gs.mu(),
        prediction_matches_oracle: oracle.matches(),
        oracle,
        gb_certified: gb_certified && gb_added == 0,
        gb_added,
        minimal,
        mu_bounds,
        theorem_bounds,
        threshold,
        bounds_pass,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::Monomial;
    use crate::semigroup::{compute_herzog_data, validate_up_to_scaling};

    fn semigroup(n1: i64, n2: i64, n3: i64) -> Semigroup {
        validate_up_to_scaling(n1, n2, n3).unwrap().0
    }

    #[test]
    fn enumeration_at_bound_one() {
        let s = semigroup(13, 20, 31);
        let hd = compute_herzog_data(&s).unwrap();
        let forms = enumerate_initial_forms(&hd.w1, &hd.w2, 1, 1000, true);
        let mut expected: Vec<InitialForm> = [(1, 0), (0, 1), (1, 1), (1, -1)]
            .iter()
            .map(|&(a, b)| {
                let v = LatticeVector::combine(a, &hd.w1, b, &hd.w2);
                initial_form(&binomial_of(&v).unwrap()).normalized()
            })
            .collect();
        expected.sort_by_key(|f| f.to_string());
        expected.dedup();
        let mut got = forms.clone();
        got.sort_by_key(|f| f.to_string());
        assert_eq!(got, expected);
    }

    #[test]
    fn enumeration_contains_generators() {
        let s = semigroup(13, 20, 31);
        let hd = compute_herzog_data(&s).unwrap();
        let forms = enumerate_initial_forms(&hd.w1, &hd.w2, 5, 1000, false);
        for m in [Monomial::new(0, 3, 1), Monomial::new(0, 7, 0), Monomial::new(0, 0, 3)] {
            assert!(forms.contains(&InitialForm::Monomial(m)), "{m}");
        }
    }

    #[test]
    fn examples_verify() {
        for t in [(20, 30, 37), (332, 345, 450), (13, 20, 31), (265, 280, 655)] {
            let r = verify_prediction(&semigroup(t.0, t.1, t.2), &OracleConfig::default()).unwrap();
            assert!(r.passed(), "{t:?}: {:?}", r.notes);
            assert!(r.oracle.coverage_certified, "{t:?}");
        }
    }

    #[test]
    fn dropping_a_generator_is_detected() {
        let s = semigroup(265, 280, 655);
        let mut gs = tangent_cone_generators(&s).unwrap();
        let z11 = InitialForm::Monomial(Monomial::new(0, 0, 11));
        gs.generators.retain(|g| g.form != z11);
        let r = verify_generator_set(&s, &gs, &OracleConfig::default()).unwrap();
        assert!(!r.prediction_matches_oracle);
        assert!(r.oracle.prediction_in_oracle);
        assert_eq!(r.oracle.missing.as_deref(), Some("z^11"));
    }
}
