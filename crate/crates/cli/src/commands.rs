use std::io::Write;

use serde::Serialize;
use tck_core::betti::{betti_numbers, betti_numbers_taylor, check_theorem_bounds, euler_check, BettiTable};
use tck_core::groebner::{buchberger, first_failing_s_pair};
use tck_core::monomial::Monomial;
use tck_core::oracle::{verify_generator_set, OracleConfig, VerificationReport};
use tck_core::semigroup::validate_up_to_scaling;
use tck_core::tangent_cone::{tangent_cone_generators, GeneratorSet};

use crate::error::{CliError, EXIT_OK, EXIT_VERIFICATION};
use crate::report::{ComputeJson, SCHEMA_VERSION};

fn pass(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    let v: Vec<String> = items.into_iter().map(|t| t.to_string()).collect();
    if v.is_empty() {
        "-".to_string()
    } else {
        v.join(" ")
    }
}

fn write_generator_set(out: &mut impl Write, input: [i64; 3], scale: i64, gs: &GeneratorSet) -> std::io::Result<()> {
    let s = &gs.semigroup;
    let hd = &gs.herzog;
    if scale == 1 {
        writeln!(out, "semigroup  {s}")?;
    } else {
        writeln!(out, "semigroup  {s}  (<{},{},{}> divided by {scale})", input[0], input[1], input[2])?;
    }
    writeln!(out, "width      {}", s.width)?;
    writeln!(out, "case       {}", gs.case_tag)?;
    writeln!(
        out,
        "herzog     c = ({}, {}, {})  r12 = {}  r13 = {}  r21 = {}  r23 = {}  r31 = {}  r32 = {}",
        hd.c1, hd.c2, hd.c3, hd.r12, hd.r13, hd.r21, hd.r23, hd.r31, hd.r32
    )?;
    writeln!(out, "basis      w1 = {}  w2 = {}", hd.w1, hd.w2)?;
    if let Some((d1, d2)) = hd.deltas {
        writeln!(out, "deltas     ({d1}, {d2})")?;
    }
    if let Some((eta, eps)) = gs.eta_epsilon {
        writeln!(out, "eta/eps    {eta}/{eps}")?;
        writeln!(out, "A          {}", join(&gs.a_set))?;
        writeln!(out, "B          {}", join(&gs.b_set))?;
    }
    if let Some(h) = gs.homogeneous {
        writeln!(out, "alpha_h    {}  beta_h = {}", h.alpha_h, h.beta_h)?;
    }
    if let Some(b) = gs.branch {
        writeln!(out, "branch     {b:?}")?;
    }
    writeln!(out, "mu         {}", gs.mu())?;
    let width = gs.generators.iter().map(|g| g.form.to_string().len()).max().unwrap_or(0);
    for g in &gs.generators {
        writeln!(
            out,
            "  {:<width$}  {:<12}  witness {} = {}w1 {} {}w2",
            g.form.to_string(),
            g.provenance.to_string(),
            g.witness,
            g.coeffs.0,
            if g.coeffs.1 < 0 { '-' } else { '+' },
            g.coeffs.1.abs()
        )?;
    }
    for g in &gs.pruned {
        writeln!(out, "  pruned {} ({})", g.form, g.provenance)?;
    }
    Ok(())
}

fn write_verification(out: &mut impl Write, r: &VerificationReport) -> std::io::Result<()> {
    let o = &r.oracle;
    writeln!(out, "verification")?;
    writeln!(
        out,
        "  oracle     {}  N = {}  D = {}  forms = {}{}",
        pass(r.prediction_matches_oracle),
        o.coeff_bound,
        o.degree_cap,
        o.oracle_forms,
        if o.coverage_certified { "  complete" } else { "  incomplete" }
    )?;
    writeln!(out, "  groebner   {}  added = {}", pass(r.gb_certified), r.gb_added)?;
    writeln!(out, "  minimal    {}", pass(r.minimal))?;
    let m = &r.mu_bounds;
    write!(out, "  mu bound   {}  mu = {} <= {}", pass(m.passed()), m.mu, m.global_bound)?;
    match m.case_bound {
        Some(c) => writeln!(out, ", case bound {c}")?,
        None => writeln!(out)?,
    }
    match &r.theorem_bounds {
        Some(t) => writeln!(
            out,
            "  betti      {}  in(I*) = ({}, {}, {})  limits ({}, {}, {})",
            pass(t.passed()),
            t.betti.beta0,
            t.betti.beta1,
            t.betti.beta2,
            t.width + 1,
            3 * t.width - 3,
            2 * t.width - 3
        )?,
        None => writeln!(out, "  betti      FAIL  not evaluated")?,
    }
    let th = &r.threshold;
    if th.applies {
        writeln!(out, "  threshold  {}  n1 >= k = {}, mu should be {}", pass(th.ok), th.k, th.expected_mu)?;
    } else {
        writeln!(out, "  threshold  n/a  k = {}", th.k)?;
    }
    for n in &r.notes {
        writeln!(out, "  note: {n}")?;
    }
    writeln!(out, "status     {}", pass(r.passed()))
}

pub fn compute(
    out: &mut impl Write,
    triple: [i64; 3],
    json: bool,
    oracle: Option<&OracleConfig>,
) -> Result<i32, CliError> {
    let (s, scale) = validate_up_to_scaling(triple[0], triple[1], triple[2])?;
    let gs = tangent_cone_generators(&s)?;
    let report = oracle.map(|cfg| verify_generator_set(&s, &gs, cfg)).transpose()?;
    let ok = report.as_ref().is_none_or(VerificationReport::passed);
    if json {
        serde_json::to_writer_pretty(&mut *out, &ComputeJson::new(triple, scale, &gs, report))?;
        writeln!(out)?;
    } else {
        write_generator_set(out, triple, scale, &gs)?;
        if let Some(r) = &report {
            write_verification(out, r)?;
        }
    }
    Ok(if ok { EXIT_OK } else { EXIT_VERIFICATION })
}

#[derive(Serialize)]
struct GroebnerJson {
    schema_version: u32,
    semigroup: [i64; 3],
    case: String,
    generators: Vec<String>,
    criterion_holds: bool,
    failing_pair: Option<(String, String, String)>,
    degree_cap: u64,
    added: usize,
}

/// Runs Buchberger's criterion and a capped completion on the predicted
/// generators.
pub fn verify_gb(out: &mut impl Write, triple: [i64; 3], degree_cap: Option<u64>, json: bool) -> Result<i32, CliError> {
    let (s, _) = validate_up_to_scaling(triple[0], triple[1], triple[2])?;
    let gs = tangent_cone_generators(&s)?;
    let polys = gs.polynomials();
    let failing = first_failing_s_pair(&polys);
    let cap = degree_cap.unwrap_or(2 * gs.max_degree()).max(gs.max_degree());
    let added = buchberger(&polys, Some(cap))?.added_from_pairs;
    let ok = failing.is_none() && added == 0;
    if json {
        let doc = GroebnerJson {
            schema_version: SCHEMA_VERSION,
            semigroup: s.generators(),
            case: gs.case_tag.to_string(),
            generators: polys.iter().map(|p| p.to_string()).collect(),
            criterion_holds: failing.is_none(),
            failing_pair: failing
                .as_ref()
                .map(|(i, j, r)| (polys[*i].to_string(), polys[*j].to_string(), r.to_string())),
            degree_cap: cap,
            added,
        };
        serde_json::to_writer_pretty(&mut *out, &doc)?;
        writeln!(out)?;
    } else {
        writeln!(out, "semigroup  {s}")?;
        writeln!(out, "case       {}", gs.case_tag)?;
        for p in &polys {
            writeln!(out, "  {p}")?;
        }
        match &failing {
            None => writeln!(out, "criterion  pass  every S-pair reduces to zero")?,
            Some((i, j, r)) => {
                writeln!(out, "criterion  FAIL  S({}, {}) reduces to {r}", polys[*i], polys[*j])?
            }
        }
        writeln!(out, "completion {}  {added} element(s) added below degree {cap}", pass(added == 0))?;
    }
    Ok(if ok { EXIT_OK } else { EXIT_VERIFICATION })
}

/// Where `betti` takes its ideal from.
pub enum BettiSource {
    Triple([i64; 3]),
    Monomials(Vec<Monomial>),
}

#[derive(Serialize)]
struct BettiJson<'a> {
    schema_version: u32,
    generators: Vec<[u64; 3]>,
    betti: &'a BettiTable,
    taylor_agrees: Option<bool>,
    euler_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    bounds_ok: Option<bool>,
}

/// Parses `a,b,c` into `x^a y^b z^c`.
pub fn parse_monomial(text: &str) -> Result<Monomial, CliError> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let bad = || CliError::Monomial(text.to_string());
    let [a, b, c] = parts[..] else { return Err(bad()) };
    let e = |t: &str| t.parse::<u64>().map_err(|_| bad());
    Ok(Monomial([e(a)?, e(b)?, e(c)?]))
}

pub fn betti(out: &mut impl Write, source: BettiSource, taylor: bool, json: bool) -> Result<i32, CliError> {
    let (gens, bounds_ok) = match source {
        BettiSource::Triple([n1, n2, n3]) => {
            let (s, _) = validate_up_to_scaling(n1, n2, n3)?;
            let gs = tangent_cone_generators(&s)?;
            let report = check_theorem_bounds(&s, &gs)?;
            let gens: Vec<Monomial> = gs.generators.iter().map(|g| g.form.lead_term()).collect();
            (gens, Some(report.passed()))
        }
        BettiSource::Monomials(gens) => (gens, None),
    };
    let table = betti_numbers(&gens)?;
    let taylor_agrees = if taylor {
        Some(betti_numbers_taylor(&gens, None)? == table)
    } else {
        None
    };
    let euler_ok = euler_check(&gens, &table).is_none();
    let ok = euler_ok && taylor_agrees != Some(false) && bounds_ok != Some(false);
    if json {
        let doc = BettiJson {
            schema_version: SCHEMA_VERSION,
            generators: gens.iter().map(|m| m.0).collect(),
            betti: &table,
            taylor_agrees,
            euler_ok,
            bounds_ok,
        };
        serde_json::to_writer_pretty(&mut *out, &doc)?;
        writeln!(out)?;
    } else {
        writeln!(out, "ideal      ({})", gens.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(", "))?;
        writeln!(out, "betti      {} {} {}", table.beta0, table.beta1, table.beta2)?;
        for (m, i, n) in &table.multigraded {
            writeln!(out, "  beta_{i},{m} = {n}")?;
        }
        writeln!(out, "euler      {}", pass(euler_ok))?;
        if let Some(t) = taylor_agrees {
            writeln!(out, "taylor     {}", pass(t))?;
        }
        if let Some(b) = bounds_ok {
            writeln!(out, "bounds     {}", pass(b))?;
        }
    }
    Ok(if ok { EXIT_OK } else { EXIT_VERIFICATION })
}
