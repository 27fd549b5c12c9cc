//! Minimal generators of the tangent cone ideal `I*`.
//!
//! Five of the eight cases have a fixed shape with two or three generators.
//! The remaining three (`CI_R21_ZERO`, `CI_R12_ZERO_GT`, `NCI_GT`) share one
//! construction once the basis is written as
//!
//! ```text
//! w1 = ( c1, -r12, -r13)        w2 = (-r21, c2, -r23)
//! ```
//!
//! (`r21 = 0, r23 = c3` in the first case and `r12 = 0, r13 = c3` in the
//! second). With `delta = (c1 - r12 - r13, c2 - r21 - r23)` the generators are
//! initial forms of `alpha w1 - beta w2` for a few explicit index families:
//!
//! ```text
//! p(alpha, beta)  = y^{alpha r12 + beta c2} z^{alpha r13 - beta r23}
//! q(gamma, sigma) = x^{gamma c1 + sigma r21} z^{sigma r23 - gamma r13}
//! g               = y^{eta r12 + epsilon c2}
//! h               = y^{b/d} - x^{(b-a)/d} z^{a/d}
//! ```

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::TangentConeError;
use crate::fraction::{min_fraction_in_interval, phi, Fraction};
use crate::groebner::{buchberger, ideal_member, Polynomial};
use crate::monomial::{binomial_of, initial_form, Binomial, InitialForm, LatticeVector, Monomial};
use crate::semigroup::{
    compute_herzog_data, coordinates, homogeneous_part, homogeneous_vector, CaseTag, HerzogData,
    Semigroup,
};

/// `(alpha, beta)` for the `A` family, `(gamma, sigma)` for `B`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IndexPair {
    pub first: i64,
    pub second: i64,
}

impl IndexPair {
    pub fn new(first: i64, second: i64) -> Self {
        IndexPair { first, second }
    }
}

impl fmt::Display for IndexPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.first, self.second)
    }
}

/// Coordinates of the homogeneous relation: `w_h = -alpha_h w1 + beta_h w2`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct HomogeneousCoeffs {
    pub alpha_h: i64,
    pub beta_h: i64,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Provenance {
    G { eta: i64, epsilon: i64 },
    H,
    P { alpha: i64, beta: i64 },
    Q { gamma: i64, sigma: i64 },
    /// `z^{c3}`
    ZC3,
    /// `y^{c2}`
    YC2,
    /// `y^{r12} z^{r13}`
    YRZ,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::G { eta, epsilon } => write!(f, "g[{eta}/{epsilon}]"),
            Provenance::H => write!(f, "h"),
            Provenance::P { alpha, beta } => write!(f, "p[{alpha},{beta}]"),
            Provenance::Q { gamma, sigma } => write!(f, "q[{gamma},{sigma}]"),
            Provenance::ZC3 => write!(f, "z^c3"),
            Provenance::YC2 => write!(f, "y^c2"),
            Provenance::YRZ => write!(f, "y^r12 z^r13"),
        }
    }
}

/// One generator together with the lattice vector it is the initial form of.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Generator {
    /// Normalized: binomials carry their revlex lead term first.
    pub form: InitialForm,
    pub provenance: Provenance,
    pub witness: LatticeVector,
    /// `witness = coeffs.0 * w1 + coeffs.1 * w2`
    pub coeffs: (i64, i64),
}

impl Generator {
    pub fn degree(&self) -> u64 {
        self.form.degree()
    }

    pub fn polynomial(&self) -> Polynomial {
        Polynomial::from(&self.form)
    }
}

/// Which of `g` and `h` the construction keeps.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Branch {
    /// `beta_h > epsilon`
    G,
    /// `beta_h <= epsilon`
    H,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GeneratorSet {
    pub semigroup: Semigroup,
    pub herzog: HerzogData,
    pub case_tag: CaseTag,
    /// Minimal generators, ordered by degree then revlex.
    pub generators: Vec<Generator>,
    /// Candidates dropped because they lie in the ideal of the others.
    pub pruned: Vec<Generator>,
    pub eta_epsilon: Option<(i64, i64)>,
    pub a_set: Vec<IndexPair>,
    pub b_set: Vec<IndexPair>,
    pub homogeneous: Option<HomogeneousCoeffs>,
    pub branch: Option<Branch>,
}

impl GeneratorSet {
    pub fn mu(&self) -> usize {
        self.generators.len()
    }

    pub fn forms(&self) -> Vec<InitialForm> {
        self.generators.iter().map(|g| g.form).collect()
    }

    pub fn monomials(&self) -> Vec<Monomial> {
        self.generators
            .iter()
            .filter_map(|g| match g.form {
                InitialForm::Monomial(m) => Some(m),
                InitialForm::Binomial(_) => None,
            })
            .collect()
    }

    pub fn binomial(&self) -> Option<Binomial> {
        self.generators.iter().find_map(|g| match g.form {
            InitialForm::Binomial(b) => Some(b),
            InitialForm::Monomial(_) => None,
        })
    }

    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.generators.iter().map(Generator::polynomial).collect()
    }

    pub fn max_degree(&self) -> u64 {
        self.generators.iter().map(Generator::degree).max().unwrap_or(0)
    }

    /// Whether `z^{c3}` survived in `NCI_GT`, where it is not one of the
    /// `g`, `h`, `p`, `q` generators.
    pub fn zc3_supplemented(&self) -> bool {
        self.case_tag == CaseTag::NCI_GT
            && self.generators.iter().any(|g| g.provenance == Provenance::ZC3)
    }
}

fn invariant(s: &Semigroup, what: impl fmt::Display) -> TangentConeError {
    TangentConeError::Invariant(format!("{s}: {what}"))
}

fn mono(s: &Semigroup, x: i64, y: i64, z: i64) -> Result<Monomial, TangentConeError> {
    if x < 0 || y < 0 || z < 0 {
        return Err(invariant(s, format!("negative exponent in ({x}, {y}, {z})")));
    }
    Ok(Monomial::new(x as u64, y as u64, z as u64))
}

/// Builds the generator of `a w1 + b w2` and checks it equals `expected`.
fn witnessed(
    s: &Semigroup,
    hd: &HerzogData,
    expected: InitialForm,
    provenance: Provenance,
    a: i64,
    b: i64,
) -> Result<Generator, TangentConeError> {
    let witness = LatticeVector::combine(a, &hd.w1, b, &hd.w2);
    let form = initial_form(&binomial_of(&witness)?).normalized();
    if form != expected.normalized() {
        return Err(invariant(
            s,
            format!("{provenance}: witness {witness} gives {form}, expected {expected}"),
        ));
    }
    Ok(Generator {
        form,
        provenance,
        witness,
        coeffs: (a, b),
    })
}

fn deltas(s: &Semigroup, hd: &HerzogData) -> Result<(i64, i64), TangentConeError> {
    let (d1, d2) = hd
        .deltas
        .ok_or_else(|| invariant(s, format!("no deltas in case {}", hd.case_tag)))?;
    if d1 <= 0 || d2 <= 0 {
        return Err(TangentConeError::DegenerateDelta {
            delta1: d1,
            delta2: d2,
        });
    }
    Ok((d1, d2))
}

/// `(alpha_h, beta_h)` from the coordinates of the homogeneous relation.
pub fn solve_homogeneous_coeffs(
    hd: &HerzogData,
    s: &Semigroup,
) -> Result<HomogeneousCoeffs, TangentConeError> {
    let no_solution = || TangentConeError::NoSolution(hd.case_tag.to_string());
    if !hd.case_tag.uses_index_sets() {
        return Err(no_solution());
    }
    let wh = homogeneous_vector(s);
    let (a, b) = coordinates(&wh, &hd.w1, &hd.w2).ok_or_else(no_solution)?;
    let (alpha_h, beta_h) = (-a, b);
    if alpha_h <= 0 || beta_h <= 0 {
        return Err(no_solution());
    }
    let (d1, d2) = deltas(s, hd)?;
    // w_h has coordinate sum 0, w1 sums to delta1 and w2 to delta2
    if alpha_h * d1 != beta_h * d2 {
        return Err(invariant(s, "alpha_h / beta_h != delta2 / delta1"));
    }
    Ok(HomogeneousCoeffs { alpha_h, beta_h })
}

/// The `A` family: `(1, 0)` followed by each smallest `beta < epsilon` whose
/// value `phi(beta) r13 - beta r23` drops below the previous one, where
/// `phi = phi_{r23 / r13}`.
pub fn build_a(hd: &HerzogData, epsilon: i64) -> Vec<IndexPair> {
    let (x, y) = (hd.r13, hd.r23);
    let ratio = Fraction::new(y, x).expect("r13 > 0 in the index-set cases");
    let mut out = vec![IndexPair::new(1, 0)];
    let mut value = x;
    let mut beta = 0;
    'outer: loop {
        // values are periodic in beta with period dividing x
        let limit = (beta + x).min(epsilon - 1);
        for next in beta + 1..=limit {
            let alpha = phi(ratio, next);
            let v = alpha * x - next * y;
            debug_assert!(v > 0);
            if v < value {
                out.push(IndexPair::new(alpha, next));
                value = v;
                beta = next;
                continue 'outer;
            }
        }
        break;
    }
    out
}

/// The `B` family: `(0, 1)` followed by each smallest `gamma` whose value
/// `sigma r23 - gamma r13` drops below the previous one, where
/// `sigma = phi_{delta1 / delta2}(gamma)`.
pub fn build_b(hd: &HerzogData) -> Result<Vec<IndexPair>, TangentConeError> {
    let (d1, d2) = match hd.deltas {
        Some((d1, d2)) if d1 > 0 && d2 > 0 => (d1, d2),
        Some((d1, d2)) => return Err(TangentConeError::DegenerateDelta { delta1: d1, delta2: d2 }),
        None => return Err(TangentConeError::NoSolution(hd.case_tag.to_string())),
    };
    let (p, q) = (hd.r23 as i128, hd.r13 as i128);
    let ratio = Fraction::new(d1, d2)?;
    // value(gamma) > gamma (d1 p - d2 q) / d2, and the slope is positive
    let slope = d1 as i128 * p - d2 as i128 * q;
    if slope <= 0 {
        return Err(TangentConeError::Invariant(format!(
            "delta2 / delta1 = {d2}/{d1} is not below r23 / r13 = {p}/{q}"
        )));
    }
    let mut out = vec![IndexPair::new(0, 1)];
    let mut value = p;
    let mut gamma: i64 = 0;
    'outer: loop {
        let mut next = gamma + 1;
        while (next as i128) * slope < value * d2 as i128 {
            let sigma = phi(ratio, next);
            let v = sigma as i128 * p - next as i128 * q;
            if v < value {
                debug_assert!(v > 0);
                out.push(IndexPair::new(next, sigma));
                value = v;
                gamma = next;
                continue 'outer;
            }
            next += 1;
        }
        break;
    }
    Ok(out)
}

/// Computes the minimal generating set of `I*`.
pub fn tangent_cone_generators(s: &Semigroup) -> Result<GeneratorSet, TangentConeError> {
    let hd = compute_herzog_data(s)?;
    let mut set = GeneratorSet {
        semigroup: *s,
        herzog: hd,
        case_tag: hd.case_tag,
        generators: Vec::new(),
        pruned: Vec::new(),
        eta_epsilon: None,
        a_set: Vec::new(),
        b_set: Vec::new(),
        homogeneous: None,
        branch: None,
    };
    let h_form = InitialForm::Binomial(homogeneous_part(s));
    let z_c3 = InitialForm::Monomial(mono(s, 0, 0, hd.c3)?);
    let y_c2 = InitialForm::Monomial(mono(s, 0, hd.c2, 0)?);
    let y_rz = InitialForm::Monomial(mono(s, 0, hd.r12, hd.r13)?);

    let candidates = match hd.case_tag {
        // y^{r12} is y^{c2} except when c3 n3 equals c1 n1 or c2 n2 as well
        CaseTag::CI_R13_ZERO if hd.r12 != hd.c2 => vec![
            witnessed(s, &hd, y_rz, Provenance::YRZ, 1, 0)?,
            witnessed(s, &hd, z_c3, Provenance::ZC3, 0, 1)?,
        ],
        CaseTag::CI_R13_ZERO => vec![
            witnessed(s, &hd, y_c2, Provenance::YC2, 1, 0)?,
            witnessed(s, &hd, z_c3, Provenance::ZC3, 0, 1)?,
        ],
        CaseTag::CI_R12_ZERO_LT => vec![
            witnessed(s, &hd, y_c2, Provenance::YC2, 0, 1)?,
            witnessed(s, &hd, z_c3, Provenance::ZC3, 1, 0)?,
        ],
        CaseTag::CI_R12_ZERO_EQ => vec![
            witnessed(s, &hd, h_form, Provenance::H, 0, 1)?,
            witnessed(s, &hd, z_c3, Provenance::ZC3, 1, 0)?,
        ],
        CaseTag::NCI_LT => vec![
            witnessed(s, &hd, y_rz, Provenance::YRZ, 1, 0)?,
            witnessed(s, &hd, y_c2, Provenance::YC2, 0, 1)?,
            witnessed(s, &hd, z_c3, Provenance::ZC3, 1, 1)?,
        ],
        CaseTag::NCI_EQ => vec![
            witnessed(s, &hd, y_rz, Provenance::YRZ, 1, 0)?,
            witnessed(s, &hd, h_form, Provenance::H, 0, 1)?,
            witnessed(s, &hd, z_c3, Provenance::ZC3, 1, 1)?,
        ],
        CaseTag::CI_R21_ZERO | CaseTag::CI_R12_ZERO_GT | CaseTag::NCI_GT => {
            index_set_candidates(s, &hd, h_form, z_c3, &mut set)?
        }
    };

    let (kept, pruned) = prune(candidates)?;
    set.generators = kept;
    set.pruned = pruned;
    Ok(set)
}

fn index_set_candidates(
    s: &Semigroup,
    hd: &HerzogData,
    h_form: InitialForm,
    z_c3: InitialForm,
    set: &mut GeneratorSet,
) -> Result<Vec<Generator>, TangentConeError> {
    let (d1, d2) = deltas(s, hd)?;
    let lower = Fraction::new(d2, d1)?;
    let upper = Fraction::new(hd.r23, hd.r13)?;
    if lower >= upper {
        return Err(invariant(s, format!("delta2 / delta1 = {lower} is not below {upper}")));
    }
    let m = min_fraction_in_interval(lower, upper)?;
    let (eta, epsilon) = (m.num(), m.den());
    let coeffs = solve_homogeneous_coeffs(hd, s)?;
    let a_set = build_a(hd, epsilon);
    let b_set = build_b(hd)?;
    let branch = if coeffs.beta_h > epsilon {
        Branch::G
    } else {
        Branch::H
    };

    let p_of = |pair: &IndexPair| -> Result<Generator, TangentConeError> {
        let (alpha, beta) = (pair.first, pair.second);
        let form = mono(s, 0, alpha * hd.r12 + beta * hd.c2, alpha * hd.r13 - beta * hd.r23)?;
        witnessed(s, hd, InitialForm::Monomial(form), Provenance::P { alpha, beta }, alpha, -beta)
    };
    let q_of = |pair: &IndexPair| -> Result<Generator, TangentConeError> {
        let (gamma, sigma) = (pair.first, pair.second);
        let form = mono(s, gamma * hd.c1 + sigma * hd.r21, 0, sigma * hd.r23 - gamma * hd.r13)?;
        witnessed(s, hd, InitialForm::Monomial(form), Provenance::Q { gamma, sigma }, gamma, -sigma)
    };

    let mut out = Vec::new();
    match branch {
        Branch::G => {
            let g = mono(s, 0, eta * hd.r12 + epsilon * hd.c2, 0)?;
            out.push(witnessed(
                s,
                hd,
                InitialForm::Monomial(g),
                Provenance::G { eta, epsilon },
                eta,
                -epsilon,
            )?);
            for pair in &a_set {
                out.push(p_of(pair)?);
            }
        }
        Branch::H => {
            out.push(witnessed(s, hd, h_form, Provenance::H, -coeffs.alpha_h, coeffs.beta_h)?);
            for pair in a_set.iter().filter(|p| p.second < coeffs.beta_h) {
                out.push(p_of(pair)?);
            }
        }
    }
    for pair in &b_set {
        out.push(q_of(pair)?);
    }
    if hd.case_tag == CaseTag::NCI_GT {
        out.push(witnessed(s, hd, z_c3, Provenance::ZC3, 1, 1)?);
    }

    set.eta_epsilon = Some((eta, epsilon));
    set.a_set = a_set;
    set.b_set = b_set;
    set.homogeneous = Some(coeffs);
    set.branch = Some(branch);
    Ok(out)
}

/// Greedy pass in order of degree then revlex: a candidate is kept unless it
/// lies in the ideal of those already kept. For homogeneous input this picks
/// a minimal generating set.
fn prune(mut candidates: Vec<Generator>) -> Result<(Vec<Generator>, Vec<Generator>), TangentConeError> {
    candidates.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.form.lead_term().cmp(&b.form.lead_term()))
    });
    let mut kept: Vec<Generator> = Vec::new();
    let mut pruned = Vec::new();
    for c in candidates {
        let redundant = match c.form {
            InitialForm::Monomial(m) if !kept.iter().any(|k| matches!(k.form, InitialForm::Binomial(_))) => {
                kept.iter().any(|k| k.form.lead_term().divides(&m))
            }
            _ if kept.is_empty() => false,
            _ => {
                let polys: Vec<Polynomial> = kept.iter().map(Generator::polynomial).collect();
                let gb = buchberger(&polys, Some(c.degree()))?;
                ideal_member(&c.polynomial(), &gb)?
            }
        };
        if redundant {
            pruned.push(c);
        } else {
            kept.push(c);
        }
    }
    Ok((kept, pruned))
}

/// Outcome of the generator-count bounds.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MuBoundReport {
    pub mu: i64,
    /// `width + 1`
    pub global_bound: i64,
    pub global_ok: bool,
    /// `c3 + 2` for the two complete-intersection index-set cases,
    /// `max(r13, r23) + 3` for `NCI_GT`.
    pub case_bound: Option<i64>,
    pub case_ok: bool,
}

impl MuBoundReport {
    pub fn passed(&self) -> bool {
        self.global_ok && self.case_ok
    }
}

pub fn mu_bound_check(s: &Semigroup, gs: &GeneratorSet) -> MuBoundReport {
    let mu = gs.mu() as i64;
    let hd = &gs.herzog;
    let global_bound = s.width + 1;
    let case_bound = match gs.case_tag {
        CaseTag::CI_R21_ZERO | CaseTag::CI_R12_ZERO_GT => Some(hd.c3 + 2),
        CaseTag::NCI_GT => Some(hd.r13.max(hd.r23) + 3),
        _ => None,
    };
    MuBoundReport {
        mu,
        global_bound,
        global_ok: mu <= global_bound,
        case_bound,
        case_ok: case_bound.is_none_or(|b| mu <= b),
    }
}
