//! Three-generated numerical semigroups and Herzog's structural data.
//!
//! For `H = <n1, n2, n3>` the multipliers `c_i` are the smallest positive
//! integers with `c_i n_i` in the semigroup generated by the other two
//! generators, and the `r_ij` are the exponents of a chosen representation:
//!
//! ```text
//! c1 n1 = r12 n2 + r13 n3
//! c2 n2 = r21 n1 + r23 n3
//! c3 n3 = r31 n1 + r32 n2
//! ```
//!
//! The resulting vectors span the relation lattice `{ v in Z^3 : v . n = 0 }`,
//! and which of the `r_ij` vanish decides the shape of the tangent cone.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::SemigroupError;
use crate::monomial::{Binomial, LatticeVector, Monomial};

/// Largest generator accepted. Keeps every product `c_i * n_i` inside `i64`.
pub const MAX_GENERATOR: i64 = 1_000_000_000;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Semigroup {
    pub n1: i64,
    pub n2: i64,
    pub n3: i64,
    /// `n2 - n1`
    pub a: i64,
    /// `n3 - n1`
    pub b: i64,
    /// `gcd(a, b)`
    pub d: i64,
    /// Width of the interval completion, `min(n1 - 1, n3 - n1)`.
    pub width: i64,
}

impl Semigroup {
    pub fn generators(&self) -> [i64; 3] {
        [self.n1, self.n2, self.n3]
    }

    pub fn triple(&self) -> (i64, i64, i64) {
        (self.n1, self.n2, self.n3)
    }

    /// Whether `v` lies in the relation lattice of this semigroup.
    pub fn contains_relation(&self, v: &LatticeVector) -> bool {
        v.dot(self.generators()) == 0
    }
}

impl fmt::Display for Semigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, {}, {}>", self.n1, self.n2, self.n3)
    }
}

/// All `(alpha, beta)` with `alpha, beta >= 0` and `alpha * p + beta * q = x`,
/// ordered by increasing `beta`.
pub fn representations(x: i64, p: i64, q: i64) -> Vec<(i64, i64)> {
    debug_assert!(x >= 0 && p > 0 && q > 0);
    let g = p.gcd(&q);
    if x % g != 0 {
        return Vec::new();
    }
    let (p1, q1, x1) = (p / g, q / g, x / g);
    // beta = x1 * q1^{-1} (mod p1)
    let beta0 = if p1 == 1 {
        0
    } else {
        let inv = q1.extended_gcd(&p1).x.rem_euclid(p1);
        ((x1 % p1) as i128 * inv as i128).rem_euclid(p1 as i128) as i64
    };
    let mut out = Vec::new();
    let mut beta = beta0;
    while beta as i128 * q as i128 <= x as i128 {
        out.push(((x - beta * q) / p, beta));
        beta += p1;
    }
    out
}

/// Whether `x` lies in the semigroup generated by `p` and `q`.
pub fn in_two_generated(x: i64, p: i64, q: i64) -> bool {
    !representations(x, p, q).is_empty()
}

/// Checks the triple and returns the semigroup with its derived quantities.
pub fn validate_semigroup(n1: i64, n2: i64, n3: i64) -> Result<Semigroup, SemigroupError> {
    if n1 < 1 || n2 < 1 || n3 < 1 {
        return Err(SemigroupError::NonPositive(n1, n2, n3));
    }
    if !(n1 < n2 && n2 < n3) {
        return Err(SemigroupError::NotSorted(n1, n2, n3));
    }
    if n3 > MAX_GENERATOR {
        return Err(SemigroupError::TooLarge(n3, MAX_GENERATOR));
    }
    let g = n1.gcd(&n2).gcd(&n3);
    if g != 1 {
        return Err(SemigroupError::GcdNotOne(g));
    }
    // n1 is the smallest, so it can only be redundant if it equals 0.
    if in_two_generated(n2, n1, n3) {
        return Err(SemigroupError::NotMinimal { index: 2, value: n2 });
    }
    if in_two_generated(n3, n1, n2) {
        return Err(SemigroupError::NotMinimal { index: 3, value: n3 });
    }
    let a = n2 - n1;
    let b = n3 - n1;
    let d = a.gcd(&b);
    Ok(Semigroup {
        n1,
        n2,
        n3,
        a,
        b,
        d,
        width: (n1 - 1).min(b),
    })
}

/// Like [`validate_semigroup`] but first divides out a common factor `g` of
/// the generators, returning the primitive semigroup and `g`.
///
/// `K[t^{g n1}, t^{g n2}, t^{g n3}]` and `K[t^{n1}, t^{n2}, t^{n3}]` have the
/// same defining ideal, so every downstream result is unchanged.
pub fn validate_up_to_scaling(n1: i64, n2: i64, n3: i64) -> Result<(Semigroup, i64), SemigroupError> {
    if n1 < 1 || n2 < 1 || n3 < 1 {
        return Err(SemigroupError::NonPositive(n1, n2, n3));
    }
    let g = n1.gcd(&n2).gcd(&n3);
    Ok((validate_semigroup(n1 / g, n2 / g, n3 / g)?, g))
}

/// The structural case of a semigroup, in dispatch priority order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
#[allow(non_camel_case_types)]
pub enum CaseTag {
    CI_R13_ZERO,
    CI_R21_ZERO,
    CI_R12_ZERO_LT,
    CI_R12_ZERO_EQ,
    CI_R12_ZERO_GT,
    NCI_LT,
    NCI_EQ,
    NCI_GT,
}

impl CaseTag {
    pub const ALL: [CaseTag; 8] = [
        CaseTag::CI_R13_ZERO,
        CaseTag::CI_R21_ZERO,
        CaseTag::CI_R12_ZERO_LT,
        CaseTag::CI_R12_ZERO_EQ,
        CaseTag::CI_R12_ZERO_GT,
        CaseTag::NCI_LT,
        CaseTag::NCI_EQ,
        CaseTag::NCI_GT,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CaseTag::CI_R13_ZERO => "CI_R13_ZERO",
            CaseTag::CI_R21_ZERO => "CI_R21_ZERO",
            CaseTag::CI_R12_ZERO_LT => "CI_R12_ZERO_LT",
            CaseTag::CI_R12_ZERO_EQ => "CI_R12_ZERO_EQ",
            CaseTag::CI_R12_ZERO_GT => "CI_R12_ZERO_GT",
            CaseTag::NCI_LT => "NCI_LT",
            CaseTag::NCI_EQ => "NCI_EQ",
            CaseTag::NCI_GT => "NCI_GT",
        }
    }

    /// `I_H` is a complete intersection.
    pub fn is_complete_intersection(&self) -> bool {
        !matches!(self, CaseTag::NCI_LT | CaseTag::NCI_EQ | CaseTag::NCI_GT)
    }

    /// Cases built from the index sets `A`, `B` and the fraction `eta/epsilon`.
    pub fn uses_index_sets(&self) -> bool {
        matches!(
            self,
            CaseTag::CI_R21_ZERO | CaseTag::CI_R12_ZERO_GT | CaseTag::NCI_GT
        )
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CaseTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CaseTag::ALL
            .iter()
            .copied()
            .find(|c| c.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown case tag `{s}`"))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct HerzogData {
    pub c1: i64,
    pub c2: i64,
    pub c3: i64,
    pub r12: i64,
    pub r13: i64,
    pub r21: i64,
    pub r23: i64,
    pub r31: i64,
    pub r32: i64,
    pub w1: LatticeVector,
    pub w2: LatticeVector,
    /// `(delta1, delta2)` for the three cases that use them.
    pub deltas: Option<(i64, i64)>,
    pub case_tag: CaseTag,
}

impl HerzogData {
    pub fn v1(&self) -> LatticeVector {
        LatticeVector::new(self.c1, -self.r12, -self.r13)
    }

    pub fn v2(&self) -> LatticeVector {
        LatticeVector::new(-self.r21, self.c2, -self.r23)
    }

    pub fn v3(&self) -> LatticeVector {
        LatticeVector::new(-self.r31, -self.r32, self.c3)
    }

    /// The basis `(w1, w2)` of the relation lattice.
    pub fn lattice_basis(&self) -> (LatticeVector, LatticeVector) {
        (self.w1, self.w2)
    }
}

fn minimal_multiplier(n: i64, p: i64, q: i64) -> Result<(i64, Vec<(i64, i64)>), SemigroupError> {
    // p * n lies in <p>, so the search always ends by c = p.
    for c in 1..=p {
        let reps = representations(c * n, p, q);
        if !reps.is_empty() {
            return Ok((c, reps));
        }
    }
    Err(SemigroupError::InternalInconsistency(format!(
        "no multiple of {n} up to {p} lies in <{p}, {q}>"
    )))
}

fn inconsistent(s: &Semigroup, what: &str) -> SemigroupError {
    SemigroupError::InternalInconsistency(format!("{s}: {what}"))
}

/// Computes `c_i`, the `r_ij`, the lattice basis and the case tag.
pub fn compute_herzog_data(s: &Semigroup) -> Result<HerzogData, SemigroupError> {
    let (n1, n2, n3) = s.triple();
    let (c1, reps1) = minimal_multiplier(n1, n2, n3)?; // (r12, r13)
    let (c2, reps2) = minimal_multiplier(n2, n1, n3)?; // (r21, r23)
    let (c3, reps3) = minimal_multiplier(n3, n1, n2)?; // (r31, r32)

    let prefer = |reps: &[(i64, i64)], pred: &dyn Fn(&(i64, i64)) -> bool| -> (i64, i64) {
        reps.iter().copied().find(|r| pred(r)).unwrap_or(reps[0])
    };

    let (case_tag, (r12, r13), (r21, r23), (r31, r32), w1, w2);
    if let Some(&rep1) = reps1.iter().find(|r| r.1 == 0) {
        // c1 n1 = r12 n2; r12 = c2 unless c2 n2 or c1 n1 also equals c3 n3
        (r12, r13) = rep1;
        (r21, r23) = prefer(&reps2, &|r| r.1 == 0);
        w1 = LatticeVector::new(c1, -r12, 0);
        (r31, r32) = reps3
            .iter()
            .copied()
            .find(|&(p, q)| check_lattice_basis(s, &w1, &LatticeVector::new(-p, -q, c3)).is_ok())
            .ok_or_else(|| inconsistent(s, "r13 = 0 but no v3 completes a basis"))?;
        w2 = LatticeVector::new(-r31, -r32, c3);
        case_tag = CaseTag::CI_R13_ZERO;
    } else if let Some(&rep2) = reps2.iter().find(|&&r| r == (0, c3)) {
        // c2 n2 = c3 n3
        (r21, r23) = rep2;
        // every representation has r13 > 0 here; the smallest one is below c3
        (r12, r13) = reps1[0];
        (r31, r32) = prefer(&reps3, &|r| r.0 == 0);
        if r23 != c3 {
            return Err(inconsistent(s, "r21 = 0 but r23 != c3"));
        }
        if !(0 < r13 && r13 < c3) {
            return Err(inconsistent(s, "r21 = 0 but no representation with 0 < r13 < c3"));
        }
        w1 = LatticeVector::new(c1, -r12, -r13);
        w2 = LatticeVector::new(0, c2, -c3);
        case_tag = CaseTag::CI_R21_ZERO;
    } else if let Some(&rep1) = reps1.iter().find(|&&r| r == (0, c3)) {
        // c1 n1 = c3 n3
        (r12, r13) = rep1;
        // smallest r23, which is below c3; r23 = 0 forces c2 < r21
        (r21, r23) = reps2[0];
        (r31, r32) = prefer(&reps3, &|r| r.1 == 0);
        if r13 != c3 {
            return Err(inconsistent(s, "r12 = 0 but r13 != c3"));
        }
        if r23 >= c3 {
            return Err(inconsistent(s, "r12 = 0 but no representation with r23 < c3"));
        }
        w1 = LatticeVector::new(c1, 0, -c3);
        w2 = LatticeVector::new(-r21, c2, -r23);
        case_tag = match c2.cmp(&(r21 + r23)) {
            std::cmp::Ordering::Less => CaseTag::CI_R12_ZERO_LT,
            std::cmp::Ordering::Equal => CaseTag::CI_R12_ZERO_EQ,
            std::cmp::Ordering::Greater => CaseTag::CI_R12_ZERO_GT,
        };
    } else {
        let positive = |reps: &[(i64, i64)], which: &str| {
            reps.iter()
                .copied()
                .find(|r| r.0 > 0 && r.1 > 0)
                .ok_or_else(|| inconsistent(s, &format!("no positive representation of {which}")))
        };
        (r12, r13) = positive(&reps1, "c1 n1")?;
        (r21, r23) = positive(&reps2, "c2 n2")?;
        (r31, r32) = positive(&reps3, "c3 n3")?;
        if c1 != r21 + r31 || c2 != r12 + r32 || c3 != r13 + r23 {
            return Err(inconsistent(s, "w1 + w2 + w3 != 0 in the non-complete-intersection case"));
        }
        w1 = LatticeVector::new(c1, -r12, -r13);
        w2 = LatticeVector::new(-r21, c2, -r23);
        case_tag = match c2.cmp(&(r21 + r23)) {
            std::cmp::Ordering::Less => CaseTag::NCI_LT,
            std::cmp::Ordering::Equal => CaseTag::NCI_EQ,
            std::cmp::Ordering::Greater => CaseTag::NCI_GT,
        };
    }

    let deltas = match case_tag {
        CaseTag::CI_R21_ZERO => Some((c1 - r12 - r13, c2 - c3)),
        CaseTag::CI_R12_ZERO_GT => Some((c1 - c3, c2 - r21 - r23)),
        CaseTag::NCI_GT => Some((c1 - r12 - r13, c2 - r21 - r23)),
        _ => None,
    };

    let hd = HerzogData {
        c1,
        c2,
        c3,
        r12,
        r13,
        r21,
        r23,
        r31,
        r32,
        w1,
        w2,
        deltas,
        case_tag,
    };
    check_lattice_basis(s, &hd.w1, &hd.w2)?;
    Ok(hd)
}

/// Certifies that `(w1, w2)` is a basis of the relation lattice: both are
/// relations and `w1 x w2 = +-(n1, n2, n3)`.
pub fn check_lattice_basis(
    s: &Semigroup,
    w1: &LatticeVector,
    w2: &LatticeVector,
) -> Result<(), SemigroupError> {
    if !s.contains_relation(w1) || !s.contains_relation(w2) {
        return Err(inconsistent(s, "basis vector outside the relation lattice"));
    }
    let n = s.generators().map(i128::from);
    let cross = w1.cross(w2);
    if cross != n && cross != n.map(|c| -c) {
        return Err(inconsistent(
            s,
            &format!("{w1} and {w2} span a proper sublattice (cross product {cross:?})"),
        ));
    }
    Ok(())
}

/// Coordinates `(a, b)` of `v = a w1 + b w2`, if `v` lies in the integer
/// span of the (linearly independent) pair.
pub fn coordinates(
    v: &LatticeVector,
    w1: &LatticeVector,
    w2: &LatticeVector,
) -> Option<(i64, i64)> {
    let normal = w1.cross(w2);
    let nn: i128 = normal.iter().map(|c| c * c).sum();
    if nn == 0 {
        return None;
    }
    let dot = |u: [i128; 3]| -> i128 { u.iter().zip(normal.iter()).map(|(a, b)| a * b).sum() };
    let a_num = dot(v.cross(w2));
    let b_num = dot(w1.cross(v));
    if a_num % nn != 0 || b_num % nn != 0 {
        return None;
    }
    let (a, b) = (
        i64::try_from(a_num / nn).ok()?,
        i64::try_from(b_num / nn).ok()?,
    );
    (LatticeVector::combine(a, w1, b, w2) == *v).then_some((a, b))
}

/// The relation `(-(b-a)/d, b/d, -a/d)` behind the homogeneous binomial.
pub fn homogeneous_vector(s: &Semigroup) -> LatticeVector {
    LatticeVector::new(-(s.b - s.a) / s.d, s.b / s.d, -s.a / s.d)
}

/// `h = y^{b/d} - x^{(b-a)/d} z^{a/d}`, the generator of the homogeneous part
/// of `I_H`.
pub fn homogeneous_part(s: &Semigroup) -> Binomial {
    Binomial {
        plus: Monomial::new(0, (s.b / s.d) as u64, 0),
        minus: Monomial::new(((s.b - s.a) / s.d) as u64, 0, (s.a / s.d) as u64),
    }
}

/// Every valid triple `n1 < n2 < n3 <= n3_max`, in lexicographic order.
pub fn valid_triples(n3_max: i64) -> Vec<Semigroup> {
    let mut out = Vec::new();
    for n1 in 3..=n3_max {
        for n2 in n1 + 1..=n3_max {
            for n3 in n2 + 1..=n3_max {
                if let Ok(s) = validate_semigroup(n1, n2, n3) {
                    out.push(s);
                }
            }
        }
    }
    out
}
