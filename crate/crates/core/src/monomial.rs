//! Exponent-vector monomials, binomials and lattice vectors in `K[x, y, z]`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::LatticeError;

/// A monomial `x^ex y^ey z^ez`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
pub struct Monomial(pub [u64; 3]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0, 0, 0]);

    pub const fn new(ex: u64, ey: u64, ez: u64) -> Self {
        Monomial([ex, ey, ez])
    }

    pub fn x(&self) -> u64 {
        self.0[0]
    }

    pub fn y(&self) -> u64 {
        self.0[1]
    }

    pub fn z(&self) -> u64 {
        self.0[2]
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial([
            self.0[0].max(other.0[0]),
            self.0[1].max(other.0[1]),
            self.0[2].max(other.0[2]),
        ])
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial([
            self.0[0].min(other.0[0]),
            self.0[1].min(other.0[1]),
            self.0[2].min(other.0[2]),
        ])
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.gcd(other) == Monomial::ONE
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial([
            self.0[0] + other.0[0],
            self.0[1] + other.0[1],
            self.0[2] + other.0[2],
        ])
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial([
            self.0[0] - other.0[0],
            self.0[1] - other.0[1],
            self.0[2] - other.0[2],
        ]))
    }

    /// Weighted degree under the grading `x -> w[0]`, `y -> w[1]`, `z -> w[2]`.
    pub fn weighted_degree(&self, weights: [i64; 3]) -> i128 {
        self.0
            .iter()
            .zip(weights.iter())
            .map(|(&e, &w)| e as i128 * w as i128)
            .sum()
    }
}

/// Graded reverse-lexicographic order with `x > y > z`.
///
/// Higher total degree wins; on ties the monomial with the smaller exponent
/// on the last variable is larger (`z` first, then `y`).
pub fn revlex_compare(m1: &Monomial, m2: &Monomial) -> Ordering {
    m1.degree()
        .cmp(&m2.degree())
        .then_with(|| m2.0[2].cmp(&m1.0[2]))
        .then_with(|| m2.0[1].cmp(&m1.0[1]))
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        revlex_compare(self, other)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == Monomial::ONE {
            return write!(f, "1");
        }
        let mut first = true;
        for (name, &e) in ["x", "y", "z"].iter().zip(self.0.iter()) {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A vector of `Z^3`. Members of the relation lattice of a semigroup satisfy
/// `v . (n1, n2, n3) = 0`; that is checked where the semigroup is known.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct LatticeVector(pub [i64; 3]);

impl LatticeVector {
    pub const fn new(v1: i64, v2: i64, v3: i64) -> Self {
        LatticeVector([v1, v2, v3])
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0, 0, 0]
    }

    pub fn dot(&self, n: [i64; 3]) -> i128 {
        self.0
            .iter()
            .zip(n.iter())
            .map(|(&a, &b)| a as i128 * b as i128)
            .sum()
    }

    pub fn cross(&self, other: &LatticeVector) -> [i128; 3] {
        let [a1, a2, a3] = self.0.map(i128::from);
        let [b1, b2, b3] = other.0.map(i128::from);
        [a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1]
    }

    /// `a * self + b * other`.
    pub fn combine(a: i64, v: &LatticeVector, b: i64, w: &LatticeVector) -> LatticeVector {
        LatticeVector([
            a * v.0[0] + b * w.0[0],
            a * v.0[1] + b * w.0[1],
            a * v.0[2] + b * w.0[2],
        ])
    }

    pub fn neg(&self) -> LatticeVector {
        LatticeVector(self.0.map(|c| -c))
    }

    /// Positive part `v+`.
    pub fn positive_part(&self) -> Monomial {
        Monomial(self.0.map(|c| c.max(0) as u64))
    }

    /// Negative part `v-`.
    pub fn negative_part(&self) -> Monomial {
        Monomial(self.0.map(|c| (-c).max(0) as u64))
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

/// The binomial `plus - minus`, with disjoint supports.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Binomial {
    pub plus: Monomial,
    pub minus: Monomial,
}

impl Binomial {
    pub fn is_homogeneous(&self) -> bool {
        self.plus.degree() == self.minus.degree()
    }

    /// The same binomial with its revlex-larger term first (up to sign).
    pub fn oriented(&self) -> Binomial {
        if self.plus >= self.minus {
            *self
        } else {
            Binomial {
                plus: self.minus,
                minus: self.plus,
            }
        }
    }

    pub fn lead_term(&self) -> Monomial {
        self.plus.max(self.minus)
    }
}

impl fmt::Display for Binomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} - {}", self.plus, self.minus)
    }
}

/// `f_v = x^{v+} - x^{v-}`.
pub fn binomial_of(v: &LatticeVector) -> Result<Binomial, LatticeError> {
    if v.is_zero() {
        return Err(LatticeError::ZeroVector);
    }
    Ok(Binomial {
        plus: v.positive_part(),
        minus: v.negative_part(),
    })
}

/// The lowest-degree homogeneous component of a binomial.
///
/// Signs are dropped for the monomial outcome, since only the ideal it
/// generates matters.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum InitialForm {
    Monomial(Monomial),
    Binomial(Binomial),
}

impl InitialForm {
    pub fn degree(&self) -> u64 {
        match self {
            InitialForm::Monomial(m) => m.degree(),
            InitialForm::Binomial(b) => b.plus.degree(),
        }
    }

    pub fn lead_term(&self) -> Monomial {
        match self {
            InitialForm::Monomial(m) => *m,
            InitialForm::Binomial(b) => b.lead_term(),
        }
    }

    /// Canonical representative: binomials oriented with the lead term first.
    pub fn normalized(&self) -> InitialForm {
        match self {
            InitialForm::Monomial(m) => InitialForm::Monomial(*m),
            InitialForm::Binomial(b) => InitialForm::Binomial(b.oriented()),
        }
    }
}

impl fmt::Display for InitialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InitialForm::Monomial(m) => write!(f, "{m}"),
            InitialForm::Binomial(b) => write!(f, "{b}"),
        }
    }
}

pub fn initial_form(f: &Binomial) -> InitialForm {
    match f.plus.degree().cmp(&f.minus.degree()) {
        Ordering::Less => InitialForm::Monomial(f.plus),
        Ordering::Greater => InitialForm::Monomial(f.minus),
        Ordering::Equal => InitialForm::Binomial(*f),
    }
}

/// Herzog's type of a vector: the index (1, 2 or 3) of the variable that sits
/// alone on one side of `f_v`.
pub fn vector_type(v: &LatticeVector) -> Result<u8, LatticeError> {
    if v.is_zero() {
        return Err(LatticeError::ZeroVector);
    }
    let pos = v.0.iter().filter(|&&c| c > 0).count();
    let neg = v.0.iter().filter(|&&c| c < 0).count();
    let isolated = match (pos, neg) {
        (1, 1) | (1, 2) => v.0.iter().position(|&c| c > 0),
        (2, 1) => v.0.iter().position(|&c| c < 0),
        _ => None,
    };
    isolated
        .map(|i| i as u8 + 1)
        .ok_or(LatticeError::Untyped(*v))
}
