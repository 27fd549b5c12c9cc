//! A small exact polynomial engine in `K[x, y, z]` over the rationals, with
//! graded reverse-lexicographic order (`x > y > z`).
//!
//! Buchberger completion processes S-pairs in order of increasing lcm degree
//! and can stop at a degree cap. For homogeneous input the truncated basis
//! decides membership exactly for every polynomial of degree at most the cap.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;
use std::fmt;

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

use crate::error::GroebnerError;
use crate::monomial::{Binomial, InitialForm, Monomial};

pub type Coeff = Rational64;

/// Coefficients above this magnitude are rejected instead of risking `i64`
/// overflow inside `Rational64`.
const COEFF_LIMIT: i64 = 1 << 31;

/// Terms in strictly decreasing revlex order, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Polynomial {
    terms: Vec<(Monomial, Coeff)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn monomial(m: Monomial) -> Self {
        Polynomial {
            terms: vec![(m, Coeff::one())],
        }
    }

    /// `plus - minus`.
    pub fn binomial(b: &Binomial) -> Self {
        Polynomial::from_terms(vec![(b.plus, Coeff::one()), (b.minus, -Coeff::one())])
    }

    pub fn from_terms(terms: Vec<(Monomial, Coeff)>) -> Self {
        let mut terms = terms;
        terms.sort_by_key(|t| std::cmp::Reverse(t.0));
        let mut merged: Vec<(Monomial, Coeff)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match merged.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => merged.push((m, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        Polynomial { terms: merged }
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn lead_term(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.0)
    }

    pub fn lead_coeff(&self) -> Option<Coeff> {
        self.terms.first().map(|t| t.1)
    }

    /// Largest total degree of a term; 0 for the zero polynomial.
    pub fn degree(&self) -> u64 {
        self.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms
            .windows(2)
            .all(|w| w[0].0.degree() == w[1].0.degree())
    }

    /// Every coefficient is `1` or `-1`.
    pub fn has_unit_coefficients(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.abs().is_one())
    }

    pub fn scale(&self, m: &Monomial, c: Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(t, k)| (t.mul(m), *k * c)).collect(),
        }
    }

    pub fn monic(&self) -> Polynomial {
        match self.lead_coeff() {
            Some(lc) => Polynomial {
                terms: self.terms.iter().map(|(t, k)| (*t, *k / lc)).collect(),
            },
            None => Polynomial::zero(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => Ordering::Greater,
                (None, _) => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(self.terms[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push((other.terms[j].0, -other.terms[j].1));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = self.terms[i].1 - other.terms[j].1;
                    if !c.is_zero() {
                        out.push((self.terms[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial { terms: out }
    }

    fn check_coefficients(&self) -> Result<(), GroebnerError> {
        for (_, c) in &self.terms {
            if c.numer().abs() > COEFF_LIMIT || c.denom().abs() > COEFF_LIMIT {
                return Err(GroebnerError::CoefficientGrowth(c.to_string()));
            }
        }
        Ok(())
    }
}

impl From<Monomial> for Polynomial {
    fn from(m: Monomial) -> Self {
        Polynomial::monomial(m)
    }
}

impl From<&Binomial> for Polynomial {
    fn from(b: &Binomial) -> Self {
        Polynomial::binomial(b)
    }
}

impl From<&InitialForm> for Polynomial {
    fn from(f: &InitialForm) -> Self {
        match f {
            InitialForm::Monomial(m) => Polynomial::monomial(*m),
            InitialForm::Binomial(b) => Polynomial::binomial(b),
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if mag.is_one() {
                write!(f, "{m}")?;
            } else if *m == Monomial::ONE {
                write!(f, "{mag}")?;
            } else {
                write!(f, "{mag} {m}")?;
            }
        }
        Ok(())
    }
}

/// The S-polynomial of `f` and `g` with respect to their revlex lead terms.
pub fn s_pair(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (Some(lf), Some(lg)) = (f.lead_term(), g.lead_term()) else {
        return Polynomial::zero();
    };
    let (cf, cg) = (f.lead_coeff().unwrap(), g.lead_coeff().unwrap());
    let l = lf.lcm(&lg);
    let left = f.scale(&l.div(&lf).unwrap(), Coeff::one() / cf);
    let right = g.scale(&l.div(&lg).unwrap(), Coeff::one() / cg);
    left.sub(&right)
}

/// Full reduction of `f` by `basis`.
///
/// The largest reducible term is treated first and the first basis element
/// (in stored order) whose lead term divides it is used.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    reduce(f, basis).0
}

/// Returns the remainder and the number of reduction steps.
fn reduce(f: &Polynomial, basis: &[Polynomial]) -> (Polynomial, usize) {
    let leads: Vec<(Monomial, Coeff)> = basis
        .iter()
        .filter_map(|g| g.terms.first().copied())
        .collect();
    let live: Vec<&Polynomial> = basis.iter().filter(|g| !g.is_zero()).collect();
    let mut remainder = Vec::new();
    let mut p = f.clone();
    let mut steps = 0;
    while let Some(&(t, c)) = p.terms.first() {
        let divisor = leads.iter().position(|(lt, _)| lt.divides(&t));
        match divisor {
            Some(k) => {
                let q = t.div(&leads[k].0).unwrap();
                p = p.sub(&live[k].scale(&q, c / leads[k].1));
                steps += 1;
            }
            None => {
                remainder.push((t, c));
                p.terms.remove(0);
            }
        }
    }
    (Polynomial { terms: remainder }, steps)
}

/// A (possibly degree-truncated) Groebner basis.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub generators: Vec<Polynomial>,
    pub degree_cap: Option<u64>,
    /// S-pairs discarded because their lcm degree exceeded the cap.
    pub skipped_pairs: usize,
    /// Elements contributed by non-zero S-pair remainders.
    pub added_from_pairs: usize,
    /// Input generators that reduced to zero against earlier elements.
    pub redundant_inputs: usize,
}

impl GroebnerBasis {
    pub fn lead_terms(&self) -> Vec<Monomial> {
        self.generators.iter().filter_map(|g| g.lead_term()).collect()
    }
}

/// Buchberger completion, optionally truncated at `degree_cap`.
pub fn buchberger(gens: &[Polynomial], degree_cap: Option<u64>) -> Result<GroebnerBasis, GroebnerError> {
    let mut inputs: Vec<&Polynomial> = gens.iter().filter(|g| !g.is_zero()).collect();
    if let Some(cap) = degree_cap {
        if let Some(g) = inputs.iter().find(|g| g.degree() > cap) {
            return Err(GroebnerError::CapTooSmall {
                degree: g.degree(),
                cap,
            });
        }
    }
    let unit = inputs.iter().all(|g| g.has_unit_coefficients());
    inputs.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| b.lead_term().cmp(&a.lead_term()))
    });

    let mut basis: Vec<Polynomial> = Vec::new();
    let mut pairs: BinaryHeap<Reverse<(u64, usize, usize)>> = BinaryHeap::new();
    let mut skipped = 0;
    let mut added_from_pairs = 0;
    let mut redundant = 0;
    let mut next_input = 0;

    let accept = |poly: Polynomial,
                      basis: &mut Vec<Polynomial>,
                      pairs: &mut BinaryHeap<Reverse<(u64, usize, usize)>>,
                      skipped: &mut usize|
     -> Result<(), GroebnerError> {
        let poly = poly.monic();
        poly.check_coefficients()?;
        if unit && !poly.has_unit_coefficients() {
            return Err(GroebnerError::CoefficientGrowth(poly.to_string()));
        }
        let lt = poly.lead_term().unwrap();
        let idx = basis.len();
        for (j, g) in basis.iter().enumerate() {
            let lg = g.lead_term().unwrap();
            // product criterion; two monomials also always give zero
            if lt.is_coprime(&lg) || (poly.is_monomial() && g.is_monomial()) {
                continue;
            }
            let deg = lt.lcm(&lg).degree();
            if degree_cap.is_some_and(|cap| deg > cap) {
                *skipped += 1;
                continue;
            }
            pairs.push(Reverse((deg, j, idx)));
        }
        basis.push(poly);
        Ok(())
    };

    loop {
        let pair_deg = pairs.peek().map(|Reverse(p)| p.0);
        let input_deg = inputs.get(next_input).map(|g| g.degree());
        let take_pair = match (pair_deg, input_deg) {
            (None, None) => break,
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (Some(p), Some(i)) => p <= i,
        };
        if take_pair {
            let Reverse((_, i, j)) = pairs.pop().unwrap();
            let s = s_pair(&basis[i], &basis[j]);
            let r = normal_form(&s, &basis);
            if !r.is_zero() {
                added_from_pairs += 1;
                accept(r, &mut basis, &mut pairs, &mut skipped)?;
            }
        } else {
            let g = inputs[next_input];
            next_input += 1;
            let r = normal_form(g, &basis);
            if r.is_zero() {
                redundant += 1;
            } else {
                accept(r, &mut basis, &mut pairs, &mut skipped)?;
            }
        }
    }

    Ok(GroebnerBasis {
        generators: basis,
        degree_cap,
        skipped_pairs: skipped,
        added_from_pairs,
        redundant_inputs: redundant,
    })
}

/// Buchberger's criterion applied to `gens` as given: every S-pair reduces to
/// zero modulo `gens`. Returns the first failing pair with its remainder.
pub fn first_failing_s_pair(gens: &[Polynomial]) -> Option<(usize, usize, Polynomial)> {
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            let (f, g) = (&gens[i], &gens[j]);
            if f.is_zero() || g.is_zero() {
                continue;
            }
            let r = normal_form(&s_pair(f, g), gens);
            if !r.is_zero() {
                return Some((i, j, r));
            }
        }
    }
    None
}

pub fn is_groebner_basis(gens: &[Polynomial]) -> bool {
    first_failing_s_pair(gens).is_none()
}

pub fn ideal_member(f: &Polynomial, gb: &GroebnerBasis) -> Result<bool, GroebnerError> {
    if let Some(cap) = gb.degree_cap {
        if f.degree() > cap {
            return Err(GroebnerError::CapExceeded {
                degree: f.degree(),
                cap,
            });
        }
    }
    Ok(normal_form(f, &gb.generators).is_zero())
}

/// Index of the first element of `gens` outside the ideal of `gb`.
pub fn first_non_member(gens: &[Polynomial], gb: &GroebnerBasis) -> Result<Option<usize>, GroebnerError> {
    for (i, g) in gens.iter().enumerate() {
        if !ideal_member(g, gb)? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// Equality of the ideals generated by `g1` and `g2`, checked by mutual
/// membership with bases truncated at degree `cap`.
pub fn ideals_equal_up_to_degree(
    g1: &[Polynomial],
    g2: &[Polynomial],
    cap: u64,
) -> Result<bool, GroebnerError> {
    for g in g1.iter().chain(g2.iter()) {
        if g.degree() > cap {
            return Err(GroebnerError::CapExceeded {
                degree: g.degree(),
                cap,
            });
        }
    }
    let gb1 = buchberger(g1, Some(cap))?;
    let gb2 = buchberger(g2, Some(cap))?;
    Ok(first_non_member(g1, &gb2)?.is_none() && first_non_member(g2, &gb1)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(x: u64, y: u64, z: u64) -> Monomial {
        Monomial::new(x, y, z)
    }

    fn mono(x: u64, y: u64, z: u64) -> Polynomial {
        Polynomial::monomial(m(x, y, z))
    }

    fn bin(p: Monomial, q: Monomial) -> Polynomial {
        Polynomial::binomial(&Binomial { plus: p, minus: q })
    }

    #[test]
    fn polynomial_terms_are_ordered() {
        let p = bin(m(25, 0, 1), m(0, 26, 0));
        assert_eq!(p.lead_term(), Some(m(0, 26, 0)));
        assert_eq!(p.lead_coeff(), Some(-Coeff::one()));
        assert_eq!(p.to_string(), "-y^26 + x^25 z");
        assert!(p.is_homogeneous());
        let q = Polynomial::from_terms(vec![(m(1, 0, 0), Coeff::one()), (m(1, 0, 0), -Coeff::one())]);
        assert!(q.is_zero());
    }

    #[test]
    fn s_pair_examples() {
        let h = bin(m(0, 26, 0), m(25, 0, 1));
        let p = mono(0, 1, 2);
        let s = s_pair(&h, &p);
        assert_eq!(s.terms().len(), 1);
        assert_eq!(s.lead_term(), Some(m(25, 0, 3)));
        assert!(s_pair(&mono(2, 0, 0), &mono(0, 1, 1)).is_zero());
        assert!(s_pair(&h, &h).is_zero());
    }

    #[test]
    fn normal_form_examples() {
        let basis = vec![mono(0, 1, 2), mono(1, 0, 9), bin(m(0, 26, 0), m(25, 0, 1))];
        assert_eq!(normal_form(&mono(0, 0, 11), &basis), mono(0, 0, 11));
        assert!(normal_form(&mono(0, 4, 8), &[mono(0, 4, 8)]).is_zero());
        let basis = vec![mono(13, 0, 5), mono(19, 0, 3)];
        assert!(normal_form(&mono(25, 0, 3), &basis).is_zero());
        // y^27 reduces through h to x^25 y z, then by y z^2? no: stays
        let basis = vec![bin(m(0, 26, 0), m(25, 0, 1))];
        assert_eq!(normal_form(&mono(0, 27, 0), &basis), mono(25, 1, 1));
    }

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        let gens = vec![mono(0, 2, 0), mono(0, 0, 10)];
        let gb = buchberger(&gens, None).unwrap();
        assert_eq!(gb.generators.len(), 2);
        assert_eq!(gb.added_from_pairs, 0);
        assert!(is_groebner_basis(&gens));
    }

    #[test]
    fn binomial_examples_are_bases() {
        let gens = vec![bin(m(0, 10, 0), m(7, 0, 3)), mono(0, 0, 16)];
        assert!(is_groebner_basis(&gens));
        assert_eq!(buchberger(&gens, None).unwrap().added_from_pairs, 0);

        let gens = vec![
            mono(0, 1, 2),
            mono(1, 0, 9),
            mono(0, 0, 11),
            mono(7, 0, 7),
            mono(13, 0, 5),
            mono(19, 0, 3),
            bin(m(0, 26, 0), m(25, 0, 1)),
        ];
        assert!(is_groebner_basis(&gens));
        let gb = buchberger(&gens, Some(60)).unwrap();
        assert_eq!(gb.added_from_pairs, 0);
    }

    #[test]
    fn non_basis_gets_completed() {
        // (x y - z^2, y^2 - x z): S-pair gives a new element
        let f = bin(m(1, 1, 0), m(0, 0, 2));
        let g = bin(m(0, 2, 0), m(1, 0, 1));
        assert!(!is_groebner_basis(&[f.clone(), g.clone()]));
        let gb = buchberger(&[f, g], None).unwrap();
        assert!(gb.added_from_pairs > 0);
        assert!(is_groebner_basis(&gb.generators));
        assert!(gb.generators.iter().all(|p| p.has_unit_coefficients()));
    }

    #[test]
    fn cap_errors() {
        let gens = vec![mono(0, 0, 10)];
        assert_eq!(
            buchberger(&gens, Some(5)).unwrap_err(),
            GroebnerError::CapTooSmall { degree: 10, cap: 5 }
        );
        let gb = buchberger(&gens, Some(10)).unwrap();
        assert!(matches!(
            ideal_member(&mono(0, 0, 11), &gb),
            Err(GroebnerError::CapExceeded { .. })
        ));
        assert_eq!(ideal_member(&mono(1, 0, 10), &buchberger(&gens, Some(11)).unwrap()), Ok(true));
    }

    #[test]
    fn ideal_equality() {
        assert_eq!(
            ideals_equal_up_to_degree(&[mono(0, 2, 0)], &[mono(0, 2, 0), mono(0, 5, 0)], 10),
            Ok(true)
        );
        assert_eq!(ideals_equal_up_to_degree(&[mono(0, 2, 0)], &[mono(0, 3, 0)], 10), Ok(false));
    }

    #[test]
    fn truncation_counts_skipped_pairs() {
        let f = bin(m(1, 1, 0), m(0, 0, 2));
        let g = bin(m(0, 2, 0), m(1, 0, 1));
        let gb = buchberger(&[f, g], Some(2)).unwrap();
        assert!(gb.skipped_pairs > 0);
    }
}
