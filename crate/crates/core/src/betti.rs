//! Multigraded Betti numbers of monomial ideals in `K[x, y, z]` and the
//! width bounds they are checked against.
//!
//! The primary computation uses the lower Koszul complex: for a multidegree
//! `b`, `K^b` is the simplicial complex of squarefree `F` with `x^{b - F}` in
//! `I`, and `beta_{i,b}(I) = dim H~_{i-1}(K^b)`. Only lcms of generators can
//! carry Betti numbers, and in three variables every such lcm is the lcm of at
//! most three generators.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::BettiError;
use crate::groebner::is_groebner_basis;
use crate::monomial::Monomial;
use crate::semigroup::Semigroup;
use crate::tangent_cone::GeneratorSet;

pub const DEFAULT_GENERATOR_CAP: usize = 64;
pub const TAYLOR_GENERATOR_CAP: usize = 12;
/// Cap used by [`check_theorem_bounds`]; the Koszul method is cubic in the
/// number of generators, so this stays cheap.
pub const BOUND_CHECK_GENERATOR_CAP: usize = 1024;

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct BettiTable {
    pub beta0: usize,
    pub beta1: usize,
    pub beta2: usize,
    /// `(multidegree, i, beta_{i, multidegree})` for every non-zero entry,
    /// sorted by multidegree then `i`.
    pub multigraded: Vec<(Monomial, usize, usize)>,
}

impl BettiTable {
    fn from_graded(graded: BTreeMap<(Monomial, usize), usize>) -> Self {
        let mut t = BettiTable::default();
        for (&(m, i), &dim) in &graded {
            if dim == 0 {
                continue;
            }
            match i {
                0 => t.beta0 += dim,
                1 => t.beta1 += dim,
                2 => t.beta2 += dim,
                _ => {}
            }
            t.multigraded.push((m, i, dim));
        }
        t
    }

    pub fn totals(&self) -> (usize, usize, usize) {
        (self.beta0, self.beta1, self.beta2)
    }
}

/// Lead terms of the generators, i.e. the initial ideal when the generators
/// form a Groebner basis.
pub fn initial_ideal(gs: &GeneratorSet) -> Result<Vec<Monomial>, BettiError> {
    if !is_groebner_basis(&gs.polynomials()) {
        return Err(BettiError::NotGroebner);
    }
    Ok(gs.generators.iter().map(|g| g.form.lead_term()).collect())
}

fn check_minimal(gens: &[Monomial]) -> Result<(), BettiError> {
    for (i, a) in gens.iter().enumerate() {
        for (j, b) in gens.iter().enumerate() {
            if i != j && a.divides(b) {
                return Err(BettiError::NotMinimal(a.to_string(), b.to_string()));
            }
        }
    }
    Ok(())
}

fn in_ideal(m: &Monomial, gens: &[Monomial]) -> bool {
    gens.iter().any(|g| g.divides(m))
}

/// The lcms of all non-empty subsets, deduplicated.
fn lcm_lattice(gens: &[Monomial]) -> BTreeSet<Monomial> {
    let mut out = BTreeSet::new();
    for (i, a) in gens.iter().enumerate() {
        out.insert(*a);
        for (j, b) in gens.iter().enumerate().skip(i + 1) {
            let ab = a.lcm(b);
            out.insert(ab);
            for c in &gens[j + 1..] {
                out.insert(ab.lcm(c));
            }
        }
    }
    out
}

/// Rank over the rationals by Gaussian elimination.
pub fn rank_rational(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && !row[c].is_zero() {
                let factor = &row[c] / &pivot_row[c];
                for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    *x -= &factor * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank over `F_p`.
pub fn rank_mod_p(rows: &[Vec<i64>], p: u64) -> usize {
    let p = p as i128;
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| (v as i128).rem_euclid(p)).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let inverse = |a: i128| -> i128 {
        // Fermat; p is prime
        let (mut base, mut exp, mut acc) = (a, p - 2, 1i128);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        acc
    };
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = inverse(m[rank][c]);
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let factor = row[c] * inv % p;
                for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    *x = (*x - factor * y).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Dimensions of the reduced homology `H~_{-1}, H~_0, H~_1, H~_2` of a
/// simplicial complex on the vertices `{0, 1, 2}`, given by its faces as
/// bitmasks (the empty face `0` included when the complex is non-void).
fn reduced_homology(faces: &[u8]) -> [usize; 4] {
    // chains indexed by dimension + 1
    let mut by_dim: [Vec<u8>; 4] = Default::default();
    for &f in faces {
        by_dim[f.count_ones() as usize].push(f);
    }
    // boundary from dimension k (index k+1) to k-1 (index k)
    let boundary_rank = |k: usize| -> usize {
        let (src, dst) = (&by_dim[k], &by_dim[k - 1]);
        if src.is_empty() || dst.is_empty() {
            return 0;
        }
        let rows: Vec<Vec<i64>> = dst
            .iter()
            .map(|&d| {
                src.iter()
                    .map(|&s| {
                        if d & !s != 0 || (s & !d).count_ones() != 1 {
                            return 0;
                        }
                        let removed = s & !d;
                        // sign (-1)^{position of the removed vertex in s}
                        let pos = (s & (removed - 1)).count_ones();
                        if pos % 2 == 0 {
                            1
                        } else {
                            -1
                        }
                    })
                    .collect()
            })
            .collect();
        rank_rational(&rows)
    };
    let ranks = [0, boundary_rank(1), boundary_rank(2), boundary_rank(3)];
    let mut out = [0; 4];
    for k in 0..4 {
        let next = if k + 1 < 4 { ranks[k + 1] } else { 0 };
        out[k] = by_dim[k].len() - ranks[k] - next;
    }
    out
}

/// `beta_i(I)` for `i = 0, 1, 2` with the lower Koszul complex.
pub fn betti_numbers(gens: &[Monomial]) -> Result<BettiTable, BettiError> {
    betti_numbers_capped(gens, DEFAULT_GENERATOR_CAP)
}

pub fn betti_numbers_capped(gens: &[Monomial], cap: usize) -> Result<BettiTable, BettiError> {
    if gens.len() > cap {
        return Err(BettiError::TooManyGenerators {
            count: gens.len(),
            cap,
        });
    }
    check_minimal(gens)?;
    let mut graded = BTreeMap::new();
    for b in lcm_lattice(gens) {
        let faces: Vec<u8> = (0u8..8)
            .filter(|&f| {
                let e = [f & 1, (f >> 1) & 1, (f >> 2) & 1].map(u64::from);
                (0..3).all(|k| b.0[k] >= e[k])
                    && in_ideal(&Monomial([b.0[0] - e[0], b.0[1] - e[1], b.0[2] - e[2]]), gens)
            })
            .collect();
        let h = reduced_homology(&faces);
        for (i, &dim) in h.iter().take(3).enumerate() {
            if dim > 0 {
                graded.insert((b, i), dim);
            }
        }
        if h[3] != 0 {
            // would be beta_3, impossible in three variables
            graded.insert((b, 3), h[3]);
        }
    }
    Ok(BettiTable::from_graded(graded))
}

/// Reference computation from the Taylor complex tensored with the field.
///
/// Its differential keeps only the faces `F - j` with the same lcm as `F`, so
/// it splits by multidegree. With `prime = Some(p)` ranks are taken over
/// `F_p` instead of the rationals.
pub fn betti_numbers_taylor(gens: &[Monomial], prime: Option<u64>) -> Result<BettiTable, BettiError> {
    if gens.len() > TAYLOR_GENERATOR_CAP {
        return Err(BettiError::TooManyGenerators {
            count: gens.len(),
            cap: TAYLOR_GENERATOR_CAP,
        });
    }
    check_minimal(gens)?;
    let n = gens.len();
    // faces of size 1..=5 grouped by lcm; size k gives homological degree k
    let mut groups: BTreeMap<Monomial, Vec<Vec<u32>>> = BTreeMap::new();
    for mask in 1u32..(1u32 << n) {
        let size = mask.count_ones() as usize;
        if size > 5 {
            continue;
        }
        let lcm = (0..n)
            .filter(|&i| mask >> i & 1 == 1)
            .fold(Monomial::ONE, |acc, i| acc.lcm(&gens[i]));
        let g = groups.entry(lcm).or_insert_with(|| vec![Vec::new(); 6]);
        g[size].push(mask);
    }
    let rank = |rows: &[Vec<i64>]| match prime {
        Some(p) => rank_mod_p(rows, p),
        None => rank_rational(rows),
    };
    let mut graded = BTreeMap::new();
    for (lcm, by_size) in &groups {
        // d_k: size k -> size k - 1, within the group
        let diff_rank = |k: usize| -> usize {
            if !(2..=5).contains(&k) || by_size[k].is_empty() || by_size[k - 1].is_empty() {
                return 0;
            }
            let rows: Vec<Vec<i64>> = by_size[k - 1]
                .iter()
                .map(|&d| {
                    by_size[k]
                        .iter()
                        .map(|&s| {
                            if d & !s != 0 {
                                return 0;
                            }
                            let removed = s & !d;
                            let pos = (s & (removed - 1)).count_ones();
                            if pos % 2 == 0 {
                                1
                            } else {
                                -1
                            }
                        })
                        .collect()
                })
                .collect();
            rank(&rows)
        };
        // H_k(S/I) for k = 1..=4 lives in size-k faces; beta_{k-1}(I) = H_k
        for (k, faces) in by_size.iter().enumerate().take(5).skip(1) {
            let dim = faces.len() - diff_rank(k) - diff_rank(k + 1);
            if dim > 0 {
                graded.insert((*lcm, k - 1), dim);
            }
        }
    }
    Ok(BettiTable::from_graded(graded))
}

/// Coefficient of `x^b` in the numerator `K(S/I) = H(S/I) (1-x)(1-y)(1-z)`.
fn k_polynomial_coefficient(b: &Monomial, gens: &[Monomial]) -> i64 {
    let mut total = 0;
    for f in 0u8..8 {
        let e = [f & 1, (f >> 1) & 1, (f >> 2) & 1].map(u64::from);
        if (0..3).any(|k| b.0[k] < e[k]) {
            continue;
        }
        let c = Monomial([b.0[0] - e[0], b.0[1] - e[1], b.0[2] - e[2]]);
        if !in_ideal(&c, gens) {
            total += if f.count_ones() % 2 == 0 { 1 } else { -1 };
        }
    }
    total
}

/// Checks `sum_i (-1)^i beta_{i,b}(I) = -K_b(S/I)` at every multidegree of
/// the lcm lattice, and that the numerator vanishes off the lattice at the
/// corners `b + e_k`. Returns the first failing multidegree.
pub fn euler_check(gens: &[Monomial], table: &BettiTable) -> Option<Monomial> {
    let mut alternating: BTreeMap<Monomial, i64> = BTreeMap::new();
    for &(m, i, dim) in &table.multigraded {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        *alternating.entry(m).or_default() += sign * dim as i64;
    }
    let lattice = lcm_lattice(gens);
    for b in &lattice {
        let lhs = alternating.get(b).copied().unwrap_or(0);
        if lhs != -k_polynomial_coefficient(b, gens) {
            return Some(*b);
        }
    }
    for m in alternating.keys() {
        if !lattice.contains(m) {
            return Some(*m);
        }
    }
    for b in &lattice {
        for k in 0..3 {
            let mut c = *b;
            c.0[k] += 1;
            if !lattice.contains(&c) && k_polynomial_coefficient(&c, gens) != 0 {
                return Some(c);
            }
        }
    }
    None
}

/// Number of `i`-dimensional faces of the cyclic 3-polytope on `r` vertices.
pub fn cyclic_polytope_face_count(i: u32, n: u32, r: i64) -> Result<i64, BettiError> {
    if n != 3 {
        return Err(BettiError::Unsupported(n));
    }
    Ok(match i {
        0 => r,
        1 => 3 * r - 6,
        2 => 2 * r - 4,
        _ => 0,
    })
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TheoremBoundReport {
    pub width: i64,
    pub mu: i64,
    pub betti: BettiTable,
    /// `mu <= width + 1`
    pub mu_ok: bool,
    /// `beta1(in) <= 3 width - 3`
    pub beta1_ok: bool,
    /// `beta2(in) <= 2 width - 3`
    pub beta2_ok: bool,
    /// `(beta1 <= 3r - 6, beta2 <= 2r - 5)` with `r = beta0(in)`, when `r >= 3`.
    pub cyclic_ok: Option<(bool, bool)>,
    pub euler_ok: bool,
}

impl TheoremBoundReport {
    pub fn passed(&self) -> bool {
        self.mu_ok
            && self.beta1_ok
            && self.beta2_ok
            && self.euler_ok
            && self.cyclic_ok.is_none_or(|(a, b)| a && b)
    }
}

/// Evaluates the width bounds on the initial ideal of `gs`.
pub fn check_theorem_bounds(s: &Semigroup, gs: &GeneratorSet) -> Result<TheoremBoundReport, BettiError> {
    let lead = initial_ideal(gs)?;
    let betti = betti_numbers_capped(&lead, BOUND_CHECK_GENERATOR_CAP)?;
    let w = s.width;
    let mu = gs.mu() as i64;
    let r = betti.beta0 as i64;
    let cyclic_ok = if r >= 3 {
        let c1 = cyclic_polytope_face_count(1, 3, r)?;
        let c2 = cyclic_polytope_face_count(2, 3, r)?;
        Some((betti.beta1 as i64 <= c1, (betti.beta2 as i64) < c2))
    } else {
        None
    };
    Ok(TheoremBoundReport {
        width: w,
        mu,
        mu_ok: mu <= w + 1,
        beta1_ok: betti.beta1 as i64 <= 3 * w - 3,
        beta2_ok: betti.beta2 as i64 <= 2 * w - 3,
        cyclic_ok,
        euler_ok: euler_check(&lead, &betti).is_none(),
        betti,
    })
}

/// `k_{a,b} = b max(a/d, (b-a)/d - 1)`.
pub fn k_ab_threshold(s: &Semigroup) -> i64 {
    s.b * (s.a / s.d).max((s.b - s.a) / s.d - 1)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ThresholdReport {
    pub k: i64,
    /// `n1 >= k`
    pub applies: bool,
    /// 2 for complete intersections, 3 otherwise.
    pub expected_mu: i64,
    pub ok: bool,
}

/// Above the threshold the tangent cone needs exactly as many generators as
/// the ideal itself.
pub fn check_threshold(s: &Semigroup, gs: &GeneratorSet) -> ThresholdReport {
    let k = k_ab_threshold(s);
    let applies = s.n1 >= k;
    let expected_mu = if gs.case_tag.is_complete_intersection() { 2 } else { 3 };
    ThresholdReport {
        k,
        applies,
        expected_mu,
        ok: !applies || gs.mu() as i64 == expected_mu,
    }
}
