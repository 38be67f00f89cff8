//! The sine-power transform between Gromov–Witten and unramified
//! Gromov–Witten invariants of a threefold, in a fixed curve class `beta`
//! with `c = beta . c1(X)`:
//!
//! ```text
//! sum_g GW_g u^{2g-2} = sum_g uGW_g u^{2g-2} S^{2g-2+c},   S = sin(u/2)/(u/2).
//! ```
//!
//! The transform is computed two ways. [`sine_factor`] is the closed form.
//! [`correction_raw_sum`] rebuilds the same multiplier from the partition sum
//! over `mu_{g,1}` and `mu_{g,0}(-psi + H)` insertions, reducing each bracket
//! with the dilaton and divisor equations. [`verify_raw_equals_closed`]
//! compares the two coefficient by coefficient.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hodge::{t_series, MuTable};
use crate::partitions::{multinomial, multiplicities, partitions_over};
use crate::rat::{factorial, falling_factorial, format_rat, int, Rat};
use crate::report::CheckReport;
use crate::series::{sinc_half, USeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WallcrossError {
    #[error("expected a {expected} table, got {found}")]
    WrongKind { expected: Kind, found: Kind },
    #[error("genus {0} is missing from the table")]
    MissingGenus(u32),
    #[error("genus {genus} exceeds g_max = {g_max}")]
    GenusAboveMax { genus: u32, g_max: u32 },
    #[error("mu table stops at genus {have}, genus {needed} is required")]
    MuTableTooShort { needed: u32, have: u32 },
    #[error("mu_{{{0},0}} has a non-zero scalar part, which the bracket reduction does not cover")]
    NonzeroScalar(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Gw,
    Ugw,
    Gv,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Gw => "GW",
            Kind::Ugw => "uGW",
            Kind::Gv => "GV",
        })
    }
}

/// Invariants of one curve class, indexed by genus.
///
/// Genera above `g_max` are unknown, not zero. Genera at or below `g_max`
/// without an entry are read as zero by the forward transform and rejected
/// by the inverse one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenusTable {
    kind: Kind,
    c: i64,
    primitive: bool,
    g_max: u32,
    values: BTreeMap<u32, Rat>,
}

impl GenusTable {
    pub fn new(
        kind: Kind,
        c: i64,
        primitive: bool,
        g_max: u32,
        values: BTreeMap<u32, Rat>,
    ) -> Result<Self, WallcrossError> {
        if let Some((&genus, _)) = values.iter().next_back().filter(|(&g, _)| g > g_max) {
            return Err(WallcrossError::GenusAboveMax { genus, g_max });
        }
        Ok(Self {
            kind,
            c,
            primitive,
            g_max,
            values,
        })
    }

    /// Convenience constructor from `(genus, value)` pairs.
    pub fn from_pairs(
        kind: Kind,
        c: i64,
        primitive: bool,
        g_max: u32,
        pairs: impl IntoIterator<Item = (u32, Rat)>,
    ) -> Result<Self, WallcrossError> {
        Self::new(kind, c, primitive, g_max, pairs.into_iter().collect())
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    /// `beta . c1(X)`.
    pub fn c(&self) -> i64 {
        self.c
    }

    pub fn primitive(&self) -> bool {
        self.primitive
    }

    pub fn g_max(&self) -> u32 {
        self.g_max
    }

    pub fn values(&self) -> &BTreeMap<u32, Rat> {
        &self.values
    }

    pub fn value(&self, genus: u32) -> Option<&Rat> {
        self.values.get(&genus)
    }

    pub fn value_or_zero(&self, genus: u32) -> Rat {
        self.values.get(&genus).cloned().unwrap_or_else(Rat::zero)
    }

    /// Same values under another convention label.
    pub(crate) fn relabeled(&self, kind: Kind) -> Self {
        Self {
            kind,
            ..self.clone()
        }
    }

    /// Every genus from the lowest present one up to `g_max` has an entry.
    pub fn first_gap(&self) -> Option<u32> {
        let low = *self.values.keys().next()?;
        (low..=self.g_max).find(|g| !self.values.contains_key(g))
    }

    fn expect_kind(&self, expected: Kind) -> Result<(), WallcrossError> {
        if self.kind != expected {
            return Err(WallcrossError::WrongKind {
                expected,
                found: self.kind,
            });
        }
        Ok(())
    }
}

/// `S^{2g-2+c}` to `order`.
pub fn sine_factor(g: i64, c: i64, order: i64) -> USeries<Rat> {
    sinc_half(order)
        .pow_int(2 * g - 2 + c)
        .expect("S has an invertible leading coefficient")
}

/// Coefficients `[u^{2j}] S^{2g-2+c}` for `0 <= j <= depth`.
fn sine_coefficients(g: u32, c: i64, depth: u32) -> Vec<Rat> {
    let s = sine_factor(i64::from(g), c, 2 * i64::from(depth) + 1);
    (0..=depth)
        .map(|j| s.coeff(2 * i64::from(j)).unwrap())
        .collect()
}

/// `GW_h = sum_{g <= h} uGW_g [u^{2(h-g)}] S^{2g-2+c}` for every `h <= g_max`.
pub fn gw_from_ugw(t: &GenusTable) -> Result<GenusTable, WallcrossError> {
    t.expect_kind(Kind::Ugw)?;
    let g_max = t.g_max;
    let mut gw: BTreeMap<u32, Rat> = (0..=g_max).map(|h| (h, Rat::zero())).collect();
    for (&g, value) in &t.values {
        if value.is_zero() {
            continue;
        }
        let coeffs = sine_coefficients(g, t.c, g_max - g);
        for (j, s) in coeffs.iter().enumerate() {
            *gw.get_mut(&(g + j as u32)).unwrap() += value * s;
        }
    }
    Ok(GenusTable {
        kind: Kind::Gw,
        values: gw,
        ..t.clone()
    })
}

/// Inverse of [`gw_from_ugw`]. The transform is triangular with unit
/// diagonal, so genera are solved in increasing order.
pub fn ugw_from_gw(t: &GenusTable) -> Result<GenusTable, WallcrossError> {
    t.expect_kind(Kind::Gw)?;
    if let Some(g) = t.first_gap() {
        return Err(WallcrossError::MissingGenus(g));
    }
    let g_max = t.g_max;
    let mut ugw: BTreeMap<u32, Rat> = BTreeMap::new();
    // residual[h] = GW_h minus the contributions of already solved genera
    let mut residual: Vec<Rat> = (0..=g_max).map(|h| t.value_or_zero(h)).collect();
    for g in 0..=g_max {
        let value = residual[g as usize].clone();
        if !value.is_zero() {
            let coeffs = sine_coefficients(g, t.c, g_max - g);
            for (j, s) in coeffs.iter().enumerate().skip(1) {
                residual[g as usize + j] -= &value * s;
            }
        }
        ugw.insert(g, value);
    }
    Ok(GenusTable {
        kind: Kind::Ugw,
        values: ugw,
        ..t.clone()
    })
}

/// `sum_{a1,a2} m2^{a2}/a2! * ff(m1 - a2, a1)/a1! * t1^{a1} t2^{a2}` with
/// `t1 = S^2 - 1`, `t2 = S^2 log S` and `ff` the falling factorial.
///
/// This is the bracket sum after dilaton and divisor reduction of
/// `(t1 A1 + t2 A2)^k / k!` with `<A1> = m1`, `<A2> = m2`.
pub fn eq_sum(m1: &Rat, m2: &Rat, order: i64) -> USeries<Rat> {
    if order <= 0 {
        return USeries::zero(order);
    }
    let (t1, t2) = t_series(order);
    // t1 and t2 both start at u^2
    let max_total = ((order - 1) / 2) as u32;
    let powers = |t: &USeries<Rat>| {
        let mut out = vec![USeries::one(order)];
        for _ in 0..max_total {
            let next = out.last().unwrap().mul(t);
            out.push(next);
        }
        out
    };
    let t1_pow = powers(&t1);
    let t2_pow = powers(&t2);

    let mut total = USeries::zero(order);
    for a2 in 0..=max_total {
        let m2_part = pow_rat(m2, a2) / Rat::from_integer(factorial(a2));
        for a1 in 0..=(max_total - a2) {
            let ff = falling_factorial(&(m1 - int(i64::from(a2))), a1);
            let coeff = &m2_part * ff / Rat::from_integer(factorial(a1));
            if coeff.is_zero() {
                continue;
            }
            let term = t1_pow[a1 as usize].mul(&t2_pow[a2 as usize]).scale(&coeff);
            total = total.add(&term);
        }
    }
    total
}

/// `(1 + t1)^{m1} exp(m2 log S)`, the resummed form of [`eq_sum`].
pub fn eq_sum_closed(m1: i64, m2: &Rat, order: i64) -> USeries<Rat> {
    let s = sinc_half(order);
    let s2_pow = s.mul(&s).pow_int(m1).expect("S^2 is invertible");
    let log_s = s.log().expect("S has constant term 1");
    let exp_part = log_s.scale(m2).exp().expect("log S has zero constant term");
    s2_pow.mul(&exp_part)
}

fn pow_rat(r: &Rat, k: u32) -> Rat {
    (0..k).fold(Rat::one(), |acc, _| acc * r)
}

/// Wall-crossing multiplier on top of a genus-`g0` bracket with `n`
/// insertions, assembled from the partition sum. The coefficient of
/// `u^{2 delta}` is the total correction adding genus `delta`; the constant
/// term is 1.
pub fn correction_raw_sum(g0: u32, n: usize, c: i64, order: i64) -> USeries<Rat> {
    let needed = order.max(1).saturating_sub(1) as u32 / 2;
    correction_raw_sum_with(&MuTable::closed_form(needed), g0, n, c, order)
        .expect("closed-form table covers every needed genus")
}

/// [`correction_raw_sum`] with caller-supplied `mu` values.
pub fn correction_raw_sum_with(
    mu: &MuTable,
    g0: u32,
    n: usize,
    c: i64,
    order: i64,
) -> Result<USeries<Rat>, WallcrossError> {
    if order <= 0 {
        return Ok(USeries::zero(order));
    }
    let max_excess = ((order - 1) / 2) as u32;
    if max_excess > mu.g_max() {
        return Err(WallcrossError::MuTableTooShort {
            needed: max_excess,
            have: mu.g_max(),
        });
    }
    for g in 1..=max_excess {
        if !mu.mu0(g).unwrap().scalar.is_zero() {
            return Err(WallcrossError::NonzeroScalar(g));
        }
    }

    let bracket = BracketData::new(g0, n, c);
    let mut coeffs = vec![Rat::zero(); order as usize];
    coeffs[0] = Rat::one();
    for excess in 1..=max_excess {
        let total: Rat = partitions_over(g0, excess, n)
            .iter()
            .map(|p| {
                let prefactor = binomial_u(n as u64, p.k1() as u64)
                    * multinomial(p.k1() as u64, &multiplicities(&p.g1)).unwrap();
                let symmetry: BigInt = multiplicities(&p.g2)
                    .iter()
                    .map(|&m| factorial(m as u32))
                    .product();
                let mu1: Rat = p.g1.iter().map(|&g| mu.mu1(g).unwrap().clone()).product();
                let weight = Rat::new(BigInt::from(prefactor), symmetry);
                weight * mu1 * bracket.evaluate(mu, &p.g2)
            })
            .sum();
        coeffs[2 * excess as usize] = total;
    }
    Ok(USeries::from_coeffs(0, coeffs, order))
}

fn binomial_u(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    multinomial(n, &[k, n - k]).unwrap()
}

/// Dilaton/divisor data of the genus-`g0` bracket with `n` primary insertions.
struct BracketData {
    /// `<... (-psi)> = m1 <...>` at `n` insertions: `-(2 g0 - 2 + n)`.
    m1: Rat,
    /// Divisor value of `H`: `2 g0 - 2`.
    h_value: Rat,
    /// Divisor value of `c1(X)`: `beta . c1(X)`.
    c1_value: Rat,
}

impl BracketData {
    fn new(g0: u32, n: usize, c: i64) -> Self {
        let chi = 2 * i64::from(g0) - 2;
        Self {
            m1: int(-(chi + n as i64)),
            h_value: int(chi),
            c1_value: int(c),
        }
    }

    /// `<gamma_1 ... gamma_n prod_i mu_{g_i,0}(-psi + H)> / <gamma_1 ... gamma_n>`.
    ///
    /// Each insertion is `a1 (-psi) + (a1 + a_h) H + a_c1 c1`. Choosing the
    /// `-psi` part in `a` of the `k` insertions and the divisor part in the
    /// rest, the dilaton equation removes the `-psi` insertions first (with
    /// all `k - a` divisor insertions still present), giving
    /// `ff(m1 - (k - a), a)`, and the divisor equation then removes the rest.
    fn evaluate(&self, mu: &MuTable, genera: &[u32]) -> Rat {
        // by_psi[a] = sum over a-subsets of prod(psi parts) * prod(divisor values)
        let mut by_psi = vec![Rat::one()];
        for &g in genera {
            let m = mu.mu0(g).unwrap();
            let psi = &m.a1;
            let divisor = (&m.a1 + &m.a_h) * &self.h_value + &m.a_c1 * &self.c1_value;
            let mut next = vec![Rat::zero(); by_psi.len() + 1];
            for (a, v) in by_psi.iter().enumerate() {
                next[a] += v * &divisor;
                next[a + 1] += v * psi;
            }
            by_psi = next;
        }
        let k = genera.len() as i64;
        by_psi
            .iter()
            .enumerate()
            .map(|(a, v)| v * falling_factorial(&(&self.m1 - int(k - a as i64)), a as u32))
            .sum()
    }
}

/// Compares [`correction_raw_sum`] with [`sine_factor`]`(g0, c)` for every
/// `(g0, n, c)` in range, coefficient by coefficient below `order`.
pub fn verify_raw_equals_closed(
    g0_max: u32,
    n_max: usize,
    c_range: RangeInclusive<i64>,
    order: i64,
) -> CheckReport {
    let needed = order.max(1).saturating_sub(1) as u32 / 2;
    verify_raw_equals_closed_with(&MuTable::closed_form(needed), g0_max, n_max, c_range, order)
}

/// [`verify_raw_equals_closed`] with caller-supplied `mu` values. Cells are
/// evaluated in parallel and reported in `(g0, n, c)` order.
pub fn verify_raw_equals_closed_with(
    mu: &MuTable,
    g0_max: u32,
    n_max: usize,
    c_range: RangeInclusive<i64>,
    order: i64,
) -> CheckReport {
    let cells: Vec<(u32, usize, i64)> = (0..=g0_max)
        .flat_map(|g0| (0..=n_max).map(move |n| (g0, n)))
        .flat_map(|(g0, n)| c_range.clone().map(move |c| (g0, n, c)))
        .collect();
    let per_cell: Vec<CheckReport> = cells
        .par_iter()
        .map(|&(g0, n, c)| {
            let label = format!("g0={g0} n={n} c={c}");
            let mut report = CheckReport::new("");
            let closed = sine_factor(i64::from(g0), c, order);
            match correction_raw_sum_with(mu, g0, n, c, order) {
                Ok(raw) => {
                    for e in 0..order {
                        report.record(
                            format!("{label} u^{e}"),
                            format_rat(&closed.coeff(e).unwrap()),
                            format_rat(&raw.coeff(e).unwrap()),
                        );
                    }
                }
                Err(err) => report.record(label, closed.to_string(), err.to_string()),
            }
            report
        })
        .collect();
    let mut report = CheckReport::new("raw wall-crossing sum equals S^(2g0-2+c)");
    for cell in per_cell {
        report.merge(cell);
    }
    report
}

/// Compares [`eq_sum`] with [`eq_sum_closed`] on a grid of `(m1, m2)`.
pub fn verify_eq_sum_grid(
    m1_range: RangeInclusive<i64>,
    m2_range: RangeInclusive<i64>,
    order: i64,
) -> CheckReport {
    let cells: Vec<(i64, i64)> = m1_range
        .flat_map(|m1| m2_range.clone().map(move |m2| (m1, m2)))
        .collect();
    let per_cell: Vec<CheckReport> = cells
        .par_iter()
        .map(|&(m1, m2)| {
            let mut report = CheckReport::new("");
            let raw = eq_sum(&int(m1), &int(m2), order);
            let closed = eq_sum_closed(m1, &int(m2), order);
            for e in 0..order.max(0) {
                report.record(
                    format!("m1={m1} m2={m2} u^{e}"),
                    format_rat(&closed.coeff(e).unwrap()),
                    format_rat(&raw.coeff(e).unwrap()),
                );
            }
            report
        })
        .collect();
    let mut report = CheckReport::new("eq_sum equals (1+t1)^m1 exp(m2 log S)");
    for cell in per_cell {
        report.merge(cell);
    }
    report
}
