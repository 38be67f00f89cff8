//! Vertex functions of a threefold.
//!
//! The triple Hodge integrals over `Mbar_{g,1}` are never integrated
//! directly. Their generating function has the closed form
//!
//! ```text
//! z' + sum_{g>0} u^{2g} I_{g,0} = z' * S^{(2z' + 3H + c1)/z'},   z' = z - H,
//! ```
//!
//! with `S = sin(u/2)/(u/2)`. Expanding the right-hand side in `z'`,
//! substituting back `z' = z - H` and keeping non-negative powers of `z`
//! gives the truncated vertex functions
//!
//! ```text
//! sum_{g>0} u^{2g} mu_{g,0}(z) = S^2 ((z - H) + log S (3H + c1)) - z + H
//! sum_{g>0} u^{2g} mu_{g,1}    = S^2 - 1
//! ```
//!
//! [`mu_g0`] and [`mu_g1`] evaluate the second pair directly from the sine
//! series. [`i_function_expansion`] performs the full Laurent expansion, so
//! comparing the two ([`verify_mu_truncation`]) checks the expansion
//! independently.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rat::{int, Rat};
use crate::report::CheckReport;
use crate::series::{sinc_half, Coeff, USeries};

/// Cap meaning "no truncation". Only constants can be inverted under it.
pub const UNCAPPED: u32 = u32::MAX;

pub const DEFAULT_DEGREE_CAP: u32 = 3;
pub const DEFAULT_Z_DEPTH: u32 = 3;

/// Polynomial in the commuting symbols `H` and `c1`, truncated above a total
/// degree.
#[derive(Clone, Debug)]
pub struct GradedPoly {
    /// `(power of H, power of c1) -> coefficient`, zero coefficients never stored.
    terms: BTreeMap<(u32, u32), Rat>,
    degree_cap: u32,
}

impl GradedPoly {
    pub fn zero_capped(degree_cap: u32) -> Self {
        Self {
            terms: BTreeMap::new(),
            degree_cap,
        }
    }

    pub fn constant(r: Rat, degree_cap: u32) -> Self {
        Self::monomial(r, 0, 0, degree_cap)
    }

    /// `r H^h c1^c`, or zero when `h + c` exceeds the cap.
    pub fn monomial(r: Rat, h: u32, c: u32, degree_cap: u32) -> Self {
        let mut p = Self::zero_capped(degree_cap);
        p.insert(h, c, r);
        p
    }

    pub fn h(degree_cap: u32) -> Self {
        Self::monomial(int(1), 1, 0, degree_cap)
    }

    pub fn c1(degree_cap: u32) -> Self {
        Self::monomial(int(1), 0, 1, degree_cap)
    }

    fn insert(&mut self, h: u32, c: u32, r: Rat) {
        if r.is_zero() || u64::from(h) + u64::from(c) > u64::from(self.degree_cap) {
            return;
        }
        let slot = self.terms.entry((h, c)).or_insert_with(Rat::zero);
        *slot += r;
        if slot.is_zero() {
            self.terms.remove(&(h, c));
        }
    }

    pub fn degree_cap(&self) -> u32 {
        self.degree_cap
    }

    pub fn coefficient(&self, h: u32, c: u32) -> Rat {
        self.terms.get(&(h, c)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn degree_zero(&self) -> Rat {
        self.coefficient(0, 0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rat)> {
        self.terms.iter()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&k| k == (0, 0))
    }

    /// Highest total degree present, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|(h, c)| h + c).max()
    }

    pub fn with_cap(&self, degree_cap: u32) -> Self {
        let mut out = Self::zero_capped(degree_cap);
        for (&(h, c), r) in &self.terms {
            out.insert(h, c, r.clone());
        }
        out
    }

    fn combine_cap(&self, other: &Self) -> u32 {
        self.degree_cap.min(other.degree_cap)
    }
}

impl PartialEq for GradedPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Add<&GradedPoly> for &GradedPoly {
    type Output = GradedPoly;
    fn add(self, rhs: &GradedPoly) -> GradedPoly {
        let mut out = self.with_cap(self.combine_cap(rhs));
        for (&(h, c), r) in &rhs.terms {
            out.insert(h, c, r.clone());
        }
        out
    }
}

impl Neg for &GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        GradedPoly {
            terms: self.terms.iter().map(|(k, r)| (*k, -r)).collect(),
            degree_cap: self.degree_cap,
        }
    }
}

impl Sub<&GradedPoly> for &GradedPoly {
    type Output = GradedPoly;
    fn sub(self, rhs: &GradedPoly) -> GradedPoly {
        self + &(-rhs)
    }
}

impl Mul<&GradedPoly> for &GradedPoly {
    type Output = GradedPoly;
    fn mul(self, rhs: &GradedPoly) -> GradedPoly {
        let mut out = GradedPoly::zero_capped(self.combine_cap(rhs));
        for (&(h1, c1), r1) in &self.terms {
            for (&(h2, c2), r2) in &rhs.terms {
                out.insert(h1 + h2, c1 + c2, r1 * r2);
            }
        }
        out
    }
}

impl Add for GradedPoly {
    type Output = GradedPoly;
    fn add(self, rhs: GradedPoly) -> GradedPoly {
        &self + &rhs
    }
}

impl Mul for GradedPoly {
    type Output = GradedPoly;
    fn mul(self, rhs: GradedPoly) -> GradedPoly {
        &self * &rhs
    }
}

impl Zero for GradedPoly {
    fn zero() -> Self {
        Self::zero_capped(UNCAPPED)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for GradedPoly {
    fn one() -> Self {
        Self::constant(int(1), UNCAPPED)
    }
}

impl Coeff for GradedPoly {
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scaled(&self, r: &Rat) -> Self {
        if r.is_zero() {
            return Self::zero_capped(self.degree_cap);
        }
        GradedPoly {
            terms: self.terms.iter().map(|(k, x)| (*k, x * r)).collect(),
            degree_cap: self.degree_cap,
        }
    }

    /// Inverse of `c0 (1 + N)` with `N` nilpotent under the cap:
    /// `c0^-1 sum_k (-N)^k`.
    fn try_inverse(&self) -> Option<Self> {
        let c0 = self.degree_zero();
        if c0.is_zero() {
            return None;
        }
        let c0_inv = c0.recip();
        if self.is_constant() {
            return Some(Self::constant(c0_inv, self.degree_cap));
        }
        if self.degree_cap == UNCAPPED {
            return None;
        }
        let unit = Self::constant(int(1), self.degree_cap);
        let minus_nil = &unit - &self.scaled(&c0_inv);
        let mut acc = unit.clone();
        let mut power = unit;
        for _ in 0..self.degree_cap {
            power = &power * &minus_nil;
            acc = &acc + &power;
        }
        Some(acc.scaled(&c0_inv))
    }
}

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (&(h, c), r) in &self.terms {
            let mut factors = Vec::new();
            match h {
                0 => {}
                1 => factors.push("H".to_string()),
                _ => factors.push(format!("H^{h}")),
            }
            match c {
                0 => {}
                1 => factors.push("c1".to_string()),
                _ => factors.push(format!("c1^{c}")),
            }
            if factors.is_empty() {
                parts.push(format!("{r}"));
            } else if r.is_one() {
                parts.push(factors.join("*"));
            } else {
                parts.push(format!("{r}*{}", factors.join("*")));
            }
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Finite Laurent polynomial in `z` with [`GradedPoly`] coefficients.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ZLaurent {
    /// Non-zero coefficients only.
    coeffs: BTreeMap<i64, GradedPoly>,
}

impl ZLaurent {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, GradedPoly)>) -> Self {
        let mut out = Self::new();
        for (k, p) in terms {
            out.add_term(k, &p);
        }
        out
    }

    pub fn add_term(&mut self, z_power: i64, p: &GradedPoly) {
        let sum = match self.coeffs.get(&z_power) {
            Some(prev) => prev + p,
            None => p.clone(),
        };
        if sum.is_zero() {
            self.coeffs.remove(&z_power);
        } else {
            self.coeffs.insert(z_power, sum);
        }
    }

    /// Coefficient of `z^k`; zero outside the support.
    pub fn coeff(&self, k: i64) -> GradedPoly {
        self.coeffs.get(&k).cloned().unwrap_or_else(GradedPoly::zero)
    }

    pub fn z_min(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn z_max(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &GradedPoly)> {
        self.coeffs.iter().map(|(k, p)| (*k, p))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `[.]_{z >= 0}`: drops exactly the negative powers.
    pub fn nonneg_part(&self) -> Self {
        Self {
            coeffs: self.coeffs.range(0..).map(|(k, p)| (*k, p.clone())).collect(),
        }
    }

    /// Division by `z`.
    pub fn div_z(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(k, p)| (k - 1, p.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, p) in &other.coeffs {
            out.add_term(*k, &-p);
        }
        out
    }
}

impl fmt::Display for ZLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .rev()
            .map(|(k, p)| match k {
                0 => format!("({p})"),
                1 => format!("({p})*z"),
                _ => format!("({p})*z^{k}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `mu_{g,0}(z) = a1 z + a_h H + a_c1 c1 + scalar`.
///
/// Only the degree-zero part in `z` may carry `H` and `c1`, and only
/// linearly; `scalar` is always zero for the closed form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuValue {
    #[serde(with = "crate::rat::serde_str")]
    pub a1: Rat,
    #[serde(with = "crate::rat::serde_str")]
    pub a_h: Rat,
    #[serde(with = "crate::rat::serde_str")]
    pub a_c1: Rat,
    #[serde(with = "crate::rat::serde_str")]
    pub scalar: Rat,
}

impl MuValue {
    pub fn zero() -> Self {
        Self {
            a1: Rat::zero(),
            a_h: Rat::zero(),
            a_c1: Rat::zero(),
            scalar: Rat::zero(),
        }
    }

    pub fn to_zlaurent(&self, degree_cap: u32) -> ZLaurent {
        let z0 = &(&GradedPoly::monomial(self.a_h.clone(), 1, 0, degree_cap)
            + &GradedPoly::monomial(self.a_c1.clone(), 0, 1, degree_cap))
            + &GradedPoly::constant(self.scalar.clone(), degree_cap);
        ZLaurent::from_terms([
            (1, GradedPoly::constant(self.a1.clone(), degree_cap)),
            (0, z0),
        ])
    }

    /// Reads a truncated vertex function back, or `None` if it is not of the
    /// form `a1 z + (linear in H, c1) + scalar`.
    pub fn from_zlaurent(mu: &ZLaurent) -> Option<Self> {
        let value = Self {
            a1: mu.coeff(1).degree_zero(),
            a_h: mu.coeff(0).coefficient(1, 0),
            a_c1: mu.coeff(0).coefficient(0, 1),
            scalar: mu.coeff(0).degree_zero(),
        };
        let cap = mu.terms().map(|(_, p)| p.degree_cap()).min().unwrap_or(UNCAPPED);
        (value.to_zlaurent(cap) == mu.nonneg_part()).then_some(value)
    }
}

impl fmt::Display for MuValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = [
            (&self.a1, "*z"),
            (&self.a_h, "*H"),
            (&self.a_c1, "*c1"),
            (&self.scalar, ""),
        ];
        let mut first = true;
        for (r, name) in terms {
            if r.is_zero() {
                continue;
            }
            let sign = if r.is_negative() { "-" } else { "+" };
            match (first, r.is_negative()) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, _) => write!(f, " {sign} ")?,
            }
            write!(f, "{}{name}", r.abs())?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `t1 = S^2 - 1` and `t2 = S^2 log S`, both to `order`.
pub(crate) fn t_series(order: i64) -> (USeries<Rat>, USeries<Rat>) {
    let s = sinc_half(order);
    let s2 = s.mul(&s);
    let log_s = s.log().expect("S has constant term 1");
    let t1 = s2.sub(&USeries::one(order));
    let t2 = s2.mul(&log_s);
    (t1, t2)
}

fn mu_from_t(t1: &Rat, t2: &Rat) -> MuValue {
    // t1 (z - H) + t2 (3H + c1)
    MuValue {
        a1: t1.clone(),
        a_h: t2 * int(3) - t1,
        a_c1: t2.clone(),
        scalar: Rat::zero(),
    }
}

/// `[u^{2g}] (S^2 ((z - H) + log S (3H + c1)) - z + H)`. Zero at `g = 0`.
pub fn mu_g0(g: u32) -> MuValue {
    let e = 2 * i64::from(g);
    let (t1, t2) = t_series(e + 1);
    mu_from_t(&t1.coeff(e).unwrap(), &t2.coeff(e).unwrap())
}

/// `[u^{2g}] (S^2 - 1)`. Zero at `g = 0`.
pub fn mu_g1(g: u32) -> Rat {
    let e = 2 * i64::from(g);
    t_series(e + 1).0.coeff(e).unwrap()
}

/// Tabulated `mu_{g,0}` and `mu_{g,1}` for `0 <= g <= g_max`.
///
/// Entries are plain data so a check can be fed deliberately wrong values.
#[derive(Clone, Debug, PartialEq)]
pub struct MuTable {
    mu0: Vec<MuValue>,
    mu1: Vec<Rat>,
}

impl MuTable {
    pub fn closed_form(g_max: u32) -> Self {
        let order = 2 * i64::from(g_max) + 1;
        let (t1, t2) = t_series(order);
        let mut mu0 = Vec::new();
        let mut mu1 = Vec::new();
        for g in 0..=i64::from(g_max) {
            let (a, b) = (t1.coeff(2 * g).unwrap(), t2.coeff(2 * g).unwrap());
            mu0.push(mu_from_t(&a, &b));
            mu1.push(a);
        }
        Self { mu0, mu1 }
    }

    /// Reads the table off the full I-function expansion:
    /// `mu_{g,0} = [I_{g,0}]_{z>=0}` and `mu_{g,1} = [I_{g,0}/z]_{z>=0}`.
    /// `None` if some truncation is not of the shape [`MuValue`] allows.
    pub fn from_i_function(g_max: u32, z_depth: u32, degree_cap: u32) -> Option<Self> {
        let expansion = i_function_expansion(2 * i64::from(g_max), z_depth, degree_cap);
        let mut mu0 = vec![MuValue::zero()];
        let mut mu1 = vec![Rat::zero()];
        for g in 1..=g_max {
            let i_g = &expansion[&g];
            mu0.push(MuValue::from_zlaurent(&i_g.nonneg_part())?);
            let ratio = i_g.div_z().nonneg_part();
            let b1 = ratio.coeff(0);
            if !b1.is_constant() || ratio.z_max().is_some_and(|k| k > 0) {
                return None;
            }
            mu1.push(b1.degree_zero());
        }
        Some(Self { mu0, mu1 })
    }

    pub fn g_max(&self) -> u32 {
        (self.mu1.len() - 1) as u32
    }

    pub fn mu0(&self, g: u32) -> Option<&MuValue> {
        self.mu0.get(g as usize)
    }

    pub fn mu1(&self, g: u32) -> Option<&Rat> {
        self.mu1.get(g as usize)
    }

    /// Replaces `mu_{g,0}`. Panics if `g > g_max`.
    pub fn set_mu0(&mut self, g: u32, value: MuValue) {
        self.mu0[g as usize] = value;
    }

    /// Replaces `mu_{g,1}`. Panics if `g > g_max`.
    pub fn set_mu1(&mut self, g: u32, value: Rat) {
        self.mu1[g as usize] = value;
    }
}

fn binomial(n: u64, k: u64) -> Rat {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Rat::from_integer(acc)
}

/// Expansion of `z' S^{(2z' + 3H + c1)/z'}` per genus, re-expressed in `z`.
///
/// Genus `g` is the coefficient of `u^{2g}` for `2g <= order_u`. In `z'` the
/// expression is `sum_k z'^{1-k} S^2 (log S (3H + c1))^k / k!`; the first
/// `z_depth` negative powers of `z'` are kept. Powers `z'^{-j}` become
/// `sum_i C(j+i-1, i) H^i z^{-j-i}`, which only ever lowers the `z` power,
/// so the non-negative part in `z` comes from `z'^1` and `z'^0` alone and no
/// choice of `z_depth` changes it.
pub fn i_function_expansion(
    order_u: i64,
    z_depth: u32,
    degree_cap: u32,
) -> BTreeMap<u32, ZLaurent> {
    let a2 = &GradedPoly::h(degree_cap).scaled(&int(3)) + &GradedPoly::c1(degree_cap);
    expand_with_exponent_class(order_u, z_depth, degree_cap, &a2)
}

/// Same expansion with `3H + c1` replaced by an arbitrary class `a2`.
fn expand_with_exponent_class(
    order_u: i64,
    z_depth: u32,
    degree_cap: u32,
    a2: &GradedPoly,
) -> BTreeMap<u32, ZLaurent> {
    let order = order_u.max(0) + 1;
    let lift = |r: &Rat| GradedPoly::constant(r.clone(), degree_cap);
    let s = sinc_half(order);
    let s2 = s.mul(&s).map_coeffs(lift);
    let log_s = s.log().expect("S has constant term 1").map_coeffs(lift);
    let exponent_term = log_s.scale_by(a2);

    // coefficient of z'^{1-k}
    let mut z_prime_terms = Vec::new();
    let mut power = USeries::<GradedPoly>::one(order);
    let mut k_factorial = BigInt::one();
    for k in 0..=u64::from(z_depth) + 1 {
        if k > 0 {
            power = power.mul(&exponent_term);
            k_factorial *= BigInt::from(k);
        }
        let term = s2
            .mul(&power)
            .scale(&Rat::new(BigInt::one(), k_factorial.clone()));
        z_prime_terms.push(term);
    }

    let h = GradedPoly::h(degree_cap);
    let mut out = BTreeMap::new();
    for g in 0..=(order_u.max(0) / 2) as u32 {
        let e = 2 * i64::from(g);
        let mut laurent = ZLaurent::new();
        for (k, series) in z_prime_terms.iter().enumerate() {
            let p = series.coeff(e).expect("within order");
            if p.is_zero() {
                continue;
            }
            match k {
                0 => {
                    laurent.add_term(1, &p);
                    laurent.add_term(0, &-&(&p * &h));
                }
                1 => laurent.add_term(0, &p),
                _ => {
                    let j = (k - 1) as u64;
                    let mut h_pow = GradedPoly::constant(int(1), degree_cap);
                    for i in 0..=u64::from(degree_cap) {
                        let term = &p * &h_pow.scaled(&binomial(j + i - 1, i));
                        laurent.add_term(-(j as i64) - i as i64, &term);
                        h_pow = &h_pow * &h;
                        if h_pow.is_zero() {
                            break;
                        }
                    }
                }
            }
        }
        out.insert(g, laurent);
    }
    out
}

/// Checks `[I_{g,0}]_{z>=0} = mu_{g,0}` for `1 <= g <= order_u / 2`, with the
/// right-hand side from [`mu_g0`].
pub fn check_mu_truncation(expansion: &BTreeMap<u32, ZLaurent>, order_u: i64) -> CheckReport {
    let mut report = CheckReport::new("i-function truncation equals mu_{g,0}");
    for g in 1..=(order_u.max(0) / 2) as u32 {
        let found = expansion
            .get(&g)
            .map(|i| i.nonneg_part().to_string())
            .unwrap_or_else(|| "missing".into());
        let expected = mu_g0(g).to_zlaurent(UNCAPPED).to_string();
        report.record(format!("g={g}"), expected, found);
    }
    report
}

pub fn verify_mu_truncation(order_u: i64, z_depth: u32, degree_cap: u32) -> CheckReport {
    check_mu_truncation(&i_function_expansion(order_u, z_depth, degree_cap), order_u)
}

/// Checks `[I_{g,0}/z]_{z>=0} = mu_{g,1}` (a constant) for
/// `1 <= g <= order_u / 2`.
pub fn check_i_ratio(expansion: &BTreeMap<u32, ZLaurent>, order_u: i64) -> CheckReport {
    let mut report = CheckReport::new("[I_{g,0}/z]_{z>=0} equals mu_{g,1}");
    for g in 1..=(order_u.max(0) / 2) as u32 {
        let found = expansion
            .get(&g)
            .map(|i| i.div_z().nonneg_part().to_string())
            .unwrap_or_else(|| "missing".into());
        let expected =
            ZLaurent::from_terms([(0, GradedPoly::constant(mu_g1(g), UNCAPPED))]).to_string();
        report.record(format!("g={g}"), expected, found);
    }
    report
}

pub fn verify_i_ratio(order_u: i64) -> CheckReport {
    let expansion = i_function_expansion(order_u, DEFAULT_Z_DEPTH, DEFAULT_DEGREE_CAP);
    check_i_ratio(&expansion, order_u)
}
