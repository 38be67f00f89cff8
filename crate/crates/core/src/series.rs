//! Truncated Laurent series in one variable `u`.
//!
//! A [`USeries`] stores the coefficients of `u^v, u^(v+1), ..., u^(order-1)`
//! where `v` is the valuation. Every exponent at or above `order` is unknown,
//! so two series combine to the smallest order both operands can vouch for.
//! The coefficient ring is abstracted by [`Coeff`]: exact rationals by
//! default, and graded polynomials in `H`, `c1` for the vertex-function
//! computations in [`crate::hodge`].
//!
//! ```
//! use gwcross::rat::rat;
//! use gwcross::series::sinc_half;
//!
//! let s = sinc_half(6);
//! assert_eq!(s.coeff(2), Some(rat(-1, 24)));
//! assert_eq!(s.coeff(4), Some(rat(1, 1920)));
//! assert_eq!(s.coeff(6), None); // beyond the truncation order
//! ```

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rat::{factorial, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("leading coefficient is not invertible")]
    NonInvertibleLeading,
    #[error("series is zero to its truncation order")]
    ZeroSeries,
    #[error("exp needs a series with zero constant term")]
    NonzeroConstantTerm,
    #[error("exp/log are undefined on series with negative powers of u")]
    LaurentPart,
    #[error("log needs a series with constant term 1")]
    ConstantTermNotOne,
}

/// A commutative ring with a `Q`-algebra structure.
pub trait Coeff: Clone + PartialEq + fmt::Debug + Zero + One + Send + Sync {
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn scaled(&self, r: &Rat) -> Self;
    fn try_inverse(&self) -> Option<Self>;

    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negated())
    }
}

impl Coeff for Rat {
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
        self * r
    }
    fn try_inverse(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct USeries<C: Coeff = Rat> {
    valuation: i64,
    coeffs: Vec<C>,
    order: i64,
}

impl<C: Coeff> USeries<C> {
    /// Builds `sum_i coeffs[i] u^(valuation + i) + O(u^order)`.
    ///
    /// Entries at or above `order` are dropped and missing ones are zero.
    pub fn from_coeffs(valuation: i64, mut coeffs: Vec<C>, order: i64) -> Self {
        let len = (order - valuation).max(0) as usize;
        coeffs.resize(len, C::zero());
        Self::normalized(valuation, coeffs, order)
    }

    pub fn zero(order: i64) -> Self {
        Self {
            valuation: order,
            coeffs: Vec::new(),
            order,
        }
    }

    pub fn one(order: i64) -> Self {
        Self::constant(C::one(), order)
    }

    pub fn constant(c: C, order: i64) -> Self {
        Self::monomial(c, 0, order)
    }

    /// `c u^exp + O(u^order)`.
    pub fn monomial(c: C, exp: i64, order: i64) -> Self {
        Self::from_coeffs(exp, vec![c], order)
    }

    fn normalized(valuation: i64, mut coeffs: Vec<C>, order: i64) -> Self {
        let lead = coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => Self::zero(order),
            Some(k) => {
                coeffs.drain(..k);
                Self {
                    valuation: valuation + k as i64,
                    coeffs,
                    order,
                }
            }
        }
    }

    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    /// `order - valuation`: the number of known coefficients from the leading one.
    pub fn relative_precision(&self) -> i64 {
        self.order - self.valuation
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `u^exp`, or `None` when `exp` is at or above the order.
    pub fn coeff(&self, exp: i64) -> Option<C> {
        if exp >= self.order {
            None
        } else if exp < self.valuation {
            Some(C::zero())
        } else {
            Some(self.coeffs[(exp - self.valuation) as usize].clone())
        }
    }

    /// Like [`coeff`](Self::coeff) but panics past the order.
    fn at(&self, exp: i64) -> C {
        self.coeff(exp)
            .unwrap_or_else(|| panic!("u^{exp} is beyond the truncation order {}", self.order))
    }

    /// Iterates over the stored `(exponent, coefficient)` pairs, zeros included.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> {
        let v = self.valuation;
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, c)| (v + i as i64, c))
    }

    pub fn truncate(&self, order: i64) -> Self {
        if order >= self.order {
            return self.clone();
        }
        let keep = (order - self.valuation).max(0) as usize;
        Self::normalized(self.valuation, self.coeffs[..keep].to_vec(), order)
    }

    /// Multiplication by `u^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            valuation: self.valuation + k,
            coeffs: self.coeffs.clone(),
            order: self.order + k,
        }
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> USeries<D> {
        USeries::normalized(self.valuation, self.coeffs.iter().map(f).collect(), self.order)
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let low = self.valuation.min(other.valuation).min(order);
        let coeffs = (low..order)
            .map(|e| self.at(e).plus(&other.at(e)))
            .collect();
        Self::normalized(low, coeffs, order)
    }

    pub fn neg(&self) -> Self {
        Self {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(Coeff::negated).collect(),
            order: self.order,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, r: &Rat) -> Self {
        Self::normalized(
            self.valuation,
            self.coeffs.iter().map(|c| c.scaled(r)).collect(),
            self.order,
        )
    }

    pub fn scale_by(&self, c: &C) -> Self {
        Self::normalized(
            self.valuation,
            self.coeffs.iter().map(|x| x.times(c)).collect(),
            self.order,
        )
    }

    /// Cauchy product. The result knows as many coefficients past its
    /// valuation as the less precise operand.
    pub fn mul(&self, other: &Self) -> Self {
        let valuation = self.valuation + other.valuation;
        let order = (self.valuation + other.order).min(other.valuation + self.order);
        let len = (order - valuation).max(0) as usize;
        let mut out = vec![C::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                out[i + j] = out[i + j].plus(&a.times(b));
            }
        }
        Self::normalized(valuation, out, order)
    }

    pub fn inv(&self) -> Result<Self, SeriesError> {
        if self.is_zero() {
            return Err(SeriesError::ZeroSeries);
        }
        let lead_inv = self.coeffs[0]
            .try_inverse()
            .ok_or(SeriesError::NonInvertibleLeading)?;
        let p = self.coeffs.len();
        let mut out: Vec<C> = Vec::with_capacity(p);
        out.push(lead_inv.clone());
        for k in 1..p {
            let mut s = C::zero();
            for j in 1..=k {
                s = s.plus(&self.coeffs[j].times(&out[k - j]));
            }
            out.push(s.times(&lead_inv).negated());
        }
        Ok(Self::normalized(
            -self.valuation,
            out,
            -self.valuation + p as i64,
        ))
    }

    /// Exponential of a series with zero constant term.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if self.is_zero() {
            if self.order < 1 {
                return Err(SeriesError::NonzeroConstantTerm);
            }
            return Ok(Self::one(self.order));
        }
        if self.valuation < 0 {
            return Err(SeriesError::LaurentPart);
        }
        if self.valuation == 0 {
            return Err(SeriesError::NonzeroConstantTerm);
        }
        // f = exp(a) solves f' = a' f: n f_n = sum_{k=1..n} k a_k f_{n-k}
        let n_max = self.order as usize;
        let a = |k: usize| self.at(k as i64);
        let mut f: Vec<C> = Vec::with_capacity(n_max);
        f.push(C::one());
        for n in 1..n_max {
            let mut s = C::zero();
            for k in self.valuation as usize..=n {
                let ak = a(k);
                if ak.is_zero() {
                    continue;
                }
                s = s.plus(&ak.times(&f[n - k]).scaled(&Rat::from_integer(k.into())));
            }
            f.push(s.scaled(&Rat::new(BigInt::one(), BigInt::from(n))));
        }
        Ok(Self::normalized(0, f, self.order))
    }

    /// Logarithm of a series with constant term 1.
    pub fn log(&self) -> Result<Self, SeriesError> {
        if self.valuation < 0 && !self.is_zero() {
            return Err(SeriesError::LaurentPart);
        }
        if self.is_zero() || self.valuation != 0 || !self.coeffs[0].is_one() {
            return Err(SeriesError::ConstantTermNotOne);
        }
        // g = log(a) solves a g' = a': n g_n = n a_n - sum_{k=1..n-1} k g_k a_{n-k}
        let n_max = self.order as usize;
        let a = |k: usize| self.at(k as i64);
        let mut g: Vec<C> = Vec::with_capacity(n_max);
        g.push(C::zero());
        for n in 1..n_max {
            let mut s = a(n).scaled(&Rat::from_integer(n.into()));
            for (k, gk) in g.iter().enumerate().skip(1) {
                if gk.is_zero() {
                    continue;
                }
                s = s.minus(&gk.times(&a(n - k)).scaled(&Rat::from_integer(k.into())));
            }
            g.push(s.scaled(&Rat::new(BigInt::one(), BigInt::from(n))));
        }
        Ok(Self::normalized(0, g, self.order))
    }

    /// Integer power by repeated squaring; negative exponents go through [`inv`](Self::inv).
    pub fn pow_int(&self, k: i64) -> Result<Self, SeriesError> {
        if k == 0 {
            return Ok(Self::one(self.relative_precision()));
        }
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut sq = base;
        let mut acc: Option<Self> = None;
        loop {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => sq.clone(),
                    Some(a) => a.mul(&sq),
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            sq = sq.mul(&sq);
        }
        Ok(acc.expect("k != 0 sets at least one bit"))
    }
}

impl<C: Coeff> Add for &USeries<C> {
    type Output = USeries<C>;
    fn add(self, rhs: Self) -> USeries<C> {
        USeries::add(self, rhs)
    }
}

impl<C: Coeff> Sub for &USeries<C> {
    type Output = USeries<C>;
    fn sub(self, rhs: Self) -> USeries<C> {
        USeries::sub(self, rhs)
    }
}

impl<C: Coeff> Mul for &USeries<C> {
    type Output = USeries<C>;
    fn mul(self, rhs: Self) -> USeries<C> {
        USeries::mul(self, rhs)
    }
}

impl<C: Coeff> Neg for &USeries<C> {
    type Output = USeries<C>;
    fn neg(self) -> USeries<C> {
        USeries::neg(self)
    }
}

impl fmt::Display for USeries<Rat> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match e {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{mag}*u")?,
                _ => write!(f, "{mag}*u^{e}")?,
            }
        }
        if first {
            write!(f, "O(u^{})", self.order)
        } else {
            write!(f, " + O(u^{})", self.order)
        }
    }
}

/// `sin(u/2) / (u/2)` to order `order`:
/// `sum_k (-1)^k u^(2k) / (4^k (2k+1)!)`.
pub fn sinc_half(order: i64) -> USeries<Rat> {
    let coeffs = (0..order.max(0))
        .map(|e| {
            if e % 2 == 1 {
                return Rat::zero();
            }
            let k = (e / 2) as u32;
            let den = BigInt::from(4).pow(k) * factorial(2 * k + 1);
            let sign = if k.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
            Rat::new(sign, den)
        })
        .collect();
    USeries::from_coeffs(0, coeffs, order)
}
