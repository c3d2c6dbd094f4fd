//! Exact truncated power series in one variable `s`.
//!
//! The localization formula is naturally written in `t` with half-integer
//! exponents `t^{w/2}`. Everything here works in `s` with `s^2 = t`, so all
//! exponents are non-negative integers and coefficients stay integral.
//!
//! A series of order `N` stores the coefficients of `s^0 ..= s^N`. Binary
//! operations truncate to the smaller of the two orders.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense truncated power series with big-integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    // invariant: non-empty, len == order + 1
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![BigInt::zero(); order + 1],
        }
    }

    /// The multiplicative unit `1` at the given order.
    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigInt::one();
        s
    }

    /// `c * s^k`, truncated at `order`.
    pub fn monomial(c: impl Into<BigInt>, k: usize, order: usize) -> Result<Self> {
        if k > order {
            return Err(Error::ExponentOutOfRange { exponent: k, order });
        }
        let mut s = Self::zero(order);
        s.coeffs[k] = c.into();
        Ok(s)
    }

    /// Builds a series from its coefficient list; the order is `len - 1`.
    pub fn from_coeffs<I, C>(coeffs: I) -> Result<Self>
    where
        I: IntoIterator<Item = C>,
        C: Into<BigInt>,
    {
        let coeffs: Vec<BigInt> = coeffs.into_iter().map(Into::into).collect();
        if coeffs.is_empty() {
            return Err(Error::EmptySeries);
        }
        Ok(TruncatedSeries { coeffs })
    }

    /// Expansion of `1 / (1 - s^{2w}) = 1 + s^{2w} + s^{4w} + ...`.
    pub fn geometric(w: u64, order: usize) -> Result<Self> {
        if w == 0 {
            return Err(Error::InvalidWeight(0));
        }
        let mut s = Self::zero(order);
        // a step past `order` means only the constant term survives
        match w.checked_mul(2).and_then(|st| usize::try_from(st).ok()) {
            Some(step) => {
                for k in (0..=order).step_by(step) {
                    s.coeffs[k] = BigInt::one();
                }
            }
            None => s.coeffs[0] = BigInt::one(),
        }
        Ok(s)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `s^k`, or `None` past the truncation order.
    pub fn coeff(&self, k: usize) -> Option<&BigInt> {
        self.coeffs.get(k)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Smallest exponent with a nonzero coefficient, with that coefficient.
    pub fn lowest_term(&self) -> Option<(usize, &BigInt)> {
        self.coeffs.iter().enumerate().find(|(_, c)| !c.is_zero())
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    /// Drops every coefficient above `order`. Orders above the current one are
    /// clamped, never padded, since the missing coefficients are unknown.
    pub fn truncate(&self, order: usize) -> Self {
        let keep = order.min(self.order()) + 1;
        TruncatedSeries {
            coeffs: self.coeffs[..keep].to_vec(),
        }
    }

    /// Multiplication by `s^k`, keeping the order.
    pub fn shift(&self, k: usize) -> Self {
        let mut out = Self::zero(self.order());
        for (i, c) in self.terms() {
            match i.checked_add(k) {
                Some(j) if j <= self.order() => out.coeffs[j] = c.clone(),
                _ => break,
            }
        }
        out
    }

    /// Substitutes `s -> s^factor`; coefficient of `s^k` moves to `s^{factor*k}`.
    pub fn dilate(&self, factor: usize) -> Result<Self> {
        if factor == 0 {
            return Err(Error::InvalidScale(0));
        }
        let mut out = Self::zero(self.order());
        for (i, c) in self.terms() {
            match i.checked_mul(factor) {
                Some(j) if j <= self.order() => out.coeffs[j] = c.clone(),
                _ => break,
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = self.coeffs[..=order]
            .iter()
            .zip(&other.coeffs[..=order])
            .map(|(a, b)| a + b)
            .collect();
        TruncatedSeries { coeffs }
    }

    pub fn negate(&self) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = self.coeffs[..=order]
            .iter()
            .zip(&other.coeffs[..=order])
            .map(|(a, b)| a - b)
            .collect();
        TruncatedSeries { coeffs }
    }

    /// Truncated Cauchy product. Zero coefficients of either side are skipped,
    /// which keeps products with sparse geometric factors cheap.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = Self::zero(order);
        for (i, a) in self.coeffs[..=order].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=order - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.terms() {
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "s^{k}")?,
                (_, false) => write!(f, "{mag}*s^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(s^{})", self.order() + 1)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&TruncatedSeries> for &TruncatedSeries {
            type Output = TruncatedSeries;
            fn $method(self, rhs: &TruncatedSeries) -> TruncatedSeries {
                TruncatedSeries::$method(self, rhs)
            }
        }

        impl $trait for TruncatedSeries {
            type Output = TruncatedSeries;
            fn $method(self, rhs: TruncatedSeries) -> TruncatedSeries {
                TruncatedSeries::$method(&self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        self.negate()
    }
}

impl Neg for TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        self.negate()
    }
}
