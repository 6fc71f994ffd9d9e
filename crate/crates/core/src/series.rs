//! Truncated formal power series over the integers.
//!
//! A [`ZSeries`] stores exactly `trunc` coefficients (index k holds the
//! coefficient of z^k), with trailing zeros explicit. All arithmetic is
//! coefficient-exact big-integer arithmetic; nothing is ever rounded.
//!
//! Truncation discipline: every operation states its output order. Binary
//! operations require both operands at the same order; [`ZSeries::shift_down`]
//! and [`ZSeries::divide_exact`] shrink the order rather than fabricating
//! unknown high coefficients. Division is supported only for divisors whose
//! lowest nonzero coefficient is a unit (+1 or -1), which keeps every
//! quotient in the integers.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Errors from series construction and arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("truncation orders differ: {left} vs {right}")]
    TruncMismatch { left: usize, right: usize },
    #[error("{len} coefficients exceed truncation order {trunc}")]
    TooManyCoeffs { len: usize, trunc: usize },
    #[error("substitution power must be at least 1")]
    ZeroPower,
    #[error("input order {have} is below the {need} coefficients the operation needs")]
    InsufficientTrunc { have: usize, need: usize },
    #[error("not divisible by z^{shift}: coefficient at index {index} is nonzero")]
    NotDivisible { shift: usize, index: usize },
    #[error("divisor is zero to its truncation order")]
    ZeroDivisor,
    #[error("divisor's lowest nonzero coefficient (at index {valuation}) is not +1 or -1")]
    NonUnitLead { valuation: usize },
    #[error("dividend valuation {dividend} is below divisor valuation {divisor}")]
    ValuationTooLow { dividend: usize, divisor: usize },
    #[error("comparison order {n} exceeds truncation order {trunc}")]
    OrderTooLarge { n: usize, trunc: usize },
}

/// First index at which two series differ, with both coefficient values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub index: usize,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

/// A formal power series over the integers, truncated at order `trunc`
/// (coefficients 0 .. trunc-1 are stored, all higher terms are unknown).
///
/// Two series are equal iff their orders agree and every stored coefficient
/// matches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZSeries {
    trunc: usize,
    coeffs: Vec<BigInt>,
}

impl ZSeries {
    /// The zero series at the given order.
    pub fn zero(trunc: usize) -> Self {
        ZSeries {
            trunc,
            coeffs: vec![BigInt::zero(); trunc],
        }
    }

    /// The constant series 1 (swallowed entirely if `trunc` is 0).
    pub fn one(trunc: usize) -> Self {
        Self::monomial(BigInt::one(), 0, trunc)
    }

    /// c * z^k; terms at or beyond the order vanish by truncation.
    pub fn monomial(c: BigInt, k: usize, trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        if k < trunc {
            s.coeffs[k] = c;
        }
        s
    }

    /// Sparse constructor: sum of c * z^k terms (repeated exponents add).
    pub fn from_terms<T: Into<BigInt> + Clone>(terms: &[(T, usize)], trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        for (c, k) in terms {
            if *k < trunc {
                s.coeffs[*k] += c.clone().into();
            }
        }
        s
    }

    /// Builds a series from a coefficient list, padding with zeros up to
    /// `trunc`. More coefficients than the order is an error.
    pub fn from_coeffs<I>(coeffs: I, trunc: usize) -> Result<Self, SeriesError>
    where
        I: IntoIterator,
        I::Item: Into<BigInt>,
    {
        let mut c: Vec<BigInt> = coeffs.into_iter().map(Into::into).collect();
        if c.len() > trunc {
            return Err(SeriesError::TooManyCoeffs {
                len: c.len(),
                trunc,
            });
        }
        c.resize(trunc, BigInt::zero());
        Ok(ZSeries { trunc, coeffs: c })
    }

    /// The truncation order (number of stored coefficients).
    pub fn trunc(&self) -> usize {
        self.trunc
    }

    /// Coefficient of z^k; `k` must be below the order.
    pub fn coeff(&self, k: usize) -> &BigInt {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Index of the first nonzero coefficient, or the order if all stored
    /// coefficients vanish.
    pub fn valuation(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(self.trunc)
    }

    fn check_same_trunc(&self, other: &Self) -> Result<(), SeriesError> {
        if self.trunc != other.trunc {
            return Err(SeriesError::TruncMismatch {
                left: self.trunc,
                right: other.trunc,
            });
        }
        Ok(())
    }

    /// Coefficientwise sum; both operands must share the order.
    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_same_trunc(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(ZSeries {
            trunc: self.trunc,
            coeffs,
        })
    }

    /// Coefficientwise difference; both operands must share the order.
    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_same_trunc(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(ZSeries {
            trunc: self.trunc,
            coeffs,
        })
    }

    pub fn neg(&self) -> Self {
        ZSeries {
            trunc: self.trunc,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Multiplies every coefficient by the integer `c`.
    pub fn scale(&self, c: &BigInt) -> Self {
        ZSeries {
            trunc: self.trunc,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Cauchy product truncated at the common order.
    ///
    /// Zero coefficients of `self` are skipped, so a sparse left factor
    /// multiplies in time proportional to its support.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_same_trunc(other)?;
        let n = self.trunc;
        let mut out = vec![BigInt::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..n - i].iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] += a * b;
            }
        }
        Ok(ZSeries {
            trunc: n,
            coeffs: out,
        })
    }

    /// Substitution z -> z^k: returns A(z^k) at order `out_trunc`.
    ///
    /// Needs ceil(out_trunc / k) input coefficients, so the input order must
    /// be at least that.
    pub fn compose_pow(&self, k: usize, out_trunc: usize) -> Result<Self, SeriesError> {
        if k == 0 {
            return Err(SeriesError::ZeroPower);
        }
        let need = out_trunc.div_ceil(k);
        if self.trunc < need {
            return Err(SeriesError::InsufficientTrunc {
                have: self.trunc,
                need,
            });
        }
        let mut out = vec![BigInt::zero(); out_trunc];
        for (j, c) in self.coeffs.iter().enumerate() {
            match j.checked_mul(k) {
                Some(idx) if idx < out_trunc => out[idx] = c.clone(),
                _ => break,
            }
        }
        Ok(ZSeries {
            trunc: out_trunc,
            coeffs: out,
        })
    }

    /// Multiplication by z^k; the order is unchanged, the top k coefficients
    /// fall off into the truncation.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut out = vec![BigInt::zero(); self.trunc];
        for (i, c) in self.coeffs.iter().enumerate() {
            match i.checked_add(k) {
                Some(idx) if idx < self.trunc => out[idx] = c.clone(),
                _ => break,
            }
        }
        ZSeries {
            trunc: self.trunc,
            coeffs: out,
        }
    }

    /// Exact division by z^k. The k low coefficients must all vanish, and the
    /// result's order shrinks by k (the top k coefficients are unknown).
    pub fn shift_down(&self, k: usize) -> Result<Self, SeriesError> {
        if k > self.trunc {
            return Err(SeriesError::InsufficientTrunc {
                have: self.trunc,
                need: k,
            });
        }
        if let Some(index) = self.coeffs[..k].iter().position(|c| !c.is_zero()) {
            return Err(SeriesError::NotDivisible { shift: k, index });
        }
        Ok(ZSeries {
            trunc: self.trunc - k,
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    /// Restricts the series to a smaller order.
    pub fn truncated(&self, n: usize) -> Result<Self, SeriesError> {
        if n > self.trunc {
            return Err(SeriesError::OrderTooLarge {
                n,
                trunc: self.trunc,
            });
        }
        Ok(ZSeries {
            trunc: n,
            coeffs: self.coeffs[..n].to_vec(),
        })
    }

    /// Exact series division A / B for a divisor whose lowest nonzero
    /// coefficient is +1 or -1.
    ///
    /// Both operands must share an order N. With v the divisor's valuation,
    /// z^v is stripped from both sides and the quotient Q is solved
    /// coefficient by coefficient (all divisions are by the leading unit, so
    /// everything stays in the integers). Q has order N - v and satisfies
    /// Q * B = A to that order.
    pub fn divide_exact(&self, divisor: &Self) -> Result<Self, SeriesError> {
        self.check_same_trunc(divisor)?;
        let v = divisor.valuation();
        if v == divisor.trunc {
            return Err(SeriesError::ZeroDivisor);
        }
        if self.valuation() < v {
            return Err(SeriesError::ValuationTooLow {
                dividend: self.valuation(),
                divisor: v,
            });
        }
        let lead = &divisor.coeffs[v];
        if !lead.abs().is_one() {
            return Err(SeriesError::NonUnitLead { valuation: v });
        }
        let lead_negative = lead.is_negative();
        let n = self.trunc - v;
        let mut q = vec![BigInt::zero(); n];
        for k in 0..n {
            let mut acc = self.coeffs[v + k].clone();
            for (j, qj) in q[..k].iter().enumerate() {
                if qj.is_zero() {
                    continue;
                }
                let b = &divisor.coeffs[v + k - j];
                if b.is_zero() {
                    continue;
                }
                acc -= qj * b;
            }
            q[k] = if lead_negative { -acc } else { acc };
        }
        Ok(ZSeries {
            trunc: n,
            coeffs: q,
        })
    }

    /// Compares coefficients 0 .. n-1 exactly. `Ok(None)` means equal up to
    /// order n; otherwise the first differing index is reported with both
    /// values.
    pub fn eq_upto(&self, other: &Self, n: usize) -> Result<Option<Mismatch>, SeriesError> {
        let avail = self.trunc.min(other.trunc);
        if n > avail {
            return Err(SeriesError::OrderTooLarge { n, trunc: avail });
        }
        for k in 0..n {
            if self.coeffs[k] != other.coeffs[k] {
                return Ok(Some(Mismatch {
                    index: k,
                    lhs: self.coeffs[k].clone(),
                    rhs: other.coeffs[k].clone(),
                }));
            }
        }
        Ok(None)
    }
}

// Operator sugar for internal arithmetic where the orders are equal by
// construction. Panics on mismatched orders; use the checked methods at
// boundaries where a mismatch is a caller error rather than a bug.
impl std::ops::Add for &ZSeries {
    type Output = ZSeries;
    fn add(self, rhs: &ZSeries) -> ZSeries {
        ZSeries::add(self, rhs).expect("series orders must match")
    }
}

impl std::ops::Sub for &ZSeries {
    type Output = ZSeries;
    fn sub(self, rhs: &ZSeries) -> ZSeries {
        ZSeries::sub(self, rhs).expect("series orders must match")
    }
}

impl std::ops::Mul for &ZSeries {
    type Output = ZSeries;
    fn mul(self, rhs: &ZSeries) -> ZSeries {
        ZSeries::mul(self, rhs).expect("series orders must match")
    }
}

impl std::ops::Neg for &ZSeries {
    type Output = ZSeries;
    fn neg(self) -> ZSeries {
        ZSeries::neg(self)
    }
}
