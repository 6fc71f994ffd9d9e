//! Stern's diatomic sequence and its twisted variant.
//!
//! The Stern sequence (OEIS A002487) is defined by s(0)=0, s(1)=1 and
//!
//!   s(2n) = s(n),        s(2n+1) = s(n) + s(n+1),
//!
//! and the twisted Stern sequence by t(0)=0, t(1)=1 and
//!
//!   t(2n) = -t(n),       t(2n+1) = -t(n) - t(n+1).
//!
//! Besides the defining recurrences (the ground-truth oracles, [`stern_range`]
//! and [`twisted_range`]), both sequences are 2-regular: s(n) and t(n) can be
//! read off a product of 2x2 digit matrices along the binary expansion of n.
//! Writing n = sum_i 2^i b_i with top bit b_m = 1,
//!
//!   s(n) = [1  1] M(b_{m-1}) M(b_{m-2}) ... M(b_1) [1  b_0]^T,
//!   t(n) = (-1)^m [1 -1] M(b_{m-1}) ... M(b_1) [1  b_0]^T,
//!
//! where M(b) = [[1, 1-b], [b, 1]]. The factor order is significant for t
//! (descending digit index from the left); see the order-sensitivity test.
//! [`stern`] and [`twisted`] evaluate these products by folding the row
//! vector through the digit matrices, one vector-matrix product per digit,
//! so values of million-bit arguments stay cheap.
//!
//! A third route, [`stern_pair`], descends the binary digits with
//! s(2a+x) = s(a) + x*s(a+1) and returns (s(n), s(n+1)); the quotients
//! s(n+1)/s(n) enumerate the positive reduced rationals without repeats
//! ([`rational_at`]).

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

/// Errors from sequence-level operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeqError {
    /// A binary digit outside {0, 1}.
    #[error("bit value {0} is outside {{0, 1}}")]
    InvalidBit(u8),
    /// An operation that needs n >= 1 was given 0.
    #[error("index must be at least 1")]
    ZeroIndex,
}

/// Binary expansion of a natural number, least-significant bit first.
///
/// For n >= 1 the last entry (the top bit) is 1; n = 0 is the empty string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitString(Vec<u8>);

impl BitString {
    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Reconstructs the number this expansion came from.
    pub fn to_biguint(&self) -> BigUint {
        BigUint::from_radix_le(&self.0, 2).unwrap_or_else(BigUint::zero)
    }
}

/// Binary expansion of `n`, least-significant bit first, no leading zeros.
pub fn bits_of(n: &BigUint) -> BitString {
    if n.is_zero() {
        BitString(Vec::new())
    } else {
        BitString(n.to_radix_le(2))
    }
}

/// A 2x2 matrix of arbitrary-precision integers, row-major [[a, b], [c, d]].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat2 {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl Mat2 {
    pub fn identity() -> Self {
        Mat2 {
            a: BigInt::one(),
            b: BigInt::zero(),
            c: BigInt::zero(),
            d: BigInt::one(),
        }
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        Mat2 {
            a: &self.a * &rhs.a + &self.b * &rhs.c,
            b: &self.a * &rhs.b + &self.b * &rhs.d,
            c: &self.c * &rhs.a + &self.d * &rhs.c,
            d: &self.c * &rhs.b + &self.d * &rhs.d,
        }
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }
}

/// The digit matrix M(b) = [[1, 1-b], [b, 1]].
///
/// Its determinant is 1 for either digit, so any product of digit matrices
/// is unimodular.
pub fn transfer_matrix(bit: u8) -> Result<Mat2, SeqError> {
    if bit > 1 {
        return Err(SeqError::InvalidBit(bit));
    }
    let b = BigInt::from(bit);
    Ok(Mat2 {
        a: BigInt::one(),
        b: BigInt::one() - &b,
        c: b,
        d: BigInt::one(),
    })
}

/// First `limit` Stern values s(0), ..., s(limit-1) by the defining
/// recurrence. This is the ground-truth oracle for every other s-route.
pub fn stern_range(limit: usize) -> Vec<BigUint> {
    let mut s: Vec<BigUint> = Vec::with_capacity(limit);
    for k in 0..limit {
        let v = match k {
            0 => BigUint::zero(),
            1 => BigUint::one(),
            _ if k % 2 == 0 => s[k / 2].clone(),
            _ => &s[k / 2] + &s[k / 2 + 1],
        };
        s.push(v);
    }
    s
}

/// First `limit` twisted Stern values t(0), ..., t(limit-1) by the defining
/// recurrence; ground-truth oracle for t.
pub fn twisted_range(limit: usize) -> Vec<BigInt> {
    let mut t: Vec<BigInt> = Vec::with_capacity(limit);
    for k in 0..limit {
        let v = match k {
            0 => BigInt::zero(),
            1 => BigInt::one(),
            _ if k % 2 == 0 => -&t[k / 2],
            _ => -&t[k / 2] - &t[k / 2 + 1],
        };
        t.push(v);
    }
    t
}

/// s(n) via the digit-matrix product along the binary expansion of n.
///
/// The row vector [1, 1] is folded through M(b_{m-1}), ..., M(b_1) from the
/// left; since the matrix entries are 0/1, each vector-matrix product is a
/// single big-integer addition. n = 0 and n = 1 are table values (the matrix
/// form only holds from n = 2).
pub fn stern(n: &BigUint) -> BigUint {
    let bits = bits_of(n);
    let b = bits.as_slice();
    if b.is_empty() {
        return BigUint::zero();
    }
    let m = b.len() - 1;
    if m == 0 {
        return BigUint::one();
    }
    let mut u = BigUint::one();
    let mut v = BigUint::one();
    for i in (1..m).rev() {
        // (u, v) * M(b_i): (u+v, v) for digit 1, (u, u+v) for digit 0
        if b[i] == 1 {
            u += &v;
        } else {
            v += &u;
        }
    }
    // times the column [1, b_0]
    if b[0] == 1 {
        u += &v;
    }
    u
}

/// t(n) via the signed digit-matrix product: row [1, -1], the same digit
/// matrices as [`stern`], and a global sign (-1)^m.
pub fn twisted(n: &BigUint) -> BigInt {
    let bits = bits_of(n);
    let b = bits.as_slice();
    if b.is_empty() {
        return BigInt::zero();
    }
    let m = b.len() - 1;
    if m == 0 {
        return BigInt::one();
    }
    let mut u = BigInt::one();
    let mut v = -BigInt::one();
    for i in (1..m).rev() {
        if b[i] == 1 {
            u += &v;
        } else {
            v += &u;
        }
    }
    if b[0] == 1 {
        u += &v;
    }
    if m % 2 == 1 {
        -u
    } else {
        u
    }
}

/// (s(n), s(n+1)) by descending the binary digits with
/// s(2a+x) = s(a) + x*s(a+1), starting from (s(1), s(2)) = (1, 1).
///
/// Independent of the matrix route, which makes it a useful cross-check for
/// arguments far beyond any recurrence table.
pub fn stern_pair(n: &BigUint) -> Result<(BigUint, BigUint), SeqError> {
    if n.is_zero() {
        return Err(SeqError::ZeroIndex);
    }
    let bits = bits_of(n);
    let b = bits.as_slice();
    let mut lo = BigUint::one();
    let mut hi = BigUint::one();
    for i in (0..b.len() - 1).rev() {
        if b[i] == 1 {
            // (s(2a+1), s(2a+2)) = (s(a)+s(a+1), s(a+1))
            lo += &hi;
        } else {
            // (s(2a), s(2a+1)) = (s(a), s(a)+s(a+1))
            hi += &lo;
        }
    }
    Ok((lo, hi))
}

/// A reduced positive rational.
///
/// Values produced by [`rational_at`] are coprime by construction; the pair
/// is stored as-is, never re-reduced.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rational {
    pub num: BigUint,
    pub den: BigUint,
}

impl std::fmt::Display for Rational {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// The n-th entry s(n+1)/s(n) of the Stern enumeration of the positive
/// reduced rationals. Requires n >= 1 (s(0) = 0 is no denominator).
pub fn rational_at(n: &BigUint) -> Result<Rational, SeqError> {
    let (den, num) = stern_pair(n)?;
    Ok(Rational { num, den })
}
