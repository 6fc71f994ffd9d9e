//! Generating-function identities for the Stern sequence and its twist,
//! verified coefficient-exactly over truncated integer series.
//!
//! The named series are S(z) = sum s(n) z^n, T(z) = sum t(n) z^n, and three
//! quotients by S(z):
//!
//!   U(z) = (sum t(3+n) z^n) / S(z),
//!   G(z) = (sum (s(2+n) - s(1+n)) z^n) / S(z),
//!   H(z) = -(sum (t(2+n) + t(1+n)) z^n) / S(z),
//!
//! all of which have integer coefficients because S(z)/z is unit-led.
//!
//! Each verifier in the catalog checks one identity and returns a [`Report`]
//! carrying pass/fail, the first mismatching coefficient if any, and the
//! order actually compared. Identities stated with denominators are checked
//! in cross-multiplied form so that both sides live in the integer series
//! ring; only U, G and H themselves are produced by series division. Four of
//! the checks are full polynomial identities (both sides vanish beyond a
//! known degree), so a pass there is unconditional rather than
//! order-limited.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use crate::seq;
use crate::series::{Mismatch, ZSeries};

/// Identifiers for the identities in the catalog.
///
/// The names are stable strings (also accepted by [`IdentityId::from_str`])
/// used in reports and on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IdentityId {
    /// S(z^2) (1 + z + z^2) = z S(z).
    Lemma21S,
    /// T(z^2) (1 + z + z^2) = (T(z) - 2z)(-z).
    Lemma21T,
    /// T(z^{2^e}) B_e = T(z) P_{0,e} - 2 sum_j z^{2^j} B_j P_{j,e}, where
    /// B_j is the Bacher product and P_{j,e} = prod_{i=j}^{e-1}(-z^{2^i}).
    Lemma22,
    /// z (1 + z^{2^e}) B_e = (-1)^e sum_{n=0}^{3*2^e} t(3*2^e + n) z^n.
    Thm23,
    /// sum_{n=0}^{3*2^e} t(n) z^n
    ///   = z - z^2 + sum_k (-1)^k z^{3*2^k+1} (z^{2^k} + 1) B_k.
    Lemma24,
    /// sum_{n=0}^{3*2^e} t(n) z^n
    ///   = 2z sum_j (-1)^j B_j - (-1)^e z (z^{2^e} - 1) B_e.
    Lemma25,
    /// T(z^{2^e}) S(z) = (-1)^e S(z^{2^e}) (T(z) - 2z sum_j (-1)^j B_j).
    Eq22,
    /// sum_n t(3*2^e + n) z^n = (-1)^e S(z) U(z^{2^e}).
    Thm11,
    /// sum_n (s(2^{e+1}+n) - s(2^e+n)) z^n = G(z^{2^e}) S(z).
    Thm12I,
    /// (-1)^{e+1} sum_n (t(2^{e+1}+n) + t(2^e+n)) z^n = H(z^{2^e}) S(z).
    Thm12II,
    /// z B_k = sum_{n=1}^{2^k} s(n) z^n + sum_{n=1}^{2^k-1} s(2^k-n) z^{n+2^k}.
    Lemma31,
    /// Pointwise for 1 <= n <= 2^e:
    /// t(2^{e+1}+n) + t(2^e+n) = (-1)^{e+1} s(n),
    /// t(2^e+n) = (-1)^e (s(2^e-n) - s(n)),
    /// t(2^{e+1}+n) = (-1)^{e+1} s(2^e-n).
    Lemma32,
}

impl IdentityId {
    /// Catalog order; also the canonical output order for report tables.
    pub const ALL: [IdentityId; 12] = [
        IdentityId::Lemma21S,
        IdentityId::Lemma21T,
        IdentityId::Lemma22,
        IdentityId::Thm23,
        IdentityId::Lemma24,
        IdentityId::Lemma25,
        IdentityId::Eq22,
        IdentityId::Thm11,
        IdentityId::Thm12I,
        IdentityId::Thm12II,
        IdentityId::Lemma31,
        IdentityId::Lemma32,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityId::Lemma21S => "lemma_2_1_S",
            IdentityId::Lemma21T => "lemma_2_1_T",
            IdentityId::Lemma22 => "lemma_2_2",
            IdentityId::Thm23 => "thm_2_3",
            IdentityId::Lemma24 => "lemma_2_4",
            IdentityId::Lemma25 => "lemma_2_5",
            IdentityId::Eq22 => "eq_2_2",
            IdentityId::Thm11 => "thm_1_1",
            IdentityId::Thm12I => "thm_1_2_i",
            IdentityId::Thm12II => "thm_1_2_ii",
            IdentityId::Lemma31 => "lemma_3_1",
            IdentityId::Lemma32 => "lemma_3_2",
        }
    }

    /// Parameter values this identity is checked at, up to `max` inclusive:
    /// `None` for the two unparametrized functional equations, otherwise the
    /// e-range (k-range for `lemma_3_1`) starting at the smallest value the
    /// identity is stated for.
    pub fn param_range(self, max: u32) -> Option<std::ops::RangeInclusive<u32>> {
        match self {
            IdentityId::Lemma21S | IdentityId::Lemma21T => None,
            IdentityId::Thm11 | IdentityId::Thm12I | IdentityId::Thm12II | IdentityId::Lemma31 => {
                Some(0..=max)
            }
            _ => Some(1..=max),
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = IdentityError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        IdentityId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| IdentityError::UnknownId(s.to_string()))
    }
}

/// Errors from the identity catalog.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IdentityError {
    #[error("unknown identity id `{0}`")]
    UnknownId(String),
    /// The requested order cannot contain the polynomial identity.
    #[error("{id} at parameter {param} needs order at least {need}, got {got}")]
    OrderTooSmall {
        id: IdentityId,
        param: u32,
        need: usize,
        got: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        })
    }
}

/// Outcome of one identity check.
///
/// `status` is `Fail` exactly when `mismatch` is present. `effective_order`
/// is the order actually compared: the truncation order for series
/// identities, and the number of checked indices for the pointwise
/// `lemma_3_2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub id: IdentityId,
    /// e (k for `lemma_3_1`); absent for the unparametrized checks.
    pub param: Option<u32>,
    /// Truncation order used; absent for the pointwise `lemma_3_2`.
    pub order: Option<usize>,
    pub status: Status,
    pub mismatch: Option<Mismatch>,
    pub effective_order: usize,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

fn finish(id: IdentityId, param: Option<u32>, lhs: &ZSeries, rhs: &ZSeries, n: usize) -> Report {
    let mismatch = lhs.eq_upto(rhs, n).expect("verifier compares within truncation");
    Report {
        id,
        param,
        order: Some(n),
        status: if mismatch.is_none() {
            Status::Pass
        } else {
            Status::Fail
        },
        mismatch,
        effective_order: n,
    }
}

fn pow2(e: u32) -> usize {
    1usize
        .checked_shl(e)
        .expect("2^e exceeds the address space")
}

fn sign(e: u32) -> BigInt {
    if e.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// S(z) to the given order: coefficients s(0), ..., s(order-1).
pub fn stern_series(order: usize) -> ZSeries {
    let coeffs = seq::stern_range(order).into_iter().map(BigInt::from);
    ZSeries::from_coeffs(coeffs, order).expect("one coefficient per index")
}

/// T(z) to the given order: coefficients t(0), ..., t(order-1).
pub fn twisted_series(order: usize) -> ZSeries {
    ZSeries::from_coeffs(seq::twisted_range(order), order).expect("one coefficient per index")
}

/// One factor 1 + z^{2^i} + z^{2^{i+1}} of the Bacher product.
fn bacher_factor(i: u32, order: usize) -> ZSeries {
    ZSeries::from_terms(&[(1i64, 0), (1, pow2(i)), (1, pow2(i + 1))], order)
}

/// The Bacher product B_e = prod_{i=0}^{e-1} (1 + z^{2^i} + z^{2^{i+1}});
/// the empty product (e = 0) is 1.
pub fn bacher_product(e: u32, order: usize) -> ZSeries {
    let mut prod = ZSeries::one(order);
    for i in 0..e {
        prod = bacher_factor(i, order)
            .mul(&prod)
            .expect("factors share the order");
    }
    prod
}

/// prod_{i=from}^{to-1} (-z^{2^i}), a signed monomial.
fn neg_z_product(from: u32, to: u32, order: usize) -> ZSeries {
    let mut prod = ZSeries::one(order);
    for i in from..to {
        prod = ZSeries::monomial(-BigInt::one(), pow2(i), order)
            .mul(&prod)
            .expect("factors share the order");
    }
    prod
}

/// sum_{j=0}^{e-1} (-1)^j B_j.
fn alternating_bacher_sum(e: u32, order: usize) -> ZSeries {
    let mut acc = ZSeries::zero(order);
    for j in 0..e {
        let b = bacher_product(j, order);
        acc = if j % 2 == 0 {
            acc.add(&b)
        } else {
            acc.sub(&b)
        }
        .expect("terms share the order");
    }
    acc
}

/// U(z) = (sum t(3+n) z^n) / S(z) to the given order (>= 1), by exact
/// division of the valuation-stripped series.
pub fn u_series(order: usize) -> ZSeries {
    assert!(order >= 1, "series order must be at least 1");
    let t = seq::twisted_range(order + 4);
    let num = ZSeries::from_coeffs(t[3..order + 4].to_vec(), order + 1)
        .expect("one coefficient per index");
    num.divide_exact(&stern_series(order + 1))
        .expect("S(z)/z is unit-led")
}

/// G(z) = (sum (s(2+n) - s(1+n)) z^n) / S(z) to the given order (>= 1).
pub fn g_series(order: usize) -> ZSeries {
    assert!(order >= 1, "series order must be at least 1");
    let s = seq::stern_range(order + 3);
    let num = ZSeries::from_coeffs(
        (0..=order).map(|k| BigInt::from(s[k + 2].clone()) - BigInt::from(s[k + 1].clone())),
        order + 1,
    )
    .expect("one coefficient per index");
    num.divide_exact(&stern_series(order + 1))
        .expect("S(z)/z is unit-led")
}

/// H(z) = -(sum (t(2+n) + t(1+n)) z^n) / S(z) to the given order (>= 1).
pub fn h_series(order: usize) -> ZSeries {
    assert!(order >= 1, "series order must be at least 1");
    let t = seq::twisted_range(order + 3);
    let num = ZSeries::from_coeffs((0..=order).map(|k| -(&t[k + 2] + &t[k + 1])), order + 1)
        .expect("one coefficient per index");
    num.divide_exact(&stern_series(order + 1))
        .expect("S(z)/z is unit-led")
}

/// Checks S(z^2) (1 + z + z^2) = z S(z) for a supplied S-like series at its
/// own order. Feeding anything that is not the Stern series (a corrupted
/// coefficient, say) makes this fail; see the mutation tests.
pub fn check_stern_functional(s: &ZSeries) -> Report {
    let n = s.trunc();
    let s2 = s.compose_pow(2, n).expect("inner order suffices");
    let lhs = bacher_factor(0, n).mul(&s2).expect("orders match");
    let rhs = s.shift_up(1);
    finish(IdentityId::Lemma21S, None, &lhs, &rhs, n)
}

/// Checks T(z^2) (1 + z + z^2) = (T(z) - 2z)(-z) for a supplied T-like
/// series at its own order.
pub fn check_twisted_functional(t: &ZSeries) -> Report {
    let n = t.trunc();
    let t2 = t.compose_pow(2, n).expect("inner order suffices");
    let lhs = bacher_factor(0, n).mul(&t2).expect("orders match");
    let shifted = t.sub(&ZSeries::monomial(BigInt::from(2), 1, n)).expect("orders match");
    let rhs = ZSeries::monomial(-BigInt::one(), 1, n)
        .mul(&shifted)
        .expect("orders match");
    finish(IdentityId::Lemma21T, None, &lhs, &rhs, n)
}

/// `lemma_2_1_S` at the given order.
pub fn verify_lemma_2_1_s(order: usize) -> Report {
    check_stern_functional(&stern_series(order))
}

/// `lemma_2_1_T` at the given order.
pub fn verify_lemma_2_1_t(order: usize) -> Report {
    check_twisted_functional(&twisted_series(order))
}

/// `lemma_2_2`, cross-multiplied by B_e:
/// T(z^{2^e}) B_e = T(z) P_{0,e} - 2 sum_{j<e} z^{2^j} B_j P_{j,e}.
pub fn verify_lemma_2_2(e: u32, order: usize) -> Report {
    let n = order;
    let p = pow2(e);
    let t_comp = twisted_series(n.div_ceil(p))
        .compose_pow(p, n)
        .expect("inner order suffices");
    let lhs = bacher_product(e, n).mul(&t_comp).expect("orders match");

    let head = neg_z_product(0, e, n)
        .mul(&twisted_series(n))
        .expect("orders match");
    let mut tail = ZSeries::zero(n);
    for j in 0..e {
        let mut term = bacher_product(j, n);
        term = ZSeries::monomial(BigInt::one(), pow2(j), n)
            .mul(&term)
            .expect("orders match");
        term = neg_z_product(j, e, n).mul(&term).expect("orders match");
        tail = tail.add(&term).expect("orders match");
    }
    let rhs = head
        .sub(&tail.scale(&BigInt::from(2)))
        .expect("orders match");
    finish(IdentityId::Lemma22, Some(e), &lhs, &rhs, n)
}

/// `thm_2_3` as the polynomial identity
/// z (1 + z^{2^e}) B_e = (-1)^e sum_{n=0}^{3*2^e} t(3*2^e + n) z^n.
/// Both sides vanish beyond degree 3*2^e - 1; the order must exceed
/// 2 * 3*2^e + 2, comfortably containing them.
pub fn verify_thm_2_3(e: u32, order: usize) -> Result<Report, IdentityError> {
    let d = 3 * pow2(e);
    if order <= 2 * d + 2 {
        return Err(IdentityError::OrderTooSmall {
            id: IdentityId::Thm23,
            param: e,
            need: 2 * d + 3,
            got: order,
        });
    }
    let n = order;
    let mut lhs = ZSeries::from_terms(&[(1i64, 0), (1, pow2(e))], n)
        .mul(&bacher_product(e, n))
        .expect("orders match");
    lhs = lhs.shift_up(1);

    let t = seq::twisted_range(2 * d + 1);
    let mut rhs =
        ZSeries::from_coeffs(t[d..=2 * d].to_vec(), n).expect("polynomial fits below the order");
    rhs = rhs.scale(&sign(e));
    Ok(finish(IdentityId::Thm23, Some(e), &lhs, &rhs, n))
}

/// `lemma_2_4` as the polynomial identity
/// sum_{n=0}^{3*2^e} t(n) z^n
///   = z - z^2 + sum_{k<e} (-1)^k z^{3*2^k+1} (z^{2^k} + 1) B_k.
pub fn verify_lemma_2_4(e: u32, order: usize) -> Result<Report, IdentityError> {
    let d = 3 * pow2(e);
    if order <= d {
        return Err(IdentityError::OrderTooSmall {
            id: IdentityId::Lemma24,
            param: e,
            need: d + 1,
            got: order,
        });
    }
    let n = order;
    let lhs = ZSeries::from_coeffs(seq::twisted_range(d + 1), n)
        .expect("polynomial fits below the order");

    let mut rhs = ZSeries::from_terms(&[(1i64, 1), (-1, 2)], n);
    for k in 0..e {
        let mut term = ZSeries::from_terms(&[(1i64, 0), (1, pow2(k))], n)
            .mul(&bacher_product(k, n))
            .expect("orders match");
        term = ZSeries::monomial(sign(k), 3 * pow2(k) + 1, n)
            .mul(&term)
            .expect("orders match");
        rhs = rhs.add(&term).expect("orders match");
    }
    Ok(finish(IdentityId::Lemma24, Some(e), &lhs, &rhs, n))
}

/// `lemma_2_5` as the polynomial identity
/// sum_{n=0}^{3*2^e} t(n) z^n = 2z sum_{j<e} (-1)^j B_j
///   - (-1)^e z (z^{2^e} - 1) B_e.
pub fn verify_lemma_2_5(e: u32, order: usize) -> Result<Report, IdentityError> {
    let d = 3 * pow2(e);
    if order <= d {
        return Err(IdentityError::OrderTooSmall {
            id: IdentityId::Lemma25,
            param: e,
            need: d + 1,
            got: order,
        });
    }
    let n = order;
    let lhs = ZSeries::from_coeffs(seq::twisted_range(d + 1), n)
        .expect("polynomial fits below the order");

    let first = ZSeries::monomial(BigInt::from(2), 1, n)
        .mul(&alternating_bacher_sum(e, n))
        .expect("orders match");
    let mut second = ZSeries::from_terms(&[(-1i64, 0), (1, pow2(e))], n)
        .mul(&bacher_product(e, n))
        .expect("orders match");
    second = ZSeries::monomial(sign(e), 1, n)
        .mul(&second)
        .expect("orders match");
    let rhs = first.sub(&second).expect("orders match");
    Ok(finish(IdentityId::Lemma25, Some(e), &lhs, &rhs, n))
}

/// `eq_2_2`, cross-multiplied by S(z^{2^e}) S(z):
/// T(z^{2^e}) S(z) = (-1)^e S(z^{2^e}) (T(z) - 2z sum_{j<e} (-1)^j B_j).
pub fn verify_eq_2_2(e: u32, order: usize) -> Report {
    let n = order;
    let p = pow2(e);
    let inner = n.div_ceil(p);
    let t_comp = twisted_series(inner)
        .compose_pow(p, n)
        .expect("inner order suffices");
    let s_comp = stern_series(inner)
        .compose_pow(p, n)
        .expect("inner order suffices");
    let lhs = t_comp.mul(&stern_series(n)).expect("orders match");

    let correction = ZSeries::monomial(BigInt::from(2), 1, n)
        .mul(&alternating_bacher_sum(e, n))
        .expect("orders match");
    let bracket = twisted_series(n).sub(&correction).expect("orders match");
    let rhs = s_comp
        .mul(&bracket)
        .expect("orders match")
        .scale(&sign(e));
    finish(IdentityId::Eq22, Some(e), &lhs, &rhs, n)
}

/// `thm_1_1`: sum_n t(3*2^e + n) z^n = (-1)^e S(z) U(z^{2^e}).
pub fn verify_thm_1_1(e: u32, order: usize) -> Report {
    let n = order;
    let p = pow2(e);
    let d = 3 * p;
    let u_comp = u_series(n.div_ceil(p) + 1)
        .compose_pow(p, n)
        .expect("inner order suffices");
    let rhs = u_comp
        .mul(&stern_series(n))
        .expect("orders match")
        .scale(&sign(e));

    let t = seq::twisted_range(n + d);
    let lhs = ZSeries::from_coeffs(t[d..d + n].to_vec(), n).expect("one coefficient per index");
    finish(IdentityId::Thm11, Some(e), &lhs, &rhs, n)
}

/// `thm_1_2_i`: sum_n (s(2^{e+1}+n) - s(2^e+n)) z^n = G(z^{2^e}) S(z).
pub fn verify_thm_1_2_i(e: u32, order: usize) -> Report {
    let n = order;
    let p = pow2(e);
    let g_comp = g_series(n.div_ceil(p) + 1)
        .compose_pow(p, n)
        .expect("inner order suffices");
    let rhs = g_comp.mul(&stern_series(n)).expect("orders match");

    let s = seq::stern_range(n + 2 * p);
    let lhs = ZSeries::from_coeffs(
        (0..n).map(|k| BigInt::from(s[2 * p + k].clone()) - BigInt::from(s[p + k].clone())),
        n,
    )
    .expect("one coefficient per index");
    finish(IdentityId::Thm12I, Some(e), &lhs, &rhs, n)
}

/// `thm_1_2_ii`:
/// (-1)^{e+1} sum_n (t(2^{e+1}+n) + t(2^e+n)) z^n = H(z^{2^e}) S(z).
pub fn verify_thm_1_2_ii(e: u32, order: usize) -> Report {
    let n = order;
    let p = pow2(e);
    let h_comp = h_series(n.div_ceil(p) + 1)
        .compose_pow(p, n)
        .expect("inner order suffices");
    let rhs = h_comp.mul(&stern_series(n)).expect("orders match");

    let t = seq::twisted_range(n + 2 * p);
    let lhs = ZSeries::from_coeffs((0..n).map(|k| &t[2 * p + k] + &t[p + k]), n)
        .expect("one coefficient per index")
        .scale(&sign(e + 1));
    finish(IdentityId::Thm12II, Some(e), &lhs, &rhs, n)
}

/// `lemma_3_1` as the polynomial identity
/// z B_k = sum_{n=1}^{2^k} s(n) z^n + sum_{n=1}^{2^k-1} s(2^k-n) z^{n+2^k}.
pub fn verify_lemma_3_1(k: u32, order: usize) -> Result<Report, IdentityError> {
    let p = pow2(k);
    if order <= 2 * p {
        return Err(IdentityError::OrderTooSmall {
            id: IdentityId::Lemma31,
            param: k,
            need: 2 * p + 1,
            got: order,
        });
    }
    let n = order;
    let lhs = ZSeries::monomial(BigInt::one(), 1, n)
        .mul(&bacher_product(k, n))
        .expect("orders match");

    let s = seq::stern_range(p + 1);
    let mut coeffs = vec![BigInt::from(0); n];
    for m in 1..=p {
        coeffs[m] = s[m].clone().into();
    }
    for m in 1..p {
        coeffs[m + p] = s[p - m].clone().into();
    }
    let rhs = ZSeries::from_coeffs(coeffs, n).expect("one coefficient per index");
    Ok(finish(IdentityId::Lemma31, Some(k), &lhs, &rhs, n))
}

/// `lemma_3_2`, checked pointwise from the recurrence oracles for every
/// 1 <= n <= 2^e (the boundary n = 2^e included). The report's
/// `effective_order` is the number of checked indices.
pub fn verify_lemma_3_2(e: u32) -> Report {
    let p = pow2(e);
    let s = seq::stern_range(p + 1);
    let t = seq::twisted_range(3 * p + 1);
    let sign_e = sign(e);
    let sign_e1 = sign(e + 1);

    let mut mismatch = None;
    'scan: for n in 1..=p {
        let s_n = BigInt::from(s[n].clone());
        let s_mirror = BigInt::from(s[p - n].clone());
        let checks = [
            (&t[2 * p + n] + &t[p + n], &sign_e1 * &s_n),
            (t[p + n].clone(), &sign_e * (&s_mirror - &s_n)),
            (t[2 * p + n].clone(), &sign_e1 * &s_mirror),
        ];
        for (lhs, rhs) in checks {
            if lhs != rhs {
                mismatch = Some(Mismatch {
                    index: n,
                    lhs,
                    rhs,
                });
                break 'scan;
            }
        }
    }
    Report {
        id: IdentityId::Lemma32,
        param: Some(e),
        order: None,
        status: if mismatch.is_none() {
            Status::Pass
        } else {
            Status::Fail
        },
        mismatch,
        effective_order: p,
    }
}

/// Runs one catalog entry at the given parameter and order.
///
/// The polynomial identities (`thm_2_3`, `lemma_2_4`, `lemma_2_5`,
/// `lemma_3_1`) need the whole polynomial to fit below the truncation
/// order; when `order` is too small for that, the smallest sufficient order
/// is used instead, and the report records the order actually compared.
/// `param` is ignored by the unparametrized checks and `order` by the
/// pointwise `lemma_3_2`.
pub fn run_identity(id: IdentityId, param: u32, order: usize) -> Report {
    match id {
        IdentityId::Lemma21S => verify_lemma_2_1_s(order),
        IdentityId::Lemma21T => verify_lemma_2_1_t(order),
        IdentityId::Lemma22 => verify_lemma_2_2(param, order),
        IdentityId::Thm23 => verify_thm_2_3(param, order.max(6 * pow2(param) + 3))
            .expect("order made sufficient"),
        IdentityId::Lemma24 => verify_lemma_2_4(param, order.max(3 * pow2(param) + 1))
            .expect("order made sufficient"),
        IdentityId::Lemma25 => verify_lemma_2_5(param, order.max(3 * pow2(param) + 1))
            .expect("order made sufficient"),
        IdentityId::Eq22 => verify_eq_2_2(param, order),
        IdentityId::Thm11 => verify_thm_1_1(param, order),
        IdentityId::Thm12I => verify_thm_1_2_i(param, order),
        IdentityId::Thm12II => verify_thm_1_2_ii(param, order),
        IdentityId::Lemma31 => verify_lemma_3_1(param, order.max(2 * pow2(param) + 1))
            .expect("order made sufficient"),
        IdentityId::Lemma32 => verify_lemma_3_2(param),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::SeriesError;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn named_series_prefixes() {
        assert_eq!(stern_series(8).coeffs(), &ints(&[0, 1, 1, 2, 1, 3, 2, 3])[..]);
        assert_eq!(
            twisted_series(8).coeffs(),
            &ints(&[0, 1, -1, 0, 1, 1, 0, -1])[..]
        );
        assert_eq!(stern_series(1).coeffs(), &ints(&[0])[..]);
    }

    #[test]
    fn u_series_prefix_and_roundtrip() {
        let u = u_series(12);
        assert_eq!(&u.coeffs()[..6], &ints(&[1, 0, -2, 0, 0, -2])[..]);
        assert_eq!(u.coeff(0), &BigInt::one());

        // u * (S/z) must reproduce (sum t(3+n) z^n) / z
        let s_stripped = stern_series(13).shift_down(1).unwrap();
        let product = u.mul(&s_stripped).unwrap();
        let t = seq::twisted_range(16);
        let expected = ZSeries::from_coeffs(t[4..16].to_vec(), 12).unwrap();
        assert_eq!(product, expected);
    }

    #[test]
    fn g_and_h_prefixes_and_defining_products() {
        let n = 64;
        let g = g_series(n);
        let h = h_series(n);
        assert_eq!(&g.coeffs()[..3], &ints(&[1, -2, 2])[..]);
        assert_eq!(&h.coeffs()[..3], &ints(&[1, -2, -2])[..]);

        let s = stern_series(n);
        let s_range = seq::stern_range(n + 2);
        let g_num = ZSeries::from_coeffs(
            (0..n).map(|k| {
                BigInt::from(s_range[k + 2].clone()) - BigInt::from(s_range[k + 1].clone())
            }),
            n,
        )
        .unwrap();
        assert_eq!(g.mul(&s).unwrap(), g_num);

        let t_range = seq::twisted_range(n + 2);
        let h_num =
            ZSeries::from_coeffs((0..n).map(|k| -(&t_range[k + 2] + &t_range[k + 1])), n).unwrap();
        assert_eq!(h.mul(&s).unwrap(), h_num);
    }

    #[test]
    fn bacher_product_examples() {
        assert_eq!(bacher_product(0, 4), ZSeries::one(4));
        assert_eq!(bacher_product(1, 4).coeffs(), &ints(&[1, 1, 1, 0])[..]);
        assert_eq!(
            bacher_product(2, 7).coeffs(),
            &ints(&[1, 1, 2, 1, 2, 1, 1])[..]
        );
    }

    #[test]
    fn neg_z_product_closed_form() {
        // prod_{i<e} (-z^{2^i}) = (-1)^e z^{2^e - 1}
        for e in 0..8u32 {
            let n = 300;
            let got = neg_z_product(0, e, n);
            let want = ZSeries::monomial(sign(e), (1 << e) - 1, n);
            assert_eq!(got, want, "e={e}");
        }
    }

    #[test]
    fn functional_equations_pass() {
        for n in [4usize, 64, 256] {
            assert!(verify_lemma_2_1_s(n).passed(), "S at {n}");
            assert!(verify_lemma_2_1_t(n).passed(), "T at {n}");
        }
    }

    #[test]
    fn tampered_series_is_detected() {
        let mut t = seq::twisted_range(64);
        t[5] += 1;
        let report = check_twisted_functional(&ZSeries::from_coeffs(t, 64).unwrap());
        assert_eq!(report.status, Status::Fail);
        let m = report.mismatch.expect("failure carries a mismatch");
        assert!(m.index <= 11, "mismatch at {}", m.index);
    }

    #[test]
    fn iterated_twisted_functional_equation() {
        // e = 1 is exactly the single-step functional equation
        assert!(verify_lemma_2_2(1, 128).passed());
        assert!(verify_lemma_2_1_t(128).passed());
        for e in 2..=5 {
            assert!(verify_lemma_2_2(e, 256).passed(), "e={e}");
        }
    }

    #[test]
    fn bacher_polynomial_identity() {
        // e = 1: both sides are z (1 + z^2)(1 + z + z^2)
        let n = 16;
        let expected = ZSeries::from_terms(&[(1i64, 0), (1, 2)], n)
            .mul(&bacher_factor(0, n))
            .unwrap()
            .shift_up(1);
        let t = seq::twisted_range(13);
        assert_eq!(t[6..13].to_vec(), ints(&[0, -1, -1, -2, -1, -1, 0]));
        let rhs = ZSeries::from_coeffs(t[6..13].to_vec(), n).unwrap().neg();
        assert_eq!(expected, rhs);
        assert_eq!(expected.coeff(0), &BigInt::from(0));

        assert!(verify_thm_2_3(1, n).unwrap().passed());
        assert!(verify_thm_2_3(4, 256).unwrap().passed());
        assert_eq!(
            verify_thm_2_3(1, 8),
            Err(IdentityError::OrderTooSmall {
                id: IdentityId::Thm23,
                param: 1,
                need: 15,
                got: 8,
            })
        );
    }

    #[test]
    fn partial_sum_identities() {
        // e = 1: the partial sum is z - z^2 + z^4 + z^5
        let t = seq::twisted_range(7);
        let partial = ZSeries::from_coeffs(t, 8).unwrap();
        assert_eq!(partial.coeffs(), &ints(&[0, 1, -1, 0, 1, 1, 0, 0])[..]);

        // e = 1 pieces of the second form: 2z and -(-1) z (z^2 - 1)(1+z+z^2)
        let first = ZSeries::monomial(BigInt::from(2), 1, 8)
            .mul(&alternating_bacher_sum(1, 8))
            .unwrap();
        assert_eq!(first.coeffs(), &ints(&[0, 2, 0, 0, 0, 0, 0, 0])[..]);
        let second = ZSeries::monomial(BigInt::one(), 1, 8)
            .mul(
                &ZSeries::from_terms(&[(-1i64, 0), (1, 2)], 8)
                    .mul(&bacher_product(1, 8))
                    .unwrap(),
            )
            .unwrap();
        assert_eq!(second.coeffs(), &ints(&[0, -1, -1, 0, 1, 1, 0, 0])[..]);
        assert_eq!(first.add(&second).unwrap(), partial);

        assert!(verify_lemma_2_4(1, 8).unwrap().passed());
        assert!(verify_lemma_2_5(1, 8).unwrap().passed());
        assert!(verify_lemma_2_4(3, 64).unwrap().passed());
        assert!(verify_lemma_2_5(4, 128).unwrap().passed());
        // both forms describe the same partial sum
        for e in 1..=8 {
            let n = 3 * (1 << e) + 1;
            assert!(verify_lemma_2_4(e, n).unwrap().passed(), "2.4 e={e}");
            assert!(verify_lemma_2_5(e, n).unwrap().passed(), "2.5 e={e}");
        }
        assert!(verify_lemma_2_4(2, 12).is_err());
    }

    #[test]
    fn ts_ratio() {
        assert!(verify_eq_2_2(0, 64).passed());
        for e in 1..=4 {
            assert!(verify_eq_2_2(e, 256).passed(), "e={e}");
        }
    }

    #[test]
    fn first_main_theorem_small_orders() {
        assert!(verify_thm_1_1(0, 64).passed());
        let r = verify_thm_1_1(1, 128);
        assert!(r.passed());
        assert_eq!(r.effective_order, 128);
        // first nonzero coefficient of the e = 1 left side is t(7) = -1
        let t = seq::twisted_range(9);
        assert_eq!(t[6], BigInt::from(0));
        assert_eq!(t[7], BigInt::from(-1));
        for e in 2..=6 {
            assert!(verify_thm_1_1(e, 128).passed(), "e={e}");
        }
    }

    #[test]
    fn twisted_vanishes_at_three_times_powers_of_two() {
        let t = seq::twisted_range(3 * (1 << 10) + 1);
        for e in 0..=10 {
            assert_eq!(t[3 << e], BigInt::from(0), "t(3*2^{e})");
        }
    }

    #[test]
    fn second_main_theorem_small_orders() {
        assert!(verify_thm_1_2_i(0, 64).passed());
        assert!(verify_thm_1_2_ii(0, 64).passed());
        // e = 0, coefficient 1 of the (ii) left side: -(t(3) + t(2)) = 1
        let t = seq::twisted_range(4);
        assert_eq!(-(&t[3] + &t[2]), BigInt::one());
        for e in 1..=4 {
            assert!(verify_thm_1_2_i(e, 128).passed(), "(i) e={e}");
            assert!(verify_thm_1_2_ii(e, 128).passed(), "(ii) e={e}");
        }
    }

    #[test]
    fn stern_sum_polynomial_identity() {
        // k = 0 and k = 1 degenerate to z and z + z^2 + z^3
        let r0 = verify_lemma_3_1(0, 4).unwrap();
        assert!(r0.passed());
        let lhs1 = ZSeries::monomial(BigInt::one(), 1, 8)
            .mul(&bacher_product(1, 8))
            .unwrap();
        assert_eq!(lhs1.coeffs(), &ints(&[0, 1, 1, 1, 0, 0, 0, 0])[..]);
        assert!(verify_lemma_3_1(1, 8).unwrap().passed());
        assert!(verify_lemma_3_1(6, 256).unwrap().passed());
        assert!(verify_lemma_3_1(3, 16).is_err());
    }

    #[test]
    fn pointwise_twisted_stern_relations() {
        // e = 1, n = 1: t(5) + t(3) = 1 = s(1)
        let t = seq::twisted_range(6);
        assert_eq!(&t[5] + &t[3], BigInt::one());
        for e in 1..=10 {
            let r = verify_lemma_3_2(e);
            assert!(r.passed(), "e={e}");
            assert_eq!(r.effective_order, 1 << e);
        }
    }

    #[test]
    fn id_names_roundtrip() {
        for id in IdentityId::ALL {
            assert_eq!(id.name().parse::<IdentityId>().unwrap(), id);
        }
        assert!(matches!(
            "nonsense".parse::<IdentityId>(),
            Err(IdentityError::UnknownId(_))
        ));
    }

    #[test]
    fn dispatcher_covers_the_whole_catalog() {
        for id in IdentityId::ALL {
            let r = run_identity(id, 1, 32);
            assert_eq!(r.id, id, "dispatcher wired to the wrong verifier");
            assert!(r.passed(), "{id} at e=1 order=32: {:?}", r.mismatch);
        }
    }

    #[test]
    fn dispatcher_bumps_insufficient_orders() {
        let r = run_identity(IdentityId::Thm23, 4, 8);
        assert!(r.passed());
        assert_eq!(r.order, Some(6 * 16 + 3));
        assert_eq!(r.effective_order, 6 * 16 + 3);

        let r = run_identity(IdentityId::Lemma31, 5, 16);
        assert!(r.passed());
        assert_eq!(r.order, Some(65));

        // prefix identities keep the requested order
        let r = run_identity(IdentityId::Thm11, 1, 64);
        assert!(r.passed());
        assert_eq!(r.order, Some(64));
    }

    #[test]
    fn compose_errors_surface_in_series_layer() {
        // an identity-layer sanity check that the inner-order bookkeeping in
        // the verifiers matches what compose_pow enforces
        let t = twisted_series(4);
        assert_eq!(
            t.compose_pow(2, 16),
            Err(SeriesError::InsufficientTrunc { have: 4, need: 8 })
        );
    }
}
