//! Stern's diatomic sequence, its twisted variant, and the generating-function
//! identities relating them.
//!
//! Three layers:
//!
//! * [`seq`] — the sequences themselves, computed by recurrence (the oracle),
//!   by digit-matrix products along the binary expansion, and by the
//!   two-term pair recursion; plus the Stern–Brocot enumeration of the
//!   positive rationals.
//! * [`series`] — exact arithmetic in the ring of integer power series
//!   truncated at an explicit order.
//! * [`identities`] — builders for the named series S, T, U, G, H and the
//!   Bacher products, and a catalog of coefficient-exact identity checks
//!   with structured pass/fail reports.

pub mod identities;
pub mod seq;
pub mod series;

pub use identities::{
    bacher_product, g_series, h_series, run_identity, stern_series, twisted_series, u_series,
    IdentityError, IdentityId, Report, Status,
};
pub use seq::{
    bits_of, rational_at, stern, stern_pair, stern_range, transfer_matrix, twisted, twisted_range,
    BitString, Mat2, Rational, SeqError,
};
pub use series::{Mismatch, SeriesError, ZSeries};
