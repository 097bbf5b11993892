//! Elementary symmetric means of continued-fraction digits.
//!
//! Digits are extracted with certified interval arithmetic ([`cf`]), the
//! symmetric polynomials are evaluated exactly by grouping equal digits
//! ([`symmetric`]), and roots are reported as truncated decimals that are
//! correct to every printed place ([`decimal`]).
//!
//! ```
//! use macsym::cf::{extract_digits, parse_alpha};
//! use macsym::symmetric::mean_report;
//!
//! let digits = extract_digits(&parse_alpha("sqrt2-1").unwrap(), 40).unwrap();
//! let r = mean_report(&digits, 40, 10).unwrap();
//! assert_eq!(r.s_root.truncate_sig(10).to_string(), "2.000000000");
//! ```
//!
//! Other modules cover the Khinchin and Hölder constants ([`constants`]),
//! periodic sequences and their closed forms ([`periodic`]), quadratic
//! surds ([`surd`]), the proxy-digit experiments ([`proxy`]) and the
//! command-line front end ([`cli`]).

pub mod arith;
pub mod cache;
pub mod cf;
pub mod cli;
pub mod constants;
pub mod decimal;
pub mod error;
pub mod fit;
pub mod periodic;
pub mod proxy;
pub mod surd;
pub mod symmetric;
pub mod table;

pub use error::{Error, Result};
