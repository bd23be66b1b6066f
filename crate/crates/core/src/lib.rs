//! Apery-like sequences.
//!
//! Sequences are given by polynomials `G`, `H` (or by a triple `(a, b, c)` in
//! the weight-one case) and generated exactly from their recurrences. The
//! crate checks them against modular parametrisations, generating-function
//! identities, Lucas-type congruences and asymptotic formulas.

pub mod asymptotics;
pub mod binomial;
pub mod bigfloat;
pub mod catalog;
pub mod congruence;
pub mod error;
pub mod poly;
pub mod powerseries;
pub mod qmodular;
pub mod recurrence;
pub mod rings;

pub use error::{Error, Result};
pub use poly::Poly;
pub use recurrence::{RecurrenceSpec, TermStream};
pub use rings::{QuadElem, RingElement, RingTag};
