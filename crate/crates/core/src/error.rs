//! Error type shared by every module.

use thiserror::Error;

use crate::rings::RingTag;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("elements of Q(sqrt {0}) and Q(sqrt {1}) cannot be combined")]
    FieldMismatch(i64, i64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("value does not lie in {0}")]
    NotInRing(RingTag),
    #[error("not {0}-integral")]
    NotIntegral(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("inexact division at n = {index}: term is not in the declared ring")]
    InexactDivision { index: usize },
    #[error("recurrence is not self-starting: coefficient of T(n+1-{j}) is nonzero at n = {n}")]
    NotSelfStarting { j: usize, n: usize },
    #[error("four-term form needs deg G = deg H = 3 and g3 = -h3: {0}")]
    NotFourTerm(String),
    #[error("unknown catalog key {0:?}")]
    UnknownKey(String),
    #[error("q-expansion error: {0}")]
    QSeries(String),
    #[error("asymptotics: {0}")]
    Asymptotics(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
