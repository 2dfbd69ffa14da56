//! Elliptic-curve records from the LMFDB, with an on-disk cache that shares
//! its JSON layout with the shipped fixtures.

mod check;
mod client;
mod record;
mod remote;

pub use check::{cross_check, Mismatch};
pub use client::{Client, ClientConfig, CACHE_ENV, DEFAULT_BASE_URL, MIN_REQUEST_INTERVAL};
pub use record::{CurveRecord, IwasawaData, Source};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LmfdbError {
    #[error("malformed label {0:?}")]
    MalformedLabel(String),
    #[error("no curve with label {0}")]
    NotFound(String),
    #[error("{0} is not cached and the client is offline")]
    Offline(String),
    #[error("network error: {0}")]
    Network(String),
    #[error("malformed response: {0}")]
    MalformedResponse(String),
    #[error("cache error: {0}")]
    Cache(String),
}
