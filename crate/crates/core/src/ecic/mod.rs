//! Error-correcting index codes: verification, min-rank, constructions and
//! minimum-length search.

mod construct;
mod minrank;
mod search;
mod verify;

use serde::{Deserialize, Serialize};

pub use construct::{
    construct_concat, construct_concat_with, construct_lift, construct_random, Construction, LiftBasis, RandomReport,
};
pub use minrank::{min_rank, MinRankWitness, DEFAULT_MINRANK_NODES};
pub use search::{search_min_length, MinLengthReport, SearchStatus};
pub use verify::{max_delta, verify, verify_with, VerificationReport, VerifyCaps, VerifyMethod};

/// JSON envelope written next to a certificate matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateEnvelope {
    pub instance_hash: String,
    pub delta: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub certified: bool,
    pub method: String,
}
