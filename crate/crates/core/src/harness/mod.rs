//! Instance generators, oracles, and the verification suite.

pub mod fixtures;
pub mod generators;
pub mod oracles;
pub mod verify;

pub use fixtures::example_corpus;
pub use generators::{gen_holed_domain, gen_spire_polygon, gen_spire_polygon_for, gen_star_polygon, SpireInstance};
pub use verify::{verify_scheme, verify_scheme_with, PairSelection, VerificationReport, VerifyOptions};
