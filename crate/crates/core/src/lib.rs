//! Signed permutations, the complex `X_n(G)`, symbolic apartment chains, and
//! symplectic lattices over imaginary quadratic orders.

pub mod chain;
pub mod dedekind;
pub mod error;
pub mod group;
pub mod homology;
pub mod linalg;
pub mod report;
pub mod signed_perm;
pub mod steinberg;
pub mod suites;

pub use chain::{ChainTerm, ChamberLabel, FormalChain};
pub use error::{Error, Result};
pub use group::{check_pairs, ClassPair, FiniteAbelianGroup, GroupElement};
pub use homology::{build_xn, class_span_rank, homology, sigma_s_cycle, HomologySummary, IntegerChainComplex, XnComplex};
pub use signed_perm::{BadCertificate, Classification, GoodCertificate, SignedPermutation};
pub use steinberg::{FrameClasses, IntegralImageCount, VertexLabel};
pub use report::{Check, Report, Status};
