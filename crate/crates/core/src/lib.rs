//! Exact 2-division on plane cubics in Weierstrass form.

pub mod division;
pub mod error;
pub mod field;
pub mod galois;
pub mod oracle;
pub mod poly;
pub mod quartic;
pub mod weierstrass;

pub use division::{
    arises_on_elliptic_curve, classify_homogeneous, classify_pair, classify_quartic, forward_quartic,
    forward_quartic_homogeneous, gate_accepts, halves, reconstruct, rescale_to_square, statistics_identity_check,
    three_torsion_flag, AffineMap, DivisionFamily, DivisionGeometry, DivisionOutcome, GeometricClass, Halves,
    InfinityDivision, SignConvention, StatisticsReport,
};
pub use error::{Error, FieldError, Result};
pub use field::{FieldDescriptor, FieldKind, FieldValue};
pub use galois::{BiquadraticExtension, CyclicQuarticExtension, ExtensionElement, GaloisQuartic};
pub use poly::Poly;
pub use quartic::{e_from_roots, HomogeneousQuartic, MonicQuartic, Partition, RepeatedRoot, RootProfile};
pub use weierstrass::{AffinePoint, CubicPoint, ProjectivePoint, SingularityType, WeierstrassCubic};
