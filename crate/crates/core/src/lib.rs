//! Normal-line pseudometric on planar convex curves, generalized perimeters,
//! constant-width bodies and convex partitions with holes.

pub mod constant_width;
pub mod curve;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod io;
pub mod partition;
pub mod polygon;
pub mod pseudometric;
pub mod quadrature;
pub mod report;

pub use constant_width::{ConstantWidthBody, DiskPolygon};
pub use curve::ConvexCurve;
pub use error::{GeomError, Result};
pub use geometry::{Angle, DirectedLine, Vec2};
pub use io::CurveSpec;
pub use partition::{ExtensionResult, FaceLabel, PlanarPartition, ValidationReport};
pub use polygon::Polygon;
pub use quadrature::{QuadMethod, QuadratureSpec};
pub use report::{CheckKind, Summary, VerificationReport};
