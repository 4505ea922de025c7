//! Crate-wide error type. Variants mirror the geometric failure modes of the
//! individual engines; everything degenerate maps onto one of these.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("all coordinates vanish")]
    ZeroVector,
    #[error("zero polynomial has no roots")]
    ZeroPolynomial,
    #[error("conic is degenerate (det ~ 0)")]
    DegenerateConic,
    #[error("point is not incident with the given line/curve")]
    PointNotIncident,
    #[error("the two conics span a degenerate pencil")]
    PencilDegenerate,
    #[error("pencil is not generic (discriminant has multiple roots)")]
    NonGenericPencil,
    #[error("order must be at least {min} (got {got})")]
    InvalidOrder { min: u32, got: u32 },
    #[error("the three conics do not lie in one pencil")]
    NotCoaxalPencil,
    #[error("point does not lie on the quadric")]
    PointNotOnQuadric,
    #[error("point is a singular point of the quadric")]
    SingularPoint,
    #[error("intersection curve of the quadric pair is degenerate")]
    DegenerateIntersection,
    #[error("sampled base points disagree on the translation order")]
    OrderDisagreement,
    #[error("projection center lies on the quadric")]
    VertexOnQuadric,
    #[error("quadric pair has non-reduced intersection curve")]
    NonReducedIntersection,
    #[error("input circle has q = 0 where a smooth circle is required")]
    NullInput,
    #[error("the two circles touch; null circles are not defined")]
    TangentPair,
    #[error("chain hit a branch point (tangency) and cannot continue")]
    BranchPoint,
    #[error("chain hit a null circle of the defining pair")]
    NullCircleHit,
    #[error("sphere is tangent to the target circle; candidates coincide")]
    TangentSphere,
    #[error("configuration is degenerate for this operation")]
    DegenerateConfiguration,
    #[error("the three touching families do not share a line")]
    FamilyMismatch,
}

pub type Result<T> = std::result::Result<T, GeomError>;
