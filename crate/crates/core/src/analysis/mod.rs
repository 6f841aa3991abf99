//! Classification and reduction analytics for vortex configurations.

pub mod families;
pub mod polytope;
pub mod probe;
pub mod reduction;
pub mod stabilizer;

pub use families::{
    balanced_coplanar, bloch_point, canonical_representative, generic_on_wall, interior_target, random_semi_orthogonal,
    symmetric_family_config, Preset, Table1Row, Table2Row, GENERIC_GAMMAS,
};
pub use polytope::{polytope_landmarks, sample_polytope, ChamberHull, PolytopeLandmarks};
pub use probe::{
    fiber_probe, fiber_probe_start, midpoint_realizability, minimize, summarize, DescentOptions, FiberPoint,
    FiberProbeReport, MidpointOutcome, StartOutcome,
};
pub use reduction::{predict_reduced_space, MomentumLocation, ReducedSpaceKind, ReducedSpacePrediction};
pub use stabilizer::{
    allowed_velocity_dim, classify_stabilizer, classify_stabilizer_with, momentum_jacobian, momentum_jacobian_rank,
    stabilizer_algebra, StabilizerType,
};
