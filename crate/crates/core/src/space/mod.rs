//! Continuous toroidal world: geometry, random-walk movement and detection
//! of agents violating each other's private space.

mod encounters;
mod geometry;
mod mobility;

pub use encounters::{detect_encounters, detect_encounters_naive, EncounterDetector};
pub use geometry::{torus_distance, world_side_for_population, TorusGeometry, Vec2};
pub use mobility::{move_agent, separate, Kinematics, MobilityParams};
