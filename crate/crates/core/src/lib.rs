//! Kinetic Delaunay and alpha-complex maintenance for moving points, with
//! export of the swept space-time complex.

pub mod certificates;
pub mod error;
pub mod export;
pub mod generate;
pub mod io;
pub mod kernel;
pub mod kinetic;
pub mod medusa;
pub mod oracle;
pub mod predicates;
pub mod run;
pub mod simplex;
pub mod trajectory;
pub mod triangulation;

pub use error::{Error, Result};
pub use simplex::{Simplex, VertexId, INFINITE};

pub type Rational = num_rational::BigRational;

pub use kernel::AlgebraicReal;
pub use kinetic::{Config, RunOutput, Simulation};
pub use medusa::{Medusa, MedusaCell, Origin};
pub use trajectory::{Trajectory, TrajectorySet};
