//! Parity game solving with small progress measures.
//!
//! Three solvers share one measure lattice: the classic lifting algorithm
//! ([`solvers::spm`]), a variant that races even and odd measures over a
//! bottom-SCC decomposition ([`solvers::espm`]), and a single-pass variant
//! that also synthesises winning strategies for the odd player
//! ([`solvers::solve_with_strategies`]). The [`play`] and [`verify`] modules
//! hold independent oracles and checkers; [`io`] handles the PGSolver text
//! format, priority conventions and game generators.

pub mod game;
pub mod io;
pub mod measure;
pub mod play;
pub mod samples;
pub mod solvers;
pub mod verify;

pub use game::{ParityGame, Player, Priority, Strategy, VertexIndex, VertexSet};
pub use measure::{Measure, MeasureDomain, MeasureMap};
pub use solvers::{LiftPolicy, SolveResult, SolveStats};
