//! The PGSolver text format, priority conventions, solution documents and
//! seeded game generators.

mod generate;
mod pgsolver;
mod solution;

pub use generate::{generate, Family, GenerateError};
pub use pgsolver::{
    convert_convention, from_game, parse_pgsolver, to_game, write_pgsolver, Convention, GameDocument, ParseError,
    ParseErrorKind, Position, VertexRecord,
};
pub use solution::{parse_solution, write_solution, SolutionDocument, SolutionError, WinnerRecord};
