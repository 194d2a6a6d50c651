use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("relation matrix is not square (row {row} has {len} entries, expected {n})")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("relation is not reflexive at element {0}")]
    NotReflexive(usize),
    #[error("relation is not antisymmetric: {0} <= {1} and {1} <= {0}")]
    NotAntisymmetric(usize, usize),
    #[error("relation is not transitive: {0} <= {1} <= {2} but not {0} <= {2}")]
    NotTransitive(usize, usize, usize),
    #[error("element index {index} out of range for a poset with {n} elements")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("capacity exceeded: {what} (limit {limit})")]
    CapacityExceeded { what: &'static str, limit: usize },
    #[error("search budget of {budget} nodes exhausted")]
    BudgetExceeded { budget: u64 },
    #[error("map is not isotone: {0} <= {1} but f({0}) is not <= f({1})")]
    NotIsotone(usize, usize),
    #[error("map length {len} does not match source size {n}")]
    MapArity { len: usize, n: usize },
    #[error("poset is not an upper semilattice")]
    NotUpperSemilattice,
    #[error("poset is not a lattice")]
    NotALattice,
    #[error("assignment undefined on the ideal {ideal:#x} reached at step {step}")]
    AssignUndefined { step: usize, ideal: u64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
}
