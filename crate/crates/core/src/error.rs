use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("point {point} maps to {image}, outside 1..={degree}")]
    ImageOutOfRange { point: usize, image: usize, degree: usize },
    #[error("image {image} is hit twice")]
    NotInjective { image: usize },
    #[error("table row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("table is empty")]
    EmptyTable,
    #[error("table entry {value} at ({row}, {col}) is out of range")]
    EntryOutOfRange { row: usize, col: usize, value: usize },
    #[error("not associative at ({a}, {b}, {c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("element {element} has {count} inverses")]
    InverseNotUnique { element: usize, count: usize },
    #[error("generator list is empty")]
    EmptyGenerators,
    #[error("element {0} is not in the ambient semigroup")]
    NotInAmbient(String),
    #[error("element list is not closed under multiplication")]
    NotClosed,
}
