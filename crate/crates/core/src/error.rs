use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("table is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NonAssociative { a: usize, b: usize, c: usize },

    #[error("entry {value} at row {row}, column {col} is out of range for order {order}")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("semigroup has no zero element")]
    NoZero,

    #[error("element set is not closed under multiplication: {a}*{b} = {product} escapes")]
    NotClosed { a: usize, b: usize, product: usize },

    #[error("element set is not a two-sided ideal: product {product} escapes")]
    NotAnIdeal { product: usize },

    #[error("{family}: size parameter {n} exceeds bound {bound}")]
    BoundExceeded {
        family: String,
        n: usize,
        bound: usize,
    },

    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("sandwich matrix is not regular: {0}")]
    IrregularSandwich(String),

    #[error("element {0} is not idempotent")]
    NotIdempotent(usize),

    #[error("working semigroup has a nonzero radical ({size} elements)")]
    RadicalNonzero { size: usize },

    #[error("element {0} is not a minimal idempotent")]
    NotMinimalIdempotent(usize),

    #[error("search budget of {budget} candidates exhausted without a decision")]
    SearchBudgetExceeded { budget: usize },

    #[error("idempotent set has not passed the separation/interpolation conditions")]
    ConditionsNotVerified,

    #[error("subsemigroup is not nilpotent")]
    NotNilpotent,

    #[error("no valid set of minimal idempotents; rerun with the oracle")]
    NoValidM,

    #[error("class bound {m} outside 1..={max}")]
    MOutOfRange { m: usize, max: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("matrix is not regular: {0}")]
    IrregularMatrix(String),

    #[error("matrix is not in block normal form: {0}")]
    NotInNormalForm(String),

    #[error("oracle budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("unknown family specifier `{0}`")]
    UnknownFamily(String),

    #[error("violation witness: {0}")]
    Violation(String),

    #[error("internal cross-check failed: {0}")]
    Internal(String),
}
