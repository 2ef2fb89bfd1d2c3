use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("algebra must have at least one element")]
    Empty,
    #[error("table `{table}`: expected {expected} entries, found {found}{}", row_suffix(*.row))]
    Dimension {
        table: &'static str,
        row: Option<usize>,
        expected: usize,
        found: usize,
    },
    #[error("table `{table}`: entry {value} at {position} is outside 0..{size}")]
    OutOfRange {
        table: &'static str,
        position: String,
        value: usize,
        size: usize,
    },
    #[error("size {size} exceeds the configured maximum {max}")]
    TooLarge { size: usize, max: usize },
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("element {element} is outside the universe of size {size}")]
    InvalidElement { element: usize, size: usize },
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("element {element} is not central: {reason}")]
    NotCentral { element: String, reason: String },
    #[error("input is not a {class}: {reason}")]
    NotAdmitted { class: String, reason: String },
    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("{line}:{col}: {message}")]
    Parse {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("term syntax error at offset {offset}: {message}")]
    TermSyntax { offset: usize, message: String },
    #[error("invalid partition of unity: {0}")]
    PartitionOfUnity(String),
    #[error("result cap reached after {found} algebras; resume with `{resume}`")]
    Capped { found: usize, resume: String },
    #[error("{0}")]
    Usage(String),
    #[error("i/o error: {0}")]
    Io(String),
}

fn row_suffix(row: Option<usize>) -> String {
    match row {
        Some(r) => format!(" in row {r}"),
        None => String::new(),
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
