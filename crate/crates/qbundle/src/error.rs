use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("rewrite budget exhausted while normalizing in `{0}`")]
    RewriteBudget(String),
    #[error("no rewrite rule for {first}*{second} in `{presentation}`")]
    MissingRule { presentation: String, first: String, second: String },
    #[error("presentation mismatch: `{0}` vs `{1}`")]
    PresentationMismatch(String, String),
    #[error("tensor factor mismatch: {0}")]
    FactorMismatch(String),
    #[error("generator `{0}` has exponent outside its domain")]
    ExponentDomain(String),
    #[error("`{0}` is not invertible")]
    NotInvertible(String),
    #[error("map `{map}` has no rule for `{item}`")]
    OutsideRuleClosure { map: String, item: String },
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("invalid presentation: {0}")]
    Presentation(String),
    #[error("instance file line {line}: {msg}")]
    InstanceFile { line: usize, msg: String },
    #[error("axiom failure: {0}")]
    Axiom(String),
    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, Error>;
