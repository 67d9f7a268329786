use core::fmt;

use crate::Var;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A literal refers to a variable above the declared count.
    VarOutOfRange { var: u32, num_vars: u32 },
    /// A variable is required to be in the projection set but is not.
    NotInProjection(Var),
    /// A candidate support is not a subset of the projection set.
    NotASubset(Var),
    /// The enumeration oracle refuses instances above its bound.
    TooManyVars { found: u32, limit: u32 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::VarOutOfRange { var, num_vars } => {
                write!(f, "variable {var} exceeds declared count {num_vars}")
            }
            Error::NotInProjection(v) => write!(f, "variable {v} is not in the projection set"),
            Error::NotASubset(v) => {
                write!(f, "variable {v} of the candidate set is not in the projection set")
            }
            Error::TooManyVars { found, limit } => {
                write!(f, "{found} variables exceed the enumeration bound of {limit}")
            }
        }
    }
}

impl core::error::Error for Error {}
