use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("field size {p}^{k} exceeds the configured limit {limit}")]
    FieldTooLarge { p: u32, k: u32, limit: u32 },
    #[error("invalid field parameters: {0}")]
    InvalidField(String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("enumerating {needed} items exceeds the budget of {limit}")]
    BudgetExceeded { needed: u128, limit: u64 },
    #[error("table covers degree {have} but degree {need} is required")]
    InsufficientDepth { have: usize, need: usize },
    #[error("no irreducible factor with degree in ({lo}, {hi}]")]
    NotApplicable { lo: usize, hi: usize },
    #[error("modulus has no non-principal character")]
    NoNonPrincipal,
    #[error("arithmetic overflow computing {0}")]
    Overflow(&'static str),
    #[error("corrupt cache file {}, line {line}: {reason}", path.display())]
    CorruptCache {
        path: PathBuf,
        line: usize,
        reason: String,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Upper bound on the number of objects a single enumeration may touch.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Budget {
    pub const DEFAULT: Budget = Budget(1 << 24);

    pub fn check(self, needed: u128) -> Result<()> {
        if needed > u128::from(self.0) {
            Err(Error::BudgetExceeded {
                needed,
                limit: self.0,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self::DEFAULT
    }
}
