use thiserror::Error;

/// Errors shared across the whole library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus {n} is invalid: rings are only defined for n >= 2")]
    InvalidModulus { n: u64 },

    #[error("mixed moduli: left operand is mod {left}, right operand is mod {right}")]
    ModulusMismatch { left: u64, right: u64 },

    #[error("{value} mod {modulus} is not a unit (gcd with the modulus is {gcd})")]
    NotAUnit { value: u64, modulus: u64, gcd: u64 },

    #[error("quaternion with code {code} mod {modulus} is not a unit (its norm has gcd {norm_gcd} with the modulus)")]
    QuatNotAUnit { code: u64, modulus: u64, norm_gcd: u64 },

    #[error("CRT join expects {expected} parts, got {got}")]
    CrtArity { expected: usize, got: usize },

    #[error("CRT part {index} has modulus {got}, expected {expected}")]
    CrtModulus {
        index: usize,
        expected: u64,
        got: u64,
    },

    #[error("ring too large: {what} needs {required} but the budget is {budget}")]
    BudgetExceeded {
        what: &'static str,
        required: u64,
        budget: u64,
    },

    #[error("modulus {n} is not a power of two")]
    NotPowerOfTwo { n: u64 },

    #[error("modulus {m} is not an odd prime power")]
    OddPrimePowerRequired { m: u64 },

    #[error("{m} is not prime")]
    PrimeRequired { m: u64 },

    #[error("matrix with code {code} mod {modulus} is not a nonzero zero divisor")]
    NotZeroDivisor { code: u64, modulus: u64 },

    #[error("code {code} is not a vertex of this graph")]
    NotAVertex { code: u64 },

    #[error("graph is disconnected: no path from vertex code {from_code} to vertex code {to_code}")]
    Disconnected { from_code: u64, to_code: u64 },

    #[error("no closed-form dominating-set construction covers n = {n}")]
    NoCertificateForShape { n: u64 },

    #[error("graph is directed, operation requires an undirected graph")]
    DirectedGraph,

    #[error("graph is undirected, operation requires a directed graph")]
    UndirectedGraph,

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
