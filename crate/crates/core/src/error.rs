use thiserror::Error;

/// Errors produced anywhere in the simulator.
#[derive(Debug, Error)]
pub enum Error {
    #[error("subsystem dimension mismatch: operator dim {op_dim}, target dim {target_dim}")]
    DimensionMismatch { op_dim: usize, target_dim: usize },

    #[error("invalid subsystem index {index} for a space with {count} subsystems")]
    InvalidSubsystem { index: usize, count: usize },

    #[error("repeated target index {index}")]
    RepeatedTarget { index: usize },

    #[error("space mismatch: dims {left:?} vs {right:?}")]
    SpaceMismatch { left: Vec<usize>, right: Vec<usize> },

    #[error("state norm {norm} violates the unit-norm invariant")]
    NormViolation { norm: f64 },

    #[error("operator is not unitary: max |U\u{2020}U - I| entry is {defect}")]
    NonUnitary { defect: f64 },

    #[error("non-normalized coefficients: |c_f|^2 + |c_g|^2 = {norm}")]
    CoefficientNorm { norm: f64 },

    #[error("insufficient Fock truncation: tail mass {tail} exceeds {epsilon} at n_max {n_max}")]
    InsufficientTruncation { tail: f64, epsilon: f64, n_max: usize },

    #[error("cavity truncation leakage: population {population} on the leaking |e, n_max> level")]
    TruncationLeakage { population: f64 },

    #[error("oracle class violation: {ones} ones in a table of {size} entries (a constant table has 0 or {size}, a balanced one exactly half)")]
    OracleClassViolation { ones: usize, size: usize },

    #[error("oracle size mismatch: register has {register} qubits, oracle expects {oracle}")]
    OracleSizeMismatch { register: usize, oracle: usize },

    #[error("register size {n} exceeds the configured maximum {max} for this mode")]
    RegisterTooLarge { n: usize, max: usize },

    #[error("purity check failed: register-cavity purity {purity} below 1")]
    PurityCheckFailed { purity: f64 },

    #[error("collapse onto a zero-probability outcome (subsystem {subsystem}, label {label})")]
    ZeroProbabilityCollapse { subsystem: usize, label: usize },

    #[error("coefficients target no detection level: need c_f = i c_g (detect f) or c_f = -i c_g (detect g)")]
    InvalidCatTarget,

    #[error("oracle file parse error at line {line}, column {column}: {message}")]
    OracleFileParse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("cannot read oracle file {path}: {source}")]
    OracleFileRead {
        path: String,
        source: std::io::Error,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for the CLI: 1 usage, 2 oracle/class problems,
    /// 3 numeric-invariant failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidArgument(_)
            | Error::RegisterTooLarge { .. }
            | Error::InvalidCatTarget => 1,
            Error::OracleClassViolation { .. }
            | Error::OracleSizeMismatch { .. }
            | Error::OracleFileParse { .. }
            | Error::OracleFileRead { .. } => 2,
            _ => 3,
        }
    }
}
