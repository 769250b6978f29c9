use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed permutation: {0}")]
    MalformedPermutation(String),

    #[error("group closure exceeds the cap of {cap} elements")]
    ClosureExceedsCap { cap: usize },

    #[error("unknown point `{0}`")]
    UnknownPoint(String),

    #[error("weight is not constant on the orbit of `{point}`")]
    WeightNotOrbitConstant { point: String },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("not a chain complex: boundary composition nonzero in degree {degree}")]
    NotAComplex { degree: usize },

    #[error("coefficient {value} at non-orientable critical point `{point}` in the boundary of orbit `{orbit}`")]
    CancellationFailure { orbit: String, point: String, value: String },

    #[error("boundary of orbit `{orbit}` is not G-invariant: `{first}` has {first_value}, `{second}` has {second_value}")]
    InvarianceFailure {
        orbit: String,
        first: String,
        first_value: String,
        second: String,
        second_value: String,
    },

    #[error("no invariant orientation gauge exists on orbit of `{0}`")]
    GaugeFailure(String),

    #[error("sign is not constant on the flow orbit of `{0}`")]
    SignNotOrbitConstant(String),

    #[error("index mismatch: {0}")]
    IndexMismatch(String),

    #[error("critical point `{0}` is not orientable")]
    NotOrientable(String),

    #[error("flow `{flow}`: isotropy order {flow_order} does not divide {endpoint_order} at `{endpoint}`")]
    DivisibilityViolation {
        flow: String,
        flow_order: u64,
        endpoint: String,
        endpoint_order: u64,
    },

    #[error("flow `{0}` touches a non-orientable critical point")]
    FlowTouchesNonOrientable(String),

    #[error("index {index} of `{label}` is out of range for ambient dimension {dim}")]
    IndexOutOfRange { label: String, index: usize, dim: usize },

    #[error("broken weight check failed: {0}")]
    BrokenWeightMismatch(String),

    #[error("G-simplicial complex is not regular: {0}")]
    NotRegular(String),

    #[error("quotient is not a simplicial complex on vertex orbits: {0}")]
    DegenerateQuotient(String),

    #[error("not a subcomplex: {0}")]
    NotASubcomplex(String),

    #[error("action is not simplicial: {0}")]
    ActionNotSimplicial(String),

    #[error("invalid system: {0}")]
    InvalidSystem(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("unknown label `{label}` referenced by {context}")]
    UnknownLabel { label: String, context: String },

    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),

    #[error("wrong instance kind: expected {expected}, found {found}")]
    WrongKind { expected: String, found: String },

    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    /// True for errors produced while reading or decoding an instance file.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. }
                | Error::UnknownLabel { .. }
                | Error::DuplicateLabel(_)
                | Error::WrongKind { .. }
                | Error::Io { .. }
        )
    }

    /// True when two computations that must agree did not.
    pub fn is_theorem_mismatch(&self) -> bool {
        matches!(
            self,
            Error::CancellationFailure { .. }
                | Error::InvarianceFailure { .. }
                | Error::BrokenWeightMismatch(_)
                | Error::GaugeFailure(_)
        )
    }

    /// Process exit code: 4 for input errors, 3 for theorem mismatches and
    /// 2 for everything else, which is some violated law of the input.
    pub fn exit_code(&self) -> i32 {
        if self.is_input_error() {
            4
        } else if self.is_theorem_mismatch() {
            3
        } else {
            2
        }
    }
}
