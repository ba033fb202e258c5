use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("pole at {0}")]
    Pole(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("argument on the branch cut: {0}")]
    Branch(String),
    #[error("no convergence: {0}")]
    NoConvergence(String),
    #[error("precision exhausted at {bits} bits (best agreement {agreed} digits)")]
    PrecisionExhausted { bits: u32, agreed: u32 },
    #[error("accelerators disagree: zeta-tail {zeta}, levin {levin} ({agreed} digits)")]
    AccelerationDisagreement {
        zeta: String,
        levin: String,
        agreed: u32,
    },
    #[error("unsupported spec: {0}")]
    UnsupportedSpec(String),
    #[error("unsupported contour: {0}")]
    UnsupportedContour(String),
    #[error("divergent moment: {0}")]
    DivergentMoment(String),
    #[error("imaginary residue {0} above tolerance")]
    ResidualImaginary(String),
    #[error("stencil error: {0}")]
    Stencil(String),
    #[error("Fricke sign inconsistent: {0}")]
    FrickeInconsistent(String),
    #[error("unknown identity {0}")]
    UnknownIdentity(String),
}

pub type Result<T> = std::result::Result<T, Error>;
