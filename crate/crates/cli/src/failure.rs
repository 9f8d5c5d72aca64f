//! Exit-code contract: 1 unreadable or unparseable input, 2 input that
//! violates an invariant or limit, 3 verification mismatch.

use std::fmt;

use herg_core::decomp::DecompError;
use herg_core::invariants::InvariantError;
use herg_core::ops::OpError;
use herg_core::ribbon::GraphError;
use herg_core::stranded::decomp::StrandedError;
use herg_core::stranded::ColoredError;

#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn parse(msg: impl fmt::Display) -> Self {
        Failure { code: 1, message: msg.to_string() }
    }

    pub fn input(msg: impl fmt::Display) -> Self {
        Failure { code: 2, message: msg.to_string() }
    }

    pub fn mismatch() -> Self {
        Failure {
            code: 3,
            message: "verification failed; see the report".into(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::parse(e)
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::Parse { .. } => Failure::parse(e),
            _ => Failure::input(e),
        }
    }
}

impl From<OpError> for Failure {
    fn from(e: OpError) -> Self {
        match e {
            OpError::Graph(g) => g.into(),
            other => Failure::input(other),
        }
    }
}

impl From<InvariantError> for Failure {
    fn from(e: InvariantError) -> Self {
        match e {
            InvariantError::Op(o) => o.into(),
            other => Failure::input(other),
        }
    }
}

impl From<DecompError> for Failure {
    fn from(e: DecompError) -> Self {
        match e {
            DecompError::Op(o) => o.into(),
            DecompError::Invariant(i) => i.into(),
            other => Failure::input(other),
        }
    }
}

impl From<ColoredError> for Failure {
    fn from(e: ColoredError) -> Self {
        match e {
            ColoredError::Parse { .. } => Failure::parse(e),
            _ => Failure::input(e),
        }
    }
}

impl From<StrandedError> for Failure {
    fn from(e: StrandedError) -> Self {
        match e {
            StrandedError::Graph(g) => g.into(),
            other => Failure::input(other),
        }
    }
}

impl From<herg_core::ribbon::LimitExceeded> for Failure {
    fn from(e: herg_core::ribbon::LimitExceeded) -> Self {
        Failure::input(e)
    }
}
